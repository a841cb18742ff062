// SPDX-License-Identifier: Apache-2.0

//! Criterion benchmarks for the numerical kernels; see `benches/kernels.rs`.
