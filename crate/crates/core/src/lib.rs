// SPDX-License-Identifier: Apache-2.0

//! Ergotropy-based thermodynamics of finite-dimensional open quantum systems.
//!
//! - [`opcore`]: small dense Hermitian algebra, Bloch vectors, entropies.
//! - [`ergo`]: passive states, ergotropy and the three temperature functionals.
//! - [`thermo`]: heat/work ledgers for the standard, entropy-based,
//!   ergotropy-based and operational formulations, plus entropy production.
//! - [`dynamics`]: generalized amplitude damping and phase damping channels.
//! - [`nonmarkov`]: heat-based non-Markovianity measures and the temperature witness.
//!
//! Units: `ħ = k_B = 1`; energies are in units of the channel's `ω₀`.

pub mod dynamics;
pub mod error;
pub mod ergo;
pub mod nonmarkov;
pub mod opcore;
pub mod thermo;

pub use error::{Error, Result};
pub use ergo::{PassiveDecomposition, Temperature, TemperatureTriple};
pub use opcore::{BlochVector, CMatrix, DensityOperator, FieldVector, HermitianOperator, Order, Spectrum};
pub use dynamics::{ChannelKind, ChannelSpec, Trajectory};
pub use nonmarkov::{MeasureReport, NMReport, SignInterval, WitnessReport};
pub use thermo::{Environment, Formulation, ThermoSample};
