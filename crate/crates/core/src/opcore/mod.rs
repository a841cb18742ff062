// SPDX-License-Identifier: Apache-2.0

//! Dense Hermitian linear algebra for small dimensions.

mod bloch;
mod eig;
mod entropy;
mod matrix;

pub use bloch::{bloch_to_density, density_to_bloch, BlochVector, FieldVector};
pub use eig::{eig_hermitian, eig_jacobi, Order, Spectrum, JACOBI_TOL};
pub use entropy::{covariance, entropy_of_populations, relative_entropy, von_neumann_entropy, SUPPORT_TOL};
pub use matrix::{
    pauli, CMatrix, DensityOperator, HermitianOperator, HERMITIAN_TOL, MAX_DIM, POSITIVITY_TOL,
    TRACE_TOL,
};
