// SPDX-License-Identifier: Apache-2.0

//! Qubit channel models and trajectory generation.

mod channel;
mod integrate;
mod ohmic;
pub mod special;

pub use channel::{ChannelKind, ChannelSpec};
pub use integrate::{integrate, lindblad_rhs, pd_markov_bloch, Trajectory, DEFAULT_DT, POSITIVITY_ABORT};
pub use ohmic::{
    dephasing_factor, gamma_ohmic, integrated_rate, pd_nonmarkov_bloch, DephasingCache, QUADRATURE_TOL,
};
