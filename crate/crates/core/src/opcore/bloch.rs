// SPDX-License-Identifier: Apache-2.0

//! Qubit parametrisations: Bloch vectors and local fields.

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::matrix::{pauli, CMatrix, DensityOperator, HermitianOperator};

const BALL_TOL: f64 = 1e-10;

/// Bloch vector `r⃗` of a qubit state `ρ = (𝟙 + r⃗·σ⃗)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Self { x, y, z };
        let n = v.norm();
        if !n.is_finite() || n > 1.0 + BALL_TOL {
            return Err(Error::OutsideBlochBall(n));
        }
        Ok(v)
    }

    /// `(r sinθ cosφ, r sinθ sinφ, r cosθ)`.
    pub fn from_spherical(r: f64, theta: f64, phi: f64) -> Result<Self> {
        Self::new(
            r * theta.sin() * phi.cos(),
            r * theta.sin() * phi.sin(),
            r * theta.cos(),
        )
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, h: &FieldVector) -> f64 {
        self.x * h.hx + self.y * h.hy + self.z * h.hz
    }

    pub fn distance(&self, other: &Self) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2) + (self.z - other.z).powi(2)).sqrt()
    }
}

/// Local field `h⃗` of a qubit Hamiltonian `H = -h⃗·σ⃗`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldVector {
    pub hx: f64,
    pub hy: f64,
    pub hz: f64,
}

impl FieldVector {
    pub fn new(hx: f64, hy: f64, hz: f64) -> Result<Self> {
        if !(hx.is_finite() && hy.is_finite() && hz.is_finite()) {
            return Err(crate::error::invalid("field", "non-finite component"));
        }
        Ok(Self { hx, hy, hz })
    }

    pub const fn along_z(hz: f64) -> Self {
        Self { hx: 0.0, hy: 0.0, hz }
    }

    pub fn norm(&self) -> f64 {
        (self.hx * self.hx + self.hy * self.hy + self.hz * self.hz).sqrt()
    }

    /// `H = -h⃗·σ⃗`.
    pub fn hamiltonian(&self) -> HermitianOperator {
        let [sx, sy, sz] = pauli();
        let m = &(&sx.scale(-self.hx) + &sy.scale(-self.hy)) + &sz.scale(-self.hz);
        HermitianOperator::from_matrix_unchecked(m)
    }
}

/// `ρ = (𝟙 + r⃗·σ⃗)/2`.
pub fn bloch_to_density(r: &BlochVector) -> Result<DensityOperator> {
    let r = BlochVector::new(r.x, r.y, r.z)?;
    let half = 0.5;
    let m = CMatrix::from_rows(&[
        vec![
            Complex64::new(half * (1.0 + r.z), 0.0),
            Complex64::new(half * r.x, -half * r.y),
        ],
        vec![
            Complex64::new(half * r.x, half * r.y),
            Complex64::new(half * (1.0 - r.z), 0.0),
        ],
    ]);
    let op = HermitianOperator::from_matrix_unchecked(m);
    if r.norm() <= 1.0 {
        Ok(DensityOperator::from_operator_unchecked(op))
    } else {
        DensityOperator::new(op)
    }
}

/// `r_k = tr[ρ σ_k]`.
pub fn density_to_bloch(rho: &DensityOperator) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::NotQubit(rho.dim()));
    }
    let m = rho.matrix();
    Ok(BlochVector {
        x: 2.0 * m[(0, 1)].re,
        y: -2.0 * m[(0, 1)].im,
        z: (m[(0, 0)] - m[(1, 1)]).re,
    })
}
