// SPDX-License-Identifier: Apache-2.0

//! Ohmic-like dephasing: the time-dependent rate `γ(τ, s)` and the
//! accumulated dephasing factor `Γ(τ) = exp(-κ ∫₀^τ γ)`.
//!
//! Time is dimensionless, `τ = ω_c t`.

use crate::error::{invalid, Result};
use crate::opcore::BlochVector;

use super::special::{adaptive_simpson, gamma};

/// Absolute tolerance of the dephasing quadrature.
pub const QUADRATURE_TOL: f64 = 1e-10;

fn check_s(s: f64) -> Result<()> {
    if s > 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(invalid("s", format!("ohmicity must be > 0, got {s}")))
    }
}

/// Rate with a precomputed `Γ_e(s)`.
pub(crate) fn rate_with(tau: f64, s: f64, euler_gamma_s: f64) -> f64 {
    (1.0 + tau * tau).powf(-0.5 * s) * euler_gamma_s * (s * tau.atan()).sin()
}

/// `γ(τ, s) = (1 + τ²)^{-s/2} Γ_e(s) sin(s arctan τ)`.
pub fn gamma_ohmic(tau: f64, s: f64) -> Result<f64> {
    check_s(s)?;
    Ok(rate_with(tau, s, gamma(s)))
}

/// `∫₀^τ γ(τ', s) dτ'`.
pub fn integrated_rate(tau: f64, s: f64) -> Result<f64> {
    check_s(s)?;
    if tau < 0.0 || !tau.is_finite() {
        return Err(invalid("tau", format!("must be finite and >= 0, got {tau}")));
    }
    let g = gamma(s);
    adaptive_simpson(|t| rate_with(t, s, g), 0.0, tau, QUADRATURE_TOL)
}

/// `Γ(τ) = exp(-κ ∫₀^τ γ(τ', s) dτ')`.
pub fn dephasing_factor(tau: f64, s: f64, kappa: f64) -> Result<f64> {
    Ok((-kappa * integrated_rate(tau, s)?).exp())
}

/// Transverse components scaled by `Γ(τ)`, `z` unchanged.
pub fn pd_nonmarkov_bloch(tau: f64, r0: &BlochVector, s: f64, kappa: f64) -> Result<BlochVector> {
    let g = dephasing_factor(tau, s, kappa)?;
    Ok(BlochVector {
        x: r0.x * g,
        y: r0.y * g,
        z: r0.z,
    })
}

/// Memoised `Γ(τ)` for one `(s, κ)`.
///
/// Knots are appended in increasing `τ`; a query integrates only from the
/// nearest knot below it. Holds `&mut self`, so each worker owns its cache.
#[derive(Debug, Clone)]
pub struct DephasingCache {
    s: f64,
    kappa: f64,
    euler_gamma_s: f64,
    knots: Vec<(f64, f64)>,
}

impl DephasingCache {
    pub fn new(s: f64, kappa: f64) -> Result<Self> {
        check_s(s)?;
        Ok(Self {
            s,
            kappa,
            euler_gamma_s: gamma(s),
            knots: vec![(0.0, 0.0)],
        })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn rate(&self, tau: f64) -> f64 {
        rate_with(tau, self.s, self.euler_gamma_s)
    }

    /// `∫₀^τ γ`.
    pub fn integral(&mut self, tau: f64) -> Result<f64> {
        if tau < 0.0 || !tau.is_finite() {
            return Err(invalid("tau", format!("must be finite and >= 0, got {tau}")));
        }
        let idx = self.knots.partition_point(|&(t, _)| t <= tau) - 1;
        let (t0, i0) = self.knots[idx];
        if t0 == tau {
            return Ok(i0);
        }
        let (s, g) = (self.s, self.euler_gamma_s);
        let value = i0 + adaptive_simpson(|t| rate_with(t, s, g), t0, tau, 1e-2 * QUADRATURE_TOL)?;
        if idx + 1 == self.knots.len() {
            self.knots.push((tau, value));
        }
        Ok(value)
    }

    /// `Γ(τ)`.
    pub fn factor(&mut self, tau: f64) -> Result<f64> {
        Ok((-self.kappa * self.integral(tau)?).exp())
    }
}
