// SPDX-License-Identifier: Apache-2.0

use crate::error::{invalid, Error, Result};
use crate::opcore::{DensityOperator, FieldVector, HermitianOperator};

use super::special::gamma;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    /// Generalized amplitude damping towards a thermal bath at `te`.
    Gad,
    /// Markovian phase damping with the driven field `h_z(t) = -ω₀(1 - cos ωt)/2`.
    PdMarkov,
    /// Phase damping with the Ohmic-like rate `γ(τ, s)`; time is `τ = ω_c t`.
    PdNonMarkov,
}

/// Parameters of one dynamical model.
///
/// Fields that do not apply to `kind` are ignored. `te` is `k_B T_e` in
/// units of energy and may be infinite only for the phase-damping kinds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    pub kind: ChannelKind,
    pub omega0: f64,
    pub gamma0: f64,
    pub te: f64,
    pub gamma: f64,
    pub omega: f64,
    pub s: f64,
    pub omega_c: f64,
    pub kappa: f64,
}

impl ChannelSpec {
    pub fn gad(omega0: f64, gamma0: f64, te: f64) -> Result<Self> {
        Self {
            kind: ChannelKind::Gad,
            omega0,
            gamma0,
            te,
            gamma: 0.0,
            omega: 0.0,
            s: 0.0,
            omega_c: 1.0,
            kappa: 2.0,
        }
        .validated()
    }

    pub fn pd_markov(omega0: f64, gamma: f64, omega: f64) -> Result<Self> {
        Self {
            kind: ChannelKind::PdMarkov,
            omega0,
            gamma0: 0.0,
            te: f64::INFINITY,
            gamma,
            omega,
            s: 0.0,
            omega_c: 1.0,
            kappa: 2.0,
        }
        .validated()
    }

    pub fn pd_nonmarkov(omega0: f64, omega_c: f64, s: f64, kappa: f64) -> Result<Self> {
        Self {
            kind: ChannelKind::PdNonMarkov,
            omega0,
            gamma0: 0.0,
            te: f64::INFINITY,
            gamma: 0.0,
            omega: 0.0,
            s,
            omega_c,
            kappa,
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        fn non_negative(name: &'static str, v: f64) -> Result<()> {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(invalid(name, format!("must be finite and >= 0, got {v}")))
            }
        }
        non_negative("omega0", self.omega0)?;
        match self.kind {
            ChannelKind::Gad => {
                non_negative("gamma0", self.gamma0)?;
                if !(self.te > 0.0 && self.te.is_finite()) {
                    return Err(invalid("te", format!("GAD needs a finite positive bath temperature, got {}", self.te)));
                }
                if self.omega0 == 0.0 {
                    return Err(invalid("omega0", "GAD needs a nonzero transition frequency"));
                }
            }
            ChannelKind::PdMarkov => {
                non_negative("gamma", self.gamma)?;
                non_negative("omega", self.omega)?;
            }
            ChannelKind::PdNonMarkov => {
                if !(self.s > 0.0 && self.s.is_finite()) {
                    return Err(invalid("s", format!("ohmicity must be > 0, got {}", self.s)));
                }
                if !(self.omega_c > 0.0 && self.omega_c.is_finite()) {
                    return Err(invalid("omega_c", format!("cutoff must be > 0, got {}", self.omega_c)));
                }
                non_negative("kappa", self.kappa)?;
            }
        }
        Ok(self)
    }

    /// `β_e = 1/(k_B T_e)`; zero for an infinite-temperature environment.
    pub fn beta_e(&self) -> f64 {
        1.0 / self.te
    }

    /// Planck occupation `N = 1/(e^{β_e ω₀} - 1)`.
    pub fn planck_n(&self) -> f64 {
        1.0 / (self.beta_e() * self.omega0).exp_m1()
    }

    /// Emission rate `γ₀(N + 1)`.
    pub fn gamma_minus(&self) -> f64 {
        self.gamma0 * (self.planck_n() + 1.0)
    }

    /// Absorption rate `γ₀ N`.
    pub fn gamma_plus(&self) -> f64 {
        self.gamma0 * self.planck_n()
    }

    /// Population relaxation rate `γ₀(2N + 1)`.
    pub fn relaxation_rate(&self) -> f64 {
        self.gamma_minus() + self.gamma_plus()
    }

    /// The field each channel is paired with.
    pub fn default_field(&self, t: f64) -> FieldVector {
        match self.kind {
            ChannelKind::Gad => FieldVector::along_z(-0.5 * self.omega0),
            ChannelKind::PdMarkov => FieldVector::along_z(-0.5 * self.omega0 * (1.0 - (self.omega * t).cos())),
            ChannelKind::PdNonMarkov => FieldVector::along_z(-self.omega0),
        }
    }

    /// Factor multiplying `-i[H, ρ]` in the native time unit of the channel.
    pub(crate) fn coherent_scale(&self) -> f64 {
        match self.kind {
            ChannelKind::PdNonMarkov => 1.0 / self.omega_c,
            _ => 1.0,
        }
    }

    /// `Γ_e(s)`, needed by the Ohmic rate.
    pub(crate) fn euler_gamma_s(&self) -> f64 {
        gamma(self.s)
    }

    /// Fixed point of the channel for Hamiltonian `h`: Gibbs at `te` for GAD,
    /// `𝟙/d` for the unital phase-damping kinds.
    pub fn fixed_point(&self, h: &HermitianOperator) -> Result<DensityOperator> {
        match self.kind {
            ChannelKind::Gad => DensityOperator::gibbs(h, self.beta_e()),
            _ => DensityOperator::maximally_mixed(h.dim()),
        }
    }

    pub(crate) fn require(&self, kind: ChannelKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::InvalidParameter {
                name: "kind",
                reason: format!("expected {kind:?}, got {:?}", self.kind),
            })
        }
    }
}
