// SPDX-License-Identifier: Apache-2.0

//! Ergotropy, passive states and out-of-equilibrium temperatures.
//!
//! The passive state of `ρ` with respect to `H` carries the populations of
//! `ρ` in descending order on the energy levels of `H` in ascending order.
//! Everything here that depends only on that pairing (passive energy,
//! ergotropy, the passive temperature) is computed from the two sorted
//! spectra, which makes it independent of how degenerate eigenvectors are
//! chosen.
//!
//! Temperatures are expressed in energy units (`k_B = 1`).

use crate::error::{Error, Result};
use crate::opcore::{
    covariance, eig_hermitian, BlochVector, CMatrix, DensityOperator, FieldVector,
    HermitianOperator, Order, Spectrum,
};

/// Smallest population treated as nonzero by the temperature functionals.
/// For a qubit this is the `r ≤ 1 - 1e-12` guard.
pub const PURE_LIMIT_POPULATION: f64 = 5e-13;
/// Population spread below which a state counts as maximally mixed.
pub const MIXED_SPREAD: f64 = 1e-12;
/// Floor applied to eigenvalues before taking logarithms.
pub const LOG_FLOOR: f64 = 1e-300;
/// `|Cov(H, σ)|` relative to `sqrt(Cov(H,H) Cov(σ,σ))` treated as zero.
pub const DIVERGENCE_TOL: f64 = 1e-12;

/// Decomposition `U(ρ) = U(ρ_π) + E(ρ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PassiveDecomposition {
    pub passive_state: DensityOperator,
    pub passive_energy: f64,
    pub ergotropy: f64,
    pub internal_energy: f64,
    /// Populations of `ρ`, descending.
    pub populations: Vec<f64>,
    /// Energy levels of `H`, ascending.
    pub levels: Vec<f64>,
}

/// `Σ_n r_n ε_n` for descending populations on ascending levels.
pub fn passive_energy_from(populations: &[f64], levels: &[f64]) -> f64 {
    populations.iter().zip(levels).map(|(r, e)| r * e).sum()
}

pub(crate) fn check_same_dim(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(a, b))
    }
}

/// Passive state `ρ_π = Σ_n r_n |ε_n⟩⟨ε_n|` with energies and ergotropy.
pub fn passive_state(rho: &DensityOperator, h: &HermitianOperator) -> Result<PassiveDecomposition> {
    check_same_dim(rho.dim(), h.dim())?;
    let pops = rho.populations();
    let hspec = eig_hermitian(h, Order::Ascending);
    Ok(passive_from_spectra(rho, h, pops, &hspec))
}

pub(crate) fn passive_from_spectra(
    rho: &DensityOperator,
    h: &HermitianOperator,
    populations: Vec<f64>,
    hspec: &Spectrum,
) -> PassiveDecomposition {
    let passive_energy = passive_energy_from(&populations, &hspec.values);
    let internal_energy = rho.expect(h);
    let passive_state = DensityOperator::from_operator_unchecked(HermitianOperator::from_matrix_unchecked(
        CMatrix::from_spectral(&populations, &hspec.vectors),
    ));
    PassiveDecomposition {
        passive_state,
        passive_energy,
        ergotropy: internal_energy - passive_energy,
        internal_energy,
        populations,
        levels: hspec.values.clone(),
    }
}

/// `E(ρ) = U(ρ) - U(ρ_π)`.
pub fn ergotropy(rho: &DensityOperator, h: &HermitianOperator) -> Result<f64> {
    check_same_dim(rho.dim(), h.dim())?;
    let hspec = eig_hermitian(h, Order::Ascending);
    Ok(rho.expect(h) - passive_energy_from(&rho.populations(), &hspec.values))
}

/// A temperature reading, possibly at one of the singular limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Temperature {
    Finite(f64),
    /// Zero, reached as a limit (pure or rank-deficient passive state).
    PureLimit,
    /// Maximally mixed state.
    Infinite,
    /// `Cov(H, σ) = 0`: the reading passes through a pole.
    Divergent,
    /// Not defined for this state (rank-deficient `ρ` for the conventional
    /// temperature, or no energy scale).
    Undefined,
}

impl Temperature {
    pub fn value(&self) -> f64 {
        match *self {
            Temperature::Finite(t) => t,
            Temperature::PureLimit => 0.0,
            Temperature::Infinite => f64::INFINITY,
            Temperature::Divergent | Temperature::Undefined => f64::NAN,
        }
    }

    /// True for readings that are an ordinary finite number (including zero).
    pub fn is_regular(&self) -> bool {
        matches!(self, Temperature::Finite(_) | Temperature::PureLimit)
    }
}

/// The three temperature functionals evaluated on one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemperatureTriple {
    pub t_ergo: Temperature,
    pub t_conv: Temperature,
    pub t_ent: Temperature,
}

fn energy_scale(levels: &[f64]) -> Result<()> {
    let lo = levels.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = levels.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let spread = hi - lo;
    let scale = lo.abs().max(hi.abs());
    if spread <= 0.0 || spread <= 1e-14 * scale {
        Err(Error::NoEnergyScale)
    } else {
        Ok(())
    }
}

fn spread(pops: &[f64]) -> f64 {
    pops.first().copied().unwrap_or(0.0) - pops.last().copied().unwrap_or(0.0)
}

/// Entropy operator `σ = -ln ρ` (`k_B = 1`), logs taken on eigenvalues floored at [`LOG_FLOOR`].
pub fn entropy_operator(rho: &DensityOperator) -> HermitianOperator {
    rho.op().map_spectrum(|p| -p.max(LOG_FLOOR).ln())
}

/// Passive temperature from sorted spectra: `Cov(H,H)/Cov(H,σ_π)`.
pub(crate) fn ergo_temperature_from(populations: &[f64], levels: &[f64]) -> Result<Temperature> {
    energy_scale(levels)?;
    if spread(populations) < MIXED_SPREAD {
        return Ok(Temperature::Infinite);
    }
    if populations.last().copied().unwrap_or(0.0) < PURE_LIMIT_POPULATION {
        return Ok(Temperature::PureLimit);
    }
    let d = levels.len() as f64;
    let mean_e = levels.iter().sum::<f64>() / d;
    let sigma: Vec<f64> = populations.iter().map(|p| -p.max(LOG_FLOOR).ln()).collect();
    let mean_s = sigma.iter().sum::<f64>() / d;
    let cov_hh = levels.iter().map(|e| (e - mean_e).powi(2)).sum::<f64>() / d;
    let cov_hs = levels
        .iter()
        .zip(&sigma)
        .map(|(e, s)| (e - mean_e) * (s - mean_s))
        .sum::<f64>()
        / d;
    if cov_hs <= 0.0 {
        // Only possible when every population gradient sits on degenerate levels.
        return Ok(Temperature::Infinite);
    }
    Ok(Temperature::Finite(cov_hh / cov_hs))
}

/// Ergotropy-based temperature `T = Cov(H,H)/Cov(H,σ_π)`; never negative.
pub fn temperature_ergotropy(rho: &DensityOperator, h: &HermitianOperator) -> Result<Temperature> {
    check_same_dim(rho.dim(), h.dim())?;
    let levels = eig_hermitian(h, Order::Ascending).values;
    ergo_temperature_from(&rho.populations(), &levels)
}

/// Conventional temperature `𝒯 = Cov(H,H)/Cov(H,σ)`; may be negative or pass through a pole.
pub fn temperature_conventional(rho: &DensityOperator, h: &HermitianOperator) -> Result<Temperature> {
    check_same_dim(rho.dim(), h.dim())?;
    let levels = eig_hermitian(h, Order::Ascending).values;
    energy_scale(&levels)?;
    let spec = eig_hermitian(rho.op(), Order::Descending);
    conventional_from(&spec, h)
}

fn conventional_covariances(rho_spec: &Spectrum, h: &HermitianOperator) -> Result<Option<(f64, f64, f64)>> {
    let pops: Vec<f64> = rho_spec.values.iter().map(|p| p.max(0.0)).collect();
    if spread(&pops) < MIXED_SPREAD || pops.last().copied().unwrap_or(0.0) < PURE_LIMIT_POPULATION {
        return Ok(None);
    }
    let sigma_vals: Vec<f64> = pops.iter().map(|p| -p.ln()).collect();
    let sigma = HermitianOperator::from_matrix_unchecked(CMatrix::from_spectral(&sigma_vals, &rho_spec.vectors));
    let cov_hh = covariance(h, h)?;
    if cov_hh <= 0.0 {
        return Err(Error::NoEnergyScale);
    }
    Ok(Some((cov_hh, covariance(h, &sigma)?, covariance(&sigma, &sigma)?)))
}

pub(crate) fn conventional_from(rho_spec: &Spectrum, h: &HermitianOperator) -> Result<Temperature> {
    let Some((cov_hh, cov_hs, cov_ss)) = conventional_covariances(rho_spec, h)? else {
        let pops_spread = rho_spec.values.first().unwrap_or(&0.0) - rho_spec.values.last().unwrap_or(&0.0);
        return Ok(if pops_spread < MIXED_SPREAD {
            Temperature::Infinite
        } else {
            Temperature::Undefined
        });
    };
    if cov_hs.abs() <= DIVERGENCE_TOL * (cov_hh * cov_ss).sqrt() {
        return Ok(Temperature::Divergent);
    }
    Ok(Temperature::Finite(cov_hh / cov_hs))
}

/// `1/𝒯 = Cov(H,σ)/Cov(H,H)`, finite wherever `σ` is.
pub(crate) fn conventional_inverse_from(rho_spec: &Spectrum, h: &HermitianOperator) -> Option<f64> {
    match conventional_covariances(rho_spec, h) {
        Ok(Some((cov_hh, cov_hs, _))) => Some(cov_hs / cov_hh),
        _ => None,
    }
}

/// `tanh⁻¹ r = ½ ln((1+r)/(1-r))`.
pub fn atanh(r: f64) -> f64 {
    0.5 * ((1.0 + r) / (1.0 - r)).ln()
}

fn qubit_limits(r: f64) -> Option<Temperature> {
    if r < MIXED_SPREAD {
        Some(Temperature::Infinite)
    } else if r > 1.0 - 2.0 * PURE_LIMIT_POPULATION {
        Some(Temperature::PureLimit)
    } else {
        None
    }
}

/// Closed form `T = h / tanh⁻¹ r`.
pub fn temperature_ergotropy_qubit(r: &BlochVector, h: &FieldVector) -> Result<Temperature> {
    if h.norm() == 0.0 {
        return Err(Error::NoEnergyScale);
    }
    let rn = r.norm();
    Ok(qubit_limits(rn).unwrap_or_else(|| Temperature::Finite(h.norm() / atanh(rn))))
}

/// Closed form `𝒯 = h² r / [(h⃗·r⃗) tanh⁻¹ r]`.
pub fn temperature_conventional_qubit(r: &BlochVector, h: &FieldVector) -> Result<Temperature> {
    if h.norm() == 0.0 {
        return Err(Error::NoEnergyScale);
    }
    let rn = r.norm();
    if rn < MIXED_SPREAD {
        return Ok(Temperature::Infinite);
    }
    if rn > 1.0 - 2.0 * PURE_LIMIT_POPULATION {
        return Ok(Temperature::Undefined);
    }
    let hr = r.dot(h);
    if hr.abs() <= DIVERGENCE_TOL * h.norm() * rn {
        return Ok(Temperature::Divergent);
    }
    Ok(Temperature::Finite(h.norm().powi(2) * rn / (hr * atanh(rn))))
}

/// Entropy-based qubit temperature `𝕋 = h⃗·r⃗ / [r tanh⁻¹ r]`.
///
/// `r → 0` is flagged [`Temperature::Divergent`] (the sign depends on the
/// direction of approach); `r → 1` gives [`Temperature::PureLimit`].
pub fn temperature_entropy_based_qubit(r: &BlochVector, h: &FieldVector) -> Temperature {
    let rn = r.norm();
    if rn < MIXED_SPREAD {
        return Temperature::Divergent;
    }
    if rn > 1.0 - 2.0 * PURE_LIMIT_POPULATION {
        return Temperature::PureLimit;
    }
    Temperature::Finite(r.dot(h) / (rn * atanh(rn)))
}

/// All three temperatures for a qubit state.
pub fn temperatures_qubit(r: &BlochVector, h: &FieldVector) -> TemperatureTriple {
    TemperatureTriple {
        t_ergo: temperature_ergotropy_qubit(r, h).unwrap_or(Temperature::Undefined),
        t_conv: temperature_conventional_qubit(r, h).unwrap_or(Temperature::Undefined),
        t_ent: temperature_entropy_based_qubit(r, h),
    }
}
