// SPDX-License-Identifier: Apache-2.0

//! Heat-based quantifiers of non-Markovianity for ohmic-like dephasing.
//!
//! During every interval `[a, b]` on which `γ(τ, s) ≤ 0` the qubit regains
//! coherence and heat flows back. The measure for formulation `f` is
//! `N_f = max_{ρ(0)} Σ_i |Q_f(a_i) - Q_f(b_i)|`, in units of `ω₀`.
//!
//! The dephasing is diagonal in the energy basis, so in the rotating frame
//! `r(τ) = r₀ (cos²θ₀ + Γ²(τ) sin²θ₀)^{1/2}` and `z` is frozen. With
//! `H = ω₀σ_z` the three heats are
//!
//! - ergotropy-based: `Q(τ) = -ω₀ (r(τ) - r₀)`,
//! - entropy-based: `ℚ(τ) = ω₀ z₀ ln(r(τ)/r₀)`,
//! - standard: `𝒬(τ) = ω₀ (z(τ) - z₀) = 0`.

use std::f64::consts::PI;

use crate::dynamics::special::gamma;
use crate::dynamics::{DephasingCache, Trajectory};
use crate::ergo::{temperatures_qubit, Temperature};
use crate::error::{invalid, Result};
use crate::opcore::{BlochVector, FieldVector};
use crate::thermo::Formulation;

/// Default horizon in `τ = ω_c t`.
pub const DEFAULT_TAU_MAX: f64 = 50.0;
/// Points in the sign scan of `γ`.
pub const SCAN_POINTS: usize = 10_000;
/// Grid resolution per axis for the `(r₀, θ₀)` maximisation.
pub const GRID_POINTS: usize = 200;
/// Grid surplus over the xy-plane candidate that raises a discrepancy.
pub const DISCREPANCY_TOL: f64 = 1e-6;
/// Relative size of a temperature reversal the witness reports.
pub const WITNESS_REL_TOL: f64 = 1e-9;

/// A maximal interval on which `γ(τ, s) ≤ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignInterval {
    pub a: f64,
    pub b: f64,
    /// `b` is the horizon, not a root.
    pub clipped: bool,
}

fn check_inputs(s: f64, tau_max: f64) -> Result<()> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(invalid("s", format!("ohmicity must be > 0, got {s}")));
    }
    if !(tau_max > 0.0 && tau_max.is_finite()) {
        return Err(invalid("tau_max", format!("must be > 0, got {tau_max}")));
    }
    Ok(())
}

/// Sign carrier of `γ`: the prefactor `(1+τ²)^{-s/2} Γ_e(s)` is positive.
fn sign_kernel(tau: f64, s: f64) -> f64 {
    (s * tau.atan()).sin()
}

/// Bisects a sign change of `sign_kernel` down to adjacent floats.
fn bisect_root(mut lo: f64, mut hi: f64, s: f64) -> f64 {
    let f_lo = sign_kernel(lo, s);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = sign_kernel(mid, s);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if sign_kernel(lo, s).abs() <= sign_kernel(hi, s).abs() {
        lo
    } else {
        hi
    }
}

/// Negative-rate intervals of `γ(·, s)` on `(0, tau_max]`.
pub fn negative_rate_intervals(s: f64, tau_max: f64) -> Result<Vec<SignInterval>> {
    check_inputs(s, tau_max)?;
    let step = tau_max / SCAN_POINTS as f64;
    let mut out = Vec::new();
    let mut start: Option<f64> = None;
    let mut prev_tau = step;
    let mut prev_neg = sign_kernel(prev_tau, s) < 0.0;
    if prev_neg {
        start = Some(bisect_root(0.0, prev_tau, s).max(f64::MIN_POSITIVE));
    }
    for k in 2..=SCAN_POINTS {
        let tau = if k == SCAN_POINTS { tau_max } else { k as f64 * step };
        let neg = sign_kernel(tau, s) < 0.0;
        if neg != prev_neg {
            let root = bisect_root(prev_tau, tau, s);
            if neg {
                start = Some(root);
            } else if let Some(a) = start.take() {
                out.push(SignInterval { a, b: root, clipped: false });
            }
        }
        prev_tau = tau;
        prev_neg = neg;
    }
    if let Some(a) = start {
        out.push(SignInterval {
            a,
            b: tau_max,
            clipped: true,
        });
    }
    Ok(out)
}

/// Radius `r(τ)/r₀` for a given dephasing factor.
fn radius_ratio(g: f64, theta0: f64) -> f64 {
    let (sin, cos) = theta0.sin_cos();
    (cos * cos + g * g * sin * sin).sqrt()
}

fn check_state(r0: f64, theta0: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&r0) {
        return Err(invalid("r0", format!("must lie in [0, 1], got {r0}")));
    }
    if !theta0.is_finite() {
        return Err(invalid("theta0", "must be finite"));
    }
    Ok(())
}

/// Ergotropy-based heat `Q(τ) = -ω₀ r₀ ([cos²θ₀ + Γ²(τ) sin²θ₀]^{1/2} - 1)`, units of `ω₀`.
pub fn heat_q_closed(tau: f64, r0: f64, theta0: f64, s: f64, kappa: f64) -> Result<f64> {
    check_state(r0, theta0)?;
    let g = crate::dynamics::dephasing_factor(tau, s, kappa)?;
    Ok(-r0 * (radius_ratio(g, theta0) - 1.0))
}

/// Entropy-based heat `ℚ(τ) = ω₀ r₀ cos θ₀ ln(r(τ)/r₀)`, units of `ω₀`.
pub fn heat_ent_closed(tau: f64, r0: f64, theta0: f64, s: f64, kappa: f64) -> Result<f64> {
    check_state(r0, theta0)?;
    if r0 == 0.0 {
        return Ok(0.0);
    }
    let g = crate::dynamics::dephasing_factor(tau, s, kappa)?;
    Ok(r0 * theta0.cos() * radius_ratio(g, theta0).ln())
}

/// Standard heat `𝒬(τ) = ω₀ (z(τ) - z₀)`; zero because `z` is conserved.
pub fn heat_std_closed(_tau: f64, r0: f64, theta0: f64, _s: f64, _kappa: f64) -> Result<f64> {
    check_state(r0, theta0)?;
    Ok(0.0)
}

/// `|Q_f(a) - Q_f(b)|` from the dephasing factors at the endpoints.
fn interval_heat(f: Formulation, ga: f64, gb: f64, r0: f64, theta0: f64) -> f64 {
    match f {
        Formulation::ErgotropyBased => r0 * (radius_ratio(ga, theta0) - radius_ratio(gb, theta0)).abs(),
        Formulation::EntropyBased => {
            if r0 == 0.0 {
                0.0
            } else {
                (r0 * theta0.cos() * (radius_ratio(gb, theta0).ln() - radius_ratio(ga, theta0).ln())).abs()
            }
        }
        Formulation::Standard | Formulation::Operational => 0.0,
    }
}

/// Outcome of one maximisation over initial states.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureReport {
    pub formulation: Formulation,
    /// The candidate unless the grid beats it by more than [`DISCREPANCY_TOL`].
    pub value: f64,
    /// Maximiser as polar coordinates `(r₀, θ₀)`.
    pub argmax: (f64, f64),
    /// Pure state in the xy-plane.
    pub candidate: f64,
    /// Refined grid maximum.
    pub grid: f64,
    /// Grid exceeds the candidate by more than [`DISCREPANCY_TOL`].
    pub discrepancy: bool,
}

impl MeasureReport {
    pub fn argmax_state(&self) -> BlochVector {
        let (r0, th) = self.argmax;
        BlochVector::from_spherical(r0, th, 0.0).expect("grid points lie in the unit ball")
    }
}

/// Everything the s-scan keeps for one ohmicity.
#[derive(Debug, Clone, PartialEq)]
pub struct NMReport {
    pub s: f64,
    pub kappa: f64,
    pub tau_max: f64,
    pub intervals: Vec<SignInterval>,
    /// An interval is cut by the horizon.
    pub truncated: bool,
    /// Bound on the heat missed beyond the horizon, units of `ω₀`.
    pub truncation_bound: f64,
    pub n_q: MeasureReport,
    pub n_ent: MeasureReport,
    pub n_std: MeasureReport,
    /// `T_ergo` reverses on the `|r₀| = 0.8` xy-plane trajectory.
    pub witness_nonmonotonic_t: bool,
}

struct IntervalFactors {
    intervals: Vec<SignInterval>,
    factors: Vec<(f64, f64)>,
    gamma_at_horizon: f64,
}

fn interval_factors(s: f64, tau_max: f64, kappa: f64) -> Result<IntervalFactors> {
    let intervals = negative_rate_intervals(s, tau_max)?;
    let mut cache = DephasingCache::new(s, kappa)?;
    let mut factors = Vec::with_capacity(intervals.len());
    for iv in &intervals {
        factors.push((cache.factor(iv.a)?, cache.factor(iv.b)?));
    }
    let gamma_at_horizon = cache.factor(tau_max)?;
    Ok(IntervalFactors {
        intervals,
        factors,
        gamma_at_horizon,
    })
}

fn summed(f: Formulation, factors: &[(f64, f64)], r0: f64, theta0: f64) -> f64 {
    factors.iter().map(|&(ga, gb)| interval_heat(f, ga, gb, r0, theta0)).sum()
}

fn golden_max(mut lo: f64, mut hi: f64, g: impl Fn(f64) -> f64) -> (f64, f64) {
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (g(x1), g(x2));
    for _ in 0..200 {
        if hi - lo < 1e-13 {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = g(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

fn maximise(f: Formulation, factors: &[(f64, f64)]) -> MeasureReport {
    let candidate = summed(f, factors, 1.0, 0.5 * PI);
    let n = GRID_POINTS - 1;
    let mut best = (0.0, 0.0, f64::NEG_INFINITY);
    for i in 0..=n {
        let r0 = i as f64 / n as f64;
        for j in 0..=n {
            let th = PI * j as f64 / n as f64;
            let v = summed(f, factors, r0, th);
            if v > best.2 {
                best = (r0, th, v);
            }
        }
    }
    let (r0, th0, v0) = best;
    let h = PI / n as f64;
    let (th, v) = golden_max((th0 - h).max(0.0), (th0 + h).min(PI), |t| summed(f, factors, r0, t));
    let (grid_th, grid) = if v > v0 { (th, v) } else { (th0, v0) };
    let discrepancy = grid > candidate + DISCREPANCY_TOL;
    let (value, argmax) = if discrepancy {
        (grid, (r0, grid_th))
    } else {
        (candidate, (1.0, 0.5 * PI))
    };
    MeasureReport {
        formulation: f,
        value,
        argmax,
        candidate,
        grid,
        discrepancy,
    }
}

fn check_formulation(f: Formulation) -> Result<()> {
    if f == Formulation::Operational {
        return Err(invalid("formulation", "non-Markovianity measures use standard, entropy or ergotropy heat"));
    }
    Ok(())
}

/// `N_f` for one ohmicity.
pub fn nm_measure(f: Formulation, s: f64, tau_max: f64, kappa: f64) -> Result<MeasureReport> {
    check_formulation(f)?;
    let fac = interval_factors(s, tau_max, kappa)?;
    Ok(maximise(f, &fac.factors))
}

/// Tail bound `κ Γ_e(s) τ_max^{1-s}/(s-1)` on `|Γ(∞) - Γ(τ_max)|`.
pub fn tail_bound(s: f64, tau_max: f64, kappa: f64) -> f64 {
    if s <= 1.0 {
        return f64::INFINITY;
    }
    kappa.abs() * gamma(s) * tau_max.powf(1.0 - s) / (s - 1.0)
}

/// All three measures plus the temperature witness.
pub fn nm_report(s: f64, tau_max: f64, kappa: f64) -> Result<NMReport> {
    let fac = interval_factors(s, tau_max, kappa)?;
    let truncated = fac.intervals.iter().any(|iv| iv.clipped);
    let truncation_bound = if truncated {
        // ln-ratio sensitivity is at most 1/Γ.
        tail_bound(s, tau_max, kappa) / fac.gamma_at_horizon.min(1.0)
    } else {
        0.0
    };
    let witness_t_max = tau_max.min(20.0);
    let traj = closed_form_trajectory(
        s,
        kappa,
        1.0,
        &BlochVector::new(0.8, 0.0, 0.0)?,
        witness_t_max,
        1e-2,
    )?;
    Ok(NMReport {
        s,
        kappa,
        tau_max,
        truncated,
        truncation_bound,
        n_q: maximise(Formulation::ErgotropyBased, &fac.factors),
        n_ent: maximise(Formulation::EntropyBased, &fac.factors),
        n_std: maximise(Formulation::Standard, &fac.factors),
        intervals: fac.intervals,
        witness_nonmonotonic_t: temperature_witness(&traj).t_ergo.nonmonotonic,
    })
}

/// Rotating-frame trajectory on a uniform `τ` grid from the closed form.
pub fn closed_form_trajectory(
    s: f64,
    kappa: f64,
    omega0: f64,
    r0: &BlochVector,
    tau_max: f64,
    dtau: f64,
) -> Result<Trajectory> {
    check_inputs(s, tau_max)?;
    if !(dtau > 0.0 && dtau <= tau_max) {
        return Err(invalid("dtau", format!("must lie in (0, tau_max], got {dtau}")));
    }
    let steps = (tau_max / dtau).round() as usize;
    let mut cache = DephasingCache::new(s, kappa)?;
    let mut times = Vec::with_capacity(steps + 1);
    let mut blochs = Vec::with_capacity(steps + 1);
    for k in 0..=steps {
        let tau = k as f64 * dtau;
        let g = cache.factor(tau)?;
        times.push(tau);
        blochs.push(BlochVector {
            x: r0.x * g,
            y: r0.y * g,
            z: r0.z,
        });
    }
    let field = FieldVector::along_z(-omega0);
    Trajectory::from_bloch(times, &blochs, vec![field; steps + 1])
}

/// Monotonicity verdict for one temperature series.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MonotonicityCheck {
    pub nonmonotonic: bool,
    /// Time spans `[t_start, t_end]` moving against the initial trend.
    pub reversals: Vec<(f64, f64)>,
    /// Samples without a finite temperature.
    pub excluded: usize,
}

fn monotonicity(times: &[f64], values: &[Temperature]) -> MonotonicityCheck {
    let mut check = MonotonicityCheck::default();
    let mut prev: Option<(f64, f64)> = None;
    let mut trend = 0.0;
    let mut open: Option<(f64, f64)> = None;
    for (&t, v) in times.iter().zip(values) {
        let Temperature::Finite(x) = *v else {
            check.excluded += 1;
            continue;
        };
        if let Some((tp, xp)) = prev {
            let d = x - xp;
            if d.abs() > WITNESS_REL_TOL * x.abs().max(xp.abs()) {
                let sign = d.signum();
                if trend == 0.0 {
                    trend = sign;
                } else if sign != trend {
                    open = Some(match open {
                        Some((start, _)) => (start, t),
                        None => (tp, t),
                    });
                } else if let Some(span) = open.take() {
                    check.reversals.push(span);
                }
            }
        }
        prev = Some((t, x));
    }
    if let Some(span) = open {
        check.reversals.push(span);
    }
    check.nonmonotonic = !check.reversals.is_empty();
    check
}

/// Monotonicity of the three temperatures along a qubit trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport {
    pub t_ergo: MonotonicityCheck,
    pub t_conv: MonotonicityCheck,
    pub t_ent: MonotonicityCheck,
}

pub fn temperature_witness(traj: &Trajectory) -> WitnessReport {
    let mut ergo = Vec::with_capacity(traj.len());
    let mut conv = Vec::with_capacity(traj.len());
    let mut ent = Vec::with_capacity(traj.len());
    for i in 0..traj.len() {
        let triple = temperatures_qubit(&traj.bloch(i), &traj.fields[i]);
        ergo.push(triple.t_ergo);
        conv.push(triple.t_conv);
        ent.push(triple.t_ent);
    }
    WitnessReport {
        t_ergo: monotonicity(&traj.times, &ergo),
        t_conv: monotonicity(&traj.times, &conv),
        t_ent: monotonicity(&traj.times, &ent),
    }
}
