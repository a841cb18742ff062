// SPDX-License-Identifier: Apache-2.0

//! Lindblad right-hand sides and fixed-step RK4 trajectories for a qubit.

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::opcore::{
    bloch_to_density, density_to_bloch, eig_hermitian, pauli, BlochVector, CMatrix,
    DensityOperator, FieldVector, HermitianOperator, Order, POSITIVITY_TOL,
};

use super::channel::{ChannelKind, ChannelSpec};
use super::ohmic::rate_with;

/// Default RK4 step in the channel's native time unit.
pub const DEFAULT_DT: f64 = 1e-3;
/// Negative eigenvalue beyond which integration aborts.
pub const POSITIVITY_ABORT: f64 = 1e-8;

/// Time grid with states and the field sampled at each time.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityOperator>,
    pub fields: Vec<FieldVector>,
    /// Sample indices whose state was clipped back to positivity.
    pub renormalized: Vec<usize>,
}

impl Trajectory {
    pub fn new(times: Vec<f64>, states: Vec<DensityOperator>, fields: Vec<FieldVector>) -> Result<Self> {
        if times.len() != states.len() || times.len() != fields.len() {
            return Err(Error::BadTrajectory(format!(
                "length mismatch: {} times, {} states, {} fields",
                times.len(),
                states.len(),
                fields.len()
            )));
        }
        if times.windows(2).any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater)) {
            return Err(Error::BadTrajectory("times must be strictly increasing".into()));
        }
        if let Some(s) = states.iter().find(|s| s.dim() != 2) {
            return Err(Error::NotQubit(s.dim()));
        }
        Ok(Self {
            times,
            states,
            fields,
            renormalized: Vec::new(),
        })
    }

    /// Builds a trajectory from Bloch vectors.
    pub fn from_bloch(times: Vec<f64>, blochs: &[BlochVector], fields: Vec<FieldVector>) -> Result<Self> {
        let states = blochs.iter().map(bloch_to_density).collect::<Result<Vec<_>>>()?;
        Self::new(times, states, fields)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn bloch(&self, i: usize) -> BlochVector {
        density_to_bloch(&self.states[i]).expect("trajectory states are qubits")
    }

    pub fn hamiltonian(&self, i: usize) -> HermitianOperator {
        self.fields[i].hamiltonian()
    }

    /// The same grid with every state replaced by its passive state.
    pub fn passive_projection(&self) -> Self {
        let states = self
            .states
            .iter()
            .zip(&self.fields)
            .map(|(rho, h)| {
                crate::ergo::passive_state(rho, &h.hamiltonian())
                    .expect("qubit dimensions match")
                    .passive_state
            })
            .collect();
        Self {
            times: self.times.clone(),
            states,
            fields: self.fields.clone(),
            renormalized: self.renormalized.clone(),
        }
    }
}

fn dissipator(l: &CMatrix, rate: f64, rho: &CMatrix) -> CMatrix {
    let ld = l.adjoint();
    let jump = &(l * rho) * &ld;
    let ldl = &ld * l;
    (&jump - &ldl.anticommutator(rho).scale(0.5)).scale(rate)
}

pub(crate) fn rhs_matrix(rho: &CMatrix, h: &HermitianOperator, spec: &ChannelSpec, t: f64, euler_gamma_s: f64) -> CMatrix {
    let minus_i = Complex64::new(0.0, -1.0);
    let coherent = h.matrix().commutator(rho).scale_c(minus_i * spec.coherent_scale());
    let dissipative = match spec.kind {
        ChannelKind::Gad => {
            let hs = eig_hermitian(h, Order::Ascending);
            let (g, e) = (&hs.vectors[0], &hs.vectors[1]);
            let lower = CMatrix::outer(g, e);
            let raise = CMatrix::outer(e, g);
            &dissipator(&lower, spec.gamma_minus(), rho) + &dissipator(&raise, spec.gamma_plus(), rho)
        }
        ChannelKind::PdMarkov | ChannelKind::PdNonMarkov => {
            let rate = match spec.kind {
                ChannelKind::PdMarkov => spec.gamma,
                _ => 0.5 * spec.kappa * rate_with(t, spec.s, euler_gamma_s),
            };
            let sz = &pauli()[2];
            (&(&(sz * rho) * sz) - rho).scale(rate)
        }
    };
    &coherent + &dissipative
}

/// `dρ/dt` for the channel, in its native time unit.
///
/// GAD jumps are `L⁻ = |g⟩⟨e|` and `L⁺ = |e⟩⟨g|` built from the ground and
/// excited states of `h`; phase damping uses `σ_z`. For the non-Markovian
/// kind `t` is `τ = ω_c t` and the dephasing rate is `(κ/2) γ(τ, s)`.
pub fn lindblad_rhs(rho: &DensityOperator, h: &HermitianOperator, spec: &ChannelSpec, t: f64) -> Result<HermitianOperator> {
    if rho.dim() != 2 {
        return Err(Error::NotQubit(rho.dim()));
    }
    if h.dim() != 2 {
        return Err(Error::NotQubit(h.dim()));
    }
    let g = if spec.kind == ChannelKind::PdNonMarkov { spec.euler_gamma_s() } else { 0.0 };
    Ok(HermitianOperator::from_matrix_unchecked(rhs_matrix(rho.matrix(), h, spec, t, g)))
}

/// Fixed-step RK4 on the grid `{0, dt, ..., t_max}`.
pub fn integrate<F>(spec: &ChannelSpec, field: F, rho0: &DensityOperator, t_max: f64, dt: f64) -> Result<Trajectory>
where
    F: Fn(f64) -> FieldVector,
{
    let spec = spec.validated()?;
    if rho0.dim() != 2 {
        return Err(Error::NotQubit(rho0.dim()));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(invalid("dt", format!("must be > 0, got {dt}")));
    }
    if !(t_max.is_finite() && t_max >= dt * (1.0 - 1e-9)) {
        return Err(invalid("t_max", format!("must be >= dt = {dt}, got {t_max}")));
    }
    let steps = (t_max / dt).round() as usize;
    let euler_gamma_s = if spec.kind == ChannelKind::PdNonMarkov { spec.euler_gamma_s() } else { 0.0 };
    let f = |t: f64, rho: &CMatrix| rhs_matrix(rho, &field(t).hamiltonian(), &spec, t, euler_gamma_s);

    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut fields = Vec::with_capacity(steps + 1);
    let mut renormalized = Vec::new();
    let mut rho = rho0.matrix().clone();
    times.push(0.0);
    states.push(rho0.clone());
    fields.push(field(0.0));

    for k in 0..steps {
        let t = k as f64 * dt;
        let k1 = f(t, &rho);
        let k2 = f(t + 0.5 * dt, &(&rho + &k1.scale(0.5 * dt)));
        let k3 = f(t + 0.5 * dt, &(&rho + &k2.scale(0.5 * dt)));
        let k4 = f(t + dt, &(&rho + &k3.scale(dt)));
        let incr = &(&k1 + &k2.scale(2.0)) + &(&k3.scale(2.0) + &k4);
        rho = (&rho + &incr.scale(dt / 6.0)).hermitian_part();

        let t_next = (k + 1) as f64 * dt;
        let op = HermitianOperator::from_matrix_unchecked(rho.clone());
        let spec_asc = eig_hermitian(&op, Order::Ascending);
        let min = spec_asc.values[0];
        if min < -POSITIVITY_ABORT || !min.is_finite() {
            return Err(Error::PositivityLost { t: t_next, eigenvalue: min });
        }
        let state = if min < -POSITIVITY_TOL {
            let clipped: Vec<f64> = spec_asc.values.iter().map(|p| p.max(0.0)).collect();
            let total: f64 = clipped.iter().sum();
            let pops: Vec<f64> = clipped.iter().map(|p| p / total).collect();
            rho = CMatrix::from_spectral(&pops, &spec_asc.vectors).hermitian_part();
            renormalized.push(k + 1);
            DensityOperator::from_matrix(rho.clone())?
        } else {
            DensityOperator::from_operator_unchecked(op)
        };
        times.push(t_next);
        states.push(state);
        fields.push(field(t_next));
    }

    Ok(Trajectory {
        times,
        states,
        fields,
        renormalized,
    })
}

/// Closed-form Markovian phase-damping solution under `h_z(t) = -ω₀(1 - cos ωt)/2`.
pub fn pd_markov_bloch(t: f64, r0: &BlochVector, spec: &ChannelSpec) -> Result<BlochVector> {
    spec.require(ChannelKind::PdMarkov)?;
    let alpha = if spec.omega == 0.0 {
        0.0
    } else {
        spec.omega0 * (spec.omega * t - (spec.omega * t).sin()) / spec.omega
    };
    let decay = (-2.0 * t * spec.gamma).exp();
    let (sa, ca) = alpha.sin_cos();
    Ok(BlochVector {
        x: decay * (r0.x * ca - r0.y * sa),
        y: decay * (r0.y * ca + r0.x * sa),
        z: r0.z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qubit(x: f64, y: f64, z: f64) -> DensityOperator {
        bloch_to_density(&BlochVector::new(x, y, z).unwrap()).unwrap()
    }

    #[test]
    fn gad_fixed_point_is_stationary() {
        let spec = ChannelSpec::gad(1.0, 1.0, 10.0).unwrap();
        let h = spec.default_field(0.0).hamiltonian();
        let rho_e = spec.fixed_point(&h).unwrap();
        let d = lindblad_rhs(&rho_e, &h, &spec, 0.0).unwrap();
        assert!(d.matrix().max_abs() < 1e-12);
    }

    #[test]
    fn gad_rate_equation_at_the_center() {
        let spec = ChannelSpec::gad(1.0, 1.0, 10.0).unwrap();
        let h = spec.default_field(0.0).hamiltonian();
        let mixed = DensityOperator::maximally_mixed(2).unwrap();
        let d = lindblad_rhs(&mixed, &h, &spec, 0.0).unwrap();
        let dz = (d.matrix()[(0, 0)] - d.matrix()[(1, 1)]).re;
        let z_eq = -(0.05f64).tanh();
        assert!((z_eq + 0.049958).abs() < 1e-6);
        let expected = spec.relaxation_rate() * z_eq;
        assert!((dz - expected).abs() < 1e-12, "{dz} vs {expected}");
        assert!(d.trace().abs() < 1e-15);
    }

    #[test]
    fn dephasing_leaves_diagonal_states() {
        let spec = ChannelSpec::pd_markov(1.0, 0.7, 1.0).unwrap();
        let rho = qubit(0.0, 0.0, 0.3);
        let d = lindblad_rhs(&rho, &HermitianOperator::zeros(2).unwrap(), &spec, 0.0).unwrap();
        assert_eq!(d.matrix().max_abs(), 0.0);
    }

    #[test]
    fn rejects_non_qubit() {
        let spec = ChannelSpec::pd_markov(1.0, 0.7, 1.0).unwrap();
        let rho = DensityOperator::maximally_mixed(3).unwrap();
        let h = HermitianOperator::zeros(3).unwrap();
        assert_eq!(lindblad_rhs(&rho, &h, &spec, 0.0), Err(Error::NotQubit(3)));
    }

    #[test]
    fn unitary_precession_conserves_radius() {
        let spec = ChannelSpec::gad(1.0, 0.0, 1.0).unwrap();
        let rho0 = qubit(0.3, 0.4, 0.5);
        let traj = integrate(&spec, |t| spec.default_field(t), &rho0, 10.0, 1e-3).unwrap();
        assert_eq!(traj.len(), 10_001);
        let r0 = traj.bloch(0).norm();
        for i in 0..traj.len() {
            assert!((traj.bloch(i).norm() - r0).abs() < 1e-9);
        }
    }

    #[test]
    fn gad_matches_exponential_relaxation() {
        let spec = ChannelSpec::gad(1.0, 1.0, 10.0).unwrap();
        let traj = integrate(&spec, |t| spec.default_field(t), &qubit(0.45, 0.0, -0.8), 1.0, 1e-3).unwrap();
        let z_eq = -(0.5 * spec.beta_e() * spec.omega0).tanh();
        let rate = spec.relaxation_rate();
        for (i, &t) in traj.times.iter().enumerate() {
            let exact = z_eq + (-0.8 - z_eq) * (-rate * t).exp();
            assert!((traj.bloch(i).z - exact).abs() < 1e-6);
            assert!((traj.states[i].op().trace() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn pd_markov_closed_form_examples() {
        let r0 = BlochVector::new(0.5, 0.7, 0.0).unwrap();
        let spec = ChannelSpec::pd_markov(1.0, 1.0, 1.0).unwrap();
        assert_eq!(pd_markov_bloch(0.0, &r0, &spec).unwrap(), r0);
        let r = pd_markov_bloch(1.0, &r0, &spec).unwrap();
        let radius = r.x.hypot(r.y);
        assert!((radius - 0.74f64.sqrt() * (-2.0f64).exp()).abs() < 1e-14);
        assert!((radius - 0.11641).abs() < 1e-5);
        let free = ChannelSpec::pd_markov(1.0, 0.0, 1.0).unwrap();
        let back = pd_markov_bloch(2.0 * std::f64::consts::PI, &r0, &free).unwrap();
        assert!(back.distance(&r0) < 1e-14);
        let gad = ChannelSpec::gad(1.0, 1.0, 1.0).unwrap();
        assert!(pd_markov_bloch(1.0, &r0, &gad).is_err());
    }

    #[test]
    fn pd_markov_numeric_matches_closed_form() {
        let spec = ChannelSpec::pd_markov(1.0, 1.0, 1.0).unwrap();
        let r0 = BlochVector::new(0.5, 0.7, 0.0).unwrap();
        let traj = integrate(&spec, |t| spec.default_field(t), &bloch_to_density(&r0).unwrap(), 5.0, 1e-3).unwrap();
        for (i, &t) in traj.times.iter().enumerate() {
            let exact = pd_markov_bloch(t, &r0, &spec).unwrap();
            assert!(traj.bloch(i).distance(&exact) < 1e-6);
        }
    }

    #[test]
    fn grid_validation() {
        let spec = ChannelSpec::pd_markov(1.0, 1.0, 1.0).unwrap();
        let rho0 = qubit(0.1, 0.0, 0.0);
        assert!(integrate(&spec, |t| spec.default_field(t), &rho0, 1.0, 0.0).is_err());
        assert!(integrate(&spec, |t| spec.default_field(t), &rho0, 0.5e-3, 1e-3).is_err());
        let two = integrate(&spec, |t| spec.default_field(t), &rho0, 1e-3, 1e-3).unwrap();
        assert_eq!(two.len(), 2);
    }

    #[test]
    fn huge_step_aborts() {
        let spec = ChannelSpec::gad(1.0, 50.0, 10.0).unwrap();
        let rho0 = qubit(0.0, 0.0, 0.99);
        let r = integrate(&spec, |t| spec.default_field(t), &rho0, 1.0, 0.1);
        assert!(matches!(r, Err(Error::PositivityLost { .. })), "{r:?}");
    }

    #[test]
    fn trajectory_validation() {
        let rho = qubit(0.0, 0.0, 0.0);
        let f = FieldVector::along_z(1.0);
        assert!(Trajectory::new(vec![0.0, 0.0], vec![rho.clone(), rho.clone()], vec![f, f]).is_err());
        assert!(Trajectory::new(vec![0.0], vec![rho.clone(), rho], vec![f]).is_err());
    }
}
