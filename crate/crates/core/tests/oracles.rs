// SPDX-License-Identifier: Apache-2.0

mod common;

use common::{determinant, random_hermitian, random_state, random_unitary};
use itertools::Itertools;
use num_complex::Complex64;
use qthermo_core::ergo::{ergotropy, temperature_conventional, temperature_ergotropy};
use qthermo_core::opcore::{
    bloch_to_density, density_to_bloch, eig_hermitian, eig_jacobi, relative_entropy, von_neumann_entropy,
};
use qthermo_core::{CMatrix, DensityOperator, FieldVector, HermitianOperator, Order, Temperature};
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn eigenvalues_are_roots_of_the_characteristic_polynomial() {
    let mut rng = StdRng::seed_from_u64(11);
    for d in 2..=6 {
        for _ in 0..200 {
            let h = random_hermitian(&mut rng, d);
            for spec in [eig_hermitian(&h, Order::Ascending), eig_jacobi(&h, Order::Ascending)] {
                let scale = h.matrix().frobenius_norm();
                for &l in &spec.values {
                    let shifted = h.matrix() - &CMatrix::identity(d).scale(l);
                    // |det(M - λ)| ≤ (gap to λ) × ‖M‖^{d-1}; compare against the scale.
                    assert!(determinant(&shifted).norm() < 1e-10 * scale.powi(d as i32), "d = {d}");
                }
                assert!((&spec.reconstruct() - h.matrix()).max_abs() < 1e-10 * scale.max(1.0));
                assert!(spec.orthonormality_defect() < 1e-12);
                let trace: f64 = spec.values.iter().sum();
                assert!((trace - h.trace()).abs() < 1e-11 * scale.max(1.0));
                assert!(spec.values.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }
}

fn brute_force_ergotropy(rho: &DensityOperator, h: &HermitianOperator) -> f64 {
    let pops = eig_hermitian(rho.op(), Order::Descending).values;
    let levels = eig_hermitian(h, Order::Ascending).values;
    let best = (0..levels.len())
        .permutations(levels.len())
        .map(|perm| pops.iter().zip(&perm).map(|(p, &k)| p * levels[k]).sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    rho.expect(h) - best
}

#[test]
fn ergotropy_matches_permutation_minimum() {
    let mut rng = StdRng::seed_from_u64(12);
    for d in 2..=5 {
        for _ in 0..500 {
            let rho = random_state(&mut rng, d);
            let h = random_hermitian(&mut rng, d);
            let e = ergotropy(&rho, &h).unwrap();
            assert!((e - brute_force_ergotropy(&rho, &h)).abs() < 1e-10);
            assert!(e >= -1e-12);
        }
    }
}

#[test]
fn qubit_relative_entropy_closed_form() {
    // ln σ = a 𝟙 + b ŝ·σ⃗ with a = ½ ln((1-s²)/4), b = tanh⁻¹ s.
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..1000 {
        let rho = random_state(&mut rng, 2);
        let sigma = random_state(&mut rng, 2);
        let r = density_to_bloch(&rho).unwrap();
        let s = density_to_bloch(&sigma).unwrap();
        let sn = s.norm();
        let a = 0.5 * ((1.0 - sn * sn) / 4.0).ln();
        let b = 0.5 * ((1.0 + sn) / (1.0 - sn)).ln();
        let cross = a + b * (r.x * s.x + r.y * s.y + r.z * s.z) / sn;
        let expected = -von_neumann_oracle(r.norm()) - cross;
        let got = relative_entropy(&rho, &sigma).unwrap();
        assert!((got - expected).abs() < 1e-10, "{got} vs {expected}");
        assert!(got >= -1e-14);
    }
}

fn von_neumann_oracle(r: f64) -> f64 {
    let f = |p: f64| if p > 0.0 { -p * p.ln() } else { 0.0 };
    f(0.5 * (1.0 + r)) + f(0.5 * (1.0 - r))
}

#[test]
fn relative_entropy_to_gibbs_is_free_energy_gap() {
    let mut rng = StdRng::seed_from_u64(14);
    for d in 2..=5 {
        for _ in 0..200 {
            let rho = random_state(&mut rng, d);
            let h = random_hermitian(&mut rng, d);
            let beta = 0.7;
            let gibbs = DensityOperator::gibbs(&h, beta).unwrap();
            let levels = eig_hermitian(&h, Order::Ascending).values;
            let ln_z = {
                let e0 = levels[0];
                -beta * e0 + levels.iter().map(|e| (-beta * (e - e0)).exp()).sum::<f64>().ln()
            };
            let free = rho.expect(&h) - von_neumann_entropy(&rho) / beta;
            let free_eq = -ln_z / beta;
            let got = relative_entropy(&rho, &gibbs).unwrap();
            assert!((got - beta * (free - free_eq)).abs() < 1e-9);
            assert!(relative_entropy(&rho, &rho).unwrap().abs() < 1e-12);
        }
    }
}

#[test]
fn functionals_are_unitarily_invariant() {
    let mut rng = StdRng::seed_from_u64(15);
    for d in 2..=5 {
        for _ in 0..200 {
            let rho = random_state(&mut rng, d);
            let h = random_hermitian(&mut rng, d);
            let v = random_unitary(&mut rng, d);
            let rho_v = rho.conjugate_by(&v);
            let h_v = h.conjugate_by(&v);
            assert!((ergotropy(&rho, &h).unwrap() - ergotropy(&rho_v, &h_v).unwrap()).abs() < 1e-8);
            assert!((von_neumann_entropy(&rho) - von_neumann_entropy(&rho_v)).abs() < 1e-8);
            let pairs = [
                (temperature_ergotropy(&rho, &h).unwrap(), temperature_ergotropy(&rho_v, &h_v).unwrap()),
                (temperature_conventional(&rho, &h).unwrap(), temperature_conventional(&rho_v, &h_v).unwrap()),
            ];
            for (a, b) in pairs {
                match (a, b) {
                    (Temperature::Finite(x), Temperature::Finite(y)) => {
                        assert!((x - y).abs() < 1e-8 * x.abs().max(1.0), "{x} vs {y}")
                    }
                    (x, y) => assert_eq!(x, y),
                }
            }
        }
    }
}

#[test]
fn bloch_density_round_trip_against_pauli_expansion() {
    let mut rng = StdRng::seed_from_u64(16);
    for _ in 0..500 {
        let rho = random_state(&mut rng, 2);
        let r = density_to_bloch(&rho).unwrap();
        let back = bloch_to_density(&r).unwrap();
        assert!((back.matrix() - rho.matrix()).max_abs() < 1e-14);
        // ρ₀₁ = (x - i y)/2
        let c = rho.matrix()[(0, 1)];
        assert!((c - Complex64::new(r.x, -r.y) * 0.5).norm() < 1e-15);
    }
    let f = FieldVector::new(0.3, -0.4, 1.2).unwrap();
    let h = f.hamiltonian();
    assert!((h.matrix()[(0, 0)].re + 1.2).abs() < 1e-15);
    assert!((h.matrix()[(0, 1)] - Complex64::new(-0.3, -0.4)).norm() < 1e-15);
}
