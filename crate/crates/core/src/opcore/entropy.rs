// SPDX-License-Identifier: Apache-2.0

//! Entropy functionals and the covariance used by the temperature formulas.

use crate::error::{Error, Result};

use super::eig::{eig_hermitian, Order};
use super::matrix::{DensityOperator, HermitianOperator};

/// Eigenvalues below this are treated as outside the support.
pub const SUPPORT_TOL: f64 = 1e-12;

fn xlnx(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        p * p.ln()
    }
}

/// `S = -Σ r_n ln r_n` in units of `k_B`.
pub fn von_neumann_entropy(rho: &DensityOperator) -> f64 {
    entropy_of_populations(&rho.populations())
}

/// Shannon entropy of a population vector, `0 ln 0 = 0`.
pub fn entropy_of_populations(pops: &[f64]) -> f64 {
    -pops.iter().map(|&p| xlnx(p.max(0.0))).sum::<f64>()
}

/// `S(ρ||σ) = tr[ρ(ln ρ - ln σ)]` in units of `k_B`.
pub fn relative_entropy(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    let neg_entropy = -von_neumann_entropy(rho);
    let spec = eig_hermitian(sigma.op(), Order::Descending);
    let mut cross = 0.0;
    for (&s, v) in spec.values.iter().zip(&spec.vectors) {
        let overlap = rho.matrix().expectation(v).re;
        if s < SUPPORT_TOL {
            if overlap > SUPPORT_TOL {
                return Err(Error::InfiniteRelativeEntropy);
            }
            continue;
        }
        cross += overlap * s.ln();
    }
    Ok(neg_entropy - cross)
}

/// `Cov(X, Y) = tr[XY]/d - tr[X] tr[Y]/d²`.
pub fn covariance(x: &HermitianOperator, y: &HermitianOperator) -> Result<f64> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(x.dim(), y.dim()));
    }
    let d = x.dim() as f64;
    Ok(x.trace_product(y) / d - x.trace() * y.trace() / (d * d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcore::bloch::{bloch_to_density, BlochVector, FieldVector};
    use crate::opcore::matrix::pauli;
    use num_complex::Complex64;

    #[test]
    fn entropy_examples() {
        let pure = DensityOperator::pure(&[Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]).unwrap();
        assert!(von_neumann_entropy(&pure).abs() < 1e-14);
        let mixed = DensityOperator::maximally_mixed(2).unwrap();
        assert!((von_neumann_entropy(&mixed) - 2f64.ln()).abs() < 1e-15);
        let rho = bloch_to_density(&BlochVector::new(0.0, 0.48, 0.64).unwrap()).unwrap();
        let expected = -(0.9f64 * 0.9f64.ln() + 0.1 * 0.1f64.ln());
        assert!((von_neumann_entropy(&rho) - expected).abs() < 1e-14);
        assert!((expected - 0.325083).abs() < 1e-6);
    }

    #[test]
    fn relative_entropy_examples() {
        let rho = bloch_to_density(&BlochVector::new(0.1, 0.2, 0.3).unwrap()).unwrap();
        assert!(relative_entropy(&rho, &rho).unwrap().abs() < 1e-14);
        let pure = DensityOperator::pure(&[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap();
        let mixed = DensityOperator::maximally_mixed(2).unwrap();
        assert!((relative_entropy(&pure, &mixed).unwrap() - 2f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn support_violation_is_infinite() {
        let up = DensityOperator::from_populations(&[1.0, 0.0]).unwrap();
        let mixed = DensityOperator::maximally_mixed(2).unwrap();
        assert_eq!(relative_entropy(&mixed, &up), Err(Error::InfiniteRelativeEntropy));
        assert!(relative_entropy(&up, &up).unwrap().abs() < 1e-14);
    }

    #[test]
    fn covariance_examples() {
        let [sx, _, sz] = pauli();
        let id = HermitianOperator::identity(2).unwrap();
        let z = HermitianOperator::new(sz).unwrap();
        let x = HermitianOperator::new(sx).unwrap();
        assert_eq!(covariance(&id, &z).unwrap(), 0.0);
        assert_eq!(covariance(&id, &x).unwrap(), 0.0);
        assert!((covariance(&z, &z).unwrap() - 1.0).abs() < 1e-15);
        let h = FieldVector::new(0.3, -0.4, 1.2).unwrap();
        let hh = h.hamiltonian();
        assert!((covariance(&hh, &hh).unwrap() - h.norm().powi(2)).abs() < 1e-14);
        let three = HermitianOperator::identity(3).unwrap();
        assert_eq!(covariance(&z, &three), Err(Error::DimensionMismatch(2, 3)));
    }
}
