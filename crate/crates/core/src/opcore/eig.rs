// SPDX-License-Identifier: Apache-2.0

//! Eigendecomposition of small Hermitian matrices.
//!
//! General dimensions use cyclic complex Jacobi rotations; `d = 2` goes
//! through a closed form. Both produce a [`Spectrum`] whose eigenvalues are
//! sorted with a stable sort, so ties keep the solver's output order.

use num_complex::Complex64;

use super::matrix::{CMatrix, HermitianOperator};

/// Off-diagonal Frobenius norm (relative to `max(1, ‖M‖_F)`) at which Jacobi stops.
pub const JACOBI_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Ascending,
    Descending,
}

/// Eigenvalues with matching orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<Complex64>>,
    pub order: Order,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `Σ_n values[n] |v_n⟩⟨v_n|`.
    pub fn reconstruct(&self) -> CMatrix {
        CMatrix::from_spectral(&self.values, &self.vectors)
    }

    /// Same spectrum with the opposite ordering.
    pub fn reversed(&self) -> Self {
        Self {
            values: self.values.iter().rev().copied().collect(),
            vectors: self.vectors.iter().rev().cloned().collect(),
            order: match self.order {
                Order::Ascending => Order::Descending,
                Order::Descending => Order::Ascending,
            },
        }
    }

    /// Largest `|⟨v_i|v_j⟩ - δ_ij|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.vectors.iter().enumerate() {
            for (j, b) in self.vectors.iter().enumerate() {
                let ip: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((ip - target).norm());
            }
        }
        worst
    }
}

/// Eigendecomposition with the closed form for `d = 2`.
pub fn eig_hermitian(m: &HermitianOperator, order: Order) -> Spectrum {
    let (values, vectors) = if m.dim() == 2 {
        eig2(m.matrix())
    } else {
        jacobi(m.matrix())
    };
    sorted(values, vectors, order)
}

/// Always uses Jacobi rotations, even for `d = 2`.
pub fn eig_jacobi(m: &HermitianOperator, order: Order) -> Spectrum {
    let (values, vectors) = jacobi(m.matrix());
    sorted(values, vectors, order)
}

fn sorted(values: Vec<f64>, vectors: Vec<Vec<Complex64>>, order: Order) -> Spectrum {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    match order {
        Order::Ascending => idx.sort_by(|&a, &b| values[a].total_cmp(&values[b])),
        Order::Descending => idx.sort_by(|&a, &b| values[b].total_cmp(&values[a])),
    }
    Spectrum {
        values: idx.iter().map(|&i| values[i]).collect(),
        vectors: idx.iter().map(|&i| vectors[i].clone()).collect(),
        order,
    }
}

fn eig2(m: &CMatrix) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let a = m[(0, 0)].re;
    let b = m[(1, 1)].re;
    let c = m[(0, 1)];
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    if c.norm() == 0.0 {
        return (vec![a, b], vec![vec![one, zero], vec![zero, one]]);
    }
    let mean = 0.5 * (a + b);
    let half = 0.5 * (a - b);
    let radius = half.hypot(c.norm());
    let hi = mean + radius;
    let lo = mean - radius;
    // Pick the row of (M - λ) that avoids cancellation.
    let v = if half >= 0.0 {
        [Complex64::new(radius + half, 0.0), c.conj()]
    } else {
        [c, Complex64::new(radius - half, 0.0)]
    };
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let v_hi = vec![v[0] / n, v[1] / n];
    let v_lo = vec![-v_hi[1].conj(), v_hi[0].conj()];
    (vec![hi, lo], vec![v_hi, v_lo])
}

fn off_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi(m: &CMatrix) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let n = m.dim();
    let mut a = m.clone();
    let mut v = CMatrix::identity(n);
    let scale = m.frobenius_norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_norm(&a) < JACOBI_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag < f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let zeta = (aqq - app) / (2.0 * mag);
                let t = if zeta.is_infinite() {
                    0.5 / zeta
                } else {
                    zeta.signum() / (zeta.abs() + zeta.hypot(1.0))
                };
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                let se = phase * s;
                let se_c = se.conj();

                // A ← A G with G_pp = c, G_pq = s e^{iφ}, G_qp = -s e^{-iφ}, G_qq = c.
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * se_c;
                    a[(k, q)] = akp * se + akq * c;
                }
                // A ← G^† A.
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - aqk * se;
                    a[(q, k)] = apk * se_c + aqk * c;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * se_c;
                    v[(k, q)] = vkp * se + vkq * c;
                }
            }
        }
    }

    let values = (0..n).map(|i| a[(i, i)].re).collect();
    let vectors = (0..n).map(|j| (0..n).map(|i| v[(i, j)]).collect()).collect();
    (values, vectors)
}
