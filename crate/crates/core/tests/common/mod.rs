// SPDX-License-Identifier: Apache-2.0
#![allow(dead_code)]

use num_complex::Complex64;
use qthermo_core::{CMatrix, DensityOperator, HermitianOperator};
use rand::rngs::StdRng;
use rand::Rng;

pub fn gaussian(rng: &mut StdRng) -> f64 {
    // Box-Muller
    let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
}

pub fn ginibre(rng: &mut StdRng, d: usize) -> CMatrix {
    let mut m = CMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            m[(i, j)] = Complex64::new(gaussian(rng), gaussian(rng));
        }
    }
    m
}

pub fn random_hermitian(rng: &mut StdRng, d: usize) -> HermitianOperator {
    let g = ginibre(rng, d);
    HermitianOperator::new((&g + &g.adjoint()).scale(0.5)).unwrap()
}

/// Full-rank (with probability one) state from `G G† / tr`.
pub fn random_state(rng: &mut StdRng, d: usize) -> DensityOperator {
    let g = ginibre(rng, d);
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityOperator::from_matrix(m.scale(1.0 / tr)).unwrap()
}

/// Haar-like unitary from Gram-Schmidt on the columns of a Ginibre matrix.
pub fn random_unitary(rng: &mut StdRng, d: usize) -> CMatrix {
    let g = ginibre(rng, d);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    for j in 0..d {
        let mut v: Vec<Complex64> = (0..d).map(|i| g[(i, j)]).collect();
        for u in &cols {
            let ip: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= ip * ui;
            }
        }
        let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|x| x / n).collect());
    }
    let mut u = CMatrix::zeros(d);
    for (j, c) in cols.iter().enumerate() {
        for i in 0..d {
            u[(i, j)] = c[i];
        }
    }
    u
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(m: &CMatrix) -> Complex64 {
    let d = m.dim();
    let mut a: Vec<Vec<Complex64>> = (0..d).map(|i| (0..d).map(|j| m[(i, j)]).collect()).collect();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..d {
        let p = (k..d).max_by(|&x, &y| a[x][k].norm().total_cmp(&a[y][k].norm())).unwrap();
        if a[p][k].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k];
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot = &top[k];
        for row in rest.iter_mut() {
            let f = row[k] / pivot[k];
            for (x, &t) in row[k..].iter_mut().zip(&pivot[k..]) {
                *x -= f * t;
            }
        }
    }
    det
}
