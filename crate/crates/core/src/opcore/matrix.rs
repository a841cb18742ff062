// SPDX-License-Identifier: Apache-2.0

//! Small dense complex matrices and the Hermitian / density-operator newtypes.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::eig::{eig_hermitian, Order};

/// Largest dimension handled by the Jacobi eigensolver.
pub const MAX_DIM: usize = 8;

/// Hermiticity tolerance, scaled by `max(1, ‖M‖_F)`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Allowed deviation of a density operator's trace from one.
pub const TRACE_TOL: f64 = 1e-10;
/// Most negative eigenvalue accepted for a density operator.
pub const POSITIVITY_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Builds a matrix from rows; panics if the rows are not square.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "rows must form a square matrix");
        Self {
            dim,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// `|v⟩⟨w|`.
    pub fn outer(v: &[Complex64], w: &[Complex64]) -> Self {
        let dim = v.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = v[i] * w[j].conj();
            }
        }
        m
    }

    /// `Σ_n weights[n] |v_n⟩⟨v_n|`.
    pub fn from_spectral(weights: &[f64], vectors: &[Vec<Complex64>]) -> Self {
        let dim = vectors.first().map_or(0, Vec::len);
        let mut m = Self::zeros(dim);
        for (&w, v) in weights.iter().zip(vectors) {
            for i in 0..dim {
                for j in 0..dim {
                    m[(i, j)] += v[i] * v[j].conj() * w;
                }
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_c(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `tr[A B]` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex64 {
        let n = self.dim;
        let mut acc = ZERO;
        for i in 0..n {
            for k in 0..n {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        acc
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    /// `⟨v|M|v⟩`.
    pub fn expectation(&self, v: &[Complex64]) -> Complex64 {
        let n = self.dim;
        let mut acc = ZERO;
        for i in 0..n {
            let mut row = ZERO;
            for j in 0..n {
                row += self[(i, j)] * v[j];
            }
            acc += v[i].conj() * row;
        }
        acc
    }

    /// `(M + M^†)/2` with an exactly real diagonal.
    pub fn hermitian_part(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(i, j)] = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
            }
            m[(i, i)].im = 0.0;
        }
        m
    }

    pub fn max_hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// Unitary conjugation `V M V^†`.
    pub fn conjugate_by(&self, v: &Self) -> Self {
        &(v * self) * &v.adjoint()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// Pauli matrices σ_x, σ_y, σ_z.
pub fn pauli() -> [CMatrix; 3] {
    let i = Complex64::new(0.0, 1.0);
    [
        CMatrix::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]),
        CMatrix::from_rows(&[vec![ZERO, -i], vec![i, ZERO]]),
        CMatrix::from_rows(&[vec![ONE, ZERO], vec![ZERO, -ONE]]),
    ]
}

/// A Hermitian operator of dimension `2..=MAX_DIM`.
///
/// Construction checks Hermiticity and stores the exact Hermitian part, so
/// downstream code can rely on `M == M^†` bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator(CMatrix);

impl HermitianOperator {
    pub fn new(m: CMatrix) -> Result<Self> {
        check_dim(m.dim())?;
        let dev = m.max_hermitian_deviation();
        if !dev.is_finite() || dev > HERMITIAN_TOL * m.frobenius_norm().max(1.0) {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self(m.hermitian_part()))
    }

    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(CMatrix::from_diagonal(diag))
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::new(CMatrix::identity(dim))
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(CMatrix::zeros(dim))
    }

    /// Skips the tolerance check but still symmetrises.
    pub(crate) fn from_matrix_unchecked(m: CMatrix) -> Self {
        Self(m.hermitian_part())
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    /// Real trace.
    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// `tr[A B]`, real for Hermitian arguments.
    pub fn trace_product(&self, other: &Self) -> f64 {
        self.0.trace_product(&other.0).re
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_matrix_unchecked(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_matrix_unchecked(&self.0 - &other.0)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_matrix_unchecked(self.0.scale(s))
    }

    /// `(A + B)/2`.
    pub fn midpoint(&self, other: &Self) -> Self {
        Self::from_matrix_unchecked((&self.0 + &other.0).scale(0.5))
    }

    /// `V M V^†` for a unitary `V`.
    pub fn conjugate_by(&self, v: &CMatrix) -> Self {
        Self::from_matrix_unchecked(self.0.conjugate_by(v))
    }

    /// Real-valued function applied to the spectrum.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Self {
        let spec = eig_hermitian(self, Order::Descending);
        let values: Vec<f64> = spec.values.iter().map(|&x| f(x)).collect();
        Self::from_matrix_unchecked(CMatrix::from_spectral(&values, &spec.vectors))
    }
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if (2..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

/// Unit-trace positive-semidefinite Hermitian operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator(HermitianOperator);

impl DensityOperator {
    pub fn new(op: HermitianOperator) -> Result<Self> {
        let tr = op.trace();
        if !tr.is_finite() || (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotUnit(tr));
        }
        let spec = eig_hermitian(&op, Order::Ascending);
        let min = spec.values[0];
        if min < -POSITIVITY_TOL {
            return Err(Error::NotPositive(min));
        }
        Ok(Self(op))
    }

    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        Self::new(HermitianOperator::new(m)?)
    }

    pub fn from_populations(pops: &[f64]) -> Result<Self> {
        Self::new(HermitianOperator::diagonal(pops)?)
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Self::new(HermitianOperator::identity(dim)?.scale(1.0 / dim as f64))
    }

    /// Pure state `|ψ⟩⟨ψ|`; `psi` is normalised here.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(crate::error::invalid("psi", "zero or non-finite vector"));
        }
        let v: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::from_matrix(CMatrix::outer(&v, &v))
    }

    /// Gibbs state `e^{-βH}/Z`.
    pub fn gibbs(h: &HermitianOperator, beta: f64) -> Result<Self> {
        let spec = eig_hermitian(h, Order::Ascending);
        let e0 = spec.values[0];
        let weights: Vec<f64> = spec.values.iter().map(|&e| (-beta * (e - e0)).exp()).collect();
        let z: f64 = weights.iter().sum();
        let pops: Vec<f64> = weights.iter().map(|w| w / z).collect();
        Self::from_matrix(CMatrix::from_spectral(&pops, &spec.vectors))
    }

    pub(crate) fn from_operator_unchecked(op: HermitianOperator) -> Self {
        Self(op)
    }

    pub fn op(&self) -> &HermitianOperator {
        &self.0
    }

    pub fn matrix(&self) -> &CMatrix {
        self.0.matrix()
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// `tr[ρ X]`.
    pub fn expect(&self, x: &HermitianOperator) -> f64 {
        self.0.trace_product(x)
    }

    /// Convex midpoint `(ρ_a + ρ_b)/2`.
    pub fn midpoint(&self, other: &Self) -> Self {
        Self(self.0.midpoint(&other.0))
    }

    pub fn conjugate_by(&self, v: &CMatrix) -> Self {
        Self(self.0.conjugate_by(v))
    }

    /// Populations in descending order, clipped at zero.
    pub fn populations(&self) -> Vec<f64> {
        eig_hermitian(&self.0, Order::Descending)
            .values
            .into_iter()
            .map(|p| p.max(0.0))
            .collect()
    }
}
