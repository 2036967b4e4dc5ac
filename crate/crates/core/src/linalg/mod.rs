//! Dense complex linear algebra for the small matrices this crate works with.
//!
//! Everything here is sized for N, D up to a few dozen: matrices are stored
//! row-major in a flat `Vec`, the Hermitian eigensolver is cyclic Jacobi, and
//! inverses use Gauss-Jordan elimination with partial pivoting.

mod eig;
mod solve;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use eig::{factor_psd, hermitian_eig, map_spectrum, psd_check, psd_sqrt, EigenDecomposition, PsdReport};
pub use solve::{cholesky, inverse};

/// Complex scalar used throughout.
pub type C64 = Complex64;

/// Default PSD tolerance.
pub const PSD_TOL: f64 = 1e-9;
/// Entries with modulus below this count as zero.
pub const ZERO_TOL: f64 = 1e-12;
/// Relative factor behind the Hermiticity and reconstruction tolerances.
pub const RECON_FACTOR: f64 = 1e-10;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Scale-aware tolerance `1e-10 * dim * max|entry|`, with the entry scale floored at 1.
pub fn recon_tol(m: &ComplexMatrix) -> f64 {
    RECON_FACTOR * m.rows.max(m.cols) as f64 * m.max_abs().max(1.0)
}

/// Dense row-major complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("matrix must be non-empty, got {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { row: pos / cols, col: pos % cols });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(r, c, rows.concat())
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        assert!(rows > 0 && cols > 0, "matrix must be non-empty");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| ZERO)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| ONE)
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { C64::new(diag[i], 0.0) } else { ZERO })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<C64>]) -> Result<Self> {
        let c = columns.len();
        let r = columns.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::Shape("matrix must be non-empty".into()));
        }
        if columns.iter().any(|col| col.len() != r) {
            return Err(Error::Shape("columns differ in length".into()));
        }
        Ok(Self::from_fn(r, c, |i, j| columns[j][i]))
    }

    /// Outer product |u⟩⟨v|.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<C64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in max_abs_diff");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (r2, c2) = rhs.shape();
        Self::from_fn(self.rows * r2, self.cols * c2, |i, j| {
            self[(i / r2, j / c2)] * rhs[(i % r2, j % c2)]
        })
    }

    fn zip_with(&self, rhs: &Self, what: &str, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::Shape(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "addition", |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "subtraction", |a, b| a - b)
    }

    /// Elementwise (Schur) product.
    pub fn hadamard(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "Hadamard product", |a, b| a * b)
    }

    /// Elementwise reciprocal. Fails on the first entry with modulus below `zero_tol`,
    /// reporting its index.
    pub fn hadamard_inverse(&self, zero_tol: f64) -> Result<Self> {
        if let Some(pos) = self.data.iter().position(|z| z.norm() < zero_tol) {
            return Err(Error::ZeroEntry {
                row: pos / self.cols,
                col: pos % self.cols,
                modulus: self.data[pos].norm(),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.inv()).collect(),
        })
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

// Operator impls panic on shape mismatch; the `try_*` methods are the fallible forms.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>10.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<C64>>::deserialize(deserializer)?;
        ComplexMatrix::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// Square matrix equal to its own conjugate transpose.
///
/// Construction checks Hermiticity against `recon_tol` and then stores the
/// exactly symmetrized average `(M + M†)/2`, so downstream code can rely on
/// exact symmetry.
#[derive(Clone, PartialEq, Debug)]
pub struct HermitianMatrix(ComplexMatrix);

impl HermitianMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let tol = recon_tol(&m);
        Self::with_tol(m, tol)
    }

    pub fn with_tol(m: ComplexMatrix, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Shape(format!("Hermitian matrix must be square, got {}x{}", m.rows, m.cols)));
        }
        let deviation = m.max_abs_diff(&m.adjoint());
        if deviation > tol {
            return Err(Error::NotHermitian { deviation, tol });
        }
        Ok(Self::symmetrize(&m))
    }

    /// `(M + M†)/2` without any check. Only for matrices that are Hermitian by
    /// construction up to rounding.
    pub fn symmetrize(m: &ComplexMatrix) -> Self {
        assert!(m.is_square(), "symmetrize needs a square matrix");
        let n = m.rows;
        Self(ComplexMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(m[(i, i)].re, 0.0)
            } else {
                (m[(i, j)] + m[(j, i)].conj()) * 0.5
            }
        }))
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_rows(rows)?)
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        Self::new(ComplexMatrix::from_rows(rows)?)
    }

    pub fn identity(n: usize) -> Self {
        Self(ComplexMatrix::identity(n))
    }

    pub fn zeros(n: usize) -> Self {
        Self(ComplexMatrix::zeros(n, n))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        Self(ComplexMatrix::from_diagonal(diag))
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn real_diagonal(&self) -> Vec<f64> {
        self.0.diagonal().iter().map(|z| z.re).collect()
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn eig(&self) -> Result<EigenDecomposition> {
        hermitian_eig(self)
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eig(self)?.eigenvalues)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(hermitian_eig(self)?.min_eigenvalue())
    }

    pub fn hadamard(&self, rhs: &Self) -> Result<Self> {
        Ok(Self::symmetrize(&self.0.hadamard(&rhs.0)?))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        Ok(Self(self.0.try_add(&rhs.0)?))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        Ok(Self(self.0.try_sub(&rhs.0)?))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.scale_real(s))
    }

    /// Hermitian form of `self` sandwiched as `A · self · A†`.
    pub fn congruence(&self, a: &ComplexMatrix) -> Result<Self> {
        let m = a.matmul(&self.0)?.matmul(&a.adjoint())?;
        Ok(Self::symmetrize(&m))
    }
}

impl std::ops::Deref for HermitianMatrix {
    type Target = ComplexMatrix;

    fn deref(&self) -> &ComplexMatrix {
        &self.0
    }
}

impl Serialize for HermitianMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HermitianMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let m = ComplexMatrix::deserialize(deserializer)?;
        HermitianMatrix::new(m).map_err(serde::de::Error::custom)
    }
}

/// Euclidean inner product ⟨u|v⟩ (antilinear in the first argument).
pub fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Kronecker product of two vectors.
pub fn kron_vec(u: &[C64], v: &[C64]) -> Vec<C64> {
    u.iter().flat_map(|a| v.iter().map(move |b| a * b)).collect()
}
