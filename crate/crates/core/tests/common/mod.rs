//! Helpers shared by integration tests: independent oracles built on nalgebra.
#![allow(dead_code)]

use nalgebra::DMatrix;
use pureset::{ComplexMatrix, HermitianMatrix, C64};

pub fn to_nalgebra(m: &ComplexMatrix) -> DMatrix<C64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

/// Eigenvalues of a Hermitian matrix from nalgebra, sorted descending.
pub fn oracle_eigenvalues(h: &HermitianMatrix) -> Vec<f64> {
    let eig = to_nalgebra(h.as_matrix()).symmetric_eigen();
    let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

pub fn pad(mut v: Vec<f64>, len: usize) -> Vec<f64> {
    v.resize(len.max(v.len()), 0.0);
    v
}

/// Plain re-implementation of `σ ≺ λ`: sort, accumulate, compare.
pub fn reference_majorizes(lambda: &[f64], sigma: &[f64], tol: f64) -> bool {
    let n = lambda.len().max(sigma.len());
    let mut l = pad(lambda.to_vec(), n);
    let mut s = pad(sigma.to_vec(), n);
    l.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut pl = 0.0;
    let mut ps = 0.0;
    for k in 0..n {
        pl += l[k];
        ps += s[k];
        if ps > pl + tol {
            return false;
        }
    }
    (pl - ps).abs() <= tol
}

pub fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
