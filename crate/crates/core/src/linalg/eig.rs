use serde::Serialize;

use super::{ComplexMatrix, HermitianMatrix, C64, ZERO};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Spectral decomposition `M = U diag(λ) U†` of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    /// Eigenvalues in descending order. Equal eigenvalues carry no ordering guarantee
    /// between their eigenvectors.
    pub eigenvalues: Vec<f64>,
    /// Unitary whose columns are the matching eigenvectors.
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        self.eigenvectors.column(k)
    }

    /// `U f(Λ) U†`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let u = &self.eigenvectors;
        let n = u.rows();
        let vals: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let m = ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| u[(i, k)] * vals[k] * u[(j, k)].conj()).sum()
        });
        HermitianMatrix::symmetrize(&m)
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        self.reconstruct_with(|l| l)
    }
}

/// Eigendecomposition by cyclic complex Jacobi rotations.
///
/// Each rotation first removes the phase of the pivot `a_pq` and then applies a
/// real plane rotation that annihilates it, accumulating the product of the
/// unitaries as the eigenvector matrix. Sweeps stop once the off-diagonal mass
/// is at rounding level relative to the Frobenius norm.
pub fn hermitian_eig(m: &HermitianMatrix) -> Result<EigenDecomposition> {
    let n = m.dim();
    let mut a = m.as_matrix().clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    let target = (f64::EPSILON * scale).powi(2);

    let off = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s
    };

    let mut sweeps = 0;
    while off(&a) > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::SolverFailure { sweeps, residual: off(&a).sqrt() });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == 0.0 || r * r <= target / (n * n) as f64 {
                    continue;
                }
                let phase = apq / r;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // 2x2 block of the rotation: diag(1, conj(phase)) · [[c, s], [-s, c]]
                let u_pp = C64::new(c, 0.0);
                let u_pq = C64::new(s, 0.0);
                let u_qp = phase.conj() * (-s);
                let u_qq = phase.conj() * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * u_pp + akq * u_qp;
                    a[(k, q)] = akp * u_pq + akq * u_qq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * u_pp + vkq * u_qp;
                    v[(k, q)] = vkp * u_pq + vkq * u_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(EigenDecomposition { eigenvalues, eigenvectors })
}

/// Outcome of a positive-semidefiniteness test, with its witness.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PsdReport {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
    pub tol: f64,
}

/// PSD test: passes iff the minimum eigenvalue is at least `-tol`.
pub fn psd_check(m: &HermitianMatrix, tol: f64) -> Result<PsdReport> {
    if !(tol >= 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be non-negative, got {tol}")));
    }
    let min_eigenvalue = hermitian_eig(m)?.min_eigenvalue();
    Ok(PsdReport { is_psd: min_eigenvalue >= -tol, min_eigenvalue, tol })
}

/// Factor a PSD matrix as `C†C` with `C` of `m_rows` rows.
///
/// `C = diag(√λ) U†` over the largest `m_rows` eigenpairs, padded with zero rows
/// when `m_rows` exceeds the dimension. Eigenvalues in `[-tol, 0)` are treated as
/// zero; dropping eigenpairs is only allowed when they are zero within `tol`.
pub fn factor_psd(p: &HermitianMatrix, m_rows: usize, tol: f64) -> Result<ComplexMatrix> {
    if m_rows == 0 {
        return Err(Error::InvalidArgument("factor needs at least one row".into()));
    }
    let eig = hermitian_eig(p)?;
    let n = p.dim();
    if eig.min_eigenvalue() < -tol {
        return Err(Error::NotPositive { condition: "(1.a) positivity", min_eigenvalue: eig.min_eigenvalue() });
    }
    if m_rows < n && eig.eigenvalues[m_rows] > tol {
        return Err(Error::InvalidArgument(format!(
            "rank exceeds {m_rows} rows (eigenvalue {:.3e} would be dropped)",
            eig.eigenvalues[m_rows]
        )));
    }
    let u = &eig.eigenvectors;
    Ok(ComplexMatrix::from_fn(m_rows, n, |k, j| {
        if k < n {
            u[(j, k)].conj() * eig.eigenvalues[k].max(0.0).sqrt()
        } else {
            ZERO
        }
    }))
}

/// Apply a real function to the spectrum: `U f(Λ) U†`.
pub fn map_spectrum(m: &HermitianMatrix, f: impl Fn(f64) -> f64) -> Result<HermitianMatrix> {
    Ok(hermitian_eig(m)?.reconstruct_with(f))
}

/// Principal square root, with negative rounding-level eigenvalues clipped to zero.
pub fn psd_sqrt(m: &HermitianMatrix) -> Result<HermitianMatrix> {
    map_spectrum(m, |l| l.max(0.0).sqrt())
}
