use super::{ComplexMatrix, HermitianMatrix, C64, ZERO};
use crate::error::{Error, Result};

/// Inverse by Gauss-Jordan elimination with partial pivoting.
///
/// Fails with [`Error::Singular`] when a pivot drops below `1e-13` of the
/// largest entry.
pub fn inverse(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::Shape(format!("cannot invert {}x{} matrix", m.rows(), m.cols())));
    }
    let n = m.rows();
    let floor = 1e-13 * m.max_abs().max(f64::MIN_POSITIVE);
    let mut a = m.clone();
    let mut inv = ComplexMatrix::identity(n);
    for col in 0..n {
        let (pivot_row, pivot_mod) = (col..n)
            .map(|r| (r, a[(r, col)].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("non-empty range");
        if pivot_mod <= floor {
            return Err(Error::Singular { pivot: pivot_mod });
        }
        if pivot_row != col {
            for k in 0..n {
                let t = a[(col, k)];
                a[(col, k)] = a[(pivot_row, k)];
                a[(pivot_row, k)] = t;
                let t = inv[(col, k)];
                inv[(col, k)] = inv[(pivot_row, k)];
                inv[(pivot_row, k)] = t;
            }
        }
        let piv = a[(col, col)].inv();
        for k in 0..n {
            a[(col, k)] *= piv;
            inv[(col, k)] *= piv;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a[(r, col)];
            if f == ZERO {
                continue;
            }
            for k in 0..n {
                let ack = a[(col, k)];
                let ick = inv[(col, k)];
                a[(r, k)] -= f * ack;
                inv[(r, k)] -= f * ick;
            }
        }
    }
    Ok(inv)
}

/// Lower-triangular `L` with `M = L L†`, or `None` when `M` is not positive definite.
pub fn cholesky(m: &HermitianMatrix) -> Option<ComplexMatrix> {
    let n = m.dim();
    let mut l = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = m[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if !(d > 0.0) {
            return None;
        }
        let djj = d.sqrt();
        l[(j, j)] = C64::new(djj, 0.0);
        for i in j + 1..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / djj;
        }
    }
    Some(l)
}
