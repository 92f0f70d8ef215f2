//! Symmetric eigendecomposition via cyclic Jacobi rotations.

use super::{DenseMatrix, DenseVector};
use crate::{CpzError, Result};

/// Absolute tolerance on `|Q - Q^T|` entries before an input is rejected as
/// asymmetric. Inputs within tolerance are symmetrized as `(Q + Q^T) / 2`.
pub const SYM_TOL: f64 = 1e-9;

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition `Q = V diag(l) V^T` of a symmetric matrix.
///
/// Returns the eigenvalues sorted descending together with the matching
/// orthonormal eigenvector columns. Convergence is declared when the
/// off-diagonal Frobenius norm drops below `1e-12 * ||Q||_F`.
pub fn sym_eig(q: &DenseMatrix) -> Result<(DenseVector, DenseMatrix)> {
    let n = q.rows();
    if q.cols() != n {
        return Err(CpzError::Validation(format!(
            "eigendecomposition requires a square matrix, got {}x{}",
            q.rows(),
            q.cols()
        )));
    }
    for i in 0..n {
        for j in 0..n {
            if (q.get(i, j) - q.get(j, i)).abs() > SYM_TOL {
                return Err(CpzError::Validation(format!(
                    "matrix is not symmetric: |Q({i},{j}) - Q({j},{i})| = {}",
                    (q.get(i, j) - q.get(j, i)).abs()
                )));
            }
        }
    }
    if n == 0 {
        return Ok((DenseVector::empty(), DenseMatrix::zeros(0, 0)));
    }

    // symmetrize within tolerance
    let mut a = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a.set(i, j, 0.5 * (q.get(i, j) + q.get(j, i)));
        }
    }

    let frob: f64 = a.data().iter().map(|v| v * v).sum::<f64>().sqrt();
    let target = 1e-12 * frob;
    let mut v = DenseMatrix::identity(n);

    let mut converged = frob == 0.0;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = {
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        s += a.get(i, j) * a.get(i, j);
                    }
                }
            }
            s.sqrt()
        };
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q_idx in p + 1..n {
                let apq = a.get(p, q_idx);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q_idx, q_idx);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // A := J^T A J with the rotation in the (p, q) plane
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q_idx);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q_idx, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q_idx, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q_idx, k, s * apk + c * aqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q_idx);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q_idx, s * vkp + c * vkq);
                }
            }
        }
    }
    if !converged {
        let off: f64 = {
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        s += a.get(i, j) * a.get(i, j);
                    }
                }
            }
            s.sqrt()
        };
        if off > target {
            return Err(CpzError::Convergence(format!(
                "Jacobi iteration did not converge within {MAX_SWEEPS} sweeps (off-diagonal {off:e})"
            )));
        }
    }

    // sort eigenvalues descending, carrying the eigenvector columns along
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(j, j).partial_cmp(&a.get(i, i)).unwrap());
    let values = DenseVector::new(order.iter().map(|&i| a.get(i, i)).collect());
    let mut vectors = DenseMatrix::zeros(n, n);
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..n {
            vectors.set(i, new_j, v.get(i, old_j));
        }
    }
    Ok((values, vectors))
}
