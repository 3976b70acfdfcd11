use crate::error::{Error, Result};
use crate::forms::SymMat5;
use crate::spectra::Spectrum5;

/// Sweep cap; only non-finite input exhausts it.
pub const MAX_SWEEPS: usize = 100;

const RELATIVE_OFF_TOL: f64 = 1e-13;

fn off_diagonal_norm(a: &[[f64; 5]; 5]) -> f64 {
    let mut s = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i != j {
                s += v * v;
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi rotations on a symmetric 5x5 matrix.
///
/// Returns the eigenvalues in non-increasing order together with the
/// orthogonal matrix whose columns are the matching eigenvectors, so that
/// `m = V diag(lambda) V^T`.
pub fn jacobi_eigen_vectors(m: &SymMat5) -> Result<(Spectrum5, [[f64; 5]; 5])> {
    let mut a = m.to_array();
    let mut v = [[0.0; 5]; 5];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let tol = RELATIVE_OFF_TOL * m.frobenius();

    for sweep in 0..=MAX_SWEEPS {
        if off_diagonal_norm(&a) <= tol {
            return Ok(sorted(&a, &v));
        }
        if sweep == MAX_SWEEPS {
            break;
        }
        for p in 0..4 {
            for q in (p + 1)..5 {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                for k in 0..5 {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for row in v.iter_mut() {
                    let (vkp, vkq) = (row[p], row[q]);
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    Err(Error::NonConvergence { sweeps: MAX_SWEEPS })
}

fn sorted(a: &[[f64; 5]; 5], v: &[[f64; 5]; 5]) -> (Spectrum5, [[f64; 5]; 5]) {
    let mut order: [usize; 5] = [0, 1, 2, 3, 4];
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    let values = order.map(|i| a[i][i]);
    let vectors = std::array::from_fn(|r| std::array::from_fn(|c| v[r][order[c]]));
    (Spectrum5::from_sorted_unchecked(values), vectors)
}

/// Ordered eigenvalues of `m`.
pub fn jacobi_eigen(m: &SymMat5) -> Result<Spectrum5> {
    jacobi_eigen_vectors(m).map(|(s, _)| s)
}
