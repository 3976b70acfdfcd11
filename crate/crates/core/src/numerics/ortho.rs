use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::RngState;

/// A 5x5 rotation: `O^T O = I`, `det O = +1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrthoMat5([[f64; 5]; 5]);

impl OrthoMat5 {
    pub fn identity() -> Self {
        OrthoMat5(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { 1.0 } else { 0.0 })
        }))
    }

    /// Accepts `m` if it is a rotation to within `1e-12`.
    pub fn try_from_array(m: [[f64; 5]; 5]) -> Option<Self> {
        let o = OrthoMat5(m);
        (o.orthogonality_defect() < 1e-12 && (o.det() - 1.0).abs() < 1e-12).then_some(o)
    }

    pub fn as_array(&self) -> &[[f64; 5]; 5] {
        &self.0
    }

    pub fn transpose(&self) -> Self {
        OrthoMat5(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i])))
    }

    pub fn mul(&self, rhs: &OrthoMat5) -> Self {
        OrthoMat5(mat_mul(&self.0, &rhs.0))
    }

    /// `max |O^T O - I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..5 {
            for j in 0..5 {
                let dot: f64 = (0..5).map(|k| self.0[k][i] * self.0[k][j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    pub fn det(&self) -> f64 {
        determinant(self.0)
    }
}

fn mat_mul(a: &[[f64; 5]; 5], b: &[[f64; 5]; 5]) -> [[f64; 5]; 5] {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..5).map(|k| a[i][k] * b[k][j]).sum()))
}

/// LU with partial pivoting.
fn determinant(mut m: [[f64; 5]; 5]) -> f64 {
    let mut det = 1.0;
    for k in 0..5 {
        let pivot = (k..5)
            .max_by(|&i, &j| m[i][k].abs().total_cmp(&m[j][k].abs()))
            .unwrap_or(k);
        if m[pivot][k] == 0.0 {
            return 0.0;
        }
        if pivot != k {
            m.swap(pivot, k);
            det = -det;
        }
        det *= m[k][k];
        for i in (k + 1)..5 {
            let f = m[i][k] / m[k][k];
            for j in k..5 {
                m[i][j] -= f * m[k][j];
            }
        }
    }
    det
}

/// Haar-distributed rotation drawn from `rng`.
///
/// A standard Gaussian matrix is factored by Householder QR; the columns of
/// `Q` are flipped to make the diagonal of `R` positive (which makes `Q` Haar
/// on O(5)), and one column is negated when the determinant is `-1`.
pub fn haar_so5_from<R: Rng + ?Sized>(rng: &mut R) -> OrthoMat5 {
    let mut g: [[f64; 5]; 5] =
        std::array::from_fn(|_| std::array::from_fn(|_| rng.sample(StandardNormal)));
    let mut q = OrthoMat5::identity().0;

    for k in 0..4 {
        let norm = (k..5).map(|i| g[i][k] * g[i][k]).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if g[k][k] > 0.0 { -norm } else { norm };
        let mut v = [0.0; 5];
        for i in k..5 {
            v[i] = g[i][k];
        }
        v[k] -= alpha;
        let vnorm_sq: f64 = v.iter().map(|x| x * x).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        // g <- H g
        for j in k..5 {
            let d: f64 = (k..5).map(|i| v[i] * g[i][j]).sum::<f64>() * 2.0 / vnorm_sq;
            for i in k..5 {
                g[i][j] -= d * v[i];
            }
        }
        // q <- q H
        for row in q.iter_mut() {
            let d: f64 = (k..5).map(|i| row[i] * v[i]).sum::<f64>() * 2.0 / vnorm_sq;
            for i in k..5 {
                row[i] -= d * v[i];
            }
        }
    }

    for (k, diag) in (0..5).map(|k| (k, g[k][k])) {
        if diag < 0.0 {
            for row in q.iter_mut() {
                row[k] = -row[k];
            }
        }
    }
    let mut o = OrthoMat5(q);
    if o.det() < 0.0 {
        for row in o.0.iter_mut() {
            row[0] = -row[0];
        }
    }
    o
}

pub fn haar_so5(state: RngState) -> OrthoMat5 {
    haar_so5_from(&mut state.generator())
}

/// Strict upper triangle of a 5x5 skew-symmetric matrix, row-major:
/// `(0,1), (0,2), (0,3), (0,4), (1,2), ..., (3,4)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SkewParam(pub [f64; 10]);

impl SkewParam {
    pub const PAIRS: [(usize, usize); 10] = [
        (0, 1),
        (0, 2),
        (0, 3),
        (0, 4),
        (1, 2),
        (1, 3),
        (1, 4),
        (2, 3),
        (2, 4),
        (3, 4),
    ];

    pub fn to_matrix(&self) -> [[f64; 5]; 5] {
        let mut s = [[0.0; 5]; 5];
        for (k, &(i, j)) in Self::PAIRS.iter().enumerate() {
            s[i][j] = self.0[k];
            s[j][i] = -self.0[k];
        }
        s
    }
}

/// Matrix exponential of the skew-symmetric matrix built from `s`, by
/// scaling and squaring with a truncated Taylor series.
pub fn skew_exp(s: &SkewParam) -> OrthoMat5 {
    let m = s.to_matrix();
    let norm = m
        .iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm > 0.25 {
        (norm / 0.25).log2().ceil() as u32
    } else {
        0
    };
    let scale = 0.5f64.powi(squarings as i32);
    let a: [[f64; 5]; 5] = std::array::from_fn(|i| std::array::from_fn(|j| m[i][j] * scale));

    let mut result = OrthoMat5::identity().0;
    let mut term = OrthoMat5::identity().0;
    for k in 1..=18 {
        term = mat_mul(&term, &a);
        let inv = 1.0 / k as f64;
        for row in term.iter_mut() {
            for v in row.iter_mut() {
                *v *= inv;
            }
        }
        for i in 0..5 {
            for j in 0..5 {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = mat_mul(&result, &result);
    }

    let mut o = OrthoMat5(result);
    if o.orthogonality_defect() > 1e-14 {
        // One Newton step towards the polar factor: Q (3I - Q^T Q) / 2.
        let qtq = mat_mul(&o.transpose().0, &o.0);
        let corr: [[f64; 5]; 5] = std::array::from_fn(|i| {
            std::array::from_fn(|j| 0.5 * ((if i == j { 3.0 } else { 0.0 }) - qtq[i][j]))
        });
        o = OrthoMat5(mat_mul(&o.0, &corr));
    }
    o
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_invariants_and_determinism() {
        for stream in 0..200 {
            let o = haar_so5(RngState::new(42, stream));
            assert!(o.orthogonality_defect() < 1e-12);
            assert!((o.det() - 1.0).abs() < 1e-12);
        }
        let a = haar_so5(RngState::new(42, 0));
        let b = haar_so5(RngState::new(42, 0));
        assert_eq!(a.as_array().map(|r| r.map(f64::to_bits)), b.as_array().map(|r| r.map(f64::to_bits)));
    }

    #[test]
    fn zero_generator_is_identity() {
        assert_eq!(skew_exp(&SkewParam::default()), OrthoMat5::identity());
    }

    #[test]
    fn single_plane_rotation() {
        let theta = 0.7;
        let mut p = SkewParam::default();
        p.0[0] = theta;
        let o = skew_exp(&p);
        let m = o.as_array();
        assert!((m[0][0] - theta.cos()).abs() < 1e-14);
        assert!((m[0][1] - theta.sin()).abs() < 1e-14);
        assert!((m[1][0] + theta.sin()).abs() < 1e-14);
        assert!((m[1][1] - theta.cos()).abs() < 1e-14);
        assert!((m[2][2] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn exponential_inverse() {
        let p = SkewParam([0.3, -1.2, 2.0, 0.1, 0.7, -0.4, 1.5, 0.05, -2.2, 0.9]);
        let neg = SkewParam(p.0.map(|v| -v));
        let prod = skew_exp(&p).mul(&skew_exp(&neg));
        assert!(prod.orthogonality_defect() < 1e-12);
        let id = OrthoMat5::identity();
        for i in 0..5 {
            for j in 0..5 {
                assert!((prod.as_array()[i][j] - id.as_array()[i][j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn reflection_is_rejected() {
        let mut m = *OrthoMat5::identity().as_array();
        m[0][0] = -1.0;
        assert!(OrthoMat5::try_from_array(m).is_none());
    }
}
