use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::numerics::{jacobi_eigen, OrthoMat5};
use crate::spectra::Spectrum5;

/// A point of R^5 with coordinates `(x1, x2, z1, z2, z3)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec5(pub [f64; 5]);

impl Vec5 {
    pub const ZERO: Vec5 = Vec5([0.0; 5]);

    pub fn new(x1: f64, x2: f64, z1: f64, z2: f64, z3: f64) -> Self {
        Vec5([x1, x2, z1, z2, z3])
    }

    pub fn unit(i: usize) -> Self {
        let mut v = [0.0; 5];
        v[i] = 1.0;
        Vec5(v)
    }

    pub fn dot(&self, other: &Vec5) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(&self, f: f64) -> Vec5 {
        Vec5(self.0.map(|v| v * f))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

impl Index<usize> for Vec5 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for Vec5 {
    type Output = Vec5;
    fn add(self, rhs: Vec5) -> Vec5 {
        Vec5(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for Vec5 {
    type Output = Vec5;
    fn sub(self, rhs: Vec5) -> Vec5 {
        Vec5(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Mul<f64> for Vec5 {
    type Output = Vec5;
    fn mul(self, rhs: f64) -> Vec5 {
        self.scale(rhs)
    }
}

impl Neg for Vec5 {
    type Output = Vec5;
    fn neg(self) -> Vec5 {
        self.scale(-1.0)
    }
}

/// Packed position of entry `(i, j)` in row-major upper-triangular storage.
#[inline]
pub(crate) const fn packed(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    5 * i - i * (i.saturating_sub(1)) / 2 + (j - i)
}

/// Real symmetric 5x5 matrix stored as its 15 upper-triangular entries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymMat5 {
    upper: [f64; 15],
}

impl Default for SymMat5 {
    fn default() -> Self {
        Self::zeros()
    }
}

impl SymMat5 {
    pub fn zeros() -> Self {
        SymMat5 { upper: [0.0; 15] }
    }

    pub fn identity() -> Self {
        Self::diag([1.0; 5])
    }

    pub fn diag(d: [f64; 5]) -> Self {
        Self::from_fn(|i, j| if i == j { d[i] } else { 0.0 })
    }

    /// Builds a matrix from `f(i, j)` evaluated on the upper triangle only.
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut upper = [0.0; 15];
        for i in 0..5 {
            for j in i..5 {
                upper[packed(i, j)] = f(i, j);
            }
        }
        SymMat5 { upper }
    }

    /// Symmetric part `(m + m^T) / 2` of a square array.
    pub fn from_array_symmetrized(m: &[[f64; 5]; 5]) -> Self {
        Self::from_fn(|i, j| 0.5 * (m[i][j] + m[j][i]))
    }

    /// `a b^T + b a^T`.
    pub fn sym_outer(a: &Vec5, b: &Vec5) -> Self {
        Self::from_fn(|i, j| a[i] * b[j] + b[i] * a[j])
    }

    /// `a a^T`.
    pub fn outer(a: &Vec5) -> Self {
        Self::from_fn(|i, j| a[i] * a[j])
    }

    pub fn packed_entries(&self) -> &[f64; 15] {
        &self.upper
    }

    pub fn from_packed(upper: [f64; 15]) -> Self {
        SymMat5 { upper }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.upper[packed(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.upper[packed(i, j)] = v;
    }

    pub fn to_array(&self) -> [[f64; 5]; 5] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.get(i, j)))
    }

    pub fn trace(&self) -> f64 {
        (0..5).map(|i| self.get(i, i)).sum()
    }

    pub fn diagonal(&self) -> [f64; 5] {
        std::array::from_fn(|i| self.get(i, i))
    }

    pub fn frobenius(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..5 {
            for j in 0..5 {
                s += self.get(i, j).powi(2);
            }
        }
        s.sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.upper.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.upper.iter().all(|v| v.is_finite())
    }

    pub fn scale(&self, f: f64) -> SymMat5 {
        SymMat5 {
            upper: self.upper.map(|v| v * f),
        }
    }

    pub fn mul_vec(&self, v: &Vec5) -> Vec5 {
        Vec5(std::array::from_fn(|i| {
            (0..5).map(|j| self.get(i, j) * v[j]).sum()
        }))
    }

    /// `O^T M O`, the pull-back of `M` by an orthogonal matrix.
    pub fn conjugate(&self, o: &OrthoMat5) -> SymMat5 {
        let m = self.to_array();
        let o = o.as_array();
        // t = M O
        let mut t = [[0.0; 5]; 5];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..5).map(|k| m[i][k] * o[k][j]).sum();
            }
        }
        SymMat5::from_fn(|i, j| (0..5).map(|k| o[k][i] * t[k][j]).sum())
    }

    /// Ordered eigenvalues from the Jacobi oracle.
    pub fn eigenvalues(&self) -> Result<Spectrum5> {
        jacobi_eigen(self)
    }

    /// `|A|`: the largest absolute eigenvalue.
    pub fn op_norm(&self) -> Result<f64> {
        let s = self.eigenvalues()?;
        Ok(s.max_abs())
    }
}

impl Add for SymMat5 {
    type Output = SymMat5;
    fn add(self, rhs: SymMat5) -> SymMat5 {
        SymMat5 {
            upper: std::array::from_fn(|k| self.upper[k] + rhs.upper[k]),
        }
    }
}

impl Sub for SymMat5 {
    type Output = SymMat5;
    fn sub(self, rhs: SymMat5) -> SymMat5 {
        SymMat5 {
            upper: std::array::from_fn(|k| self.upper[k] - rhs.upper[k]),
        }
    }
}

impl Mul<f64> for SymMat5 {
    type Output = SymMat5;
    fn mul(self, rhs: f64) -> SymMat5 {
        self.scale(rhs)
    }
}

impl Neg for SymMat5 {
    type Output = SymMat5;
    fn neg(self) -> SymMat5 {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_index_covers_upper_triangle_once() {
        let mut seen = [false; 15];
        for i in 0..5 {
            for j in i..5 {
                let k = packed(i, j);
                assert!(!seen[k]);
                seen[k] = true;
                assert_eq!(packed(j, i), k);
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn storage_is_symmetric() {
        let mut m = SymMat5::zeros();
        m.set(3, 1, 2.5);
        assert_eq!(m.get(1, 3), 2.5);
        let a = m.to_array();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(a[i][j], a[j][i]);
            }
        }
    }

    #[test]
    fn conjugate_by_identity_is_noop() {
        let m = SymMat5::from_fn(|i, j| (i * 7 + j) as f64 - 3.0);
        assert_eq!(m.conjugate(&OrthoMat5::identity()), m);
    }
}
