use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::forms::{packed, SymMat5, Vec5};

/// Arithmetic needed to evaluate the fields in scope generically.
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn constant(v: f64) -> Self;
    fn sqrt(self) -> Self;
    fn powf(self, k: f64) -> Self;
}

impl Scalar for f64 {
    fn constant(v: f64) -> Self {
        v
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn powf(self, k: f64) -> Self {
        f64::powf(self, k)
    }
}

/// Second-order jet in five variables: value, gradient and packed Hessian.
///
/// Arithmetic propagates exact first and second derivatives, so results carry
/// rounding error only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub grad: [f64; 5],
    pub hess: [f64; 15],
}

impl Jet2 {
    pub fn constant(v: f64) -> Self {
        Jet2 {
            value: v,
            grad: [0.0; 5],
            hess: [0.0; 15],
        }
    }

    /// The `i`-th coordinate function evaluated at `v`.
    pub fn variable(i: usize, v: f64) -> Self {
        let mut j = Self::constant(v);
        j.grad[i] = 1.0;
        j
    }

    pub fn seed(x: &Vec5) -> [Jet2; 5] {
        std::array::from_fn(|i| Jet2::variable(i, x[i]))
    }

    /// Composition with a scalar function given its value and first two
    /// derivatives at `self.value`.
    fn chain(self, f0: f64, f1: f64, f2: f64) -> Self {
        let mut hess = [0.0; 15];
        for i in 0..5 {
            for j in i..5 {
                let k = packed(i, j);
                hess[k] = f1 * self.hess[k] + f2 * self.grad[i] * self.grad[j];
            }
        }
        Jet2 {
            value: f0,
            grad: self.grad.map(|g| f1 * g),
            hess,
        }
    }

    pub fn recip(self) -> Self {
        let v = self.value;
        self.chain(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v))
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
            && self.grad.iter().all(|g| g.is_finite())
            && self.hess.iter().all(|h| h.is_finite())
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        Jet2 {
            value: self.value + rhs.value,
            grad: std::array::from_fn(|i| self.grad[i] + rhs.grad[i]),
            hess: std::array::from_fn(|k| self.hess[k] + rhs.hess[k]),
        }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        self + (-rhs)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2 {
            value: -self.value,
            grad: self.grad.map(|g| -g),
            hess: self.hess.map(|h| -h),
        }
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        let (a, b) = (self.value, rhs.value);
        let mut hess = [0.0; 15];
        for i in 0..5 {
            for j in i..5 {
                let k = packed(i, j);
                hess[k] = a * rhs.hess[k]
                    + b * self.hess[k]
                    + self.grad[i] * rhs.grad[j]
                    + self.grad[j] * rhs.grad[i];
            }
        }
        Jet2 {
            value: a * b,
            grad: std::array::from_fn(|i| a * rhs.grad[i] + b * self.grad[i]),
            hess,
        }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Jet2) -> Jet2 {
        self * rhs.recip()
    }
}

impl Scalar for Jet2 {
    fn constant(v: f64) -> Self {
        Jet2::constant(v)
    }

    fn sqrt(self) -> Self {
        let r = self.value.sqrt();
        self.chain(r, 0.5 / r, -0.25 / (r * self.value))
    }

    fn powf(self, k: f64) -> Self {
        let v = self.value;
        self.chain(
            v.powf(k),
            k * v.powf(k - 1.0),
            k * (k - 1.0) * v.powf(k - 2.0),
        )
    }
}

/// Evaluates `f` on seeded jets at `x`.
pub fn ad_jet<F>(f: F, x: &Vec5) -> Result<Jet2>
where
    F: Fn(&[Jet2; 5]) -> Jet2,
{
    let jet = f(&Jet2::seed(x));
    if jet.is_finite() {
        Ok(jet)
    } else {
        Err(Error::DomainError(format!(
            "non-finite derivative at {:?}",
            x.0
        )))
    }
}

pub fn ad_gradient<F>(f: F, x: &Vec5) -> Result<Vec5>
where
    F: Fn(&[Jet2; 5]) -> Jet2,
{
    ad_jet(f, x).map(|j| Vec5(j.grad))
}

pub fn ad_hessian<F>(f: F, x: &Vec5) -> Result<SymMat5>
where
    F: Fn(&[Jet2; 5]) -> Jet2,
{
    ad_jet(f, x).map(|j| SymMat5::from_packed(j.hess))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{cartan_cubic_generic, grad_cartan, w_generic, Candidate, DeltaParam, ShiftConstant};

    fn norm_sq<T: Scalar>(x: &[T; 5]) -> T {
        x.iter().skip(1).fold(x[0] * x[0], |acc, &v| acc + v * v)
    }

    #[test]
    fn squared_norm() {
        let x = Vec5::new(0.3, -1.0, 2.0, 0.5, 0.25);
        let g = ad_gradient(norm_sq, &x).unwrap();
        assert!((g - x * 2.0).max_abs() < 1e-15);
        let h = ad_hessian(norm_sq, &x).unwrap();
        assert_eq!(h, SymMat5::identity() * 2.0);
    }

    #[test]
    fn cubic_gradient_at_axis() {
        let g = ad_gradient(cartan_cubic_generic, &Vec5::unit(0)).unwrap();
        assert_eq!(g, Vec5::new(3.0, 0.0, 0.0, 0.0, 0.0));
        let x = Vec5::new(0.1, 0.7, -0.3, 0.2, 0.5);
        let g = ad_gradient(cartan_cubic_generic, &x).unwrap();
        assert!((g - grad_cartan(&x)).max_abs() < 1e-14);
    }

    #[test]
    fn w_hessian_matches_closed_form() {
        let cand = Candidate::new(DeltaParam::HALF, ShiftConstant::DEFAULT);
        let a = Vec5::unit(0);
        let h = ad_hessian(|x| w_generic(x, 0.5), &a).unwrap();
        assert!((h - cand.hess_w(&a).unwrap()).max_abs() < 1e-12);
    }

    #[test]
    fn sqrt_at_zero_is_a_domain_error() {
        let r = ad_gradient(|x| norm_sq(x).sqrt(), &Vec5::ZERO);
        assert!(matches!(r, Err(Error::DomainError(_))));
    }

    #[test]
    fn quotient_rule() {
        // f = x1 / x2 : f_12 = -1/x2^2, f_22 = 2 x1 / x2^3
        let x = Vec5::new(3.0, 2.0, 0.0, 0.0, 0.0);
        let h = ad_hessian(|v| v[0] / v[1], &x).unwrap();
        assert!((h.get(0, 1) + 0.25).abs() < 1e-15);
        assert!((h.get(1, 1) - 0.75).abs() < 1e-15);
        assert_eq!(h.get(0, 0), 0.0);
    }
}
