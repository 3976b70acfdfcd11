//! The Cartan cubic, the candidate `w = P5 / |x|^(1+delta)`, the shifted
//! candidate `u = c + w`, their closed-form derivatives and the conformal
//! Hessian.

mod linalg;

pub use linalg::{SymMat5, Vec5};
pub(crate) use linalg::packed;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Scalar;

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Default radius of the excluded ball around the singular point.
pub const DEFAULT_R_MIN: f64 = 1e-3;

/// Exponent parameter `delta` in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct DeltaParam(f64);

impl DeltaParam {
    pub const ZERO: DeltaParam = DeltaParam(0.0);
    pub const HALF: DeltaParam = DeltaParam(0.5);

    pub fn new(delta: f64) -> Result<Self> {
        if delta.is_finite() && (0.0..1.0).contains(&delta) {
            Ok(DeltaParam(delta))
        } else {
            Err(Error::InvalidParameter(format!(
                "delta must lie in [0, 1), got {delta}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_half(self) -> bool {
        self.0 == 0.5
    }
}

/// Positive additive constant `c` of `u = c + w`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct ShiftConstant(f64);

impl ShiftConstant {
    /// Sufficient value for `delta = 1/2`.
    pub const DEFAULT: ShiftConstant = ShiftConstant(240_000.0);

    pub fn new(c: f64) -> Result<Self> {
        if c.is_finite() && c > 0.0 {
            Ok(ShiftConstant(c))
        } else {
            Err(Error::InvalidParameter(format!("c must be positive, got {c}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// The Cartan cubic over any [`Scalar`]; the AD oracle differentiates this.
pub fn cartan_cubic_generic<T: Scalar>(x: &[T; 5]) -> T {
    let [x1, x2, z1, z2, z3] = *x;
    let k = T::constant;
    x1 * x1 * x1
        + k(1.5) * x1 * (z1 * z1 + z2 * z2 - k(2.0) * z3 * z3 - k(2.0) * x2 * x2)
        + k(1.5 * SQRT3) * (x2 * z1 * z1 - x2 * z2 * z2 + k(2.0) * z1 * z2 * z3)
}

/// `P5(x) * (|x|^2)^(-(1+delta)/2)` over any [`Scalar`].
pub fn w_generic<T: Scalar>(x: &[T; 5], delta: f64) -> T {
    let r2 = x.iter().skip(1).fold(x[0] * x[0], |acc, &v| acc + v * v);
    cartan_cubic_generic(x) * r2.powf(-0.5 * (1.0 + delta))
}

pub fn cartan_cubic(x: &Vec5) -> f64 {
    cartan_cubic_generic(&x.0)
}

pub fn grad_cartan(x: &Vec5) -> Vec5 {
    let [x1, x2, z1, z2, z3] = x.0;
    let r3 = 3.0 * SQRT3;
    Vec5([
        3.0 * x1 * x1 + 1.5 * (z1 * z1 + z2 * z2 - 2.0 * z3 * z3 - 2.0 * x2 * x2),
        -6.0 * x1 * x2 + 1.5 * SQRT3 * (z1 * z1 - z2 * z2),
        3.0 * x1 * z1 + r3 * (x2 * z1 + z2 * z3),
        3.0 * x1 * z2 + r3 * (z1 * z3 - x2 * z2),
        -6.0 * x1 * z3 + r3 * z1 * z2,
    ])
}

pub fn hess_cartan(x: &Vec5) -> SymMat5 {
    let [x1, x2, z1, z2, z3] = x.0;
    let r3 = 3.0 * SQRT3;
    let mut h = SymMat5::zeros();
    h.set(0, 0, 6.0 * x1);
    h.set(0, 1, -6.0 * x2);
    h.set(0, 2, 3.0 * z1);
    h.set(0, 3, 3.0 * z2);
    h.set(0, 4, -6.0 * z3);
    h.set(1, 1, -6.0 * x1);
    h.set(1, 2, r3 * z1);
    h.set(1, 3, -r3 * z2);
    h.set(2, 2, 3.0 * x1 + r3 * x2);
    h.set(2, 3, r3 * z3);
    h.set(2, 4, r3 * z2);
    h.set(3, 3, 3.0 * x1 - r3 * x2);
    h.set(3, 4, r3 * z1);
    h.set(4, 4, -6.0 * x1);
    h
}

/// `A = u D^2u - |Du|^2 I / 2` from the value, gradient and Hessian of `u`.
pub fn conformal_hessian_from(u: f64, grad: &Vec5, hess: &SymMat5) -> SymMat5 {
    let mut a = hess.scale(u);
    let half = 0.5 * grad.norm_sq();
    for i in 0..5 {
        a.set(i, i, a.get(i, i) - half);
    }
    a
}

/// The closed form `9 s (16 - 3 p^2 (p^2 - 3)^2) / 32` printed for `|Du|^2`
/// at a point of radius `s` on the orbit of `p`.
///
/// Kept verbatim. It is half of the value obtained by differentiating the
/// cubic as written, see [`grad_norm_sq_orbit`].
pub fn grad_norm_sq_printed(p: f64, s: f64) -> f64 {
    let g = p * p * (p * p - 3.0).powi(2);
    9.0 * s * (16.0 - 3.0 * g) / 32.0
}

/// `|Dw|^2` at radius `s` on the orbit of `p` for `delta = 1/2`, derived from
/// `|grad P|^2 = 9 |x|^4` and `<grad P, x> = 3 P`.
pub fn grad_norm_sq_orbit(p: f64, s: f64) -> f64 {
    2.0 * grad_norm_sq_printed(p, s)
}

/// `u = c + w` together with the excluded radius used for every evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    delta: DeltaParam,
    c: ShiftConstant,
    r_min: f64,
}

impl Candidate {
    pub fn new(delta: DeltaParam, c: ShiftConstant) -> Self {
        Candidate {
            delta,
            c,
            r_min: DEFAULT_R_MIN,
        }
    }

    pub fn with_r_min(mut self, r_min: f64) -> Result<Self> {
        if !(r_min.is_finite() && r_min > 0.0 && r_min < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "r_min must lie in (0, 1), got {r_min}"
            )));
        }
        self.r_min = r_min;
        Ok(self)
    }

    pub fn delta(&self) -> DeltaParam {
        self.delta
    }

    pub fn c(&self) -> ShiftConstant {
        self.c
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    fn radius(&self, x: &Vec5) -> Result<f64> {
        let r = x.norm();
        if r < self.r_min || !r.is_finite() {
            Err(Error::ZeroPoint {
                norm: r,
                r_min: self.r_min,
            })
        } else {
            Ok(r)
        }
    }

    fn exponent(&self) -> f64 {
        1.0 + self.delta.value()
    }

    pub fn w_value(&self, x: &Vec5) -> Result<f64> {
        let r = self.radius(x)?;
        Ok(cartan_cubic(x) * r.powf(-self.exponent()))
    }

    pub fn u_value(&self, x: &Vec5) -> Result<f64> {
        Ok(self.c.value() + self.w_value(x)?)
    }

    /// `|x|^(-m) grad P - m P |x|^(-m-2) x` with `m = 1 + delta`.
    pub fn grad_w(&self, x: &Vec5) -> Result<Vec5> {
        let r = self.radius(x)?;
        let m = self.exponent();
        let rm = r.powf(-m);
        let p = cartan_cubic(x);
        Ok(grad_cartan(x) * rm - *x * (m * p * rm / (r * r)))
    }

    pub fn hess_w(&self, x: &Vec5) -> Result<SymMat5> {
        let r = self.radius(x)?;
        let m = self.exponent();
        let r2 = r * r;
        let rm = r.powf(-m);
        let p = cartan_cubic(x);
        let g = grad_cartan(x);
        let mut h = hess_cartan(x) * rm;
        h = h - SymMat5::sym_outer(&g, x) * (m * rm / r2);
        h = h + SymMat5::outer(x) * (m * (m + 2.0) * p * rm / (r2 * r2));
        let shift = m * p * rm / r2;
        for i in 0..5 {
            h.set(i, i, h.get(i, i) - shift);
        }
        Ok(h)
    }

    /// `A^u(x) = u D^2u - |Du|^2 I / 2`.
    pub fn conformal_hessian(&self, x: &Vec5) -> Result<SymMat5> {
        let u = self.u_value(x)?;
        if !(u > 0.0) {
            return Err(Error::NonPositiveU { u });
        }
        Ok(conformal_hessian_from(u, &self.grad_w(x)?, &self.hess_w(x)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn half() -> Candidate {
        Candidate::new(DeltaParam::HALF, ShiftConstant::DEFAULT)
    }

    #[test]
    fn cubic_examples() {
        assert_eq!(cartan_cubic(&Vec5::unit(0)), 1.0);
        assert_eq!(cartan_cubic(&Vec5::unit(1)), 0.0);
        let x = Vec5::new(0.6, 0.0, 0.8, 0.0, 0.0);
        assert!((cartan_cubic(&x) - 0.792).abs() < 1e-15);
    }

    #[test]
    fn gradient_examples() {
        assert_eq!(grad_cartan(&Vec5::unit(0)), Vec5::new(3.0, 0.0, 0.0, 0.0, 0.0));
        let g = grad_cartan(&Vec5::unit(2));
        let expected = Vec5::new(1.5, 1.5 * SQRT3, 0.0, 0.0, 0.0);
        assert!((g - expected).max_abs() < 1e-15);
    }

    #[test]
    fn hessian_at_first_axis() {
        let h = hess_cartan(&Vec5::unit(0));
        assert_eq!(h, SymMat5::diag([6.0, -6.0, 3.0, 3.0, -6.0]));
    }

    #[test]
    fn w_and_u_examples() {
        let cand = half();
        assert_eq!(cand.w_value(&Vec5::unit(0)).unwrap(), 1.0);
        let w2 = cand.w_value(&Vec5::new(2.0, 0.0, 0.0, 0.0, 0.0)).unwrap();
        assert!((w2 - 2f64.powf(1.5)).abs() < TOL);
        assert_eq!(cand.w_value(&Vec5::unit(1)).unwrap(), 0.0);
        assert_eq!(cand.u_value(&Vec5::unit(0)).unwrap(), 240_001.0);
        assert_eq!(cand.u_value(&Vec5::unit(1)).unwrap(), 240_000.0);
        let u = cand.u_value(&Vec5::new(0.6, 0.0, 0.8, 0.0, 0.0)).unwrap();
        assert!((u - 240_000.792).abs() < 1e-9);
    }

    #[test]
    fn zero_point_rejected() {
        let cand = half();
        let tiny = Vec5::new(1e-4, 0.0, 0.0, 0.0, 0.0);
        assert!(matches!(cand.w_value(&tiny), Err(Error::ZeroPoint { .. })));
        assert!(matches!(cand.hess_w(&Vec5::ZERO), Err(Error::ZeroPoint { .. })));
        let loose = cand.with_r_min(1e-6).unwrap();
        assert!(loose.w_value(&tiny).is_ok());
    }

    #[test]
    fn grad_w_examples() {
        let g = half().grad_w(&Vec5::unit(0)).unwrap();
        assert!((g - Vec5::new(1.5, 0.0, 0.0, 0.0, 0.0)).max_abs() < TOL);
        let zero = Candidate::new(DeltaParam::ZERO, ShiftConstant::DEFAULT);
        let g = zero.grad_w(&Vec5::unit(0)).unwrap();
        assert!((g - Vec5::new(2.0, 0.0, 0.0, 0.0, 0.0)).max_abs() < TOL);
    }

    #[test]
    fn trace_of_hess_w_follows_euler_and_harmonicity() {
        let x = Vec5::new(0.3, -0.2, 0.5, 0.1, -0.4);
        for delta in [0.0, 0.25, 0.5, 0.9] {
            let cand = Candidate::new(DeltaParam::new(delta).unwrap(), ShiftConstant::DEFAULT);
            let tr = cand.hess_w(&x).unwrap().trace();
            let expected =
                (1.0 + delta) * (delta - 8.0) * cartan_cubic(&x) * x.norm().powf(-3.0 - delta);
            assert!((tr - expected).abs() <= 1e-9 * expected.abs(), "{delta}: {tr} vs {expected}");
        }
    }

    #[test]
    fn conformal_hessian_of_constant_is_zero() {
        let a = conformal_hessian_from(240_000.0, &Vec5::ZERO, &SymMat5::zeros());
        assert_eq!(a, SymMat5::zeros());
    }

    #[test]
    fn conformal_hessian_at_first_axis() {
        let cand = half();
        let a = Vec5::unit(0);
        let got = cand.conformal_hessian(&a).unwrap();
        let mut expected = cand.hess_w(&a).unwrap() * 240_001.0;
        for i in 0..5 {
            expected.set(i, i, expected.get(i, i) - 9.0 / 8.0);
        }
        assert!((got - expected).max_abs() < 1e-9);
    }

    #[test]
    fn small_shift_is_reported() {
        let cand = Candidate::new(DeltaParam::HALF, ShiftConstant::new(0.5).unwrap());
        let x = Vec5::new(-1.0, 0.0, 0.0, 0.0, 0.0);
        assert!(matches!(
            cand.conformal_hessian(&x),
            Err(Error::NonPositiveU { .. })
        ));
    }

    #[test]
    fn printed_gradient_norm_values() {
        assert_eq!(grad_norm_sq_printed(1.0, 1.0), 1.125);
        assert_eq!(grad_norm_sq_printed(0.0, 1.0), 4.5);
        let g = half().grad_w(&Vec5::unit(0)).unwrap();
        assert!((g.norm_sq() - 2.25).abs() < TOL);
        assert!((grad_norm_sq_orbit(1.0, 1.0) - g.norm_sq()).abs() < TOL);
    }

    #[test]
    fn delta_and_shift_validation() {
        assert!(DeltaParam::new(1.0).is_err());
        assert!(DeltaParam::new(-0.1).is_err());
        assert!(DeltaParam::new(f64::NAN).is_err());
        assert!(DeltaParam::new(0.0).is_ok());
        assert!(ShiftConstant::new(0.0).is_err());
    }
}
