//! Closed-form eigenvalue branches of `D^2w` on the unit sphere.
//!
//! Every point of the sphere lies on the orbit of some `(p, 0, r, 0, 0)`
//! with `p^2 + r^2 = 1` under the symmetry group of the cubic, so the
//! spectrum of `D^2w` there is a function of `p` alone. `p` is recovered from
//! the value of the cubic, since `P5(p, 0, r, 0, 0) = (3p - p^3) / 2`.
//!
//! The `delta = 1/2` branches ([`mu_spectrum_half`]) agree with the numeric
//! oracle. The general-`delta` branches ([`mu_spectrum_general`]) are kept
//! as printed and do not; the checkers in [`crate::verify`] report that.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{cartan_cubic, DeltaParam, Vec5};

/// Crossing point `5^(-1/4)` of the middle branches for `delta = 1/2`.
pub const P0_HALF: f64 = 0.668_740_304_976_422;

/// Orbit parameter `p` in `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct OrbitParam(f64);

impl OrbitParam {
    pub fn new(p: f64) -> Result<Self> {
        if (-1.0..=1.0).contains(&p) {
            Ok(OrbitParam(p))
        } else {
            Err(Error::InvalidParameter(format!(
                "orbit parameter must lie in [-1, 1], got {p}"
            )))
        }
    }

    /// Clamps into `[-1, 1]`; for values produced by rounding.
    pub fn clamped(p: f64) -> Self {
        OrbitParam(p.clamp(-1.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Five eigenvalues in non-increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spectrum5([f64; 5]);

impl Spectrum5 {
    pub fn from_unsorted(mut values: [f64; 5]) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum5(values)
    }

    /// Wraps values the caller has already ordered (e.g. by a case table).
    pub fn from_sorted_unchecked(values: [f64; 5]) -> Self {
        Spectrum5(values)
    }

    pub fn values(&self) -> &[f64; 5] {
        &self.0
    }

    pub fn largest(&self) -> f64 {
        self.0[0]
    }

    pub fn smallest(&self) -> f64 {
        self.0[4]
    }

    pub fn max_abs(&self) -> f64 {
        self.0[0].abs().max(self.0[4].abs())
    }

    pub fn max_abs_diff(&self, other: &Spectrum5) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn is_non_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }
}

/// Positive discriminant under the square root of the fourth and fifth
/// general branches.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Discriminant(pub f64);

fn sqrt_12_minus_3p2(p: f64) -> f64 {
    (12.0 - 3.0 * p * p).sqrt()
}

fn half_radicand(p: f64) -> f64 {
    let p2 = p * p;
    ((105.0 * p2 - 630.0) * p2 + 945.0) * p2 + 64.0
}

/// Unordered eigenvalue branches `mu_1..mu_5` of `D^2w` for `delta = 1/2`.
pub fn mu_spectrum_half(p: OrbitParam) -> [f64; 5] {
    let p = p.value();
    let s = sqrt_12_minus_3p2(p);
    let r = half_radicand(p).sqrt();
    let a = 3.0 * p * (p * p - 5.0);
    let b = 27.0 * p * (p * p - 3.0);
    [
        3.0 * p * (p * p + 1.0) / 4.0,
        (a + 6.0 * s) / 4.0,
        (a - 6.0 * s) / 4.0,
        (b + 3.0 * r) / 16.0,
        (b - 3.0 * r) / 16.0,
    ]
}

pub fn discriminant(p: OrbitParam, delta: DeltaParam) -> Discriminant {
    let (p, d) = (p.value(), delta.value());
    let q = p * p - 3.0;
    Discriminant((6.0 - d) * (4.0 - d) * (2.0 - d) * d * q * q * p * p + 144.0 * (d - 2.0).powi(2))
}

/// The general-`delta` branches exactly as printed; they fail the oracle
/// comparison and the trace identity.
pub fn mu_spectrum_general(p: OrbitParam, delta: DeltaParam) -> [f64; 5] {
    let disc = discriminant(p, delta).0.sqrt();
    let (p, d) = (p.value(), delta.value());
    let s = sqrt_12_minus_3p2(p);
    let a = p * (p * p * d - 3.0 - 3.0 * d);
    let b = p * d * (6.0 - d) * (3.0 - p * p);
    [
        p * (p * p * d + 6.0 - 3.0 * d) / 2.0,
        (a + 3.0 * s) / 2.0,
        (a - 3.0 * s) / 2.0,
        -(b + disc) / 4.0,
        -(b - disc) / 4.0,
    ]
}

/// `3^(1/4) sqrt(1 - delta) / (3 + 2 delta - delta^2)^(1/4)`.
pub fn p0_general(delta: DeltaParam) -> f64 {
    let d = delta.value();
    3f64.powf(0.25) * (1.0 - d).sqrt() / (3.0 + 2.0 * d - d * d).powf(0.25)
}

/// Assigns branches to ordered eigenvalues by the case table on `|p|` vs
/// the crossing point `p0`.
fn ordered_by_table(p: f64, mu: [f64; 5], p0: f64) -> Spectrum5 {
    let lambda2 = if p <= p0 { mu[3] } else { mu[0] };
    let lambda3 = if p <= -p0 {
        mu[4]
    } else if p <= p0 {
        mu[0]
    } else {
        mu[3]
    };
    let lambda4 = if p <= -p0 { mu[0] } else { mu[4] };
    Spectrum5::from_sorted_unchecked([mu[1], lambda2, lambda3, lambda4, mu[2]])
}

/// Ordered spectrum for `delta = 1/2` assembled by the case table.
pub fn ordered_spectrum_half(p: OrbitParam) -> Spectrum5 {
    ordered_by_table(p.value(), mu_spectrum_half(p), P0_HALF)
}

/// The general-`delta` branches assembled by the general case table.
pub fn ordered_spectrum_general(p: OrbitParam, delta: DeltaParam) -> Spectrum5 {
    ordered_by_table(p.value(), mu_spectrum_general(p, delta), p0_general(delta))
}

/// `d mu_i / dp` for the `delta = 1/2` branches.
pub fn mu_derivatives(p: OrbitParam) -> [f64; 5] {
    derivatives_with_root_sign(p.value(), -1.0)
}

/// The derivative forms as printed. They carry the opposite sign on the
/// `9p / (2 sqrt(12 - 3p^2))` term of `d_2` and `d_3`, so that the printed
/// `d_2(p)` is the true `d_2(-p)`; the maximum over `[-1, 1]` is unaffected.
pub fn mu_derivatives_printed(p: OrbitParam) -> [f64; 5] {
    derivatives_with_root_sign(p.value(), 1.0)
}

fn derivatives_with_root_sign(p: f64, sign: f64) -> [f64; 5] {
    let s = sqrt_12_minus_3p2(p);
    let r = half_radicand(p).sqrt();
    let lin = -3.0 * (5.0 - 3.0 * p * p) / 4.0;
    let root = sign * 9.0 * p / (2.0 * s);
    let outer = 81.0 * (1.0 - p * p) / 16.0;
    let ratio = 35.0 * p * (3.0 - p * p) / (3.0 * r);
    [
        3.0 * (3.0 * p * p + 1.0) / 4.0,
        lin + root,
        lin - root,
        outer * (ratio - 1.0),
        -outer * (ratio + 1.0),
    ]
}

/// Maximum of `|d_i(p)|` over a uniform grid of `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeBound {
    pub max: f64,
    pub p: f64,
    /// Zero-based branch index attaining the maximum.
    pub branch: usize,
}

pub fn derivative_bound(grid_step: f64) -> Result<DerivativeBound> {
    if !(grid_step > 0.0 && grid_step <= 1e-3) {
        return Err(Error::InvalidParameter(format!(
            "grid step must lie in (0, 1e-3], got {grid_step}"
        )));
    }
    let mut best = DerivativeBound {
        max: 0.0,
        p: -1.0,
        branch: 0,
    };
    for p in grid(grid_step) {
        for (i, d) in mu_derivatives(OrbitParam::clamped(p)).iter().enumerate() {
            if d.abs() > best.max {
                best = DerivativeBound {
                    max: d.abs(),
                    p,
                    branch: i,
                };
            }
        }
    }
    Ok(best)
}

/// Uniform grid of `[-1, 1]` with both endpoints; the step is shrunk to
/// divide the interval evenly.
pub fn grid(step: f64) -> impl Iterator<Item = f64> + Clone {
    let n = (2.0 / step).ceil() as usize;
    (0..=n).map(move |k| -1.0 + 2.0 * k as f64 / n as f64)
}

const RECOVERY_MAX_ITER: usize = 80;
const RECOVERY_TOL: f64 = 1e-14;

/// Orbit parameter of `x`: the unique `p` in `[-1, 1]` with
/// `(3p - p^3) / 2 = P5(x / |x|)`.
///
/// Safeguarded Newton iteration; bisection takes over whenever a Newton step
/// would leave the current bracket.
pub fn recover_orbit_param(x: &Vec5) -> Result<OrbitParam> {
    let r = x.norm();
    if !(r > 0.0) {
        return Err(Error::ZeroPoint { norm: r, r_min: 0.0 });
    }
    let target = cartan_cubic(&x.scale(1.0 / r));
    if target.abs() > 1.0 + 1e-12 || !target.is_finite() {
        return Err(Error::RangeViolation { value: target });
    }
    let target = target.clamp(-1.0, 1.0);
    if target.abs() == 1.0 {
        return Ok(OrbitParam(target));
    }

    let f = |p: f64| 0.5 * p * (3.0 - p * p) - target;
    let (mut lo, mut hi) = (-1.0f64, 1.0f64);
    let mut p = target;
    for _ in 0..RECOVERY_MAX_ITER {
        let fp = f(p);
        if fp == 0.0 {
            break;
        }
        if fp < 0.0 {
            lo = p;
        } else {
            hi = p;
        }
        let slope = 1.5 * (1.0 - p * p);
        let newton = p - fp / slope;
        let next = if slope > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - p).abs();
        p = next;
        if step <= RECOVERY_TOL || hi - lo <= RECOVERY_TOL {
            break;
        }
    }
    Ok(OrbitParam::clamped(p))
}

/// `lambda_1(-p) = -lambda_5(p)`, `lambda_2(-p) = -lambda_4(p)`,
/// `lambda_3(-p) = -lambda_3(p)` to `1e-10`.
pub fn oddness_check(p: OrbitParam) -> bool {
    oddness_defect(p) <= 1e-10
}

pub fn oddness_defect(p: OrbitParam) -> f64 {
    let plus = ordered_spectrum_half(p);
    let minus = ordered_spectrum_half(OrbitParam(-p.value()));
    (0..5).fold(0.0, |m, i| {
        m.max((minus.values()[i] + plus.values()[4 - i]).abs())
    })
}

/// `K = |s - t| + |p - q|`.
pub fn k_metric(p: OrbitParam, q: OrbitParam, s: f64, t: f64) -> f64 {
    (s - t).abs() + (p.value() - q.value()).abs()
}
