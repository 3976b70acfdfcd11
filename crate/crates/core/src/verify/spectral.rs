use crate::error::{Error, Result};
use crate::forms::{w_generic, DeltaParam, Vec5};
use crate::numerics::{ad_hessian, jacobi_eigen};
use crate::spectra::{
    derivative_bound, discriminant, grid, mu_derivatives, mu_derivatives_printed, mu_spectrum_general, mu_spectrum_half,
    oddness_defect, ordered_spectrum_half, p0_general, recover_orbit_param, OrbitParam, Spectrum5,
    P0_HALF,
};

use super::{map_indexed, require_half, require_samples, CheckReport, Extremum, Relation, Sampler, Witness};

/// Which closed form the numerical spectrum is compared with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumVariant {
    /// The `delta = 1/2` branches ordered by their case table.
    Half,
    /// The general-`delta` branches as printed, compared as a sorted set.
    PrintedGeneral,
}

/// `max_i |lambda_i(D^2w(x/|x|)) - lambda_i(closed form)|` with the
/// numerical spectrum from AD and Jacobi.
pub fn spectrum_deviation(x: &Vec5, delta: DeltaParam, variant: SpectrumVariant) -> Result<f64> {
    let r = x.norm();
    if !(r > 0.0) {
        return Err(Error::ZeroPoint { norm: r, r_min: 0.0 });
    }
    let unit = x.scale(1.0 / r);
    let d = delta.value();
    let numeric = jacobi_eigen(&ad_hessian(|v| w_generic(v, d), &unit)?)?;
    let p = recover_orbit_param(&unit)?;
    let closed = match variant {
        SpectrumVariant::Half => {
            require_half(delta, "the ordered closed-form spectrum")?;
            ordered_spectrum_half(p)
        }
        SpectrumVariant::PrintedGeneral => Spectrum5::from_unsorted(mu_spectrum_general(p, delta)),
    };
    Ok(numeric.max_abs_diff(&closed))
}

fn spectrum_check(
    name: &str,
    delta: DeltaParam,
    variant: SpectrumVariant,
    n: usize,
    sampler: &Sampler,
) -> Result<CheckReport> {
    require_samples(n)?;
    let devs = map_indexed(n, |i| spectrum_deviation(&sampler.unit_point(i), delta, variant));
    let mut worst = Extremum::max();
    for (i, d) in devs.into_iter().enumerate() {
        worst.offer(i as u64, d?);
    }
    let index = worst.index.unwrap_or(0);
    Ok(CheckReport::deviation(
        name,
        1e-7,
        n,
        worst.value,
        Witness::point(Some(index), &sampler.unit_point(index)),
        String::new(),
    ))
}

/// Ordered closed-form spectrum against AD + Jacobi on unit points,
/// `delta = 1/2` only.
pub fn check_spectrum_match(delta: DeltaParam, n: usize, sampler: &Sampler) -> Result<CheckReport> {
    require_half(delta, "spectrum-match")?;
    spectrum_check("spectrum-match", delta, SpectrumVariant::Half, n, sampler)
}

/// The printed general-`delta` branches against AD + Jacobi.
pub fn check_spectrum_general(delta: DeltaParam, n: usize, sampler: &Sampler) -> Result<CheckReport> {
    let name = format!("spectrum-general(delta={})", delta.value());
    spectrum_check(&name, delta, SpectrumVariant::PrintedGeneral, n, sampler)
}

/// Decides between the two closed forms at `delta = 1/2`: passes when the
/// `delta = 1/2` branches agree with the oracle and the printed general
/// branches are off by at least 1 at `p = 1`.
pub fn check_arbitration(n: usize, sampler: &Sampler) -> Result<CheckReport> {
    let half = check_spectrum_match(DeltaParam::HALF, n, sampler)?;
    let general = check_spectrum_general(DeltaParam::HALF, n, sampler)?;
    let at_pole = spectrum_deviation(&Vec5::unit(0), DeltaParam::HALF, SpectrumVariant::PrintedGeneral)?;
    let zero_pole = spectrum_deviation(&Vec5::unit(0), DeltaParam::ZERO, SpectrumVariant::PrintedGeneral)?;
    let notes = format!(
        "delta=1/2 branches: max deviation {:.3e}; printed general branches: max deviation {:.3e}, \
         {at_pole:.6} at p=1 (delta=1/2), {zero_pole:.6} at p=1 (delta=0)",
        half.worst, general.worst
    );
    let report = CheckReport::evaluate(
        "spectrum-arbitration",
        Relation::AtLeast,
        1.0,
        0.0,
        n,
        at_pole,
        Witness::Param { p: 1.0 },
        notes,
    );
    Ok(if !half.pass {
        report.fail_with("the delta=1/2 branches disagree with the oracle")
    } else {
        report
    })
}

/// Root of `mu_1 - mu_4` on `(0, 1)` by bisection.
pub fn crossing_root() -> f64 {
    let f = |p: f64| {
        let mu = mu_spectrum_half(OrbitParam::clamped(p));
        mu[0] - mu[3]
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    debug_assert!(f(lo) < 0.0 && f(hi) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The crossing point `p0 = 5^(-1/4)`: bisection root, the stated decimal
/// value and the general formula at `delta = 1/2`.
pub fn check_p0() -> Result<CheckReport> {
    let root = crossing_root();
    let exact = 5f64.powf(-0.25);
    let formula = p0_general(DeltaParam::HALF);
    let worst = (root - exact)
        .abs()
        .max((P0_HALF - exact).abs())
        .max((formula - exact).abs());
    Ok(CheckReport::deviation(
        "p0",
        1e-9,
        1,
        worst,
        Witness::Param { p: root },
        format!("bisection root {root:.15}, 5^(-1/4) = {exact:.15}, general formula {formula:.15}"),
    ))
}

fn grid_report<F>(name: &str, grid_step: f64, tolerance: f64, notes: String, f: F) -> Result<CheckReport>
where
    F: Fn(f64) -> f64,
{
    if !(grid_step > 0.0 && grid_step <= 1e-3) {
        return Err(Error::InvalidParameter(format!(
            "grid step must lie in (0, 1e-3], got {grid_step}"
        )));
    }
    let mut worst = Extremum::max();
    let mut count = 0;
    let mut worst_p = 0.0;
    for (k, p) in grid(grid_step).enumerate() {
        count += 1;
        let before = worst.index;
        worst.offer(k as u64, f(p));
        if worst.index != before {
            worst_p = p;
        }
    }
    Ok(CheckReport::deviation(name, tolerance, count, worst.value, Witness::Param { p: worst_p }, notes))
}

/// Case-table ordering against sorting the branches, plus monotonicity of
/// the assembled spectrum.
pub fn check_ordering_table(grid_step: f64) -> Result<CheckReport> {
    grid_report("ordering-table", grid_step, 1e-10, String::new(), |p| {
        let p = OrbitParam::clamped(p);
        let table = ordered_spectrum_half(p);
        let sorted = Spectrum5::from_unsorted(mu_spectrum_half(p));
        let v = table.values();
        let inversions = (0..4).fold(0.0f64, |m, i| m.max(v[i + 1] - v[i]));
        table.max_abs_diff(&sorted).max(inversions)
    })
}

fn fd_deviation(p: f64, forms: fn(OrbitParam) -> [f64; 5]) -> f64 {
    const H: f64 = 1e-6;
    let (lo, hi) = if p - H < -1.0 {
        (p, p + H)
    } else if p + H > 1.0 {
        (p - H, p)
    } else {
        (p - H, p + H)
    };
    let a = mu_spectrum_half(OrbitParam::clamped(lo));
    let b = mu_spectrum_half(OrbitParam::clamped(hi));
    let d = forms(OrbitParam::clamped(0.5 * (lo + hi)));
    (0..5).fold(0.0f64, |m, i| m.max(((b[i] - a[i]) / (hi - lo) - d[i]).abs()))
}

/// `d mu_i / dp` against differences of `mu_i` with step `1e-6` (central,
/// one-sided at the endpoints). The printed forms are compared too and
/// their deviation is reported.
pub fn check_derivatives(grid_step: f64) -> Result<CheckReport> {
    let printed = grid(grid_step)
        .map(|p| fd_deviation(p, mu_derivatives_printed))
        .fold(0.0f64, f64::max);
    grid_report(
        "derivatives",
        grid_step,
        1e-6,
        format!(
            "differences with step 1e-6; printed d_2, d_3 (opposite sign on the square-root \
             term) deviate by up to {printed:.6}"
        ),
        |p| fd_deviation(p, mu_derivatives),
    )
}

/// `max |d_i| < 10` on the grid; the maximum is reported.
pub fn check_derivative_bound(grid_step: f64) -> Result<CheckReport> {
    let b = derivative_bound(grid_step)?;
    let report = CheckReport::evaluate(
        "derivative-bound",
        Relation::AtMost,
        10.0,
        0.0,
        grid(grid_step).count(),
        b.max,
        Witness::Param { p: b.p },
        format!("maximum attained by branch {} at p = {}", b.branch + 1, b.p),
    );
    Ok(if b.max >= 10.0 {
        report.fail_with("the bound is strict")
    } else {
        report
    })
}

/// Oddness of the ordered spectrum in `p`.
pub fn check_oddness(grid_step: f64) -> Result<CheckReport> {
    grid_report("oddness", grid_step, 1e-10, String::new(), |p| {
        oddness_defect(OrbitParam::clamped(p))
    })
}

/// `D(p, delta) >= 144 (delta - 2)^2` on a `(p, delta)` grid, reported as
/// the smallest margin.
pub fn check_discriminant(grid_step: f64) -> Result<CheckReport> {
    if !(grid_step > 0.0 && grid_step <= 1e-3) {
        return Err(Error::InvalidParameter(format!(
            "grid step must lie in (0, 1e-3], got {grid_step}"
        )));
    }
    let mut worst = Extremum::min();
    let mut witness = (0.0, 0.0);
    let mut count = 0u64;
    for k in 0..100 {
        let delta = DeltaParam::new(k as f64 / 100.0)?;
        let floor = 144.0 * (delta.value() - 2.0).powi(2);
        for p in grid(grid_step) {
            let margin = discriminant(OrbitParam::clamped(p), delta).0 - floor;
            let before = worst.index;
            worst.offer(count, margin / floor);
            if worst.index != before {
                witness = (p, delta.value());
            }
            count += 1;
        }
    }
    Ok(CheckReport::evaluate(
        "discriminant",
        Relation::AtLeast,
        0.0,
        1e-12,
        count as usize,
        worst.value,
        Witness::Param { p: witness.0 },
        format!("smallest margin relative to 144(delta-2)^2, at delta = {}", witness.1),
    ))
}
