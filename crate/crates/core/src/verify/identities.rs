use crate::error::Result;
use crate::forms::{
    cartan_cubic, cartan_cubic_generic, grad_cartan, hess_cartan, w_generic, Candidate,
    DeltaParam, ShiftConstant, SymMat5, Vec5,
};
use crate::numerics::{ad_jet, fd_gradient, fd_hessian4, Jet2};
use crate::spectra::{mu_spectrum_half, recover_orbit_param};

use super::{map_indexed, require_samples, CheckReport, Extremum, Relation, Sampler, Witness};

fn max_of(values: Vec<Result<f64>>) -> Result<Extremum> {
    let mut worst = Extremum::max();
    for (i, v) in values.into_iter().enumerate() {
        worst.offer(i as u64, v?);
    }
    Ok(worst)
}

/// `trace D^2w = (1 + delta)(delta - 8) P |x|^(-3-delta)`, relative to the
/// natural scale `|x|^(-delta)` of the Hessian. At `delta = 1/2` the sum of
/// the closed-form branches is also compared with the trace on the sphere.
pub fn check_trace_identity(
    delta: DeltaParam,
    n: usize,
    sampler: &Sampler,
) -> Result<CheckReport> {
    require_samples(n)?;
    let cand = Candidate::new(delta, ShiftConstant::DEFAULT).with_r_min(sampler.r_min())?;
    let d = delta.value();
    let errors = map_indexed(n, |i| -> Result<f64> {
        let x = sampler.shell_point(i);
        let r = x.norm();
        let trace = cand.hess_w(&x)?.trace();
        let expected = (1.0 + d) * (d - 8.0) * cartan_cubic(&x) * r.powf(-3.0 - d);
        Ok((trace - expected).abs() / expected.abs().max(r.powf(-d)))
    });
    let worst = max_of(errors)?;

    let mut notes = String::from("error relative to max(|expected|, |x|^-delta)");
    let mut mu_worst = 0.0f64;
    if delta.is_half() {
        let mu_errors = map_indexed(n, |i| -> Result<f64> {
            let x = sampler.shell_point(i);
            let unit = x.scale(1.0 / x.norm());
            let p = recover_orbit_param(&unit)?;
            let sum: f64 = mu_spectrum_half(p).iter().sum();
            Ok((sum - cand.hess_w(&unit)?.trace()).abs())
        });
        mu_worst = max_of(mu_errors)?.value_or(0.0);
        notes.push_str(&format!(
            "; closed-form branch sum vs trace on the sphere: max abs error {mu_worst:.3e}"
        ));
    }

    let index = worst.index;
    let witness = index.map_or(Witness::None, |i| Witness::point(Some(i), &sampler.shell_point(i)));
    let report = CheckReport::deviation(
        &format!("trace-identity(delta={d})"),
        1e-9,
        n,
        worst.value_or(0.0),
        witness,
        notes,
    );
    Ok(if mu_worst > 1e-9 {
        report.fail_with("branch sum disagrees with the trace")
    } else {
        report
    })
}

/// `|grad P(x)|^2 / |x|^4` at `x`.
pub fn eiconal_constant(x: &Vec5) -> f64 {
    grad_cartan(x).norm_sq() / x.norm_sq().powi(2)
}

/// The ratio `|grad P|^2 / |x|^4` must be constant; its value is recorded.
pub fn check_eiconal(n: usize, sampler: &Sampler) -> Result<CheckReport> {
    require_samples(n)?;
    let ratios = map_indexed(n, |i| eiconal_constant(&sampler.shell_point(i)));
    let mean = ratios.iter().sum::<f64>() / n as f64;
    let mut worst = Extremum::max();
    for (i, r) in ratios.iter().enumerate() {
        worst.offer(i as u64, (r - mean).abs() / mean);
    }
    let index = worst.index.unwrap_or(0);
    Ok(CheckReport::deviation(
        "eiconal",
        1e-10,
        n,
        worst.value,
        Witness::point(Some(index), &sampler.shell_point(index)),
        format!(
            "|grad P|^2 / |x|^4 = {mean:.12} (printed normalization claims 1); \
             worst is the relative spread around the mean"
        ),
    ))
}

/// `|trace D^2 P| < 1e-12` on the ball.
pub fn check_harmonicity(n: usize, sampler: &Sampler) -> Result<CheckReport> {
    require_samples(n)?;
    let traces = map_indexed(n, |i| hess_cartan(&sampler.shell_point(i)).trace().abs());
    let mut worst = Extremum::max();
    for (i, t) in traces.iter().enumerate() {
        worst.offer(i as u64, *t);
    }
    let index = worst.index.unwrap_or(0);
    Ok(CheckReport::deviation(
        "harmonicity",
        1e-12,
        n,
        worst.value,
        Witness::point(Some(index), &sampler.shell_point(index)),
        String::new(),
    ))
}

/// Degree 3, `2 - delta` and `-delta` homogeneity of `P`, `w` and `D^2w`
/// under scaling by 1/2 and 2 of unit points.
pub fn check_homogeneity(delta: DeltaParam, n: usize, sampler: &Sampler) -> Result<CheckReport> {
    require_samples(n)?;
    let cand = Candidate::new(delta, ShiftConstant::DEFAULT).with_r_min(sampler.r_min())?;
    let d = delta.value();
    let errors = map_indexed(n, |i| -> Result<f64> {
        let x = sampler.unit_point(i);
        let h = cand.hess_w(&x)?;
        let mut worst: f64 = 0.0;
        for lambda in [0.5, 2.0] {
            let y = x.scale(lambda);
            let l3 = lambda.powi(3);
            worst = worst.max((cartan_cubic(&y) - l3 * cartan_cubic(&x)).abs() / l3);
            let lw = lambda.powf(2.0 - d);
            worst = worst.max((cand.w_value(&y)? - lw * cand.w_value(&x)?).abs() / lw);
            let lh = lambda.powf(-d);
            let diff = (cand.hess_w(&y)? - h * lh).max_abs();
            worst = worst.max(diff / (lh * h.max_abs().max(1.0)));
        }
        Ok(worst)
    });
    let worst = max_of(errors)?;
    let index = worst.index.unwrap_or(0);
    Ok(CheckReport::deviation(
        &format!("homogeneity(delta={d})"),
        1e-12,
        n,
        worst.value,
        Witness::point(Some(index), &sampler.unit_point(index)),
        "scales 0.5 and 2; errors relative to the scaled magnitude".into(),
    ))
}

/// `<grad P, x> = 3P` and `<grad w, x> = (2 - delta) w`.
pub fn check_euler(delta: DeltaParam, n: usize, sampler: &Sampler) -> Result<CheckReport> {
    require_samples(n)?;
    let cand = Candidate::new(delta, ShiftConstant::DEFAULT).with_r_min(sampler.r_min())?;
    let d = delta.value();
    let errors = map_indexed(n, |i| -> Result<f64> {
        let x = sampler.shell_point(i);
        let r = x.norm();
        let e_p = (grad_cartan(&x).dot(&x) - 3.0 * cartan_cubic(&x)).abs() / r.powi(3);
        let e_w = (cand.grad_w(&x)?.dot(&x) - (2.0 - d) * cand.w_value(&x)?).abs() / r.powf(2.0 - d);
        Ok(e_p.max(e_w))
    });
    let worst = max_of(errors)?;
    let index = worst.index.unwrap_or(0);
    Ok(CheckReport::deviation(
        &format!("euler(delta={d})"),
        1e-10,
        n,
        worst.value,
        Witness::point(Some(index), &sampler.shell_point(index)),
        "errors relative to |x|^3 and |x|^(2-delta)".into(),
    ))
}

/// Closed-form derivatives of `P` and `w` against the AD oracle, relative to
/// the natural scales `|x|^(1-delta)` (gradient) and `|x|^(-delta)` (Hessian).
pub fn check_ad_closed_form(delta: DeltaParam, n: usize, sampler: &Sampler) -> Result<CheckReport> {
    require_samples(n)?;
    let cand = Candidate::new(delta, ShiftConstant::DEFAULT).with_r_min(sampler.r_min())?;
    let d = delta.value();
    let errors = map_indexed(n, |i| -> Result<f64> {
        let x = sampler.shell_point(i);
        let r = x.norm();
        let jp = ad_jet(cartan_cubic_generic, &x)?;
        let e_p = (Vec5(jp.grad) - grad_cartan(&x)).max_abs() / (r * r)
            + (SymMat5::from_packed(jp.hess) - hess_cartan(&x)).max_abs() / r;
        let jw = ad_jet(|v| w_generic(v, d), &x)?;
        let e_g = (Vec5(jw.grad) - cand.grad_w(&x)?).max_abs() / r.powf(1.0 - d);
        let e_h = (SymMat5::from_packed(jw.hess) - cand.hess_w(&x)?).max_abs()
            / r.powf(-d);
        Ok(e_p.max(e_g).max(e_h))
    });
    let worst = max_of(errors)?;
    let index = worst.index.unwrap_or(0);
    Ok(CheckReport::deviation(
        &format!("ad-vs-closed-form(delta={d})"),
        1e-9,
        n,
        worst.value,
        Witness::point(Some(index), &sampler.shell_point(index)),
        String::new(),
    ))
}

/// Shift used for `u` in the finite-difference comparison: with `c` of order
/// 1e5 the stored values of `u` no longer resolve second differences.
const FD_SHIFT: f64 = 2.0;

/// AD against central differences for `P`, `w` and `u`, absolute `1e-6`.
/// Gradients use second-order differences, Hessians fourth-order ones.
pub fn check_ad_fd(delta: DeltaParam, n: usize, sampler: &Sampler) -> Result<CheckReport> {
    require_samples(n)?;
    let d = delta.value();
    let errors = map_indexed(n, |i| -> Result<f64> {
        let x = sampler.shell_point(i);
        let r = x.norm();
        let hg = (1e-5 * r).clamp(1e-7, 1e-3);
        let hh = (3e-3 * r).clamp(1e-7, 1e-3);
        // hh <= r / 300 keeps the stencil well away from the origin
        let field_w = |y: &Vec5| cartan_cubic(y) * y.norm().powf(-1.0 - d);
        let field_u = |y: &Vec5| FD_SHIFT + field_w(y);
        let mut worst: f64 = 0.0;

        let jp = ad_jet(cartan_cubic_generic, &x)?;
        worst = worst.max((Vec5(jp.grad) - fd_gradient(cartan_cubic, &x, hg)).max_abs());
        worst = worst.max(
            (SymMat5::from_packed(jp.hess) - fd_hessian4(cartan_cubic, &x, hh)).max_abs(),
        );

        let jw = ad_jet(|v| w_generic(v, d), &x)?;
        worst = worst.max((Vec5(jw.grad) - fd_gradient(field_w, &x, hg)).max_abs());
        worst = worst.max(
            (SymMat5::from_packed(jw.hess) - fd_hessian4(field_w, &x, hh)).max_abs(),
        );

        let ju = ad_jet(
            |v| Jet2::constant(FD_SHIFT) + w_generic(v, d),
            &x,
        )?;
        worst = worst.max((Vec5(ju.grad) - fd_gradient(field_u, &x, hg)).max_abs());
        worst = worst.max(
            (SymMat5::from_packed(ju.hess) - fd_hessian4(field_u, &x, hh)).max_abs(),
        );
        Ok(worst)
    });
    let worst = max_of(errors)?;
    let index = worst.index.unwrap_or(0);
    Ok(CheckReport::deviation(
        &format!("ad-vs-fd(delta={d})"),
        1e-6,
        n,
        worst.value,
        Witness::point(Some(index), &sampler.shell_point(index)),
        format!("steps 1e-5|x| (gradient, second order) and 3e-3|x| (Hessian, fourth order) clamped to [1e-7, 1e-3]; u uses c = {FD_SHIFT}"),
    ))
}

fn sphere_grid(m: usize) -> impl Iterator<Item = Vec5> {
    use std::f64::consts::PI;
    let step = PI / m as f64;
    (0..=m).flat_map(move |i1| {
        (0..=m).flat_map(move |i2| {
            (0..=m).flat_map(move |i3| {
                (0..2 * m).map(move |i4| {
                    let (t1, t2, t3, t4) = (
                        i1 as f64 * step,
                        i2 as f64 * step,
                        i3 as f64 * step,
                        i4 as f64 * step,
                    );
                    let (s1, s2, s3) = (t1.sin(), t2.sin(), t3.sin());
                    Vec5::new(
                        t1.cos(),
                        s1 * t2.cos(),
                        s1 * s2 * t3.cos(),
                        s1 * s2 * s3 * t4.cos(),
                        s1 * s2 * s3 * t4.sin(),
                    )
                })
            })
        })
    })
}

/// Angular resolution of the deterministic sphere grid.
const SPHERE_GRID: usize = 16;

/// `|P5| <= 1` on the unit sphere, hence `sup |w| <= 1` on the unit ball and
/// `u > 0` for every `c > 1`.
pub fn check_sphere_bound(n: usize, sampler: &Sampler) -> Result<CheckReport> {
    require_samples(n)?;
    let values = map_indexed(n, |i| cartan_cubic(&sampler.unit_point(i)).abs());
    let mut worst = Extremum::max();
    for (i, v) in values.iter().enumerate() {
        worst.offer(i as u64, *v);
    }
    let mut witness_x = sampler.unit_point(worst.index.unwrap_or(0));
    let mut witness_index = worst.index;
    let mut grid_points = 0;
    for x in sphere_grid(SPHERE_GRID) {
        grid_points += 1;
        let v = cartan_cubic(&x).abs();
        if v > worst.value {
            worst.value = v;
            witness_x = x;
            witness_index = None;
        }
    }
    Ok(CheckReport::evaluate(
        "sphere-bound",
        Relation::AtMost,
        1.0,
        1e-12,
        n + grid_points,
        worst.value,
        Witness::point(witness_index, &witness_x),
        format!("{n} random unit points and {grid_points} angular grid points; max |P| bounds sup |w| on the ball"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sampler() -> Sampler {
        Sampler::new(3, 1e-3).unwrap()
    }

    #[test]
    fn eiconal_values() {
        assert!((eiconal_constant(&Vec5::unit(0)) - 9.0).abs() < 1e-14);
        assert!((eiconal_constant(&Vec5::unit(2)) - 9.0).abs() < 1e-14);
        let x = Vec5::new(0.2, -0.4, 0.1, 0.3, 0.5);
        assert!((eiconal_constant(&x) - eiconal_constant(&x.scale(2.0))).abs() < 1e-13);
        let r = check_eiconal(2000, &sampler()).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.notes.contains("9.000000000"));
    }

    #[test]
    fn trace_identity_examples() {
        let zero = Candidate::new(DeltaParam::ZERO, ShiftConstant::DEFAULT);
        assert!((zero.hess_w(&Vec5::unit(0)).unwrap().trace() + 8.0).abs() < 1e-13);
        let half = Candidate::new(DeltaParam::HALF, ShiftConstant::DEFAULT);
        assert!((half.hess_w(&Vec5::unit(0)).unwrap().trace() + 11.25).abs() < 1e-13);
        assert!(half.hess_w(&Vec5::unit(1)).unwrap().trace().abs() < 1e-13);
        for d in [0.0, 0.25, 0.5, 0.9] {
            let r = check_trace_identity(DeltaParam::new(d).unwrap(), 1000, &sampler()).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn identity_checks_pass() {
        let s = sampler();
        assert!(check_harmonicity(2000, &s).unwrap().pass);
        assert!(check_homogeneity(DeltaParam::HALF, 500, &s).unwrap().pass);
        assert!(check_euler(DeltaParam::new(0.3).unwrap(), 500, &s).unwrap().pass);
        let r = check_ad_closed_form(DeltaParam::HALF, 500, &s).unwrap();
        assert!(r.pass, "{r:?}");
        let r = check_ad_fd(DeltaParam::HALF, 300, &s).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn sphere_bound_is_attained() {
        let r = check_sphere_bound(2000, &sampler()).unwrap();
        assert!(r.pass, "{r:?}");
        // the grid contains (1, 0, 0, 0, 0) where P = 1
        assert!((r.worst - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_samples_rejected() {
        assert!(check_eiconal(0, &sampler()).is_err());
    }
}
