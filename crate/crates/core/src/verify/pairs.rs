use crate::error::{Error, Result};
use crate::forms::{grad_norm_sq_printed, Candidate, DeltaParam, ShiftConstant, SymMat5, Vec5};
use crate::numerics::{jacobi_eigen, OrthoMat5};
use crate::spectra::{k_metric, recover_orbit_param, Spectrum5};

use super::{
    map_indexed, require_samples, CheckReport, Extremum, PairSample, Relation,
    Sampler, Witness,
};

/// Samples whose conformal-Hessian difference has operator norm at or below
/// this are not eligible for the hyperbolicity ratio.
pub const HYPERBOLICITY_NORM_FLOOR: f64 = 1e-8;
/// Same for the `D^2w` differences of the two-sided ratio bound.
pub const PROP21_NORM_FLOOR: f64 = 1e-10;
/// Pairs with `K` at or below this are skipped by the Lipschitz checks.
const K_FLOOR: f64 = 1e-12;

/// Orbit parameters and radii of a pair, with `K = |s - t| + |p - q|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairGeometry {
    pub p: f64,
    pub q: f64,
    pub s: f64,
    pub t: f64,
    pub k: f64,
}

impl PairGeometry {
    pub fn of(sample: &PairSample) -> Result<Self> {
        let p = recover_orbit_param(&sample.a)?;
        let q = recover_orbit_param(&sample.b)?;
        let (s, t) = (sample.s(), sample.t());
        Ok(PairGeometry {
            p: p.value(),
            q: q.value(),
            s,
            t,
            k: k_metric(p, q, s, t),
        })
    }
}

struct PointData {
    w: f64,
    grad: Vec5,
    hess: SymMat5,
}

fn point_data(cand: &Candidate, x: &Vec5) -> Result<PointData> {
    Ok(PointData {
        w: cand.w_value(x)?,
        grad: cand.grad_w(x)?,
        hess: cand.hess_w(x)?,
    })
}

/// The pieces of `A^u(a) - O^T A^u(b) O`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffMatrices {
    /// `D^2u(a) - O^T D^2u(b) O`
    pub m1: SymMat5,
    /// `w(a) D^2u(a) - w(b) O^T D^2u(b) O`
    pub m2: SymMat5,
    /// `|Du(a)|^2 - |Du(b)|^2`
    pub grad_sq_diff: f64,
    /// `A^u(a) - O^T A^u(b) O`, computed directly from the conformal Hessians.
    pub a_diff: SymMat5,
}

impl DiffMatrices {
    /// `c M1 + M2 - (|Du(a)|^2 - |Du(b)|^2) I / 2`.
    pub fn reconstruction(&self, c: f64) -> SymMat5 {
        self.m1 * c + self.m2 - SymMat5::identity() * (0.5 * self.grad_sq_diff)
    }

    /// Largest entry of `a_diff - reconstruction(c)` relative to the largest
    /// entry of `a_diff`.
    pub fn decomposition_defect(&self, c: f64) -> f64 {
        let err = (self.a_diff - self.reconstruction(c)).max_abs();
        let scale = self.a_diff.max_abs();
        if scale > 0.0 {
            err / scale
        } else {
            err
        }
    }

    /// The same defect for the decomposition written without the factor
    /// 1/2 on the gradient term.
    pub fn unhalved_defect(&self, c: f64) -> f64 {
        let recon = self.m1 * c + self.m2 - SymMat5::identity() * self.grad_sq_diff;
        let scale = self.a_diff.max_abs();
        (self.a_diff - recon).max_abs() / if scale > 0.0 { scale } else { 1.0 }
    }
}

pub fn diff_matrices(cand: &Candidate, sample: &PairSample) -> Result<DiffMatrices> {
    let a = point_data(cand, &sample.a)?;
    let b = point_data(cand, &sample.b)?;
    let hb = b.hess.conjugate(&sample.o);
    Ok(DiffMatrices {
        m1: a.hess - hb,
        m2: a.hess * a.w - hb * b.w,
        grad_sq_diff: a.grad.norm_sq() - b.grad.norm_sq(),
        a_diff: cand.conformal_hessian(&sample.a)?
            - cand.conformal_hessian(&sample.b)?.conjugate(&sample.o),
    })
}

/// `max(rho, 1/rho)` with `rho = -Lambda_1 / Lambda_5` of a spectrum, and
/// `+inf` when the extreme eigenvalues do not have opposite signs.
pub fn spectrum_ratio(spec: &Spectrum5) -> f64 {
    let (l1, l5) = (spec.largest(), spec.smallest());
    if l1 > 0.0 && l5 < 0.0 {
        let rho = -l1 / l5;
        rho.max(1.0 / rho)
    } else {
        f64::INFINITY
    }
}

/// [`spectrum_ratio`] of `m`, or `None` when `|m| <= floor`.
pub fn hyperbolicity_ratio(m: &SymMat5, floor: f64) -> Result<Option<f64>> {
    let spec = jacobi_eigen(m)?;
    Ok(if spec.max_abs() <= floor {
        None
    } else {
        Some(spectrum_ratio(&spec))
    })
}

fn with_k<F>(sample: &PairSample, f: F) -> Result<(PairGeometry, Option<f64>)>
where
    F: FnOnce(&PairGeometry) -> Result<f64>,
{
    let g = PairGeometry::of(sample)?;
    if g.k <= K_FLOOR {
        Ok((g, None))
    } else {
        Ok((g, Some(f(&g)?)))
    }
}

/// `| |Du(a)|^2 - |Du(b)|^2 | / K`; `None` when `K` vanishes.
pub fn lemma33_ratio(cand: &Candidate, sample: &PairSample) -> Result<(PairGeometry, Option<f64>)> {
    with_k(sample, |g| {
        let diff = cand.grad_w(&sample.a)?.norm_sq() - cand.grad_w(&sample.b)?.norm_sq();
        Ok(diff.abs() / g.k)
    })
}

/// `|M1| / K`; `None` when `K` vanishes.
pub fn lemma34_ratio(cand: &Candidate, sample: &PairSample) -> Result<(PairGeometry, Option<f64>)> {
    with_k(sample, |g| {
        let m1 = cand.hess_w(&sample.a)? - cand.hess_w(&sample.b)?.conjugate(&sample.o);
        Ok(m1.op_norm()? / g.k)
    })
}

/// `|M2| / K`; `None` when `K` vanishes.
pub fn lemma35_ratio(cand: &Candidate, sample: &PairSample) -> Result<(PairGeometry, Option<f64>)> {
    with_k(sample, |g| {
        let a = point_data(cand, &sample.a)?;
        let b = point_data(cand, &sample.b)?;
        let m2 = a.hess * a.w - b.hess.conjugate(&sample.o) * b.w;
        Ok(m2.op_norm()? / g.k)
    })
}

/// Per-sample statistics that can be dumped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairStatistic {
    Lemma33,
    Lemma34,
    Lemma35,
    Prop21,
    Hyperbolicity,
}

impl PairStatistic {
    pub const ALL: [PairStatistic; 5] = [
        PairStatistic::Lemma33,
        PairStatistic::Lemma34,
        PairStatistic::Lemma35,
        PairStatistic::Prop21,
        PairStatistic::Hyperbolicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PairStatistic::Lemma33 => "lemma33",
            PairStatistic::Lemma34 => "lemma34",
            PairStatistic::Lemma35 => "lemma35",
            PairStatistic::Prop21 => "prop21",
            PairStatistic::Hyperbolicity => "hyperbolicity",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }
}

/// The statistic of one sample and its geometry; `None` marks a skipped
/// (degenerate) sample.
pub fn pair_statistic(
    kind: PairStatistic,
    cand: &Candidate,
    sample: &PairSample,
) -> Result<(PairGeometry, Option<f64>)> {
    match kind {
        PairStatistic::Lemma33 => lemma33_ratio(cand, sample),
        PairStatistic::Lemma34 => lemma34_ratio(cand, sample),
        PairStatistic::Lemma35 => lemma35_ratio(cand, sample),
        PairStatistic::Prop21 => {
            let g = PairGeometry::of(sample)?;
            let n = cand.hess_w(&sample.a)? - cand.hess_w(&sample.b)?.conjugate(&sample.o);
            Ok((g, hyperbolicity_ratio(&n, PROP21_NORM_FLOOR)?))
        }
        PairStatistic::Hyperbolicity => {
            let g = PairGeometry::of(sample)?;
            let m = cand.conformal_hessian(&sample.a)?
                - cand.conformal_hessian(&sample.b)?.conjugate(&sample.o);
            Ok((g, hyperbolicity_ratio(&m, HYPERBOLICITY_NORM_FLOOR)?))
        }
    }
}

/// The printed `C(delta) = 1000 (delta + 1)(3 - delta) / (3 (1 - delta)^2)`.
pub fn prop21_constant_formula(delta: DeltaParam) -> f64 {
    let d = delta.value();
    1000.0 * (d + 1.0) * (3.0 - d) / (3.0 * (1.0 - d).powi(2))
}

fn half_candidate(sampler: &Sampler) -> Result<Candidate> {
    Candidate::new(DeltaParam::HALF, ShiftConstant::DEFAULT).with_r_min(sampler.r_min())
}

/// Reduces per-sample values, skipping `None`, and returns the extremum with
/// the number of skipped samples.
fn reduce<T>(
    values: Vec<Result<(Option<f64>, T)>>,
    mut worst: Extremum,
) -> Result<(Extremum, usize, Vec<T>)> {
    let mut skipped = 0;
    let mut extras = Vec::with_capacity(values.len());
    for (i, v) in values.into_iter().enumerate() {
        let (stat, extra) = v?;
        match stat {
            Some(x) => worst.offer(i as u64, x),
            None => skipped += 1,
        }
        extras.push(extra);
    }
    Ok((worst, skipped, extras))
}

fn pair_witness(sampler: &Sampler, worst: &Extremum) -> Witness {
    match worst.index {
        Some(i) => Witness::pair(Some(i), &sampler.pair(i)),
        None => Witness::None,
    }
}

fn fold_max(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(f64::NEG_INFINITY, |m, v| if v > m || v.is_nan() { v } else { m })
}

fn fold_min(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(f64::INFINITY, |m, v| if v < m || v.is_nan() { v } else { m })
}

/// `| |Du(a)|^2 - |Du(b)|^2 | <= 16 K` at `delta = 1/2`.
pub fn check_lemma33(n: usize, sampler: &Sampler) -> Result<CheckReport> {
    require_samples(n)?;
    let cand = half_candidate(sampler)?;
    let values = map_indexed(n, |i| -> Result<(Option<f64>, f64)> {
        let (g, ratio) = lemma33_ratio(&cand, &sampler.pair(i))?;
        let printed = ratio.map_or(f64::NEG_INFINITY, |_| {
            (grad_norm_sq_printed(g.p, g.s) - grad_norm_sq_printed(g.q, g.t)).abs() / g.k
        });
        Ok((ratio, printed))
    });
    let (worst, skipped, printed) = reduce(values, Extremum::max())?;
    let printed_max = fold_max(printed.into_iter());
    Ok(CheckReport::evaluate(
        "lemma33",
        Relation::AtMost,
        16.0,
        0.0,
        n,
        worst.value_or(0.0),
        pair_witness(sampler, &worst),
        format!(
            "no violation found in {n} samples; {skipped} skipped with K <= {K_FLOOR:e}; \
             ratio from the printed |Du|^2 closed form: max {printed_max:.6}"
        ),
    ))
}

/// `|M1| >= K / 8` at `delta = 1/2`.
pub fn check_lemma34(n: usize, sampler: &Sampler) -> Result<CheckReport> {
    require_samples(n)?;
    let cand = half_candidate(sampler)?;
    let values = map_indexed(n, |i| -> Result<(Option<f64>, f64)> {
        let sample = sampler.pair(i);
        let (g, ratio) = lemma34_ratio(&cand, &sample)?;
        let aligned = match ratio {
            Some(_) => {
                let sa = jacobi_eigen(&cand.hess_w(&sample.a)?)?;
                let sb = jacobi_eigen(&cand.hess_w(&sample.b)?)?;
                sa.max_abs_diff(&sb) / g.k
            }
            None => f64::INFINITY,
        };
        Ok((ratio, aligned))
    });
    let (worst, skipped, aligned) = reduce(values, Extremum::min())?;
    let aligned_min = fold_min(aligned.into_iter());
    Ok(CheckReport::evaluate(
        "lemma34",
        Relation::AtLeast,
        0.125,
        0.0,
        n,
        worst.value_or(f64::INFINITY),
        pair_witness(sampler, &worst),
        format!(
            "{skipped} skipped with K <= {K_FLOOR:e}; minimum over rotations (sorted spectra \
             distance) / K: min {aligned_min:.6}"
        ),
    ))
}

/// `|M2| <= 10 K` at `delta = 1/2`, with an arbitrary rotation.
pub fn check_lemma35(n: usize, sampler: &Sampler) -> Result<CheckReport> {
    require_samples(n)?;
    let cand = half_candidate(sampler)?;
    let values = map_indexed(n, |i| -> Result<(Option<f64>, f64)> {
        let sample = sampler.pair(i);
        let (g, ratio) = lemma35_ratio(&cand, &sample)?;
        let aligned = match ratio {
            Some(_) => {
                let a = point_data(&cand, &sample.a)?;
                let b = point_data(&cand, &sample.b)?;
                let sa = jacobi_eigen(&(a.hess * a.w))?;
                let sb = jacobi_eigen(&(b.hess * b.w))?;
                sa.max_abs_diff(&sb) / g.k
            }
            None => f64::NEG_INFINITY,
        };
        Ok((ratio, aligned))
    });
    let (worst, skipped, aligned) = reduce(values, Extremum::max())?;
    let aligned_max = fold_max(aligned.into_iter());
    Ok(CheckReport::evaluate(
        "lemma35",
        Relation::AtMost,
        10.0,
        0.0,
        n,
        worst.value_or(0.0),
        pair_witness(sampler, &worst),
        format!(
            "{skipped} skipped with K <= {K_FLOOR:e}; with a = b and O != I the ratio is \
             unbounded as K -> 0; minimum over rotations (sorted spectra distance) / K: \
             max {aligned_max:.6}"
        ),
    ))
}

/// `1/C <= -Lambda_1 / Lambda_5 <= C` with `C = 1000` for differences of
/// `D^2w`, and `Lambda_1, |Lambda_5| >= |N| / C`.
pub fn check_prop21(delta: DeltaParam, n: usize, sampler: &Sampler) -> Result<CheckReport> {
    require_samples(n)?;
    let d = delta.value();
    if d < 0.5 {
        return Err(Error::InvalidParameter(format!(
            "prop21 is stated for delta in [1/2, 1), got {d}"
        )));
    }
    const C: f64 = 1000.0;
    let cand = Candidate::new(delta, ShiftConstant::DEFAULT).with_r_min(sampler.r_min())?;
    let values = map_indexed(n, |i| -> Result<(Option<f64>, f64)> {
        let sample = sampler.pair(i);
        let m = cand.hess_w(&sample.a)? - cand.hess_w(&sample.b)?.conjugate(&sample.o);
        let spec = jacobi_eigen(&m)?;
        let norm = spec.max_abs();
        if norm <= PROP21_NORM_FLOOR {
            return Ok((None, f64::INFINITY));
        }
        let lower = spec.largest().min(-spec.smallest()) / norm;
        Ok((Some(spectrum_ratio(&spec)), lower))
    });
    let (worst, skipped, lower) = reduce(values, Extremum::max())?;
    let lower_min = fold_min(lower.into_iter());
    let report = CheckReport::evaluate(
        &format!("prop21(delta={d})"),
        Relation::AtMost,
        C,
        0.0,
        n,
        worst.value_or(1.0),
        pair_witness(sampler, &worst),
        format!(
            "{skipped} skipped with |N| <= {PROP21_NORM_FLOOR:e}; min(Lambda_1, -Lambda_5) / |N| = \
             {lower_min:.6e} (needs >= 1e-3); printed C(delta) = {:.1}",
            prop21_constant_formula(delta)
        ),
    );
    Ok(if lower_min < 1.0 / C {
        report.fail_with("lower eigenvalue bounds violated")
    } else {
        report
    })
}

/// Weyl bounds `Lambda_1 >= max_i (lambda_i - lambda'_i)` and
/// `Lambda_5 <= min_i (lambda_i - lambda'_i)` for random symmetric pairs.
/// `worst` is the smallest slack.
pub fn check_weyl(n: usize, sampler: &Sampler) -> Result<CheckReport> {
    require_samples(n)?;
    let values = map_indexed(n, |i| -> Result<f64> {
        let (a, b) = sampler.symmetric_pair(i);
        let (la, lb, ld) = (jacobi_eigen(&a)?, jacobi_eigen(&b)?, jacobi_eigen(&(a - b))?);
        let diffs: Vec<f64> = (0..5).map(|k| la.values()[k] - lb.values()[k]).collect();
        let upper = ld.largest() - fold_max(diffs.iter().copied());
        let lower = fold_min(diffs.iter().copied()) - ld.smallest();
        Ok(upper.min(lower))
    });
    let mut worst = Extremum::min();
    for (i, v) in values.into_iter().enumerate() {
        worst.offer(i as u64, v?);
    }
    let index = worst.index.unwrap_or(0);
    let (a, b) = sampler.symmetric_pair(index);
    Ok(CheckReport::evaluate(
        "weyl",
        Relation::AtLeast,
        0.0,
        1e-10,
        n,
        worst.value,
        Witness::Matrices {
            index: Some(index),
            a: *a.packed_entries(),
            b: *b.packed_entries(),
        },
        "worst is the smallest slack of the two inequalities".into(),
    ))
}

/// The two-sided bound `(c + 26) / 4` of the final chain.
pub fn hyperbolicity_bound(c: ShiftConstant) -> f64 {
    (c.value() + 26.0) / 4.0
}

/// Uniform hyperbolicity of `A^u(a) - O^T A^u(b) O`.
pub fn check_hyperbolicity(cand: &Candidate, n: usize, sampler: &Sampler) -> Result<CheckReport> {
    require_samples(n)?;
    if cand.delta().value() == 0.0 {
        return Err(Error::InvalidParameter(
            "hyperbolicity fails at delta = 0; use the counterexample instead".into(),
        ));
    }
    let c = cand.c().value();
    let cand = cand.with_r_min(sampler.r_min())?;
    let values = map_indexed(n, |i| -> Result<(Option<f64>, (f64, f64, bool))> {
        let sample = sampler.pair(i);
        let g = PairGeometry::of(&sample)?;
        let dm = diff_matrices(&cand, &sample)?;
        let ratio = hyperbolicity_ratio(&dm.a_diff, HYPERBOLICITY_NORM_FLOOR)?;
        let defect = dm.decomposition_defect(c);
        let unhalved = dm.unhalved_defect(c);
        let premise = c * dm.m1.op_norm()? / 1000.0 - 26.0 * g.k >= 4.0 * g.k;
        Ok((ratio, (defect, unhalved, premise)))
    });
    let (worst, skipped, extras) = reduce(values, Extremum::max())?;
    let defect = fold_max(extras.iter().map(|e| e.0));
    let unhalved = fold_max(extras.iter().map(|e| e.1));
    let premise_failures = extras.iter().filter(|e| !e.2).count();
    let bound = hyperbolicity_bound(cand.c());
    let empirical = worst.value_or(1.0);
    let report = CheckReport::evaluate(
        &format!("hyperbolicity(delta={},c={})", cand.delta().value(), c),
        Relation::AtMost,
        bound,
        0.0,
        n,
        empirical,
        pair_witness(sampler, &worst),
        format!(
            "no violation found in {n} samples; {skipped} skipped with |A_diff| <= \
             {HYPERBOLICITY_NORM_FLOOR:e}; empirical max {empirical:.6} vs 6007: {}; \
             decomposition defect {defect:.3e} (without the 1/2 on the gradient term: \
             {unhalved:.3e}); chain premise c|M1|/1000 - 26K >= 4K failed in \
             {premise_failures} samples",
            if empirical <= 6007.0 { "below" } else { "above" }
        ),
    );
    Ok(if defect > 1e-9 {
        report.fail_with("decomposition identity violated")
    } else {
        report
    })
}

/// The construction showing that `delta = 0` fails: `a = e_1`, `b = a / 2`,
/// `O = I`.
///
/// `worst` is the largest eigenvalue of the displayed difference
/// `D^2w(a) / 2 - (27/4) I`, which must be negative. The report also checks
/// the two ingredients `Spec(D^2w(a)) = (2, 2, 2, -7, -7)` and
/// `|Dw(b)|^2 = |Dw(a)|^2 / 4`, and that the directly computed
/// `A^u(a) - A^u(b)` has no positive eigenvalue.
pub fn counterexample_delta0(c: ShiftConstant) -> Result<CheckReport> {
    const TOL: f64 = 1e-9;
    let cand = Candidate::new(DeltaParam::ZERO, c);
    let a = Vec5::unit(0);
    let b = a.scale(0.5);
    let h = cand.hess_w(&a)?;
    let spec_h = jacobi_eigen(&h)?;
    let h_expected = Spectrum5::from_sorted_unchecked([2.0, 2.0, 2.0, -7.0, -7.0]);
    let printed = h * 0.5 - SymMat5::identity() * 6.75;
    let spec_printed = jacobi_eigen(&printed)?;
    let printed_expected = Spectrum5::from_sorted_unchecked([-5.75, -5.75, -5.75, -10.25, -10.25]);
    let ga = cand.grad_w(&a)?.norm_sq();
    let gb = cand.grad_w(&b)?.norm_sq();
    let direct = cand.conformal_hessian(&a)? - cand.conformal_hessian(&b)?;
    let spec_direct = jacobi_eigen(&direct)?;
    let direct_tol = TOL * (1.0 + c.value());

    let fmt = |s: &Spectrum5| {
        s.values().iter().map(|v| format!("{v:.12}")).collect::<Vec<_>>().join(", ")
    };
    let sample = PairSample {
        a,
        b,
        o: OrthoMat5::identity(),
    };
    let mut report = CheckReport::evaluate(
        "counterexample-delta0",
        Relation::AtMost,
        0.0,
        0.0,
        1,
        spec_printed.largest(),
        Witness::pair(None, &sample),
        format!(
            "D^2w(a)/2 - (27/4)I spectrum ({}); Spec D^2w(a) ({}); |Dw(a)|^2 = {ga:.12}, \
             |Dw(b)|^2 = {gb:.12}; A^u(a) - A^u(b) computed directly: spectrum ({}), \
             not hyperbolic",
            fmt(&spec_printed),
            fmt(&spec_h),
            fmt(&spec_direct)
        ),
    );
    report.tolerance = TOL;
    if spec_printed.max_abs_diff(&printed_expected) > TOL {
        report = report.fail_with("difference spectrum differs from (-5.75 x3, -10.25 x2)");
    }
    if spec_h.max_abs_diff(&h_expected) > TOL {
        report = report.fail_with("Spec D^2w(a) differs from (2, 2, 2, -7, -7)");
    }
    if (gb - ga / 4.0).abs() > TOL {
        report = report.fail_with("|Dw(b)|^2 != |Dw(a)|^2 / 4");
    }
    if spec_direct.largest() > direct_tol {
        report = report.fail_with("direct difference has a positive eigenvalue");
    }
    Ok(report)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{skew_exp, SkewParam};

    fn half() -> Candidate {
        Candidate::new(DeltaParam::HALF, ShiftConstant::DEFAULT)
    }

    fn pair(a: Vec5, b: Vec5, o: OrthoMat5) -> PairSample {
        PairSample { a, b, o }
    }

    #[test]
    fn lemma33_same_ray_example() {
        let a = Vec5::unit(0);
        let (g, ratio) = lemma33_ratio(&half(), &pair(a, a.scale(0.5), OrthoMat5::identity())).unwrap();
        assert!((g.k - 0.5).abs() < 1e-15);
        assert!((ratio.unwrap() - 2.25).abs() < 1e-12);
    }

    #[test]
    fn equal_points_are_skipped() {
        let a = Vec5::new(0.3, -0.2, 0.5, 0.1, 0.4);
        let s = pair(a, a, OrthoMat5::identity());
        assert_eq!(lemma33_ratio(&half(), &s).unwrap().1, None);
        assert_eq!(lemma35_ratio(&half(), &s).unwrap().1, None);
        let dm = diff_matrices(&half(), &s).unwrap();
        assert!(dm.m2.max_abs() == 0.0 && dm.a_diff.max_abs() == 0.0);
        assert_eq!(hyperbolicity_ratio(&dm.a_diff, HYPERBOLICITY_NORM_FLOOR).unwrap(), None);
    }

    #[test]
    fn same_ray_m2_is_linear_in_radius_gap() {
        // w(b) D^2w(b) = t^(3/2) t^(-1/2) w(a) D^2w(a) on the ray of a unit a
        let a = Vec5::unit(0);
        for t in [0.9, 0.5, 0.1] {
            let (g, ratio) = lemma35_ratio(&half(), &pair(a, a.scale(t), OrthoMat5::identity())).unwrap();
            assert!((g.k - (1.0 - t)).abs() < 1e-15);
            assert!((ratio.unwrap() - 7.5).abs() < 1e-9);
        }
    }

    #[test]
    fn lemma35_blows_up_for_rotated_close_pairs() {
        let a = Vec5::new(0.3, -0.2, 0.5, 0.1, 0.4);
        let mut th = [0.0; 10];
        th[3] = 0.7;
        let o = skew_exp(&SkewParam(th));
        let b = a.scale(1.0 - 1e-6);
        let (_, ratio) = lemma35_ratio(&half(), &pair(a, b, o)).unwrap();
        assert!(ratio.unwrap() > 1e4);
    }

    #[test]
    fn decomposition_needs_half_gradient_term() {
        let s = pair(
            Vec5::new(0.3, -0.2, 0.5, 0.1, 0.4),
            Vec5::new(-0.1, 0.6, 0.2, -0.3, 0.05),
            skew_exp(&SkewParam([0.1, -0.2, 0.3, 0.0, 0.5, -0.4, 0.2, 0.1, 0.0, 0.3])),
        );
        let dm = diff_matrices(&half(), &s).unwrap();
        assert!(dm.decomposition_defect(240_000.0) < 1e-12);
        assert!(dm.grad_sq_diff.abs() > 1e-3);
        assert!(dm.unhalved_defect(240_000.0) > 1e-12);
    }

    #[test]
    fn prop21_constant() {
        assert!((prop21_constant_formula(DeltaParam::HALF) - 5000.0).abs() < 1e-9);
    }

    #[test]
    fn counterexample() {
        let r = counterexample_delta0(ShiftConstant::DEFAULT).unwrap();
        assert!(r.pass, "{r:?}");
        assert!((r.worst + 5.75).abs() < 1e-9);
        assert!(counterexample_delta0(ShiftConstant::new(3.0).unwrap()).unwrap().pass);
    }

    #[test]
    fn hyperbolicity_rejects_delta_zero() {
        let s = Sampler::new(0, 1e-3).unwrap();
        let cand = Candidate::new(DeltaParam::ZERO, ShiftConstant::DEFAULT);
        assert!(check_hyperbolicity(&cand, 10, &s).is_err());
        assert!(check_prop21(DeltaParam::new(0.3).unwrap(), 10, &s).is_err());
    }

    #[test]
    fn small_runs() {
        let s = Sampler::new(5, 1e-3).unwrap();
        for r in [
            check_lemma33(2000, &s).unwrap(),
            check_lemma34(2000, &s).unwrap(),
            check_prop21(DeltaParam::HALF, 2000, &s).unwrap(),
            check_weyl(2000, &s).unwrap(),
            check_hyperbolicity(&half(), 2000, &s).unwrap(),
        ] {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn statistic_names_round_trip() {
        for s in PairStatistic::ALL {
            assert_eq!(PairStatistic::from_name(s.name()), Some(s));
        }
        assert_eq!(PairStatistic::from_name("nope"), None);
    }
}
