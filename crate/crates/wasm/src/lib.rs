//! Browser bindings for the verification engine.
//!
//! Three operations are exported: orbit spectra (closed form and sampled),
//! a histogram of a pair statistic, and single checks. The plain Rust
//! functions are the tested surface; the `#[wasm_bindgen]` wrappers only
//! convert errors.

use chv_core::forms::{Candidate, DeltaParam, ShiftConstant};
use chv_core::numerics::{ad_hessian, jacobi_eigen};
use chv_core::spectra::{mu_spectrum_general, ordered_spectrum_half, recover_orbit_param, OrbitParam, Spectrum5};
use chv_core::verify::{self, pair_statistic, PairStatistic, Sampler};
use chv_core::{forms::w_generic, CheckReport};
use serde_json::json;
use wasm_bindgen::prelude::*;

const R_MIN: f64 = 1e-3;

/// Columns per row of [`spectrum_curves`].
pub const CURVE_COLUMNS: usize = 11;
/// Columns per row of [`spectrum_scatter`].
pub const SCATTER_COLUMNS: usize = 6;

/// Checks that can be run from the page.
pub const CHECKS: [&str; 10] = [
    "spectrum-match",
    "p0",
    "derivative-bound",
    "lemma33",
    "lemma34",
    "lemma35",
    "prop21",
    "hyperbolicity",
    "weyl",
    "counterexample-delta0",
];

fn sampler(seed: u64) -> Result<Sampler, String> {
    Sampler::new(seed, R_MIN).map_err(|e| e.to_string())
}

/// Rows `p, lambda_1..lambda_5 (delta = 1/2), sorted printed general
/// branches at delta = 1/2` on `steps + 1` equally spaced `p` in `[-1, 1]`.
pub fn spectrum_curves(steps: usize) -> Vec<f64> {
    let steps = steps.max(1);
    let mut out = Vec::with_capacity((steps + 1) * CURVE_COLUMNS);
    for k in 0..=steps {
        let p = OrbitParam::clamped(-1.0 + 2.0 * k as f64 / steps as f64);
        out.push(p.value());
        out.extend(ordered_spectrum_half(p).values());
        out.extend(Spectrum5::from_unsorted(mu_spectrum_general(p, DeltaParam::HALF)).values());
    }
    out
}

/// Rows `p, lambda_1..lambda_5` of the Hessian of `P / |x|^(3/2)` at random
/// unit points, computed by forward-mode differentiation and Jacobi.
pub fn spectrum_scatter(samples: usize, seed: u64) -> Result<Vec<f64>, String> {
    let s = sampler(seed)?;
    let mut out = Vec::with_capacity(samples * SCATTER_COLUMNS);
    for i in 0..samples as u64 {
        let x = s.unit_point(i);
        let h = ad_hessian(|v| w_generic(v, 0.5), &x).map_err(|e| e.to_string())?;
        let spec = jacobi_eigen(&h).map_err(|e| e.to_string())?;
        out.push(recover_orbit_param(&x).map_err(|e| e.to_string())?.value());
        out.extend(spec.values());
    }
    Ok(out)
}

/// Histogram of `log10` of a pair statistic over `samples` random pairs,
/// as JSON.
pub fn ratio_histogram(statistic: &str, samples: usize, seed: u64, bins: usize) -> Result<String, String> {
    let kind = PairStatistic::from_name(statistic).ok_or_else(|| format!("unknown statistic {statistic:?}"))?;
    if bins == 0 {
        return Err("bins must be at least 1".into());
    }
    let s = sampler(seed)?;
    let cand = Candidate::new(DeltaParam::HALF, ShiftConstant::DEFAULT);
    let mut values = Vec::with_capacity(samples);
    let mut skipped = 0usize;
    for i in 0..samples as u64 {
        match pair_statistic(kind, &cand, &s.pair(i)).map_err(|e| e.to_string())?.1 {
            Some(v) if v > 0.0 && v.is_finite() => values.push(v.log10()),
            _ => skipped += 1,
        }
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut counts = vec![0u64; bins];
    if !values.is_empty() {
        let width = (hi - lo).max(1e-12) / bins as f64;
        for v in &values {
            let k = (((v - lo) / width) as usize).min(bins - 1);
            counts[k] += 1;
        }
    }
    let (lo, hi) = if values.is_empty() { (0.0, 0.0) } else { (lo, hi) };
    Ok(json!({
        "statistic": kind.name(),
        "samples": samples,
        "skipped": skipped,
        "log10_min": lo,
        "log10_max": hi,
        "counts": counts,
    })
    .to_string())
}

fn report_json(r: &CheckReport) -> String {
    json!({
        "name": r.name,
        "pass": r.pass,
        "samples": r.samples,
        "worst": r.worst,
        "bound": r.bound,
        "tolerance": r.tolerance,
        "notes": r.notes,
    })
    .to_string()
}

/// Runs one check at `delta = 1/2` (`counterexample-delta0` uses `delta = 0`)
/// and returns its report as JSON.
pub fn run_check(name: &str, samples: usize, seed: u64) -> Result<String, String> {
    let s = sampler(seed)?;
    let half = DeltaParam::HALF;
    let cand = Candidate::new(half, ShiftConstant::DEFAULT);
    let report = match name {
        "spectrum-match" => verify::check_spectrum_match(half, samples, &s),
        "p0" => verify::check_p0(),
        "derivative-bound" => verify::check_derivative_bound(1e-4),
        "lemma33" => verify::check_lemma33(samples, &s),
        "lemma34" => verify::check_lemma34(samples, &s),
        "lemma35" => verify::check_lemma35(samples, &s),
        "prop21" => verify::check_prop21(half, samples, &s),
        "hyperbolicity" => verify::check_hyperbolicity(&cand, samples, &s),
        "weyl" => verify::check_weyl(samples, &s),
        "counterexample-delta0" => verify::counterexample_delta0(ShiftConstant::DEFAULT),
        other => return Err(format!("unknown check {other:?}")),
    };
    report.map(|r| report_json(&r)).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = spectrumCurves)]
pub fn spectrum_curves_js(steps: usize) -> Vec<f64> {
    spectrum_curves(steps)
}

#[wasm_bindgen(js_name = spectrumScatter)]
pub fn spectrum_scatter_js(samples: usize, seed: u64) -> Result<Vec<f64>, JsError> {
    spectrum_scatter(samples, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = ratioHistogram)]
pub fn ratio_histogram_js(statistic: &str, samples: usize, seed: u64, bins: usize) -> Result<String, JsError> {
    ratio_histogram(statistic, samples, seed, bins).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = runCheck)]
pub fn run_check_js(name: &str, samples: usize, seed: u64) -> Result<String, JsError> {
    run_check(name, samples, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = checkNames)]
pub fn check_names() -> Vec<String> {
    CHECKS.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curves_shape_and_ends() {
        let c = spectrum_curves(4);
        assert_eq!(c.len(), 5 * CURVE_COLUMNS);
        assert_eq!(c[0], -1.0);
        assert_eq!(c[4 * CURVE_COLUMNS], 1.0);
        for row in c.chunks(CURVE_COLUMNS) {
            assert!(row[1..6].windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn scatter_lies_on_curves() {
        let pts = spectrum_scatter(50, 3).unwrap();
        assert_eq!(pts.len(), 50 * SCATTER_COLUMNS);
        for row in pts.chunks(SCATTER_COLUMNS) {
            let closed = ordered_spectrum_half(OrbitParam::new(row[0]).unwrap());
            for (a, b) in row[1..].iter().zip(closed.values()) {
                assert!((a - b).abs() < 1e-7, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn histogram_counts_every_kept_sample() {
        let v: serde_json::Value = serde_json::from_str(&ratio_histogram("lemma33", 200, 1, 8).unwrap()).unwrap();
        let total: u64 = v["counts"].as_array().unwrap().iter().map(|c| c.as_u64().unwrap()).sum();
        assert_eq!(total + v["skipped"].as_u64().unwrap(), 200);
        assert!(ratio_histogram("nope", 10, 1, 8).is_err());
        assert!(ratio_histogram("lemma33", 10, 1, 0).is_err());
    }

    #[test]
    fn every_listed_check_runs() {
        for name in CHECKS {
            let v: serde_json::Value = serde_json::from_str(&run_check(name, 100, 0).unwrap()).unwrap();
            assert_eq!(v["name"].as_str().unwrap().split('(').next().unwrap(), name);
        }
        assert!(run_check("all", 10, 0).is_err());
    }

    #[test]
    fn counterexample_passes() {
        let v: serde_json::Value = serde_json::from_str(&run_check("counterexample-delta0", 1, 0).unwrap()).unwrap();
        assert_eq!(v["pass"], true);
    }
}
