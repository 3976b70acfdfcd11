//! One checker per claim. Checkers sample, sweep grids or search, and
//! summarize the outcome in a [`CheckReport`].
//!
//! A passing report means no violation was found among the evaluated
//! samples; it is not a proof.

mod identities;
mod pairs;
mod search;
mod spectral;

pub use identities::{
    check_ad_closed_form, check_ad_fd, check_eiconal, check_euler, check_harmonicity,
    check_homogeneity, check_sphere_bound, check_trace_identity, eiconal_constant,
};
pub use pairs::{
    check_hyperbolicity, check_lemma33, check_lemma34, check_lemma35, check_prop21, check_weyl,
    counterexample_delta0, diff_matrices, hyperbolicity_bound, hyperbolicity_ratio, lemma33_ratio, lemma34_ratio,
    lemma35_ratio, pair_statistic, prop21_constant_formula, spectrum_ratio, DiffMatrices, PairGeometry,
    PairStatistic, HYPERBOLICITY_NORM_FLOOR, PROP21_NORM_FLOOR,
};
pub use search::{worst_ratio_search, SearchConfig};
pub use spectral::{
    check_arbitration, check_derivative_bound, check_derivatives, check_discriminant,
    check_oddness, check_ordering_table, check_p0, check_spectrum_general, check_spectrum_match,
    crossing_root, spectrum_deviation, SpectrumVariant,
};

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{SymMat5, Vec5};
use crate::numerics::{haar_so5_from, OrthoMat5, RngState, SampleRng};

/// Direction of the inequality a report's `worst` is held to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `worst <= bound + tolerance`
    AtMost,
    /// `worst >= bound - tolerance`
    AtLeast,
}

/// A configuration that attains a report's `worst` value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    None,
    Param {
        p: f64,
    },
    Point {
        index: Option<u64>,
        x: [f64; 5],
    },
    Pair {
        index: Option<u64>,
        a: [f64; 5],
        b: [f64; 5],
        o: [[f64; 5]; 5],
    },
    /// Two symmetric matrices in packed upper-triangular order.
    Matrices {
        index: Option<u64>,
        a: [f64; 15],
        b: [f64; 15],
    },
}

impl Witness {
    pub fn pair(index: Option<u64>, sample: &PairSample) -> Self {
        Witness::Pair {
            index,
            a: sample.a.0,
            b: sample.b.0,
            o: *sample.o.as_array(),
        }
    }

    pub fn point(index: Option<u64>, x: &Vec5) -> Self {
        Witness::Point { index, x: x.0 }
    }
}

/// Outcome of one checker.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    /// Number of samples or grid points evaluated (skipped ones included).
    pub samples: usize,
    pub worst: f64,
    pub bound: f64,
    pub relation: Relation,
    pub tolerance: f64,
    pub witness: Witness,
    pub notes: String,
}

impl CheckReport {
    pub fn evaluate(
        name: &str,
        relation: Relation,
        bound: f64,
        tolerance: f64,
        samples: usize,
        worst: f64,
        witness: Witness,
        notes: String,
    ) -> Self {
        let pass = match relation {
            Relation::AtMost => worst <= bound + tolerance,
            Relation::AtLeast => worst >= bound - tolerance,
        };
        CheckReport {
            name: name.to_string(),
            pass,
            samples,
            worst,
            bound,
            relation,
            tolerance,
            witness,
            notes,
        }
    }

    /// `worst <= tolerance` for a deviation that should vanish.
    pub fn deviation(
        name: &str,
        tolerance: f64,
        samples: usize,
        worst: f64,
        witness: Witness,
        notes: String,
    ) -> Self {
        Self::evaluate(name, Relation::AtMost, 0.0, tolerance, samples, worst, witness, notes)
    }

    /// Marks the report failed with an explanation appended to the notes,
    /// for secondary conditions that are not captured by `worst`.
    pub(crate) fn fail_with(mut self, why: &str) -> Self {
        self.pass = false;
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(why);
        self
    }
}

/// Two points of the punctured ball and a rotation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairSample {
    pub a: Vec5,
    pub b: Vec5,
    pub o: OrthoMat5,
}

impl PairSample {
    pub fn s(&self) -> f64 {
        self.a.norm()
    }

    pub fn t(&self) -> f64 {
        self.b.norm()
    }
}

pub(crate) fn gaussian_vec<R: Rng + ?Sized>(rng: &mut R) -> Vec5 {
    Vec5(std::array::from_fn(|_| rng.sample(StandardNormal)))
}

pub(crate) fn unit_vec<R: Rng + ?Sized>(rng: &mut R) -> Vec5 {
    loop {
        let g = gaussian_vec(rng);
        let n = g.norm();
        if n > 1e-300 {
            return g.scale(1.0 / n);
        }
    }
}

/// Uniform point of the shell `r_min <= |x| <= 1` (radius by inverting the
/// volume CDF `r^5`).
pub(crate) fn shell_point<R: Rng + ?Sized>(rng: &mut R, r_min: f64) -> Vec5 {
    let dir = unit_vec(rng);
    let lo = r_min.powi(5);
    let u: f64 = rng.random();
    let r = (lo + u * (1.0 - lo)).powf(0.2);
    dir.scale(r.clamp(r_min, 1.0))
}

pub fn sample_pair(rng: RngState, r_min: f64) -> PairSample {
    let mut g = rng.generator();
    let a = shell_point(&mut g, r_min);
    let b = shell_point(&mut g, r_min);
    let o = haar_so5_from(&mut g);
    PairSample { a, b, o }
}

const PAIR_TAG: u64 = 0x7061_6972;
const UNIT_TAG: u64 = 0x756e_6974;
const BALL_TAG: u64 = 0x6261_6c6c;
const MATRIX_TAG: u64 = 0x6d61_7472;

/// Keyed source of samples: sample `i` of each kind depends only on
/// `(seed, i)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sampler {
    seed: u64,
    r_min: f64,
}

impl Sampler {
    pub fn new(seed: u64, r_min: f64) -> Result<Self> {
        if !(r_min > 0.0 && r_min < 0.5) {
            return Err(Error::InvalidParameter(format!(
                "r_min must lie in (0, 0.5), got {r_min}"
            )));
        }
        Ok(Sampler { seed, r_min })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    fn state(&self, tag: u64, index: u64) -> RngState {
        RngState::new(self.seed, index).derive(tag)
    }

    pub fn pair(&self, index: u64) -> PairSample {
        sample_pair(self.state(PAIR_TAG, index), self.r_min)
    }

    pub fn unit_point(&self, index: u64) -> Vec5 {
        unit_vec(&mut self.state(UNIT_TAG, index).generator())
    }

    pub fn shell_point(&self, index: u64) -> Vec5 {
        shell_point(&mut self.state(BALL_TAG, index).generator(), self.r_min)
    }

    /// Symmetric matrix with independent standard Gaussian upper entries.
    pub fn symmetric_pair(&self, index: u64) -> (SymMat5, SymMat5) {
        let mut g: SampleRng = self.state(MATRIX_TAG, index).generator();
        let a = SymMat5::from_packed(std::array::from_fn(|_| g.sample(StandardNormal)));
        let b = SymMat5::from_packed(std::array::from_fn(|_| g.sample(StandardNormal)));
        (a, b)
    }
}

/// Evaluates `f` on `0..n`, in parallel when the `parallel` feature is on.
/// The output is in index order either way.
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n as u64).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n as u64).map(f).collect()
    }
}

/// Running extremum that keeps the first index attaining it, so the
/// reduction does not depend on evaluation order.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Extremum {
    pub value: f64,
    pub index: Option<u64>,
    maximize: bool,
}

impl Extremum {
    pub fn max() -> Self {
        Extremum {
            value: f64::NEG_INFINITY,
            index: None,
            maximize: true,
        }
    }

    pub fn min() -> Self {
        Extremum {
            value: f64::INFINITY,
            index: None,
            maximize: false,
        }
    }

    /// NaN dominates so that a broken evaluation surfaces as the witness.
    pub fn offer(&mut self, index: u64, value: f64) {
        let better = match self.index {
            None => true,
            Some(_) if self.value.is_nan() => false,
            Some(_) if value.is_nan() => true,
            Some(_) if self.maximize => value > self.value,
            Some(_) => value < self.value,
        };
        if better {
            self.value = value;
            self.index = Some(index);
        }
    }

    /// Value, or `fallback` when nothing was offered.
    pub fn value_or(&self, fallback: f64) -> f64 {
        if self.index.is_some() {
            self.value
        } else {
            fallback
        }
    }
}

pub(crate) fn require_samples(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InsufficientSamples)
    } else {
        Ok(())
    }
}

pub(crate) fn require_half(delta: crate::forms::DeltaParam, check: &str) -> Result<()> {
    if delta.is_half() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{check} is stated for delta = 1/2 only, got {}",
            delta.value()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_samples_are_reproducible_and_valid() {
        let s = Sampler::new(7, 1e-3).unwrap();
        for i in 0..500 {
            let p = s.pair(i);
            assert_eq!(p, s.pair(i));
            assert!(p.s() >= 1e-3 && p.s() <= 1.0);
            assert!(p.t() >= 1e-3 && p.t() <= 1.0);
            assert!(p.o.orthogonality_defect() < 1e-12);
            assert!((p.o.det() - 1.0).abs() < 1e-12);
        }
        assert_ne!(s.pair(0), s.pair(1));
    }

    #[test]
    fn radius_distribution_follows_volume() {
        let r_min = 1e-3;
        let s = Sampler::new(0, r_min).unwrap();
        let n = 100_000;
        let inside = map_indexed(n, |i| (s.pair(i).s() <= 0.5) as u32)
            .into_iter()
            .sum::<u32>() as f64
            / n as f64;
        let expected = (0.5f64.powi(5) - r_min.powi(5)) / (1.0 - r_min.powi(5));
        let sigma = (expected * (1.0 - expected) / n as f64).sqrt();
        assert!((inside - expected).abs() < 3.0 * sigma, "{inside} vs {expected}");
    }

    #[test]
    fn bad_r_min_rejected() {
        assert!(Sampler::new(0, 0.0).is_err());
        assert!(Sampler::new(0, 0.5).is_err());
    }

    #[test]
    fn extremum_keeps_first_index() {
        let mut e = Extremum::max();
        e.offer(3, 1.0);
        e.offer(1, 2.0);
        e.offer(2, 2.0);
        assert_eq!(e.index, Some(1));
        let mut e = Extremum::min();
        assert_eq!(e.value_or(9.0), 9.0);
        e.offer(0, 5.0);
        e.offer(1, f64::NAN);
        assert!(e.value.is_nan());
    }

    #[test]
    fn report_pass_follows_relation() {
        let r = CheckReport::evaluate("x", Relation::AtMost, 16.0, 0.0, 1, 16.0, Witness::None, String::new());
        assert!(r.pass);
        let r = CheckReport::evaluate("x", Relation::AtLeast, 0.125, 0.0, 1, 0.12, Witness::None, String::new());
        assert!(!r.pass);
        let r = CheckReport::deviation("x", 1e-7, 1, f64::NAN, Witness::None, String::new());
        assert!(!r.pass);
    }
}
