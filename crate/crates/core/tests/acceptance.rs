//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use chv_core::cli::{main_with_args, CheckName};
use chv_core::forms::{Candidate, DeltaParam, ShiftConstant};
use chv_core::spectra::p0_general;
use chv_core::verify::{self, CheckReport, SearchConfig, Sampler};
use chv_core::Vec5;

const SEED: u64 = 0;
const R_MIN: f64 = 1e-3;

struct Outcome {
    id: &'static str,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn summary(r: &CheckReport) -> String {
    format!("{}: worst {:.6e} (bound {}, tol {:e})", r.name, r.worst, r.bound, r.tolerance)
}

fn sampler() -> Sampler {
    Sampler::new(SEED, R_MIN).unwrap()
}

fn spectrum_oracle() -> Outcome {
    let (r, t) = timed(|| verify::check_spectrum_match(DeltaParam::HALF, 10_000, &sampler()).unwrap());
    Outcome {
        id: "1",
        title: "spectrum oracle match, 1e4 unit points, < 1e-7, < 10 s",
        pass: r.pass && r.worst < 1e-7 && t < Duration::from_secs(10),
        detail: format!("{}; {:.2} s", summary(&r), t.as_secs_f64()),
    }
}

fn delta_zero() -> Outcome {
    let cand = Candidate::new(DeltaParam::ZERO, ShiftConstant::DEFAULT);
    let spec = cand.hess_w(&Vec5::unit(0)).unwrap().eigenvalues().unwrap();
    let expected = [2.0, 2.0, 2.0, -7.0, -7.0];
    let dev = spec
        .values()
        .iter()
        .zip(expected)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    let r = verify::counterexample_delta0(ShiftConstant::DEFAULT).unwrap();
    Outcome {
        id: "2",
        title: "delta=0 spectrum (2,2,2,-7,-7) and negative difference (-5.75 x3, -10.25 x2)",
        pass: dev < 1e-9 && r.pass && (r.worst + 5.75).abs() < 1e-9,
        detail: format!("spectrum deviation {dev:.3e}; {}", r.notes),
    }
}

fn crossing() -> Outcome {
    let root = verify::crossing_root();
    let exact = 5f64.powf(-0.25);
    let printed = 0.668_740_305_0;
    let formula = p0_general(DeltaParam::HALF);
    let r = verify::check_p0().unwrap();
    Outcome {
        id: "3",
        title: "p0 = 5^(-1/4) = 0.6687403050 within 1e-9; general formula agrees",
        pass: r.pass
            && (root - exact).abs() < 1e-9
            && (root - printed).abs() < 1e-9
            && (formula - exact).abs() < 1e-9,
        detail: format!("root {root:.15}, formula {formula:.15}"),
    }
}

fn derivatives() -> Outcome {
    let bound = verify::check_derivative_bound(1e-4).unwrap();
    let fd = verify::check_derivatives(1e-4).unwrap();
    Outcome {
        id: "4",
        title: "derivative bound 5.06 < max|d_i| < 10 (step 1e-4); d_i vs differences 1e-6",
        pass: bound.pass && bound.worst > 5.06 && bound.worst < 10.0 && fd.pass,
        detail: format!("{}; {}; {}", summary(&bound), summary(&fd), fd.notes),
    }
}

fn lipschitz() -> Vec<Outcome> {
    let s = sampler();
    let (r33, t33) = timed(|| verify::check_lemma33(100_000, &s).unwrap());
    let (r34, t34) = timed(|| verify::check_lemma34(100_000, &s).unwrap());
    let (r35, t35) = timed(|| verify::check_lemma35(100_000, &s).unwrap());
    let fast = t33 + t34 + t35 < Duration::from_secs(60);
    let secs = |t: Duration| t.as_secs_f64();
    vec![
        Outcome {
            id: "5a",
            title: "max | |Du(a)|^2 - |Du(b)|^2 | / K <= 16 over 1e5 samples",
            pass: r33.pass && fast,
            detail: format!("{}; {:.2} s", summary(&r33), secs(t33)),
        },
        Outcome {
            id: "5b",
            title: "min |M1| / K >= 1/8 over 1e5 samples",
            pass: r34.pass && fast,
            detail: format!("{}; {:.2} s", summary(&r34), secs(t34)),
        },
        Outcome {
            id: "5c",
            title: "max |M2| / K <= 10 over 1e5 samples",
            pass: r35.pass && fast,
            detail: format!("{}; {:.2} s; {}", summary(&r35), secs(t35), r35.notes),
        },
    ]
}

fn two_sided() -> Outcome {
    let r = verify::check_prop21(DeltaParam::HALF, 100_000, &sampler()).unwrap();
    Outcome {
        id: "6",
        title: "-Lambda1/Lambda5 of D^2w differences in [1/1000, 1000], lower bounds with C = 1000",
        pass: r.pass,
        detail: format!("{}; {}", summary(&r), r.notes),
    }
}

fn hyperbolicity() -> Outcome {
    let cand = Candidate::new(DeltaParam::HALF, ShiftConstant::DEFAULT);
    let s = sampler();
    let mc = verify::check_hyperbolicity(&cand, 100_000, &s).unwrap();
    let config = SearchConfig { iters: 200, restarts: 100, seeds: 100_000 };
    let search = verify::worst_ratio_search(&cand, &config, &s).unwrap();
    let bound = 240_026.0 / 4.0;
    Outcome {
        id: "7",
        title: "hyperbolicity ratio within [4/240026, 240026/4], 1e5 samples + 100-restart search",
        pass: mc.pass && search.pass && mc.worst <= bound && search.worst <= bound,
        detail: format!(
            "Monte-Carlo max {:.6}, searched max {:.6} ({} 6007); {}",
            mc.worst,
            search.worst,
            if search.worst <= 6007.0 { "below" } else { "above" },
            mc.notes
        ),
    }
}

fn identities() -> Outcome {
    let s = sampler();
    let mut reports = vec![
        verify::check_harmonicity(10_000, &s).unwrap(),
        verify::check_euler(DeltaParam::HALF, 10_000, &s).unwrap(),
        verify::check_eiconal(10_000, &s).unwrap(),
    ];
    for d in [0.0, 0.25, 0.5, 0.9] {
        reports.push(verify::check_trace_identity(DeltaParam::new(d).unwrap(), 10_000, &s).unwrap());
    }
    let eiconal = verify::eiconal_constant(&Vec5::unit(0));
    Outcome {
        id: "8",
        title: "harmonicity 1e-12, Euler 1e-10, eiconal constant 1e-10, trace identity rel 1e-9",
        pass: reports.iter().all(|r| r.pass),
        detail: format!(
            "eiconal constant {eiconal}; {}",
            reports.iter().map(summary).collect::<Vec<_>>().join("; ")
        ),
    }
}

fn arbitration() -> Outcome {
    let s = sampler();
    let r = verify::check_arbitration(10_000, &s).unwrap();
    let half = verify::check_spectrum_match(DeltaParam::HALF, 10_000, &s).unwrap();
    let general = verify::check_spectrum_general(DeltaParam::HALF, 10_000, &s).unwrap();
    Outcome {
        id: "9",
        title: "general-delta spectra disagree at delta=1/2 (>= 1 at p=1), delta=1/2 spectra agree",
        pass: r.pass && half.pass && !general.pass,
        detail: r.notes,
    }
}

fn weyl() -> Outcome {
    let r = verify::check_weyl(10_000, &sampler()).unwrap();
    Outcome {
        id: "10",
        title: "Weyl inequalities on 1e4 random symmetric pairs, slack >= -1e-10",
        pass: r.pass,
        detail: summary(&r),
    }
}

fn suite_output(threads: usize, dir: &std::path::Path) -> (i32, Vec<u8>) {
    let path = dir.join(format!("suite-{threads}.jsonl"));
    let args = [
        "chv".to_string(),
        "verify".into(),
        "all".into(),
        "--threads".into(),
        threads.to_string(),
        "--output".into(),
        path.to_str().unwrap().into(),
    ];
    let code = main_with_args(args);
    (code, std::fs::read(&path).unwrap_or_default())
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let (c1, a) = suite_output(1, dir.path());
    let (c4, b) = suite_output(4, dir.path());
    let lines = a.iter().filter(|&&c| c == b'\n').count();
    Outcome {
        id: "11",
        title: "full suite JSON byte-identical with 1 and 4 workers",
        pass: c1 != 2 && c1 == c4 && !a.is_empty() && a == b && lines == CheckName::suite().len(),
        detail: format!("{} bytes, {lines} records, exit codes {c1}/{c4}", a.len()),
    }
}

fn main() -> ExitCode {
    let mut outcomes = vec![spectrum_oracle(), delta_zero(), crossing(), derivatives()];
    outcomes.extend(lipschitz());
    outcomes.extend([two_sided(), hyperbolicity(), identities(), arbitration(), weyl(), determinism()]);

    for o in &outcomes {
        println!("{} [{}] {}", if o.pass { "PASS" } else { "FAIL" }, o.id, o.title);
        println!("      {}", o.detail);
    }
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    println!(
        "\n{} of {} criteria passed{}",
        outcomes.len() - failed.len(),
        outcomes.len(),
        if failed.is_empty() { String::new() } else { format!("; failed: {}", failed.join(", ")) }
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
