//! Command-line front end of the `chv` binary.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Number, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::forms::{Candidate, DeltaParam, ShiftConstant};
use crate::spectra::{grid, ordered_spectrum_half, OrbitParam};
use crate::verify::{self, CheckReport, PairStatistic, Sampler, SearchConfig, Witness};

/// Output encoding of reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Everything a run depends on.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub delta: f64,
    pub c: f64,
    pub samples: usize,
    pub seed: u64,
    pub r_min: f64,
    pub grid_step: f64,
    pub iters: usize,
    pub restarts: usize,
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            delta: 0.5,
            c: 240_000.0,
            samples: 100_000,
            seed: 0,
            r_min: 1e-3,
            grid_step: 1e-4,
            iters: 200,
            restarts: 100,
            threads: None,
            output: None,
            format: Format::Json,
        }
    }
}

impl RunConfig {
    pub fn delta_param(&self) -> Result<DeltaParam> {
        DeltaParam::new(self.delta)
    }

    pub fn candidate(&self) -> Result<Candidate> {
        Candidate::new(self.delta_param()?, ShiftConstant::new(self.c)?).with_r_min(self.r_min)
    }

    pub fn sampler(&self) -> Result<Sampler> {
        Sampler::new(self.seed, self.r_min)
    }

    pub fn search_config(&self) -> SearchConfig {
        SearchConfig {
            iters: self.iters,
            restarts: self.restarts,
            seeds: self.samples,
        }
    }

    /// Checks the parameter ranges shared by every command.
    pub fn validate(&self) -> Result<()> {
        self.delta_param()?;
        ShiftConstant::new(self.c)?;
        self.sampler()?;
        if !(self.grid_step > 0.0 && self.grid_step <= 1e-3) {
            return Err(Error::InvalidParameter(format!(
                "grid step must lie in (0, 1e-3], got {}",
                self.grid_step
            )));
        }
        if self.iters == 0 {
            return Err(Error::InvalidParameter("iters must be at least 1".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidParameter("threads must be at least 1".into()));
        }
        Ok(())
    }
}

/// Hex SHA-256 of the parameters that determine the reports (output
/// location, format and thread count excluded).
pub fn config_digest(config: &RunConfig) -> String {
    let canonical = format!(
        "delta={};c={};samples={};seed={};r_min={};grid_step={};iters={};restarts={}",
        num(config.delta),
        num(config.c),
        config.samples,
        config.seed,
        num(config.r_min),
        num(config.grid_step),
        config.iters,
        config.restarts
    );
    Sha256::digest(canonical.as_bytes())
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

/// A float with 17 significant digits; non-finite values are spelled
/// `inf`, `-inf` and `nan`.
pub fn num(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:.16e}")
    }
}

fn json_num(v: f64) -> Value {
    if v.is_finite() {
        Value::Number(Number::from_str(&num(v)).expect("formatted float is a JSON number"))
    } else {
        Value::String(num(v))
    }
}

/// Rewrites every non-integer number with 17 significant digits.
fn reformat_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) if !(n.is_u64() || n.is_i64()) => json_num(n.as_f64().unwrap_or(f64::NAN)),
        Value::Array(items) => Value::Array(items.into_iter().map(reformat_numbers).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, reformat_numbers(v))).collect()),
        other => other,
    }
}

/// The JSON record of a report, fields in their fixed order.
pub fn report_json(r: &CheckReport, config: &RunConfig) -> Value {
    let witness = serde_json::to_value(&r.witness).expect("witness serializes");
    let mut m = Map::new();
    m.insert("name".into(), Value::String(r.name.clone()));
    m.insert("pass".into(), Value::Bool(r.pass));
    m.insert("samples".into(), Value::from(r.samples as u64));
    m.insert("worst".into(), json_num(r.worst));
    m.insert("bound".into(), json_num(r.bound));
    m.insert("tolerance".into(), json_num(r.tolerance));
    m.insert("witness".into(), reformat_numbers(witness));
    m.insert("notes".into(), Value::String(r.notes.clone()));
    m.insert("seed".into(), Value::from(config.seed));
    m.insert("config_digest".into(), Value::String(config_digest(config)));
    Value::Object(m)
}

/// Serializes a report as one JSON line or one CSV row (without header).
pub fn emit_report(r: &CheckReport, config: &RunConfig, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(&report_json(r, config)).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                r.name.as_str(),
                if r.pass { "true" } else { "false" },
                &r.samples.to_string(),
                &num(r.worst),
                &num(r.bound),
            ])
            .expect("in-memory write");
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
    }
}

pub const CSV_HEADER: &str = "name,pass,samples,worst,bound";

/// A report read back from its JSON record.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedReport {
    pub name: String,
    pub pass: bool,
    pub samples: usize,
    pub worst: f64,
    pub bound: f64,
    pub tolerance: f64,
    pub witness: Witness,
    pub notes: String,
    pub seed: u64,
    pub config_digest: String,
}

fn parse_num(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| Error::InvalidParameter(format!("not a float: {n}"))),
        Value::String(s) => match s.as_str() {
            "inf" => Ok(f64::INFINITY),
            "-inf" => Ok(f64::NEG_INFINITY),
            "nan" => Ok(f64::NAN),
            _ => Err(Error::InvalidParameter(format!("not a float: {s}"))),
        },
        _ => Err(Error::InvalidParameter(format!("not a float: {v}"))),
    }
}

fn parse_witness(v: &Value) -> Result<Witness> {
    let bad = |m: &str| Error::InvalidParameter(format!("malformed witness: {m}"));
    let get = |k: &str| v.get(k).ok_or_else(|| bad(k));
    let floats = |x: &Value| -> Result<Vec<f64>> {
        x.as_array().ok_or_else(|| bad("expected an array"))?.iter().map(parse_num).collect()
    };
    let fixed = |k: &str| -> Result<[f64; 5]> {
        floats(get(k)?)?.try_into().map_err(|_| bad(k))
    };
    let packed = |k: &str| -> Result<[f64; 15]> {
        floats(get(k)?)?.try_into().map_err(|_| bad(k))
    };
    let index = || -> Result<Option<u64>> {
        match get("index")? {
            Value::Null => Ok(None),
            x => x.as_u64().map(Some).ok_or_else(|| bad("index")),
        }
    };
    match get("kind")?.as_str().ok_or_else(|| bad("kind"))? {
        "none" => Ok(Witness::None),
        "param" => Ok(Witness::Param { p: parse_num(get("p")?)? }),
        "point" => Ok(Witness::Point { index: index()?, x: fixed("x")? }),
        "pair" => {
            let rows = get("o")?.as_array().ok_or_else(|| bad("o"))?;
            let o: Vec<[f64; 5]> = rows
                .iter()
                .map(|r| floats(r)?.try_into().map_err(|_| bad("o")))
                .collect::<Result<_>>()?;
            Ok(Witness::Pair {
                index: index()?,
                a: fixed("a")?,
                b: fixed("b")?,
                o: o.try_into().map_err(|_| bad("o"))?,
            })
        }
        "matrices" => Ok(Witness::Matrices { index: index()?, a: packed("a")?, b: packed("b")? }),
        other => Err(bad(other)),
    }
}

/// Parses one JSON record written by [`emit_report`].
pub fn parse_report(line: &str) -> Result<ParsedReport> {
    let bad = |e: serde_json::Error| Error::InvalidParameter(e.to_string());
    let v: Value = serde_json::from_str(line).map_err(bad)?;
    let field = |k: &str| {
        v.get(k)
            .ok_or_else(|| Error::InvalidParameter(format!("missing field {k}")))
    };
    let text = |k: &str| -> Result<String> {
        field(k)?
            .as_str()
            .map(str::to_owned)
            .ok_or_else(|| Error::InvalidParameter(format!("{k} is not a string")))
    };
    let uint = |k: &str| -> Result<u64> {
        field(k)?
            .as_u64()
            .ok_or_else(|| Error::InvalidParameter(format!("{k} is not an integer")))
    };
    Ok(ParsedReport {
        name: text("name")?,
        pass: field("pass")?
            .as_bool()
            .ok_or_else(|| Error::InvalidParameter("pass is not a bool".into()))?,
        samples: uint("samples")? as usize,
        worst: parse_num(field("worst")?)?,
        bound: parse_num(field("bound")?)?,
        tolerance: parse_num(field("tolerance")?)?,
        witness: parse_witness(field("witness")?)?,
        notes: text("notes")?,
        seed: uint("seed")?,
        config_digest: text("config_digest")?,
    })
}

/// Named checks of `verify`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckName {
    SpectrumMatch,
    SpectrumGeneral,
    Arbitration,
    TraceIdentity,
    Eiconal,
    Harmonicity,
    Homogeneity,
    Euler,
    AdClosedForm,
    AdFd,
    SphereBound,
    OrderingTable,
    P0,
    Derivatives,
    DerivativeBound,
    Oddness,
    Discriminant,
    Lemma33,
    Lemma34,
    Lemma35,
    Prop21,
    Weyl,
    Hyperbolicity,
    Search,
    CounterexampleDelta0,
}

impl CheckName {
    pub const ALL: [CheckName; 25] = [
        CheckName::SpectrumMatch,
        CheckName::SpectrumGeneral,
        CheckName::Arbitration,
        CheckName::TraceIdentity,
        CheckName::Eiconal,
        CheckName::Harmonicity,
        CheckName::Homogeneity,
        CheckName::Euler,
        CheckName::AdClosedForm,
        CheckName::AdFd,
        CheckName::SphereBound,
        CheckName::OrderingTable,
        CheckName::P0,
        CheckName::Derivatives,
        CheckName::DerivativeBound,
        CheckName::Oddness,
        CheckName::Discriminant,
        CheckName::Lemma33,
        CheckName::Lemma34,
        CheckName::Lemma35,
        CheckName::Prop21,
        CheckName::Weyl,
        CheckName::Hyperbolicity,
        CheckName::Search,
        CheckName::CounterexampleDelta0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckName::SpectrumMatch => "spectrum-match",
            CheckName::SpectrumGeneral => "spectrum-general",
            CheckName::Arbitration => "arbitration",
            CheckName::TraceIdentity => "trace-identity",
            CheckName::Eiconal => "eiconal",
            CheckName::Harmonicity => "harmonicity",
            CheckName::Homogeneity => "homogeneity",
            CheckName::Euler => "euler",
            CheckName::AdClosedForm => "ad-closed-form",
            CheckName::AdFd => "ad-fd",
            CheckName::SphereBound => "sphere-bound",
            CheckName::OrderingTable => "ordering-table",
            CheckName::P0 => "p0",
            CheckName::Derivatives => "derivatives",
            CheckName::DerivativeBound => "derivative-bound",
            CheckName::Oddness => "oddness",
            CheckName::Discriminant => "discriminant",
            CheckName::Lemma33 => "lemma33",
            CheckName::Lemma34 => "lemma34",
            CheckName::Lemma35 => "lemma35",
            CheckName::Prop21 => "prop21",
            CheckName::Weyl => "weyl",
            CheckName::Hyperbolicity => "hyperbolicity",
            CheckName::Search => "search",
            CheckName::CounterexampleDelta0 => "counterexample-delta0",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    /// Checks stated at `delta = 1/2` only.
    pub fn half_only(self) -> bool {
        matches!(
            self,
            CheckName::SpectrumMatch
                | CheckName::Arbitration
                | CheckName::OrderingTable
                | CheckName::P0
                | CheckName::Derivatives
                | CheckName::DerivativeBound
                | CheckName::Oddness
                | CheckName::Lemma33
                | CheckName::Lemma34
                | CheckName::Lemma35
        )
    }

    /// The checks of `verify all`. The printed general-delta spectrum is
    /// covered by `arbitration`.
    pub fn suite() -> Vec<CheckName> {
        Self::ALL
            .into_iter()
            .filter(|c| *c != CheckName::SpectrumGeneral)
            .collect()
    }
}

/// Runs one check. Checks stated at `delta = 1/2` ignore `config.delta`.
pub fn run_check(check: CheckName, config: &RunConfig) -> Result<CheckReport> {
    let n = config.samples;
    let s = config.sampler()?;
    let delta = config.delta_param()?;
    let step = config.grid_step;
    match check {
        CheckName::SpectrumMatch => verify::check_spectrum_match(DeltaParam::HALF, n, &s),
        CheckName::SpectrumGeneral => verify::check_spectrum_general(delta, n, &s),
        CheckName::Arbitration => verify::check_arbitration(n, &s),
        CheckName::TraceIdentity => verify::check_trace_identity(delta, n, &s),
        CheckName::Eiconal => verify::check_eiconal(n, &s),
        CheckName::Harmonicity => verify::check_harmonicity(n, &s),
        CheckName::Homogeneity => verify::check_homogeneity(delta, n, &s),
        CheckName::Euler => verify::check_euler(delta, n, &s),
        CheckName::AdClosedForm => verify::check_ad_closed_form(delta, n, &s),
        CheckName::AdFd => verify::check_ad_fd(delta, n, &s),
        CheckName::SphereBound => verify::check_sphere_bound(n, &s),
        CheckName::OrderingTable => verify::check_ordering_table(step),
        CheckName::P0 => verify::check_p0(),
        CheckName::Derivatives => verify::check_derivatives(step),
        CheckName::DerivativeBound => verify::check_derivative_bound(step),
        CheckName::Oddness => verify::check_oddness(step),
        CheckName::Discriminant => verify::check_discriminant(step),
        CheckName::Lemma33 => verify::check_lemma33(n, &s),
        CheckName::Lemma34 => verify::check_lemma34(n, &s),
        CheckName::Lemma35 => verify::check_lemma35(n, &s),
        CheckName::Prop21 => verify::check_prop21(delta, n, &s),
        CheckName::Weyl => verify::check_weyl(n, &s),
        CheckName::Hyperbolicity => verify::check_hyperbolicity(&config.candidate()?, n, &s),
        CheckName::Search => {
            verify::worst_ratio_search(&config.candidate()?, &config.search_config(), &s)
        }
        CheckName::CounterexampleDelta0 => {
            verify::counterexample_delta0(ShiftConstant::new(config.c)?)
        }
    }
}

/// What `dump` writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DumpKind {
    Pairs(PairStatistic),
    /// Ordered `delta = 1/2` spectrum on the `p` grid.
    Spectra,
}

impl FromStr for DumpKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "spectra" {
            return Ok(DumpKind::Spectra);
        }
        PairStatistic::from_name(s).map(DumpKind::Pairs).ok_or_else(|| {
            format!("unknown dump '{s}'; expected spectra, lemma33, lemma34, lemma35, prop21 or hyperbolicity")
        })
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// Writes per-sample statistics as CSV: `index,p,q,s,t,statistic` for pair
/// statistics (empty statistic for skipped samples) and
/// `index,p,lambda1,...,lambda5` for spectra.
pub fn dump_samples<W: Write>(kind: DumpKind, config: &RunConfig, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    match kind {
        DumpKind::Spectra => {
            w.write_record(["index", "p", "lambda1", "lambda2", "lambda3", "lambda4", "lambda5"])
                .map_err(csv_err)?;
            if config.samples > 0 {
                for (i, p) in grid(config.grid_step).enumerate() {
                    let spec = ordered_spectrum_half(OrbitParam::clamped(p));
                    let mut row = vec![i.to_string(), num(p)];
                    row.extend(spec.values().iter().map(|v| num(*v)));
                    w.write_record(&row).map_err(csv_err)?;
                }
            }
        }
        DumpKind::Pairs(stat) => {
            w.write_record(["index", "p", "q", "s", "t", "statistic"])
                .map_err(csv_err)?;
            let delta = match stat {
                PairStatistic::Lemma33 | PairStatistic::Lemma34 | PairStatistic::Lemma35 => {
                    DeltaParam::HALF
                }
                _ => config.delta_param()?,
            };
            let cand = Candidate::new(delta, ShiftConstant::new(config.c)?).with_r_min(config.r_min)?;
            let sampler = config.sampler()?;
            let rows = verify::map_indexed(config.samples, |i| {
                verify::pair_statistic(stat, &cand, &sampler.pair(i))
            });
            for (i, row) in rows.into_iter().enumerate() {
                let (g, value) = row?;
                w.write_record([
                    i.to_string(),
                    num(g.p),
                    num(g.q),
                    num(g.s),
                    num(g.t),
                    value.map(num).unwrap_or_default(),
                ])
                .map_err(csv_err)?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Parser)]
#[command(name = "chv", version, about = "Checks the Cartan-cubic singular solution candidate")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Run one named check, or `all`.
    Verify { check: String },
    /// The delta = 0 construction that fails hyperbolicity.
    #[command(name = "counterexample-delta0")]
    CounterexampleDelta0,
    /// Worst-case search of the hyperbolicity ratio.
    Search,
    /// Per-sample statistics, always as CSV: spectra, lemma33, lemma34,
    /// lemma35, prop21 or hyperbolicity.
    Dump { what: DumpKind },
}

#[derive(Debug, Args)]
struct Opts {
    #[arg(long, global = true, default_value_t = 0.5)]
    delta: f64,
    #[arg(long, global = true, default_value_t = 240_000.0)]
    c: f64,
    #[arg(long, global = true, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, global = true, env = "CHV_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1e-3)]
    r_min: f64,
    #[arg(long, global = true, default_value_t = 1e-4)]
    grid_step: f64,
    /// Maximum coordinate sweeps per search restart.
    #[arg(long, global = true, default_value_t = 200)]
    iters: usize,
    /// Number of search restarts.
    #[arg(long, global = true, default_value_t = 100)]
    restarts: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output file (default: standard output).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

impl From<Opts> for RunConfig {
    fn from(o: Opts) -> Self {
        RunConfig {
            delta: o.delta,
            c: o.c,
            samples: o.samples,
            seed: o.seed,
            r_min: o.r_min,
            grid_step: o.grid_step,
            iters: o.iters,
            restarts: o.restarts,
            threads: o.threads,
            output: o.output,
            format: o.format,
        }
    }
}

/// A parsed command line.
#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Verify(Vec<CheckName>),
    Dump(DumpKind),
}

fn resolve(cmd: Cmd, config: &RunConfig) -> Result<Command> {
    let usage = |m: String| Err(Error::InvalidParameter(m));
    match cmd {
        Cmd::Verify { check } if check == "all" => {
            if config.delta == 0.0 {
                return usage("the suite includes hyperbolicity checks, which fail at delta = 0".into());
            }
            Ok(Command::Verify(CheckName::suite()))
        }
        Cmd::Verify { check } => {
            let Some(name) = CheckName::from_name(&check) else {
                let known: Vec<_> = CheckName::ALL.iter().map(|c| c.name()).collect();
                return usage(format!("unknown check '{check}'; expected all or one of {}", known.join(", ")));
            };
            if name.half_only() && config.delta != 0.5 {
                return usage(format!("{check} is stated for delta = 0.5 only, got {}", config.delta));
            }
            Ok(Command::Verify(vec![name]))
        }
        Cmd::CounterexampleDelta0 => Ok(Command::Verify(vec![CheckName::CounterexampleDelta0])),
        Cmd::Search => Ok(Command::Verify(vec![CheckName::Search])),
        Cmd::Dump { what } => Ok(Command::Dump(what)),
    }
}

fn open_output(config: &RunConfig) -> Result<Box<dyn Write>> {
    Ok(match &config.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Executes a resolved command; `Ok(true)` iff every check passed.
pub fn execute(command: &Command, config: &RunConfig) -> Result<bool> {
    config.validate()?;
    if let Command::Verify(checks) = command {
        if config.samples == 0 && checks.iter().any(|c| !matches!(c, CheckName::CounterexampleDelta0)) {
            return Err(Error::InsufficientSamples);
        }
    }
    let mut out = open_output(config)?;
    match command {
        Command::Dump(kind) => {
            dump_samples(*kind, config, &mut out)?;
            Ok(true)
        }
        Command::Verify(checks) => {
            if config.format == Format::Csv {
                writeln!(out, "{CSV_HEADER}")?;
            }
            let mut all_pass = true;
            for &check in checks {
                let report = run_check(check, config)?;
                all_pass &= report.pass;
                out.write_all(emit_report(&report, config, config.format).as_bytes())?;
                out.flush()?;
            }
            Ok(all_pass)
        }
    }
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    #[cfg(feature = "parallel")]
    if let Some(n) = threads {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        return Ok(pool.install(f));
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(f())
}

/// Parses `args` (program name first) and runs; returns the exit code:
/// 0 when every check passed, 1 when one failed, 2 on usage or
/// configuration errors.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let config = RunConfig::from(cli.opts);
    let result = resolve(cli.command, &config).and_then(|command| {
        with_threads(config.threads, || execute(&command, &config))?
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("chv: {e}");
            2
        }
    }
}
