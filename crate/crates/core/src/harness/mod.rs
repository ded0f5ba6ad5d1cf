//! Named, seeded verification suites.
//!
//! A suite expands into a fixed list of jobs, runs them (in parallel when
//! asked) and reassembles the cases in job order, so the transcript is
//! identical for every schedule and thread count.

mod random;
mod suites;

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::estimator::{bounds, NuSequence};
use crate::frobenius::NuValue;
use crate::{par, ExecMode, Rational};

pub use random::{
    case_seeds, monomial_pair, random_ideal, random_monomial_ideal, random_multiplier, random_pair,
    random_primary_ideal, rng_from_seed, standard_vars, Profile, RandomIdeal, MAX_DEGREE, MAX_DIM,
    MAX_GENERATORS,
};

pub const DEFAULT_SEED: u64 = 1;
/// Layout version of transcripts and of the golden directory.
pub const TRANSCRIPT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteName {
    Duval,
    Bounds,
    HypersurfaceAb,
    MonomialLaws,
    Multiplicity,
    Summation,
    ThresholdEdge,
}

impl SuiteName {
    pub const ALL: [SuiteName; 7] = [
        SuiteName::Duval,
        SuiteName::Bounds,
        SuiteName::HypersurfaceAb,
        SuiteName::MonomialLaws,
        SuiteName::Multiplicity,
        SuiteName::Summation,
        SuiteName::ThresholdEdge,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Duval => "duval",
            SuiteName::Bounds => "bounds",
            SuiteName::HypersurfaceAb => "hypersurface-ab",
            SuiteName::MonomialLaws => "monomial-laws",
            SuiteName::Multiplicity => "multiplicity",
            SuiteName::Summation => "summation",
            SuiteName::ThresholdEdge => "threshold-edge",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("level budget must be at least 1")]
    ZeroLevels,
}

impl FromStr for SuiteName {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| SuiteError::UnknownSuite(s.to_string()))
    }
}

/// What to run. `primes` restricts a suite's prime grid and `e_budget` caps
/// its levels; `None` keeps the suite's own defaults.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteSpec {
    pub name: SuiteName,
    pub primes: Option<Vec<u64>>,
    pub e_budget: Option<u32>,
    pub seed: u64,
}

impl SuiteSpec {
    pub fn new(name: SuiteName) -> Self {
        SuiteSpec {
            name,
            primes: None,
            e_budget: None,
            seed: DEFAULT_SEED,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn validate(&self) -> Result<(), SuiteError> {
        if let Some(ps) = &self.primes {
            if let Some(&bad) = ps.iter().find(|&&p| !crate::ffpoly::is_prime(p)) {
                return Err(SuiteError::NotPrime(bad));
            }
        }
        if self.e_budget == Some(0) {
            return Err(SuiteError::ZeroLevels);
        }
        Ok(())
    }

    /// `grid` filtered by the requested primes.
    pub(crate) fn primes_from(&self, grid: &[u64]) -> Vec<u64> {
        match &self.primes {
            Some(ps) => grid.iter().copied().filter(|p| ps.contains(p)).collect(),
            None => grid.to_vec(),
        }
    }

    pub(crate) fn levels(&self, default: u32) -> u32 {
        self.e_budget.map_or(default, |b| b.min(default))
    }
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Stated in the published source: a table value, formula or proposition.
    Published,
    /// Follows from a one-line argument.
    Elementary,
    /// Produced by an independent computation (brute-force oracle or LP).
    Computed,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Published => "published",
            Provenance::Elementary => "elementary",
            Provenance::Computed => "computed",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseRecord {
    pub id: String,
    pub inputs: String,
    pub expected: String,
    pub computed: String,
    pub tag: Provenance,
    pub pass: bool,
    pub resource_limited: bool,
    /// Wall time of the job that produced this case; not part of the transcript.
    pub runtime: Duration,
}

impl CaseRecord {
    pub(crate) fn check<T: PartialEq + fmt::Display>(
        id: impl Into<String>,
        inputs: impl Into<String>,
        expected: T,
        computed: T,
        tag: Provenance,
    ) -> Self {
        let pass = expected == computed;
        Self::new(id, inputs, expected, computed, tag, pass)
    }

    pub(crate) fn new(
        id: impl Into<String>,
        inputs: impl Into<String>,
        expected: impl fmt::Display,
        computed: impl fmt::Display,
        tag: Provenance,
        pass: bool,
    ) -> Self {
        CaseRecord {
            id: id.into(),
            inputs: inputs.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            tag,
            pass,
            resource_limited: false,
            runtime: Duration::ZERO,
        }
    }

    pub(crate) fn limited(id: impl Into<String>, inputs: impl Into<String>, err: impl fmt::Display) -> Self {
        CaseRecord {
            resource_limited: true,
            ..Self::new(id, inputs, "a value", format!("resource-limit: {err}"), Provenance::Computed, false)
        }
    }
}

/// A ν-sequence computed by a suite, with the exact LP threshold when the
/// pair came from a monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComputedSequence {
    pub seq: NuSequence,
    pub monomial_fpt: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub spec: SuiteSpec,
    pub cases: Vec<CaseRecord>,
    pub sequences: Vec<ComputedSequence>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.pass).count()
    }

    pub fn resource_limited(&self) -> usize {
        self.cases.iter().filter(|c| c.resource_limited).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseRecord> {
        self.cases.iter().filter(|c| !c.pass)
    }

    /// Tab-separated, one case per line, no timings.
    pub fn transcript(&self) -> String {
        let mut out = format!(
            "# fptkit transcript v{TRANSCRIPT_VERSION} suite={} seed={} primes={} e={}\n",
            self.spec.name,
            self.spec.seed,
            self.spec
                .primes
                .as_ref()
                .map_or("default".to_string(), |ps| ps.iter().map(u64::to_string).collect::<Vec<_>>().join(",")),
            self.spec.e_budget.map_or("default".to_string(), |e| e.to_string()),
        );
        out.push_str("suite\tcase\tinputs\texpected\tcomputed\ttag\tpass\n");
        for c in &self.cases {
            let fields = [
                self.spec.name.as_str(),
                &c.id,
                &c.inputs,
                &c.expected,
                &c.computed,
                c.tag.as_str(),
                if c.pass { "pass" } else { "FAIL" },
            ];
            let line: Vec<String> = fields.iter().map(|f| clean(f)).collect();
            out.push_str(&line.join("\t"));
            out.push('\n');
        }
        out
    }
}

fn clean(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}

/// Output of one job: its cases in order plus any ν-sequences it computed.
#[derive(Default)]
pub(crate) struct JobOutput {
    pub cases: Vec<CaseRecord>,
    pub sequences: Vec<ComputedSequence>,
}

impl JobOutput {
    pub fn push(&mut self, c: CaseRecord) {
        self.cases.push(c);
    }
}

pub(crate) type Job = Box<dyn Fn(ExecMode) -> JobOutput + Send + Sync>;

pub fn run_suite(spec: &SuiteSpec) -> Result<SuiteReport, SuiteError> {
    run_suite_with(spec, ExecMode::default())
}

pub fn run_suite_with(spec: &SuiteSpec, mode: ExecMode) -> Result<SuiteReport, SuiteError> {
    spec.validate()?;
    let jobs = suites::jobs(spec);
    let outputs = par::map(mode, jobs, |job| {
        let start = Instant::now();
        let mut out = job(mode);
        let elapsed = start.elapsed();
        for c in &mut out.cases {
            c.runtime = elapsed;
        }
        out
    });
    let mut report = SuiteReport {
        spec: spec.clone(),
        cases: Vec::new(),
        sequences: Vec::new(),
    };
    for out in outputs {
        report.cases.extend(out.cases);
        report.sequences.extend(out.sequences);
    }
    Ok(report)
}

/// Reasons a ν-sequence violates the interval laws:
/// `L <= U`, per-level lower bounds non-decreasing without a hypersurface,
/// per-level upper bounds non-increasing, the upper-bound envelope, and
/// `fpt_lp ∈ [L, U]` for monomial ideals.
pub fn interval_violations(seq: &NuSequence, monomial_fpt: Option<&Rational>) -> Vec<&'static str> {
    let mut bad = Vec::new();
    let Ok(iv) = bounds(seq) else {
        return bad;
    };
    if iv.lower > iv.upper {
        bad.push("L > U");
    }
    let mu = seq.pair().num_gens() as u64;
    let finite: Vec<(u64, u32)> = seq
        .records()
        .iter()
        .filter_map(|r| match r.nu {
            NuValue::Finite(n) => Some((n, r.level.q())),
            NuValue::NotFPure => None,
        })
        .collect();
    let lows: Vec<Rational> = finite.iter().map(|&(n, q)| frac(n, q)).collect();
    let highs: Vec<Rational> = finite.iter().map(|&(n, q)| frac(n + 1 + mu, q)).collect();
    if seq.pair().multiplier().is_none() && lows.windows(2).any(|w| w[0] > w[1]) {
        bad.push("lower bound decreased");
    }
    if highs.windows(2).any(|w| w[0] < w[1]) {
        bad.push("upper bound increased");
    }
    if !seq.envelope_holds() {
        bad.push("envelope recursion fails");
    }
    if let Some(c) = monomial_fpt {
        if !iv.contains(c) {
            bad.push("LP threshold outside [L, U]");
        }
    }
    bad
}

fn frac(n: u64, q: u32) -> Rational {
    Rational::new(n.into(), q.into())
}

#[derive(Debug, Error)]
pub enum GoldenError {
    #[error("golden file {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("transcript differs from {path} at line {line}")]
    Mismatch { path: PathBuf, line: usize },
}

/// `<dir>/<suite>-seed<seed>.tsv`; non-default primes or levels go into the name.
pub fn golden_path(dir: &Path, spec: &SuiteSpec) -> PathBuf {
    let mut name = format!("{}-seed{}", spec.name, spec.seed);
    if let Some(ps) = &spec.primes {
        let list: Vec<String> = ps.iter().map(u64::to_string).collect();
        name.push_str(&format!("-p{}", list.join("_")));
    }
    if let Some(e) = spec.e_budget {
        name.push_str(&format!("-e{e}"));
    }
    dir.join(format!("{name}.tsv"))
}

pub fn write_golden(dir: &Path, report: &SuiteReport) -> Result<PathBuf, GoldenError> {
    let path = golden_path(dir, &report.spec);
    let io = |source| GoldenError::Io {
        path: path.clone(),
        source,
    };
    fs::create_dir_all(dir).map_err(io)?;
    fs::write(&path, report.transcript()).map_err(io)?;
    Ok(path)
}

pub fn check_golden(dir: &Path, report: &SuiteReport) -> Result<(), GoldenError> {
    let path = golden_path(dir, &report.spec);
    let stored = fs::read_to_string(&path).map_err(|source| GoldenError::Io {
        path: path.clone(),
        source,
    })?;
    let fresh = report.transcript();
    if stored == fresh {
        return Ok(());
    }
    let line = stored
        .lines()
        .zip(fresh.lines())
        .position(|(a, b)| a != b)
        .unwrap_or_else(|| stored.lines().count().min(fresh.lines().count()))
        + 1;
    Err(GoldenError::Mismatch { path, line })
}
