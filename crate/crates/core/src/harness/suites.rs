use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;

use super::random::{case_seeds, monomial_pair, random_monomial_ideal, random_pair, random_primary_ideal, rng_from_seed, standard_vars, Profile};
use super::{interval_violations, CaseRecord, ComputedSequence, Job, JobOutput, Provenance, SuiteName, SuiteSpec};
use crate::estimator::{bounds, conjecture, default_levels, nu_sequence, EstimatorError, NuSequence};
use crate::ffpoly::{BracketLevel, PolyRing, PrimeChar};
use crate::frobenius::{fedder_fpure_at, nu_level, oracle_nu, IdealPair, NuConfig, NuValue, DEFAULT_ORACLE_BOUND};
use crate::monomial::{fpt_lp, height, integral_closure, multiplicity, MonomialIdeal};
use crate::{ExecMode, Rational};

use Provenance::{Computed, Elementary, Published};

pub(crate) fn jobs(spec: &SuiteSpec) -> Vec<Job> {
    match spec.name {
        SuiteName::Duval => duval(spec),
        SuiteName::HypersurfaceAb => hypersurface_ab(spec),
        SuiteName::Bounds => bounds_suite(spec),
        SuiteName::MonomialLaws => monomial_laws(spec),
        SuiteName::Multiplicity => multiplicity_suite(spec),
        SuiteName::Summation => summation(spec),
        SuiteName::ThresholdEdge => threshold_edge(spec),
    }
}

fn ring(p: u64, d: usize) -> Arc<PolyRing> {
    PolyRing::new(PrimeChar::new(p).expect("suite primes are validated"), standard_vars(d)).expect("standard variables")
}

fn cfg(mode: ExecMode) -> NuConfig {
    NuConfig {
        mode,
        ..NuConfig::default()
    }
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn int(n: u64) -> Rational {
    Rational::from_integer(n.into())
}

fn level(p: u64, e: u32) -> BracketLevel {
    BracketLevel::new(PrimeChar::new(p).expect("prime"), e).expect("level fits")
}

/// Computes the sequence, records an interval-coherence case for it and
/// keeps it for later cross-checks. A resource limit becomes a failing case.
fn sequence_case(
    out: &mut JobOutput,
    id: &str,
    inputs: &str,
    pair: &IdealPair,
    levels: u32,
    mode: ExecMode,
    monomial_fpt: Option<Rational>,
) -> Option<NuSequence> {
    match nu_sequence(pair, levels, &cfg(mode)) {
        Ok(seq) => {
            out.push(coherence_case(id, inputs, &seq, monomial_fpt.as_ref()));
            out.sequences.push(ComputedSequence {
                seq: seq.clone(),
                monomial_fpt,
            });
            Some(seq)
        }
        Err(EstimatorError::Incomplete { cause, .. }) => {
            out.push(CaseRecord::limited(id, inputs, cause));
            None
        }
        Err(other) => {
            out.push(CaseRecord::new(id, inputs, "a sequence", other, Computed, false));
            None
        }
    }
}

fn coherence_case(id: &str, inputs: &str, seq: &NuSequence, monomial_fpt: Option<&Rational>) -> CaseRecord {
    let bad = interval_violations(seq, monomial_fpt);
    let shown = match bounds(seq) {
        Ok(iv) => format!("nu={} [{}, {}]", values(seq), iv.lower, iv.upper),
        Err(e) => format!("nu={} ({e})", values(seq)),
    };
    let computed = if bad.is_empty() { shown } else { format!("{shown} {}", bad.join("; ")) };
    let expected = match monomial_fpt {
        Some(c) => format!("coherent interval containing {c}"),
        None => "coherent interval".to_string(),
    };
    CaseRecord::new(format!("{id}/interval"), inputs, expected, computed, Elementary, bad.is_empty())
}

fn values(seq: &NuSequence) -> String {
    let v: Vec<String> = seq.values().iter().map(|n| n.to_string()).collect();
    format!("({})", v.join(","))
}

fn oracle_case(out: &mut JobOutput, id: &str, inputs: &str, pair: &IdealPair, lvl: &BracketLevel, fast: NuValue) {
    match oracle_nu(pair, lvl, DEFAULT_ORACLE_BOUND) {
        Ok(rec) => out.push(CaseRecord::check(format!("{id}/oracle-e{}", lvl.e()), inputs, rec.nu, fast, Computed)),
        Err(e) => out.push(CaseRecord::limited(format!("{id}/oracle-e{}", lvl.e()), inputs, e)),
    }
}

// ---------------------------------------------------------------- duval

#[derive(Clone, Copy)]
enum LevelFormula {
    /// ν(q) = (q-1)/k.
    Fraction(u64),
    /// ν(q) = b_q + c_q with b_q = (p^(e-1)+1)/2, c_q = q/6 - 5p^(e-1)/6 - 1.
    E8Mixed,
}

#[derive(Clone, Copy)]
enum Limit {
    Const(i64, i64),
    /// a/b - 1/(c·p)
    MinusOverP(i64, i64, i64),
}

impl Limit {
    fn value(self, p: u64) -> Rational {
        match self {
            Limit::Const(a, b) => rat(a, b),
            Limit::MinusOverP(a, b, c) => rat(a, b) - rat(1, c * p as i64),
        }
    }
}

struct DuvalRow {
    label: &'static str,
    f: &'static str,
    primes: &'static [u64],
    limit: Limit,
    formula: Option<LevelFormula>,
}

/// The Du Val grid. Primes are restricted to the residue classes where the
/// table states a value (D_n needs p > 2; the second E6/E7/E8 formulas need
/// p ≡ 5 mod 6, p ≡ 3 mod 4 with p > 3, p ≡ 5 mod 6 with p > 5).
///
/// Level formulas are asserted where a closed form for ν is available:
/// A_n (q-1), D_n and E8 in both residue classes. For D_n with p odd, the
/// term X^(q-1)·Y^((q-1)/2)·Z^(q-1) of f^(q-1) has the nonzero coefficient
/// C(q-1, (q-1)/2), which gives ν(q) >= (q-1)/2; equality is the reading of
/// the table value 1/2 checked here level by level.
const DUVAL: &[DuvalRow] = &[
    DuvalRow { label: "A1", f: "X*Y+Z^2", primes: &[2, 3, 5], limit: Limit::Const(1, 1), formula: Some(LevelFormula::Fraction(1)) },
    DuvalRow { label: "A2", f: "X*Y+Z^3", primes: &[2, 3, 5], limit: Limit::Const(1, 1), formula: Some(LevelFormula::Fraction(1)) },
    DuvalRow { label: "A3", f: "X*Y+Z^4", primes: &[2, 3, 5], limit: Limit::Const(1, 1), formula: Some(LevelFormula::Fraction(1)) },
    DuvalRow { label: "D4", f: "X^2+Y^3+Y*Z^2", primes: &[3, 5, 7], limit: Limit::Const(1, 2), formula: Some(LevelFormula::Fraction(2)) },
    DuvalRow { label: "D5", f: "X^2+Y^4+Y*Z^2", primes: &[3, 5, 7], limit: Limit::Const(1, 2), formula: Some(LevelFormula::Fraction(2)) },
    DuvalRow { label: "E6", f: "X^2+Y^3+Z^4", primes: &[7, 13], limit: Limit::Const(1, 3), formula: None },
    DuvalRow { label: "E6", f: "X^2+Y^3+Z^4", primes: &[5, 11], limit: Limit::MinusOverP(1, 3, 6), formula: None },
    DuvalRow { label: "E7", f: "X^2+Y^3+Y*Z^3", primes: &[5, 13], limit: Limit::Const(1, 4), formula: None },
    DuvalRow { label: "E7", f: "X^2+Y^3+Y*Z^3", primes: &[7, 11], limit: Limit::MinusOverP(1, 4, 4), formula: None },
    DuvalRow { label: "E8", f: "X^2+Y^3+Z^5", primes: &[7, 13], limit: Limit::Const(1, 6), formula: Some(LevelFormula::Fraction(6)) },
    DuvalRow { label: "E8", f: "X^2+Y^3+Z^5", primes: &[11], limit: Limit::MinusOverP(1, 6, 3), formula: Some(LevelFormula::E8Mixed) },
];

fn formula_value(formula: LevelFormula, p: u64, e: u32) -> u64 {
    let q = p.pow(e);
    let pe1 = p.pow(e - 1);
    match formula {
        LevelFormula::Fraction(k) => (q - 1) / k,
        LevelFormula::E8Mixed => pe1.div_ceil(2) + (q - 5 * pe1) / 6 - 1,
    }
}

fn duval(spec: &SuiteSpec) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for row in DUVAL {
        for p in spec.primes_from(row.primes) {
            let levels = spec.levels(default_levels(PrimeChar::new(p).expect("prime")));
            jobs.push(Box::new(move |mode| duval_case(row, p, levels, mode)));
        }
    }
    jobs
}

fn duval_case(row: &DuvalRow, p: u64, levels: u32, mode: ExecMode) -> JobOutput {
    let mut out = JobOutput::default();
    let id = format!("{}/p{p}", row.label);
    let inputs = format!("a=(X,Y,Z) f={} p={p} E={levels}", row.f);
    let r = ring(p, 3);
    let pair = IdealPair::parse(&r, &["X", "Y", "Z"], Some(row.f)).expect("table equations parse");
    let Some(seq) = sequence_case(&mut out, &id, &inputs, &pair, levels, mode, None) else {
        return out;
    };
    oracle_case(&mut out, &id, &inputs, &pair, &level(p, 1), seq.records()[0].nu);
    if let Some(formula) = row.formula {
        for rec in seq.records() {
            let e = rec.level.e();
            let want = NuValue::Finite(formula_value(formula, p, e));
            out.push(CaseRecord::check(format!("{id}/nu-e{e}"), &inputs, want, rec.nu, Published));
        }
    }
    let limit = row.limit.value(p);
    if levels >= 2 {
        let guess = conjecture(&seq);
        let computed = guess.as_ref().map_or("none".to_string(), |g| {
            format!("{} (e0={}, delta={}, steps={})", g.limit, g.e0, g.delta, g.confirmed_steps)
        });
        let pass = guess.is_some_and(|g| g.limit == limit);
        out.push(CaseRecord::new(format!("{id}/limit"), &inputs, &limit, computed, Published, pass));
    }
    if let Ok(iv) = bounds(&seq) {
        out.push(CaseRecord::new(
            format!("{id}/contains-limit"),
            &inputs,
            format!("[L, U] contains {limit}"),
            &iv,
            Published,
            iv.contains(&limit),
        ));
    }
    out
}

// ---------------------------------------------------------- hypersurface-ab

const AB_PRIMES: &[u64] = &[5, 7, 11, 13];

fn hypersurface_ab(spec: &SuiteSpec) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for p in spec.primes_from(AB_PRIMES) {
        for a in 2u64..=5 {
            for b in 2u64..=5 {
                let exact = (p - 1) % (a * b) == 0;
                let levels = spec.levels(if exact { 2 } else { 1 });
                jobs.push(Box::new(move |mode| ab_case(a, b, p, levels, exact, mode)));
            }
        }
    }
    jobs
}

fn ab_case(a: u64, b: u64, p: u64, levels: u32, exact: bool, mode: ExecMode) -> JobOutput {
    let mut out = JobOutput::default();
    let f = format!("X^{a}+Y^{b}");
    let id = format!("a{a}-b{b}/p{p}");
    let inputs = format!("a=({f}) p={p} E={levels}");
    let r = ring(p, 2);
    let pair = IdealPair::parse(&r, &[&f], None).expect("binomial parses");
    let Some(seq) = sequence_case(&mut out, &id, &inputs, &pair, levels, mode, None) else {
        return out;
    };
    let nu1 = seq.records()[0].nu;
    oracle_case(&mut out, &id, &inputs, &pair, &level(p, 1), nu1);
    let r_val = p.div_ceil(a) + p.div_ceil(b) - 1;
    out.push(CaseRecord::check(format!("{id}/nu-e1"), &inputs, NuValue::Finite(r_val - 1), nu1, Published));
    if exact {
        let c = rat(1, a as i64) + rat(1, b as i64);
        for rec in seq.records() {
            let q = u64::from(rec.level.q());
            let want = int(q - 1) * &c;
            assert!(want.is_integer(), "(q-1)(1/a+1/b) is integral when ab | p-1");
            let want = NuValue::Finite(want.to_integer().try_into().expect("small"));
            out.push(CaseRecord::check(format!("{id}/exact-e{}", rec.level.e()), &inputs, want, rec.nu, Published));
        }
        if let Ok(iv) = bounds(&seq) {
            out.push(CaseRecord::new(
                format!("{id}/contains-limit"),
                &inputs,
                format!("[L, U] contains {c}"),
                &iv,
                Published,
                iv.contains(&c),
            ));
        }
    }
    out
}

// --------------------------------------------------------------- bounds

const RANDOM_PRIMES: &[u64] = &[2, 3, 5];

pub(crate) const BOUNDS_MONOMIAL: usize = 200;
pub(crate) const BOUNDS_POLYNOMIAL: usize = 50;
pub(crate) const BOUNDS_CROSS: usize = 30;

fn monomial_checks(out: &mut JobOutput, id: &str, a: &MonomialIdeal) {
    let inputs = format!("a={a}");
    let c = fpt_lp(a);
    let ord = int(a.ord());
    let d = int(a.dim() as u64);
    let h = height(a);
    let lo = ord.recip();
    let hi = &d / &ord;
    out.push(CaseRecord::new(
        format!("{id}/ord-bounds"),
        &inputs,
        format!("{lo} <= c <= {hi}"),
        &c,
        Published,
        lo <= c && c <= hi,
    ));
    out.push(CaseRecord::new(format!("{id}/height"), &inputs, format!("c <= {h}"), &c, Published, c <= int(h as u64)));
    if let Some(deg) = a.equigenerated_degree() {
        let floor = int(h as u64) / int(deg);
        out.push(CaseRecord::new(
            format!("{id}/equigenerated"),
            &inputs,
            format!("c >= {floor}"),
            &c,
            Published,
            c >= floor,
        ));
    }
}

fn random_dim<R: Rng>(rng: &mut R) -> usize {
    rng.gen_range(1..=3)
}

fn bounds_suite(spec: &SuiteSpec) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for (i, seed) in case_seeds(spec.seed, 1, BOUNDS_MONOMIAL).into_iter().enumerate() {
        jobs.push(Box::new(move |_| {
            let mut rng = rng_from_seed(seed);
            let d = random_dim(&mut rng);
            let max_deg = rng.gen_range(1..=6);
            let mu = rng.gen_range(1..=4);
            let a = random_monomial_ideal(&mut rng, d, max_deg, mu);
            let mut out = JobOutput::default();
            monomial_checks(&mut out, &format!("mono{i:03}"), &a);
            out
        }));
    }
    let primes = spec.primes_from(RANDOM_PRIMES);
    if primes.is_empty() {
        return jobs;
    }
    let levels = spec.levels(2);
    for (i, seed) in case_seeds(spec.seed, 2, BOUNDS_POLYNOMIAL).into_iter().enumerate() {
        let p = primes[i % primes.len()];
        jobs.push(Box::new(move |mode| {
            let mut rng = rng_from_seed(seed);
            let d = random_dim(&mut rng);
            let profile = if i % 2 == 0 { Profile::Binomial } else { Profile::SparsePoly };
            let mu = rng.gen_range(1..=3);
            let pair = random_pair(&mut rng, &ring(p, d), profile, 4, mu);
            let mut out = JobOutput::default();
            let id = format!("poly{i:02}");
            let inputs = format!("a={pair} E={levels}");
            let Some(seq) = sequence_case(&mut out, &id, &inputs, &pair, levels, mode, None) else {
                return out;
            };
            let ord = pair.ord();
            for rec in seq.records() {
                let q = u64::from(rec.level.q());
                let lo = q.div_ceil(ord) - 1;
                let hi = d as u64 * (q - 1) / ord;
                let nu = rec.nu.finite().expect("no hypersurface");
                out.push(CaseRecord::new(
                    format!("{id}/order-e{}", rec.level.e()),
                    &inputs,
                    format!("{lo} <= nu <= {hi}"),
                    nu,
                    Published,
                    lo <= nu && nu <= hi,
                ));
            }
            out
        }));
    }
    let levels = spec.levels(3);
    for (i, seed) in case_seeds(spec.seed, 3, BOUNDS_CROSS).into_iter().enumerate() {
        let p = primes[i % primes.len()];
        jobs.push(Box::new(move |mode| {
            let mut rng = rng_from_seed(seed);
            let d = random_dim(&mut rng);
            let mu = rng.gen_range(1..=3);
            let a = random_monomial_ideal(&mut rng, d, 4, mu);
            let pair = monomial_pair(&ring(p, d), &a);
            let c = fpt_lp(&a);
            let mut out = JobOutput::default();
            let id = format!("lp{i:02}");
            let inputs = format!("a={a} p={p} E={levels}");
            if let Some(seq) = sequence_case(&mut out, &id, &inputs, &pair, levels, mode, Some(c.clone())) {
                if let Some(g) = conjecture(&seq).filter(|g| g.confirmed_steps >= 2) {
                    out.push(CaseRecord::check(format!("{id}/conjecture"), &inputs, c, g.limit, Computed));
                }
            }
            out
        }));
    }
    jobs
}

// -------------------------------------------------------- monomial-laws

pub(crate) const LAWS_IDEALS: usize = 100;

fn monomial_laws(spec: &SuiteSpec) -> Vec<Job> {
    let mut jobs: Vec<Job> = vec![Box::new(|_| laws_spot_values())];
    for (i, seed) in case_seeds(spec.seed, 4, LAWS_IDEALS).into_iter().enumerate() {
        jobs.push(Box::new(move |_| {
            let mut rng = rng_from_seed(seed);
            let d = random_dim(&mut rng);
            let a = { let (deg, mu) = (rng.gen_range(1..=5), rng.gen_range(1..=4)); random_monomial_ideal(&mut rng, d, deg, mu) };
            let b = { let (deg, mu) = (rng.gen_range(1..=5), rng.gen_range(1..=4)); random_monomial_ideal(&mut rng, d, deg, mu) };
            let mut out = JobOutput::default();
            let id = format!("ideal{i:03}");
            let inputs = format!("a={a}");
            let c = fpt_lp(&a);
            let closure = integral_closure(&a);
            out.push(CaseRecord::check(format!("{id}/closure"), format!("{inputs} closure={closure}"), c.clone(), fpt_lp(&closure), Published));
            for n in [2u32, 3] {
                let scaled = fpt_lp(&a.power(n)) * int(u64::from(n));
                out.push(CaseRecord::check(format!("{id}/power{n}"), &inputs, c.clone(), scaled, Published));
            }
            monomial_checks(&mut out, &id, &a);
            let sum = a.sum(&b);
            let lhs = &c + fpt_lp(&b);
            let rhs = fpt_lp(&sum);
            out.push(CaseRecord::new(
                format!("{id}/sum"),
                format!("{inputs} b={b}"),
                format!("c(a)+c(b) >= {rhs}"),
                &lhs,
                Published,
                lhs >= rhs,
            ));
            out
        }));
    }
    jobs
}

fn laws_spot_values() -> JobOutput {
    let mut out = JobOutput::default();
    let a = MonomialIdeal::from_exponents(2, &[&[2, 0], &[0, 3]]).expect("valid");
    out.push(CaseRecord::check("spot/fpt-x2-y3", "a=(X^2,Y^3)", rat(5, 6), fpt_lp(&a), Computed));
    out.push(CaseRecord::check("spot/fpt-x2-y3-squared", "a=(X^2,Y^3)^2", rat(5, 12), fpt_lp(&a.power(2)), Computed));
    let want = MonomialIdeal::from_exponents(2, &[&[2, 0], &[1, 2], &[0, 3]]).expect("valid");
    out.push(CaseRecord::check("spot/closure-x2-y3", "a=(X^2,Y^3)", want, integral_closure(&a), Computed));
    out.push(CaseRecord::check("spot/fpt-m-d3", "a=(X,Y,Z)", int(3), fpt_lp(&MonomialIdeal::maximal_power(3, 1)), Published));
    for (d, r) in [(2usize, 2u32), (2, 3), (2, 5), (3, 2), (3, 3), (3, 5)] {
        out.push(CaseRecord::check(
            format!("spot/veronese-d{d}-r{r}"),
            format!("a=m^{r} d={d}"),
            int(d as u64) / int(u64::from(r)),
            fpt_lp(&MonomialIdeal::maximal_power(d, r)),
            Published,
        ));
    }
    let xy_xz = MonomialIdeal::from_exponents(3, &[&[1, 1, 0], &[1, 0, 1]]).expect("valid");
    out.push(CaseRecord::check("spot/height-xy-xz", "a=(XY,XZ)", 1, height(&xy_xz), Computed));
    out
}

// --------------------------------------------------------- multiplicity

pub(crate) const MULT_IDEALS: usize = 100;

fn multiplicity_suite(spec: &SuiteSpec) -> Vec<Job> {
    let mut jobs: Vec<Job> = vec![Box::new(|_| multiplicity_spot_values())];
    for (i, seed) in case_seeds(spec.seed, 5, MULT_IDEALS).into_iter().enumerate() {
        jobs.push(Box::new(move |_| {
            let mut rng = rng_from_seed(seed);
            let d = random_dim(&mut rng);
            let a = { let (deg, mu) = (rng.gen_range(1..=5), rng.gen_range(0..=3)); random_primary_ideal(&mut rng, d, deg, mu) };
            let mut out = JobOutput::default();
            multiplicity_checks(&mut out, &format!("ideal{i:03}"), &a);
            out
        }));
    }
    jobs
}

fn multiplicity_checks(out: &mut JobOutput, id: &str, a: &MonomialIdeal) {
    let inputs = format!("a={a}");
    let e = match multiplicity(a) {
        Ok(e) => e,
        Err(err) => {
            out.push(CaseRecord::limited(format!("{id}/inequality"), &inputs, err));
            return;
        }
    };
    let c = fpt_lp(a);
    let d = a.dim();
    let bound = num_traits::pow(int(d as u64) / &c, d);
    out.push(CaseRecord::new(
        format!("{id}/inequality"),
        &inputs,
        format!("e >= {bound}"),
        e,
        Published,
        int(e) >= bound,
    ));
    let closure = integral_closure(a);
    let power = closure
        .equigenerated_degree()
        .filter(|&n| closure == MonomialIdeal::maximal_power(d, n as u32));
    let equal = int(e) == bound;
    out.push(CaseRecord::new(
        format!("{id}/equality"),
        format!("{inputs} closure={closure}"),
        format!("equality iff closure is a power of m ({})", power.is_some()),
        format!("equality {equal}"),
        Published,
        equal == power.is_some(),
    ));
    if let Some(n) = power {
        out.push(CaseRecord::check(format!("{id}/power-scale"), &inputs, int(d as u64), int(n) * &c, Published));
    }
    match multiplicity(&closure) {
        Ok(ec) => out.push(CaseRecord::check(format!("{id}/closure"), &inputs, e, ec, Elementary)),
        Err(err) => out.push(CaseRecord::limited(format!("{id}/closure"), &inputs, err)),
    }
}

fn mult_text(a: &MonomialIdeal) -> String {
    multiplicity(a).map_or_else(|e| e.to_string(), |v| v.to_string())
}

fn multiplicity_spot_values() -> JobOutput {
    let mut out = JobOutput::default();
    let a = MonomialIdeal::from_exponents(2, &[&[2, 0], &[0, 3]]).expect("valid");
    out.push(CaseRecord::check("spot/x2-y3", "a=(X^2,Y^3)", "6".to_string(), mult_text(&a), Computed));
    let b = MonomialIdeal::from_exponents(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]).expect("valid");
    out.push(CaseRecord::check("spot/x2-y2-z2", "a=(X^2,Y^2,Z^2)", "8".to_string(), mult_text(&b), Elementary));
    let bound = num_traits::pow(int(3) / fpt_lp(&b), 3);
    out.push(CaseRecord::check("spot/x2-y2-z2-equality", "a=(X^2,Y^2,Z^2)", int(8), bound, Published));
    for n in 1..=4u32 {
        out.push(CaseRecord::check(
            format!("spot/m{n}-d2"),
            format!("a=m^{n} d=2"),
            (n * n).to_string(),
            mult_text(&MonomialIdeal::maximal_power(2, n)),
            Elementary,
        ));
    }
    multiplicity_checks(&mut out, "spot/x2-y3-law", &a);
    multiplicity_checks(&mut out, "spot/x2-y2-z2-law", &b);
    out
}

// ------------------------------------------------------------ summation

pub(crate) const SUM_PAIRS: usize = 100;

fn summation(spec: &SuiteSpec) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    let primes = spec.primes_from(RANDOM_PRIMES);
    let levels = spec.levels(2);
    if !primes.is_empty() {
        for (i, seed) in case_seeds(spec.seed, 6, SUM_PAIRS).into_iter().enumerate() {
            let p = primes[i % primes.len()];
            jobs.push(Box::new(move |mode| summation_nu(i, seed, p, levels, mode)));
        }
    }
    for (i, seed) in case_seeds(spec.seed, 7, SUM_PAIRS).into_iter().enumerate() {
        jobs.push(Box::new(move |_| {
            let mut rng = rng_from_seed(seed);
            let d = random_dim(&mut rng);
            let a = { let (deg, mu) = (rng.gen_range(1..=6), rng.gen_range(1..=4)); random_monomial_ideal(&mut rng, d, deg, mu) };
            let b = { let (deg, mu) = (rng.gen_range(1..=6), rng.gen_range(1..=4)); random_monomial_ideal(&mut rng, d, deg, mu) };
            let lhs = fpt_lp(&a) + fpt_lp(&b);
            let rhs = fpt_lp(&a.sum(&b));
            let mut out = JobOutput::default();
            out.push(CaseRecord::new(
                format!("lp{i:03}"),
                format!("a={a} b={b}"),
                format!("c(a)+c(b) >= {rhs}"),
                &lhs,
                Published,
                lhs >= rhs,
            ));
            out
        }));
    }
    jobs
}

fn summation_nu(i: usize, seed: u64, p: u64, levels: u32, mode: ExecMode) -> JobOutput {
    let mut rng = rng_from_seed(seed);
    let d = random_dim(&mut rng);
    let r = ring(p, d);
    let mu_a = rng.gen_range(1..=2);
    let a_mono = random_monomial_ideal(&mut rng, d, 4, mu_a);
    let a = monomial_pair(&r, &a_mono);
    let profile = if rng.gen_bool(0.5) { Profile::Binomial } else { Profile::SparsePoly };
    let mu_b = rng.gen_range(1..=2);
    let b = random_pair(&mut rng, &r, profile, 3, mu_b);
    let ab = a.sum(&b).expect("same ring, no hypersurface");
    let mut out = JobOutput::default();
    let id = format!("pair{i:03}");
    let inputs = format!("a={a} b={b} E={levels}");
    let c = fpt_lp(&a_mono);
    let seqs = [
        sequence_case(&mut out, &format!("{id}/a"), &inputs, &a, levels, mode, Some(c)),
        sequence_case(&mut out, &format!("{id}/b"), &inputs, &b, levels, mode, None),
        sequence_case(&mut out, &format!("{id}/a+b"), &inputs, &ab, levels, mode, None),
    ];
    let [Some(sa), Some(sb), Some(sab)] = seqs else {
        return out;
    };
    let mut shown = Vec::new();
    let mut pass = true;
    for ((x, y), z) in sa.finite_prefix().iter().zip(sb.finite_prefix()).zip(sab.finite_prefix()) {
        shown.push(format!("{z}<={x}+{y}"));
        pass &= z <= x + y;
    }
    // The inequality is the main case; interval cases precede it in the job.
    out.cases.insert(
        0,
        CaseRecord::new(id, &inputs, "nu(a+b) <= nu(a)+nu(b) at every level", shown.join(" "), Published, pass),
    );
    out
}

// -------------------------------------------------------- threshold-edge

fn threshold_edge(spec: &SuiteSpec) -> Vec<Job> {
    let levels = spec.levels(3);
    vec![
        Box::new(|_| edge_lp()),
        Box::new(move |mode| edge_levels(levels, mode)),
    ]
}

fn edge_ideals() -> (MonomialIdeal, MonomialIdeal) {
    let a = MonomialIdeal::from_exponents(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]).expect("valid");
    (a, MonomialIdeal::maximal_power(3, 2))
}

fn edge_lp() -> JobOutput {
    let mut out = JobOutput::default();
    let (a, m2) = edge_ideals();
    out.push(CaseRecord::check("closure", "a=(X^2,Y^2,Z^2)", m2.clone(), integral_closure(&a), Published));
    out.push(CaseRecord::check("fpt-a", "a=(X^2,Y^2,Z^2)", rat(3, 2), fpt_lp(&a), Published));
    out.push(CaseRecord::check("fpt-closure", "a=(X,Y,Z)^2", rat(3, 2), fpt_lp(&m2), Published));
    out
}

fn edge_levels(levels: u32, mode: ExecMode) -> JobOutput {
    let mut out = JobOutput::default();
    let (a, m2) = edge_ideals();
    let r = ring(2, 3);
    let pa = monomial_pair(&r, &a);
    let pm = monomial_pair(&r, &m2);
    let config = cfg(mode);
    let t = rat(3, 2);
    let below = rat(3, 2) - rat(1, 10);
    for e in 1..=levels {
        let lvl = level(2, e);
        let inputs = format!("a=(X^2,Y^2,Z^2) t=3/2 p=2 e={e}");
        match fedder_fpure_at(&pa, &t, &lvl, &config) {
            Ok(v) => out.push(CaseRecord::check(format!("fedder-a-e{e}"), &inputs, false, v, Published)),
            Err(err) => out.push(CaseRecord::limited(format!("fedder-a-e{e}"), &inputs, err)),
        }
        match fedder_fpure_at(&pa, &Rational::zero(), &lvl, &config) {
            Ok(v) => out.push(CaseRecord::check(format!("fedder-a-t0-e{e}"), "t=0", true, v, Elementary)),
            Err(err) => out.push(CaseRecord::limited(format!("fedder-a-t0-e{e}"), "t=0", err)),
        }
        for (name, pair) in [("a", &pa), ("closure", &pm)] {
            match nu_level(pair, &lvl, &config) {
                Ok(rec) => oracle_case(&mut out, &format!("nu-{name}"), &format!("{pair} e={e}"), pair, &lvl, rec.nu),
                Err(err) => out.push(CaseRecord::limited(format!("nu-{name}-e{e}"), "", err)),
            }
        }
    }
    let lvl = level(2, levels);
    let inputs = format!("a=(X,Y,Z)^2 t=7/5 p=2 e={levels}");
    match fedder_fpure_at(&pm, &below, &lvl, &config) {
        Ok(v) => out.push(CaseRecord::check(format!("fedder-closure-below-e{levels}"), &inputs, true, v, Published)),
        Err(err) => out.push(CaseRecord::limited("fedder-closure-below", &inputs, err)),
    }
    let c = rat(3, 2);
    sequence_case(&mut out, "seq-a", "a=(X^2,Y^2,Z^2) p=2", &pa, levels, mode, Some(c.clone()));
    sequence_case(&mut out, "seq-closure", "a=(X,Y,Z)^2 p=2", &pm, levels, mode, Some(c));
    out
}
