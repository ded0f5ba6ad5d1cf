//! The three subcommands.

use std::fmt::Write as _;
use std::time::Instant;

use serde_json::{json, Value};

use fptkit::estimator::{bounds, conjecture, default_levels, nu_sequence_with, EstimatorError, LevelCache, NuSequence};
use fptkit::ffpoly::{parse_poly, BracketLevel, SparsePoly};
use fptkit::frobenius::{nu_level, NuConfig, NuRecord};
use fptkit::harness::{check_golden, run_suite_with, write_golden, SuiteError, SuiteName, SuiteSpec};
use fptkit::monomial::{fpt_lp, height, integral_closure, multiplicity, MonomialError, MonomialIdeal};
use fptkit::{ExecMode, Rational};

use crate::cache::{self, JsonlCache};
use crate::problem::{digest, make_ring, parse_pair, parse_prime, parse_vars};
use crate::{Failure, GoldenMode, MonomialArgs, NuArgs, SuiteArgs, What};
use crate::{EXIT_FAILED, EXIT_NOT_F_PURE, EXIT_OK, EXIT_RESOURCE};

pub const JSON_VERSION: u32 = 1;

/// Largest prime below 2^32.
const LARGE_PRIME: u64 = 4_294_967_291;

/// `num/den` in lowest terms, also for integers.
pub fn ratio_text(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn level_json(rec: &NuRecord) -> Value {
    json!({
        "e": rec.level.e(),
        "q": rec.level.q(),
        "nu": rec.nu.finite(),
        "witness": rec.witness,
    })
}

fn open_cache(a: &NuArgs) -> Option<JsonlCache> {
    if a.no_cache {
        return None;
    }
    let Some(dir) = cache::default_dir() else {
        eprintln!("warning: no cache directory (set FPT_CACHE_DIR); continuing without cache");
        return None;
    };
    match JsonlCache::open(&dir) {
        Ok(c) => Some(c),
        Err(e) => {
            eprintln!("warning: cache {}: {e}; continuing without cache", dir.display());
            None
        }
    }
}

pub fn nu(a: &NuArgs) -> Result<i32, Failure> {
    let prime = parse_prime("--prime", a.prime)?;
    let ring = make_ring(prime, parse_vars("--vars", &a.vars)?)?;
    let pair = parse_pair(&ring, &a.gens, a.multiplier.as_deref())?;
    let levels = a.e.unwrap_or_else(|| default_levels(prime));
    if levels == 0 {
        return Err(Failure::usage("--e: at least one level is needed"));
    }
    if BracketLevel::new(prime, levels).is_err() {
        return Err(Failure::usage(format!("--e: {}^{levels} does not fit in 32 bits", prime.get())));
    }
    let mut cfg = NuConfig {
        mode: ExecMode::best_available(),
        ..NuConfig::default()
    };
    if let Some(n) = a.max_terms {
        cfg.budget.max_terms = n;
    }
    if let Some(n) = a.max_tuples {
        cfg.budget.max_tuples = n;
    }
    let store = open_cache(a);
    let (records, limit) = match nu_sequence_with(&pair, levels, &cfg, store.as_ref().map(|c| c as &dyn LevelCache)) {
        Ok(seq) => (seq.records().to_vec(), None),
        Err(EstimatorError::Incomplete { cause, partial }) => (partial, Some(cause)),
        Err(other) => {
            return Err(Failure {
                code: EXIT_FAILED,
                message: format!("internal error: {other}"),
            })
        }
    };
    if let Some(c) = &store {
        for w in c.write_errors() {
            eprintln!("warning: cache write failed: {w}");
        }
    }

    let mut mismatches = Vec::new();
    if a.verify_cache {
        for rec in &records {
            match nu_level(&pair, &rec.level, &cfg) {
                Ok(fresh) if fresh == *rec => {}
                Ok(fresh) => mismatches.push(format!(
                    "e={}: cached nu={} witness={:?}, recomputed nu={} witness={:?}",
                    rec.level.e(),
                    rec.nu,
                    rec.witness,
                    fresh.nu,
                    fresh.witness
                )),
                Err(e) => mismatches.push(format!("e={}: recomputation failed: {e}", rec.level.e())),
            }
        }
    }

    let seq = if records.is_empty() {
        None
    } else {
        Some(NuSequence::new(pair.clone(), records.clone()).map_err(|e| Failure {
            code: EXIT_FAILED,
            message: format!("internal error: {e}"),
        })?)
    };
    let interval = seq.as_ref().and_then(|s| bounds(s).ok());
    let guess = seq.as_ref().and_then(conjecture);

    if a.json {
        let doc = json!({
            "version": JSON_VERSION,
            "prime": prime.get(),
            "vars": ring.vars(),
            "pair": {
                "gens": pair.gens().iter().map(SparsePoly::to_string).collect::<Vec<_>>(),
                "multiplier": pair.multiplier().map(SparsePoly::to_string),
            },
            "digest": digest(&pair),
            "levels": records.iter().map(level_json).collect::<Vec<_>>(),
            "complete": limit.is_none(),
            "bounds": interval.as_ref().map(|iv| json!({
                "lower": ratio_text(&iv.lower),
                "upper": ratio_text(&iv.upper),
                "lower_level": iv.lower_level,
                "upper_level": iv.upper_level,
            })),
            "conjecture": guess.as_ref().map(|g| json!({
                "limit": ratio_text(&g.limit),
                "confirmed_steps": g.confirmed_steps,
                "e0": g.e0,
                "delta": g.delta,
                "status": g.status.to_string(),
            })),
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("JSON values serialize"));
    } else {
        let mut out = format!("pair {pair}\n");
        for rec in &records {
            let _ = write!(out, "e={} q={} nu={}", rec.level.e(), rec.level.q(), rec.nu);
            if let (true, Some(w)) = (a.explain, &rec.witness) {
                let w: Vec<String> = w.iter().map(u64::to_string).collect();
                let _ = write!(out, " witness ({})", w.join(","));
            }
            out.push('\n');
        }
        match &interval {
            Some(iv) => {
                let _ = writeln!(out, "bounds {iv}");
                if a.explain {
                    let _ = writeln!(out, "lower bound from e={}, upper bound from e={}", iv.lower_level, iv.upper_level);
                }
            }
            None if limit.is_none() => out.push_str("bounds none: no tested level is F-pure\n"),
            None => {}
        }
        if let Some(g) = &guess {
            let _ = writeln!(
                out,
                "conjecture {} ({}; e0={}, delta={}, confirmed steps {})",
                g.limit, g.status, g.e0, g.delta, g.confirmed_steps
            );
        }
        if let (true, Some(c)) = (a.explain, &store) {
            let _ = writeln!(out, "cache {} ({} of {} levels reused)", c.path().display(), c.hits(), records.len());
        }
        print!("{out}");
    }

    for m in &mismatches {
        eprintln!("cache mismatch: {m}");
    }
    if let Some(cause) = limit {
        eprintln!("error: {cause}");
        return Ok(EXIT_RESOURCE);
    }
    if !mismatches.is_empty() {
        return Ok(EXIT_FAILED);
    }
    Ok(if interval.is_none() { EXIT_NOT_F_PURE } else { EXIT_OK })
}

fn monomial_ideal(a: &MonomialArgs) -> Result<(std::sync::Arc<fptkit::ffpoly::PolyRing>, MonomialIdeal), Failure> {
    // Monomial invariants do not depend on p. A large prime keeps a
    // coefficient like 3 from reducing to 1 before the check below.
    let ring = make_ring(parse_prime("--prime", LARGE_PRIME)?, parse_vars("--vars", &a.vars)?)?;
    let mut exps = Vec::new();
    for t in a.gens.split(',').map(str::trim) {
        let f = parse_poly(t, &ring).map_err(|e| Failure::usage(format!("--gens: '{t}': {e}")))?;
        match f.terms() {
            [(e, 1)] if !t.is_empty() => exps.push(e.clone()),
            _ => return Err(Failure::usage(format!("--gens: '{t}' is not a monomial"))),
        }
    }
    let ideal = MonomialIdeal::new(ring.dim(), exps).map_err(|e| Failure::usage(format!("--gens: {e}")))?;
    Ok((ring, ideal))
}

pub fn monomial(a: &MonomialArgs) -> Result<i32, Failure> {
    let (ring, ideal) = monomial_ideal(a)?;
    // Generators are stored in increasing lex order; print X^2 before Z^2.
    let text = |m: &MonomialIdeal| -> Vec<String> {
        m.gens().iter().rev().map(|g| SparsePoly::monomial(&ring, g.clone(), 1).to_string()).collect()
    };
    let (human, value) = match a.what {
        What::Fpt => {
            let c = fpt_lp(&ideal);
            (c.to_string(), json!(ratio_text(&c)))
        }
        What::Closure => {
            let gens = text(&integral_closure(&ideal));
            (gens.join(", "), json!(gens))
        }
        What::Height => {
            let h = height(&ideal);
            (h.to_string(), json!(h))
        }
        What::Mult => match multiplicity(&ideal) {
            Ok(m) => (m.to_string(), json!(m)),
            Err(MonomialError::NotMPrimary { var }) => {
                return Err(Failure::usage(format!(
                    "--gens: the ideal is not primary to the maximal ideal: no pure power of {} among the generators",
                    ring.vars()[var]
                )))
            }
            Err(e @ MonomialError::ResourceLimit { .. }) => return Err(Failure::resource(e.to_string())),
            Err(e) => return Err(Failure::usage(format!("--gens: {e}"))),
        },
    };
    if a.json {
        let what = match a.what {
            What::Fpt => "fpt",
            What::Closure => "closure",
            What::Height => "height",
            What::Mult => "mult",
        };
        let doc = json!({
            "version": JSON_VERSION,
            "vars": ring.vars(),
            "gens": text(&ideal),
            "what": what,
            "value": value,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("JSON values serialize"));
    } else {
        println!("{human}");
    }
    Ok(EXIT_OK)
}

pub fn suite(a: &SuiteArgs) -> Result<i32, Failure> {
    let name: SuiteName = a.name.parse().map_err(|e: SuiteError| Failure::usage(format!("--name: {e}")))?;
    let mut spec = SuiteSpec::new(name);
    if let Some(s) = a.seed {
        spec = spec.with_seed(s);
    }
    if let Some(list) = &a.primes {
        let primes = list
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|e| Failure::usage(format!("--primes: '{t}': {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        spec.primes = Some(primes);
    }
    spec.e_budget = a.e;
    let mode = if a.sequential { ExecMode::Sequential } else { ExecMode::best_available() };
    let start = Instant::now();
    let report = run_suite_with(&spec, mode).map_err(|e| {
        let flag = match e {
            SuiteError::UnknownSuite(_) => "--name",
            SuiteError::NotPrime(_) => "--primes",
            SuiteError::ZeroLevels => "--e",
        };
        Failure::usage(format!("{flag}: {e}"))
    })?;
    let took = start.elapsed();

    if a.transcript {
        print!("{}", report.transcript());
    }
    for c in report.failures() {
        eprintln!("FAIL {} {}: expected {}, computed {}", name, c.id, c.expected, c.computed);
    }
    println!(
        "{name} seed={}: {}/{} cases pass, {} resource-limited, {:.2}s",
        spec.seed,
        report.passed(),
        report.cases.len(),
        report.resource_limited(),
        took.as_secs_f64()
    );

    match a.golden {
        Some(GoldenMode::Write) => {
            let path = write_golden(&a.golden_dir, &report).map_err(|e| Failure {
                code: EXIT_FAILED,
                message: format!("--golden-dir: {e}"),
            })?;
            println!("wrote {}", path.display());
        }
        Some(GoldenMode::Check) => match check_golden(&a.golden_dir, &report) {
            Ok(()) => println!("golden transcript matches"),
            Err(e) => {
                eprintln!("golden check failed: {e}");
                return Ok(EXIT_FAILED);
            }
        },
        None => {}
    }

    let hard_failures = report.failures().filter(|c| !c.resource_limited).count();
    Ok(if hard_failures > 0 {
        EXIT_FAILED
    } else if report.resource_limited() > 0 {
        EXIT_RESOURCE
    } else {
        EXIT_OK
    })
}
