//! From finitely many ν values to threshold bounds.
//!
//! With `q = p^e` and μ generators:
//!
//! ```text
//! L = max_e ν(q)/q               (certified lower bound)
//! U = min_e (ν(q) + 1 + μ)/q     (certified upper bound)
//! ```
//!
//! `U` rests on the envelope `ν(pq) <= p·ν(q) + p + (p-1)μ - 1`: once
//! `a^(ν+1)` lies in `m^[q]`, every product of `p(ν+1) + (p-1)μ` generators
//! contains a `p`-th power of such a product. The same absorption works for
//! `f^(pq-1) = f^(p-1)·(f^(q-1))^p`.
//!
//! [`conjecture`] reads off a closed form from a constant defect
//! `δ_e = ν(p^(e+1)) - p·ν(p^e)` and is never used to tighten the bounds.

use std::fmt;

use thiserror::Error;

use crate::ffpoly::{BracketLevel, PrimeChar};
use crate::frobenius::{nu_level, IdealPair, NuConfig, NuError, NuRecord, NuValue};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EstimatorError {
    #[error("a sequence needs at least one level")]
    NoLevels,
    #[error("levels must be consecutive starting at e = 1")]
    NonConsecutive,
    #[error("level characteristic differs from the ring's")]
    PrimeMismatch,
    #[error("internal error: level e = {e} is F-pure after a level that was not")]
    PurityRegression { e: u32 },
    #[error("no tested level is F-pure")]
    AllLevelsNotFPure,
    #[error("{cause} (after {} completed levels)", partial.len())]
    Incomplete { cause: NuError, partial: Vec<NuRecord> },
}

/// Optional store for per-level results, consulted before computing.
pub trait LevelCache {
    fn get(&self, pair: &IdealPair, lvl: &BracketLevel) -> Option<NuRecord>;
    fn put(&self, pair: &IdealPair, rec: &NuRecord);
}

/// ν records of one pair at `e = 1..E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuSequence {
    pair: IdealPair,
    records: Vec<NuRecord>,
}

impl NuSequence {
    pub fn new(pair: IdealPair, records: Vec<NuRecord>) -> Result<Self, EstimatorError> {
        if records.is_empty() {
            return Err(EstimatorError::NoLevels);
        }
        let mut pure = true;
        for (i, rec) in records.iter().enumerate() {
            if rec.level.e() as usize != i + 1 {
                return Err(EstimatorError::NonConsecutive);
            }
            if rec.level.prime() != pair.ring().prime() {
                return Err(EstimatorError::PrimeMismatch);
            }
            match rec.nu {
                NuValue::NotFPure => pure = false,
                NuValue::Finite(_) if !pure => {
                    return Err(EstimatorError::PurityRegression { e: rec.level.e() })
                }
                NuValue::Finite(_) => {}
            }
        }
        Ok(NuSequence { pair, records })
    }

    pub fn pair(&self) -> &IdealPair {
        &self.pair
    }

    pub fn records(&self) -> &[NuRecord] {
        &self.records
    }

    pub fn prime(&self) -> PrimeChar {
        self.pair.ring().prime()
    }

    pub fn values(&self) -> Vec<NuValue> {
        self.records.iter().map(|r| r.nu).collect()
    }

    /// The leading run of finite values, `ν(p), ν(p^2), …`.
    pub fn finite_prefix(&self) -> Vec<u64> {
        self.records.iter().map_while(|r| r.nu.finite()).collect()
    }

    /// Checks `ν(pq) <= p·ν(q) + p + (p-1)μ - 1` on consecutive finite levels.
    pub fn envelope_holds(&self) -> bool {
        let p = u64::from(self.prime().get());
        let mu = self.pair.num_gens() as u64;
        self.finite_prefix()
            .windows(2)
            .all(|w| w[1] < p * w[0] + p + (p - 1) * mu)
    }
}

/// Default number of levels: 3 for `p <= 7`, 2 beyond.
pub fn default_levels(p: PrimeChar) -> u32 {
    if p.get() <= 7 {
        3
    } else {
        2
    }
}

pub fn nu_sequence(pair: &IdealPair, levels: u32, cfg: &NuConfig) -> Result<NuSequence, EstimatorError> {
    nu_sequence_with(pair, levels, cfg, None)
}

/// Computes levels `1..=levels` bottom-up, reading and filling `cache`.
pub fn nu_sequence_with(
    pair: &IdealPair,
    levels: u32,
    cfg: &NuConfig,
    cache: Option<&dyn LevelCache>,
) -> Result<NuSequence, EstimatorError> {
    if levels == 0 {
        return Err(EstimatorError::NoLevels);
    }
    let prime = pair.ring().prime();
    let mut records = Vec::with_capacity(levels as usize);
    for e in 1..=levels {
        let lvl = BracketLevel::new(prime, e).map_err(|_| EstimatorError::Incomplete {
            cause: NuError::ResourceLimit {
                resource: "bracket level q",
                limit: u64::from(u32::MAX),
            },
            partial: records.clone(),
        })?;
        if let Some(hit) = cache.and_then(|c| c.get(pair, &lvl)) {
            records.push(hit);
            continue;
        }
        match nu_level(pair, &lvl, cfg) {
            Ok(rec) => {
                if let Some(c) = cache {
                    c.put(pair, &rec);
                }
                records.push(rec);
            }
            Err(cause) => {
                return Err(EstimatorError::Incomplete {
                    cause,
                    partial: records,
                })
            }
        }
    }
    NuSequence::new(pair.clone(), records)
}

/// Rigorous rational bounds `L <= fpt <= U`, with the levels achieving them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FptInterval {
    pub lower: Rational,
    pub upper: Rational,
    pub lower_level: u32,
    pub upper_level: u32,
}

impl FptInterval {
    pub fn contains(&self, t: &Rational) -> bool {
        &self.lower <= t && t <= &self.upper
    }
}

impl fmt::Display for FptInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}

fn frac(n: u64, q: u32) -> Rational {
    Rational::new(n.into(), q.into())
}

pub fn bounds(seq: &NuSequence) -> Result<FptInterval, EstimatorError> {
    let mu = seq.pair.num_gens() as u64;
    let mut best: Option<FptInterval> = None;
    for rec in &seq.records {
        let NuValue::Finite(nu) = rec.nu else { continue };
        let q = rec.level.q();
        let e = rec.level.e();
        let lo = frac(nu, q);
        let hi = frac(nu + 1 + mu, q);
        best = Some(match best {
            None => FptInterval {
                lower: lo,
                upper: hi,
                lower_level: e,
                upper_level: e,
            },
            Some(mut b) => {
                if lo > b.lower {
                    b.lower = lo;
                    b.lower_level = e;
                }
                if hi < b.upper {
                    b.upper = hi;
                    b.upper_level = e;
                }
                b
            }
        });
    }
    best.ok_or(EstimatorError::AllLevelsNotFPure)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GuessStatus {
    Conjectured,
}

impl fmt::Display for GuessStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("CONJECTURED")
    }
}

/// Limit suggested by a constant defect δ from level `e0` on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormGuess {
    pub limit: Rational,
    pub e0: u32,
    pub delta: i64,
    pub confirmed_steps: u32,
    pub status: GuessStatus,
}

/// If `δ` is constant from `e0` on, `ν(p^e)/p^e` sums a geometric series
/// with limit `ν(p^e0)/p^e0 + δ/(p^e0 (p-1))`.
pub fn conjecture(seq: &NuSequence) -> Option<ClosedFormGuess> {
    let nus = seq.finite_prefix();
    if nus.len() < 2 {
        return None;
    }
    let p = i64::from(seq.prime().get());
    let deltas: Vec<i64> = nus.windows(2).map(|w| w[1] as i64 - p * w[0] as i64).collect();
    let last = *deltas.last().expect("at least one defect");
    if deltas.len() >= 2 && deltas[deltas.len() - 2] != last {
        return None;
    }
    let run = deltas.iter().rev().take_while(|&&d| d == last).count();
    let e0 = (deltas.len() - run + 1) as u32;
    let nu0 = nus[e0 as usize - 1];
    let q0 = seq.records[e0 as usize - 1].level.q();
    let q0r = Rational::from_integer(q0.into());
    let limit = frac(nu0, q0) + Rational::from_integer(last.into()) / (q0r * Rational::from_integer((p - 1).into()));
    Some(ClosedFormGuess {
        limit,
        e0,
        delta: last,
        confirmed_steps: run as u32,
        status: GuessStatus::Conjectured,
    })
}

#[cfg(test)]
mod tests {
    use std::cell::RefCell;
    use std::sync::Arc;

    use super::*;
    use crate::ffpoly::PolyRing;
    use crate::frobenius::oracle_nu;

    fn ring(p: u64, vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(PrimeChar::new(p).unwrap(), vars.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn e8(p: u64) -> IdealPair {
        IdealPair::parse(&ring(p, &["X", "Y", "Z"]), &["X", "Y", "Z"], Some("X^2+Y^3+Z^5")).unwrap()
    }

    fn synthetic(p: u64, vals: &[NuValue], gens: &[&str]) -> NuSequence {
        let pair = IdealPair::parse(&ring(p, &["X", "Y"]), gens, None).unwrap();
        let prime = pair.ring().prime();
        let recs = vals
            .iter()
            .enumerate()
            .map(|(i, &nu)| NuRecord {
                level: BracketLevel::new(prime, i as u32 + 1).unwrap(),
                nu,
                witness: None,
            })
            .collect();
        NuSequence::new(pair, recs).unwrap()
    }

    use NuValue::{Finite, NotFPure};

    #[test]
    fn coordinate_hyperplane_sequence() {
        let pair = IdealPair::parse(&ring(3, &["X"]), &["X"], None).unwrap();
        let seq = nu_sequence(&pair, 3, &NuConfig::default()).unwrap();
        assert_eq!(seq.values(), vec![Finite(2), Finite(8), Finite(26)]);
    }

    #[test]
    fn e8_sequences() {
        let cfg = NuConfig::default();
        let seq = nu_sequence(&e8(11), 2, &cfg).unwrap();
        assert_eq!(seq.values(), vec![Finite(1), Finite(16)]);
        let lvl = BracketLevel::new(PrimeChar::new(11).unwrap(), 1).unwrap();
        assert_eq!(oracle_nu(&e8(11), &lvl, 64).unwrap().nu, Finite(1));
        let g = conjecture(&seq).unwrap();
        assert_eq!((g.limit, g.e0, g.delta, g.confirmed_steps), (r(3, 22), 1, 5, 1));
        let b = bounds(&seq).unwrap();
        assert_eq!((b.lower, b.upper), (r(16, 121), r(20, 121)));

        let seq = nu_sequence(&e8(7), 2, &cfg).unwrap();
        assert_eq!(seq.values(), vec![Finite(1), Finite(8)]);
        let lvl = BracketLevel::new(PrimeChar::new(7).unwrap(), 1).unwrap();
        assert_eq!(oracle_nu(&e8(7), &lvl, 64).unwrap().nu, Finite(1));
    }

    #[test]
    fn bounds_examples() {
        let s = synthetic(7, &[Finite(5)], &["X^2", "Y^3"]);
        let b = bounds(&s).unwrap();
        assert_eq!((b.lower.clone(), b.upper.clone()), (r(5, 7), r(8, 7)));
        assert!(b.contains(&r(5, 6)));

        let pair = IdealPair::parse(&ring(5, &["X", "Y"]), &["X", "Y"], None).unwrap();
        let seq = nu_sequence(&pair, 2, &NuConfig::default()).unwrap();
        assert_eq!(seq.values(), vec![Finite(8), Finite(48)]);
        let b = bounds(&seq).unwrap();
        assert_eq!((b.lower.clone(), b.upper.clone()), (r(48, 25), r(51, 25)));
        assert_eq!((b.lower_level, b.upper_level), (2, 2));
        assert!(b.contains(&r(2, 1)));

        let s = synthetic(5, &[Finite(0)], &["X^7"]);
        let b = bounds(&s).unwrap();
        assert_eq!((b.lower, b.upper), (r(0, 1), r(2, 5)));
    }

    #[test]
    fn bounds_skip_non_pure_levels() {
        let s = synthetic(2, &[Finite(1), NotFPure], &["X"]);
        assert_eq!(bounds(&s).unwrap().lower_level, 1);
        let s = synthetic(2, &[NotFPure, NotFPure], &["X"]);
        assert_eq!(bounds(&s), Err(EstimatorError::AllLevelsNotFPure));
    }

    #[test]
    fn sequence_validation() {
        let pair = IdealPair::parse(&ring(2, &["X", "Y"]), &["X"], None).unwrap();
        let prime = pair.ring().prime();
        let rec = |e, nu| NuRecord {
            level: BracketLevel::new(prime, e).unwrap(),
            nu,
            witness: None,
        };
        assert_eq!(NuSequence::new(pair.clone(), vec![]), Err(EstimatorError::NoLevels));
        assert_eq!(
            NuSequence::new(pair.clone(), vec![rec(2, Finite(1))]),
            Err(EstimatorError::NonConsecutive)
        );
        assert_eq!(
            NuSequence::new(pair.clone(), vec![rec(1, NotFPure), rec(2, Finite(1))]),
            Err(EstimatorError::PurityRegression { e: 2 })
        );
        let other = BracketLevel::new(PrimeChar::new(3).unwrap(), 1).unwrap();
        assert_eq!(
            NuSequence::new(pair, vec![NuRecord { level: other, nu: Finite(1), witness: None }]),
            Err(EstimatorError::PrimeMismatch)
        );
    }

    #[test]
    fn conjecture_examples() {
        let s = synthetic(5, &[Finite(4), Finite(24), Finite(124)], &["X"]);
        let g = conjecture(&s).unwrap();
        assert_eq!((g.limit, g.confirmed_steps, g.e0), (r(1, 1), 2, 1));
        assert_eq!(g.status.to_string(), "CONJECTURED");

        let s = synthetic(2, &[Finite(1), Finite(4), Finite(8)], &["X"]);
        assert_eq!(conjecture(&s), None);

        // Constant only from e = 2 on.
        let s = synthetic(2, &[Finite(1), Finite(2), Finite(5), Finite(11)], &["X"]);
        let g = conjecture(&s).unwrap();
        assert_eq!((g.e0, g.delta, g.confirmed_steps, g.limit), (2, 1, 2, r(3, 4)));

        assert_eq!(conjecture(&synthetic(5, &[Finite(4)], &["X"])), None);
    }

    #[test]
    fn envelope_on_e8() {
        let seq = nu_sequence(&e8(7), 3, &NuConfig::default()).unwrap();
        assert_eq!(seq.values(), vec![Finite(1), Finite(8), Finite(57)]);
        assert!(seq.envelope_holds());
        assert_eq!(conjecture(&seq).unwrap().limit, r(1, 6));
        assert!(!synthetic(2, &[Finite(0), Finite(5)], &["X"]).envelope_holds());
    }

    #[derive(Default)]
    struct MemCache {
        hits: RefCell<u32>,
        store: RefCell<Vec<NuRecord>>,
    }

    impl LevelCache for MemCache {
        fn get(&self, _: &IdealPair, lvl: &BracketLevel) -> Option<NuRecord> {
            let hit = self.store.borrow().iter().find(|r| r.level == *lvl).cloned();
            if hit.is_some() {
                *self.hits.borrow_mut() += 1;
            }
            hit
        }
        fn put(&self, _: &IdealPair, rec: &NuRecord) {
            self.store.borrow_mut().push(rec.clone());
        }
    }

    #[test]
    fn cache_is_consulted() {
        let pair = IdealPair::parse(&ring(3, &["X", "Y"]), &["X^2", "Y"], None).unwrap();
        let cache = MemCache::default();
        let cfg = NuConfig::default();
        let first = nu_sequence_with(&pair, 2, &cfg, Some(&cache)).unwrap();
        let second = nu_sequence_with(&pair, 3, &cfg, Some(&cache)).unwrap();
        assert_eq!(*cache.hits.borrow(), 2);
        assert_eq!(first.records(), &second.records()[..2]);
        assert_eq!(second, nu_sequence(&pair, 3, &cfg).unwrap());
    }

    #[test]
    fn resource_limit_keeps_partial_levels() {
        let pair = IdealPair::parse(&ring(3, &["X", "Y"]), &["X+Y", "X*Y"], None).unwrap();
        let mut cfg = NuConfig::default();
        cfg.budget.max_tuples = 40;
        match nu_sequence(&pair, 3, &cfg) {
            Err(EstimatorError::Incomplete { partial, .. }) => assert!(partial.len() < 3),
            other => panic!("expected a resource limit, got {other:?}"),
        }
    }
}
