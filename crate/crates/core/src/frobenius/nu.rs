use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use num_traits::{Signed, ToPrimitive};
use rustc_hash::FxHashMap;

use super::{IdealPair, NuConfig, NuError, NuRecord, NuValue};
use crate::ffpoly::{mul_reduced, pow_reduced, product_survives, reduce_mod_bracket, BracketLevel, SparsePoly};
use crate::{par, ExecMode, Rational};

/// Largest `k` with `F · g_1^l_1 ⋯ g_m^l_m ∉ m^[q]` for some `Σ l_i = k`.
///
/// Membership of `F · a^k` in `m^[q]` is monotone in `k`, so the search
/// doubles `k` until the first failure and then bisects. Each probe is a
/// depth-first walk over exponent tuples in lexicographic order; prefix
/// products are memoized across probes, and a prefix whose product already
/// vanishes cuts off its whole subtree.
pub fn nu_level(pair: &IdealPair, lvl: &BracketLevel, cfg: &NuConfig) -> Result<NuRecord, NuError> {
    pair.check_level(lvl)?;
    let q = u64::from(lvl.q());
    let base = match pair.multiplier() {
        Some(f) => pow_reduced(f, q - 1, lvl),
        None => reduce_mod_bracket(&SparsePoly::one(pair.ring()), lvl),
    };
    if base.is_zero() {
        return Ok(NuRecord {
            level: *lvl,
            nu: NuValue::NotFPure,
            witness: None,
        });
    }
    let mut search = Search::new(pair, *lvl, base, cfg)?;
    // Every generator lies in m, and m^(d(q-1)+1) ⊆ m^[q].
    let cap = pair.dim() as u64 * (q - 1);

    let mut lo = 0u64;
    let mut lo_witness = vec![0u64; pair.num_gens()];
    let mut hi = cap + 1;
    let mut k = 1u64;
    while k <= cap {
        match search.probe(k)? {
            Some(w) => {
                lo = k;
                lo_witness = w;
                k *= 2;
            }
            None => {
                hi = k;
                break;
            }
        }
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match search.probe(mid)? {
            Some(w) => {
                lo = mid;
                lo_witness = w;
            }
            None => hi = mid,
        }
    }
    Ok(NuRecord {
        level: *lvl,
        nu: NuValue::Finite(lo),
        witness: Some(lo_witness),
    })
}

/// Fedder's test at one level: `a^⌊t(q-1)⌋ (I^[q] : I) ⊄ m^[q]`.
///
/// A `true` answer at one level is evidence for F-purity of `(R, a^t)`, not a
/// proof; the definition quantifies over all large `q`.
pub fn fedder_fpure_at(pair: &IdealPair, t: &Rational, lvl: &BracketLevel, cfg: &NuConfig) -> Result<bool, NuError> {
    if t.is_negative() {
        return Err(NuError::NegativeExponent);
    }
    let scaled = t * Rational::from_integer((u64::from(lvl.q()) - 1).into());
    let k = scaled.floor().to_integer();
    let rec = nu_level(pair, lvl, cfg)?;
    Ok(match (rec.nu, k.to_u64()) {
        (NuValue::NotFPure, _) => false,
        (NuValue::Finite(nu), Some(k)) => k <= nu,
        (NuValue::Finite(_), None) => false,
    })
}

type Poly = Arc<SparsePoly>;

struct Search<'a> {
    gens: &'a [SparsePoly],
    lvl: BracketLevel,
    base: Poly,
    cfg: &'a NuConfig,
    /// `powers[i][l] = g_i^l mod m^[q]`; a list ends early once a power vanishes.
    powers: Vec<Vec<Poly>>,
    memo: Mutex<FxHashMap<Vec<u64>, Poly>>,
    memo_terms: AtomicUsize,
    visited: AtomicU64,
}

impl<'a> Search<'a> {
    fn new(pair: &'a IdealPair, lvl: BracketLevel, base: SparsePoly, cfg: &'a NuConfig) -> Result<Self, NuError> {
        let s = Search {
            gens: pair.gens(),
            lvl,
            base: Arc::new(base),
            cfg,
            powers: pair
                .gens()
                .iter()
                .map(|g| vec![Arc::new(reduce_mod_bracket(&SparsePoly::one(g.ring()), &lvl))])
                .collect(),
            memo: Mutex::new(FxHashMap::default()),
            memo_terms: AtomicUsize::new(0),
            visited: AtomicU64::new(0),
        };
        s.check_terms(&s.base)?;
        Ok(s)
    }

    fn check_terms(&self, f: &SparsePoly) -> Result<(), NuError> {
        let limit = self.cfg.budget.max_terms;
        if f.num_terms() > limit {
            return Err(NuError::ResourceLimit {
                resource: "reduced polynomial terms",
                limit: limit as u64,
            });
        }
        Ok(())
    }

    fn visit(&self) -> Result<(), NuError> {
        let limit = self.cfg.budget.max_tuples;
        if self.visited.fetch_add(1, Ordering::Relaxed) >= limit {
            return Err(NuError::ResourceLimit {
                resource: "visited exponent tuples",
                limit,
            });
        }
        Ok(())
    }

    fn extend_powers(&mut self, k: u64) -> Result<(), NuError> {
        for i in 0..self.gens.len() {
            loop {
                let list = &self.powers[i];
                let last = list.last().expect("g^0 is always present");
                if list.len() as u64 > k || last.is_zero() {
                    break;
                }
                let next = mul_reduced(last, &self.gens[i], &self.lvl);
                self.check_terms(&next)?;
                self.powers[i].push(Arc::new(next));
            }
        }
        Ok(())
    }

    /// `g_i^l`, or `None` if it vanishes modulo `m^[q]`.
    fn power(&self, i: usize, l: u64) -> Option<&Poly> {
        let list = &self.powers[i];
        match list.get(l as usize) {
            Some(p) if !p.is_zero() => Some(p),
            Some(_) => None,
            None => {
                debug_assert!(list.last().is_some_and(|p| p.is_zero()));
                None
            }
        }
    }

    /// A surviving tuple with `Σ l_i = k`, the lexicographically first one.
    fn probe(&mut self, k: u64) -> Result<Option<Vec<u64>>, NuError> {
        self.extend_powers(k)?;
        let this = &*self;
        let m = this.gens.len();
        if m == 1 {
            this.visit()?;
            let hit = this.power(0, k).is_some_and(|g| product_survives(&this.base, g, &this.lvl));
            return Ok(hit.then(|| vec![k]));
        }
        match this.cfg.mode {
            ExecMode::Sequential => this.dfs(0, &mut Vec::with_capacity(m), &this.base, k),
            ExecMode::Parallel => {
                let found = par::find_map_first(ExecMode::Parallel, (0..=k).collect(), |l| {
                    let step = || -> Result<Option<Vec<u64>>, NuError> {
                        this.visit()?;
                        let mut prefix = vec![l];
                        let Some(child) = this.child(&prefix, &this.base, 0, l)? else {
                            return Ok(None);
                        };
                        this.dfs(1, &mut prefix, &child, k - l)
                    };
                    match step() {
                        Ok(None) => None,
                        other => Some(other),
                    }
                });
                found.unwrap_or(Ok(None))
            }
        }
    }

    /// Product for `prefix` (whose last entry is `l` for generator `i`) from
    /// the parent product; `None` when it vanishes.
    fn child(&self, prefix: &[u64], parent: &SparsePoly, i: usize, l: u64) -> Result<Option<Poly>, NuError> {
        if let Some(hit) = self.memo.lock().expect("memo lock").get(prefix) {
            return Ok((!hit.is_zero()).then(|| Arc::clone(hit)));
        }
        let prod = match self.power(i, l) {
            Some(g) => mul_reduced(parent, g, &self.lvl),
            None => SparsePoly::zero(parent.ring()),
        };
        self.check_terms(&prod)?;
        let prod = Arc::new(prod);
        let size = prod.num_terms().max(1);
        if self.memo_terms.load(Ordering::Relaxed) + size <= self.cfg.budget.memo_terms {
            self.memo_terms.fetch_add(size, Ordering::Relaxed);
            self.memo
                .lock()
                .expect("memo lock")
                .insert(prefix.to_vec(), Arc::clone(&prod));
        }
        Ok((!prod.is_zero()).then_some(prod))
    }

    fn dfs(&self, i: usize, prefix: &mut Vec<u64>, acc: &SparsePoly, rem: u64) -> Result<Option<Vec<u64>>, NuError> {
        let last = self.gens.len() - 1;
        if i == last {
            self.visit()?;
            let hit = self.power(i, rem).is_some_and(|g| product_survives(acc, g, &self.lvl));
            if hit {
                let mut w = prefix.clone();
                w.push(rem);
                return Ok(Some(w));
            }
            return Ok(None);
        }
        for l in 0..=rem {
            self.visit()?;
            prefix.push(l);
            let child = self.child(prefix, acc, i, l)?;
            let found = match child {
                // acc · g_i^l ∈ m^[q] implies the same for every larger l.
                None => {
                    prefix.pop();
                    break;
                }
                Some(c) => self.dfs(i + 1, prefix, &c, rem - l)?,
            };
            prefix.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}
