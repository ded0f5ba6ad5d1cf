//! Brute-force reference for [`super::nu_level`].
//!
//! Shares nothing with the fast path beyond the input types: its own term
//! maps, its own multiplication, ascending `k` with every tuple rebuilt from
//! scratch, no memo and no pruning.

use std::collections::BTreeMap;

use super::{IdealPair, NuError, NuRecord, NuValue};
use crate::ffpoly::{BracketLevel, SparsePoly};

/// Default cap on `d(q-1)` accepted by [`oracle_nu`].
pub const DEFAULT_ORACLE_BOUND: u64 = 64;

type Terms = BTreeMap<Vec<u32>, u64>;

fn to_terms(f: &SparsePoly) -> Terms {
    f.terms()
        .iter()
        .map(|(e, c)| (e.as_slice().to_vec(), u64::from(*c)))
        .collect()
}

// Full product, then delete every term with an exponent >= q.
fn mul_truncate(a: &Terms, b: &Terms, p: u64, q: u32) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = out.entry(e).or_insert(0);
            *slot = (*slot + ca * cb) % p;
        }
    }
    out.retain(|e, c| *c != 0 && e.iter().all(|&x| x < q));
    out
}

fn compositions(k: u64, parts: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if parts == 1 {
        prefix.push(k);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for l in 0..=k {
        prefix.push(l);
        compositions(k - l, parts - 1, prefix, out);
        prefix.pop();
    }
}

/// Same contract as [`super::nu_level`], by exhaustive enumeration. Refuses
/// instances with `d(q-1) > bound`.
pub fn oracle_nu(pair: &IdealPair, lvl: &BracketLevel, bound: u64) -> Result<NuRecord, NuError> {
    pair.check_level(lvl)?;
    let p = u64::from(lvl.prime().get());
    let q = lvl.q();
    let cap = pair.dim() as u64 * (u64::from(q) - 1);
    if cap > bound {
        return Err(NuError::ResourceLimit {
            resource: "oracle d(q-1)",
            limit: bound,
        });
    }
    let d = pair.dim();
    let mut one = Terms::new();
    one.insert(vec![0; d], 1);
    let mut base = one.clone();
    if let Some(f) = pair.multiplier() {
        let f = to_terms(f);
        for _ in 0..q - 1 {
            base = mul_truncate(&base, &f, p, q);
        }
    }
    if base.is_empty() {
        return Ok(NuRecord {
            level: *lvl,
            nu: NuValue::NotFPure,
            witness: None,
        });
    }
    let gens: Vec<Terms> = pair.gens().iter().map(to_terms).collect();

    let mut best: Option<(u64, Vec<u64>)> = None;
    for k in 0..=cap {
        let mut tuples = Vec::new();
        compositions(k, gens.len(), &mut Vec::new(), &mut tuples);
        let hit = tuples.into_iter().find(|tuple| {
            let mut prod = base.clone();
            for (g, &l) in gens.iter().zip(tuple) {
                for _ in 0..l {
                    prod = mul_truncate(&prod, g, p, q);
                }
            }
            !prod.is_empty()
        });
        match hit {
            Some(w) => best = Some((k, w)),
            None => break,
        }
    }
    let (nu, witness) = best.expect("k = 0 survives because F does");
    Ok(NuRecord {
        level: *lvl,
        nu: NuValue::Finite(nu),
        witness: Some(witness),
    })
}
