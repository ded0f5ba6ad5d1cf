//! Problems as they arrive on the command line, and their canonical form.
//!
//! The canonical form is a JSON object with sorted keys whose polynomial
//! texts are the ring's normal form, so two spellings of the same pair
//! (`x*y + 0` vs `x*y`) share a digest. Generator order is kept because
//! witnesses are indexed by it.

use std::sync::Arc;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use fptkit::ffpoly::{is_prime, PolyRing, PrimeChar};
use fptkit::frobenius::IdealPair;

use crate::Failure;

/// Splits a comma-separated variable list.
pub fn parse_vars(flag: &str, text: &str) -> Result<Vec<String>, Failure> {
    let vars: Vec<String> = text.split(',').map(|v| v.trim().to_string()).collect();
    if vars.iter().any(String::is_empty) {
        return Err(Failure::usage(format!("{flag}: empty variable name in '{text}'")));
    }
    Ok(vars)
}

pub fn parse_prime(flag: &str, p: u64) -> Result<PrimeChar, Failure> {
    if !is_prime(p) {
        return Err(Failure::usage(format!("{flag}: {p} is not a prime")));
    }
    PrimeChar::new(p).map_err(|e| Failure::usage(format!("{flag}: {e}")))
}

pub fn make_ring(prime: PrimeChar, vars: Vec<String>) -> Result<Arc<PolyRing>, Failure> {
    PolyRing::new(prime, vars).map_err(|e| Failure::usage(format!("--vars: {e}")))
}

/// Builds the pair from `--gens "g1;g2"` and an optional `--multiplier`.
pub fn parse_pair(ring: &Arc<PolyRing>, gens: &str, multiplier: Option<&str>) -> Result<IdealPair, Failure> {
    let texts: Vec<&str> = gens.split(';').map(str::trim).collect();
    let mut polys = Vec::with_capacity(texts.len());
    for (i, t) in texts.iter().enumerate() {
        let f = fptkit::ffpoly::parse_poly(t, ring)
            .map_err(|e| Failure::usage(format!("--gens: generator {} '{t}': {e}", i + 1)))?;
        polys.push(f);
    }
    let h = multiplier
        .map(|t| fptkit::ffpoly::parse_poly(t, ring).map_err(|e| Failure::usage(format!("--multiplier: {e}"))))
        .transpose()?;
    IdealPair::new(ring, polys, h).map_err(|e| {
        let flag = match e {
            fptkit::frobenius::PairError::ZeroMultiplier | fptkit::frobenius::PairError::UnitMultiplier => {
                "--multiplier"
            }
            _ => "--gens",
        };
        Failure::usage(format!("{flag}: {e}"))
    })
}

/// `{"gens":[…],"multiplier":…,"prime":p,"vars":[…]}` with sorted keys.
pub fn canonical(pair: &IdealPair) -> Value {
    let ring = pair.ring();
    json!({
        "gens": pair.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "multiplier": pair.multiplier().map(|h| h.to_string()),
        "prime": ring.prime().get(),
        "vars": ring.vars(),
    })
}

/// Rebuilds a pair from its canonical JSON (or any object with the same keys).
pub fn pair_from_canonical(v: &Value) -> Result<IdealPair, Failure> {
    let bad = |what: &str| Failure::usage(format!("canonical problem: bad or missing '{what}'"));
    let p = v["prime"].as_u64().ok_or_else(|| bad("prime"))?;
    let vars: Vec<String> = v["vars"]
        .as_array()
        .ok_or_else(|| bad("vars"))?
        .iter()
        .map(|x| x.as_str().map(str::to_string).ok_or_else(|| bad("vars")))
        .collect::<Result<_, _>>()?;
    let gens: Vec<&str> = v["gens"]
        .as_array()
        .ok_or_else(|| bad("gens"))?
        .iter()
        .map(|x| x.as_str().ok_or_else(|| bad("gens")))
        .collect::<Result<_, _>>()?;
    let multiplier = match &v["multiplier"] {
        Value::Null => None,
        Value::String(s) => Some(s.as_str()),
        _ => return Err(bad("multiplier")),
    };
    let ring = make_ring(parse_prime("prime", p)?, vars)?;
    parse_pair(&ring, &gens.join(";"), multiplier)
}

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Digest of the canonical problem.
pub fn digest(pair: &IdealPair) -> String {
    sha256_hex(&canonical(pair).to_string())
}

/// Cache key of one level. The level budget of a run is not part of it.
pub fn level_key(pair: &IdealPair, e: u32) -> String {
    sha256_hex(&format!("{}#e={e}", canonical(pair)))
}
