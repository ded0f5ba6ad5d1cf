//! Fedder-type membership tests: the ν-function of an ideal pair at a bracket
//! level, and F-purity checks at a fixed exponent.
//!
//! A pair is an ideal `a = (g_1, ..., g_m)` of `R = F_p[X_1..X_d]` together with
//! an optional principal hypersurface `I = (f)`. Since `R` is a UFD,
//! `I^[q] : I = (f^(q-1))`, so the level-`q` quantity is
//!
//! ```text
//! ν(q) = max { k : F · a^k ⊄ m^[q] },   F = f^(q-1) or 1.
//! ```

mod nu;
mod oracle;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::ffpoly::{parse_poly, BracketLevel, ParseError, PolyRing, SparsePoly};
use crate::ExecMode;

pub use nu::{fedder_fpure_at, nu_level};
pub use oracle::{oracle_nu, DEFAULT_ORACLE_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("an ideal needs at least one generator")]
    NoGenerators,
    #[error("generator {0} is zero")]
    ZeroGenerator(usize),
    #[error("generator {0} has a nonzero constant term, so the ideal is not inside the maximal ideal")]
    UnitGenerator(usize),
    #[error("the hypersurface equation is zero")]
    ZeroMultiplier,
    #[error("the hypersurface equation has a nonzero constant term")]
    UnitMultiplier,
    #[error("all polynomials of a pair must live in the same ring")]
    RingMismatch,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NuError {
    #[error("resource limit exceeded: {resource} over {limit}")]
    ResourceLimit { resource: &'static str, limit: u64 },
    #[error("bracket level has characteristic {level}, ring has {ring}")]
    PrimeMismatch { level: u32, ring: u32 },
    #[error("threshold exponent must be nonnegative")]
    NegativeExponent,
}

/// Generators of `a`, plus the optional equation `f` of the hypersurface `R/(f)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealPair {
    ring: Arc<PolyRing>,
    gens: Vec<SparsePoly>,
    multiplier: Option<SparsePoly>,
}

impl IdealPair {
    pub fn new(
        ring: &Arc<PolyRing>,
        gens: Vec<SparsePoly>,
        multiplier: Option<SparsePoly>,
    ) -> Result<Self, PairError> {
        if gens.is_empty() {
            return Err(PairError::NoGenerators);
        }
        for (i, g) in gens.iter().enumerate() {
            if g.ring() != ring {
                return Err(PairError::RingMismatch);
            }
            if g.is_zero() {
                return Err(PairError::ZeroGenerator(i));
            }
            if g.constant_term() != 0 {
                return Err(PairError::UnitGenerator(i));
            }
        }
        if let Some(f) = &multiplier {
            if f.ring() != ring {
                return Err(PairError::RingMismatch);
            }
            if f.is_zero() {
                return Err(PairError::ZeroMultiplier);
            }
            if f.constant_term() != 0 {
                return Err(PairError::UnitMultiplier);
            }
        }
        Ok(IdealPair {
            ring: Arc::clone(ring),
            gens,
            multiplier,
        })
    }

    /// Convenience constructor from polynomial text.
    pub fn parse(ring: &Arc<PolyRing>, gens: &[&str], multiplier: Option<&str>) -> Result<Self, PairError> {
        let gens = gens
            .iter()
            .map(|g| parse_poly(g, ring))
            .collect::<Result<Vec<_>, _>>()?;
        let multiplier = multiplier.map(|f| parse_poly(f, ring)).transpose()?;
        Self::new(ring, gens, multiplier)
    }

    /// The maximal ideal `(X_1, ..., X_d)`, optionally on a hypersurface.
    pub fn maximal(ring: &Arc<PolyRing>, multiplier: Option<SparsePoly>) -> Result<Self, PairError> {
        let gens = (0..ring.dim()).map(|i| SparsePoly::var(ring, i)).collect();
        Self::new(ring, gens, multiplier)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[SparsePoly] {
        &self.gens
    }

    pub fn multiplier(&self) -> Option<&SparsePoly> {
        self.multiplier.as_ref()
    }

    /// Number of generators, μ.
    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn dim(&self) -> usize {
        self.ring.dim()
    }

    /// Minimum over generators of their lowest term degree. Equals `ord_m(a)`
    /// unless lowest forms cancel across generators; it is always a lower bound.
    pub fn ord(&self) -> u64 {
        self.gens
            .iter()
            .map(|g| g.min_degree().expect("generators are nonzero"))
            .min()
            .expect("at least one generator")
    }

    /// `a^n`, presented by all n-fold products of generators (multisets in
    /// lexicographic index order).
    pub fn power(&self, n: usize) -> Self {
        assert!(n >= 1, "power exponent must be positive");
        let m = self.gens.len();
        let mut out = Vec::new();
        let mut idx = vec![0usize; n];
        loop {
            let prod = idx
                .iter()
                .fold(SparsePoly::one(&self.ring), |acc, &i| &acc * &self.gens[i]);
            if !prod.is_zero() {
                out.push(prod);
            }
            // Next non-decreasing index sequence.
            let Some(pos) = (0..n).rev().find(|&j| idx[j] + 1 < m) else { break };
            let v = idx[pos] + 1;
            idx[pos..].fill(v);
        }
        IdealPair {
            ring: Arc::clone(&self.ring),
            gens: out,
            multiplier: self.multiplier.clone(),
        }
    }

    /// `a + b` by concatenating generators; the hypersurface must agree.
    pub fn sum(&self, other: &Self) -> Result<Self, PairError> {
        if self.ring != other.ring || self.multiplier != other.multiplier {
            return Err(PairError::RingMismatch);
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Self::new(&self.ring, gens, self.multiplier.clone())
    }

    pub(crate) fn check_level(&self, lvl: &BracketLevel) -> Result<(), NuError> {
        if lvl.prime() != self.ring.prime() {
            return Err(NuError::PrimeMismatch {
                level: lvl.prime().get(),
                ring: self.ring.prime().get(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for IdealPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))?;
        if let Some(h) = &self.multiplier {
            write!(f, " on V({h})")?;
        }
        write!(f, " over F_{}", self.ring.prime())
    }
}

/// ν at one level: a number, or the marker that `F` itself already lies in `m^[q]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NuValue {
    Finite(u64),
    NotFPure,
}

impl NuValue {
    pub fn finite(self) -> Option<u64> {
        match self {
            NuValue::Finite(n) => Some(n),
            NuValue::NotFPure => None,
        }
    }
}

impl fmt::Display for NuValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NuValue::Finite(n) => write!(f, "{n}"),
            NuValue::NotFPure => write!(f, "not-F-pure"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NuRecord {
    pub level: BracketLevel,
    pub nu: NuValue,
    /// Exponents `(l_1..l_m)` with `Σ l_i = ν` whose product survives; present
    /// exactly when `nu` is finite.
    pub witness: Option<Vec<u64>>,
}

/// Caps on work; exceeding one is reported as [`NuError::ResourceLimit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest number of terms allowed in any reduced intermediate polynomial.
    pub max_terms: usize,
    /// Largest number of DFS nodes visited by one `nu_level` call.
    pub max_tuples: u64,
    /// Terms kept in the prefix-product memo before it stops growing.
    pub memo_terms: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_terms: 2_000_000,
            max_tuples: 200_000_000,
            memo_terms: 20_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NuConfig {
    pub budget: Budget,
    pub mode: ExecMode,
}

#[cfg(test)]
mod tests;
