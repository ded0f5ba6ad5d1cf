use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::{PolyError, PrimeChar};

/// Exponents of a monomial, one entry per ring variable.
///
/// The derived ordering is lexicographic, which is the canonical term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExponentVector(SmallVec<[u32; 4]>);

impl ExponentVector {
    pub fn zero(d: usize) -> Self {
        ExponentVector(SmallVec::from_elem(0, d))
    }

    pub fn unit(d: usize, i: usize) -> Self {
        let mut v = Self::zero(d);
        v.0[i] = 1;
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Componentwise `self <= other`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            out.push(a.checked_add(*b)?);
        }
        Some(ExponentVector(out))
    }

    /// Sum of two exponent vectors, or `None` when some coordinate reaches `q`.
    #[inline]
    fn add_below(&self, other: &Self, q: u32) -> Option<Self> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            let s = a + b;
            if s >= q {
                return None;
            }
            out.push(s);
        }
        Some(ExponentVector(out))
    }

    #[inline]
    fn below(&self, q: u32) -> bool {
        self.0.iter().all(|&x| x < q)
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(SmallVec::from_vec(v))
    }
}

impl From<&[u32]> for ExponentVector {
    fn from(v: &[u32]) -> Self {
        ExponentVector(SmallVec::from_slice(v))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// `F_p[X_1, ..., X_d]` with named variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    prime: PrimeChar,
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new(prime: PrimeChar, vars: Vec<String>) -> Result<Arc<Self>, PolyError> {
        if vars.is_empty() {
            return Err(PolyError::NoVariables);
        }
        for (i, v) in vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(PolyError::BadVariableName(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(PolyError::DuplicateVariable(v.clone()));
            }
        }
        Ok(Arc::new(PolyRing { prime, vars }))
    }

    pub fn prime(&self) -> PrimeChar {
        self.prime
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

/// The bracket level `q = p^e`, `e >= 1`, naming the ideal `m^[q] = (X_1^q, ..., X_d^q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BracketLevel {
    prime: PrimeChar,
    e: u32,
    q: u32,
}

impl BracketLevel {
    pub fn new(prime: PrimeChar, e: u32) -> Result<Self, PolyError> {
        if e == 0 {
            return Err(PolyError::BadLevel { p: prime.get(), e });
        }
        let q = prime
            .get()
            .checked_pow(e)
            .ok_or(PolyError::BadLevel { p: prime.get(), e })?;
        Ok(BracketLevel { prime, e, q })
    }

    pub fn prime(&self) -> PrimeChar {
        self.prime
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }
}

impl fmt::Display for BracketLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={}^{}={}", self.prime, self.e, self.q)
    }
}

/// A polynomial over `F_p` in canonical form: terms sorted lexicographically
/// by exponent vector, no zero coefficients, the zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    ring: Arc<PolyRing>,
    terms: Vec<(ExponentVector, u32)>,
}

impl SparsePoly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        SparsePoly {
            ring: Arc::clone(ring),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &Arc<PolyRing>, c: u64) -> Self {
        Self::monomial(ring, ExponentVector::zero(ring.dim()), c)
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::monomial(ring, ExponentVector::unit(ring.dim(), i), 1)
    }

    pub fn monomial(ring: &Arc<PolyRing>, exps: ExponentVector, c: u64) -> Self {
        assert_eq!(exps.len(), ring.dim(), "exponent vector length");
        let c = ring.prime().reduce(c);
        let terms = if c == 0 { Vec::new() } else { vec![(exps, c)] };
        SparsePoly {
            ring: Arc::clone(ring),
            terms,
        }
    }

    /// Builds the canonical form from arbitrary terms, combining duplicates.
    pub fn from_terms<I>(ring: &Arc<PolyRing>, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, u64)>,
    {
        let p = ring.prime();
        let mut acc: FxHashMap<ExponentVector, u32> = FxHashMap::default();
        for (e, c) in terms {
            assert_eq!(e.len(), ring.dim(), "exponent vector length");
            let c = p.reduce(c);
            let slot = acc.entry(e).or_insert(0);
            *slot = p.add(*slot, c);
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<PolyRing>, acc: FxHashMap<ExponentVector, u32>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        SparsePoly {
            ring: Arc::clone(ring),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(ExponentVector, u32)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_term(&self) -> u32 {
        match self.terms.first() {
            Some((e, c)) if e.is_zero() => *c,
            _ => 0,
        }
    }

    pub fn total_degree(&self) -> Result<u64, PolyError> {
        self.terms
            .iter()
            .map(|(e, _)| e.total_degree())
            .max()
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// Smallest total degree among the terms (the `m`-adic order).
    pub fn min_degree(&self) -> Result<u64, PolyError> {
        self.terms
            .iter()
            .map(|(e, _)| e.total_degree())
            .min()
            .ok_or(PolyError::ZeroPolynomial)
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "polynomials from different rings"
        );
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.ring.prime();
        let c = p.reduce(c);
        if c == 0 {
            return Self::zero(&self.ring);
        }
        SparsePoly {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), p.mul(*x, c))).collect(),
        }
    }

    /// Unreduced power by square-and-multiply.
    pub fn pow(&self, mut n: u64) -> Result<Self, PolyError> {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other);
        let p = self.ring.prime();
        let mut acc: FxHashMap<ExponentVector, u32> = FxHashMap::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.checked_add(eb).ok_or(PolyError::ExponentOverflow)?;
                let slot = acc.entry(e).or_insert(0);
                *slot = p.add(*slot, p.mul(*ca, *cb));
            }
        }
        Ok(Self::from_map(&self.ring, acc))
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        self.check_ring(other);
        let p = self.ring.prime();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: u32| if negate_other { p.neg(c) } else { c };
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0.clone(), sign(b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = p.add(a[i].1, sign(b[j].1));
                    if c != 0 {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        SparsePoly {
            ring: Arc::clone(&self.ring),
            terms: out,
        }
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.combine(rhs, false)
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.combine(rhs, true)
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        let p = self.ring.prime();
        SparsePoly {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), p.neg(*c))).collect(),
        }
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    /// Panics on exponent overflow; use [`SparsePoly::checked_mul`] for untrusted input.
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_mul(rhs).expect("exponent overflow")
    }
}

/// Canonical text: terms in descending lex order, `c*X^a*Y^b`, parseable by
/// [`super::parse_poly`].
impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                write!(f, "+")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || e.is_zero() {
                factors.push(c.to_string());
            }
            for (v, &x) in self.ring.vars.iter().zip(e.as_slice()) {
                match x {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{x}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Deletes every term with some exponent `>= q`: the canonical representative
/// of `f` modulo `m^[q]`.
pub fn reduce_mod_bracket(f: &SparsePoly, lvl: &BracketLevel) -> SparsePoly {
    debug_assert_eq!(f.ring.prime(), lvl.prime());
    let q = lvl.q();
    SparsePoly {
        ring: Arc::clone(&f.ring),
        terms: f.terms.iter().filter(|(e, _)| e.below(q)).cloned().collect(),
    }
}

/// `reduce_mod_bracket(f * g)`, dropping each product term as soon as it
/// lands in `m^[q]`.
pub fn mul_reduced(f: &SparsePoly, g: &SparsePoly, lvl: &BracketLevel) -> SparsePoly {
    f.check_ring(g);
    let q = lvl.q();
    let p = f.ring.prime();
    let (small, big) = if f.terms.len() <= g.terms.len() { (f, g) } else { (g, f) };
    if small.terms.is_empty() {
        return SparsePoly::zero(&f.ring);
    }
    if small.terms.len() == 1 {
        // Translation preserves lex order, so the result is already sorted.
        let (es, cs) = &small.terms[0];
        let terms = big
            .terms
            .iter()
            .filter_map(|(e, c)| e.add_below(es, q).map(|s| (s, p.mul(*c, *cs))))
            .collect();
        return SparsePoly {
            ring: Arc::clone(&f.ring),
            terms,
        };
    }
    let mut acc: FxHashMap<ExponentVector, u32> = FxHashMap::default();
    for (ea, ca) in &small.terms {
        if !ea.below(q) {
            continue;
        }
        for (eb, cb) in &big.terms {
            if let Some(e) = ea.add_below(eb, q) {
                let slot = acc.entry(e).or_insert(0);
                *slot = p.add(*slot, p.mul(*ca, *cb));
            }
        }
    }
    SparsePoly::from_map(&f.ring, acc)
}

/// `reduce_mod_bracket(f^n)` by square-and-multiply, reducing after every product.
pub fn pow_reduced(f: &SparsePoly, mut n: u64, lvl: &BracketLevel) -> SparsePoly {
    let mut acc = reduce_mod_bracket(&SparsePoly::one(&f.ring), lvl);
    let mut base = reduce_mod_bracket(f, lvl);
    while n > 0 {
        if n & 1 == 1 {
            acc = mul_reduced(&acc, &base, lvl);
        }
        n >>= 1;
        if n > 0 {
            if base.is_zero() {
                return SparsePoly::zero(&f.ring);
            }
            base = mul_reduced(&base, &base, lvl);
        }
    }
    acc
}

/// Whether `f * g` survives modulo `m^[q]`, with early exit when either side is a monomial.
pub fn product_survives(f: &SparsePoly, g: &SparsePoly, lvl: &BracketLevel) -> bool {
    let q = lvl.q();
    let (small, big) = if f.terms.len() <= g.terms.len() { (f, g) } else { (g, f) };
    match small.terms.len() {
        0 => false,
        1 => {
            let es = &small.terms[0].0;
            big.terms.iter().any(|(e, _)| e.add_below(es, q).is_some())
        }
        _ => !mul_reduced(f, g, lvl).is_zero(),
    }
}
