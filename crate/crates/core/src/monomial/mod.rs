//! Monomial ideals: Newton polytope, F-pure threshold by exact linear
//! programming, integral closure, height and Hilbert-Samuel multiplicity.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ffpoly::ExponentVector;
use crate::lp::{LinearProgram, LpOutcome};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("a monomial ideal needs at least one generator")]
    Empty,
    #[error("exponent vector has {got} entries, expected {want}")]
    DimensionMismatch { want: usize, got: usize },
    #[error("the constant monomial generates the unit ideal")]
    UnitIdeal,
    #[error("ideal is not m-primary: no pure power of variable {var} lies in it")]
    NotMPrimary { var: usize },
    #[error("resource limit exceeded: {resource} over {limit}")]
    ResourceLimit { resource: &'static str, limit: u64 },
}

/// A proper monomial ideal of `k[X_1..X_d]`, kept as its minimal generators
/// (an antichain under divisibility) in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    d: usize,
    gens: Vec<ExponentVector>,
}

impl MonomialIdeal {
    pub fn new(d: usize, gens: Vec<ExponentVector>) -> Result<Self, MonomialError> {
        if gens.is_empty() {
            return Err(MonomialError::Empty);
        }
        for g in &gens {
            if g.len() != d {
                return Err(MonomialError::DimensionMismatch { want: d, got: g.len() });
            }
            if g.is_zero() {
                return Err(MonomialError::UnitIdeal);
            }
        }
        Ok(MonomialIdeal {
            d,
            gens: minimalize(gens),
        })
    }

    pub fn from_exponents(d: usize, gens: &[&[u32]]) -> Result<Self, MonomialError> {
        Self::new(d, gens.iter().map(|g| ExponentVector::from(*g)).collect())
    }

    /// `m^n` for `m = (X_1, ..., X_d)`.
    pub fn maximal_power(d: usize, n: u32) -> Self {
        let mut gens = Vec::new();
        let mut cur = vec![0u32; d];
        fn fill(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(ExponentVector::from(cur.clone()));
                return;
            }
            for x in 0..=left {
                cur[i] = x;
                fill(i + 1, left - x, cur, out);
            }
        }
        fill(0, n, &mut cur, &mut gens);
        Self::new(d, gens).expect("m^n is a proper monomial ideal for n >= 1")
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn gens(&self) -> &[ExponentVector] {
        &self.gens
    }

    /// Whether `x^u` lies in the ideal.
    pub fn contains_monomial(&self, u: &ExponentVector) -> bool {
        self.gens.iter().any(|g| g.divides(u))
    }

    /// Smallest generator degree, `ord_m(a)`.
    pub fn ord(&self) -> u64 {
        self.gens.iter().map(|g| g.total_degree()).min().unwrap_or(0)
    }

    /// The common generator degree, when all minimal generators share one.
    pub fn equigenerated_degree(&self) -> Option<u64> {
        let d0 = self.gens[0].total_degree();
        self.gens.iter().all(|g| g.total_degree() == d0).then_some(d0)
    }

    /// Smallest exponent `c` with `X_var^c` in the ideal.
    pub fn pure_power(&self, var: usize) -> Option<u32> {
        self.gens
            .iter()
            .filter(|g| g.as_slice().iter().enumerate().all(|(j, &x)| j == var || x == 0))
            .map(|g| g.as_slice()[var])
            .min()
    }

    pub fn is_m_primary(&self) -> bool {
        (0..self.d).all(|j| self.pure_power(j).is_some())
    }

    /// Minkowski product: generators are all pairwise sums.
    pub fn product(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d, "ideals in different rings");
        let mut sums = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                sums.push(a.checked_add(b).expect("exponent overflow"));
            }
        }
        MonomialIdeal {
            d: self.d,
            gens: minimalize(sums),
        }
    }

    pub fn power(&self, n: u32) -> Self {
        assert!(n >= 1, "power exponent must be positive");
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.product(self);
        }
        acc
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d, "ideals in different rings");
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        MonomialIdeal {
            d: self.d,
            gens: minimalize(gens),
        }
    }

    pub fn newton_polytope(&self) -> NewtonPolytope {
        NewtonPolytope {
            d: self.d,
            vertices: self.gens.clone(),
        }
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", parts.join(" "))
    }
}

/// Keeps the divisibility-minimal vectors, sorted lexicographically.
fn minimalize(mut v: Vec<ExponentVector>) -> Vec<ExponentVector> {
    v.sort_unstable_by(|a, b| a.total_degree().cmp(&b.total_degree()).then_with(|| a.cmp(b)));
    v.dedup();
    let mut kept: Vec<ExponentVector> = Vec::new();
    for u in v {
        // Anything dividing u has degree <= deg u and was seen first.
        if !kept.iter().any(|k| k.divides(&u)) {
            kept.push(u);
        }
    }
    kept.sort_unstable();
    kept
}

/// `P(a) = conv{v_i} + R^d_{>=0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolytope {
    d: usize,
    vertices: Vec<ExponentVector>,
}

fn rat(x: u64) -> Rational {
    Rational::from_integer(x.into())
}

impl NewtonPolytope {
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn vertices(&self) -> &[ExponentVector] {
        &self.vertices
    }

    /// Exact membership: is there `μ >= 0`, `Σ μ_i = 1`, with `u >= Σ μ_i v_i`?
    pub fn contains(&self, u: &[Rational]) -> bool {
        assert_eq!(u.len(), self.d, "point dimension");
        if self.vertices.iter().any(|v| {
            v.as_slice().iter().zip(u).all(|(&x, ui)| rat(u64::from(x)) <= *ui)
        }) {
            return true;
        }
        if u.iter().any(|x| x.is_negative()) {
            return false;
        }
        // Columns: μ_1..μ_m, then slacks σ_1..σ_d.
        let m = self.vertices.len();
        let n = m + self.d;
        let mut a = Vec::with_capacity(self.d + 1);
        for j in 0..self.d {
            let mut row = vec![Rational::zero(); n];
            for (i, v) in self.vertices.iter().enumerate() {
                row[i] = rat(u64::from(v.as_slice()[j]));
            }
            row[m + j] = Rational::one();
            a.push(row);
        }
        let mut last = vec![Rational::zero(); n];
        last[..m].fill(Rational::one());
        a.push(last);
        let mut b = u.to_vec();
        b.push(Rational::one());
        let lp = LinearProgram::new(a, b, vec![Rational::zero(); n]).expect("well-formed LP");
        match lp.solve() {
            LpOutcome::Optimal(_) => true,
            LpOutcome::Infeasible => false,
            LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
        }
    }

    pub fn contains_lattice_point(&self, u: &ExponentVector) -> bool {
        let pt: Vec<Rational> = u.as_slice().iter().map(|&x| rat(u64::from(x))).collect();
        self.contains(&pt)
    }
}

/// Optimal solution of the threshold LP with its verified certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FptCertificate {
    pub fpt: Rational,
    /// `s* = 1 / fpt`, the least `s` with `s·(1..1) ∈ P(a)`.
    pub s: Rational,
    /// Convex weights on the generators realizing `Σ μ_i v_i <= s*·(1..1)`.
    pub mu: Vec<Rational>,
    /// Dual multipliers of the coordinate rows, then of `Σ μ_i = 1`.
    pub duals: Vec<Rational>,
    /// Coordinates `j` with `Σ μ_i v_ij = s*`.
    pub active: Vec<usize>,
}

/// `max{t : (1,…,1) ∈ t·P(a)}` as an exact rational.
pub fn fpt_lp(a: &MonomialIdeal) -> Rational {
    fpt_lp_certified(a).fpt
}

/// Solves: minimize `s` subject to `Σ μ_i v_ij <= s` for every coordinate `j`,
/// `Σ μ_i = 1`, `μ >= 0`; then `fpt = 1/s*`. The primal point and the dual
/// vector are re-verified exactly before returning.
pub fn fpt_lp_certified(a: &MonomialIdeal) -> FptCertificate {
    let m = a.gens.len();
    let d = a.d;
    // Columns: μ_1..μ_m, s, σ_1..σ_d.
    let n = m + 1 + d;
    let mut rows = Vec::with_capacity(d + 1);
    for j in 0..d {
        let mut row = vec![Rational::zero(); n];
        for (i, v) in a.gens.iter().enumerate() {
            row[i] = rat(u64::from(v.as_slice()[j]));
        }
        row[m] = -Rational::one();
        row[m + 1 + j] = Rational::one();
        rows.push(row);
    }
    let mut last = vec![Rational::zero(); n];
    last[..m].fill(Rational::one());
    rows.push(last);
    let mut rhs = vec![Rational::zero(); d];
    rhs.push(Rational::one());
    let mut cost = vec![Rational::zero(); n];
    cost[m] = Rational::one();

    let lp = LinearProgram::new(rows, rhs, cost).expect("well-formed LP");
    let sol = match lp.solve() {
        LpOutcome::Optimal(sol) => sol,
        other => panic!("threshold LP is feasible and bounded, solver said {other:?}"),
    };
    lp.verify(&sol).expect("threshold LP certificate");
    let s = sol.value.clone();
    assert!(s.is_positive(), "threshold LP optimum must be positive");
    let mu = sol.x[..m].to_vec();
    let active = (0..d)
        .filter(|&j| {
            let load = a
                .gens
                .iter()
                .zip(&mu)
                .fold(Rational::zero(), |acc, (v, w)| acc + rat(u64::from(v.as_slice()[j])) * w);
            load == s
        })
        .collect();
    FptCertificate {
        fpt: s.recip(),
        s,
        mu,
        duals: sol.y,
        active,
    }
}

/// The monomial integral closure: minimal lattice points of `P(a)`.
///
/// Only the box `[0, M_j]`, `M_j = max_i v_ij`, is scanned: a point of `P(a)`
/// with `u_j > M_j` stays in `P(a)` after lowering `u_j` by one.
pub fn integral_closure(a: &MonomialIdeal) -> MonomialIdeal {
    let poly = a.newton_polytope();
    let bounds: Vec<u32> = (0..a.d)
        .map(|j| a.gens.iter().map(|g| g.as_slice()[j]).max().unwrap_or(0))
        .collect();
    let mut points = Vec::new();
    let mut cur = vec![0u32; a.d];
    box_points(&bounds, 0, &mut cur, &mut points);
    points.sort_unstable_by_key(|u| u.total_degree());

    let mut found: Vec<ExponentVector> = Vec::new();
    for u in points {
        if u.is_zero() || found.iter().any(|f| f.divides(&u)) {
            continue;
        }
        if a.contains_monomial(&u) || poly.contains_lattice_point(&u) {
            found.push(u);
        }
    }
    MonomialIdeal::new(a.d, found).expect("closure contains a")
}

fn box_points(bounds: &[u32], i: usize, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
    if i == bounds.len() {
        out.push(ExponentVector::from(cur.clone()));
        return;
    }
    for x in 0..=bounds[i] {
        cur[i] = x;
        box_points(bounds, i + 1, cur, out);
    }
}

/// Height: the fewest variables meeting the support of every generator.
pub fn height(a: &MonomialIdeal) -> usize {
    let supports: Vec<u64> = a
        .gens
        .iter()
        .map(|g| {
            g.as_slice()
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .fold(0u64, |acc, (j, _)| acc | (1 << j))
        })
        .collect();
    assert!(a.d < 64, "height: too many variables");
    let mut best = a.d;
    for mask in 0u64..(1 << a.d) {
        let size = mask.count_ones() as usize;
        if size < best && supports.iter().all(|s| s & mask != 0) {
            best = size;
        }
    }
    best
}

/// Largest `d` accepted by [`multiplicity`].
pub const MAX_MULTIPLICITY_DIM: usize = 3;
/// Largest power `n` examined by [`multiplicity`] before giving up.
pub const MAX_MULTIPLICITY_POWER: u32 = 40;

/// Hilbert-Samuel multiplicity `e(a)` of an m-primary monomial ideal.
///
/// Counts `L(n) = #{u : x^u ∉ a^n}` for `n = 1, 2, …` and returns the d-th
/// finite difference of `L` once three consecutive values agree; for large
/// `n` it equals `d!` times the leading coefficient of the Hilbert-Samuel
/// polynomial.
pub fn multiplicity(a: &MonomialIdeal) -> Result<u64, MonomialError> {
    if a.d > MAX_MULTIPLICITY_DIM {
        return Err(MonomialError::ResourceLimit {
            resource: "multiplicity dimension",
            limit: MAX_MULTIPLICITY_DIM as u64,
        });
    }
    if let Some(var) = (0..a.d).find(|&j| a.pure_power(j).is_none()) {
        return Err(MonomialError::NotMPrimary { var });
    }
    let mut colengths: Vec<i128> = Vec::new();
    let mut diffs: Vec<i128> = Vec::new();
    let mut pw = a.clone();
    for n in 1..=MAX_MULTIPLICITY_POWER {
        if n > 1 {
            pw = pw.product(a);
        }
        colengths.push(i128::from(colength(&pw)));
        if colengths.len() > a.d {
            diffs.push(nth_difference(&colengths[colengths.len() - 1 - a.d..]));
        }
        if let [.., x, y, z] = diffs[..] {
            if x == y && y == z {
                return Ok(u64::try_from(z).expect("multiplicity is positive"));
            }
        }
    }
    Err(MonomialError::ResourceLimit {
        resource: "multiplicity powers",
        limit: u64::from(MAX_MULTIPLICITY_POWER),
    })
}

fn nth_difference(window: &[i128]) -> i128 {
    let mut v = window.to_vec();
    while v.len() > 1 {
        v = v.windows(2).map(|w| w[1] - w[0]).collect();
    }
    v[0]
}

/// `#{u ∈ Z^d_{>=0} : x^u ∉ a}` for m-primary `a`.
///
/// For each point `u'` of the first `d-1` coordinates, the standard monomials
/// above it are `0 <= u_d < min{ v_d : v' <= u' }`.
pub fn colength(a: &MonomialIdeal) -> u64 {
    let d = a.d;
    let last = d - 1;
    let bounds: Vec<u32> = (0..last)
        .map(|j| a.pure_power(j).expect("m-primary"))
        .collect();
    let mut total = 0u64;
    let mut cur = vec![0u32; last];
    loop {
        let h = a
            .gens
            .iter()
            .filter(|g| g.as_slice()[..last].iter().zip(&cur).all(|(x, y)| x <= y))
            .map(|g| g.as_slice()[last])
            .min()
            .expect("pure power of the last variable");
        total += u64::from(h);
        // Odometer over the box [0, bounds).
        let mut i = 0;
        loop {
            if i == last {
                return total;
            }
            cur[i] += 1;
            if cur[i] < bounds[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}
