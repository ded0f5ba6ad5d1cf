//! Seeded random ideals for the property suites.
//!
//! Every function is a deterministic function of the generator state. The
//! suites draw one seed per case up front, so the case list does not depend
//! on evaluation order.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ffpoly::{ExponentVector, PolyRing, SparsePoly};
use crate::frobenius::IdealPair;
use crate::monomial::MonomialIdeal;

/// Generator caps accepted by this module.
pub const MAX_DIM: usize = 3;
pub const MAX_DEGREE: u32 = 8;
pub const MAX_GENERATORS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Profile {
    Monomial,
    Binomial,
    SparsePoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RandomIdeal {
    Monomial(MonomialIdeal),
    Pair(IdealPair),
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` child seeds drawn from stream `stream` of `seed`.
pub fn case_seeds(seed: u64, stream: u64, n: usize) -> Vec<u64> {
    let mut rng = rng_from_seed(seed);
    rng.set_stream(stream);
    (0..n).map(|_| rng.gen()).collect()
}

fn check_caps(d: usize, max_deg: u32, mu: usize) {
    assert!((1..=MAX_DIM).contains(&d), "dimension {d} outside 1..={MAX_DIM}");
    assert!((1..=MAX_DEGREE).contains(&max_deg), "degree {max_deg} outside 1..={MAX_DEGREE}");
    assert!((1..=MAX_GENERATORS).contains(&mu), "{mu} generators outside 1..={MAX_GENERATORS}");
}

/// A nonconstant exponent vector of total degree in `1..=max_deg`.
fn random_exponent<R: Rng>(rng: &mut R, d: usize, max_deg: u32) -> ExponentVector {
    let deg = rng.gen_range(1..=max_deg);
    let mut v = vec![0u32; d];
    for _ in 0..deg {
        v[rng.gen_range(0..d)] += 1;
    }
    ExponentVector::from(v)
}

/// An antichain of at most `mu` monomials.
pub fn random_monomial_ideal<R: Rng>(rng: &mut R, d: usize, max_deg: u32, mu: usize) -> MonomialIdeal {
    check_caps(d, max_deg, mu);
    let gens = (0..mu).map(|_| random_exponent(rng, d, max_deg)).collect();
    MonomialIdeal::new(d, gens).expect("generators are nonconstant")
}

/// An m-primary monomial ideal: a pure power of every variable plus up to
/// `mu` further monomials.
pub fn random_primary_ideal<R: Rng>(rng: &mut R, d: usize, max_deg: u32, mu: usize) -> MonomialIdeal {
    check_caps(d, max_deg, mu.max(1));
    let mut gens: Vec<ExponentVector> = (0..d)
        .map(|j| {
            let mut v = vec![0u32; d];
            v[j] = rng.gen_range(1..=max_deg);
            ExponentVector::from(v)
        })
        .collect();
    gens.extend((0..mu).map(|_| random_exponent(rng, d, max_deg)));
    MonomialIdeal::new(d, gens).expect("generators are nonconstant")
}

fn nonzero_coeff<R: Rng>(rng: &mut R, ring: &PolyRing) -> u64 {
    rng.gen_range(1..u64::from(ring.prime().get()))
}

/// A polynomial with `terms` distinct nonconstant monomials and nonzero coefficients.
fn random_poly<R: Rng>(rng: &mut R, ring: &Arc<PolyRing>, max_deg: u32, terms: usize) -> SparsePoly {
    let d = ring.dim();
    let mut exps: Vec<ExponentVector> = Vec::with_capacity(terms);
    while exps.len() < terms {
        let e = random_exponent(rng, d, max_deg);
        if !exps.contains(&e) {
            exps.push(e);
        }
    }
    SparsePoly::from_terms(ring, exps.into_iter().map(|e| (e, nonzero_coeff(rng, ring))))
}

/// Distinct nonconstant monomials of degree <= max_deg in d variables.
fn monomial_count(d: usize, max_deg: u32) -> usize {
    // C(d + max_deg, d) - 1
    let mut c = 1usize;
    for i in 1..=d {
        c = c * (max_deg as usize + i) / i;
    }
    c - 1
}

pub fn random_pair<R: Rng>(
    rng: &mut R,
    ring: &Arc<PolyRing>,
    profile: Profile,
    max_deg: u32,
    mu: usize,
) -> IdealPair {
    let d = ring.dim();
    check_caps(d, max_deg, mu);
    let gens = match profile {
        Profile::Monomial => random_monomial_ideal(rng, d, max_deg, mu)
            .gens()
            .iter()
            .map(|g| SparsePoly::monomial(ring, g.clone(), 1))
            .collect(),
        Profile::Binomial | Profile::SparsePoly => (0..mu)
            .map(|_| {
                let max_terms = monomial_count(d, max_deg).min(4);
                let terms = match profile {
                    Profile::Binomial => 2.min(max_terms),
                    _ => rng.gen_range(2.min(max_terms)..=max_terms),
                };
                random_poly(rng, ring, max_deg, terms)
            })
            .collect(),
    };
    IdealPair::new(ring, gens, None).expect("generators are nonzero and lie in m")
}

/// A hypersurface equation with zero constant term and at least two terms.
pub fn random_multiplier<R: Rng>(rng: &mut R, ring: &Arc<PolyRing>, max_deg: u32) -> SparsePoly {
    let max_terms = monomial_count(ring.dim(), max_deg).min(3);
    let terms = rng.gen_range(2.min(max_terms)..=max_terms);
    random_poly(rng, ring, max_deg, terms)
}

pub fn random_ideal<R: Rng>(
    rng: &mut R,
    profile: Profile,
    ring: &Arc<PolyRing>,
    max_deg: u32,
    mu: usize,
) -> RandomIdeal {
    match profile {
        Profile::Monomial => RandomIdeal::Monomial(random_monomial_ideal(rng, ring.dim(), max_deg, mu)),
        _ => RandomIdeal::Pair(random_pair(rng, ring, profile, max_deg, mu)),
    }
}

/// The monomial ideal as a pair in `ring`, with no hypersurface.
pub fn monomial_pair(ring: &Arc<PolyRing>, a: &MonomialIdeal) -> IdealPair {
    assert_eq!(ring.dim(), a.dim(), "ring and ideal dimensions differ");
    let gens = a
        .gens()
        .iter()
        .map(|g| SparsePoly::monomial(ring, g.clone(), 1))
        .collect();
    IdealPair::new(ring, gens, None).expect("monomial generators lie in m")
}

/// Standard variable names `X, Y, Z` for `d <= 3`.
pub fn standard_vars(d: usize) -> Vec<String> {
    assert!((1..=MAX_DIM).contains(&d));
    ["X", "Y", "Z"][..d].iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::PrimeChar;

    fn ring(p: u64, d: usize) -> Arc<PolyRing> {
        PolyRing::new(PrimeChar::new(p).unwrap(), standard_vars(d)).unwrap()
    }

    #[test]
    fn seeded_monomial_ideal_is_pinned() {
        let r = ring(5, 2);
        let a = random_ideal(&mut rng_from_seed(1), Profile::Monomial, &r, 4, 2);
        let b = random_ideal(&mut rng_from_seed(1), Profile::Monomial, &r, 4, 2);
        assert_eq!(a, b);
        let RandomIdeal::Monomial(a) = a else { panic!("monomial profile") };
        let text: Vec<String> = a.gens().iter().map(|g| g.to_string()).collect();
        assert_eq!(text.join(" "), include_str!("../../golden/v1/random-monomial-seed1.txt").trim());
    }

    #[test]
    fn sparse_profile_has_two_terms() {
        let r = ring(3, 3);
        for seed in 0..20 {
            let RandomIdeal::Pair(pair) = random_ideal(&mut rng_from_seed(seed), Profile::SparsePoly, &r, 4, 1)
            else {
                panic!("polynomial profile")
            };
            assert_eq!(pair.num_gens(), 1);
            assert!(pair.gens()[0].num_terms() >= 2);
            assert_eq!(pair.gens()[0].constant_term(), 0);
        }
    }

    #[test]
    fn primary_ideals_are_primary() {
        for seed in 0..20 {
            let a = random_primary_ideal(&mut rng_from_seed(seed), 3, 5, 3);
            assert!(a.is_m_primary());
        }
    }

    #[test]
    fn degree_one_in_one_variable() {
        let r = ring(2, 1);
        let pair = random_pair(&mut rng_from_seed(3), &r, Profile::SparsePoly, 1, 2);
        assert!(pair.gens().iter().all(|g| g.num_terms() == 1));
    }
}
