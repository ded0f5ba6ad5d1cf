//! Prime-field arithmetic and sparse multivariate polynomials with reduction
//! modulo Frobenius bracket powers of the maximal ideal.

mod parse;
mod poly;
mod prime;

use thiserror::Error;

pub use parse::{parse_monomial, parse_poly, ParseError};
pub use poly::{
    mul_reduced, pow_reduced, product_survives, reduce_mod_bracket, BracketLevel, ExponentVector,
    PolyRing, SparsePoly,
};
pub use prime::{binom_mod_p, is_prime, PrimeChar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid bracket level p={p}, e={e}")]
    BadLevel { p: u32, e: u32 },
    #[error("a polynomial ring needs at least one variable")]
    NoVariables,
    #[error("invalid variable name `{0}`")]
    BadVariableName(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("exponent overflow")]
    ExponentOverflow,
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;
    use std::sync::Arc;

    use proptest::prelude::*;

    use super::*;

    fn ring(p: u64, vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(
            PrimeChar::new(p).unwrap(),
            vars.iter().map(|s| s.to_string()).collect(),
        )
        .unwrap()
    }

    fn level(r: &Arc<PolyRing>, e: u32) -> BracketLevel {
        BracketLevel::new(r.prime(), e).unwrap()
    }

    fn terms(f: &SparsePoly) -> Vec<(Vec<u32>, u32)> {
        f.terms().iter().map(|(e, c)| (e.as_slice().to_vec(), *c)).collect()
    }

    #[test]
    fn parse_examples() {
        let r = ring(5, &["X", "Y"]);
        let f = parse_poly("X^2+Y^3", &r).unwrap();
        assert_eq!(terms(&f), vec![(vec![0, 3], 1), (vec![2, 0], 1)]);

        let r1 = ring(5, &["X"]);
        assert!(parse_poly("2*X - 7*X", &r1).unwrap().is_zero());

        let r3 = ring(3, &["X", "Y", "Z"]);
        let g = parse_poly("X*Y + Z^2 + Z^2", &r3).unwrap();
        assert_eq!(terms(&g), vec![(vec![0, 0, 2], 2), (vec![1, 1, 0], 1)]);
    }

    #[test]
    fn parse_precedence_and_errors() {
        let r = ring(7, &["X", "Y"]);
        let a = parse_poly("-X^2", &r).unwrap();
        assert_eq!(terms(&a), vec![(vec![2, 0], 6)]);
        let b = parse_poly("(X+Y)^2 - X*X", &r).unwrap();
        assert_eq!(b, parse_poly("2*X*Y + Y^2", &r).unwrap());
        let c = parse_poly("2*3^2", &r).unwrap();
        assert_eq!(c.constant_term(), 4);

        assert!(matches!(parse_poly("2X", &r), Err(ParseError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("X Y", &r), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("X+", &r), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("(X+Y", &r), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("X$", &r), Err(ParseError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("X^2^3", &r), Err(ParseError::Syntax { .. })));
        assert_eq!(
            parse_poly("X+Z", &r),
            Err(ParseError::UnknownVariable { name: "Z".into(), pos: 2 })
        );
        assert_eq!(parse_poly("X^-1", &r), Err(ParseError::NegativeExponent { pos: 2 }));
        assert!(matches!(parse_poly("", &r), Err(ParseError::Syntax { pos: 0, .. })));
    }

    #[test]
    fn display_round_trips() {
        let r = ring(5, &["X", "Y", "Z"]);
        let f = parse_poly("3*X^2*Y - Z + 4 + X", &r).unwrap();
        assert_eq!(f.to_string(), "3*X^2*Y+X+4*Z+4");
        assert_eq!(parse_poly(&f.to_string(), &r).unwrap(), f);
        assert_eq!(SparsePoly::zero(&r).to_string(), "0");
        assert_eq!(SparsePoly::one(&r).to_string(), "1");
    }

    #[test]
    fn degrees_of_zero_are_errors() {
        let r = ring(3, &["X"]);
        assert_eq!(SparsePoly::zero(&r).total_degree(), Err(PolyError::ZeroPolynomial));
        assert_eq!(SparsePoly::zero(&r).min_degree(), Err(PolyError::ZeroPolynomial));
        let f = parse_poly("X^2+X^5", &r).unwrap();
        assert_eq!(f.total_degree(), Ok(5));
        assert_eq!(f.min_degree(), Ok(2));
    }

    #[test]
    fn bracket_level_checks() {
        let p = PrimeChar::new(3).unwrap();
        assert!(BracketLevel::new(p, 0).is_err());
        assert_eq!(BracketLevel::new(p, 4).unwrap().q(), 81);
        assert!(BracketLevel::new(p, 40).is_err());
    }

    #[test]
    fn reduce_examples() {
        let r = ring(5, &["X", "Y"]);
        let lvl = level(&r, 1);
        let f = parse_poly("X^5 + X^2*Y", &r).unwrap();
        assert_eq!(reduce_mod_bracket(&f, &lvl), parse_poly("X^2*Y", &r).unwrap());
        let g = parse_poly("X^4*Y^4", &r).unwrap();
        assert_eq!(reduce_mod_bracket(&g, &lvl), g);

        let r2 = ring(2, &["X", "Y"]);
        let h = parse_poly("(X+Y)^2", &r2).unwrap();
        assert!(reduce_mod_bracket(&h, &level(&r2, 1)).is_zero());
    }

    #[test]
    fn mul_and_pow_examples() {
        let r = ring(5, &["X", "Y"]);
        let lvl = level(&r, 1);
        let x3 = parse_poly("X^3", &r).unwrap();
        let x2 = parse_poly("X^2", &r).unwrap();
        assert!(mul_reduced(&x3, &x2, &lvl).is_zero());
        let g = parse_poly("X^7 + 2*X*Y", &r).unwrap();
        assert_eq!(
            mul_reduced(&SparsePoly::one(&r), &g, &lvl),
            reduce_mod_bracket(&g, &lvl)
        );

        let r3 = ring(3, &["X", "Y"]);
        let l3 = level(&r3, 1);
        let s = parse_poly("X+Y", &r3).unwrap();
        assert_eq!(
            mul_reduced(&s, &s, &l3),
            parse_poly("X^2 + 2*X*Y + Y^2", &r3).unwrap()
        );

        let r4 = ring(3, &["X", "Y", "Z"]);
        let l4 = level(&r4, 1);
        let f = parse_poly("X*Y + Z^2", &r4).unwrap();
        assert_eq!(
            pow_reduced(&f, 2, &l4),
            parse_poly("X^2*Y^2 + 2*X*Y*Z^2", &r4).unwrap()
        );
        assert_eq!(pow_reduced(&f, 0, &l4), SparsePoly::one(&r4));
        assert_eq!(pow_reduced(&f, 1, &l4), reduce_mod_bracket(&f, &l4));
    }

    // Independent membership test: a polynomial lies in m^[q] iff each term
    // is divisible by some X_i^q.
    fn in_bracket_ideal(f: &SparsePoly, q: u32) -> bool {
        let d = f.ring().dim();
        f.terms().iter().all(|(e, _)| {
            (0..d).any(|i| {
                let mut gen = vec![0u32; d];
                gen[i] = q;
                ExponentVector::from(gen).divides(e)
            })
        })
    }

    fn naive_mul(f: &SparsePoly, g: &SparsePoly) -> SparsePoly {
        let p = u64::from(f.ring().prime().get());
        let mut acc: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for (a, ca) in f.terms() {
            for (b, cb) in g.terms() {
                let e: Vec<u32> = a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert(0) += u64::from(*ca) * u64::from(*cb) % p;
            }
        }
        SparsePoly::from_terms(f.ring(), acc.into_iter().map(|(e, c)| (ExponentVector::from(e), c)))
    }

    fn arb_poly(max_deg: u32) -> impl Strategy<Value = (u64, Vec<(Vec<u32>, u64)>)> {
        (prop::sample::select(vec![2u64, 3, 5]), 1usize..=3).prop_flat_map(move |(p, d)| {
            let term = (prop::collection::vec(0..=max_deg, d), 0..p);
            (Just(p), prop::collection::vec(term, 0..8))
        })
    }

    fn build(p: u64, terms: &[(Vec<u32>, u64)], d: usize) -> SparsePoly {
        let names = ["X", "Y", "Z"];
        let r = ring(p, &names[..d]);
        SparsePoly::from_terms(&r, terms.iter().map(|(e, c)| (ExponentVector::from(e.clone()), *c)))
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent((p, ts) in arb_poly(10), e in 1u32..=3) {
            let d = ts.first().map_or(1, |t| t.0.len());
            let f = build(p, &ts, d);
            let lvl = BracketLevel::new(f.ring().prime(), e).unwrap();
            let once = reduce_mod_bracket(&f, &lvl);
            prop_assert_eq!(reduce_mod_bracket(&once, &lvl), once.clone());
            prop_assert_eq!(once.is_zero(), in_bracket_ideal(&f, lvl.q()));
        }

        #[test]
        fn reduction_commutes_with_products(
            p in prop::sample::select(vec![2u64, 3, 5]),
            d in 1usize..=3,
            e in 1u32..=2,
            seed_f in prop::collection::vec((prop::collection::vec(0u32..=4, 3), 1u64..5), 0..6),
            seed_g in prop::collection::vec((prop::collection::vec(0u32..=4, 3), 1u64..5), 0..6),
        ) {
            let trim = |v: &Vec<(Vec<u32>, u64)>| -> Vec<(Vec<u32>, u64)> {
                v.iter().map(|(e, c)| (e[..d].to_vec(), *c)).collect()
            };
            let f = build(p, &trim(&seed_f), d);
            let g = build(p, &trim(&seed_g), d);
            prop_assume!(f.total_degree().unwrap_or(0) <= 12 && g.total_degree().unwrap_or(0) <= 12);
            let lvl = BracketLevel::new(f.ring().prime(), e).unwrap();
            let full = reduce_mod_bracket(&naive_mul(&f, &g), &lvl);
            prop_assert_eq!(mul_reduced(&f, &g, &lvl), full.clone());
            let rf = reduce_mod_bracket(&f, &lvl);
            let rg = reduce_mod_bracket(&g, &lvl);
            prop_assert_eq!(reduce_mod_bracket(&naive_mul(&rf, &rg), &lvl), full);
        }

        #[test]
        fn pow_matches_repeated_products((p, ts) in arb_poly(3), n in 0u64..=8, e in 1u32..=2) {
            let d = ts.first().map_or(1, |t| t.0.len());
            let f = build(p, &ts, d);
            let lvl = BracketLevel::new(f.ring().prime(), e).unwrap();
            let mut naive = reduce_mod_bracket(&SparsePoly::one(f.ring()), &lvl);
            for _ in 0..n {
                naive = mul_reduced(&naive, &f, &lvl);
            }
            prop_assert_eq!(pow_reduced(&f, n, &lvl), naive);
        }

        #[test]
        fn printed_text_parses_back((p, ts) in arb_poly(6)) {
            let d = ts.first().map_or(1, |t| t.0.len());
            let f = build(p, &ts, d);
            prop_assert_eq!(parse_poly(&f.to_string(), f.ring()).unwrap(), f);
        }
    }
}
