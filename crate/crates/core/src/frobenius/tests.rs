use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::ffpoly::{mul_reduced, pow_reduced, reduce_mod_bracket, ExponentVector, PrimeChar};
use crate::Rational;

const NAMES: [&str; 3] = ["X", "Y", "Z"];

fn ring(p: u64, d: usize) -> Arc<PolyRing> {
    PolyRing::new(
        PrimeChar::new(p).unwrap(),
        NAMES[..d].iter().map(|s| s.to_string()).collect(),
    )
    .unwrap()
}

fn lvl(r: &Arc<PolyRing>, e: u32) -> BracketLevel {
    BracketLevel::new(r.prime(), e).unwrap()
}

fn nu(pair: &IdealPair, e: u32) -> NuValue {
    nu_level(pair, &lvl(pair.ring(), e), &NuConfig::default()).unwrap().nu
}

fn finite(pair: &IdealPair, e: u32) -> u64 {
    nu(pair, e).finite().expect("finite nu")
}

// Direct check: does some tuple of total degree k survive?
fn survives_at(pair: &IdealPair, l: &BracketLevel, k: u64) -> bool {
    let q = u64::from(l.q());
    let mut acc = match pair.multiplier() {
        Some(f) => vec![pow_reduced(f, q - 1, l)],
        None => vec![reduce_mod_bracket(&SparsePoly::one(pair.ring()), l)],
    };
    for _ in 0..k {
        let mut next = Vec::new();
        for prod in &acc {
            for g in pair.gens() {
                let r = mul_reduced(prod, g, l);
                if !r.is_zero() && !next.contains(&r) {
                    next.push(r);
                }
            }
        }
        acc = next;
        if acc.is_empty() {
            return false;
        }
    }
    acc.iter().any(|f| !f.is_zero())
}

#[test]
fn maximal_ideal_of_the_plane() {
    let r = ring(5, 2);
    let m = IdealPair::maximal(&r, None).unwrap();
    assert_eq!(finite(&m, 1), 8);
}

#[test]
fn a1_surface_at_p3() {
    let r = ring(3, 3);
    let pair = IdealPair::parse(&r, &["X", "Y", "Z"], Some("X*Y+Z^2")).unwrap();
    assert_eq!(finite(&pair, 1), 2);
}

#[test]
fn vanishing_multiplier_is_not_f_pure() {
    let r = ring(2, 2);
    let pair = IdealPair::parse(&r, &["X", "Y"], Some("X^2")).unwrap();
    let rec = nu_level(&pair, &lvl(&r, 1), &NuConfig::default()).unwrap();
    assert_eq!(rec.nu, NuValue::NotFPure);
    assert_eq!(rec.witness, None);
    assert_eq!(oracle_nu(&pair, &lvl(&r, 1), 64).unwrap().nu, NuValue::NotFPure);
    assert!(!fedder_fpure_at(&pair, &Rational::from_integer(0.into()), &lvl(&r, 1), &NuConfig::default()).unwrap());
}

#[test]
fn construction_errors() {
    let r = ring(3, 2);
    assert_eq!(IdealPair::new(&r, vec![], None), Err(PairError::NoGenerators));
    assert_eq!(IdealPair::parse(&r, &["X+1"], None), Err(PairError::UnitGenerator(0)));
    assert_eq!(IdealPair::parse(&r, &["X", "3*Y"], None), Err(PairError::ZeroGenerator(1)));
    assert_eq!(IdealPair::parse(&r, &["X"], Some("Y-Y")), Err(PairError::ZeroMultiplier));
    assert_eq!(IdealPair::parse(&r, &["X"], Some("Y+2")), Err(PairError::UnitMultiplier));
    assert!(matches!(IdealPair::parse(&r, &["W"], None), Err(PairError::Parse(_))));
    let other = ring(5, 2);
    let pair = IdealPair::parse(&r, &["X"], None).unwrap();
    assert!(matches!(
        nu_level(&pair, &lvl(&other, 1), &NuConfig::default()),
        Err(NuError::PrimeMismatch { .. })
    ));
}

#[test]
fn fedder_at_the_threshold_edge() {
    let r = ring(2, 3);
    let cfg = NuConfig::default();
    let a = IdealPair::parse(&r, &["X^2", "Y^2", "Z^2"], None).unwrap();
    let three_halves = Rational::new(3.into(), 2.into());
    for e in 1..=3 {
        assert!(!fedder_fpure_at(&a, &three_halves, &lvl(&r, e), &cfg).unwrap(), "e={e}");
    }
    let closure = IdealPair::parse(&r, &["X^2", "X*Y", "X*Z", "Y^2", "Y*Z", "Z^2"], None).unwrap();
    let below = Rational::new(7.into(), 5.into());
    assert!(fedder_fpure_at(&closure, &below, &lvl(&r, 3), &cfg).unwrap());
    assert!(fedder_fpure_at(&a, &Rational::from_integer(0.into()), &lvl(&r, 2), &cfg).unwrap());
    assert_eq!(
        fedder_fpure_at(&a, &Rational::new((-1).into(), 2.into()), &lvl(&r, 1), &cfg),
        Err(NuError::NegativeExponent)
    );
}

#[test]
fn oracle_spot_values() {
    let r1 = ring(3, 1);
    let x = IdealPair::parse(&r1, &["X"], None).unwrap();
    assert_eq!(oracle_nu(&x, &lvl(&r1, 1), 64).unwrap().nu, NuValue::Finite(2));

    // f^k = Σ C(k,i) X^{2i} Y^{3(k-i)}: need 2i <= 6 and 3(k-i) <= 6, so k <= 3 + 2.
    let r2 = ring(7, 2);
    let f = IdealPair::parse(&r2, &["X^2+Y^3"], None).unwrap();
    assert_eq!(oracle_nu(&f, &lvl(&r2, 1), 64).unwrap().nu, NuValue::Finite(5));
    assert_eq!(finite(&f, 1), 5);

    let r3 = ring(5, 3);
    let m = IdealPair::maximal(&r3, None).unwrap();
    assert!(matches!(
        oracle_nu(&m, &lvl(&r3, 2), 64),
        Err(NuError::ResourceLimit { .. })
    ));
}

#[test]
fn maximal_ideal_agrees_with_oracle() {
    for d in 1..=3 {
        let r = ring(2, d);
        let m = IdealPair::maximal(&r, None).unwrap();
        for e in 1..=3 {
            let l = lvl(&r, e);
            let fast = nu_level(&m, &l, &NuConfig::default()).unwrap();
            let slow = oracle_nu(&m, &l, 64).unwrap();
            assert_eq!(fast, slow, "d={d} e={e}");
            assert_eq!(fast.nu, NuValue::Finite(d as u64 * (u64::from(l.q()) - 1)));
        }
    }
}

#[test]
fn witness_survives_and_next_degree_does_not() {
    let r = ring(3, 3);
    let pair = IdealPair::parse(&r, &["X^2+Y*Z", "Y^2", "X*Z+Z^3"], Some("X*Y+Z^2")).unwrap();
    for e in 1..=2 {
        let l = lvl(&r, e);
        let rec = nu_level(&pair, &l, &NuConfig::default()).unwrap();
        let k = rec.nu.finite().unwrap();
        let w = rec.witness.unwrap();
        assert_eq!(w.iter().sum::<u64>(), k);
        let mut prod = pow_reduced(pair.multiplier().unwrap(), u64::from(l.q()) - 1, &l);
        for (g, &li) in pair.gens().iter().zip(&w) {
            prod = mul_reduced(&prod, &pow_reduced(g, li, &l), &l);
        }
        assert!(!prod.is_zero());
        assert!(!survives_at(&pair, &l, k + 1));
    }
}

#[test]
fn budget_overflow_is_reported() {
    let r = ring(5, 3);
    let m = IdealPair::maximal(&r, None).unwrap();
    let cfg = NuConfig {
        budget: Budget {
            max_tuples: 10,
            ..Budget::default()
        },
        ..NuConfig::default()
    };
    assert!(matches!(
        nu_level(&m, &lvl(&r, 2), &cfg),
        Err(NuError::ResourceLimit { .. })
    ));
}

#[test]
fn power_presentation() {
    let r = ring(3, 2);
    let a = IdealPair::parse(&r, &["X", "Y"], None).unwrap();
    let sq = a.power(2);
    let texts: Vec<String> = sq.gens().iter().map(|g| g.to_string()).collect();
    assert_eq!(texts, ["X^2", "X*Y", "Y^2"]);
    assert_eq!(a.power(3).num_gens(), 4);
}

fn arb_pair(max_mu: usize) -> impl Strategy<Value = IdealPair> {
    (prop::sample::select(vec![2u64, 3, 5]), 1usize..=3).prop_flat_map(move |(p, d)| {
        let term = (prop::collection::vec(0u32..=3, d), 1..p);
        let gen = prop::collection::vec(term, 1..=3);
        prop::collection::vec(gen, 1..=max_mu).prop_filter_map("degenerate generators", move |gens| {
            let r = ring(p, d);
            let polys: Vec<SparsePoly> = gens
                .iter()
                .map(|ts| {
                    SparsePoly::from_terms(
                        &r,
                        ts.iter()
                            .filter(|(e, _)| e.iter().any(|&x| x > 0))
                            .map(|(e, c)| (ExponentVector::from(e.clone()), *c)),
                    )
                })
                .collect();
            IdealPair::new(&r, polys, None).ok()
        })
    })
}

fn small_level(pair: &IdealPair, e: u32) -> Option<BracketLevel> {
    let l = lvl(pair.ring(), e);
    (pair.dim() as u64 * (u64::from(l.q()) - 1) <= 64).then_some(l)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matches_oracle(pair in arb_pair(3), e in 1u32..=3) {
        if let Some(l) = small_level(&pair, e) {
            let fast = nu_level(&pair, &l, &NuConfig::default()).unwrap();
            prop_assert_eq!(fast, oracle_nu(&pair, &l, 64).unwrap());
        }
    }

    #[test]
    fn parallel_matches_sequential(pair in arb_pair(3), e in 1u32..=2) {
        let l = lvl(pair.ring(), e);
        let seq = nu_level(&pair, &l, &NuConfig::default()).unwrap();
        let cfg = NuConfig { mode: ExecMode::Parallel, ..NuConfig::default() };
        prop_assert_eq!(nu_level(&pair, &l, &cfg).unwrap(), seq);
    }

    #[test]
    fn membership_is_monotone(pair in arb_pair(2)) {
        let l = lvl(pair.ring(), 1);
        let k = finite(&pair, 1);
        for j in 0..=k {
            prop_assert!(survives_at(&pair, &l, j));
        }
        prop_assert!(!survives_at(&pair, &l, k + 1));
    }

    #[test]
    fn frobenius_step_at_least_multiplies_by_p(pair in arb_pair(3)) {
        let p = u64::from(pair.ring().prime().get());
        let e_max = if p == 5 { 2 } else { 3 };
        for e in 1..e_max {
            prop_assert!(finite(&pair, e + 1) >= p * finite(&pair, e));
        }
    }

    #[test]
    fn power_identity(pair in arb_pair(2), n in 2usize..=3, e in 1u32..=2) {
        let pw = pair.power(n);
        prop_assert_eq!(finite(&pw, e), finite(&pair, e) / n as u64);
    }

    #[test]
    fn sum_is_subadditive(a in arb_pair(2), b_seed in arb_pair(2), e in 1u32..=2) {
        // Rebuild b in a's ring so the two ideals can be added.
        let gens: Vec<String> = b_seed.gens().iter().map(|g| g.to_string()).collect();
        let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
        let Ok(b) = IdealPair::parse(a.ring(), &refs, None) else { return Ok(()); };
        let ab = a.sum(&b).unwrap();
        prop_assert!(finite(&ab, e) <= finite(&a, e) + finite(&b, e));
        // More generators, larger ideal.
        prop_assert!(finite(&ab, e) >= finite(&a, e).max(finite(&b, e)));
    }

    #[test]
    fn order_bounds(pair in arb_pair(3), e in 1u32..=2) {
        let q = u64::from(lvl(pair.ring(), e).q());
        let ord = pair.ord();
        let v = finite(&pair, e);
        prop_assert!(v >= q.div_ceil(ord) - 1);
        prop_assert!(v * ord <= pair.dim() as u64 * (q - 1));
    }
}
