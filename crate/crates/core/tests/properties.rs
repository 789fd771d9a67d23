use hocaset::exec::Execution;
use hocaset::fusion::fuse;
use hocaset::hoca::{validate_rule, HocaRule};
use hocaset::mobility::classify;
use hocaset::oracle::{
    common_divisors, divisors_bruteforce, min_torus_size, string_operator_exists, torus_code,
};
use hocaset::pauli::{build_stabilizers, excitation_map};
use hocaset::{LaurentPoly, Monomial};
use proptest::prelude::*;

fn arb_rule(max_terms: usize, even: bool) -> impl Strategy<Value = HocaRule> {
    proptest::collection::vec((-3i32..=3, 0i32..=3), 1..max_terms).prop_filter_map(
        "valid rule",
        move |pts| {
            let mut q = LaurentPoly::from_terms(pts);
            if !q.contains(Monomial::ONE) {
                q.flip(Monomial::ONE);
            }
            if even && q.len() % 2 == 1 {
                return None;
            }
            validate_rule(&q).ok()
        },
    )
}

fn arb_poly(max_terms: usize, r: i32) -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec((-r..=r, -r..=r), 1..=max_terms)
        .prop_map(LaurentPoly::from_terms)
        .prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witnesses_are_exact(
        rule in arb_rule(8, false),
        m in arb_poly(5, 3),
        i in -3i32..=3,
        j in -3i32..=3,
    ) {
        if let Some(d) = string_operator_exists(&rule, &m, (i, j), 16).unwrap() {
            prop_assert_eq!(&d * rule.poly(), &m + &m.shifted(Monomial::new(i, j)));
        }
    }

    // The witness equation lives in the frame `d * f`; the physical block
    // operator built from `antipode(d)` moves the reflected pattern.
    #[test]
    fn witnesses_move_physical_excitations(
        rule in arb_rule(8, true),
        m in arb_poly(4, 2),
        i in -2i32..=2,
        j in -2i32..=2,
    ) {
        let Some(d) = string_operator_exists(&rule, &m, (i, j), 16).unwrap() else {
            return Ok(());
        };
        let s = build_stabilizers(&rule).unwrap();
        let ex = excitation_map(&s, &s.d.scaled(&d.antipode()));
        let reflected = m.antipode();
        prop_assert!(ex.e.is_zero() && ex.c.is_zero());
        prop_assert_eq!(ex.m, &reflected + &reflected.shifted(Monomial::new(-i, -j)));
    }

    #[test]
    fn witness_exists_iff_classifier_allows(
        rule in arb_rule(6, false),
        m in arb_poly(4, 2),
        i in -3i32..=3,
        j in -3i32..=3,
    ) {
        let allowed = classify(&rule, &m).unwrap().polynomial.contains(i, j);
        let found = string_operator_exists(&rule, &m, (i, j), 16).unwrap().is_some();
        prop_assert_eq!(allowed, found);
    }

    #[test]
    fn fusion_is_swap_symmetric(rule in arb_rule(6, false), m1 in arb_poly(3, 2), m2 in arb_poly(3, 2)) {
        let ab = fuse(&rule, &m1, &m2, 3, Execution::Sequential).unwrap();
        let ba = fuse(&rule, &m2, &m1, 3, Execution::Sequential).unwrap();
        let classes = |s: &hocaset::fusion::FusionChannelSet| s.classes().copied().collect::<Vec<_>>();
        prop_assert_eq!(classes(&ab), classes(&ba));
        prop_assert_eq!(ab.includes_vacuum(), ba.includes_vacuum());
    }

    #[test]
    fn parallel_fusion_matches_sequential(rule in arb_rule(6, false), m1 in arb_poly(3, 2), m2 in arb_poly(3, 2)) {
        let seq = fuse(&rule, &m1, &m2, 3, Execution::Sequential).unwrap();
        let par = fuse(&rule, &m1, &m2, 3, Execution::Parallel).unwrap();
        prop_assert_eq!(seq, par);
    }

    #[test]
    fn divisors_divide(p in arb_poly(4, 1)) {
        let ds = divisors_bruteforce(&p, 9).unwrap();
        let pc = p.canonicalize().unwrap();
        prop_assert!(ds.contains(&LaurentPoly::one()));
        prop_assert!(ds.contains(&pc));
        for d in &ds {
            prop_assert!(d.divides(&pc));
        }
    }

    #[test]
    fn common_divisors_include_gcd(a in arb_poly(4, 1), b in arb_poly(4, 1)) {
        let g = a.gcd(&b).unwrap();
        prop_assert!(common_divisors(&a, &b, 9).unwrap().contains(&g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn gsd_is_four(rule in arb_rule(6, true)) {
        for l in min_torus_size(&rule)..=8 {
            let code = torus_code(&rule, l).unwrap();
            prop_assert_eq!(code.gsd().unwrap(), 4, "L = {}", l);
        }
    }
}
