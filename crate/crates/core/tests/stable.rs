use std::collections::BTreeMap;
use std::sync::Arc;

use classalg::group::load_preset;
use classalg::partition::TypeFunction;
use classalg::stable::{
    check_stability, forgetful_check, pp_class_of, pp_mul, stable_algebra_build, types_up_to, verify_table,
    PartialPermutation, StableContext,
};
use classalg::wreath::Wreath;
use proptest::prelude::*;

fn ctx(name: &str) -> StableContext {
    StableContext::new(Arc::new(load_preset(name).unwrap().group))
}

fn all_partial(c: &StableContext, n: usize) -> Vec<PartialPermutation> {
    types_up_to(c.group(), n).iter().flat_map(|t| c.partial_class(t, n).unwrap()).collect()
}

#[test]
fn orbits_of_cyclic2_at_three() {
    let census = ctx("cyclic2").orbit_census(3).unwrap();
    assert_eq!(census.orbits, 18);
    assert_eq!(census.types, 18);
    assert!(census.constant && census.separating);
}

#[test]
fn empty_is_unit_and_supports_idempotent() {
    let c = ctx("cyclic3");
    let w = Wreath::new(c.group().clone(), 3);
    let e = PartialPermutation::empty(&w);
    for p in all_partial(&c, 3) {
        assert_eq!(pp_mul(&w, &e, &p).unwrap(), p);
        assert_eq!(pp_mul(&w, &p, &e).unwrap(), p);
        let y = PartialPermutation::new(c.group(), p.support.clone(), w.identity()).unwrap();
        assert_eq!(pp_mul(&w, &y, &y).unwrap(), y);
    }
    assert_eq!(pp_class_of(&w, &e), TypeFunction::empty());
}

#[test]
fn colored_transposition_type() {
    let c = ctx("cyclic2");
    let w = Wreath::new(c.group().clone(), 3);
    let mut a = w.identity();
    a.sigma.swap(0, 1);
    a.g[0] = 1;
    let p = PartialPermutation::new(c.group(), vec![true, true, false], a.clone()).unwrap();
    assert_eq!(pp_class_of(&w, &p), TypeFunction::cycle(1, 2));
    assert!(PartialPermutation::new(c.group(), vec![true, false, false], a).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn semigroup_associative(i in 0usize..10_000, j in 0usize..10_000, k in 0usize..10_000) {
        let c = ctx("cyclic2");
        let all = all_partial(&c, 4);
        let w = Wreath::new(c.group().clone(), 4);
        let (p, q, r) = (&all[i % all.len()], &all[j % all.len()], &all[k % all.len()]);
        let left = pp_mul(&w, &pp_mul(&w, p, q).unwrap(), r).unwrap();
        let right = pp_mul(&w, p, &pp_mul(&w, q, r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

#[test]
fn restricted_count_matches_enumeration() {
    for (name, cap, n) in [("cyclic2", 2, 4), ("cyclic3", 2, 3), ("sym3", 1, 3)] {
        let c = ctx(name);
        let types = types_up_to(c.group(), cap);
        for rho in &types {
            for sigma in &types {
                assert_eq!(c.dtilde(rho, sigma, n).unwrap(), c.dtilde_brute(rho, sigma, n).unwrap(), "{name} {rho} {sigma}");
            }
        }
    }
}

#[test]
fn empty_row_is_identity() {
    let c = ctx("cyclic3");
    for sigma in types_up_to(c.group(), 2) {
        let d = c.dtilde(&sigma, &TypeFunction::empty(), 3).unwrap();
        assert_eq!(d, BTreeMap::from([(sigma.clone(), 1)]));
    }
}

#[test]
fn stability_cyclic2() {
    let r = check_stability(&ctx("cyclic2"), 2, &[4, 5]).unwrap();
    assert!(r.passed(), "{:?}", r.notes);
}

#[test]
fn forgetful_cyclic2_and_trivial() {
    assert!(forgetful_check(&ctx("cyclic2"), 2, 4).unwrap().passed());
    assert!(forgetful_check(&ctx("trivial"), 3, 6).unwrap().passed());
}

#[test]
fn table_structure() {
    for (name, cap) in [("trivial", 3), ("cyclic2", 2)] {
        let c = ctx(name);
        let table = stable_algebra_build(&c, cap, None).unwrap();
        assert_eq!(table.n, 2 * cap);
        for r in verify_table(&c, &table, cap + 2).unwrap() {
            assert!(r.passed(), "{name}: {}", r.identity);
        }
        let labels = table.one_row_labels();
        assert_eq!(labels.len(), cap * c.group().num_classes());
    }
}
