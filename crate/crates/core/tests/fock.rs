use std::sync::Arc;

use classalg::algebra::{WreathAlgebra, WreathClassFunction};
use classalg::class_algebra::ClassFunctionG;
use classalg::fock::operators::{p_i_class, p_i_scalar};
use classalg::fock::{characteristic_map, FockContext, FockVector};
use classalg::group::{load_preset, FiniteGroup};
use classalg::partition::{Partition, TypeFunction};
use classalg::Scalar;

fn group(name: &str) -> Arc<FiniteGroup> {
    Arc::new(load_preset(name).unwrap().group)
}

fn k(g: &FiniteGroup, c: usize) -> ClassFunctionG {
    ClassFunctionG::k_basis(g, c)
}

#[test]
fn sigma_two_of_nontrivial_class() {
    let g = group("cyclic2");
    let ctx = FockContext::new(g.clone(), 2);
    let s = ctx.induction().sigma_n_class(2, &k(&g, 1));
    let t = TypeFunction::cycle(1, 2);
    assert_eq!(s.coeffs.len(), 1);
    assert_eq!(s.get(&t), Scalar::from_int(2));
}

#[test]
fn vacuum_creation() {
    let g = group("cyclic2");
    let ctx = FockContext::new(g.clone(), 2);
    let one = ClassFunctionG::unit(&g);
    let v = ctx.induction().heis_create(1, &one, &FockVector::vacuum()).unwrap();
    assert_eq!(v.level(1), WreathClassFunction::unit(1));
    let v2 = ctx.induction().heis_create(1, &one, &v).unwrap();
    assert_eq!(v2.level(2).scale(&Scalar::from_ratio(1, 2)), WreathClassFunction::unit(2));
    // annihilation kills the vacuum
    assert!(ctx.induction().heis_annihilate(1, &one, &FockVector::vacuum()).unwrap().is_zero());
}

#[test]
fn half_identity_commutator_cyclic2() {
    let g = group("cyclic2");
    let ctx = FockContext::new(g.clone(), 3);
    let a = ctx.mode_ind(1, &k(&g, 1)).unwrap();
    let b = ctx.mode_ind(-1, &k(&g, 1)).unwrap();
    let c = a.commutator(&b, ctx.basis());
    let expected = classalg::fock::LevelOperator::identity(ctx.basis()).scale(&Scalar::from_ratio(1, 2));
    assert!(expected.compare(&c, ctx.basis()).passed());
}

#[test]
fn heisenberg_both_realizations() {
    for name in ["trivial", "cyclic2"] {
        let ctx = FockContext::new(group(name), 3);
        assert!(ctx.verify_heisenberg(ctx.induction(), 3).unwrap().passed(), "{name} induction");
        assert!(ctx.verify_heisenberg(ctx.symbolic(), 3).unwrap().passed(), "{name} symbolic");
    }
}

#[test]
fn realizations_intertwine() {
    for name in ["trivial", "cyclic2"] {
        let ctx = FockContext::new(group(name), 4);
        let cmp = ctx.verify_intertwining().unwrap();
        assert!(cmp.passed(), "{name}: {:?}", cmp.mismatches);
    }
}

#[test]
fn averaging_matches_induction() {
    for name in ["trivial", "cyclic2"] {
        let g = group(name);
        let ctx = FockContext::new(g.clone(), 3);
        for n in 0..3 {
            for rho in ctx.basis().types(n) {
                let y = WreathClassFunction::basis(rho);
                for c in 0..g.num_classes() {
                    let a = ctx.induction().create(1, &k(&g, c), &y).unwrap();
                    let b = ctx.induction().heis_create_avg(&k(&g, c), &y).unwrap();
                    assert_eq!(a, b, "{name} {rho} c{c}");
                }
            }
        }
    }
}

#[test]
fn adjointness_cyclic2() {
    let g = group("cyclic2");
    let ctx = FockContext::new(g.clone(), 4);
    let ind = ctx.induction();
    for n in 1..=4usize {
        for m in 0..=(4 - n) {
            for c in 0..2 {
                let gamma = k(&g, c);
                for u in ctx.basis().types(m) {
                    let cu = ind.create(n, &gamma, &WreathClassFunction::basis(u)).unwrap();
                    for v in ctx.basis().types(m + n) {
                        let lhs = ind.level_form(&cu, &WreathClassFunction::basis(v)).unwrap();
                        let av = ind.annihilate(n, &gamma, &WreathClassFunction::basis(v)).unwrap();
                        let rhs = ind.level_form(&WreathClassFunction::basis(u), &av).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

#[test]
fn characteristic_map_examples() {
    // empty monomial goes to the identity class
    let e = characteristic_map(3, &WreathClassFunction::basis(&TypeFunction::empty())).unwrap();
    assert_eq!(e, WreathClassFunction::unit(3));
    // full size keeps the class, up to z~
    let rho = TypeFunction::from_pairs([(0, Partition::new(vec![2, 1])), (1, Partition::new(vec![1]))]);
    let f = characteristic_map(4, &WreathClassFunction::basis(&rho)).unwrap();
    assert_eq!(f, WreathClassFunction::basis(&rho).scale(&Scalar::from_int(2)));
    assert!(characteristic_map(3, &WreathClassFunction::basis(&rho)).is_err());
}

#[test]
fn b_swaps_on_level_two() {
    let g = group("trivial");
    let ctx = FockContext::new(g.clone(), 2);
    let b = ctx.op_o(1, &ClassFunctionG::unit(&g)).unwrap();
    let m = b.block(2).unwrap();
    // basis order at level 2: (1,1) then (2)
    assert_eq!(ctx.basis().types(2)[0], TypeFunction::identity(2));
    assert_eq!(*m.get(0, 0), Scalar::zero());
    assert_eq!(*m.get(0, 1), Scalar::one());
    assert_eq!(*m.get(1, 0), Scalar::one());
    assert_eq!(*m.get(1, 1), Scalar::zero());
    assert!(b.block(0).unwrap().is_zero());
}

#[test]
fn p_i_scalars() {
    for name in ["trivial", "cyclic2"] {
        let g = group(name);
        let ctx = FockContext::new(g.clone(), 4);
        for n in 1..=4 {
            for i in 0..n {
                for c in 0..g.num_classes() {
                    let s = p_i_scalar(ctx.induction(), c, i, n).unwrap();
                    let want = if c == 0 && i == 0 { n as i64 } else { i as i64 + 1 };
                    assert_eq!(s, Some(Scalar::from_int(want)), "{name} c{c} i{i} n{n}");
                }
            }
        }
    }
    assert_eq!(p_i_class(0, 1, 3), TypeFunction::from_pairs([(0, Partition::new(vec![2, 1]))]));
}

#[test]
fn p_one_matches_xi_one() {
    let g = group("trivial");
    let ctx = FockContext::new(g.clone(), 4);
    let alg = WreathAlgebra::get(&g, 4).unwrap();
    let xi = alg.xi_power_sum(1, &ClassFunctionG::unit(&g)).unwrap();
    let p = ctx.p_i_vector(&ClassFunctionG::unit(&g), 1, 4).unwrap();
    assert_eq!(p, xi.scale(&Scalar::from_int(2)));
}

#[test]
fn virasoro_relations() {
    for name in ["trivial", "cyclic2"] {
        let g = group(name);
        let ctx = FockContext::new(g.clone(), 4);
        for (b, c) in [(0, 0), (1, 0), (1, 1)] {
            if b >= g.num_classes() || c >= g.num_classes() {
                continue;
            }
            let cmp = ctx.verify_virasoro(&k(&g, b), &k(&g, c), 2).unwrap();
            assert!(cmp.passed(), "{name} {b} {c}: {:?}", cmp.mismatches);
        }
    }
}

#[test]
fn central_charge_trivial_and_cyclic3() {
    for (name, classes) in [("trivial", 1), ("cyclic3", 3)] {
        let g = group(name);
        let ctx = FockContext::new(g.clone(), 3);
        let one = ClassFunctionG::unit(&g);
        let c = ctx
            .virasoro(2, &one)
            .unwrap()
            .commutator(&ctx.virasoro(-2, &one).unwrap(), ctx.basis())
            .sub(&ctx.virasoro(0, &one).unwrap().scale(&Scalar::from_int(4)))
            .unwrap();
        let want = classalg::fock::LevelOperator::identity(ctx.basis()).scale(&Scalar::from_ratio(classes, 2));
        assert!(want.compare(&c, ctx.basis()).passed(), "{name}");
    }
}

#[test]
fn cubic_and_covcomm() {
    for name in ["trivial", "cyclic2"] {
        let g = group(name);
        let ctx = FockContext::new(g.clone(), 4);
        for c in 0..g.num_classes() {
            let cmp = ctx.verify_cubic(&k(&g, c)).unwrap();
            assert!(cmp.passed(), "cubic {name} c{c}: {:?}", cmp.mismatches);
        }
        for kk in 0..=2 {
            let cmp = ctx.verify_covcomm(kk, &k(&g, g.num_classes() - 1), &k(&g, 0)).unwrap();
            assert!(cmp.passed(), "covcomm {name} k{kk}: {:?}", cmp.mismatches);
        }
        let one = ClassFunctionG::unit(&g);
        assert!(ctx.verify_covcomm_hbar(&one, &k(&g, g.num_classes() - 1), 3).unwrap().passed());
        assert!(ctx.verify_transfer(&k(&g, g.num_classes() - 1), &k(&g, g.num_classes() - 1)).unwrap().passed());
    }
}
