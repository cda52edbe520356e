use std::sync::Arc;

use classalg::fock::FockContext;
use classalg::group::load_preset;
use classalg::winf::bosonic::{expr_mode, realize};
use classalg::winf::diffop::DiffOpElement;
use classalg::winf::level_one::{
    generator_pool, o_coefficient, sample_pairs, verify_dictionary, verify_pairs, Dictionary, Generator,
};
use classalg::winf::{p_l_polynomial, verify_vo, VoForm, Winf};
use classalg::Scalar;

fn setup(name: &str, level: usize) -> (FockContext, Winf) {
    let b = load_preset(name).unwrap();
    let g = Arc::new(b.group);
    (FockContext::new(g.clone(), level), Winf::new(g, b.characters.unwrap()).unwrap())
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

#[test]
fn o_zero_and_one_images() {
    // O^0 <-> -D and O^1 <-> -h D(D+1)/2 per idempotent
    assert_eq!(o_coefficient(&s(1), 0).unwrap(), vec![s(0), s(-1)]);
    assert_eq!(o_coefficient(&s(1), 1).unwrap(), vec![s(0), Scalar::from_ratio(-1, 2), Scalar::from_ratio(-1, 2)]);
    assert_eq!(o_coefficient(&s(2), 1).unwrap(), vec![s(0), s(-1), s(-1)]);
    assert_eq!(o_coefficient(&s(3), 0).unwrap(), vec![s(0), s(-1)]);
}

#[test]
fn j_one_zero_is_degree() {
    let (ctx, w) = setup("cyclic2", 3);
    for a in 0..2 {
        let gamma = w.table().row(a);
        let j = w.basis_j(1, 0, gamma);
        let op = realize(ctx.symbolic(), ctx.basis(), &w, &j, 0).unwrap();
        let direct = expr_mode(ctx.symbolic(), ctx.basis(), &p_l_polynomial(2), 0, gamma)
            .unwrap()
            .scale(&Scalar::from_ratio(1, 2));
        assert!(direct.compare(&op, ctx.basis()).passed());
    }
}

#[test]
fn bosonization_is_a_homomorphism() {
    let (ctx, w) = setup("cyclic2", 4);
    let basis = ctx.basis();
    let mut elems = Vec::new();
    for r in -2i64..=2 {
        for l in 0..=2usize {
            let mut p = vec![s(0); l + 1];
            p[l] = s(1);
            elems.push((r, DiffOpElement::term(r, 1, p)));
        }
    }
    for (r, x) in &elems {
        for (q, y) in &elems {
            let rx = realize(ctx.symbolic(), basis, &w, x, *r).unwrap();
            let ry = realize(ctx.symbolic(), basis, &w, y, *q).unwrap();
            let lhs = rx.commutator(&ry, basis);
            let rhs = realize(ctx.symbolic(), basis, &w, &w.bracket(x, y), r + q).unwrap();
            let cmp = rhs.compare(&lhs, basis);
            assert!(cmp.passed(), "{x} , {y}: {:?}", cmp.mismatches.first());
        }
    }
}

#[test]
fn dictionary_for_o() {
    for name in ["trivial", "cyclic2"] {
        let (ctx, w) = setup(name, 4);
        let cmp = verify_dictionary(&ctx, &w, 3, Dictionary::Corrected).unwrap();
        assert!(cmp.passed(), "{name}: {:?}", cmp.mismatches.first());
    }
}

#[test]
fn level_one_pairs() {
    for name in ["trivial", "cyclic2"] {
        let (ctx, w) = setup(name, 4);
        let pool = generator_pool(&w, 3, 2);
        let pairs = sample_pairs(&pool, 24, 11);
        assert_eq!(pairs.len(), 24);
        for r in verify_pairs(&ctx, &w, &pairs, Dictionary::Corrected).unwrap() {
            assert!(r.comparison.passed(), "{name} {} {}: {:?}", r.x, r.y, r.comparison.mismatches.first());
        }
    }
}

#[test]
fn b_against_p_minus_one() {
    // [b, p_{-1}(1)] predicted through the bracket
    let (ctx, w) = setup("trivial", 4);
    let pairs = [(Generator::O(1), Generator::P(-1, 0))];
    let r = verify_pairs(&ctx, &w, &pairs, Dictionary::Corrected).unwrap();
    assert!(r[0].comparison.passed());
}

#[test]
fn vo_trivial_group() {
    let (ctx, w) = setup("trivial", 3);
    let lit = verify_vo(&ctx, w.table(), 0, 4, VoForm::Literal).unwrap();
    assert!(lit.divisible);
    assert!(lit.comparison.passed(), "{:?}", lit.comparison.mismatches.first());
}

#[test]
fn vo_corrected_form_all_irreducibles() {
    for name in ["cyclic2", "cyclic3"] {
        let (ctx, w) = setup(name, 3);
        for a in 0..w.num_irreducibles() {
            let c = verify_vo(&ctx, w.table(), a, 4, VoForm::Corrected).unwrap();
            assert!(c.divisible);
            assert!(c.comparison.passed(), "{name} {a}: {:?}", c.comparison.mismatches.first());
        }
    }
}

#[test]
fn vo_level_two_first_order_is_b() {
    let (ctx, w) = setup("trivial", 2);
    let c = verify_vo(&ctx, w.table(), 0, 1, VoForm::Literal).unwrap();
    assert!(c.comparison.passed());
}
