//! Verification suites packaged as reports, shared by the command line and
//! the acceptance tests.

use std::sync::Arc;

use crate::algebra::{epsilon_value, eta_value, WreathAlgebra, WreathClassFunction};
use crate::character::CharacterTable;
use crate::class_algebra::{euler_number, ClassFunctionG};
use crate::error::AlgebraError;
use crate::fock::{Comparison, FockContext};
use crate::group::FiniteGroup;
use crate::partition::enumerate_types;
use crate::report::Report;
use crate::scalar::Scalar;
use crate::stable::{check_stability, forgetful_check, StableContext};
use crate::winf::bosonic::NormalOrderedExpr;
use crate::winf::level_one::{generator_pool, sample_pairs, verify_dictionary, verify_pairs, Dictionary};
use crate::winf::{p_l_polynomial, verify_vo, VoForm, Winf};

fn k(g: &FiniteGroup, c: usize) -> ClassFunctionG {
    ClassFunctionG::k_basis(g, c)
}

fn base(name: &str, g: &FiniteGroup) -> Report {
    Report::new(name).param("group", g.name())
}

/// Heisenberg relations in both realizations, `0 < |m|, |n| <= max_mode`.
pub fn heisenberg(g: &Arc<FiniteGroup>, level: usize, max_mode: i64) -> Result<Report, AlgebraError> {
    let ctx = FockContext::new(g.clone(), level);
    let mut cmp = ctx.verify_heisenberg(ctx.induction(), max_mode)?;
    cmp.merge(ctx.verify_heisenberg(ctx.symbolic(), max_mode)?);
    Ok(base("heisenberg", g)
        .param("level", level)
        .param("max_mode", max_mode)
        .with_comparison(cmp)
        .note("induction and symbolic realizations"))
}

/// Commutativity of `xi_j` and `(K^c)^{(i)}`, the product formulas for
/// `eta_n` and `epsilon_n`, and `prod (xi_j + sum_g g^{(j)}) = sum_a a`, for
/// every level up to `n`.
pub fn jucys_murphy(g: &Arc<FiniteGroup>, table: Option<&CharacterTable>, n: usize) -> Result<Report, AlgebraError> {
    let mut checks = 0;
    let mut failures = Vec::new();
    for m in 1..=n {
        let alg = WreathAlgebra::get(g, m)?;
        let mut elems = Vec::new();
        for j in 1..=m {
            elems.push((format!("xi_{j}"), alg.jm_element(j)?));
            for c in 0..g.num_classes() {
                elems.push((format!("K^{c}({j})"), alg.embed_level(&k(g, c), j)?));
            }
        }
        for (i, (na, a)) in elems.iter().enumerate() {
            for (nb, b) in &elems[i + 1..] {
                checks += 1;
                if !alg.commutes(a, b)? {
                    failures.push(format!("n={m}: {na} and {nb} do not commute"));
                }
            }
        }
        let mut gammas: Vec<(String, ClassFunctionG)> = (0..g.num_classes()).map(|c| (format!("K^{c}"), k(g, c))).collect();
        if let Some(t) = table {
            gammas.extend(t.rows().iter().enumerate().map(|(i, r)| (format!("chi{i}"), r.clone())));
        }
        for (name, gamma) in &gammas {
            let mut want_eta = WreathClassFunction::zero(m);
            let mut want_eps = WreathClassFunction::zero(m);
            for rho in alg.types() {
                want_eta.add_term(rho, &eta_value(gamma, rho));
                want_eps.add_term(rho, &epsilon_value(gamma, rho));
            }
            checks += 2;
            if alg.eta(gamma)? != want_eta {
                failures.push(format!("n={m}: eta({name})"));
            }
            if alg.epsilon(gamma)? != want_eps {
                failures.push(format!("n={m}: epsilon({name})"));
            }
        }
        let all = ClassFunctionG::new(vec![Scalar::one(); g.num_classes()]);
        checks += 1;
        if alg.eta_element(&all)?.sub(&alg.sum_all()).support_size() != 0 {
            failures.push(format!("n={m}: product with the full group sum"));
        }
    }
    let mut r = base("jucys-murphy", g).param("n", n).with_outcome(failures.is_empty(), checks);
    r.mismatch_count = failures.len();
    for f in failures.into_iter().take(8) {
        r = r.note(f);
    }
    Ok(r)
}

/// Virasoro brackets over K-basis pairs, `|n|, |m| <= max_mode`, and the
/// central charge of `L(1)` read off the vacuum.
pub fn virasoro(g: &Arc<FiniteGroup>, level: usize, max_mode: i64) -> Result<Report, AlgebraError> {
    let ctx = FockContext::new(g.clone(), level);
    let mut cmp = Comparison::default();
    let nc = g.num_classes();
    for b in 0..nc {
        for c in b..nc {
            cmp.merge(ctx.verify_virasoro(&k(g, b), &k(g, c), max_mode)?);
        }
    }
    let one = ClassFunctionG::unit(g);
    // <0| [L_2, L_-2] |0> = c/2
    let bracket = ctx.virasoro(2, &one)?.commutator(&ctx.virasoro(-2, &one)?, ctx.basis());
    let vac = bracket.block(0).map(|m| m.get(0, 0).clone()).unwrap_or_else(Scalar::zero);
    let charge = &vac * &Scalar::from_int(2);
    let expected = euler_number(g)?;
    let classes = Scalar::from_int(nc as i64);
    let ok = cmp.passed() && charge == expected && charge == classes;
    let mut r = base("virasoro", g)
        .param("level", level)
        .param("max_mode", max_mode)
        .with_comparison(cmp)
        .note(format!("central charge of L(1): {charge} (classes: {nc})"));
    if !ok {
        r.status = crate::report::Status::Fail;
        r.mismatch_count = r.mismatch_count.max(1);
    }
    Ok(r)
}

/// `b(beta) = 1/6 :p^3:_0(tau_3 beta)` for every K-basis `beta`.
pub fn cubic(g: &Arc<FiniteGroup>, level: usize) -> Result<Report, AlgebraError> {
    let ctx = FockContext::new(g.clone(), level);
    let mut cmp = Comparison::default();
    for c in 0..g.num_classes() {
        cmp.merge(ctx.verify_cubic(&k(g, c))?);
    }
    Ok(base("cubic", g).param("level", level).with_comparison(cmp))
}

/// `[O^k(gamma), p_-1(alpha)] = (ad b)^k p_-1(gamma alpha)` for `k <= max_k`.
pub fn covcomm(g: &Arc<FiniteGroup>, level: usize, max_k: u32) -> Result<Report, AlgebraError> {
    let ctx = FockContext::new(g.clone(), level);
    let mut cmp = Comparison::default();
    for kk in 0..=max_k {
        for c in 0..g.num_classes() {
            for a in 0..g.num_classes() {
                cmp.merge(ctx.verify_covcomm(kk, &k(g, c), &k(g, a))?);
            }
        }
    }
    Ok(base("covcomm", g).param("level", level).param("k", max_k).with_comparison(cmp))
}

/// The first three normally ordered polynomials against their displayed forms.
pub fn p_l_table() -> Report {
    let expected = [
        NormalOrderedExpr::j0(),
        NormalOrderedExpr::word(&[0, 0], 1).add(&NormalOrderedExpr::word(&[1], 1)),
        NormalOrderedExpr::word(&[0, 0, 0], 1)
            .add(&NormalOrderedExpr::word(&[0, 1], 3))
            .add(&NormalOrderedExpr::word(&[2], 1)),
    ];
    let mut r = Report::new("p_l table");
    let mut ok = true;
    for (l, want) in expected.iter().enumerate() {
        let got = p_l_polynomial(l + 1);
        ok &= got == *want;
        r = r.note(format!("P{} = {got}", l + 1));
    }
    r.with_outcome(ok, 3)
}

/// Vertex-operator identity through `hbar^order` for every irreducible.
pub fn vertex_operator(
    g: &Arc<FiniteGroup>,
    table: &CharacterTable,
    level: usize,
    order: u32,
    form: VoForm,
) -> Result<Report, AlgebraError> {
    let ctx = FockContext::new(g.clone(), level);
    let mut cmp = Comparison::default();
    let mut r = base("vertex operator", g)
        .param("level", level)
        .param("order", order)
        .param("form", if form == VoForm::Literal { "literal" } else { "corrected" });
    let mut divisible = true;
    for a in 0..table.len() {
        let check = verify_vo(&ctx, table, a, order, form)?;
        divisible &= check.divisible;
        r = r.note(format!(
            "chi{a} (h = {}): {} mismatching cells",
            table.h(a),
            check.comparison.mismatch_count
        ));
        cmp.merge(check.comparison);
    }
    let mut r = r.with_comparison(cmp);
    if !divisible {
        r.status = crate::report::Status::Fail;
        r = r.note("V_0 - 1 has terms below hbar^2");
    }
    Ok(r)
}

/// Realized commutators of sampled generator pairs against the abstract
/// bracket with `C = 1`.
pub fn level_one(
    g: &Arc<FiniteGroup>,
    table: &CharacterTable,
    level: usize,
    count: usize,
    seed: u64,
) -> Result<Report, AlgebraError> {
    let ctx = FockContext::new(g.clone(), level);
    let winf = Winf::new(g.clone(), table.clone())?;
    // weights kept well inside the truncation
    let pool = generator_pool(&winf, 3, (level as i64 / 2).max(1));
    let pairs = sample_pairs(&pool, count, seed);
    let mut cmp = Comparison::default();
    let mut failing = Vec::new();
    for p in verify_pairs(&ctx, &winf, &pairs, Dictionary::Corrected)? {
        if !p.comparison.passed() {
            failing.push(format!("[{}, {}]", p.x, p.y));
        }
        cmp.merge(p.comparison);
    }
    cmp.merge(verify_dictionary(&ctx, &winf, 3, Dictionary::Corrected)?);
    let mut r = base("level-one", g)
        .param("level", level)
        .param("pairs", pairs.len())
        .param("seed", seed)
        .with_comparison(cmp);
    for f in failing.into_iter().take(8) {
        r = r.note(f);
    }
    Ok(r)
}

/// Antisymmetry and Jacobi on seeded random triples.
pub fn bracket(g: &Arc<FiniteGroup>, table: &CharacterTable, count: usize, seed: u64) -> Result<Report, AlgebraError> {
    let winf = Winf::new(g.clone(), table.clone())?;
    let failures = winf.jacobi_check(count, seed);
    let mut r = base("bracket", g).param("triples", count).param("seed", seed).with_outcome(failures == 0, count);
    r.mismatch_count = failures;
    Ok(r)
}

/// Restricted counts against full enumeration and agreement across `n_list`,
/// then the forgetful map at each `n`.
pub fn stability(g: &Arc<FiniteGroup>, cap: usize, n_list: &[usize]) -> Result<Vec<Report>, AlgebraError> {
    let ctx = StableContext::new(g.clone());
    let mut out = vec![check_stability(&ctx, cap, n_list)?];
    for &n in n_list {
        out.push(forgetful_check(&ctx, cap, n)?);
    }
    Ok(out)
}

/// Dimensions of the subalgebras generated by `Xi_n^i(K^c)` and by
/// `P_i(K^c, n)`, `0 <= i < n`, against the number of classes of `G_n`.
pub fn generators(g: &Arc<FiniteGroup>, n: usize) -> Result<Report, AlgebraError> {
    let ctx = FockContext::new(g.clone(), 0);
    let mut ok = true;
    let mut r = base("generators", g).param("n", n);
    for m in 1..=n {
        let alg = WreathAlgebra::get(g, m)?;
        let classes = enumerate_types(g.num_classes(), m as u32).len();
        let mut xi = Vec::new();
        let mut p = Vec::new();
        for i in 0..m {
            for c in 0..g.num_classes() {
                xi.push(alg.xi_power_sum(i as u32, &k(g, c))?);
                p.push(ctx.p_i_vector(&k(g, c), i, m)?);
            }
        }
        let (dx, _) = alg.subalgebra_generated(&xi)?;
        let (dp, _) = alg.subalgebra_generated(&p)?;
        ok &= dx == classes && dp == classes;
        r = r.note(format!("n={m}: Xi {dx}, P {dp}, classes {classes}"));
    }
    Ok(r.with_outcome(ok, n))
}

/// Both Heisenberg actions agree through the characteristic map on every
/// basis vector up to `level`.
pub fn dual_realization(g: &Arc<FiniteGroup>, level: usize) -> Result<Report, AlgebraError> {
    let ctx = FockContext::new(g.clone(), level);
    Ok(base("dual realization", g).param("level", level).with_comparison(ctx.verify_intertwining()?))
}
