//! Homomorphism check: operators realized on the space of class functions
//! against the abstract bracket with `C = 1`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::bosonic::realize;
use super::diffop::{DiffOpElement, Poly, Winf};
use crate::class_algebra::ClassFunctionG;
use crate::error::AlgebraError;
use crate::fock::{Comparison, FockContext, LevelOperator};
use crate::scalar::Scalar;
use crate::series::HbarSeries;

/// Generators used for sampling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Generator {
    /// `O^k(1)`.
    O(u32),
    /// `p_n(gamma_a)`.
    P(i64, usize),
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Generator::O(k) => write!(f, "O^{k}(1)"),
            Generator::P(n, a) => write!(f, "p_{n}(gamma{a})"),
        }
    }
}

/// Which dictionary between operators and the abstract algebra to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dictionary {
    /// `p_n(gamma) <-> -t^n (x) e_gamma` and
    /// `O_hbar(1) <-> sum_gamma (q^{h D} - 1)/(q^{-h} - 1) (x) e_gamma`.
    Corrected,
    /// `p_n(alpha) <-> t^{-n} (x) h^-1 alpha` and
    /// `O_hbar(gamma) <-> (q^{h^2 D} - 1)/(q^{-h^2} - 1) (x) h^-1 gamma`.
    Literal,
}

/// `k! [hbar^k] (e^{s hbar D} - 1)/(e^{-s hbar} - 1)` as a polynomial in `D`.
pub fn o_coefficient(s: &Scalar, k: u32) -> Result<Poly, AlgebraError> {
    let high = k as i32 + 2;
    let hbar = HbarSeries::new(1, vec![Scalar::one()], high)?;
    let den = HbarSeries::exp_linear(&-s, high).sub(&HbarSeries::one(high));
    let u = hbar.div(&den)?;
    let mut poly = vec![Scalar::zero(); k as usize + 2];
    let mut fact = Scalar::one();
    for j in 0..=k {
        // (s D)^{j+1} / (j+1)!
        fact = &fact * &Scalar::from_int(j as i64 + 1);
        let c = &u.coeff((k - j) as i32)? * &(&s.pow(j as i64 + 1)? / &fact);
        poly[j as usize + 1] += &c;
    }
    let kf: i64 = (1..=k as i64).product();
    Ok(super::diffop::poly_scale(&poly, &Scalar::from_int(kf)))
}

/// Abstract image of a generator.
pub fn image(winf: &Winf, g: Generator, dict: Dictionary) -> Result<DiffOpElement, AlgebraError> {
    let table = winf.table();
    Ok(match (g, dict) {
        (Generator::P(n, a), Dictionary::Corrected) => DiffOpElement::term(n, a, vec![Scalar::from_int(-1)]),
        (Generator::P(n, a), Dictionary::Literal) => DiffOpElement::term(-n, a, vec![Scalar::one()]),
        (Generator::O(k), Dictionary::Corrected) => {
            let mut x = DiffOpElement::zero();
            for a in 0..table.len() {
                x.add_term(0, a, &o_coefficient(&Scalar::from_int(table.h(a)), k)?);
            }
            x
        }
        (Generator::O(k), Dictionary::Literal) => {
            // 1 = sum_a gamma_a / h_a
            let mut x = DiffOpElement::zero();
            for a in 0..table.len() {
                let h = table.h(a) as i64;
                let p = o_coefficient(&Scalar::from_int(h * h), k)?;
                x.add_term(0, a, &super::diffop::poly_scale(&p, &Scalar::from_ratio(1, h)));
            }
            x
        }
    })
}

fn shift_of(g: Generator, dict: Dictionary) -> i64 {
    match (g, dict) {
        (Generator::O(_), _) => 0,
        (Generator::P(n, _), Dictionary::Corrected) => n,
        (Generator::P(n, _), Dictionary::Literal) => -n,
    }
}

fn realized(ctx: &FockContext, winf: &Winf, g: Generator) -> Result<LevelOperator, AlgebraError> {
    match g {
        Generator::O(k) => Ok(ctx.to_symbolic(&ctx.op_o(k, &ClassFunctionG::unit(ctx.group()))?)),
        Generator::P(n, a) => ctx.mode_sym(n, winf.table().row(a)),
    }
}

/// All generators with `k <= max_k` and `0 < |n| <= max_n`.
pub fn generator_pool(winf: &Winf, max_k: u32, max_n: i64) -> Vec<Generator> {
    let mut pool: Vec<Generator> = (0..=max_k).map(Generator::O).collect();
    for n in -max_n..=max_n {
        if n == 0 {
            continue;
        }
        for a in 0..winf.num_irreducibles() {
            pool.push(Generator::P(n, a));
        }
    }
    pool
}

/// Seeded sample of distinct unordered pairs from the pool.
pub fn sample_pairs(pool: &[Generator], count: usize, seed: u64) -> Vec<(Generator, Generator)> {
    let mut all = Vec::new();
    for (i, x) in pool.iter().enumerate() {
        for y in &pool[i + 1..] {
            all.push((*x, *y));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    all.choose_multiple(&mut rng, count.min(all.len())).copied().collect()
}

#[derive(Clone, Debug)]
pub struct PairResult {
    pub x: Generator,
    pub y: Generator,
    pub bracket: String,
    pub comparison: Comparison,
}

/// For each pair, `[rho X, rho Y]` against the realization of the abstract
/// bracket of their images.
pub fn verify_pairs(
    ctx: &FockContext,
    winf: &Winf,
    pairs: &[(Generator, Generator)],
    dict: Dictionary,
) -> Result<Vec<PairResult>, AlgebraError> {
    let basis = ctx.basis();
    let mut out = Vec::new();
    for &(x, y) in pairs {
        let lhs = realized(ctx, winf, x)?.commutator(&realized(ctx, winf, y)?, basis);
        let z = winf.bracket(&image(winf, x, dict)?, &image(winf, y, dict)?);
        let shift = shift_of(x, dict) + shift_of(y, dict);
        let rhs = realize(ctx.symbolic(), basis, winf, &z, shift)?;
        out.push(PairResult { x, y, bracket: z.to_string(), comparison: rhs.compare(&lhs, basis) });
    }
    Ok(out)
}

/// `rho(image of O^k(1)) = O^k(1)` for `k <= max_k`.
pub fn verify_dictionary(ctx: &FockContext, winf: &Winf, max_k: u32, dict: Dictionary) -> Result<Comparison, AlgebraError> {
    let mut cmp = Comparison::default();
    for k in 0..=max_k {
        let g = Generator::O(k);
        let pred = realize(ctx.symbolic(), ctx.basis(), winf, &image(winf, g, dict)?, 0)?;
        cmp.merge(pred.compare(&realized(ctx, winf, g)?, ctx.basis()));
    }
    Ok(cmp)
}
