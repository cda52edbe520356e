//! Zero mode of the two-sided exponential vertex operator, compared with the
//! convolution series `O_hbar(gamma)`.

use crate::character::CharacterTable;
use crate::error::AlgebraError;
use crate::fock::{Comparison, FockContext, LevelOperator};
use crate::partition::{partitions, Partition};
use crate::scalar::Scalar;
use crate::series::HbarSeries;

/// Which normalization of the identity to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VoForm {
    /// `q/(q-1)^2 (V_0(gamma; q^{h^2}) - 1)`.
    Literal,
    /// `h Q/(Q-1)^2 (V_0(gamma; Q) - 1)` with `Q = q^h`.
    Corrected,
}

#[derive(Clone, Debug)]
pub struct VoCheck {
    pub comparison: Comparison,
    /// `V_0 - 1` has no `hbar^0`, `hbar^1` terms on any level.
    pub divisible: bool,
}

fn factorial(n: u64) -> Scalar {
    Scalar::from_int((1..=n).product::<u64>())
}

/// `prod_k (f_k / k)^{m_k} / m_k!` for the multiplicities of `lambda`.
fn weight(lambda: &Partition, f: impl Fn(u32) -> HbarSeries, high: i32) -> Result<HbarSeries, AlgebraError> {
    let mut acc = HbarSeries::one(high);
    for (k, m) in lambda.multiplicities() {
        let base = f(k).scale(&Scalar::from_ratio(1, k as i64));
        acc = acc.mul(&base.pow(m)?)?.scale(&(&Scalar::one() / &factorial(m as u64)));
    }
    Ok(acc)
}

/// `p_{-lambda_1} ... p_{-lambda_l}(gamma)` (sign -1) or `p_{mu_1} ... (gamma)` (sign +1).
fn mode_product(ctx: &FockContext, gamma: &crate::class_algebra::ClassFunctionG, lambda: &Partition, sign: i64) -> Result<LevelOperator, AlgebraError> {
    let mut acc = LevelOperator::identity(ctx.basis());
    for &r in lambda.parts() {
        acc = ctx.mode_sym(sign * r as i64, gamma)?.compose(&acc, ctx.basis());
    }
    Ok(acc)
}

/// Coefficients `hbar^0 .. hbar^order` of `prefactor (V_0(gamma; e^{s hbar}) - 1)`
/// on the symbolic side, plus the `hbar^0, hbar^1` coefficients of `V_0 - 1`.
pub fn v0_series(
    ctx: &FockContext,
    gamma: &crate::class_algebra::ClassFunctionG,
    s: &Scalar,
    prefactor: &HbarSeries,
    order: u32,
) -> Result<(Vec<LevelOperator>, Vec<LevelOperator>), AlgebraError> {
    let high = order as i32 + 4;
    let basis = ctx.basis();
    let one = HbarSeries::one(high);
    let plus = |k: u32| HbarSeries::exp_linear(&(s * &Scalar::from_int(k)), high).sub(&one);
    let minus = |k: u32| one.sub(&HbarSeries::exp_linear(&(s * &Scalar::from_int(-(k as i64))), high));
    let mut out = vec![LevelOperator::zero(basis, 0); order as usize + 1];
    let mut low = vec![LevelOperator::zero(basis, 0); 2];
    for m in 1..=basis.max_level() as u32 {
        let parts = partitions(m);
        let creators: Vec<_> = parts
            .iter()
            .map(|l| Ok((weight(l, plus, high)?, mode_product(ctx, gamma, l, -1)?)))
            .collect::<Result<_, AlgebraError>>()?;
        let annihilators: Vec<_> = parts
            .iter()
            .map(|l| Ok((weight(l, minus, high)?, mode_product(ctx, gamma, l, 1)?)))
            .collect::<Result<_, AlgebraError>>()?;
        for (c, pc) in &creators {
            for (d, pd) in &annihilators {
                let cd = c.mul(d)?;
                let op = pc.compose(pd, basis);
                for (j, slot) in low.iter_mut().enumerate() {
                    let x = cd.coeff(j as i32)?;
                    if !x.is_zero() {
                        *slot = slot.add(&op.scale(&x))?;
                    }
                }
                let w = prefactor.mul(&cd)?;
                for (j, slot) in out.iter_mut().enumerate() {
                    let x = w.coeff(j as i32)?;
                    if !x.is_zero() {
                        *slot = slot.add(&op.scale(&x))?;
                    }
                }
            }
        }
    }
    Ok((out, low))
}

/// Compare the vertex-operator side with `sum_k hbar^k / k! O^k(gamma_a)`
/// coefficient by coefficient through `hbar^order`.
pub fn verify_vo(
    ctx: &FockContext,
    table: &CharacterTable,
    a: usize,
    order: u32,
    form: VoForm,
) -> Result<VoCheck, AlgebraError> {
    let gamma = table.row(a);
    let h = Scalar::from_int(table.h(a));
    let high = order as i32 + 4;
    let (s, prefactor) = match form {
        VoForm::Literal => {
            let q = HbarSeries::exp_linear(&Scalar::one(), high);
            let qm1 = q.sub(&HbarSeries::one(high));
            (&h * &h, q.div(&qm1.mul(&qm1)?)?)
        }
        VoForm::Corrected => {
            let big_q = HbarSeries::exp_linear(&h, high);
            let qm1 = big_q.sub(&HbarSeries::one(high));
            (h.clone(), big_q.div(&qm1.mul(&qm1)?)?.scale(&h))
        }
    };
    let (series, low) = v0_series(ctx, gamma, &s, &prefactor, order)?;
    let divisible = low.iter().all(|op| op.is_zero());
    let mut cmp = Comparison::default();
    for (k, actual) in series.iter().enumerate() {
        let expected = ctx
            .to_symbolic(&ctx.op_o(k as u32, gamma)?)
            .scale(&(&Scalar::one() / &factorial(k as u64)));
        cmp.merge(expected.compare(actual, ctx.basis()));
    }
    Ok(VoCheck { comparison: cmp, divisible })
}
