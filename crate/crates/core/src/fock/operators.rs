//! Operators on the truncated space and the identities checked on them.

use std::sync::Arc;

use super::symbolic::{characteristic_map, characteristic_matrices, SymbolicFock};
use super::{mode_operator, normally_ordered_power, Comparison, FockBasis, InductionFock, LevelOperator, Realization};
use crate::algebra::{WreathAlgebra, WreathClassFunction};
use crate::class_algebra::{bilinear_form, convolve_g, euler_class, pushforward_tau2, pushforward_tauk, trace, ClassFunctionG};
use crate::error::AlgebraError;
use crate::group::FiniteGroup;
use crate::linalg::Matrix;
use crate::partition::TypeFunction;
use crate::scalar::Scalar;

/// Both realizations over one group, truncated at a fixed level.
#[derive(Debug)]
pub struct FockContext {
    group: Arc<FiniteGroup>,
    basis: FockBasis,
    ind: InductionFock,
    sym: SymbolicFock,
    ch: Vec<Matrix>,
    ch_inv: Vec<Matrix>,
}

fn factorial(n: u64) -> Scalar {
    Scalar::from_int((1..=n).product::<u64>())
}

impl FockContext {
    pub fn new(group: Arc<FiniteGroup>, max_level: usize) -> Self {
        let basis = FockBasis::new(group.num_classes(), max_level);
        let (ch, ch_inv) = characteristic_matrices(&basis);
        FockContext {
            ind: InductionFock::new(group.clone()),
            sym: SymbolicFock::new(group.clone()),
            group,
            basis,
            ch,
            ch_inv,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }
    pub fn induction(&self) -> &InductionFock {
        &self.ind
    }
    pub fn symbolic(&self) -> &SymbolicFock {
        &self.sym
    }

    pub fn mode_ind(&self, m: i64, gamma: &ClassFunctionG) -> Result<LevelOperator, AlgebraError> {
        mode_operator(&self.ind, &self.basis, m, gamma)
    }

    pub fn mode_sym(&self, m: i64, gamma: &ClassFunctionG) -> Result<LevelOperator, AlgebraError> {
        mode_operator(&self.sym, &self.basis, m, gamma)
    }

    /// Induction-side operator expressed on the symbolic side.
    pub fn to_symbolic(&self, op: &LevelOperator) -> LevelOperator {
        op.conjugate(&self.ch_inv, &self.ch)
    }

    pub fn to_induction(&self, op: &LevelOperator) -> LevelOperator {
        op.conjugate(&self.ch, &self.ch_inv)
    }

    /// `O^k(alpha)`: convolution with `Xi_n^k(alpha)` on each level, zero on the vacuum.
    pub fn op_o(&self, k: u32, alpha: &ClassFunctionG) -> Result<LevelOperator, AlgebraError> {
        let mut xis: Vec<Option<(Arc<WreathAlgebra>, WreathClassFunction)>> = vec![None];
        for n in 1..=self.basis.max_level() {
            let alg = WreathAlgebra::get(&self.group, n)?;
            let xi = alg.xi_power_sum(k, alpha)?;
            xis.push(Some((alg, xi)));
        }
        LevelOperator::from_map(&self.basis, 0, |level, rho| match &xis[level] {
            None => Ok(WreathClassFunction::zero(0)),
            Some((alg, xi)) => alg.convolve(xi, &WreathClassFunction::basis(rho)),
        })
    }

    /// Coefficients of `O_hbar(alpha) = sum_k hbar^k / k! O^k(alpha)` for `k = 0..=order`.
    pub fn op_o_hbar(&self, alpha: &ClassFunctionG, order: u32) -> Result<Vec<LevelOperator>, AlgebraError> {
        (0..=order)
            .map(|k| Ok(self.op_o(k, alpha)?.scale(&(&Scalar::one() / &factorial(k as u64)))))
            .collect()
    }

    /// `L_n(beta) = 1/2 :p^2:_n(tau_2 beta)` on the symbolic side.
    pub fn virasoro(&self, n: i64, beta: &ClassFunctionG) -> Result<LevelOperator, AlgebraError> {
        let t = pushforward_tau2(&self.group, beta)?;
        Ok(normally_ordered_power(&self.sym, &self.basis, &t, n)?.scale(&Scalar::from_ratio(1, 2)))
    }

    /// `[p_m(K^c), p_n(K^c')] = m delta_{m,-n} <K^c, K^c'>` for all `0 < |m|, |n| <= max_mode`.
    pub fn verify_heisenberg<R: Realization + ?Sized>(&self, r: &R, max_mode: i64) -> Result<Comparison, AlgebraError> {
        let l = max_mode;
        let nc = self.group.num_classes();
        let mut modes = Vec::new();
        for m in -l..=l {
            if m == 0 {
                continue;
            }
            for c in 0..nc {
                let k = ClassFunctionG::k_basis(&self.group, c);
                modes.push((m, c, mode_operator(r, &self.basis, m, &k)?));
            }
        }
        let mut cmp = Comparison::default();
        for (m, c, a) in &modes {
            for (n, c2, b) in &modes {
                let lhs = a.commutator(b, &self.basis);
                let expected = if m + n == 0 {
                    let form = bilinear_form(
                        &self.group,
                        &ClassFunctionG::k_basis(&self.group, *c),
                        &ClassFunctionG::k_basis(&self.group, *c2),
                    )?;
                    LevelOperator::identity(&self.basis).scale(&(&form * &Scalar::from_int(*m)))
                } else {
                    LevelOperator::zero(&self.basis, -(m + n))
                };
                cmp.merge(expected.compare(&lhs, &self.basis));
            }
        }
        Ok(cmp)
    }

    /// `ch o sym = ind o ch` for every mode `0 < |m| <= L` and every class.
    pub fn verify_intertwining(&self) -> Result<Comparison, AlgebraError> {
        let l = self.basis.max_level() as i64;
        let mut cmp = Comparison::default();
        for m in -l..=l {
            if m == 0 {
                continue;
            }
            for c in 0..self.group.num_classes() {
                let k = ClassFunctionG::k_basis(&self.group, c);
                let ind = self.mode_ind(m, &k)?;
                let sym = self.to_induction(&self.mode_sym(m, &k)?);
                cmp.merge(ind.compare(&sym, &self.basis));
            }
        }
        Ok(cmp)
    }

    /// `[L_n(beta), L_m(gamma)] = (n-m) L_{n+m}(beta gamma) + (n^3-n)/12 delta_{n,-m} Tr(chi beta gamma)`
    /// for `|n|, |m| <= max_mode`.
    pub fn verify_virasoro(
        &self,
        beta: &ClassFunctionG,
        gamma: &ClassFunctionG,
        max_mode: i64,
    ) -> Result<Comparison, AlgebraError> {
        let bg = convolve_g(&self.group, beta, gamma)?;
        let chi = euler_class(&self.group)?;
        let central = trace(&self.group, &convolve_g(&self.group, &chi, &bg)?)?;
        let mut cmp = Comparison::default();
        let ls: Vec<_> = (-max_mode..=max_mode)
            .map(|n| Ok((n, self.virasoro(n, beta)?, self.virasoro(n, gamma)?)))
            .collect::<Result<_, AlgebraError>>()?;
        for (n, lb, _) in &ls {
            for (m, _, lg) in &ls {
                let lhs = lb.commutator(lg, &self.basis);
                let mut rhs = self.virasoro(n + m, &bg)?.scale(&Scalar::from_int(n - m));
                if n + m == 0 {
                    let c = Scalar::from_ratio(n * n * n - n, 12);
                    rhs = rhs.add(&LevelOperator::identity(&self.basis).scale(&(&c * &central)))?;
                }
                cmp.merge(rhs.compare(&lhs, &self.basis));
            }
        }
        Ok(cmp)
    }

    /// `O^1(beta)` transported to the symbolic side against `1/6 :p^3:_0(tau_3 beta)`.
    pub fn verify_cubic(&self, beta: &ClassFunctionG) -> Result<Comparison, AlgebraError> {
        let lhs = self.to_symbolic(&self.op_o(1, beta)?);
        let t = pushforward_tauk(&self.group, beta, 3)?;
        let rhs = normally_ordered_power(&self.sym, &self.basis, &t, 0)?.scale(&Scalar::from_ratio(1, 6));
        Ok(rhs.compare(&lhs, &self.basis))
    }

    /// `[O^k(gamma), p_{-1}(alpha)] = (ad b)^k p_{-1}(gamma alpha)` with `b = O^1(1)`.
    pub fn verify_covcomm(&self, k: u32, gamma: &ClassFunctionG, alpha: &ClassFunctionG) -> Result<Comparison, AlgebraError> {
        let lhs = self.op_o(k, gamma)?.commutator(&self.mode_ind(-1, alpha)?, &self.basis);
        let b = self.op_o(1, &ClassFunctionG::unit(&self.group))?;
        let mut rhs = self.mode_ind(-1, &convolve_g(&self.group, gamma, alpha)?)?;
        for _ in 0..k {
            rhs = b.commutator(&rhs, &self.basis);
        }
        Ok(rhs.compare(&lhs, &self.basis))
    }

    /// The series form, coefficient by coefficient:
    /// `[O_hbar(gamma), p_{-1}(alpha)] = exp(hbar ad b) p_{-1}(gamma alpha)`.
    pub fn verify_covcomm_hbar(&self, gamma: &ClassFunctionG, alpha: &ClassFunctionG, order: u32) -> Result<Comparison, AlgebraError> {
        let series = self.op_o_hbar(gamma, order)?;
        let p = self.mode_ind(-1, alpha)?;
        let b = self.op_o(1, &ClassFunctionG::unit(&self.group))?;
        let mut ad = self.mode_ind(-1, &convolve_g(&self.group, gamma, alpha)?)?;
        let mut cmp = Comparison::default();
        for (k, o) in series.iter().enumerate() {
            let lhs = o.commutator(&p, &self.basis);
            let rhs = ad.scale(&(&Scalar::one() / &factorial(k as u64)));
            cmp.merge(rhs.compare(&lhs, &self.basis));
            ad = b.commutator(&ad, &self.basis);
        }
        Ok(cmp)
    }

    /// `[b(beta), p_n(gamma)] = [b(beta gamma), p_n(1)]` for all `0 < |n| <= L`.
    pub fn verify_transfer(&self, beta: &ClassFunctionG, gamma: &ClassFunctionG) -> Result<Comparison, AlgebraError> {
        let bb = self.op_o(1, beta)?;
        let bbg = self.op_o(1, &convolve_g(&self.group, beta, gamma)?)?;
        let one = ClassFunctionG::unit(&self.group);
        let l = self.basis.max_level() as i64;
        let mut cmp = Comparison::default();
        for n in -l..=l {
            if n == 0 {
                continue;
            }
            let lhs = bb.commutator(&self.mode_ind(n, gamma)?, &self.basis);
            let rhs = bbg.commutator(&self.mode_ind(n, &one)?, &self.basis);
            cmp.merge(rhs.compare(&lhs, &self.basis));
        }
        Ok(cmp)
    }

    /// `P_i(alpha, n) = p_{-i-1}(alpha) p_{-1}(1)^{n-i-1} |0> / (n-i-1)!`.
    pub fn p_i_vector(&self, alpha: &ClassFunctionG, i: usize, n: usize) -> Result<WreathClassFunction, AlgebraError> {
        p_i_vector(&self.ind, alpha, i, n)
    }
}

pub fn p_i_vector(
    ind: &InductionFock,
    alpha: &ClassFunctionG,
    i: usize,
    n: usize,
) -> Result<WreathClassFunction, AlgebraError> {
    if i >= n {
        return Err(AlgebraError::OutOfRange { what: "i", value: i as i64 });
    }
    let one = ClassFunctionG::unit(ind.group());
    let mut v = WreathClassFunction::unit(0);
    for _ in 0..n - i - 1 {
        v = ind.create(1, &one, &v)?;
    }
    let v = ind.create(i + 1, alpha, &v)?;
    Ok(v.scale(&(&Scalar::one() / &factorial((n - i - 1) as u64))))
}

/// Class "one `(i+1)`-cycle colored `c`, the rest identity 1-cycles" in `G_n`.
pub fn p_i_class(c: usize, i: usize, n: usize) -> TypeFunction {
    TypeFunction::cycle(c, i as u32 + 1).padded((n - i - 1) as u32)
}

/// The scalar `s` with `P_i(K^c, n) = s K^{p_i_class}`, if the vector is
/// proportional to that class.
pub fn p_i_scalar(ind: &InductionFock, c: usize, i: usize, n: usize) -> Result<Option<Scalar>, AlgebraError> {
    let v = p_i_vector(ind, &ClassFunctionG::k_basis(ind.group(), c), i, n)?;
    let t = p_i_class(c, i, n);
    if v.coeffs.len() == 1 && v.coeffs.contains_key(&t) {
        Ok(Some(v.get(&t)))
    } else {
        Ok(None)
    }
}

/// `ch` applied to a monomial, for callers that want a single vector.
pub fn characteristic_of(n: usize, rho: &TypeFunction) -> Result<WreathClassFunction, AlgebraError> {
    characteristic_map(n, &WreathClassFunction::basis(rho))
}
