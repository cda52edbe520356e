//! Polynomial realization: `p_{-r}(K^c)` multiplies by `x_{r,c}` and
//! `p_r(K^c)` acts as `r zeta_c^-1 d/dx_{r,c^-1}`.

use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;

use super::{FockBasis, Realization};
use crate::algebra::WreathClassFunction;
use crate::error::AlgebraError;
use crate::group::FiniteGroup;
use crate::linalg::Matrix;
use crate::partition::TypeFunction;
use crate::scalar::Scalar;

/// A polynomial in the `x_{r,c}`, homogeneous of weighted degree `n`. The
/// monomial `prod x_{r,c}^{m_r(c)}` is labelled by the type function with
/// those multiplicities, so the storage is the same as a level class function.
pub type SymbolicFockVector = WreathClassFunction;

#[derive(Clone, Debug)]
pub struct SymbolicFock {
    group: Arc<FiniteGroup>,
}

fn big(n: BigUint) -> Scalar {
    Scalar::from(BigRational::from_integer(n.into()))
}

fn binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

impl SymbolicFock {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        SymbolicFock { group }
    }

    pub fn sym_create(&self, r: u32, c: usize, v: &SymbolicFockVector) -> SymbolicFockVector {
        let mut out = WreathClassFunction::zero(v.n + r as usize);
        for (rho, a) in &v.coeffs {
            out.add_term(&rho.with_part(c, r), a);
        }
        out
    }

    pub fn sym_annihilate(&self, r: u32, c: usize, v: &SymbolicFockVector) -> SymbolicFockVector {
        let ci = self.group.inv_class(c);
        let mut out = WreathClassFunction::zero(v.n.saturating_sub(r as usize));
        if (r as usize) > v.n {
            return out;
        }
        let k = Scalar::from_ratio(r as i64, self.group.zeta(c) as i64);
        for (rho, a) in &v.coeffs {
            let m = rho.multiplicity(ci, r);
            if m == 0 {
                continue;
            }
            let rest = rho.without_part(ci, r).expect("part present");
            out.add_term(&rest, &(&(a * &k) * &Scalar::from_int(m)));
        }
        out
    }
}

impl Realization for SymbolicFock {
    fn group(&self) -> &FiniteGroup {
        &self.group
    }

    fn mode_k(&self, m: i64, c: usize, v: &WreathClassFunction) -> Result<WreathClassFunction, AlgebraError> {
        Ok(match m {
            0 => WreathClassFunction::zero(v.n),
            m if m < 0 => self.sym_create((-m) as u32, c, v),
            m => self.sym_annihilate(m as u32, c, v),
        })
    }
}

/// `x^rho -> z~_rho binom(n - |rho| + m_1(c0), m_1(c0)) K^{rho~}` with
/// `rho~` the padding of `rho` by identity 1-cycles up to norm `n`.
pub fn characteristic_map(n: usize, sym: &SymbolicFockVector) -> Result<WreathClassFunction, AlgebraError> {
    let mut out = WreathClassFunction::zero(n);
    for (rho, a) in &sym.coeffs {
        let norm = rho.norm() as usize;
        if norm > n {
            return Err(AlgebraError::LevelMismatch(norm, n));
        }
        let pad = (n - norm) as u64;
        let m1 = rho.multiplicity(0, 1) as u64;
        let coeff = big(rho.z_tilde() * binomial(pad + m1, m1));
        out.add_term(&rho.padded(pad as u32), &(a * &coeff));
    }
    Ok(out)
}

/// Inverse on a single level: `K^rho -> x^rho / z~_rho`.
pub fn characteristic_map_inverse(f: &WreathClassFunction) -> Result<SymbolicFockVector, AlgebraError> {
    let mut out = WreathClassFunction::zero(f.n);
    for (rho, a) in &f.coeffs {
        out.add_term(rho, &(a / &big(rho.z_tilde())));
    }
    Ok(out)
}

/// Per-level matrices of the characteristic map (symbolic to induction) and
/// its inverse, in the basis order of `basis`.
pub fn characteristic_matrices(basis: &FockBasis) -> (Vec<Matrix>, Vec<Matrix>) {
    let mut fwd = Vec::new();
    let mut inv = Vec::new();
    for n in 0..=basis.max_level() {
        let d = basis.dim(n);
        let mut a = Matrix::zeros(d, d);
        let mut b = Matrix::zeros(d, d);
        for (i, rho) in basis.types(n).iter().enumerate() {
            let z = big(rho.z_tilde());
            b.set(i, i, (&Scalar::one() / &z).clone());
            a.set(i, i, z);
        }
        fwd.push(a);
        inv.push(b);
    }
    (fwd, inv)
}

/// Monomial label for a product of creation modes.
pub fn monomial(parts: &[(u32, usize)]) -> TypeFunction {
    parts.iter().fold(TypeFunction::empty(), |t, &(r, c)| t.with_part(c, r))
}
