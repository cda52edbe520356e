//! The graded space `sum_n R(G_n)` with two realizations of the Heisenberg
//! algebra, and the operators built from them.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::WreathClassFunction;
use crate::class_algebra::{ClassFunctionG, TensorClassFunction};
use crate::error::AlgebraError;
use crate::group::FiniteGroup;
use crate::partition::{enumerate_types, TypeFunction};
use crate::scalar::Scalar;

pub mod induction;
pub mod level_op;
pub mod operators;
pub mod symbolic;

pub use induction::InductionFock;
pub use level_op::{Comparison, LevelOperator, Mismatch};
pub use operators::FockContext;
pub use symbolic::{characteristic_map, characteristic_map_inverse, SymbolicFock, SymbolicFockVector};

/// Ordered basis labels per level `0..=L`. Both realizations index level `n`
/// by the type functions of norm `n`.
#[derive(Clone, Debug)]
pub struct FockBasis {
    levels: Vec<Vec<TypeFunction>>,
    index: Vec<HashMap<TypeFunction, usize>>,
}

impl FockBasis {
    pub fn new(num_classes: usize, max_level: usize) -> Self {
        let levels: Vec<Vec<TypeFunction>> =
            (0..=max_level).map(|n| enumerate_types(num_classes, n as u32)).collect();
        let index = levels
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
            .collect();
        FockBasis { levels, index }
    }

    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }
    pub fn dim(&self, n: usize) -> usize {
        self.levels[n].len()
    }
    pub fn types(&self, n: usize) -> &[TypeFunction] {
        &self.levels[n]
    }
    pub fn index_of(&self, t: &TypeFunction) -> Option<usize> {
        self.index.get(t.norm() as usize)?.get(t).copied()
    }
}

/// Finitely supported vector in `sum_n R(G_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FockVector {
    pub levels: BTreeMap<usize, WreathClassFunction>,
}

impl FockVector {
    pub fn vacuum() -> Self {
        Self::from_level(WreathClassFunction::unit(0))
    }

    pub fn from_level(f: WreathClassFunction) -> Self {
        let mut levels = BTreeMap::new();
        if !f.is_zero() {
            levels.insert(f.n, f);
        }
        FockVector { levels }
    }

    pub fn level(&self, n: usize) -> WreathClassFunction {
        self.levels.get(&n).cloned().unwrap_or_else(|| WreathClassFunction::zero(n))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, f) in &other.levels {
            let s = out.level(*n).add(f);
            if s.is_zero() {
                out.levels.remove(n);
            } else {
                out.levels.insert(*n, s);
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = FockVector::default();
        for (n, f) in &self.levels {
            let g = f.scale(s);
            if !g.is_zero() {
                out.levels.insert(*n, g);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.levels.is_empty()
    }
}

/// A realization of `p_m(K^c)` on level vectors indexed by type functions.
pub trait Realization {
    fn group(&self) -> &FiniteGroup;

    /// `p_m(K^c)` applied to a vector of level `v.n`. Modes `m < 0` create,
    /// `m > 0` annihilate, `p_0 = 0`. Levels below zero give the zero vector
    /// at level 0 marked by being empty.
    fn mode_k(&self, m: i64, c: usize, v: &WreathClassFunction) -> Result<WreathClassFunction, AlgebraError>;

    /// `p_m(gamma) = sum_c gamma(c) p_m(K^c)`.
    fn mode(&self, m: i64, gamma: &ClassFunctionG, v: &WreathClassFunction) -> Result<WreathClassFunction, AlgebraError> {
        let target = v.n as i64 - m;
        let mut out = WreathClassFunction::zero(target.max(0) as usize);
        if target < 0 || m == 0 {
            return Ok(out);
        }
        for (c, g) in gamma.values.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            out = out.add(&self.mode_k(m, c, v)?.scale(g));
        }
        Ok(out)
    }

    /// Apply a word of modes right to left.
    fn apply_word(&self, word: &[(i64, usize)], v: &WreathClassFunction) -> Result<WreathClassFunction, AlgebraError> {
        let mut cur = v.clone();
        for &(m, c) in word.iter().rev() {
            if cur.is_zero() {
                break;
            }
            if cur.n as i64 - m < 0 || m == 0 {
                return Ok(WreathClassFunction::zero(0));
            }
            cur = self.mode_k(m, c, &cur)?;
        }
        Ok(cur)
    }
}

/// `p_m(gamma)` as a level operator.
pub fn mode_operator<R: Realization + ?Sized>(
    r: &R,
    basis: &FockBasis,
    m: i64,
    gamma: &ClassFunctionG,
) -> Result<LevelOperator, AlgebraError> {
    LevelOperator::from_map(basis, -m, |_, rho| r.mode(m, gamma, &WreathClassFunction::basis(rho)))
}

/// Ordered mode tuples of length `k`, nonzero entries, summing to `n`,
/// with each entry bounded by `bound` in absolute value.
pub(crate) fn mode_tuples(k: usize, n: i64, bound: i64) -> Vec<Vec<i64>> {
    fn go(k: usize, left: i64, bound: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == 1 {
            if left != 0 && left.abs() <= bound {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for m in -bound..=bound {
            if m == 0 {
                continue;
            }
            cur.push(m);
            go(k - 1, left - m, bound, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if n == 0 {
            out.push(vec![]);
        }
        return out;
    }
    go(k, n, bound, &mut vec![], &mut out);
    out
}

/// Mode `n` of `:p(z)^k:` evaluated on `t` in `R(G)^{(x)k}`: the sum over
/// ordered `(m_1..m_k)` with `sum m_i = n` of `t`-weighted normally ordered
/// products, annihilators (larger modes) to the right.
pub fn normally_ordered_power<R: Realization + ?Sized>(
    r: &R,
    basis: &FockBasis,
    t: &TensorClassFunction,
    n: i64,
) -> Result<LevelOperator, AlgebraError> {
    let k = t.arity;
    let bound = basis.max_level() as i64 + n.abs();
    let tuples = mode_tuples(k, n, bound);
    LevelOperator::from_map(basis, -n, |level, rho| {
        let v = WreathClassFunction::basis(rho);
        let target = (level as i64 - n) as usize;
        let mut out = WreathClassFunction::zero(target);
        for modes in &tuples {
            let pos: i64 = modes.iter().filter(|&&m| m > 0).sum();
            if pos > level as i64 {
                continue;
            }
            for (key, coeff) in &t.entries {
                let mut word: Vec<(i64, usize)> = modes.iter().copied().zip(key.iter().copied()).collect();
                // stable sort keeps the tensor order among equal modes
                word.sort_by_key(|&(m, _)| m);
                let w = r.apply_word(&word, &v)?;
                if !w.is_zero() {
                    out = out.add(&w.scale(coeff));
                }
            }
        }
        Ok(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_count() {
        // pairs (a, b), a + b = 0, nonzero, |a| <= 2
        assert_eq!(mode_tuples(2, 0, 2).len(), 4);
        assert_eq!(mode_tuples(1, 3, 2).len(), 0);
        assert_eq!(mode_tuples(3, 0, 1).len(), 0);
    }
}
