//! Normally ordered polynomials in `J^0` and their derivatives, and the
//! level-one realization of the differential operators through them.

use std::collections::BTreeMap;
use std::fmt;

use super::diffop::{to_falling, DiffOpElement, Winf};
use crate::algebra::WreathClassFunction;
use crate::class_algebra::ClassFunctionG;
use crate::error::AlgebraError;
use crate::fock::{mode_tuples, FockBasis, LevelOperator, Realization};
use crate::scalar::Scalar;

/// `sum coeff * :prod_i d^{a_i} J0:`, keyed by the sorted derivative orders.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NormalOrderedExpr {
    pub terms: BTreeMap<Vec<u32>, i64>,
}

impl NormalOrderedExpr {
    pub fn j0() -> Self {
        Self::word(&[0], 1)
    }

    pub fn word(orders: &[u32], coeff: i64) -> Self {
        let mut w = orders.to_vec();
        w.sort_unstable();
        let mut e = Self::default();
        e.terms.insert(w, coeff);
        e
    }

    fn add_word(&mut self, mut w: Vec<u32>, c: i64) {
        w.sort_unstable();
        let slot = self.terms.entry(w.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_word(w.clone(), *c);
        }
        out
    }

    /// `:J0 * self:`.
    pub fn times_j0(&self) -> Self {
        let mut out = Self::default();
        for (w, c) in &self.terms {
            let mut v = w.clone();
            v.push(0);
            out.add_word(v, *c);
        }
        out
    }

    /// Leibniz rule inside the normal ordering.
    pub fn derivative(&self) -> Self {
        let mut out = Self::default();
        for (w, c) in &self.terms {
            for i in 0..w.len() {
                let mut v = w.clone();
                v[i] += 1;
                out.add_word(v, *c);
            }
        }
        out
    }
}

impl fmt::Display for NormalOrderedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        // longer words first, as usually written
        let mut words: Vec<_> = self.terms.iter().collect();
        words.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(b.0)));
        for (w, c) in words {
            let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
            for a in w {
                *counts.entry(*a).or_insert(0) += 1;
            }
            let factors: Vec<String> = counts
                .iter()
                .map(|(a, m)| {
                    let base = match a {
                        0 => "J0".to_string(),
                        1 => "dJ0".to_string(),
                        _ => format!("d^{a}J0"),
                    };
                    if *m > 1 { format!("({base})^{m}") } else { base }
                })
                .collect();
            let body = factors.join(" ");
            let body = if w.len() > 1 { format!(":{body}:") } else { body };
            parts.push(if *c == 1 { body } else { format!("{c} {body}") });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `P_1 = J0`, `P_{l+1} = :J0 P_l: + d P_l`.
pub fn p_l_polynomial(l: usize) -> NormalOrderedExpr {
    let mut p = NormalOrderedExpr::j0();
    for _ in 1..l.max(1) {
        p = p.times_j0().add(&p.derivative());
    }
    p
}

fn falling_at(x: i64, a: u32) -> i64 {
    (0..a as i64).map(|i| x - i).product()
}

/// Mode `k` of a normally ordered expression with `J0_n = p_n(gamma)`:
/// `sum_{n_1 + ... + n_p = k} prod_i [-n_i - 1]_{a_i} :prod_i p_{n_i}(gamma):`.
pub fn expr_mode<R: Realization + ?Sized>(
    r: &R,
    basis: &FockBasis,
    expr: &NormalOrderedExpr,
    k: i64,
    gamma: &ClassFunctionG,
) -> Result<LevelOperator, AlgebraError> {
    let bound = basis.max_level() as i64 + k.abs();
    let mut words = Vec::new();
    for (orders, c) in &expr.terms {
        for modes in mode_tuples(orders.len(), k, bound) {
            let w: i64 = modes.iter().zip(orders).map(|(n, a)| falling_at(-n - 1, *a)).product();
            if w != 0 {
                let mut sorted = modes.clone();
                sorted.sort_unstable();
                words.push((sorted, c * w));
            }
        }
    }
    LevelOperator::from_map(basis, -k, |level, rho| {
        let v = WreathClassFunction::basis(rho);
        let mut out = WreathClassFunction::zero((level as i64 - k) as usize);
        for (modes, w) in &words {
            let pos: i64 = modes.iter().filter(|&&m| m > 0).sum();
            if pos > level as i64 {
                continue;
            }
            let mut cur = v.clone();
            for &m in modes.iter().rev() {
                cur = r.mode(m, gamma, &cur)?;
                if cur.is_zero() {
                    break;
                }
            }
            if !cur.is_zero() {
                out = out.add(&cur.scale(&Scalar::from_int(*w)));
            }
        }
        Ok(out)
    })
}

/// `J^l_k(gamma) -> 1/(l+1) mode_k(P_{l+1}(J0(gamma)))`, `C -> 1`.
pub fn realize<R: Realization + ?Sized>(
    r: &R,
    basis: &FockBasis,
    winf: &Winf,
    x: &DiffOpElement,
    shift_r: i64,
) -> Result<LevelOperator, AlgebraError> {
    let mut out = LevelOperator::zero(basis, -shift_r);
    let mut cache: BTreeMap<usize, NormalOrderedExpr> = BTreeMap::new();
    for ((rr, a), f) in &x.terms {
        if *rr != shift_r {
            return Err(AlgebraError::ShiftMismatch(-rr, -shift_r));
        }
        let gamma = winf.table().row(*a);
        for (l, b) in to_falling(f).iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let p = cache.entry(l + 1).or_insert_with(|| p_l_polynomial(l + 1));
            // t^r [D]_l (x) e_a = -J^l_r(gamma_a)
            let op = expr_mode(r, basis, p, *rr, gamma)?;
            out = out.add(&op.scale(&(&-b / &Scalar::from_int(l as i64 + 1))))?;
        }
    }
    if !x.central.is_zero() {
        if shift_r != 0 {
            return Err(AlgebraError::ShiftMismatch(0, -shift_r));
        }
        out = out.add(&LevelOperator::identity(basis).scale(&x.central))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_entries() {
        assert_eq!(p_l_polynomial(1), NormalOrderedExpr::j0());
        let p2 = NormalOrderedExpr::word(&[0, 0], 1).add(&NormalOrderedExpr::word(&[1], 1));
        assert_eq!(p_l_polynomial(2), p2);
        let p3 = NormalOrderedExpr::word(&[0, 0, 0], 1)
            .add(&NormalOrderedExpr::word(&[0, 1], 3))
            .add(&NormalOrderedExpr::word(&[2], 1));
        assert_eq!(p_l_polynomial(3), p3);
        assert_eq!(p_l_polynomial(3).to_string(), ":(J0)^3: + 3 :J0 dJ0: + d^2J0");
    }
}
