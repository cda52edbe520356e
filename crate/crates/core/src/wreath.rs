//! Wreath products `G_n = G wr S_n`: elements, products, cycle-products and types.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::AlgebraError;
use crate::group::FiniteGroup;
use crate::partition::{enumerate_types, Partition, TypeFunction};

pub const DEFAULT_ENUM_CAP: u128 = 1_000_000;
pub const ENUM_CAP_VAR: &str = "CLASSALG_ENUM_CAP";

/// Largest group order that may be enumerated element by element.
pub fn enumeration_cap() -> u128 {
    std::env::var(ENUM_CAP_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUM_CAP)
}

/// `(g, sigma)` with `sigma` in one-line form on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WreathElement {
    pub g: Vec<u32>,
    pub sigma: Vec<u32>,
}

impl WreathElement {
    pub fn n(&self) -> usize {
        self.sigma.len()
    }
}

/// `G_n` for a fixed group and level.
#[derive(Clone, Debug)]
pub struct Wreath {
    group: Arc<FiniteGroup>,
    n: usize,
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

impl Wreath {
    pub fn new(group: Arc<FiniteGroup>, n: usize) -> Self {
        Wreath { group, n }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `|G|^n n!`, saturating.
    pub fn order(&self) -> u128 {
        let mut o = factorial(self.n);
        for _ in 0..self.n {
            o = o.saturating_mul(self.group.order() as u128);
        }
        o
    }

    pub fn check_cap(&self) -> Result<(), AlgebraError> {
        let cap = enumeration_cap();
        let size = self.order();
        if size > cap {
            Err(AlgebraError::ResourceLimit { size, cap })
        } else {
            Ok(())
        }
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement {
            g: vec![self.group.identity(); self.n],
            sigma: (0..self.n as u32).collect(),
        }
    }

    fn check(&self, x: &WreathElement) -> Result<(), AlgebraError> {
        if x.n() != self.n || x.g.len() != self.n {
            return Err(AlgebraError::LevelMismatch(x.n(), self.n));
        }
        Ok(())
    }

    /// `(g, s)(h, t) = (g . s(h), s t)` with `s(h)_i = h_{s^-1(i)}`.
    pub fn mul(&self, x: &WreathElement, y: &WreathElement) -> Result<WreathElement, AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub fn mul_unchecked(&self, x: &WreathElement, y: &WreathElement) -> WreathElement {
        let n = self.n;
        let mut g = vec![0u32; n];
        let mut sigma = vec![0u32; n];
        for j in 0..n {
            // s^-1(i) = j  <=>  i = s(j)
            let i = x.sigma[j] as usize;
            g[i] = self.group.mul(x.g[i], y.g[j]);
            sigma[j] = x.sigma[y.sigma[j] as usize];
        }
        WreathElement { g, sigma }
    }

    pub fn inverse(&self, x: &WreathElement) -> WreathElement {
        // (g, s)^-1 = (s^-1(g^-1), s^-1)
        let n = self.n;
        let mut sinv = vec![0u32; n];
        for (i, &s) in x.sigma.iter().enumerate() {
            sinv[s as usize] = i as u32;
        }
        let mut g = vec![0u32; n];
        for (i, &s) in x.sigma.iter().enumerate() {
            // s^-1(h)_i = h_{s(i)}
            g[i] = self.group.inv(x.g[s as usize]);
        }
        WreathElement { g, sigma: sinv }
    }

    /// Cycles of `sigma` as position lists, each starting at its least point,
    /// following `i -> sigma(i)`.
    pub fn cycles(x: &WreathElement) -> Vec<Vec<usize>> {
        let n = x.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cyc = vec![s];
            seen[s] = true;
            let mut i = x.sigma[s] as usize;
            while i != s {
                seen[i] = true;
                cyc.push(i);
                i = x.sigma[i] as usize;
            }
            out.push(cyc);
        }
        out
    }

    /// Class of `g_{i_k} ... g_{i_1}` for the cycle `(i_1 ... i_k)`.
    pub fn cycle_product(&self, x: &WreathElement, cycle: &[usize]) -> Result<usize, AlgebraError> {
        self.check(x)?;
        let k = cycle.len();
        if k == 0 || cycle.iter().any(|&i| i >= self.n) {
            return Err(AlgebraError::NotACycle);
        }
        for j in 0..k {
            if x.sigma[cycle[j]] as usize != cycle[(j + 1) % k] {
                return Err(AlgebraError::NotACycle);
            }
        }
        Ok(self.group.class_of(self.raw_cycle_product(x, cycle)))
    }

    fn raw_cycle_product(&self, x: &WreathElement, cycle: &[usize]) -> u32 {
        let mut acc = self.group.identity();
        for &i in cycle {
            acc = self.group.mul(x.g[i], acc);
        }
        acc
    }

    pub fn type_of(&self, x: &WreathElement) -> TypeFunction {
        TypeFunction::from_pairs(Self::cycles(x).into_iter().map(|cyc| {
            let c = self.group.class_of(self.raw_cycle_product(x, &cyc));
            (c, Partition::new(vec![cyc.len() as u32]))
        }))
    }

    /// Type of `x` restricted to the positions in `support` (which must be
    /// a union of cycles); fixed points in `support` count as 1-cycles.
    pub fn type_on(&self, x: &WreathElement, support: &[bool]) -> TypeFunction {
        TypeFunction::from_pairs(
            Self::cycles(x)
                .into_iter()
                .filter(|cyc| support[cyc[0]])
                .map(|cyc| {
                    let c = self.group.class_of(self.raw_cycle_product(x, &cyc));
                    (c, Partition::new(vec![cyc.len() as u32]))
                }),
        )
    }

    /// Canonical representative: cycles occupy consecutive positions in the
    /// order of the type's entries, with the class representative at the
    /// first position of each cycle.
    pub fn class_rep(&self, rho: &TypeFunction) -> Result<WreathElement, AlgebraError> {
        if rho.norm() as usize != self.n {
            return Err(AlgebraError::LevelMismatch(rho.norm() as usize, self.n));
        }
        let mut x = self.identity();
        let mut pos = 0usize;
        for (c, p) in rho.entries() {
            for &r in p.parts() {
                let r = r as usize;
                for j in 0..r {
                    x.sigma[pos + j] = (pos + (j + 1) % r) as u32;
                }
                x.g[pos] = self.group.class_rep(*c);
                pos += r;
            }
        }
        Ok(x)
    }

    pub fn types(&self) -> Vec<TypeFunction> {
        enumerate_types(self.group.num_classes(), self.n as u32)
    }

    /// Dense index: Lehmer rank of sigma times `|G|^n`, plus g as base-|G| digits.
    pub fn rank(&self, x: &WreathElement) -> u64 {
        let n = self.n;
        let q = self.group.order() as u64;
        let mut r = 0u64;
        for i in 0..n {
            let smaller = x.sigma[i + 1..].iter().filter(|&&s| s < x.sigma[i]).count() as u64;
            r = r * (n - i) as u64 + smaller;
        }
        let mut gr = 0u64;
        for i in (0..n).rev() {
            gr = gr * q + x.g[i] as u64;
        }
        r * q.pow(n as u32) + gr
    }

    pub fn unrank(&self, mut r: u64) -> WreathElement {
        let n = self.n;
        let q = self.group.order() as u64;
        let qn = q.pow(n as u32);
        let mut gr = r % qn;
        r /= qn;
        let mut g = vec![0u32; n];
        for gi in g.iter_mut() {
            *gi = (gr % q) as u32;
            gr /= q;
        }
        let mut digits = vec![0usize; n];
        for i in (0..n).rev() {
            let base = (n - i) as u64;
            digits[i] = (r % base) as usize;
            r /= base;
        }
        let mut avail: Vec<u32> = (0..n as u32).collect();
        let sigma = digits.into_iter().map(|d| avail.remove(d)).collect();
        WreathElement { g, sigma }
    }

    /// Every element, in rank order. Fails above the enumeration cap.
    pub fn elements(&self) -> Result<impl Iterator<Item = WreathElement> + '_, AlgebraError> {
        self.check_cap()?;
        let total = self.order() as u64;
        Ok((0..total).map(move |r| self.unrank(r)))
    }

    /// Elements of type `rho`, by filtering the group.
    pub fn enumerate_class<'a>(
        &'a self,
        rho: &'a TypeFunction,
    ) -> Result<impl Iterator<Item = WreathElement> + 'a, AlgebraError> {
        if rho.norm() as usize != self.n {
            return Err(AlgebraError::LevelMismatch(rho.norm() as usize, self.n));
        }
        Ok(self.elements()?.filter(move |x| self.type_of(x) == *rho))
    }
}

/// `Z_rho = prod_c z_{rho(c)} zeta_c^{l(rho(c))}`.
pub fn centralizer_order(group: &FiniteGroup, rho: &TypeFunction) -> BigUint {
    let mut z = BigUint::one();
    for (c, p) in rho.entries() {
        z *= p.z();
        z *= BigUint::from(group.zeta(*c)).pow(p.len() as u32);
    }
    z
}

pub fn wreath_order(group: &FiniteGroup, n: usize) -> BigUint {
    let mut o = BigUint::one();
    for k in 1..=n {
        o *= BigUint::from(k) * BigUint::from(group.order());
    }
    o
}

pub fn class_size(group: &FiniteGroup, rho: &TypeFunction) -> BigUint {
    wreath_order(group, rho.norm() as usize) / centralizer_order(group, rho)
}

pub fn class_size_u64(group: &FiniteGroup, rho: &TypeFunction) -> u64 {
    class_size(group, rho).to_u64().expect("class size fits in u64")
}

#[derive(Serialize)]
pub struct ClassRow {
    #[serde(rename = "type")]
    pub ty: TypeFunction,
    pub size: String,
    pub centralizer: String,
}

/// Table of all classes of `G_n`.
pub fn class_table(group: &FiniteGroup, n: usize) -> Vec<ClassRow> {
    enumerate_types(group.num_classes(), n as u32)
        .into_iter()
        .map(|ty| ClassRow {
            size: class_size(group, &ty).to_string(),
            centralizer: centralizer_order(group, &ty).to_string(),
            ty,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::load_preset;

    fn w(name: &str, n: usize) -> Wreath {
        Wreath::new(Arc::new(load_preset(name).unwrap().group), n)
    }

    #[test]
    fn rank_roundtrip() {
        let wr = w("sym3", 3);
        for r in (0..wr.order() as u64).step_by(7) {
            assert_eq!(wr.rank(&wr.unrank(r)), r);
        }
    }

    #[test]
    fn hand_product() {
        // ((1,s),(12)) * ((s,1),(12)): s(h) = (1,s), so g.s(h) = (1,1)
        let wr = w("cyclic2", 2);
        let x = WreathElement { g: vec![0, 1], sigma: vec![1, 0] };
        let y = WreathElement { g: vec![1, 0], sigma: vec![1, 0] };
        assert_eq!(wr.mul(&x, &y).unwrap(), wr.identity());
        let z = WreathElement { g: vec![1, 0], sigma: vec![0, 1] };
        assert_eq!(wr.mul(&x, &z).unwrap(), WreathElement { g: vec![0, 0], sigma: vec![1, 0] });
    }

    #[test]
    fn inverse_works() {
        let wr = w("sym3", 3);
        for r in (0..wr.order() as u64).step_by(11) {
            let x = wr.unrank(r);
            assert_eq!(wr.mul_unchecked(&x, &wr.inverse(&x)), wr.identity());
        }
    }

    #[test]
    fn reps_have_their_type() {
        let wr = w("sym3", 3);
        for t in wr.types() {
            assert_eq!(wr.type_of(&wr.class_rep(&t).unwrap()), t);
        }
    }

    #[test]
    fn not_a_cycle() {
        let wr = w("cyclic2", 3);
        let x = WreathElement { g: vec![0, 0, 0], sigma: vec![1, 0, 2] };
        assert!(wr.cycle_product(&x, &[0, 2]).is_err());
        assert_eq!(wr.cycle_product(&x, &[1, 0]).unwrap(), 0);
    }
}
