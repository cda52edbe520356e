//! Heisenberg operators by induction and restriction between wreath products.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{FockVector, Realization};
use crate::algebra::{WreathAlgebra, WreathClassFunction};
use crate::class_algebra::ClassFunctionG;
use crate::error::AlgebraError;
use crate::group::FiniteGroup;
use crate::partition::TypeFunction;
use crate::scalar::Scalar;
use crate::wreath::{centralizer_order, wreath_order, Wreath, WreathElement};

/// For `N = n + m` and each type `nu` of `G_N`:
/// `T[nu][(rho1, rho2)] = #{g in G_N : g x_nu g^-1 in G_n x G_m with types rho1, rho2}`.
type InductionTable = HashMap<TypeFunction, Vec<((TypeFunction, TypeFunction), u64)>>;

/// The group-theoretic realization: `p_{-n}(gamma)` is induction of
/// `sigma_n(gamma) (x) v` from `G_n x G_m`, and `p_n(gamma)` is restriction
/// followed by pairing the first factor with `sigma_n(gamma)`.
#[derive(Debug)]
pub struct InductionFock {
    group: Arc<FiniteGroup>,
    tables: Mutex<HashMap<(usize, usize), Arc<InductionTable>>>,
}

impl InductionFock {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        InductionFock { group, tables: Mutex::new(HashMap::new()) }
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Class function on `G_n` with value `n gamma(c)` on the n-cycle class
    /// colored `c`, zero elsewhere.
    pub fn sigma_n_class(&self, n: usize, gamma: &ClassFunctionG) -> WreathClassFunction {
        let mut f = WreathClassFunction::zero(n);
        for (c, v) in gamma.values.iter().enumerate() {
            f.add_term(&TypeFunction::cycle(c, n as u32), &(v * &Scalar::from_int(n as i64)));
        }
        f
    }

    fn split(
        &self,
        wn: &Wreath,
        wm: &Wreath,
        y: &WreathElement,
    ) -> Option<(TypeFunction, TypeFunction)> {
        let n = wn.n();
        if y.sigma[..n].iter().any(|&s| s as usize >= n) {
            return None;
        }
        let a = WreathElement { g: y.g[..n].to_vec(), sigma: y.sigma[..n].to_vec() };
        let b = WreathElement {
            g: y.g[n..].to_vec(),
            sigma: y.sigma[n..].iter().map(|&s| s - n as u32).collect(),
        };
        Some((wn.type_of(&a), wm.type_of(&b)))
    }

    fn table(&self, n: usize, m: usize) -> Result<Arc<InductionTable>, AlgebraError> {
        if let Some(t) = self.tables.lock().unwrap().get(&(n, m)) {
            return Ok(t.clone());
        }
        let big = WreathAlgebra::get(&self.group, n + m)?;
        let wn = Wreath::new(self.group.clone(), n);
        let wm = Wreath::new(self.group.clone(), m);
        let w = big.wreath();
        // memoized split of each element of G_N, by rank
        let mut memo: Vec<Option<Option<(TypeFunction, TypeFunction)>>> = vec![None; big.elements().len()];
        let inverses: Vec<WreathElement> = big.elements().iter().map(|g| w.inverse(g)).collect();
        let mut table = InductionTable::new();
        for nu in big.types() {
            let x = w.class_rep(nu)?;
            let mut counts: HashMap<(TypeFunction, TypeFunction), u64> = HashMap::new();
            for (g, ginv) in big.elements().iter().zip(&inverses) {
                let y = w.mul_unchecked(&w.mul_unchecked(g, &x), ginv);
                let r = w.rank(&y) as usize;
                if memo[r].is_none() {
                    memo[r] = Some(self.split(&wn, &wm, &y));
                }
                if let Some(Some(pair)) = &memo[r] {
                    *counts.entry(pair.clone()).or_insert(0) += 1;
                }
            }
            let mut v: Vec<_> = counts.into_iter().collect();
            v.sort();
            table.insert(nu.clone(), v);
        }
        let t = Arc::new(table);
        self.tables.lock().unwrap().insert((n, m), t.clone());
        Ok(t)
    }

    /// `Ind_{G_n x G_m}^{G_{n+m}} (f (x) v)` by the sum over the big group.
    pub fn induce(&self, f: &WreathClassFunction, v: &WreathClassFunction) -> Result<WreathClassFunction, AlgebraError> {
        let (n, m) = (f.n, v.n);
        let table = self.table(n, m)?;
        let h = wreath_order(&self.group, n) * wreath_order(&self.group, m);
        let inv_h = Scalar::from(num_rational::BigRational::new(1.into(), h.into()));
        let mut out = WreathClassFunction::zero(n + m);
        for (nu, entries) in table.iter() {
            let mut acc = Scalar::zero();
            for ((r1, r2), count) in entries {
                let a = f.get(r1);
                if a.is_zero() {
                    continue;
                }
                let b = v.get(r2);
                if b.is_zero() {
                    continue;
                }
                acc += &(&(&a * &b) * &Scalar::from_int(*count));
            }
            out.add_term(nu, &(&acc * &inv_h));
        }
        Ok(out)
    }

    /// `p_{-n}(gamma)` on one level.
    pub fn create(&self, n: usize, gamma: &ClassFunctionG, v: &WreathClassFunction) -> Result<WreathClassFunction, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::OutOfRange { what: "n", value: 0 });
        }
        self.induce(&self.sigma_n_class(n, gamma), v)
    }

    /// `p_n(gamma)` on one level: `(p_n v)(rho2) = sum_c zeta_c^-1 gamma(c) v((x_{c,n}^-1, x_rho2))`.
    pub fn annihilate(&self, n: usize, gamma: &ClassFunctionG, v: &WreathClassFunction) -> Result<WreathClassFunction, AlgebraError> {
        if n == 0 {
            return Ok(WreathClassFunction::zero(v.n));
        }
        if n > v.n {
            return Ok(WreathClassFunction::zero(0));
        }
        let m = v.n;
        let wn = Wreath::new(self.group.clone(), n);
        let wr = Wreath::new(self.group.clone(), m - n);
        let wm = Wreath::new(self.group.clone(), m);
        let mut out = WreathClassFunction::zero(m - n);
        for rho2 in wr.types() {
            let y = wr.class_rep(&rho2)?;
            let mut acc = Scalar::zero();
            for (c, gv) in gamma.values.iter().enumerate() {
                if gv.is_zero() {
                    continue;
                }
                let x = wn.inverse(&wn.class_rep(&TypeFunction::cycle(c, n as u32))?);
                let mut g = x.g.clone();
                g.extend_from_slice(&y.g);
                let mut sigma = x.sigma.clone();
                sigma.extend(y.sigma.iter().map(|s| s + n as u32));
                let t = wm.type_of(&WreathElement { g, sigma });
                let val = v.get(&t);
                if !val.is_zero() {
                    acc += &(&(gv * &val) * &Scalar::from_ratio(1, self.group.zeta(c) as i64));
                }
            }
            out.add_term(&rho2, &acc);
        }
        Ok(out)
    }

    pub fn heis_create(&self, n: usize, gamma: &ClassFunctionG, v: &FockVector) -> Result<FockVector, AlgebraError> {
        let mut out = FockVector::default();
        for f in v.levels.values() {
            out = out.add(&FockVector::from_level(self.create(n, gamma, f)?));
        }
        Ok(out)
    }

    pub fn heis_annihilate(&self, n: usize, gamma: &ClassFunctionG, v: &FockVector) -> Result<FockVector, AlgebraError> {
        let mut out = FockVector::default();
        for f in v.levels.values() {
            if f.n >= n && n > 0 {
                out = out.add(&FockVector::from_level(self.annihilate(n, gamma, f)?));
            }
        }
        Ok(out)
    }

    /// Independent form of `p_{-1}(gamma)`: `1/(n-1)! sum_{g in S_n} ad g (y (x) gamma)`
    /// computed in the group algebra of `G_n`, `n = level(y) + 1`.
    pub fn heis_create_avg(&self, gamma: &ClassFunctionG, y: &WreathClassFunction) -> Result<WreathClassFunction, AlgebraError> {
        let m = y.n;
        let n = m + 1;
        let small = WreathAlgebra::get(&self.group, m)?;
        let big = WreathAlgebra::get(&self.group, n)?;
        let w = big.wreath();
        let mut acc: HashMap<u64, Scalar> = HashMap::new();
        let perms: Vec<WreathElement> = big
            .elements()
            .iter()
            .filter(|e| e.g.iter().all(|&x| x == self.group.identity()))
            .cloned()
            .collect();
        for (ra, a) in small.elements().iter().enumerate() {
            let ya = y.get(small.type_of_rank(ra as u64));
            if ya.is_zero() {
                continue;
            }
            for b in 0..self.group.order() as u32 {
                let gb = &gamma.values[self.group.class_of(b)];
                if gb.is_zero() {
                    continue;
                }
                let coeff = &ya * gb;
                let mut g = a.g.clone();
                g.push(b);
                let mut sigma = a.sigma.clone();
                sigma.push(m as u32);
                let x = WreathElement { g, sigma };
                for p in &perms {
                    let conj = w.mul_unchecked(&w.mul_unchecked(p, &x), &w.inverse(p));
                    *acc.entry(w.rank(&conj)).or_default() += &coeff;
                }
            }
        }
        let fact: i64 = (1..=m as i64).product();
        let mut elt = crate::algebra::GroupAlgebraElement::zero(n);
        let s = Scalar::from_ratio(1, fact);
        for (r, v) in acc {
            elt.add_term(r, &(&v * &s));
        }
        big.to_class_function(&elt)
    }

    /// The form on `R(G_n)`: `sum_rho Z_rho^-1 f(rho) g(rho^-1)`.
    pub fn level_form(&self, f: &WreathClassFunction, g: &WreathClassFunction) -> Result<Scalar, AlgebraError> {
        if f.n != g.n {
            return Err(AlgebraError::LevelMismatch(f.n, g.n));
        }
        let grp = &self.group;
        let mut acc = Scalar::zero();
        for (rho, v) in &f.coeffs {
            let dual = rho.map_classes(|c| grp.inv_class(c));
            let w = g.get(&dual);
            if w.is_zero() {
                continue;
            }
            let z = centralizer_order(grp, rho);
            let zinv = Scalar::from(num_rational::BigRational::new(1.into(), z.into()));
            acc += &(&(v * &w) * &zinv);
        }
        Ok(acc)
    }
}

impl Realization for InductionFock {
    fn group(&self) -> &FiniteGroup {
        &self.group
    }

    fn mode_k(&self, m: i64, c: usize, v: &WreathClassFunction) -> Result<WreathClassFunction, AlgebraError> {
        let k = ClassFunctionG::k_basis(&self.group, c);
        match m {
            0 => Ok(WreathClassFunction::zero(v.n)),
            m if m < 0 => self.create((-m) as usize, &k, v),
            m => self.annihilate(m as usize, &k, v),
        }
    }
}
