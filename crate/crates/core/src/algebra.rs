//! The group algebra of `G_n`, its center `R(G_n)`, and Jucys-Murphy elements.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::class_algebra::ClassFunctionG;
use crate::error::AlgebraError;
use crate::group::FiniteGroup;
use crate::linalg::EchelonBasis;
use crate::partition::TypeFunction;
use crate::scalar::Scalar;
use crate::wreath::{class_size_u64, Wreath, WreathElement};

/// Sparse `sum_rho coeff(rho) K^rho` where `K^rho` is the class sum.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WreathClassFunction {
    pub n: usize,
    pub coeffs: BTreeMap<TypeFunction, Scalar>,
}

impl WreathClassFunction {
    pub fn zero(n: usize) -> Self {
        WreathClassFunction { n, coeffs: BTreeMap::new() }
    }

    pub fn basis(rho: &TypeFunction) -> Self {
        let mut f = Self::zero(rho.norm() as usize);
        f.coeffs.insert(rho.clone(), Scalar::one());
        f
    }

    pub fn unit(n: usize) -> Self {
        Self::basis(&TypeFunction::identity(n as u32))
    }

    pub fn get(&self, rho: &TypeFunction) -> Scalar {
        self.coeffs.get(rho).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, rho: &TypeFunction, v: &Scalar) {
        debug_assert_eq!(rho.norm() as usize, self.n);
        if v.is_zero() {
            return;
        }
        match self.coeffs.get_mut(rho) {
            Some(slot) => {
                *slot += v;
                if slot.is_zero() {
                    self.coeffs.remove(rho);
                }
            }
            None => {
                self.coeffs.insert(rho.clone(), v.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(k, v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zero(self.n);
        if s.is_zero() {
            return out;
        }
        for (k, v) in &self.coeffs {
            out.coeffs.insert(k.clone(), v * s);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coordinates in a given ordered list of types.
    pub fn to_vec(&self, types: &[TypeFunction]) -> Vec<Scalar> {
        types.iter().map(|t| self.get(t)).collect()
    }

    pub fn from_vec(n: usize, types: &[TypeFunction], v: &[Scalar]) -> Self {
        let mut f = Self::zero(n);
        for (t, x) in types.iter().zip(v) {
            f.add_term(t, x);
        }
        f
    }
}

/// Sparse element of the group algebra `C[G_n]`, keyed by element rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    pub n: usize,
    pub terms: BTreeMap<u64, Scalar>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement { n, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, r: u64, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        match self.terms.get_mut(&r) {
            Some(slot) => {
                *slot += v;
                if slot.is_zero() {
                    self.terms.remove(&r);
                }
            }
            None => {
                self.terms.insert(r, v.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(*k, v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zero(self.n);
        if s.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(*k, v * s);
        }
        out
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }
}

/// All the per-level data for `G_n`: elements by rank, their types, and the
/// integer class-product table (built on first use).
#[derive(Debug)]
pub struct WreathAlgebra {
    wreath: Wreath,
    elements: Vec<WreathElement>,
    type_idx: Vec<u32>,
    types: Vec<TypeFunction>,
    index: HashMap<TypeFunction, usize>,
    products: OnceLock<Vec<u64>>,
}

type CacheKey = (u64, usize);

fn algebra_cache() -> &'static Mutex<HashMap<CacheKey, Arc<WreathAlgebra>>> {
    static C: OnceLock<Mutex<HashMap<CacheKey, Arc<WreathAlgebra>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

impl WreathAlgebra {
    pub fn new(group: Arc<FiniteGroup>, n: usize) -> Result<Self, AlgebraError> {
        let wreath = Wreath::new(group, n);
        let elements: Vec<WreathElement> = wreath.elements()?.collect();
        let types = wreath.types();
        let index: HashMap<TypeFunction, usize> =
            types.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let type_idx = elements.iter().map(|x| index[&wreath.type_of(x)] as u32).collect();
        Ok(WreathAlgebra { wreath, elements, type_idx, types, index, products: OnceLock::new() })
    }

    /// Shared instance per (group, n).
    pub fn get(group: &Arc<FiniteGroup>, n: usize) -> Result<Arc<Self>, AlgebraError> {
        let key = (group.fingerprint(), n);
        if let Some(a) = algebra_cache().lock().unwrap().get(&key) {
            return Ok(a.clone());
        }
        let a = Arc::new(Self::new(group.clone(), n)?);
        algebra_cache().lock().unwrap().insert(key, a.clone());
        Ok(a)
    }

    pub fn wreath(&self) -> &Wreath {
        &self.wreath
    }
    pub fn group(&self) -> &FiniteGroup {
        self.wreath.group()
    }
    pub fn n(&self) -> usize {
        self.wreath.n()
    }
    pub fn types(&self) -> &[TypeFunction] {
        &self.types
    }
    pub fn type_index(&self, t: &TypeFunction) -> Option<usize> {
        self.index.get(t).copied()
    }
    pub fn element(&self, r: u64) -> &WreathElement {
        &self.elements[r as usize]
    }
    pub fn elements(&self) -> &[WreathElement] {
        &self.elements
    }
    pub fn type_of_rank(&self, r: u64) -> &TypeFunction {
        &self.types[self.type_idx[r as usize] as usize]
    }
    pub fn rank(&self, x: &WreathElement) -> u64 {
        self.wreath.rank(x)
    }

    fn check_level(&self, n: usize) -> Result<(), AlgebraError> {
        if n != self.n() {
            Err(AlgebraError::LevelMismatch(n, self.n()))
        } else {
            Ok(())
        }
    }

    pub fn unit(&self) -> GroupAlgebraElement {
        let mut e = GroupAlgebraElement::zero(self.n());
        e.add_term(self.rank(&self.wreath.identity()), &Scalar::one());
        e
    }

    pub fn delta(&self, x: &WreathElement) -> GroupAlgebraElement {
        let mut e = GroupAlgebraElement::zero(self.n());
        e.add_term(self.rank(x), &Scalar::one());
        e
    }

    /// `sum_{a in G_n} a`.
    pub fn sum_all(&self) -> GroupAlgebraElement {
        let mut e = GroupAlgebraElement::zero(self.n());
        for r in 0..self.elements.len() as u64 {
            e.terms.insert(r, Scalar::one());
        }
        e
    }

    /// Termwise product in `C[G_n]`.
    pub fn mul(
        &self,
        a: &GroupAlgebraElement,
        b: &GroupAlgebraElement,
    ) -> Result<GroupAlgebraElement, AlgebraError> {
        self.check_level(a.n)?;
        self.check_level(b.n)?;
        let mut acc: HashMap<u64, Scalar> = HashMap::new();
        for (ra, va) in &a.terms {
            let x = &self.elements[*ra as usize];
            for (rb, vb) in &b.terms {
                let p = self.wreath.mul_unchecked(x, &self.elements[*rb as usize]);
                let v = va * vb;
                *acc.entry(self.rank(&p)).or_default() += &v;
            }
        }
        let mut out = GroupAlgebraElement::zero(self.n());
        for (k, v) in acc {
            if !v.is_zero() {
                out.terms.insert(k, v);
            }
        }
        Ok(out)
    }

    pub fn commutes(&self, a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> Result<bool, AlgebraError> {
        Ok(self.mul(a, b)? == self.mul(b, a)?)
    }

    pub fn from_class_function(&self, f: &WreathClassFunction) -> Result<GroupAlgebraElement, AlgebraError> {
        self.check_level(f.n)?;
        let mut out = GroupAlgebraElement::zero(self.n());
        for r in 0..self.elements.len() as u64 {
            let v = f.get(self.type_of_rank(r));
            out.add_term(r, &v);
        }
        Ok(out)
    }

    /// Convert a central element; fails if coefficients are not constant on classes.
    pub fn to_class_function(&self, a: &GroupAlgebraElement) -> Result<WreathClassFunction, AlgebraError> {
        self.check_level(a.n)?;
        let mut seen: HashMap<usize, (Scalar, u64)> = HashMap::new();
        for (r, v) in &a.terms {
            let t = self.type_idx[*r as usize] as usize;
            match seen.get_mut(&t) {
                Some((w, count)) => {
                    if w != v {
                        return Err(AlgebraError::NotCentral);
                    }
                    *count += 1;
                }
                None => {
                    seen.insert(t, (v.clone(), 1));
                }
            }
        }
        let mut f = WreathClassFunction::zero(self.n());
        for (t, (v, count)) in seen {
            if count != class_size_u64(self.group(), &self.types[t]) {
                return Err(AlgebraError::NotCentral);
            }
            f.add_term(&self.types[t], &v);
        }
        Ok(f)
    }

    /// `N[rho][sigma][nu] = #{a in C_rho : a^-1 x_nu in C_sigma}`.
    pub fn product_table(&self) -> &[u64] {
        self.products.get_or_init(|| {
            let nt = self.types.len();
            let mut table = vec![0u64; nt * nt * nt];
            for (nu, t) in self.types.iter().enumerate() {
                let x = self.wreath.class_rep(t).expect("norm matches");
                for (r, a) in self.elements.iter().enumerate() {
                    let y = self.wreath.mul_unchecked(&self.wreath.inverse(a), &x);
                    let ty = self.type_idx[self.rank(&y) as usize] as usize;
                    let ta = self.type_idx[r] as usize;
                    table[(ta * nt + ty) * nt + nu] += 1;
                }
            }
            table
        })
    }

    /// Class-by-class product of central elements.
    pub fn convolve(
        &self,
        f: &WreathClassFunction,
        g: &WreathClassFunction,
    ) -> Result<WreathClassFunction, AlgebraError> {
        self.check_level(f.n)?;
        self.check_level(g.n)?;
        let nt = self.types.len();
        let table = self.product_table();
        let mut out = vec![Scalar::zero(); nt];
        for (ra, va) in &f.coeffs {
            let a = self.index[ra];
            for (rb, vb) in &g.coeffs {
                let b = self.index[rb];
                let v = va * vb;
                let row = &table[(a * nt + b) * nt..(a * nt + b + 1) * nt];
                for (slot, &k) in out.iter_mut().zip(row) {
                    if k != 0 {
                        *slot += &(&v * &Scalar::from_int(k));
                    }
                }
            }
        }
        Ok(WreathClassFunction::from_vec(self.n(), &self.types, &out))
    }

    /// `xi_j = sum_{i<j} sum_{a in G} ((a at i, a^-1 at j), (i j))`, 1-based `j`.
    pub fn jm_element(&self, j: usize) -> Result<GroupAlgebraElement, AlgebraError> {
        let n = self.n();
        if j == 0 || j > n {
            return Err(AlgebraError::OutOfRange { what: "j", value: j as i64 });
        }
        let g = self.group();
        let mut out = GroupAlgebraElement::zero(n);
        for i in 0..j - 1 {
            for a in 0..g.order() as u32 {
                let mut x = self.wreath.identity();
                x.sigma.swap(i, j - 1);
                x.g[i] = a;
                x.g[j - 1] = g.inv(a);
                out.add_term(self.rank(&x), &Scalar::one());
            }
        }
        Ok(out)
    }

    /// `alpha^{(i)}`: `alpha` placed in the i-th copy of G (1-based).
    pub fn embed_level(&self, alpha: &ClassFunctionG, i: usize) -> Result<GroupAlgebraElement, AlgebraError> {
        let n = self.n();
        let g = self.group();
        if alpha.len() != g.num_classes() {
            return Err(AlgebraError::GroupMismatch);
        }
        if i == 0 || i > n {
            return Err(AlgebraError::OutOfRange { what: "i", value: i as i64 });
        }
        let mut out = GroupAlgebraElement::zero(n);
        for a in 0..g.order() as u32 {
            let v = &alpha.values[g.class_of(a)];
            if v.is_zero() {
                continue;
            }
            let mut x = self.wreath.identity();
            x.g[i - 1] = a;
            out.add_term(self.rank(&x), v);
        }
        Ok(out)
    }

    fn power(&self, a: &GroupAlgebraElement, k: u32) -> Result<GroupAlgebraElement, AlgebraError> {
        let mut acc = self.unit();
        for _ in 0..k {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// `Xi_n^k(alpha) = sum_i xi_i^k alpha^{(i)}`, with `xi^0` the unit.
    pub fn xi_power_sum_element(&self, k: u32, alpha: &ClassFunctionG) -> Result<GroupAlgebraElement, AlgebraError> {
        let mut out = GroupAlgebraElement::zero(self.n());
        for i in 1..=self.n() {
            let xi = self.jm_element(i)?;
            let p = self.mul(&self.power(&xi, k)?, &self.embed_level(alpha, i)?)?;
            out = out.add(&p);
        }
        Ok(out)
    }

    pub fn xi_power_sum(&self, k: u32, alpha: &ClassFunctionG) -> Result<WreathClassFunction, AlgebraError> {
        self.to_class_function(&self.xi_power_sum_element(k, alpha)?)
    }

    fn jm_product(&self, gamma: &ClassFunctionG, sign: i64) -> Result<GroupAlgebraElement, AlgebraError> {
        let mut acc = self.unit();
        let s = Scalar::from_int(sign);
        for j in 1..=self.n() {
            let factor = self.embed_level(gamma, j)?.add(&self.jm_element(j)?.scale(&s));
            acc = self.mul(&acc, &factor)?;
        }
        Ok(acc)
    }

    /// `prod_j (gamma^{(j)} + xi_j)` as a group-algebra element.
    pub fn eta_element(&self, gamma: &ClassFunctionG) -> Result<GroupAlgebraElement, AlgebraError> {
        self.jm_product(gamma, 1)
    }

    pub fn eta(&self, gamma: &ClassFunctionG) -> Result<WreathClassFunction, AlgebraError> {
        self.to_class_function(&self.eta_element(gamma)?)
    }

    /// `prod_j (gamma^{(j)} - xi_j)`.
    pub fn epsilon(&self, gamma: &ClassFunctionG) -> Result<WreathClassFunction, AlgebraError> {
        self.to_class_function(&self.jm_product(gamma, -1)?)
    }

    /// `E_0, ..., E_n` with `E_i = e_i(gamma^{(1)} + xi_1, ..., gamma^{(n)} + xi_n)`.
    pub fn elementary_symmetric_all(&self, gamma: &ClassFunctionG) -> Result<Vec<WreathClassFunction>, AlgebraError> {
        let n = self.n();
        let mut e: Vec<GroupAlgebraElement> = vec![self.unit()];
        for j in 1..=n {
            let factor = self.embed_level(gamma, j)?.add(&self.jm_element(j)?);
            let mut next = e.clone();
            next.push(GroupAlgebraElement::zero(n));
            for i in 1..=j {
                next[i] = next[i].add(&self.mul(&e[i - 1], &factor)?);
            }
            e = next;
        }
        e.iter().map(|x| self.to_class_function(x)).collect()
    }

    pub fn elementary_symmetric_jm(&self, i: usize, gamma: &ClassFunctionG) -> Result<WreathClassFunction, AlgebraError> {
        if i > self.n() {
            return Ok(WreathClassFunction::zero(self.n()));
        }
        Ok(self.elementary_symmetric_all(gamma)?.swap_remove(i))
    }

    /// Closure of the span of `gens` under convolution (no unit added).
    pub fn subalgebra_generated(
        &self,
        gens: &[WreathClassFunction],
    ) -> Result<(usize, Vec<WreathClassFunction>), AlgebraError> {
        let types = &self.types;
        let mut basis = EchelonBasis::new(types.len());
        let mut queue: Vec<WreathClassFunction> = Vec::new();
        for g in gens {
            self.check_level(g.n)?;
            if basis.insert(&g.to_vec(types)) {
                queue.push(g.clone());
            }
        }
        // at most dim R(G_n) rounds
        while let Some(v) = queue.pop() {
            for g in gens {
                let w = self.convolve(g, &v)?;
                if basis.insert(&w.to_vec(types)) {
                    queue.push(w);
                }
            }
        }
        let out = basis
            .rows()
            .iter()
            .map(|r| WreathClassFunction::from_vec(self.n(), types, r))
            .collect();
        Ok((basis.rank(), out))
    }
}

/// Value of `eta_n(gamma)` on the class `rho`: `prod_c gamma(c)^{l(rho(c))}`.
pub fn eta_value(gamma: &ClassFunctionG, rho: &TypeFunction) -> Scalar {
    let mut acc = Scalar::one();
    for (c, p) in rho.entries() {
        acc = &acc * &gamma.values[*c].pow(p.len() as i64).expect("nonnegative power");
    }
    acc
}

/// Value of `epsilon_n(gamma)` on `rho`: `(-1)^{n - l(rho)} eta value`.
pub fn epsilon_value(gamma: &ClassFunctionG, rho: &TypeFunction) -> Scalar {
    let v = eta_value(gamma, rho);
    if (rho.norm() as usize - rho.length()) % 2 == 1 {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::load_preset;
    use crate::partition::Partition;

    fn alg(name: &str, n: usize) -> Arc<WreathAlgebra> {
        let g = Arc::new(load_preset(name).unwrap().group);
        WreathAlgebra::get(&g, n).unwrap()
    }

    #[test]
    fn s3_transposition_square() {
        let a = alg("trivial", 3);
        let t21 = TypeFunction::from_pairs([(0, Partition::new(vec![2, 1]))]);
        let sq = a.convolve(&WreathClassFunction::basis(&t21), &WreathClassFunction::basis(&t21)).unwrap();
        let mut want = WreathClassFunction::zero(3);
        want.add_term(&TypeFunction::identity(3), &Scalar::from_int(3));
        want.add_term(&TypeFunction::cycle(0, 3), &Scalar::from_int(3));
        assert_eq!(sq, want);
    }

    #[test]
    fn xi_one_is_zero() {
        let a = alg("cyclic2", 3);
        assert_eq!(a.jm_element(1).unwrap().support_size(), 0);
        assert_eq!(a.jm_element(3).unwrap().support_size(), 4);
    }

    #[test]
    fn xi2_squared_trivial() {
        let a = alg("trivial", 2);
        let g = a.group();
        let f = a.xi_power_sum(2, &ClassFunctionG::unit(g)).unwrap();
        // xi_1^2 = 0, xi_2^2 = id
        assert_eq!(f, WreathClassFunction::unit(2));
    }

    #[test]
    fn not_central_detected() {
        let a = alg("trivial", 3);
        assert_eq!(a.to_class_function(&a.jm_element(2).unwrap()), Err(AlgebraError::NotCentral));
    }
}
