//! The class algebra R(G) of a finite group: convolution, the invariant
//! bilinear form, trace, and the diagonal pushforwards.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::AlgebraError;
use crate::group::FiniteGroup;
use crate::scalar::Scalar;

/// A class function, one value per class id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassFunctionG {
    pub values: Vec<Scalar>,
}

impl ClassFunctionG {
    pub fn new(values: Vec<Scalar>) -> Self {
        ClassFunctionG { values }
    }

    pub fn zero(group: &FiniteGroup) -> Self {
        ClassFunctionG { values: vec![Scalar::zero(); group.num_classes()] }
    }

    /// Characteristic function `K^c` of the class `c`.
    pub fn k_basis(group: &FiniteGroup, c: usize) -> Self {
        let mut f = Self::zero(group);
        f.values[c] = Scalar::one();
        f
    }

    /// The unit of convolution, `K^{c0}`.
    pub fn unit(group: &FiniteGroup) -> Self {
        Self::k_basis(group, 0)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        ClassFunctionG::new(self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        ClassFunctionG::new(self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        ClassFunctionG::new(self.values.iter().map(|a| a * s).collect())
    }
}

fn check(group: &FiniteGroup, fs: &[&ClassFunctionG]) -> Result<(), AlgebraError> {
    if fs.iter().all(|f| f.len() == group.num_classes()) {
        Ok(())
    } else {
        Err(AlgebraError::GroupMismatch)
    }
}

/// Product in the center of the group algebra, via structure constants.
pub fn convolve_g(
    group: &FiniteGroup,
    f: &ClassFunctionG,
    g: &ClassFunctionG,
) -> Result<ClassFunctionG, AlgebraError> {
    check(group, &[f, g])?;
    let n = group.num_classes();
    let mut out = ClassFunctionG::zero(group);
    for a in 0..n {
        if f.values[a].is_zero() {
            continue;
        }
        for b in 0..n {
            if g.values[b].is_zero() {
                continue;
            }
            let fg = &f.values[a] * &g.values[b];
            for (c, slot) in out.values.iter_mut().enumerate() {
                let k = group.structure_constant(a, b, c);
                if k != 0 {
                    *slot += &fg * &Scalar::from_int(k);
                }
            }
        }
    }
    Ok(out)
}

/// `<f, g> = sum_c zeta_c^-1 f(c) g(c^-1)`.
pub fn bilinear_form(
    group: &FiniteGroup,
    f: &ClassFunctionG,
    g: &ClassFunctionG,
) -> Result<Scalar, AlgebraError> {
    check(group, &[f, g])?;
    Ok((0..group.num_classes())
        .map(|c| {
            let v = &f.values[c] * &g.values[group.inv_class(c)];
            &v * &Scalar::from_ratio(1, group.zeta(c) as i64)
        })
        .sum())
}

/// `Tr(K^c) = delta_{c,c0} / |G|`.
pub fn trace(group: &FiniteGroup, f: &ClassFunctionG) -> Result<Scalar, AlgebraError> {
    check(group, &[f])?;
    Ok(&f.values[0] * &Scalar::from_ratio(1, group.order() as i64))
}

/// Element of `R(G)^{(x)k}` in the `K^c (x) ... (x) K^c` basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorClassFunction {
    pub arity: usize,
    pub entries: BTreeMap<Vec<usize>, Scalar>,
}

impl TensorClassFunction {
    pub fn new(arity: usize) -> Self {
        TensorClassFunction { arity, entries: BTreeMap::new() }
    }

    pub fn add_entry(&mut self, key: Vec<usize>, v: Scalar) {
        assert_eq!(key.len(), self.arity);
        if v.is_zero() {
            return;
        }
        let slot = self.entries.entry(key.clone()).or_insert_with(Scalar::zero);
        *slot += &v;
        if slot.is_zero() {
            self.entries.remove(&key);
        }
    }

    /// Pure tensor `f_1 (x) ... (x) f_k`.
    pub fn pure(fs: &[&ClassFunctionG]) -> Self {
        let mut t = TensorClassFunction::new(fs.len());
        let mut keys: Vec<(Vec<usize>, Scalar)> = vec![(vec![], Scalar::one())];
        for f in fs {
            let mut next = Vec::new();
            for (k, v) in &keys {
                for (c, x) in f.values.iter().enumerate() {
                    if !x.is_zero() {
                        let mut k2 = k.clone();
                        k2.push(c);
                        next.push((k2, v * x));
                    }
                }
            }
            keys = next;
        }
        for (k, v) in keys {
            t.add_entry(k, v);
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut t = self.clone();
        for (k, v) in &other.entries {
            t.add_entry(k.clone(), v.clone());
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut t = TensorClassFunction::new(self.arity);
        for (k, v) in &self.entries {
            t.add_entry(k.clone(), v * s);
        }
        t
    }

    /// Pairing with a pure tensor, factor by factor with the form on R(G).
    pub fn pair_pure(&self, group: &FiniteGroup, fs: &[&ClassFunctionG]) -> Scalar {
        assert_eq!(fs.len(), self.arity);
        let mut acc = Scalar::zero();
        for (k, v) in &self.entries {
            let mut term = v.clone();
            for (c, f) in k.iter().zip(fs) {
                // <K^c, f> = zeta_c^-1 f(c^-1)
                let x = &f.values[group.inv_class(*c)] * &Scalar::from_ratio(1, group.zeta(*c) as i64);
                term = &term * &x;
                if term.is_zero() {
                    break;
                }
            }
            acc += &term;
        }
        acc
    }
}

/// The adjoint of convolution: `<tau2 f, a (x) b> = <f, a b>`.
///
/// In the K basis the form is monomial, which gives
/// `T[a^-1, b^-1] = zeta_a zeta_b sum_c a_{a,b}^c zeta_c^-1 f(c^-1)`.
pub fn pushforward_tau2(
    group: &FiniteGroup,
    f: &ClassFunctionG,
) -> Result<TensorClassFunction, AlgebraError> {
    check(group, &[f])?;
    let n = group.num_classes();
    let mut t = TensorClassFunction::new(2);
    let fc: Vec<Scalar> = (0..n)
        .map(|c| &f.values[group.inv_class(c)] * &Scalar::from_ratio(1, group.zeta(c) as i64))
        .collect();
    for a in 0..n {
        for b in 0..n {
            let mut s = Scalar::zero();
            for (c, w) in fc.iter().enumerate() {
                let k = group.structure_constant(a, b, c);
                if k != 0 && !w.is_zero() {
                    s += w * &Scalar::from_int(k);
                }
            }
            if s.is_zero() {
                continue;
            }
            let s = &s * &Scalar::from_int(group.zeta(a) * group.zeta(b));
            t.add_entry(vec![group.inv_class(a), group.inv_class(b)], s);
        }
    }
    Ok(t)
}

/// `tau_{k+1} = (tau_2 (x) id) o tau_k`, `tau_1 = id`.
pub fn pushforward_tauk(
    group: &FiniteGroup,
    f: &ClassFunctionG,
    k: usize,
) -> Result<TensorClassFunction, AlgebraError> {
    check(group, &[f])?;
    if k == 0 {
        return Err(AlgebraError::OutOfRange { what: "arity", value: 0 });
    }
    let mut t = TensorClassFunction::new(1);
    for (c, v) in f.values.iter().enumerate() {
        t.add_entry(vec![c], v.clone());
    }
    let n = group.num_classes();
    let splits: Vec<TensorClassFunction> = (0..n)
        .map(|c| pushforward_tau2(group, &ClassFunctionG::k_basis(group, c)))
        .collect::<Result<_, _>>()?;
    for arity in 1..k {
        let mut next = TensorClassFunction::new(arity + 1);
        for (key, v) in &t.entries {
            for (ab, w) in &splits[key[0]].entries {
                let mut k2 = ab.clone();
                k2.extend_from_slice(&key[1..]);
                next.add_entry(k2, v * w);
            }
        }
        t = next;
    }
    Ok(t)
}

/// Multiply the factors of a 2-tensor back together.
pub fn multiply_out(
    group: &FiniteGroup,
    t: &TensorClassFunction,
) -> Result<ClassFunctionG, AlgebraError> {
    let mut out = ClassFunctionG::zero(group);
    for (k, v) in &t.entries {
        let mut acc = ClassFunctionG::k_basis(group, k[0]);
        for &c in &k[1..] {
            acc = convolve_g(group, &acc, &ClassFunctionG::k_basis(group, c))?;
        }
        out = out.add(&acc.scale(v));
    }
    Ok(out)
}

/// `chi = m(tau2(1))`.
pub fn euler_class(group: &FiniteGroup) -> Result<ClassFunctionG, AlgebraError> {
    let t = pushforward_tau2(group, &ClassFunctionG::unit(group))?;
    multiply_out(group, &t)
}

/// `Tr(chi)`, which equals the number of classes.
pub fn euler_number(group: &FiniteGroup) -> Result<Scalar, AlgebraError> {
    trace(group, &euler_class(group)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::load_preset;

    #[test]
    fn cyclic2_euler() {
        let g = load_preset("cyclic2").unwrap().group;
        let chi = euler_class(&g).unwrap();
        assert_eq!(chi.values, vec![Scalar::from_int(4), Scalar::zero()]);
        assert_eq!(euler_number(&g).unwrap(), Scalar::from_int(2));
    }

    #[test]
    fn involution_squares_to_unit() {
        let g = load_preset("cyclic2").unwrap().group;
        let s = ClassFunctionG::k_basis(&g, 1);
        assert_eq!(convolve_g(&g, &s, &s).unwrap(), ClassFunctionG::unit(&g));
    }

    #[test]
    fn constant_one_against_trivial_character() {
        for name in ["cyclic2", "sym3"] {
            let g = load_preset(name).unwrap().group;
            let one = ClassFunctionG { values: vec![Scalar::one(); g.num_classes()] };
            assert_eq!(bilinear_form(&g, &one, &one).unwrap(), Scalar::one());
        }
    }

    #[test]
    fn k_basis_form() {
        let g = load_preset("cyclic4").unwrap().group;
        for a in 0..4 {
            for b in 0..4 {
                let v = bilinear_form(&g, &ClassFunctionG::k_basis(&g, a), &ClassFunctionG::k_basis(&g, b))
                    .unwrap();
                let want = if b == g.inv_class(a) { Scalar::from_ratio(1, 4) } else { Scalar::zero() };
                assert_eq!(v, want);
            }
        }
    }
}
