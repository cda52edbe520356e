//! Differential operators on the circle tensored with `R(G)`, with the
//! central extension. Elements are kept in the idempotent basis
//! `e_a = gamma_a / h_a`, where the algebra part of the bracket is diagonal.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::character::CharacterTable;
use crate::class_algebra::{convolve_g, trace, ClassFunctionG};
use crate::error::AlgebraError;
use crate::group::FiniteGroup;
use crate::scalar::Scalar;

/// Polynomial in `D`, ascending coefficients.
pub type Poly = Vec<Scalar>;

pub fn poly_trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn poly_add(a: &[Scalar], b: &[Scalar]) -> Poly {
    let n = a.len().max(b.len());
    let z = Scalar::zero();
    poly_trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

pub fn poly_scale(a: &[Scalar], s: &Scalar) -> Poly {
    poly_trim(a.iter().map(|c| c * s).collect())
}

pub fn poly_sub(a: &[Scalar], b: &[Scalar]) -> Poly {
    poly_add(a, &poly_scale(b, &Scalar::from_int(-1)))
}

pub fn poly_mul(a: &[Scalar], b: &[Scalar]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    poly_trim(out)
}

/// `f(D + s)`.
pub fn poly_shift(f: &[Scalar], s: i64) -> Poly {
    // Horner in the shifted variable
    let lin = vec![Scalar::from_int(s), Scalar::one()];
    let mut out: Poly = vec![];
    for c in f.iter().rev() {
        out = poly_add(&poly_mul(&out, &lin), std::slice::from_ref(c));
    }
    out
}

pub fn poly_eval(f: &[Scalar], x: &Scalar) -> Scalar {
    f.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
}

/// `[D]_l = D (D - 1) ... (D - l + 1)`.
pub fn falling_factorial(l: usize) -> Poly {
    (0..l).fold(vec![Scalar::one()], |acc, i| poly_mul(&acc, &[Scalar::from_int(-(i as i64)), Scalar::one()]))
}

/// Stirling numbers of the second kind, `S[n][k]`.
fn stirling2(n: usize) -> Vec<Vec<i64>> {
    let mut s = vec![vec![0i64; n + 1]; n + 1];
    s[0][0] = 1;
    for i in 1..=n {
        for k in 1..=i {
            s[i][k] = k as i64 * s[i - 1][k] + s[i - 1][k - 1];
        }
    }
    s
}

/// Coefficients `b_l` with `f = sum_l b_l [D]_l`.
pub fn to_falling(f: &[Scalar]) -> Vec<Scalar> {
    let n = f.len();
    if n == 0 {
        return vec![];
    }
    let s2 = stirling2(n - 1);
    let mut out = vec![Scalar::zero(); n];
    for (j, c) in f.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (k, slot) in out.iter_mut().enumerate().take(j + 1) {
            if s2[j][k] != 0 {
                *slot += &(c * &Scalar::from_int(s2[j][k]));
            }
        }
    }
    poly_trim(out)
}

/// Inverse of [`to_falling`].
pub fn from_falling(b: &[Scalar]) -> Poly {
    let mut out = vec![];
    for (l, c) in b.iter().enumerate() {
        out = poly_add(&out, &poly_scale(&falling_factorial(l), c));
    }
    out
}

fn fmt_poly(p: &[Scalar]) -> String {
    let mut parts = Vec::new();
    for (i, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        parts.push(match i {
            0 => format!("{c}"),
            1 => format!("({c})*D"),
            _ => format!("({c})*D^{i}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// `sum t^r f_{r,a}(D) (x) e_a + central C`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiffOpElement {
    pub terms: BTreeMap<(i64, usize), Poly>,
    pub central: Scalar,
}

impl DiffOpElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(r: i64, a: usize, f: Poly) -> Self {
        let mut x = Self::zero();
        x.add_term(r, a, &f);
        x
    }

    pub fn central(c: Scalar) -> Self {
        DiffOpElement { terms: BTreeMap::new(), central: c }
    }

    pub fn add_term(&mut self, r: i64, a: usize, f: &[Scalar]) {
        let cur = self.terms.remove(&(r, a)).unwrap_or_default();
        let s = poly_add(&cur, f);
        if !s.is_empty() {
            self.terms.insert((r, a), s);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((r, a), f) in &other.terms {
            out.add_term(*r, *a, f);
        }
        out.central += &other.central;
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::central(&self.central * s);
        for ((r, a), f) in &self.terms {
            out.add_term(*r, *a, &poly_scale(f, s));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }

    /// The single `t`-power of all terms, if homogeneous.
    pub fn weight_shift(&self) -> Option<i64> {
        let mut rs = self.terms.keys().map(|(r, _)| *r);
        let r = rs.next()?;
        rs.all(|x| x == r).then_some(r)
    }
}

impl fmt::Display for DiffOpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .map(|((r, a), p)| format!("t^{r} [{}] (x) e{a}", fmt_poly(p)))
            .collect();
        if !self.central.is_zero() {
            parts.push(format!("({})*C", self.central));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The Lie algebra over a group with a character table.
#[derive(Clone, Debug)]
pub struct Winf {
    group: Arc<FiniteGroup>,
    table: CharacterTable,
    /// `h_b^2 Tr(e_a e_b)`.
    weights: Vec<Vec<Scalar>>,
}

impl Winf {
    pub fn new(group: Arc<FiniteGroup>, table: CharacterTable) -> Result<Self, AlgebraError> {
        if !table.matches(&group) {
            return Err(AlgebraError::GroupMismatch);
        }
        let n = table.len();
        let e: Vec<ClassFunctionG> =
            (0..n).map(|a| table.row(a).scale(&Scalar::from_ratio(1, table.h(a) as i64))).collect();
        let mut weights = vec![vec![Scalar::zero(); n]; n];
        for a in 0..n {
            for b in 0..n {
                let hb = Scalar::from_int(table.h(b) * table.h(b));
                weights[a][b] = &hb * &trace(&group, &convolve_g(&group, &e[a], &e[b])?)?;
            }
        }
        Ok(Winf { group, table, weights })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
    pub fn table(&self) -> &CharacterTable {
        &self.table
    }
    pub fn num_irreducibles(&self) -> usize {
        self.table.len()
    }
    pub fn weight(&self, a: usize, b: usize) -> &Scalar {
        &self.weights[a][b]
    }

    /// Cocycle on single terms; antisymmetric, supported on `r + s = 0`.
    pub fn psi(&self, r: i64, a: usize, f: &[Scalar], s: i64, b: usize, g: &[Scalar]) -> Scalar {
        if r + s != 0 || r == 0 {
            return Scalar::zero();
        }
        if r < 0 {
            return -self.psi(s, b, g, r, a, f);
        }
        let mut acc = Scalar::zero();
        for j in -r..=-1 {
            acc += &(&poly_eval(f, &Scalar::from_int(j)) * &poly_eval(g, &Scalar::from_int(j + r)));
        }
        &acc * &self.weights[a][b]
    }

    /// `[t^r f (x) e_a, t^s g (x) e_b] = delta_ab t^{r+s} (f(D+s) g(D) - f(D) g(D+r)) (x) e_a + Psi C`.
    pub fn bracket(&self, x: &DiffOpElement, y: &DiffOpElement) -> DiffOpElement {
        let mut out = DiffOpElement::zero();
        for ((r, a), f) in &x.terms {
            for ((s, b), g) in &y.terms {
                if a == b {
                    let p = poly_sub(&poly_mul(&poly_shift(f, *s), g), &poly_mul(f, &poly_shift(g, *r)));
                    out.add_term(r + s, *a, &p);
                }
                out.central += &self.psi(*r, *a, f, *s, *b, g);
            }
        }
        out
    }

    /// Coordinates of `alpha` on the irreducible characters.
    fn char_coords(&self, alpha: &ClassFunctionG) -> Vec<Scalar> {
        self.table
            .idempotent_coords(&self.group, alpha)
            .into_iter()
            .enumerate()
            .map(|(a, x)| &x / &Scalar::from_int(self.table.h(a)))
            .collect()
    }

    fn basis_with(&self, k: i64, p: &Poly, alpha: &ClassFunctionG) -> DiffOpElement {
        let mut out = DiffOpElement::zero();
        for (a, x) in self.char_coords(alpha).iter().enumerate() {
            out.add_term(k, a, &poly_scale(p, &(-x)));
        }
        out
    }

    /// `J^l_k(alpha) = -t^k [D]_l (x) h_alpha^-1 alpha`, extended linearly from irreducibles.
    pub fn basis_j(&self, l: usize, k: i64, alpha: &ClassFunctionG) -> DiffOpElement {
        self.basis_with(k, &falling_factorial(l), alpha)
    }

    /// `L^l_k(alpha) = -t^k D^l (x) h_alpha^-1 alpha`.
    pub fn basis_l(&self, l: usize, k: i64, alpha: &ClassFunctionG) -> DiffOpElement {
        let mut p = vec![Scalar::zero(); l + 1];
        p[l] = Scalar::one();
        self.basis_with(k, &p, alpha)
    }

    /// Jacobi identity on `count` random triples of basis elements
    /// `t^r D^j (x) e_a`; returns the number of failures.
    pub fn jacobi_check(&self, count: usize, seed: u64) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.num_irreducibles();
        let mut pick = || {
            let r = rng.gen_range(-3..=3);
            let j = rng.gen_range(0..=3usize);
            let a = rng.gen_range(0..n);
            let mut p = vec![Scalar::zero(); j + 1];
            p[j] = Scalar::one();
            DiffOpElement::term(r, a, p)
        };
        let mut failures = 0;
        for _ in 0..count {
            let (x, y, z) = (pick(), pick(), pick());
            let j = self
                .bracket(&self.bracket(&x, &y), &z)
                .add(&self.bracket(&self.bracket(&y, &z), &x))
                .add(&self.bracket(&self.bracket(&z, &x), &y));
            if !j.is_zero() {
                failures += 1;
            }
        }
        failures
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::load_preset;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn falling_three() {
        assert_eq!(falling_factorial(1), vec![s(0), s(1)]);
        assert_eq!(falling_factorial(3), vec![s(0), s(2), s(-3), s(1)]);
    }

    #[test]
    fn falling_roundtrip() {
        let f = vec![s(3), s(-1), s(0), s(5), s(2)];
        assert_eq!(from_falling(&to_falling(&f)), f);
        assert_eq!(to_falling(&falling_factorial(3)), vec![s(0), s(0), s(0), s(1)]);
    }

    #[test]
    fn shift_matches_eval() {
        let f = vec![s(1), s(2), s(3)];
        let g = poly_shift(&f, -2);
        for x in -3..4 {
            assert_eq!(poly_eval(&g, &s(x)), poly_eval(&f, &s(x - 2)));
        }
    }

    fn winf(name: &str) -> Winf {
        let b = load_preset(name).unwrap();
        Winf::new(Arc::new(b.group), b.characters.unwrap()).unwrap()
    }

    #[test]
    fn heisenberg_inside() {
        let w = winf("cyclic3");
        let one = ClassFunctionG::unit(w.group());
        for a in 0..3 {
            let g = w.table().row(a).clone();
            for m in -3i64..=3 {
                for n in -3i64..=3 {
                    let c = w.bracket(&w.basis_j(0, m, &g), &w.basis_j(0, n, &g));
                    let want = if m + n == 0 { s(m) } else { s(0) };
                    assert!(c.terms.is_empty());
                    assert_eq!(c.central, want, "{m} {n}");
                }
            }
        }
        // J^0_k(alpha) = L^0_k(alpha)
        assert_eq!(w.basis_j(0, 2, &one), w.basis_l(0, 2, &one));
    }

    #[test]
    fn antisymmetric_and_jacobi() {
        for name in ["trivial", "cyclic2", "sym3"] {
            let w = winf(name);
            assert_eq!(w.jacobi_check(200, 7), 0, "{name}");
            let x = DiffOpElement::term(2, 0, vec![s(1), s(1)]);
            let y = DiffOpElement::term(-2, 0, vec![s(0), s(0), s(1)]);
            assert_eq!(w.bracket(&x, &y), w.bracket(&y, &x).scale(&s(-1)));
        }
    }
}
