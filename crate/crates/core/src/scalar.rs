//! Exact scalars: rationals, and elements of cyclotomic fields stored as
//! residues modulo the cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::ScalarError;

/// An exact number in some cyclotomic field `Q(z_m)`.
///
/// Rationals always use the `Rat` variant. A `Cyc` value has at least one
/// nonzero coefficient in front of a positive power of `z_m`, so the two
/// variants never describe the same number.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Cyc(Cyclotomic),
}

/// Residue of a polynomial in `z` modulo `Phi_m`, coefficients of
/// `1, z, ..., z^(phi(m)-1)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients of the m-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<BigInt>> {
    assert!(m >= 1, "conductor must be positive");
    if let Some(p) = phi_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let den = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &den);
        }
    }
    let p = Arc::new(num);
    phi_cache().lock().unwrap().insert(m, p.clone());
    p
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![BigInt::zero(); num.len() - dn];
    for i in (0..q.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        // den is monic
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

pub fn euler_phi(m: u32) -> usize {
    cyclotomic_polynomial(m).len() - 1
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Reduce a dense coefficient vector modulo `Phi_m`.
fn reduce(mut c: Vec<BigRational>, m: u32) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(m);
    let d = phi.len() - 1;
    if c.len() > d {
        for i in (d..c.len()).rev() {
            let top = std::mem::take(&mut c[i]);
            if top.is_zero() {
                continue;
            }
            for (j, pj) in phi.iter().enumerate().take(d) {
                if !pj.is_zero() {
                    c[i - d + j] -= &top * BigRational::from_integer(pj.clone());
                }
            }
        }
        c.truncate(d);
    }
    c.resize(d, BigRational::zero());
    c
}

impl Cyclotomic {
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Re-express in `Q(z_big)`, `conductor | big`.
    fn lift(&self, big: u32) -> Vec<BigRational> {
        if big == self.conductor {
            return self.coeffs.clone();
        }
        let step = (big / self.conductor) as usize;
        let mut c = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            c[k * step] = a.clone();
        }
        reduce(c, big)
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(BigRational::one())
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Scalar::Rat(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio<T: Into<BigInt>>(num: T, den: T) -> Self {
        Scalar::Rat(BigRational::new(num.into(), den.into()))
    }

    /// The primitive root `z_m = exp(2 pi i / m)` raised to `k`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        assert!(m >= 1);
        let k = k.rem_euclid(m as i64) as usize;
        let mut c = vec![BigRational::zero(); k + 1];
        c[k] = BigRational::one();
        Self::from_coeffs(m, c)
    }

    /// Build `sum coeffs[k] z_m^k`; any length is accepted and reduced.
    pub fn from_coeffs(m: u32, coeffs: Vec<BigRational>) -> Self {
        if m == 1 {
            let s = coeffs.into_iter().fold(BigRational::zero(), |a, b| a + b);
            return Scalar::Rat(s);
        }
        Self::normalize(m, reduce(coeffs, m))
    }

    fn normalize(m: u32, coeffs: Vec<BigRational>) -> Self {
        if coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Scalar::Rat(coeffs.into_iter().next().unwrap_or_else(BigRational::zero))
        } else {
            Scalar::Cyc(Cyclotomic { conductor: m, coeffs })
        }
    }

    pub fn conductor(&self) -> u32 {
        match self {
            Scalar::Rat(_) => 1,
            Scalar::Cyc(c) => c.conductor,
        }
    }

    fn lifted(&self, m: u32) -> Vec<BigRational> {
        match self {
            Scalar::Rat(r) => {
                let mut v = vec![BigRational::zero(); euler_phi(m)];
                v[0] = r.clone();
                v
            }
            Scalar::Cyc(c) => c.lift(m),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Cyc(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Cyc(_) => None,
        }
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Rat(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    /// Complex conjugation `z -> z^-1`.
    pub fn conj(&self) -> Self {
        match self {
            Scalar::Rat(_) => self.clone(),
            Scalar::Cyc(c) => {
                let m = c.conductor as usize;
                let mut v = vec![BigRational::zero(); m];
                for (k, a) in c.coeffs.iter().enumerate() {
                    v[(m - k) % m] += a;
                }
                Self::from_coeffs(c.conductor, v)
            }
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(Scalar::Rat(r.recip()))
                }
            }
            Scalar::Cyc(c) => {
                let phi: Vec<BigRational> = cyclotomic_polynomial(c.conductor)
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect();
                let (g, s) = ext_gcd_inverse(&c.coeffs, &phi);
                // g is a nonzero constant since Phi_m is irreducible
                let ginv = g.recip();
                Ok(Self::from_coeffs(
                    c.conductor,
                    s.into_iter().map(|x| x * &ginv).collect(),
                ))
            }
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Scalar::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    fn binop(
        &self,
        rhs: &Scalar,
        f: impl Fn(Vec<BigRational>, Vec<BigRational>, u32) -> Vec<BigRational>,
    ) -> Scalar {
        let m = lcm(self.conductor(), rhs.conductor());
        let out = f(self.lifted(m), rhs.lifted(m), m);
        Self::normalize(m, out)
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

/// Returns `(g, s)` with `s*a = g (mod m)` and `g` the constant gcd.
fn ext_gcd_inverse(a: &[BigRational], m: &[BigRational]) -> (BigRational, Vec<BigRational>) {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0: Vec<BigRational> = vec![];
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while r1.len() > 1 {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r1[0].clone(), s1)
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::Rat(_), Scalar::Cyc(_)) | (Scalar::Cyc(_), Scalar::Rat(_)) => false,
            (Scalar::Cyc(a), Scalar::Cyc(b)) => {
                if a.conductor == b.conductor {
                    a.coeffs == b.coeffs
                } else {
                    let m = lcm(a.conductor, b.conductor);
                    a.lift(m) == b.lift(m)
                }
            }
        }
    }
}

impl Eq for Scalar {}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::Rat(BigRational::from_integer(n))
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rat(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => self.binop(rhs, |mut x, y, _| {
                for (a, b) in x.iter_mut().zip(y) {
                    *a += b;
                }
                x
            }),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            _ => self.binop(rhs, |mut x, y, _| {
                for (a, b) in x.iter_mut().zip(y) {
                    *a -= b;
                }
                x
            }),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Rat(a), Scalar::Cyc(c)) | (Scalar::Cyc(c), Scalar::Rat(a)) => {
                if a.is_zero() {
                    return Scalar::zero();
                }
                Scalar::Cyc(Cyclotomic {
                    conductor: c.conductor,
                    coeffs: c.coeffs.iter().map(|x| x * a).collect(),
                })
            }
            _ => self.binop(rhs, |x, y, m| reduce(poly_mul(&x, &y), m)),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::inv`] for a checked version.
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Cyc(c) => Scalar::Cyc(Cyclotomic {
                conductor: c.conductor,
                coeffs: c.coeffs.iter().map(|x| -x).collect(),
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &Scalar) -> Scalar {
                (&self).$f(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                self.$f(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (&mut *self, rhs) {
            *a += b;
            return;
        }
        *self = &*self + rhs;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (&mut *self, rhs) {
            *a -= b;
            return;
        }
        *self = &*self - rhs;
    }
}

impl SubAssign<Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut a, b| {
            a += &b;
            a
        })
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::Cyc(c) => {
                let mut first = true;
                for (k, a) in c.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let neg = a.is_negative();
                    let abs = a.abs();
                    if first {
                        if neg {
                            write!(f, "-")?;
                        }
                    } else {
                        write!(f, " {} ", if neg { "-" } else { "+" })?;
                    }
                    first = false;
                    let root = match k {
                        0 => String::new(),
                        1 => format!("z{}", c.conductor),
                        _ => format!("z{}^{}", c.conductor, k),
                    };
                    if k == 0 {
                        write!(f, "{}", fmt_rational(&abs))?;
                    } else if abs.is_one() {
                        write!(f, "{}", root)?;
                    } else {
                        write!(f, "{}*{}", fmt_rational(&abs), root)?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parse the textual form used by group files and by `Display`.
///
/// Grammar: a sum of terms separated by `+`/`-`; a term is
/// `[rational '*'] root` or a bare rational, where `root` is `zM`, `zM^k`,
/// `z` or `z^k`. A bare `z` means the primitive root of `default_conductor`.
pub fn parse_scalar(text: &str, default_conductor: u32) -> Result<Scalar, ScalarError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(ScalarError::Parse(text.to_string()));
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.is_empty() {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut acc = Scalar::zero();
    for t in terms {
        acc += parse_term(&t, default_conductor).ok_or_else(|| ScalarError::Parse(text.to_string()))?;
    }
    Ok(acc)
}

fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        Some(BigRational::from_integer(s.parse().ok()?))
    }
}

fn parse_term(t: &str, default_conductor: u32) -> Option<Scalar> {
    let (sign, body) = match t.strip_prefix('-') {
        Some(b) => (-1, b),
        None => (1, t.strip_prefix('+').unwrap_or(t)),
    };
    let (coef, root) = match body.find('z') {
        None => (parse_rational(body)?, None),
        Some(pos) => {
            let head = &body[..pos];
            let coef = if head.is_empty() {
                BigRational::one()
            } else {
                parse_rational(head.strip_suffix('*')?)?
            };
            (coef, Some(&body[pos + 1..]))
        }
    };
    let coef = if sign < 0 { -coef } else { coef };
    let value = match root {
        None => Scalar::Rat(coef),
        Some(r) => {
            let (m, k) = match r.split_once('^') {
                Some((m, k)) => (m, k.parse::<i64>().ok()?),
                None => (r, 1),
            };
            let m: u32 = if m.is_empty() { default_conductor } else { m.parse().ok()? };
            if m == 0 {
                return None;
            }
            &Scalar::Rat(coef) * &Scalar::root_of_unity(m, k)
        }
    };
    Some(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_small() {
        let p = cyclotomic_polynomial(6);
        let v: Vec<i64> = p.iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(v, vec![1, -1, 1]);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(1), 1);
    }

    #[test]
    fn roots_sum_to_zero() {
        for m in 2..=12u32 {
            let s: Scalar = (0..m as i64).map(|k| Scalar::root_of_unity(m, k)).sum();
            assert!(s.is_zero(), "m = {m}");
        }
    }

    #[test]
    fn mixed_conductors() {
        // z3 = z6^2
        assert_eq!(Scalar::root_of_unity(3, 1), Scalar::root_of_unity(6, 2));
        let i = Scalar::root_of_unity(4, 1);
        let w = Scalar::root_of_unity(3, 1);
        let p = &i * &w;
        assert_eq!(p.pow(12).unwrap(), Scalar::one());
        assert_ne!(p.pow(6).unwrap(), Scalar::one());
        assert_eq!(&(&i * &i) + &Scalar::one(), Scalar::zero());
    }

    #[test]
    fn inverse_and_conj() {
        let x = parse_scalar("3/2*z5^2 - 1", 5).unwrap();
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        let w = Scalar::root_of_unity(7, 3);
        assert_eq!(w.conj(), Scalar::root_of_unity(7, 4));
        let n = &x * &x.conj();
        assert!(n.as_rational().is_some() || n.conj() == n);
    }

    #[test]
    fn display_roundtrip() {
        for t in ["0", "-7/3", "z3", "1 + 2*z5 - 1/2*z5^3", "-z4"] {
            let v = parse_scalar(t, 1).unwrap();
            let back = parse_scalar(&v.to_string(), 1).unwrap();
            assert_eq!(v, back, "{t}");
        }
        assert_eq!(parse_scalar("z^2", 3).unwrap(), Scalar::root_of_unity(3, 2));
    }
}
