//! Truncated Laurent series in `hbar` with exact coefficients.

use std::fmt;

use crate::error::AlgebraError;
use crate::scalar::Scalar;

/// Poles deeper than this are refused.
pub const MAX_POLE: i32 = 2;

/// `sum_{e = low}^{high} c_e hbar^e`, exact through `high`; everything above
/// `high` is unknown. `low` is the valuation (first nonzero coefficient) unless
/// the known part is zero, in which case `coeffs` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HbarSeries {
    low: i32,
    coeffs: Vec<Scalar>,
    high: i32,
}

impl HbarSeries {
    /// Coefficients `coeffs[i]` of `hbar^{low + i}`, known through `high`.
    pub fn new(low: i32, coeffs: Vec<Scalar>, high: i32) -> Result<Self, AlgebraError> {
        let mut s = HbarSeries { low, coeffs, high };
        s.normalize();
        if !s.coeffs.is_empty() && s.low < -MAX_POLE {
            return Err(AlgebraError::Divisibility(format!("pole of order {}", -s.low)));
        }
        Ok(s)
    }

    fn normalize(&mut self) {
        let keep = (self.high - self.low + 1).max(0) as usize;
        self.coeffs.truncate(keep);
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.low += lead as i32;
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.low = self.high + 1;
        }
    }

    pub fn zero(high: i32) -> Self {
        HbarSeries { low: high + 1, coeffs: vec![], high }
    }

    pub fn constant(c: Scalar, high: i32) -> Self {
        Self::new(0, vec![c], high).expect("no pole")
    }

    pub fn one(high: i32) -> Self {
        Self::constant(Scalar::one(), high)
    }

    /// `exp(a hbar)`.
    pub fn exp_linear(a: &Scalar, high: i32) -> Self {
        let mut coeffs = Vec::new();
        let mut term = Scalar::one();
        for j in 0..=high.max(0) {
            coeffs.push(term.clone());
            term = &(&term * a) / &Scalar::from_int(j as i64 + 1);
        }
        Self::new(0, coeffs, high).expect("no pole")
    }

    /// Valuation; `None` when the known part vanishes.
    pub fn valuation(&self) -> Option<i32> {
        (!self.coeffs.is_empty()).then_some(self.low)
    }

    pub fn high(&self) -> i32 {
        self.high
    }

    pub fn coeff(&self, e: i32) -> Result<Scalar, AlgebraError> {
        if e > self.high {
            return Err(AlgebraError::OrderExhausted);
        }
        if e < self.low {
            return Ok(Scalar::zero());
        }
        Ok(self.coeffs.get((e - self.low) as usize).cloned().unwrap_or_default())
    }

    fn get(&self, e: i32) -> Scalar {
        if e < self.low {
            return Scalar::zero();
        }
        self.coeffs.get((e - self.low) as usize).cloned().unwrap_or_default()
    }

    fn val_or_high(&self) -> i32 {
        self.valuation().unwrap_or(self.high + 1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let high = self.high.min(other.high);
        let low = self.low.min(other.low);
        let coeffs = (low..=high).map(|e| &self.get(e) + &other.get(e)).collect();
        Self::new(low, coeffs, high).expect("sum keeps poles")
    }

    pub fn neg(&self) -> Self {
        HbarSeries { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect(), high: self.high }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|c| c * s).collect(), self.high).expect("same poles")
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        let high = (self.high + other.val_or_high()).min(other.high + self.val_or_high());
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ok(Self::zero(high));
        }
        let low = self.low + other.low;
        let mut coeffs = vec![Scalar::zero(); (high - low + 1).max(0) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let e = low + (i + j) as i32;
                if e > high {
                    break;
                }
                coeffs[(e - low) as usize] += &(a * b);
            }
        }
        Self::new(low, coeffs, high)
    }

    /// `self / other`; the divisor's leading coefficient must be invertible
    /// and the quotient must stay within the pole bound.
    pub fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        let v = other
            .valuation()
            .ok_or_else(|| AlgebraError::Divisibility("divisor is zero to known order".into()))?;
        // other = hbar^v u with u a unit known through other.high - v
        let rel = other.high - v;
        let u0 = other.coeffs[0].inv()?;
        let mut inv = vec![Scalar::zero(); (rel + 1).max(0) as usize];
        if !inv.is_empty() {
            inv[0] = u0.clone();
        }
        for k in 1..inv.len() {
            let mut acc = Scalar::zero();
            for j in 1..=k {
                if let Some(c) = other.coeffs.get(j) {
                    acc += &(c * &inv[k - j]);
                }
            }
            inv[k] = -(&acc * &u0);
        }
        let u_inv = HbarSeries::new(-v, inv, -v + rel)?;
        let q = self.mul(&u_inv)?;
        if let Some(l) = q.valuation() {
            if l < -MAX_POLE {
                return Err(AlgebraError::Divisibility(format!("quotient has a pole of order {}", -l)));
            }
        }
        Ok(q)
    }

    pub fn pow(&self, e: u32) -> Result<Self, AlgebraError> {
        let mut acc = Self::one(i32::MAX / 4);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `exp(self)` for a series without constant or polar part.
    pub fn exp(&self) -> Result<Self, AlgebraError> {
        let v = self.val_or_high();
        if v < 1 {
            return Err(AlgebraError::Divisibility("exp needs positive valuation".into()));
        }
        let mut acc = Self::one(self.high);
        let mut term = Self::one(self.high);
        let mut k: i32 = 1;
        while k * v <= self.high {
            term = term.mul(self)?.scale(&Scalar::from_ratio(1, k as i64));
            acc = acc.add(&term);
            k += 1;
        }
        Ok(acc)
    }

    /// Known coefficients from `low` to `high`.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Scalar)> {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.low + i as i32, c))
    }
}

impl fmt::Display for HbarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "({c})")?,
                _ => write!(f, "({c})*hbar^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(hbar^{})", self.high + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn exp_inverse() {
        let a = HbarSeries::exp_linear(&s(1), 6);
        let b = HbarSeries::exp_linear(&s(-1), 6);
        assert_eq!(a.mul(&b).unwrap(), HbarSeries::one(6));
    }

    #[test]
    fn exp_of_series_matches_exp_linear() {
        let x = HbarSeries::new(1, vec![s(3)], 7).unwrap();
        assert_eq!(x.exp().unwrap(), HbarSeries::exp_linear(&s(3), 7));
    }

    #[test]
    fn double_pole_prefactor() {
        // q / (q - 1)^2 = hbar^-2 - 1/12 + ...
        let n = 6;
        let q = HbarSeries::exp_linear(&s(1), n);
        let qm1 = q.sub(&HbarSeries::one(n));
        let p = q.div(&qm1.mul(&qm1).unwrap()).unwrap();
        assert_eq!(p.valuation(), Some(-2));
        assert_eq!(p.coeff(-2).unwrap(), s(1));
        assert_eq!(p.coeff(-1).unwrap(), s(0));
        assert_eq!(p.coeff(0).unwrap(), Scalar::from_ratio(-1, 12));
    }

    #[test]
    fn deep_pole_refused() {
        let h3 = HbarSeries::new(3, vec![s(1)], 8).unwrap();
        assert!(HbarSeries::one(8).div(&h3).is_err());
    }

    #[test]
    fn truncation_reported() {
        let a = HbarSeries::exp_linear(&s(1), 2);
        assert!(matches!(a.coeff(3), Err(AlgebraError::OrderExhausted)));
    }
}
