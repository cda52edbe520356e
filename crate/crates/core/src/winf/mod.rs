//! The central extension of differential operators on the circle with
//! coefficients in `R(G)`, its bosonic realization, and the vertex operator.

pub mod bosonic;
pub mod diffop;
pub mod level_one;
pub mod vo;

pub use bosonic::{p_l_polynomial, NormalOrderedExpr};
pub use diffop::{DiffOpElement, Winf};
pub use vo::{verify_vo, VoForm};

use crate::error::AlgebraError;
use crate::scalar::Scalar;
use crate::series::HbarSeries;

fn falling_int(d: i64, l: u32) -> Scalar {
    Scalar::from_int((0..l as i64).map(|i| d - i).product::<i64>())
}

fn factorial(n: u32) -> Scalar {
    Scalar::from_int((1..=n as i64).product::<i64>())
}

/// Checks, for `D = 0..=order+2` and through `hbar^order`,
/// `q^D = 1 + sum (q-1)^l [D]_l / l! = 1 + sum hbar^l D^l / l!` and
/// `(q^D - 1)/(q^-1 - 1) = -q sum (q-1)^{l-1} [D]_l / l!`.
/// Returns the number of failing coefficient comparisons and the total.
pub fn lemma_variable_selftest(order: u32) -> Result<(usize, usize), AlgebraError> {
    let high = order as i32 + 2;
    let one = HbarSeries::one(high);
    let q = HbarSeries::exp_linear(&Scalar::one(), high);
    let qm1 = q.sub(&one);
    let mut failures = 0;
    let mut total = 0;
    for d in 0..=(order as i64 + 2) {
        let qd = HbarSeries::exp_linear(&Scalar::from_int(d), high);
        let mut falling = one.clone();
        let mut quotient_rhs = HbarSeries::zero(high);
        for l in 1..=d as u32 {
            let c = &falling_int(d, l) / &factorial(l);
            falling = falling.add(&qm1.pow(l)?.scale(&c));
            quotient_rhs = quotient_rhs.add(&qm1.pow(l - 1)?.scale(&c));
        }
        let quotient_rhs = q.mul(&quotient_rhs)?.neg();
        let mut power = vec![Scalar::one()];
        for l in 1..=order {
            power.push(&Scalar::from_int(d).pow(l as i64)? / &factorial(l));
        }
        let power = HbarSeries::new(0, power, order as i32)?;
        let qinv_m1 = HbarSeries::exp_linear(&Scalar::from_int(-1), high).sub(&one);
        let quotient = qd.sub(&one).div(&qinv_m1)?;
        for e in 0..=order as i32 {
            total += 2;
            let a = qd.coeff(e)?;
            if a != falling.coeff(e)? || a != power.coeff(e)? {
                failures += 1;
            }
            if quotient.coeff(e)? != quotient_rhs.coeff(e)? {
                failures += 1;
            }
        }
    }
    Ok((failures, total))
}

#[cfg(test)]
mod tests {
    #[test]
    fn lemma_variable() {
        assert_eq!(super::lemma_variable_selftest(5).unwrap().0, 0);
    }
}
