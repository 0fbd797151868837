//! Dense integer polynomials with arbitrary-precision coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::dd::Dd;

/// Coefficients in ascending degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPolynomial {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntPolynomial {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> IntPolynomial {
        IntPolynomial::from_i64(&[1])
    }

    pub fn x() -> IntPolynomial {
        IntPolynomial::from_i64(&[0, 1])
    }

    /// `c * x^k`.
    pub fn monomial(c: i64, k: usize) -> IntPolynomial {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::from(c);
        IntPolynomial::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn scale(&self, c: i64) -> IntPolynomial {
        let c = BigInt::from(c);
        IntPolynomial::new(self.coeffs.iter().map(|a| a * &c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        IntPolynomial::new(v)
    }

    pub fn derivative(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, a)| a * BigInt::from(k)).collect(),
        )
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coeffs.iter().enumerate().map(|(k, a)| if k % 2 == 1 { -a } else { a.clone() }).collect(),
        )
    }

    /// Sum of absolute coefficient values, as `f64`.
    pub fn l1_norm(&self) -> f64 {
        self.coeffs.iter().map(|a| a.abs().to_f64().unwrap_or(f64::INFINITY)).sum()
    }

    /// Horner evaluation in double-double precision.
    pub fn eval_dd(&self, x: Dd) -> Dd {
        self.coeffs.iter().rev().fold(Dd::ZERO, |acc, c| acc * x + bigint_to_dd(c))
    }

    /// Evaluation at an `f64` point, carried out in double-double so that
    /// cancellation between large terms does not destroy the result.
    pub fn eval(&self, x: f64) -> f64 {
        self.eval_dd(Dd::new(x)).to_f64()
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// Exact sign of `p(x)` at a rational point.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        self.eval_rational(x).cmp(&BigRational::zero())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| match c.to_i64() {
                    Some(v) => serde_json::Value::from(v),
                    None => serde_json::Value::from(c.to_string()),
                })
                .collect(),
        )
    }
}

pub(crate) fn bigint_to_dd(c: &BigInt) -> Dd {
    if let Some(v) = c.to_i128() {
        return Dd::from_i128(v);
    }
    let hi = c.to_f64().unwrap_or(f64::INFINITY);
    let rest = c - BigInt::from_f64(hi).unwrap_or_default();
    Dd { hi, lo: rest.to_f64().unwrap_or(0.0) }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPolynomial::new(v)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|a| -a).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Text form such as `x^3 - 3*x + 2`.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(IntPolynomial::from_i64(&[0, -3, 0, 1]).to_string(), "x^3 - 3*x");
        assert_eq!(IntPolynomial::from_i64(&[2, -3, 0, 1]).to_string(), "x^3 - 3*x + 2");
        assert_eq!(IntPolynomial::from_i64(&[-1, 0, -1]).to_string(), "-x^2 - 1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(IntPolynomial::from_i64(&[0, 0, 0]), IntPolynomial::zero());
    }

    #[test]
    fn arithmetic() {
        let a = IntPolynomial::from_i64(&[-1, 1]);
        let b = IntPolynomial::from_i64(&[1, 1]);
        assert_eq!(&a * &b, IntPolynomial::from_i64(&[-1, 0, 1]));
        assert_eq!(&a + &b, IntPolynomial::from_i64(&[0, 2]));
        assert_eq!((&a - &a).degree(), None);
        assert_eq!(IntPolynomial::from_i64(&[1, 2, 3]).derivative(), IntPolynomial::from_i64(&[2, 6]));
        assert_eq!(IntPolynomial::from_i64(&[1, 2, 3]).reflect(), IntPolynomial::from_i64(&[1, -2, 3]));
        assert_eq!(IntPolynomial::x().shift(2), IntPolynomial::monomial(1, 3));
    }

    #[test]
    fn evaluation() {
        let p = IntPolynomial::from_i64(&[-1, 0, 1]);
        assert_eq!(p.eval(3.0), 8.0);
        assert_eq!(IntPolynomial::zero().eval(1.7), 0.0);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(p.sign_at(&half), Ordering::Less);
        assert_eq!(p.to_json().to_string(), "[-1,0,1]");
    }

    #[test]
    fn huge_coefficients_convert() {
        let big = BigInt::from(3).pow(90);
        let d = bigint_to_dd(&big);
        let rel = ((d.hi + d.lo) - 3f64.powi(90)).abs() / 3f64.powi(90);
        assert!(rel < 1e-15);
    }
}
