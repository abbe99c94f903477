//! Dense polynomials in the upper summation limit `n`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::scalar::{binomial, format_rational, from_bigint, ExactScalar};

/// Coefficient `d` multiplies `n^d`. Trailing zeros are always trimmed, so the
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PolynomialInN {
    coeffs: Vec<ExactScalar>,
}

impl PolynomialInN {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<ExactScalar>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    /// `c * n^d`.
    pub fn monomial(c: ExactScalar, d: usize) -> Self {
        let mut coeffs = vec![ExactScalar::zero(); d + 1];
        coeffs[d] = c;
        Self::from_coeffs(coeffs)
    }

    /// `(n + shift)^m` expanded by the binomial theorem.
    pub fn shifted_power(shift: i64, m: u32) -> Self {
        let shift = ExactScalar::from_integer(shift.into());
        let coeffs = (0..=m)
            .map(|d| {
                from_bigint(binomial(u64::from(m), u64::from(d)))
                    * crate::scalar::pow(&shift, i64::from(m - d))
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> ExactScalar {
        self.coeffs.last().cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn coeff(&self, d: usize) -> ExactScalar {
        self.coeffs.get(d).cloned().unwrap_or_else(ExactScalar::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, n: &ExactScalar) -> ExactScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactScalar::zero(), |acc, c| acc * n + c)
    }

    pub fn eval_at(&self, n: u64) -> ExactScalar {
        self.eval(&ExactScalar::from_integer(n.into()))
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }
}

impl Add for &PolynomialInN {
    type Output = PolynomialInN;

    fn add(self, rhs: Self) -> PolynomialInN {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        PolynomialInN::from_coeffs((0..len).map(|d| self.coeff(d) + rhs.coeff(d)).collect())
    }
}

impl Sub for &PolynomialInN {
    type Output = PolynomialInN;

    fn sub(self, rhs: Self) -> PolynomialInN {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        PolynomialInN::from_coeffs((0..len).map(|d| self.coeff(d) - rhs.coeff(d)).collect())
    }
}

impl Mul for &PolynomialInN {
    type Output = PolynomialInN;

    fn mul(self, rhs: Self) -> PolynomialInN {
        if self.is_zero() || rhs.is_zero() {
            return PolynomialInN::zero();
        }
        let mut out = vec![ExactScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolynomialInN::from_coeffs(out)
    }
}

impl Neg for &PolynomialInN {
    type Output = PolynomialInN;

    fn neg(self) -> PolynomialInN {
        PolynomialInN::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for PolynomialInN {
    /// Ascending-degree coefficient list, e.g. `[-1, 1]` for `n - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}
