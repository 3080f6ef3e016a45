//! Dense polynomials with exact rational coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::numerics::rational::{int, ExactRational};
use crate::numerics::Scalar;

/// Ascending coefficients; trailing zeros are always trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<ExactRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![ExactRational::zero(), ExactRational::one()])
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> ExactRational {
        self.coeffs.get(i).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval<S: Scalar>(&self, x: &S) -> S {
        let zero = S::lift(&ExactRational::zero(), x);
        self.coeffs.iter().rev().fold(zero, |acc, c| acc.mul(x).add(&S::lift(c, x)))
    }

    pub fn eval_rational(&self, x: &ExactRational) -> ExactRational {
        self.eval(x)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, q: &ExactRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    /// Multiplication by `x`.
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(ExactRational::zero());
        c.extend(self.coeffs.iter().cloned());
        Self::new(c)
    }

    /// p(-x).
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Exact integral over [-1, 1].
    pub fn integrate_symmetric(&self) -> ExactRational {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(i, _)| i % 2 == 0)
            .map(|(i, c)| c * ExactRational::new(2.into(), (i as i64 + 1).into()))
            .sum()
    }
}

/// `eval_polynomial` under its operation name.
pub fn eval_polynomial<S: Scalar>(p: &Polynomial, x: &S) -> S {
    p.eval(x)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut c = vec![ExactRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Polynomial::new(c)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::rat;
    use crate::numerics::Interval;

    #[test]
    fn square_at_minus_one() {
        let p = Polynomial::new(vec![int(0), int(0), int(1)]);
        assert_eq!(p.eval_rational(&int(-1)), int(1));
    }

    #[test]
    fn trims_and_degrees() {
        let p = Polynomial::new(vec![int(1), int(0), int(0)]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(Polynomial::new(vec![int(0)]).degree(), None);
    }

    #[test]
    fn interval_eval_contains_exact() {
        let p = Polynomial::new(vec![rat(-1, 8), int(0), rat(9, 8)]);
        let x = rat(1, 3);
        let iv = p.eval(&Interval::from_rational(&x, 64));
        assert!(iv.contains(&p.eval_rational(&x)));
        assert_eq!(p.eval_rational(&x), int(0));
    }

    #[test]
    fn integral_of_weight() {
        // (1 - x^2)^2 integrates to 16/15
        let w = Polynomial::new(vec![int(1), int(0), int(-2), int(0), int(1)]);
        assert_eq!(w.integrate_symmetric(), rat(16, 15));
    }
}
