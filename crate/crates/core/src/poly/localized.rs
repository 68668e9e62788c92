use std::fmt;

use num_traits::One;

use super::{Monomial, Polynomial, Variable};
use crate::arith::Rational;
use crate::error::{Error, Result};

/// `numerator / pivot^pivot_power`, an element of the ring localized at a
/// single variable.
///
/// Kept normalized: when `pivot_power > 0` the pivot does not divide the
/// numerator, and zero is stored with power 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalizedPolynomial {
    numerator: Polynomial,
    pivot: Variable,
    pivot_power: u32,
}

impl LocalizedPolynomial {
    pub fn new(numerator: Polynomial, pivot: Variable, pivot_power: u32) -> Self {
        let mut out = LocalizedPolynomial { numerator, pivot, pivot_power };
        out.normalize();
        out
    }

    pub fn from_polynomial(p: Polynomial, pivot: Variable) -> Self {
        LocalizedPolynomial::new(p, pivot, 0)
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn pivot(&self) -> Variable {
        self.pivot
    }

    pub fn pivot_power(&self) -> u32 {
        self.pivot_power
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// The polynomial value when no denominator remains.
    pub fn to_polynomial(&self) -> Option<Polynomial> {
        (self.pivot_power == 0).then(|| self.numerator.clone())
    }

    /// `pivot^power * self` as a polynomial, if `power` clears the denominator.
    pub fn clear_with(&self, power: u32) -> Option<Polynomial> {
        let extra = power.checked_sub(self.pivot_power)?;
        Some(self.pivot_monomial_times(&self.numerator, extra))
    }

    fn pivot_monomial_times(&self, p: &Polynomial, e: u32) -> Polynomial {
        if e == 0 {
            p.clone()
        } else {
            p.mul_monomial(&Rational::one(), &Monomial::from_pairs([(self.pivot, e)]))
        }
    }

    fn normalize(&mut self) {
        if self.numerator.is_zero() {
            self.pivot_power = 0;
            return;
        }
        let common = self
            .numerator
            .terms()
            .map(|(m, _)| m.exponent(self.pivot))
            .min()
            .unwrap_or(0)
            .min(self.pivot_power);
        if common > 0 {
            let divisor = Monomial::from_pairs([(self.pivot, common)]);
            self.numerator = Polynomial::from_terms(
                self.numerator
                    .terms()
                    .map(|(m, c)| (c.clone(), m.div(&divisor).expect("pivot divides"))),
            );
            self.pivot_power -= common;
        }
    }

    fn check_pivot(&self, other: &Self) -> Result<()> {
        if self.pivot != other.pivot && !self.numerator.is_zero() && !other.numerator.is_zero() {
            return Err(Error::PivotMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_pivot(other)?;
        let pivot = if self.numerator.is_zero() { other.pivot } else { self.pivot };
        let power = self.pivot_power.max(other.pivot_power);
        let lhs = self.pivot_monomial_times(&self.numerator, power - self.pivot_power);
        let rhs = other.pivot_monomial_times(&other.numerator, power - other.pivot_power);
        Ok(LocalizedPolynomial::new(lhs + rhs, pivot, power))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_pivot(other)?;
        Ok(LocalizedPolynomial::new(
            &self.numerator * &other.numerator,
            self.pivot,
            self.pivot_power + other.pivot_power,
        ))
    }

    pub fn mul_polynomial(&self, p: &Polynomial) -> Self {
        LocalizedPolynomial::new(&self.numerator * p, self.pivot, self.pivot_power)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LocalizedPolynomial::new(self.numerator.scale(c), self.pivot, self.pivot_power)
    }

    pub fn neg(&self) -> Self {
        LocalizedPolynomial {
            numerator: -&self.numerator,
            pivot: self.pivot,
            pivot_power: self.pivot_power,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        LocalizedPolynomial::new(self.numerator.pow(e), self.pivot, self.pivot_power * e)
    }

    pub fn zero(pivot: Variable) -> Self {
        LocalizedPolynomial::new(Polynomial::zero(), pivot, 0)
    }

    pub fn is_constant(&self, c: &Rational) -> bool {
        self.pivot_power == 0 && self.numerator == Polynomial::constant(c.clone())
    }
}

impl fmt::Display for LocalizedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pivot_power {
            0 => write!(f, "{}", self.numerator),
            1 => write!(f, "({})/{}", self.numerator, self.pivot),
            k => write!(f, "({})/{}^{}", self.numerator, self.pivot, k),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    const X0: Variable = Variable::Indexed(0);

    #[test]
    fn normalizes_common_pivot_powers() {
        let num = &Polynomial::x(0).pow(2) * &(Polynomial::x(1) + Polynomial::x(0));
        let l = LocalizedPolynomial::new(num, X0, 3);
        assert_eq!(l.pivot_power(), 1);
        assert_eq!(l.numerator(), &(Polynomial::x(1) + Polynomial::x(0)));
        let again = LocalizedPolynomial::new(l.numerator().clone(), X0, l.pivot_power());
        assert_eq!(again, l);
    }

    #[test]
    fn clear_then_relocalize() {
        let l = LocalizedPolynomial::new(Polynomial::x(1).pow(2) + Polynomial::x(2), X0, 2);
        let cleared = l.clear_with(5).unwrap();
        assert_eq!(LocalizedPolynomial::new(cleared, X0, 5), l);
        assert_eq!(l.clear_with(1), None);
    }

    #[test]
    fn arithmetic() {
        // x1/x0 + x1^2/x0^2 = (x0 x1 + x1^2)/x0^2
        let a = LocalizedPolynomial::new(Polynomial::x(1), X0, 1);
        let b = a.pow(2);
        let s = a.add(&b).unwrap();
        assert_eq!(s.pivot_power(), 2);
        assert_eq!(s.numerator(), &(&Polynomial::x(0) * &Polynomial::x(1) + Polynomial::x(1).pow(2)));
        let z = a.sub(&a).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.pivot_power(), 0);
        let prod = a.mul(&LocalizedPolynomial::from_polynomial(Polynomial::x(0), X0)).unwrap();
        assert_eq!(prod.to_polynomial(), Some(Polynomial::x(1)));
        assert!(LocalizedPolynomial::from_polynomial(Polynomial::int(-1), X0).is_constant(&rat(-1, 1)));
    }

    #[test]
    fn pivot_mismatch_is_error() {
        let a = LocalizedPolynomial::new(Polynomial::x(1), X0, 1);
        let b = LocalizedPolynomial::new(Polynomial::x(0), Variable::Indexed(1), 1);
        assert_eq!(a.add(&b), Err(Error::PivotMismatch));
    }
}
