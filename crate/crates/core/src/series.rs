//! Truncated formal power series in `z`.
//!
//! Coefficients live in any [`CoeffRing`]; division needs a [`CoeffField`].
//! This module is the generating-function side of every closed form in the
//! crate, so it never calls into the Stirling or Kravchuk code it checks.

use num_traits::{One, Zero};

use crate::arith::{factorial, rat_int, Rational};
use crate::error::{Error, Result};
use crate::poly::{binom_of, Polynomial, Variable};

pub trait CoeffRing: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
}

pub trait CoeffField: CoeffRing {
    fn inv(&self) -> Option<Self>;
}

impl CoeffRing for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
}

impl CoeffField for Rational {
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl CoeffRing for Polynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn one() -> Self {
        Polynomial::one()
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        Polynomial::scale(self, c)
    }
}

/// Coefficients of `z^0 ..= z^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

impl<C: CoeffRing> TruncatedSeries<C> {
    /// Pads with zeros or truncates so exactly `order + 1` coefficients remain.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    /// The series `z` (just `0` at order 0).
    pub fn z(order: usize) -> Self {
        Self::new(vec![C::zero(), C::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(CoeffRing::neg).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let order = self.order();
        let mut out = vec![C::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self).expect("same order");
        }
        acc
    }

    /// `self(inner(z))` by Horner's scheme; `inner` must have no constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order();
        let mut acc = Self::zero(order);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner)?;
            acc.coeffs[0] = acc.coeffs[0].add(c);
        }
        Ok(acc)
    }
}

impl<C: CoeffField> TruncatedSeries<C> {
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].inv().ok_or(Error::ZeroConstantTerm)?;
        let order = self.order();
        let mut out: Vec<C> = Vec::with_capacity(order + 1);
        out.push(inv0.clone());
        for n in 1..=order {
            let mut acc = C::zero();
            for k in 1..=n {
                acc = acc.add(&self.coeffs[k].mul(&out[n - k]));
            }
            out.push(acc.mul(&inv0).neg());
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.mul(&other.inverse()?)
    }
}

/// `ln(1 + z) = z - z^2/2 + z^3/3 - ...`
pub fn log1p(order: usize) -> TruncatedSeries<Rational> {
    let coeffs = (0..=order)
        .map(|i| match i {
            0 => <Rational as Zero>::zero(),
            _ if i % 2 == 1 => Rational::new(1.into(), (i as i64).into()),
            _ => Rational::new((-1).into(), (i as i64).into()),
        })
        .collect();
    TruncatedSeries::new(coeffs, order)
}

/// `e^{c z}`.
pub fn exp_series(c: &Rational, order: usize) -> TruncatedSeries<Rational> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut power = <Rational as One>::one();
    for i in 0..=order {
        coeffs.push(&power / rat_int(factorial(i as u32)));
        power *= c;
    }
    TruncatedSeries::new(coeffs, order)
}

/// `(1 + s z)^p = sum_i C(p, i) s^i z^i` for a polynomial exponent `p`.
fn binomial_series(p: &Polynomial, sign: i64, order: usize) -> TruncatedSeries<Polynomial> {
    let coeffs = (0..=order)
        .map(|i| binom_of(p, i as u32).scale(&rat_int(sign.pow(i as u32))))
        .collect();
    TruncatedSeries::new(coeffs, order)
}

/// `K_0 .. K_order` read off `(1+z)^a (1-z)^x (1+z)^(-x)`.
pub fn kravchuk_genfun(order: usize) -> Vec<Polynomial> {
    let a = Polynomial::var(Variable::A);
    let x = Polynomial::var(Variable::X);
    let product = binomial_series(&a, 1, order)
        .mul(&binomial_series(&x, -1, order))
        .and_then(|s| s.mul(&binomial_series(&-&x, 1, order)))
        .expect("same order");
    product.into_coeffs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn series(v: &[(i64, i64)], order: usize) -> TruncatedSeries<Rational> {
        TruncatedSeries::new(v.iter().map(|&(n, d)| rat(n, d)).collect(), order)
    }

    #[test]
    fn arithmetic_examples() {
        let s = series(&[(1, 1), (2, 1), (-1, 3)], 4);
        assert_eq!(s.mul(&TruncatedSeries::one(4)).unwrap(), s);
        let p = series(&[(1, 1), (1, 1)], 3).mul(&series(&[(1, 1), (-1, 1)], 3)).unwrap();
        assert_eq!(p, series(&[(1, 1), (0, 1), (-1, 1)], 3));
        let geo = TruncatedSeries::one(3).div(&series(&[(1, 1), (-1, 1)], 3)).unwrap();
        assert_eq!(geo, series(&[(1, 1), (1, 1), (1, 1), (1, 1)], 3));
        assert_eq!(series(&[(1, 1), (1, 1)], 3).pow(3), series(&[(1, 1), (3, 1), (3, 1), (1, 1)], 3));
    }

    #[test]
    fn errors() {
        let zc = TruncatedSeries::<Rational>::z(3);
        assert_eq!(TruncatedSeries::one(3).div(&zc), Err(Error::ZeroConstantTerm));
        assert_eq!(zc.compose(&TruncatedSeries::one(3)), Err(Error::NonzeroConstantTerm));
        assert_eq!(zc.add(&TruncatedSeries::one(4)), Err(Error::OrderMismatch(3, 4)));
    }

    #[test]
    fn log_and_exp() {
        assert_eq!(log1p(1), series(&[(0, 1), (1, 1)], 1));
        assert_eq!(log1p(3), series(&[(0, 1), (1, 1), (-1, 2), (1, 3)], 3));
        let neg_z = TruncatedSeries::<Rational>::z(5).neg();
        let diff = log1p(5).sub(&log1p(5).compose(&neg_z).unwrap()).unwrap();
        assert_eq!(diff, series(&[(0, 1), (2, 1), (0, 1), (2, 3), (0, 1), (2, 5)], 5));

        assert_eq!(exp_series(&rat(0, 1), 3), TruncatedSeries::one(3));
        assert_eq!(exp_series(&rat(1, 1), 2), series(&[(1, 1), (1, 1), (1, 2)], 2));
        assert_eq!(exp_series(&rat(2, 1), 3), series(&[(1, 1), (2, 1), (2, 1), (4, 3)], 3));
    }

    #[test]
    fn composition() {
        let g = series(&[(3, 1), (0, 1), (5, 2), (1, 1)], 5);
        let z = TruncatedSeries::<Rational>::z(5);
        assert_eq!(g.compose(&z).unwrap(), g);
        let f = series(&[(0, 1), (2, 1), (-1, 7), (1, 1)], 5);
        assert_eq!(z.compose(&f).unwrap(), f);
    }

    #[test]
    fn inverse_pairs_compose_to_identity() {
        for order in [1usize, 4, 8, 12] {
            let z = TruncatedSeries::<Rational>::z(order);
            // g = (1/2) ln((1+z)/(1-z)), f = (e^{2z} - 1)/(e^{2z} + 1)
            let g = log1p(order).sub(&log1p(order).compose(&z.neg()).unwrap()).unwrap().scale(&rat(1, 2));
            let e2 = exp_series(&rat(2, 1), order);
            let one = TruncatedSeries::one(order);
            let f = e2.sub(&one).unwrap().div(&e2.add(&one).unwrap()).unwrap();
            assert_eq!(g.compose(&f).unwrap(), z, "order {order}");
            // g = ln(1+z), f = e^z - 1
            let f2 = exp_series(&rat(1, 1), order).sub(&one).unwrap();
            assert_eq!(log1p(order).compose(&f2).unwrap(), z, "order {order}");
        }
    }

    #[test]
    fn kravchuk_low_coefficients() {
        let k = kravchuk_genfun(2);
        assert_eq!(k[0], Polynomial::one());
        assert_eq!(k[1], Polynomial::var(Variable::A) - Polynomial::var(Variable::X).scale(&rat(2, 1)));
    }
}
