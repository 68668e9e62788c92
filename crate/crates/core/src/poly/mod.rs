//! Sparse multivariate polynomials over the rationals.
//!
//! The variables are the generators `x0, x1, ...` followed by the two
//! Kravchuk arguments `x` and `a`. Terms are stored in a `BTreeMap` keyed by
//! [`Monomial`], whose `Ord` is the canonical print order, so two equal
//! polynomials are always structurally equal and print identically.

mod localized;
mod matrix;
pub mod render;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::arith::{factorial, rat_int, Rational};
use crate::error::{Error, Result};

pub use localized::LocalizedPolynomial;
pub use matrix::{bareiss_determinant, cofactor_determinant, determinant, Matrix};

/// A ring variable. The derived order is `x0 < x1 < ... < x < a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    Indexed(u32),
    X,
    A,
}

impl Variable {
    pub fn index(self) -> Option<usize> {
        match self {
            Variable::Indexed(i) => Some(i as usize),
            _ => None,
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Indexed(i) => write!(f, "x{i}"),
            Variable::X => f.write_str("x"),
            Variable::A => f.write_str("a"),
        }
    }
}

/// A power product; exponents are always positive and sorted by variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Variable, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Variable) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Variable, u32)>) -> Self {
        let mut map: BTreeMap<Variable, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> &[(Variable, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (va, ea) = self.0[i];
            let (vb, eb) = other.0[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    out.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((vb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            let d = if j < other.0.len() && other.0[j].0 == v {
                j += 1;
                other.0[j - 1].1
            } else {
                0
            };
            match e.cmp(&d) {
                Ordering::Less => return None,
                Ordering::Equal => {}
                Ordering::Greater => out.push((v, e - d)),
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    fn without_one(&self, v: Variable) -> Option<(u32, Monomial)> {
        let pos = self.0.iter().position(|&(w, _)| w == v)?;
        let e = self.0[pos].1;
        let mut rest = self.0.clone();
        if e == 1 {
            rest.remove(pos);
        } else {
            rest[pos].1 -= 1;
        }
        Some((e, Monomial(rest)))
    }
}

/// Canonical order: higher total degree first; ties broken reverse
/// lexicographically (scan from the largest variable down, the smaller
/// exponent comes first). This is a monomial order, so leading terms are
/// multiplicative, which exact division relies on.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match other.degree().cmp(&self.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (a.len(), b.len());
        while i > 0 || j > 0 {
            let va = (i > 0).then(|| a[i - 1]);
            let vb = (j > 0).then(|| b[j - 1]);
            let (ea, eb) = match (va, vb) {
                (Some((x, ex)), Some((y, ey))) => match x.cmp(&y) {
                    Ordering::Equal => {
                        i -= 1;
                        j -= 1;
                        (ex, ey)
                    }
                    Ordering::Greater => {
                        i -= 1;
                        (ex, 0)
                    }
                    Ordering::Less => {
                        j -= 1;
                        (0, ey)
                    }
                },
                (Some((_, ex)), None) => {
                    i -= 1;
                    (ex, 0)
                }
                (None, Some((_, ey))) => {
                    j -= 1;
                    (0, ey)
                }
                (None, None) => unreachable!(),
            };
            match ea.cmp(&eb) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with rational coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::term(c, Monomial::one())
    }

    pub fn int(c: i64) -> Self {
        Polynomial::constant(rat_int(c))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn var(v: Variable) -> Self {
        Polynomial::term(Rational::one(), Monomial::var(v))
    }

    /// The generator `x_i`.
    pub fn x(i: usize) -> Self {
        Polynomial::var(Variable::Indexed(i as u32))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, Monomial)>) -> Self {
        let mut p = Polynomial::zero();
        for (c, m) in terms {
            p.add_term(c, m);
        }
        p
    }

    /// Linear form `sum_i coeffs[i] * x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        Polynomial::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (c.clone(), Monomial::var(Variable::Indexed(i as u32)))),
        )
    }

    pub fn add_term(&mut self, c: Rational, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value, if this polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: Variable) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn contains_var(&self, v: Variable) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    /// Highest generator index occurring, if any.
    pub fn max_index(&self) -> Option<usize> {
        self.variables().into_iter().filter_map(Variable::index).max()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &Rational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(n, k)| (n.mul(m), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn partial_derivative(&self, v: Variable) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.without_one(v) {
                out.add_term(c * rat_int(e), rest);
            }
        }
        out
    }

    /// Ring homomorphism image. Every variable of `self` must be bound.
    pub fn substitute(&self, bindings: &BTreeMap<Variable, Polynomial>) -> Result<Polynomial> {
        for v in self.variables() {
            if !bindings.contains_key(&v) {
                return Err(Error::MissingBinding(v));
            }
        }
        Ok(self.substitute_partial(bindings))
    }

    /// Like [`Polynomial::substitute`] but unbound variables map to themselves.
    pub fn substitute_partial(&self, bindings: &BTreeMap<Variable, Polynomial>) -> Polynomial {
        let mut powers: HashMap<Variable, Vec<Polynomial>> = HashMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut image = Polynomial::constant(c.clone());
            let mut fixed = Vec::new();
            for &(v, e) in &m.0 {
                match bindings.get(&v) {
                    Some(target) => {
                        let cache = powers.entry(v).or_insert_with(|| vec![Polynomial::one()]);
                        while cache.len() <= e as usize {
                            let next = cache.last().unwrap() * target;
                            cache.push(next);
                        }
                        image = &image * &cache[e as usize];
                    }
                    None => fixed.push((v, e)),
                }
            }
            if !fixed.is_empty() {
                image = image.mul_monomial(&Rational::one(), &Monomial(fixed));
            }
            out += image;
        }
        out
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = d.leading_term()?;
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&(Rational::one() / c)));
        }
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c / lc;
            rem -= d.mul_monomial(&qc, &qm);
            quot.add_term(qc, qm);
        }
        Some(quot)
    }

    /// Splits off the positive rational content: `self = content * primitive`,
    /// where `primitive` has coprime integer coefficients and a positive
    /// leading coefficient.
    pub fn primitive_part(&self) -> (Rational, Polynomial) {
        if self.is_zero() {
            return (Rational::one(), Polynomial::zero());
        }
        let den = crate::arith::lcm_denominators(self.terms.values());
        let num = crate::arith::gcd_numerators(self.terms.values());
        let mut content = Rational::new(num, den);
        if self.leading_term().map(|(_, c)| c < &Rational::zero()).unwrap_or(false) {
            content = -content;
        }
        (content.clone(), self.scale(&(Rational::one() / content)))
    }

    /// `c` with `self = c * other`, if one exists.
    pub fn ratio_to(&self, other: &Polynomial) -> Option<Rational> {
        if other.is_zero() {
            return None;
        }
        let (m, c) = other.leading_term()?;
        let ratio = self.coefficient(m) / c;
        (other.scale(&ratio) == *self).then_some(ratio)
    }
}

/// `v (v - 1) ... (v - i + 1) / i!` in a single variable.
pub fn binom_poly(v: Variable, i: u32) -> Polynomial {
    binom_of(&Polynomial::var(v), i)
}

/// `p (p - 1) ... (p - i + 1) / i!` for an arbitrary polynomial argument.
pub fn binom_of(p: &Polynomial, i: u32) -> Polynomial {
    let mut acc = Polynomial::one();
    for j in 0..i {
        acc = &acc * &(p - &Polynomial::int(j as i64));
    }
    acc.scale(&(Rational::one() / rat_int(factorial(i))))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render::to_text(self))
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<Variable> for Polynomial {
    fn from(v: Variable) -> Self {
        Polynomial::var(v)
    }
}

impl AddAssign<Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        for (m, c) in rhs.terms {
            self.add_term(c, m);
        }
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(c.clone(), m.clone());
        }
    }
}

impl SubAssign<Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: Polynomial) {
        for (m, c) in rhs.terms {
            self.add_term(-c, m);
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(-c.clone(), m.clone());
        }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += rhs;
        self
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= rhs;
        self
    }
}

impl Add<&Polynomial> for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: &Polynomial) -> Polynomial {
        self += rhs;
        self
    }
}

impl Sub<&Polynomial> for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: &Polynomial) -> Polynomial {
        self -= rhs;
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let (small, large) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(small.len() * large.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += c,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        Polynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Mul<&Rational> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Rational) -> Polynomial {
        self.scale(rhs)
    }
}
