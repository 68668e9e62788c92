//! Derivations of `Q[x0..xN]`: the basic Weitzenböck derivation and the two
//! Kravchuk derivations, their powers, the Dixmier map and Cayley elements.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::arith::{factorial, rat, rat_int, s_upper, stirling_first, Rational};
use crate::error::{Error, Result};
use crate::kravchuk::{dkda_coefficients, dkdx_coefficients};
use crate::poly::{LocalizedPolynomial, Monomial, Polynomial, Variable};

const X0: Variable = Variable::Indexed(0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DerivationKind {
    /// `D(x_i) = i x_{i-1}`
    Weitzenbock,
    /// Mirrors `d/dx` on Kravchuk polynomials up to the factor `-2`.
    Kravchuk1,
    /// Mirrors `d/da` on Kravchuk polynomials.
    Kravchuk2,
}

impl DerivationKind {
    pub fn label(self) -> &'static str {
        match self {
            DerivationKind::Weitzenbock => "weitzenbock",
            DerivationKind::Kravchuk1 => "kravchuk1",
            DerivationKind::Kravchuk2 => "kravchuk2",
        }
    }
}

impl fmt::Display for DerivationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A derivation given by its images on the generators `x_0..x_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    name: String,
    images: Vec<Polynomial>,
}

impl Derivation {
    pub fn build(kind: DerivationKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("derivations need N >= 1".into()));
        }
        let images = (0..=n)
            .map(|i| -> Result<Polynomial> {
                if i == 0 {
                    return Ok(Polynomial::zero());
                }
                Ok(match kind {
                    DerivationKind::Weitzenbock => Polynomial::x(i - 1).scale(&rat_int(i as i64)),
                    // the x-derivative coefficients carry a factor -2
                    DerivationKind::Kravchuk1 => Polynomial::linear(&dkdx_coefficients(i)?).scale(&rat(-1, 2)),
                    DerivationKind::Kravchuk2 => Polynomial::linear(&dkda_coefficients(i)?),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Derivation { name: kind.label().to_string(), images })
    }

    pub fn from_images(name: impl Into<String>, images: Vec<Polynomial>) -> Self {
        Derivation { name: name.into(), images }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Highest generator index `N`.
    pub fn max_index(&self) -> usize {
        self.images.len().saturating_sub(1)
    }

    pub fn image(&self, i: usize) -> Option<&Polynomial> {
        self.images.get(i)
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// `D(x_i)` only involves `x_j` with `j < i`.
    pub fn is_triangular(&self) -> bool {
        self.images.iter().enumerate().all(|(i, img)| {
            img.variables().into_iter().all(|v| matches!(v.index(), Some(j) if j < i))
        })
    }

    fn generator_index(&self, v: Variable) -> Result<usize> {
        match v.index() {
            Some(i) if i <= self.max_index() => Ok(i),
            _ => Err(Error::VariableOutOfRange { var: v, max: self.max_index() }),
        }
    }

    /// Leibniz extension: `D(p) = sum_i dp/dx_i * D(x_i)`.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        for v in p.variables() {
            let i = self.generator_index(v)?;
            if self.images[i].is_zero() {
                continue;
            }
            out += &p.partial_derivative(v) * &self.images[i];
        }
        Ok(out)
    }

    pub fn power_apply(&self, p: &Polynomial, k: usize) -> Result<Polynomial> {
        let mut cur = p.clone();
        for _ in 0..k {
            if cur.is_zero() {
                break;
            }
            cur = self.apply(&cur)?;
        }
        Ok(cur)
    }

    /// `D(n / v^k) = D(n)/v^k - k n D(v)/v^(k+1)`.
    pub fn apply_localized(&self, l: &LocalizedPolynomial) -> Result<LocalizedPolynomial> {
        let pivot = l.pivot();
        let k = l.pivot_power();
        let top = LocalizedPolynomial::new(self.apply(l.numerator())?, pivot, k);
        if k == 0 {
            return Ok(top);
        }
        let dv = self.apply(&Polynomial::var(pivot))?;
        let correction = LocalizedPolynomial::new(
            (l.numerator() * &dv).scale(&rat_int(k as i64)),
            pivot,
            k + 1,
        );
        top.sub(&correction)
    }

    pub fn is_in_kernel(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.apply(p)?.is_zero())
    }
}

/// A slice source `h` with `D(h) != 0`, `D^2(h) = 0`, and the slice
/// `lambda = -h / D(h)` in the ring localized at `x0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Slice {
    h: Polynomial,
    lambda: LocalizedPolynomial,
}

impl Slice {
    /// `D(h)` must be a nonzero constant times a power of `x0`, so that
    /// `lambda` lives in the single-pivot localization.
    pub fn new(d: &Derivation, h: Polynomial) -> Result<Self> {
        let dh = d.apply(&h)?;
        if dh.is_zero() {
            return Err(Error::InvalidSlice("D(h) = 0".into()));
        }
        if !d.apply(&dh)?.is_zero() {
            return Err(Error::InvalidSlice("D^2(h) != 0".into()));
        }
        if dh.len() != 1 {
            return Err(Error::InvalidSlice(format!("D(h) = {dh} is not a monomial in x0")));
        }
        let (m, c) = dh.leading_term().expect("nonzero");
        let e = m.exponent(X0);
        if m.degree() != e {
            return Err(Error::InvalidSlice(format!("D(h) = {dh} is not a monomial in x0")));
        }
        let lambda = LocalizedPolynomial::new(h.scale(&(-Rational::one() / c)), X0, e);
        let slice = Slice { h, lambda };
        let check = d.apply_localized(&slice.lambda)?;
        if !check.is_constant(&rat(-1, 1)) {
            return Err(Error::InvalidSlice(format!("D(lambda) = {check}, expected -1")));
        }
        Ok(slice)
    }

    /// The slice used throughout: `h = x1`, `lambda = -x1/x0`.
    pub fn standard(d: &Derivation) -> Result<Self> {
        Slice::new(d, Polynomial::x(1))
    }

    pub fn h(&self) -> &Polynomial {
        &self.h
    }

    pub fn lambda(&self) -> &LocalizedPolynomial {
        &self.lambda
    }
}

/// Dixmier map `sigma(x_i) = sum_k D^k(x_i) lambda^k / k!`.
pub fn dixmier_sigma(d: &Derivation, i: usize, slice: &Slice) -> Result<LocalizedPolynomial> {
    if !d.is_triangular() {
        return Err(Error::NotTriangular(d.name().to_string()));
    }
    if i > d.max_index() {
        return Err(Error::VariableOutOfRange { var: Variable::Indexed(i as u32), max: d.max_index() });
    }
    let mut total = LocalizedPolynomial::zero(X0);
    let mut power = Polynomial::x(i);
    let mut lambda_k = LocalizedPolynomial::from_polynomial(Polynomial::one(), X0);
    let mut k = 0u32;
    while !power.is_zero() {
        let term = lambda_k.mul_polynomial(&power).scale(&(Rational::one() / rat_int(factorial(k))));
        total = total.add(&term)?;
        power = d.apply(&power)?;
        lambda_k = lambda_k.mul(slice.lambda())?;
        k += 1;
    }
    Ok(total)
}

/// Coefficients of `D^k(x_n)` in the basis `x_0..x_n`, together with the
/// normalization that turns the `S^(k)` closed form into the true power.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedPower {
    pub coeffs: Vec<Rational>,
    /// Raw `S^(k)(n - i)` coefficients before normalization.
    pub raw: Vec<Rational>,
    /// `coeffs = normalization * raw`; equals `per_application^k`.
    pub normalization: Rational,
    pub per_application: Rational,
}

fn check_power_range(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::Domain(format!("closed power needs 1 <= k <= n, got n={n}, k={k}")));
    }
    Ok(())
}

/// Ratio between one application of the first Kravchuk derivation and the
/// `S^(1)` closed form, measured on `x_1` where `D(x_1) = x_0` and
/// `S^(1)(1) = 2`.
pub fn dk1_calibration() -> Rational {
    static CAL: OnceLock<Rational> = OnceLock::new();
    CAL.get_or_init(|| {
        let d = Derivation::build(DerivationKind::Kravchuk1, 1).expect("N = 1");
        let image = d.apply(&Polynomial::x(1)).expect("in range");
        image.coefficient(&Monomial::var(X0)) / s_upper(1, 1).expect("k = n = 1")
    })
    .clone()
}

/// `D_K1^k(x_n) = c^k sum_{i=0}^{n-k} S^(k)(n-i) x_i` with `c` from
/// [`dk1_calibration`].
pub fn dk1_power_closed(n: usize, k: usize) -> Result<ClosedPower> {
    check_power_range(n, k)?;
    let per_application = dk1_calibration();
    let normalization = num_traits::pow(per_application.clone(), k);
    let raw: Vec<Rational> = (0..=n)
        .map(|i| if i + k <= n { s_upper(k, n - i) } else { Ok(Rational::zero()) })
        .collect::<Result<_>>()?;
    let coeffs = raw.iter().map(|c| c * &normalization).collect();
    Ok(ClosedPower { coeffs, raw, normalization, per_application })
}

/// `D_K2^k(x_n) = sum_{i=0}^{n-k} k!/(n-i)! s(n-i, k) x_i`.
pub fn dk2_power_closed(n: usize, k: usize) -> Result<Vec<Rational>> {
    check_power_range(n, k)?;
    let k_fact = rat_int(factorial(k as u32));
    Ok((0..=n)
        .map(|i| {
            if i + k > n {
                return Rational::zero();
            }
            &k_fact * rat_int(stirling_first(n - i, k)) / rat_int(factorial((n - i) as u32))
        })
        .collect())
}

/// Cayley element `C_n = n (n-2)! x0^(n-1) sigma(x_n)` of the first
/// Kravchuk derivation.
pub fn cayley_k1(n: usize) -> Result<Polynomial> {
    if n < 2 {
        return Err(Error::Domain("Cayley elements need n >= 2".into()));
    }
    let d = Derivation::build(DerivationKind::Kravchuk1, n)?;
    let sigma = dixmier_sigma(&d, n, &Slice::standard(&d)?)?;
    let cleared = sigma
        .clear_with(n as u32 - 1)
        .ok_or_else(|| Error::CheckFailed(format!("sigma(x{n}) has denominator beyond x0^{}", n - 1)))?;
    Ok(cleared.scale(&rat_int(factorial(n as u32 - 2) * n)))
}

/// `sigma(x_n) = scalar * numerator / x0^(n-1)` for the second Kravchuk
/// derivation; `numerator` has coprime integer coefficients and a positive
/// `x_n x0^(n-1)` term.
#[derive(Clone, Debug, PartialEq)]
pub struct CayleyK2 {
    pub numerator: Polynomial,
    pub scalar: Rational,
    pub pivot_power: u32,
}

pub fn cayley_k2(n: usize) -> Result<CayleyK2> {
    if n < 2 {
        return Err(Error::Domain("Cayley elements need n >= 2".into()));
    }
    let d = Derivation::build(DerivationKind::Kravchuk2, n)?;
    let sigma = dixmier_sigma(&d, n, &Slice::standard(&d)?)?;
    let pivot_power = n as u32 - 1;
    let cleared = sigma
        .clear_with(pivot_power)
        .ok_or_else(|| Error::CheckFailed(format!("sigma(x{n}) has denominator beyond x0^{pivot_power}")))?;
    let (mut scalar, mut numerator) = cleared.primitive_part();
    let lead = Monomial::from_pairs([(Variable::Indexed(n as u32), 1), (X0, pivot_power)]);
    if numerator.coefficient(&lead) < Rational::zero() {
        numerator = -numerator;
        scalar = -scalar;
    }
    Ok(CayleyK2 { numerator, scalar, pivot_power })
}
