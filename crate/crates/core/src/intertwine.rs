//! Linear maps `psi` with `psi . D = D_K . psi`, where `D` is the basic
//! Weitzenböck derivation and `D_K` one of the Kravchuk derivations.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{binomial, factorial, rat, rat_int, stirling_second, Integer, Rational};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::series::{exp_series, TruncatedSeries};

/// `T(n, i) = sum_{j=i}^{n} (-1)^(j-i) 2^(n-j) j! S(n, j) C(j-1, i-1)`.
///
/// `T(0, 0) = 1` and `T(n, 0) = 0` for `n > 0`, which is what the
/// recurrence at `i = 0` needs.
pub fn t_coeff(n: usize, i: usize) -> Result<Integer> {
    if i > n {
        return Err(Error::Domain(format!("T(n, i) needs i <= n, got n={n}, i={i}")));
    }
    if i == 0 {
        return Ok(if n == 0 { Integer::one() } else { Integer::zero() });
    }
    let mut total = Integer::zero();
    for j in i..=n {
        let term = (Integer::one() << (n - j))
            * factorial(j as u32)
            * stirling_second(n, j)
            * binomial(j as i64 - 1, i as i64 - 1)?;
        if (j - i).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// `B(n, k) = k! S(n, k)`.
pub fn b_coeff(n: usize, k: usize) -> Result<Integer> {
    if k > n {
        return Err(Error::Domain(format!("B(n, k) needs k <= n, got n={n}, k={k}")));
    }
    Ok(factorial(k as u32) * stirling_second(n, k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PsiKind {
    Ak1,
    Ak2,
}

impl PsiKind {
    pub fn label(self) -> &'static str {
        match self {
            PsiKind::Ak1 => "ak1",
            PsiKind::Ak2 => "ak2",
        }
    }

    fn coeff(self, n: usize, i: usize) -> Result<Integer> {
        match self {
            PsiKind::Ak1 => t_coeff(n, i),
            PsiKind::Ak2 => b_coeff(n, i),
        }
    }
}

impl fmt::Display for PsiKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Ring endomorphism given by linear images of `x_0..x_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSubstitution {
    name: String,
    images: Vec<Polynomial>,
}

impl LinearSubstitution {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn max_index(&self) -> usize {
        self.images.len() - 1
    }

    pub fn image(&self, i: usize) -> Option<&Polynomial> {
        self.images.get(i)
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// Image of `p` under the homomorphism. Variables beyond `x_N`, and the
    /// Kravchuk arguments `x` and `a`, are rejected.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        let mut bindings = BTreeMap::new();
        for v in p.variables() {
            match v.index() {
                Some(i) if i <= self.max_index() => {
                    bindings.insert(v, self.images[i].clone());
                }
                _ => return Err(Error::VariableOutOfRange { var: v, max: self.max_index() }),
            }
        }
        p.substitute(&bindings)
    }
}

pub fn build_psi(kind: PsiKind, n: usize) -> Result<LinearSubstitution> {
    if n == 0 {
        return Err(Error::Domain("intertwining maps need N >= 1".into()));
    }
    let mut images = vec![Polynomial::x(0)];
    for m in 1..=n {
        let mut coeffs = vec![Rational::zero(); m + 1];
        for (i, c) in coeffs.iter_mut().enumerate().skip(1) {
            *c = rat_int(kind.coeff(m, i)?);
        }
        images.push(Polynomial::linear(&coeffs));
    }
    Ok(LinearSubstitution { name: kind.label().to_string(), images })
}

pub fn apply_psi(psi: &LinearSubstitution, p: &Polynomial) -> Result<Polynomial> {
    psi.apply(p)
}

fn egf_column(f: &TruncatedSeries<Rational>, i: usize, max_n: usize) -> Result<Vec<Rational>> {
    if i == 0 || i > max_n {
        return Err(Error::Domain(format!("oracle needs 1 <= i <= N, got i={i}, N={max_n}")));
    }
    let power = f.pow(i as u32);
    Ok((i..=max_n).map(|n| power.coeff(n) * rat_int(factorial(n as u32))).collect())
}

/// `n! [z^n] ((e^{2z} - 1)/(e^{2z} + 1))^i` for `n = i..=N`.
pub fn t_genfun_oracle(i: usize, max_n: usize) -> Result<Vec<Rational>> {
    let e2 = exp_series(&rat(2, 1), max_n);
    let one = TruncatedSeries::one(max_n);
    let f = e2.sub(&one)?.div(&e2.add(&one)?)?;
    egf_column(&f, i, max_n)
}

/// `n! [z^n] (e^z - 1)^k` for `n = k..=N`.
pub fn b_genfun_oracle(k: usize, max_n: usize) -> Result<Vec<Rational>> {
    let f = exp_series(&Rational::one(), max_n).sub(&TruncatedSeries::one(max_n))?;
    egf_column(&f, k, max_n)
}
