//! Kravchuk polynomials `K_n(x, a)` and their derivative expansions.

use std::sync::Mutex;

use num_traits::Zero;

use crate::arith::{rat, Rational};
use crate::error::{Error, Result};
use crate::poly::{binom_of, binom_poly, Polynomial, Variable};

static CACHE: Mutex<Vec<Polynomial>> = Mutex::new(Vec::new());

/// `K_n(x, a) = sum_{i=0}^{n} (-1)^i C(x, i) C(a - x, n - i)`, expanded.
pub fn kravchuk(n: usize) -> Polynomial {
    if let Some(p) = CACHE.lock().unwrap_or_else(|e| e.into_inner()).get(n) {
        return p.clone();
    }
    let value = explicit(n);
    let mut cache = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    while cache.len() <= n {
        let k = cache.len();
        let next = if k == n { value.clone() } else { explicit(k) };
        cache.push(next);
    }
    value
}

/// `[K_0, ..., K_n]`.
pub fn kravchuk_table(n: usize) -> Vec<Polynomial> {
    (0..=n).map(kravchuk).collect()
}

fn explicit(n: usize) -> Polynomial {
    let a_minus_x = Polynomial::var(Variable::A) - Polynomial::var(Variable::X);
    let mut total = Polynomial::zero();
    for i in 0..=n {
        let term = &binom_poly(Variable::X, i as u32) * &binom_of(&a_minus_x, (n - i) as u32);
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn combination(coeffs: impl IntoIterator<Item = (usize, Rational)>) -> Polynomial {
    let mut out = Polynomial::zero();
    for (i, c) in coeffs {
        if !c.is_zero() {
            out += kravchuk(i).scale(&c);
        }
    }
    out
}

/// Coefficients `c_i` with `dK_n/dx = sum_i c_i K_i`:
/// `-2 sum_{j=1}^{n} (1 - (-1)^j)/(2j) K_{n-j}`.
pub fn dkdx_coefficients(n: usize) -> Result<Vec<Rational>> {
    if n == 0 {
        return Err(Error::Domain("dK/dx expansion needs n >= 1".into()));
    }
    let mut c = vec![Rational::zero(); n];
    for j in (1..=n).step_by(2) {
        // (1 - (-1)^j)/(2j) = 1/j for odd j, 0 for even j
        c[n - j] = rat(-2, j as i64);
    }
    Ok(c)
}

/// Coefficients `c_i` with `dK_n/da = sum_{i<n} (-1)^(n+1+i)/(n-i) K_i`.
pub fn dkda_coefficients(n: usize) -> Result<Vec<Rational>> {
    if n == 0 {
        return Err(Error::Domain("dK/da expansion needs n >= 1".into()));
    }
    Ok((0..n)
        .map(|i| {
            let sign = if (n + 1 + i).is_multiple_of(2) { 1 } else { -1 };
            rat(sign, (n - i) as i64)
        })
        .collect())
}

pub fn dkdx_expansion(n: usize) -> Result<Polynomial> {
    Ok(combination(dkdx_coefficients(n)?.into_iter().enumerate()))
}

pub fn dkda_expansion(n: usize) -> Result<Polynomial> {
    Ok(combination(dkda_coefficients(n)?.into_iter().enumerate()))
}
