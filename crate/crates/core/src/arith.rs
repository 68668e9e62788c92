//! Exact integers, rationals and the combinatorial number families used by
//! the Kravchuk formulas.
//!
//! Integers and rationals are the `num` arbitrary-precision types. Stirling
//! numbers come from memoized recurrence triangles so the generating-function
//! code in [`crate::series`] stays an independent check on them.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(n: i64) -> Integer {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<Integer>) -> Rational {
    BigRational::from_integer(n.into())
}

pub fn factorial(n: u32) -> Integer {
    (1..=n).fold(Integer::one(), |acc, i| acc * i)
}

/// `n choose k` for integer `n >= 0`; zero outside `0..=n`.
pub fn binomial(n: i64, k: i64) -> Result<Integer> {
    if n < 0 {
        return Err(Error::Domain(format!("binomial: negative n = {n}")));
    }
    if k < 0 || k > n {
        return Ok(Integer::zero());
    }
    let k = k.min(n - k);
    let mut acc = Integer::one();
    for i in 0..k {
        // acc * (n - i) is always divisible by i + 1 here
        acc = acc * (n - i) / (i + 1);
    }
    Ok(acc)
}

/// Grows a lower-triangular table row by row and hands back the entry.
fn triangle_entry(
    table: &Mutex<Vec<Vec<Integer>>>,
    row: usize,
    col: usize,
    next_row: impl Fn(usize, &[Integer]) -> Vec<Integer>,
) -> Integer {
    if col > row {
        return Integer::zero();
    }
    let mut rows = table.lock().unwrap_or_else(|e| e.into_inner());
    if rows.is_empty() {
        rows.push(vec![Integer::one()]);
    }
    while rows.len() <= row {
        let n = rows.len();
        let next = next_row(n, &rows[n - 1]);
        rows.push(next);
    }
    rows[row][col].clone()
}

static STIRLING_FIRST: Mutex<Vec<Vec<Integer>>> = Mutex::new(Vec::new());
static STIRLING_SECOND: Mutex<Vec<Vec<Integer>>> = Mutex::new(Vec::new());

/// Signed Stirling number of the first kind `s(m, k)`.
///
/// Recurrence: `s(n, k) = s(n-1, k-1) - (n-1) s(n-1, k)`.
pub fn stirling_first(m: usize, k: usize) -> Integer {
    triangle_entry(&STIRLING_FIRST, m, k, |n, prev| {
        (0..=n)
            .map(|k| {
                let left = if k >= 1 { prev[k - 1].clone() } else { Integer::zero() };
                let right = if k < n { &prev[k] * (n as i64 - 1) } else { Integer::zero() };
                left - right
            })
            .collect()
    })
}

/// Stirling number of the second kind `S(n, j)`.
///
/// Recurrence: `S(n, k) = k S(n-1, k) + S(n-1, k-1)`.
pub fn stirling_second(n: usize, j: usize) -> Integer {
    triangle_entry(&STIRLING_SECOND, n, j, |n, prev| {
        (0..=n)
            .map(|k| {
                let left = if k >= 1 { prev[k - 1].clone() } else { Integer::zero() };
                let right = if k < n { &prev[k] * k as i64 } else { Integer::zero() };
                left + right
            })
            .collect()
    })
}

/// The coefficient family
/// `S^(k)(n) = sum_{m=k}^{n} C(n-1, m-1) 2^m k!/m! s(m, k)`
/// for `1 <= k <= n`. Its generating function in `n` is
/// `(ln((1+z)/(1-z)))^k`.
pub fn s_upper(k: usize, n: usize) -> Result<Rational> {
    if k == 0 || k > n {
        return Err(Error::Domain(format!("s_upper requires 1 <= k <= n, got k={k}, n={n}")));
    }
    let k_fact = factorial(k as u32);
    let mut total = Rational::zero();
    for m in k..=n {
        let binom = binomial(n as i64 - 1, m as i64 - 1)?;
        let num = binom * (Integer::one() << m) * &k_fact * stirling_first(m, k);
        total += Rational::new(num, factorial(m as u32));
    }
    Ok(total)
}

/// `n!! = n (n-2) ... 1` for odd `n`, with `(-1)!! = 1`.
pub fn double_factorial(n: i64) -> Result<Integer> {
    if n < -1 || (n >= 0 && n % 2 == 0) {
        return Err(Error::Domain(format!("double factorial needs odd n >= -1, got {n}")));
    }
    let mut acc = Integer::one();
    let mut i = n;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    Ok(acc)
}

/// `(-1)^e` as a rational.
pub fn sign_pow(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Least common multiple of the denominators, used to clear fractions.
pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Integer {
    use num_integer::Integer as _;
    values
        .into_iter()
        .fold(Integer::one(), |acc, r| acc.lcm(r.denom()))
}

/// Greatest common divisor of the numerators (non-negative).
pub fn gcd_numerators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Integer {
    use num_integer::Integer as _;
    values
        .into_iter()
        .fold(Integer::zero(), |acc, r| acc.gcd(r.numer()))
        .abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(n: usize) -> Vec<Vec<Integer>> {
        let mut rows: Vec<Vec<Integer>> = vec![vec![Integer::one()]];
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = vec![Integer::one(); i + 1];
            for k in 1..i {
                row[k] = &prev[k - 1] + &prev[k];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 0).unwrap(), int(1));
        assert_eq!(binomial(3, 5).unwrap(), int(0));
        assert_eq!(binomial(3, -1).unwrap(), int(0));
        assert_eq!(binomial(5, 2).unwrap(), int(10));
        assert!(binomial(-2, 1).is_err());
    }

    #[test]
    fn binomial_matches_pascal() {
        let rows = pascal(30);
        for (n, row) in rows.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(&binomial(n as i64, k as i64).unwrap(), v, "C({n},{k})");
            }
        }
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling_first(0, 0), int(1));
        assert_eq!(stirling_first(1, 1), int(1));
        assert_eq!(stirling_first(3, 1), int(2));
        assert_eq!(stirling_first(4, 2), int(11));
        assert_eq!(stirling_first(2, 3), int(0));
        assert_eq!(stirling_second(4, 4), int(1));
        assert_eq!(stirling_second(3, 2), int(3));
        assert_eq!(stirling_second(6, 2), int(31));
        assert_eq!(stirling_second(2, 5), int(0));
    }

    #[test]
    fn stirling_first_sign_and_row_sums() {
        for n in 0..=20usize {
            let abs_sum: Integer = (0..=n).map(|k| stirling_first(n, k).abs()).sum();
            assert_eq!(abs_sum, factorial(n as u32));
            // x(x-1)...(x-n+1) = sum_k s(n,k) x^k at x = 1..n
            for x in 1..=n as i64 {
                let falling: Integer = (0..n as i64).fold(Integer::one(), |acc, i| acc * (x - i));
                let expanded: Integer = (0..=n)
                    .map(|k| stirling_first(n, k) * Integer::from(x).pow(k as u32))
                    .sum();
                assert_eq!(falling, expanded, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn stirling_second_counts_surjections() {
        // j! S(n, j) = sum_i (-1)^i C(j, i) (j - i)^n
        for n in 0..=15usize {
            for j in 0..=n {
                let mut incl_excl = Integer::zero();
                for i in 0..=j {
                    let term = binomial(j as i64, i as i64).unwrap()
                        * Integer::from((j - i) as i64).pow(n as u32);
                    if i % 2 == 0 {
                        incl_excl += term;
                    } else {
                        incl_excl -= term;
                    }
                }
                assert_eq!(factorial(j as u32) * stirling_second(n, j), incl_excl);
            }
        }
    }

    #[test]
    fn s_upper_examples() {
        assert_eq!(s_upper(1, 1).unwrap(), rat(2, 1));
        assert_eq!(s_upper(1, 2).unwrap(), rat(0, 1));
        assert_eq!(s_upper(1, 3).unwrap(), rat(2, 3));
        assert!(s_upper(0, 3).is_err());
        assert!(s_upper(4, 3).is_err());
    }

    #[test]
    fn double_factorial_examples() {
        assert_eq!(double_factorial(-1).unwrap(), int(1));
        assert_eq!(double_factorial(3).unwrap(), int(3));
        assert_eq!(double_factorial(5).unwrap(), int(15));
        assert!(double_factorial(4).is_err());
        assert!(double_factorial(-3).is_err());
    }

    #[test]
    fn triangles_are_safe_to_share() {
        let handles: Vec<_> = (0..8)
            .map(|t| std::thread::spawn(move || stirling_first(20 + t, 3) + stirling_second(20 + t, 4)))
            .collect();
        for h in handles {
            h.join().unwrap();
        }
        assert_eq!(stirling_second(6, 2), int(31));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn rational_sum_clears_exactly(p in -1000i64..1000, q in 1i64..1000, r in -1000i64..1000, s in 1i64..1000) {
                let lhs = (rat(p, q) + rat(r, s)) * rat_int(q * s);
                prop_assert_eq!(lhs, rat_int(p * s + r * q));
            }
        }
    }
}
