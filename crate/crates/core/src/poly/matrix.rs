use super::Polynomial;
use crate::error::{Error, Result};

/// Row-major square matrix of polynomials.
pub type Matrix = Vec<Vec<Polynomial>>;

fn check_square(m: &Matrix) -> Result<usize> {
    let n = m.len();
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    for (row, r) in m.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare { rows: n, row, cols: r.len() });
        }
    }
    Ok(n)
}

/// Exact determinant. Cofactor expansion up to 4x4, fraction-free
/// elimination above that.
pub fn determinant(m: &Matrix) -> Result<Polynomial> {
    let n = check_square(m)?;
    if n <= 4 {
        cofactor_determinant(m)
    } else {
        bareiss_determinant(m)
    }
}

/// Laplace expansion along the first row.
pub fn cofactor_determinant(m: &Matrix) -> Result<Polynomial> {
    let n = check_square(m)?;
    let cols: Vec<usize> = (0..n).collect();
    Ok(expand(m, 0, &cols))
}

fn expand(m: &Matrix, row: usize, cols: &[usize]) -> Polynomial {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut total = Polynomial::zero();
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&k| k != c).collect();
        let minor = entry * &expand(m, row + 1, &rest);
        if pos % 2 == 0 {
            total += minor;
        } else {
            total -= minor;
        }
    }
    total
}

/// Bareiss fraction-free elimination; every division is exact in the
/// polynomial ring.
pub fn bareiss_determinant(m: &Matrix) -> Result<Polynomial> {
    let n = check_square(m)?;
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = Polynomial::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(Polynomial::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).ok_or(Error::InexactDivision)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn x(i: usize) -> Polynomial {
        Polynomial::x(i)
    }

    #[test]
    fn small_examples() {
        assert_eq!(determinant(&vec![vec![x(3)]]).unwrap(), x(3));
        let m = vec![vec![x(0), x(1)], vec![x(1), x(2)]];
        assert_eq!(determinant(&m).unwrap(), &x(0) * &x(2) - &x(1).pow(2));
        assert_eq!(bareiss_determinant(&m).unwrap(), &x(0) * &x(2) - &x(1).pow(2));
    }

    #[test]
    fn shape_errors() {
        assert_eq!(determinant(&vec![]), Err(Error::EmptyMatrix));
        let m = vec![vec![x(0), x(1)], vec![x(1)]];
        assert_eq!(determinant(&m), Err(Error::NotSquare { rows: 2, row: 1, cols: 1 }));
    }

    #[test]
    fn bareiss_handles_zero_pivots() {
        let z = Polynomial::zero();
        let m = vec![
            vec![z.clone(), x(1), x(2)],
            vec![x(0), z.clone(), x(3)],
            vec![x(4), x(5), z.clone()],
        ];
        assert_eq!(bareiss_determinant(&m).unwrap(), cofactor_determinant(&m).unwrap());
        let singular = vec![vec![z.clone(), x(1)], vec![z.clone(), x(2)]];
        assert!(bareiss_determinant(&singular).unwrap().is_zero());
    }

    #[test]
    fn cubic_sylvester_matrix() {
        let c = |k: i64, p: Polynomial| p.scale(&rat(k, 1));
        let z = Polynomial::zero();
        let m = vec![
            vec![x(0), c(3, x(1)), c(3, x(2)), x(3), z.clone()],
            vec![z.clone(), x(0), c(3, x(1)), c(3, x(2)), x(3)],
            vec![c(3, x(0)), c(6, x(1)), c(3, x(2)), z.clone(), z.clone()],
            vec![z.clone(), c(3, x(0)), c(6, x(1)), c(3, x(2)), z.clone()],
            vec![z.clone(), z.clone(), c(3, x(0)), c(6, x(1)), c(3, x(2))],
        ];
        let inner = c(6, &(&x(0) * &x(3)) * &(&x(2) * &x(1)))
            + c(3, &x(1).pow(2) * &x(2).pow(2))
            - c(4, &x(1).pow(3) * &x(3))
            - c(4, &x(2).pow(3) * &x(0))
            - &x(0).pow(2) * &x(3).pow(2);
        // resultant of f and df/dX is -x0 times the discriminant
        let expected = -(&x(0) * &c(27, inner));
        assert_eq!(determinant(&m).unwrap(), expected);
        assert_eq!(cofactor_determinant(&m).unwrap(), expected);
    }
}
