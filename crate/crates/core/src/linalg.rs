//! Exact dense linear algebra over the rationals.
//!
//! Square systems are solved by Bareiss fraction-free elimination on an
//! integer-scaled copy of the augmented matrix. Kernels are computed by
//! integer row reduction with per-row content removal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Multiplies a row of rationals by the lcm of its denominators.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    row.iter()
        .map(|r| r.numer() * (&l / r.denom()))
        .collect()
}

fn primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Solves `a · X = b` for square nonsingular `a` and any number of right-hand
/// side columns. Returns `None` when `a` is singular.
pub fn solve(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    assert_eq!(b.len(), n, "right-hand side has wrong row count");
    if n == 0 {
        return Some(Vec::new());
    }
    let k = b[0].len();
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| {
            assert_eq!(ra.len(), n, "matrix is not square");
            let full: Vec<Rational> = ra.iter().chain(rb.iter()).cloned().collect();
            integer_row(&full)
        })
        .collect();

    let width = n + k;
    let mut prev = BigInt::one();
    for col in 0..n {
        // partial pivoting on magnitude
        let p = (col..n)
            .filter(|&r| !m[r][col].is_zero())
            .max_by(|&r, &s| m[r][col].abs().cmp(&m[s][col].abs()))?;
        m.swap(col, p);
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for j in (col + 1)..width {
                let v = &pivot_row[col] * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = m[col][col].clone();
    }

    let mut x = vec![vec![Rational::zero(); k]; n];
    for c in 0..k {
        for i in (0..n).rev() {
            let mut acc = Rational::from_integer(m[i][n + c].clone());
            for j in (i + 1)..n {
                if !m[i][j].is_zero() {
                    acc -= Rational::from_integer(m[i][j].clone()) * &x[j][c];
                }
            }
            x[i][c] = acc / Rational::from_integer(m[i][i].clone());
        }
    }
    Some(x)
}

/// Basis of the right kernel of `rows` (each of length `ncols`). Basis vectors
/// are primitive integer vectors, returned as rationals.
pub fn kernel(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols);
            let mut ir = integer_row(r);
            primitive(&mut ir);
            ir
        })
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();

    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len())
            .filter(|&r| !m[r][col].is_zero())
            .min_by(|&r, &s| m[r][col].abs().cmp(&m[s][col].abs()))
        else {
            continue;
        };
        m.swap(row, p);
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let g = pivot_row[col].gcd(&other[col]);
            let mul_other = &pivot_row[col] / &g;
            let mul_pivot = &other[col] / &g;
            for j in 0..ncols {
                other[j] = &other[j] * &mul_other - &pivot_row[j] * &mul_pivot;
            }
            primitive(other);
        }
        pivots.push(col);
        row += 1;
    }

    let rank = pivots.len();
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate().take(rank) {
                // reduced form: m[i][pc] * x_pc + m[i][f] * x_f = 0
                v[pc] = -Rational::new(m[i][f].clone(), m[i][pc].clone());
            }
            let mut ints = integer_row(&v);
            primitive(&mut ints);
            ints.into_iter().map(Rational::from_integer).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn solves_small_system() {
        let a = vec![
            vec![int(2), ratio(1, 2), int(0)],
            vec![int(1), int(3), int(-1)],
            vec![int(0), int(-1), ratio(4, 3)],
        ];
        let x_true = [ratio(1, 3), int(-2), ratio(5, 7)];
        let b: Vec<Vec<Rational>> = a
            .iter()
            .map(|r| vec![r.iter().zip(&x_true).map(|(p, q)| p * q).sum()])
            .collect();
        let x = solve(&a, &b).unwrap();
        for i in 0..3 {
            assert_eq!(x[i][0], x_true[i]);
        }
    }

    #[test]
    fn needs_pivoting() {
        let a = mat(&[&[0, 1], &[1, 0]]);
        let b = mat(&[&[3], &[4]]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(x[0][0], int(4));
        assert_eq!(x[1][0], int(3));
    }

    #[test]
    fn singular_is_none() {
        let a = mat(&[&[1, 2], &[2, 4]]);
        assert!(solve(&a, &mat(&[&[1], &[1]])).is_none());
    }

    #[test]
    fn inverse_via_identity() {
        let a = mat(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        let id: Vec<Vec<Rational>> = (0..3)
            .map(|i| (0..3).map(|j| int((i == j) as i64)).collect())
            .collect();
        let inv = solve(&a, &id).unwrap();
        assert_eq!(inv[0][0], ratio(3, 4));
        assert_eq!(inv[1][1], int(1));
        assert_eq!(inv[0][2], ratio(1, 4));
    }

    #[test]
    fn kernel_basis() {
        let a = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in &a {
                let s: Rational = r.iter().zip(v).map(|(p, q)| p * q).sum();
                assert!(s.is_zero());
            }
        }
        let full = mat(&[&[1, 0], &[0, 1]]);
        assert!(kernel(&full, 2).is_empty());
        let one = mat(&[&[1, -1, 0], &[0, 1, -1]]);
        let k = kernel(&one, 3);
        assert_eq!(k, vec![vec![int(1), int(1), int(1)]]);
    }
}
