//! Fraction-free (Bareiss) elimination on integer matrices.
//!
//! Every intermediate entry is a minor of the input, so the division by the
//! previous pivot is exact and coefficient growth stays polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Row echelon form computed in place. Returns the pivot columns in order;
/// their count is the rank.
pub fn echelon_in_place(rows: &mut [Vec<BigInt>]) -> Vec<usize> {
    let height = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..width {
        if r == height {
            break;
        }
        let Some(p) = (r..height).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[col];
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..width {
                let value = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = value / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = rows[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank_of_integer_rows(mut rows: Vec<Vec<BigInt>>) -> usize {
    echelon_in_place(&mut rows).len()
}

/// Determinant of a square integer matrix.
pub fn determinant(mut rows: Vec<Vec<BigInt>>) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !rows[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            rows.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let value = &rows[k][k] * &rows[i][j] - &rows[i][k] * &rows[k][j];
                rows[i][j] = value / &prev;
            }
        }
        prev = rows[k][k].clone();
    }
    sign * &rows[n - 1][n - 1]
}

/// Scales a rational row by the lcm of its denominators.
pub fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Divides out the gcd of the entries; the zero vector is left unchanged.
pub fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        *x /= &g;
    }
}

/// Primitive form with a positive first nonzero entry.
pub fn canonical_direction(row: &mut [BigInt]) {
    make_primitive(row);
    if let Some(first) = row.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(data: &[&[i64]]) -> Vec<Vec<BigInt>> {
        data.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(rows(&[&[2, 0], &[0, 3]])), BigInt::from(6));
        assert_eq!(determinant(rows(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(rows(&[&[1, 2], &[2, 4]])), BigInt::from(0));
        // cofactor expansion by hand: 2(0-1) - 1(0-3) + 1(1-0) = 2
        assert_eq!(determinant(rows(&[&[2, 1, 1], &[1, 0, 1], &[3, 1, 0]])), BigInt::from(2));
    }

    #[test]
    fn echelon_skips_zero_columns() {
        let mut m = rows(&[&[0, 1, 2], &[0, 2, 4], &[0, 0, 1]]);
        assert_eq!(echelon_in_place(&mut m), vec![1, 2]);
    }

    #[test]
    fn primitive_and_canonical() {
        let mut v = rows(&[&[-4, 6, 0]]).remove(0);
        canonical_direction(&mut v);
        assert_eq!(v, rows(&[&[2, -3, 0]]).remove(0));
    }
}
