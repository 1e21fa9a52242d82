use std::fmt;

use serde::{Deserialize, Serialize};

use super::bareiss::{echelon_in_place, integer_row};
use super::{QVector, Rational};
use crate::error::{Error, Result};

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// Outcome of [`QMatrix::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(QVector),
    None,
    /// `particular + span(nullspace)`.
    Family { particular: QVector, nullspace: Vec<QVector> },
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows of equal length. `cols` is needed when
    /// `rows` may be empty.
    pub fn from_rows(rows: &[QVector], cols: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.dim() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.dim() });
            }
            entries.extend(row.iter().cloned());
        }
        Ok(Self { rows: rows.len(), cols, entries })
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&x| Rational::from(x)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> QVector {
        self.entries[row * self.cols..(row + 1) * self.cols].iter().cloned().collect()
    }

    pub fn row_slice(&self, row: usize) -> &[Rational] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> QVector {
        (0..self.rows).map(|r| self.get(r, col).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, entries }
    }

    pub fn mul_vec(&self, x: &QVector) -> Result<QVector> {
        if x.dim() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: x.dim() });
        }
        Ok((0..self.rows)
            .map(|r| self.row_slice(r).iter().zip(x.iter()).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let v = (0..self.cols).map(|k| self.get(r, k) * other.get(k, c)).sum();
                out.set(r, c, v);
            }
        }
        Ok(out)
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> QMatrix {
        let mut entries = Vec::with_capacity(self.rows * columns.len());
        for r in 0..self.rows {
            for &c in columns {
                entries.push(self.get(r, c).clone());
            }
        }
        QMatrix { rows: self.rows, cols: columns.len(), entries }
    }

    fn integer_rows(&self) -> Vec<Vec<num_bigint::BigInt>> {
        (0..self.rows).map(|r| integer_row(self.row_slice(r))).collect()
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut rows = self.integer_rows();
        echelon_in_place(&mut rows).len()
    }

    /// Reduced row echelon form with its pivot columns. Zero rows are dropped.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut rows = self.integer_rows();
        let pivots = echelon_in_place(&mut rows);
        let mut reduced: Vec<Vec<Rational>> = rows
            .into_iter()
            .take(pivots.len())
            .map(|row| row.into_iter().map(Rational::from).collect())
            .collect();
        for (i, &pc) in pivots.iter().enumerate().rev() {
            let inv = reduced[i][pc].recip().expect("pivot is nonzero");
            for x in reduced[i].iter_mut() {
                *x *= &inv;
            }
            for k in 0..i {
                let factor = reduced[k][pc].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    let delta = &factor * &reduced[i][j];
                    reduced[k][j] -= &delta;
                }
            }
        }
        let entries = reduced.into_iter().flatten().collect();
        (QMatrix { rows: pivots.len(), cols: self.cols, entries }, pivots)
    }

    /// Basis of `{x : M x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<QVector> {
        let (reduced, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (i, &pc) in pivots.iter().enumerate() {
                    x[pc] = -reduced.get(i, f);
                }
                QVector::new(x)
            })
            .collect()
    }

    /// Classifies the solutions of `M x = rhs`.
    pub fn solve(&self, rhs: &QVector) -> Result<Solution> {
        if rhs.dim() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: rhs.dim() });
        }
        let mut augmented = Vec::with_capacity(self.rows * (self.cols + 1));
        for r in 0..self.rows {
            augmented.extend(self.row_slice(r).iter().cloned());
            augmented.push(rhs[r].clone());
        }
        let aug = QMatrix::new(self.rows, self.cols + 1, augmented)?;
        let (reduced, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(Solution::None);
        }
        let mut particular = vec![Rational::zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            particular[pc] = reduced.get(i, self.cols).clone();
        }
        let particular = QVector::new(particular);
        let nullspace = self.nullspace();
        if nullspace.is_empty() {
            Ok(Solution::Unique(particular))
        } else {
            Ok(Solution::Family { particular, nullspace })
        }
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Exact rank of `m`.
pub fn rank(m: &QMatrix) -> usize {
    m.rank()
}

/// Rank of a list of row vectors of common dimension `cols`.
pub fn rank_of_rows(rows: &[QVector], cols: usize) -> usize {
    QMatrix::from_rows(rows, cols).map(|m| m.rank()).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d).unwrap()
    }

    /// Textbook Gaussian elimination over the rationals, used as an oracle.
    fn naive_rank(m: &QMatrix) -> usize {
        let mut a: Vec<Vec<Rational>> = (0..m.rows()).map(|r| m.row_slice(r).to_vec()).collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
            a.swap(rank, p);
            for r in 0..a.len() {
                if r != rank && !a[r][c].is_zero() {
                    let f = a[r][c].checked_div(&a[rank][c]).unwrap();
                    for k in 0..m.cols() {
                        let d = &f * &a[rank][k];
                        a[r][k] -= &d;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_examples() {
        assert_eq!(QMatrix::identity(3).rank(), 3);
        assert_eq!(QMatrix::zeros(2, 5).rank(), 0);
        assert_eq!(QMatrix::from_i64(2, 2, &[1, 2, 2, 4]).unwrap().rank(), 1);
    }

    #[test]
    fn solve_examples() {
        let unique = QMatrix::identity(2).solve(&QVector::from_i64(&[1, 2])).unwrap();
        assert_eq!(unique, Solution::Unique(QVector::from_i64(&[1, 2])));

        let none = QMatrix::zeros(1, 1).solve(&QVector::from_i64(&[1])).unwrap();
        assert_eq!(none, Solution::None);

        let family = QMatrix::from_i64(1, 2, &[1, 1]).unwrap().solve(&QVector::from_i64(&[2])).unwrap();
        match family {
            Solution::Family { particular, nullspace } => {
                assert_eq!(particular, QVector::from_i64(&[2, 0]));
                assert_eq!(nullspace, vec![QVector::from_i64(&[-1, 1])]);
            }
            other => panic!("expected a family, got {other:?}"),
        }
    }

    #[test]
    fn solve_rejects_wrong_rhs() {
        assert!(QMatrix::identity(2).solve(&QVector::from_i64(&[1])).is_err());
    }

    #[test]
    fn rref_with_fractions() {
        let m = QMatrix::new(2, 2, vec![q(1, 2), q(1, 3), q(1, 4), q(1, 6)]).unwrap();
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0]);
        assert_eq!(r.row(0), QVector::new(vec![q(1, 1), q(2, 3)]));
    }

    fn small_matrix() -> impl Strategy<Value = QMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-3i64..4, 1i64..3), r * c).prop_map(move |data| {
                let entries = data.into_iter().map(|(p, d)| q(p, d)).collect();
                QMatrix::new(r, c, entries).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(m in small_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_matches_naive_elimination(m in small_matrix()) {
            prop_assert_eq!(m.rank(), naive_rank(&m));
        }

        #[test]
        fn unique_solutions_satisfy_the_system(m in small_matrix(), seed in proptest::collection::vec(-5i64..6, 4)) {
            let rhs: QVector = (0..m.rows()).map(|i| Rational::from(seed[i % seed.len()])).collect();
            match m.solve(&rhs).unwrap() {
                Solution::Unique(x) => prop_assert_eq!(m.mul_vec(&x).unwrap(), rhs),
                Solution::Family { particular, nullspace } => {
                    prop_assert_eq!(m.mul_vec(&particular).unwrap(), rhs);
                    for n in nullspace {
                        prop_assert!(m.mul_vec(&n).unwrap().is_zero());
                    }
                }
                Solution::None => {
                    let augmented: Vec<Rational> = (0..m.rows())
                        .flat_map(|r| {
                            let mut row = m.row_slice(r).to_vec();
                            row.push(rhs[r].clone());
                            row
                        })
                        .collect();
                    let augmented_rank = QMatrix::new(m.rows(), m.cols() + 1, augmented).unwrap().rank();
                    prop_assert!(m.rank() < augmented_rank);
                }
            }
        }
    }
}
