//! Exact rational arithmetic and linear algebra. No floating point is used on
//! any computation path.

pub mod bareiss;
mod matrix;
mod rational;
mod vector;

pub use matrix::{rank, rank_of_rows, QMatrix, Solution};
pub use rational::{normalize, Rational};
pub use vector::QVector;

use crate::error::{Error, Result};

/// An affine hyperplane `normal · x = offset` (or the halfspace `≤`, by context).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub struct Constraint {
    pub normal: QVector,
    pub offset: Rational,
}

impl Constraint {
    pub fn new(normal: QVector, offset: Rational) -> Self {
        Self { normal, offset }
    }

    /// `offset - normal · x`; nonnegative means the inequality holds.
    pub fn slack(&self, x: &QVector) -> Result<Rational> {
        Ok(&self.offset - self.normal.dot(x)?)
    }
}

/// Affine hull of a finite point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineHull {
    pub basepoint: QVector,
    /// Basis of the direction space, in reduced row echelon form.
    pub basis: Vec<QVector>,
    /// Equations cutting out the hull, one per missing dimension.
    pub equations: Vec<Constraint>,
}

impl AffineHull {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn affine_hull(points: &[QVector]) -> Result<AffineHull> {
    let basepoint = points
        .first()
        .ok_or_else(|| Error::InvalidArgument("affine hull of an empty point set".into()))?
        .clone();
    let d = basepoint.dim();
    let diffs = points[1..].iter().map(|p| p.sub(&basepoint)).collect::<Result<Vec<_>>>()?;
    let diff_matrix = QMatrix::from_rows(&diffs, d)?;
    let (reduced, _) = diff_matrix.rref();
    let basis: Vec<QVector> = (0..reduced.rows()).map(|r| reduced.row(r)).collect();
    let equations = QMatrix::from_rows(&basis, d)?
        .nullspace()
        .into_iter()
        .map(|normal| {
            let offset = normal.dot(&basepoint).expect("same dimension");
            Constraint { normal, offset }
        })
        .collect();
    Ok(AffineHull { basepoint, basis, equations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_of_segment() {
        let hull = affine_hull(&[QVector::from_i64(&[0, 0]), QVector::from_i64(&[1, 0])]).unwrap();
        assert_eq!(hull.basepoint, QVector::from_i64(&[0, 0]));
        assert_eq!(hull.basis, vec![QVector::from_i64(&[1, 0])]);
        assert_eq!(hull.equations, vec![Constraint::new(QVector::from_i64(&[0, 1]), Rational::zero())]);
    }

    #[test]
    fn hull_of_point_and_triangle() {
        let p = QVector::from_i64(&[3, -1, 2]);
        let hull = affine_hull(std::slice::from_ref(&p)).unwrap();
        assert!(hull.basis.is_empty());
        assert_eq!(hull.equations.len(), 3);
        let normals: Vec<QVector> = hull.equations.iter().map(|e| e.normal.clone()).collect();
        assert_eq!(rank_of_rows(&normals, 3), 3);
        for e in &hull.equations {
            assert!(e.slack(&p).unwrap().is_zero());
        }

        let tri = [QVector::from_i64(&[0, 0]), QVector::from_i64(&[1, 0]), QVector::from_i64(&[0, 1])];
        let hull = affine_hull(&tri).unwrap();
        assert_eq!(hull.dim(), 2);
        assert!(hull.equations.is_empty());
    }

    #[test]
    fn generic_points_span_expected_dimension() {
        // k+1 points from a fixed integer sequence with no special structure
        let mut state: i64 = 7;
        for k in 0..5usize {
            let points: Vec<QVector> = (0..=k)
                .map(|_| {
                    (0..5)
                        .map(|_| {
                            state = (state * 48271) % 2_147_483_647;
                            Rational::from(state % 17 - 8)
                        })
                        .collect()
                })
                .collect();
            let hull = affine_hull(&points).unwrap();
            assert_eq!(hull.dim(), k);
            assert_eq!(hull.equations.len(), 5 - k);
            for p in &points {
                for e in &hull.equations {
                    assert!(e.slack(p).unwrap().is_zero());
                }
            }
        }
    }
}
