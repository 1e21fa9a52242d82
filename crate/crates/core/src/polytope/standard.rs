use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{HRep, Polytope};
use crate::error::{Error, Result};
use crate::linalg::{Constraint, QVector, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StandardKind {
    /// `conv(0, e_1, ..., e_n)`
    Simplex,
    /// `[-1, 1]^n`
    Cube,
    /// `conv(±e_1, ..., ±e_n)`
    Crosspolytope,
}

impl StandardKind {
    pub fn name(self) -> &'static str {
        match self {
            StandardKind::Simplex => "simplex",
            StandardKind::Cube => "cube",
            StandardKind::Crosspolytope => "crosspolytope",
        }
    }
}

impl fmt::Display for StandardKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StandardKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simplex" => Ok(StandardKind::Simplex),
            "cube" => Ok(StandardKind::Cube),
            "crosspolytope" | "cross" => Ok(StandardKind::Crosspolytope),
            other => Err(Error::InvalidArgument(format!("unknown polytope kind {other:?}"))),
        }
    }
}

fn sign_vectors(n: usize) -> Vec<QVector> {
    // lexicographic order: -1 before +1 in every coordinate
    (0..1usize << n)
        .map(|mask| {
            (0..n)
                .map(|i| if mask >> (n - 1 - i) & 1 == 1 { Rational::one() } else { Rational::from(-1) })
                .collect()
        })
        .collect()
}

/// The standard simplex, cube or crosspolytope of dimension `n`, with both
/// representations populated.
pub fn standard(kind: StandardKind, n: usize) -> Result<Polytope> {
    if n == 0 {
        return Err(Error::InvalidArgument("standard polytopes need n >= 1".into()));
    }
    let (mut vertices, inequalities) = match kind {
        StandardKind::Simplex => {
            let mut vertices = vec![QVector::zeros(n)];
            vertices.extend((0..n).map(|i| QVector::unit(n, i)));
            let mut facets: Vec<Constraint> =
                (0..n).map(|i| Constraint::new(QVector::unit(n, i).neg(), Rational::zero())).collect();
            facets.push(Constraint::new(vec![Rational::one(); n].into(), Rational::one()));
            (vertices, facets)
        }
        StandardKind::Cube => {
            let mut facets = Vec::with_capacity(2 * n);
            for i in 0..n {
                facets.push(Constraint::new(QVector::unit(n, i), Rational::one()));
                facets.push(Constraint::new(QVector::unit(n, i).neg(), Rational::one()));
            }
            (sign_vectors(n), facets)
        }
        StandardKind::Crosspolytope => {
            let mut vertices = Vec::with_capacity(2 * n);
            for i in 0..n {
                vertices.push(QVector::unit(n, i));
                vertices.push(QVector::unit(n, i).neg());
            }
            let facets = sign_vectors(n).into_iter().map(|s| Constraint::new(s, Rational::one())).collect();
            (vertices, facets)
        }
    };
    vertices.sort();
    let hrep = HRep::new(inequalities, Vec::new()).canonical();
    Ok(Polytope::from_parts(n, vertices, hrep))
}
