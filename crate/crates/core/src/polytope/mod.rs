//! Polytopes in vertex and inequality form.
//!
//! A [`Polytope`] carries whichever representations are known and fills in
//! the other on demand. Fill-in goes through the double description kernel in
//! [`dd`] and is cached with compute-once semantics; concurrent readers may
//! race to compute, but every computation yields the same canonical value.
//!
//! Canonical forms: vertices sorted lexicographically; every inequality and
//! equation scaled to a primitive integer row `(normal, offset)` and sorted.
//! Equations additionally have a positive leading coefficient.

pub mod dd;
mod iso;
mod ops;
mod standard;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub use iso::{combinatorially_equal, ISO_VERTEX_LIMIT};
pub use ops::{bipyramid, dilate, intersect, negate, polar_dual, product, translate};
pub use standard::{standard, StandardKind};

use crate::error::{Error, Result};
use crate::linalg::bareiss::{canonical_direction, integer_row, make_primitive};
use crate::linalg::{affine_hull, rank_of_rows, Constraint, QVector, Rational};
use dd::{cone_dd, ConeInput, DdOptions};

/// Vertex list in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VRep {
    pub vertices: Vec<QVector>,
}

/// `normal · x <= offset` for each inequality, `normal · x = offset` for each
/// equation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HRep {
    pub inequalities: Vec<Constraint>,
    pub equations: Vec<Constraint>,
}

impl HRep {
    pub fn new(inequalities: Vec<Constraint>, equations: Vec<Constraint>) -> Self {
        Self { inequalities, equations }
    }

    /// The system `0 · x <= -1`.
    pub fn contradiction(ambient_dim: usize) -> Self {
        Self {
            inequalities: vec![Constraint::new(QVector::zeros(ambient_dim), Rational::from(-1))],
            equations: Vec::new(),
        }
    }

    /// Primitive integer rows, sorted, duplicates removed.
    pub fn canonical(&self) -> Self {
        let mut inequalities: Vec<Constraint> = self.inequalities.iter().map(canonical_inequality).collect();
        inequalities.sort();
        inequalities.dedup();
        let mut equations: Vec<Constraint> = self.equations.iter().map(canonical_equation).collect();
        equations.sort();
        equations.dedup();
        Self { inequalities, equations }
    }

    pub fn contains(&self, x: &QVector) -> Result<bool> {
        for ineq in &self.inequalities {
            if ineq.slack(x)?.is_negative() {
                return Ok(false);
            }
        }
        for eq in &self.equations {
            if !eq.slack(x)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn constraint_row(c: &Constraint) -> Vec<Rational> {
    let mut row = c.normal.coords().to_vec();
    row.push(c.offset.clone());
    row
}

fn constraint_from_row(row: Vec<BigInt>) -> Constraint {
    let mut coords: Vec<Rational> = row.into_iter().map(Rational::from).collect();
    let offset = coords.pop().expect("row has an offset entry");
    Constraint::new(QVector::new(coords), offset)
}

/// Scales `normal · x <= offset` to a primitive integer row (positive factor).
pub fn canonical_inequality(c: &Constraint) -> Constraint {
    let mut row = integer_row(&constraint_row(c));
    make_primitive(&mut row);
    constraint_from_row(row)
}

/// Scales an equation to a primitive integer row with positive leading entry.
pub fn canonical_equation(c: &Constraint) -> Constraint {
    let mut row = integer_row(&constraint_row(c));
    canonical_direction(&mut row);
    constraint_from_row(row)
}

#[derive(Debug, Default)]
pub struct Polytope {
    ambient_dim: usize,
    vrep: OnceLock<VRep>,
    hrep: OnceLock<HRep>,
    /// Constraint system as supplied, possibly redundant.
    raw_hrep: Option<HRep>,
    dim: OnceLock<Option<usize>>,
}

impl Clone for Polytope {
    fn clone(&self) -> Self {
        Self {
            ambient_dim: self.ambient_dim,
            vrep: self.vrep.clone(),
            hrep: self.hrep.clone(),
            raw_hrep: self.raw_hrep.clone(),
            dim: self.dim.clone(),
        }
    }
}

fn once<T>(value: T) -> OnceLock<T> {
    let cell = OnceLock::new();
    let _ = cell.set(value);
    cell
}

impl Polytope {
    /// Convex hull of a point set. Non-extreme and repeated points are dropped.
    pub fn from_points(ambient_dim: usize, points: &[QVector]) -> Result<Self> {
        for p in points {
            if p.dim() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: p.dim() });
            }
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.is_empty() {
            return Ok(Self::empty(ambient_dim));
        }
        let hrep = vrep_to_hrep_points(ambient_dim, &pts)?;
        let vertices = extreme_points(ambient_dim, &pts, &hrep)?;
        Ok(Self {
            ambient_dim,
            vrep: once(VRep { vertices }),
            hrep: once(hrep),
            raw_hrep: None,
            dim: OnceLock::new(),
        })
    }

    /// Polytope given by a (possibly redundant) constraint system. It must
    /// be bounded; that is checked when vertices are first requested.
    pub fn from_hrep(ambient_dim: usize, hrep: HRep) -> Result<Self> {
        for c in hrep.inequalities.iter().chain(&hrep.equations) {
            if c.normal.dim() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: c.normal.dim() });
            }
        }
        Ok(Self { ambient_dim, raw_hrep: Some(hrep), ..Default::default() })
    }

    /// Both representations already canonical and consistent.
    pub(crate) fn from_parts(ambient_dim: usize, vertices: Vec<QVector>, hrep: HRep) -> Self {
        Self {
            ambient_dim,
            vrep: once(VRep { vertices }),
            hrep: once(hrep),
            raw_hrep: None,
            dim: OnceLock::new(),
        }
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Self::from_parts(ambient_dim, Vec::new(), HRep::contradiction(ambient_dim))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Canonical vertex list, computed from the constraints if needed.
    pub fn vertices(&self) -> Result<&[QVector]> {
        self.vertices_with(&DdOptions::default())
    }

    /// As [`Polytope::vertices`], with explicit kernel options on first use.
    pub fn vertices_with(&self, options: &DdOptions) -> Result<&[QVector]> {
        if let Some(v) = self.vrep.get() {
            return Ok(&v.vertices);
        }
        let raw = self.raw_hrep.as_ref().ok_or(Error::MissingRepresentation)?;
        let computed = hrep_to_vrep_system(self.ambient_dim, raw, options)?;
        let _ = self.vrep.set(computed);
        Ok(&self.vrep.get().expect("just set").vertices)
    }

    pub fn vrep(&self) -> Result<VRep> {
        Ok(VRep { vertices: self.vertices()?.to_vec() })
    }

    /// Irredundant facets and affine-hull equations.
    pub fn hrep(&self) -> Result<&HRep> {
        if let Some(h) = self.hrep.get() {
            return Ok(h);
        }
        let vertices = self.vertices()?;
        let computed = if vertices.is_empty() {
            HRep::contradiction(self.ambient_dim)
        } else if let Some(h) = self.raw_hrep.as_ref().map(|raw| facets_among(self.ambient_dim, raw, vertices)).transpose()?.flatten() {
            h
        } else {
            vrep_to_hrep_points(self.ambient_dim, vertices)?
        };
        let _ = self.hrep.set(computed);
        Ok(self.hrep.get().expect("just set"))
    }

    /// The supplied constraint system if there is one, otherwise the facets.
    pub fn constraint_system(&self) -> Result<&HRep> {
        match &self.raw_hrep {
            Some(raw) => Ok(raw),
            None => self.hrep(),
        }
    }

    pub fn facets(&self) -> Result<&[Constraint]> {
        if self.is_empty()? {
            return Ok(&[]);
        }
        Ok(&self.hrep()?.inequalities)
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.vertices()?.is_empty())
    }

    /// Dimension of the affine hull; `None` for the empty polytope.
    pub fn dimension(&self) -> Result<Option<usize>> {
        if let Some(d) = self.dim.get() {
            return Ok(*d);
        }
        let vertices = self.vertices()?;
        let d = if vertices.is_empty() { None } else { Some(affine_hull(vertices)?.dim()) };
        let _ = self.dim.set(d);
        Ok(d)
    }

    pub fn is_full_dimensional(&self) -> Result<bool> {
        Ok(self.dimension()? == Some(self.ambient_dim))
    }

    /// Whether `x` lies in the interior relative to the affine hull.
    pub fn contains_interior(&self, x: &QVector) -> Result<bool> {
        if self.is_empty()? {
            return Ok(false);
        }
        let h = self.hrep()?;
        for eq in &h.equations {
            if !eq.slack(x)?.is_zero() {
                return Ok(false);
            }
        }
        for f in &h.inequalities {
            if !f.slack(x)?.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn contains(&self, x: &QVector) -> Result<bool> {
        if self.is_empty()? {
            return Ok(false);
        }
        self.hrep()?.contains(x)
    }

    /// `incidence[v][f]` is true when vertex `v` lies on facet `f`.
    pub fn vertex_facet_incidence(&self) -> Result<Vec<Vec<bool>>> {
        let facets = self.facets()?;
        self.vertices()?
            .iter()
            .map(|v| facets.iter().map(|f| f.slack(v).map(|s| s.is_zero())).collect())
            .collect()
    }

    /// Every vertex satisfies all constraints, and its tight constraints
    /// (facets plus equations) have full rank.
    pub fn vertex_certificate(&self) -> Result<bool> {
        let h = self.hrep()?;
        for v in self.vertices()? {
            if !h.contains(v)? {
                return Ok(false);
            }
            let mut tight: Vec<QVector> = h.equations.iter().map(|e| e.normal.clone()).collect();
            for f in &h.inequalities {
                if f.slack(v)?.is_zero() {
                    tight.push(f.normal.clone());
                }
            }
            if rank_of_rows(&tight, self.ambient_dim) != self.ambient_dim {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> Result<PolytopeJson> {
        let vertices = self.vertices()?.to_vec();
        let h = self.hrep()?.clone();
        Ok(PolytopeJson {
            ambient_dim: self.ambient_dim,
            vertices: Some(vertices),
            inequalities: Some(h.inequalities),
            equations: Some(h.equations),
        })
    }

    pub fn from_json(json: &PolytopeJson) -> Result<Self> {
        if let Some(vertices) = &json.vertices {
            return Self::from_points(json.ambient_dim, vertices);
        }
        let hrep = HRep {
            inequalities: json.inequalities.clone().unwrap_or_default(),
            equations: json.equations.clone().unwrap_or_default(),
        };
        Self::from_hrep(json.ambient_dim, hrep)
    }
}

/// File format for a single polytope; either list may be absent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub ambient_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<QVector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inequalities: Option<Vec<Constraint>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equations: Option<Vec<Constraint>>,
}

fn affine_rank(points: &[QVector], ambient_dim: usize) -> Result<usize> {
    let Some(base) = points.first() else { return Ok(0) };
    let diffs = points[1..].iter().map(|p| p.sub(base)).collect::<Result<Vec<_>>>()?;
    Ok(rank_of_rows(&diffs, ambient_dim))
}

/// Facets of the full-dimensional `conv(vertices) = {x : system}` picked out
/// of the system's rows; `None` when the polytope is not full-dimensional.
pub(crate) fn facets_among(ambient_dim: usize, system: &HRep, vertices: &[QVector]) -> Result<Option<HRep>> {
    if affine_rank(vertices, ambient_dim)? != ambient_dim {
        return Ok(None);
    }
    let mut facets = Vec::new();
    for c in &system.inequalities {
        let mut tight = Vec::new();
        for v in vertices {
            if c.slack(v)?.is_zero() {
                tight.push(v.clone());
            }
        }
        if tight.len() >= ambient_dim && affine_rank(&tight, ambient_dim)? + 1 == ambient_dim {
            facets.push(c.clone());
        }
    }
    Ok(Some(HRep::new(facets, Vec::new()).canonical()))
}

/// Vertices of `{x : hrep}`; errors when the set is unbounded.
pub fn hrep_to_vrep(p: &Polytope) -> Result<VRep> {
    let raw = p.constraint_system()?;
    hrep_to_vrep_system(p.ambient_dim(), raw, &DdOptions::default())
}

/// Vertices of a constraint system with explicit kernel options.
pub fn hrep_to_vrep_with(ambient_dim: usize, hrep: &HRep, options: &DdOptions) -> Result<VRep> {
    hrep_to_vrep_system(ambient_dim, hrep, options)
}

/// Irredundant facets and affine hull equations of `conv(vertices)`.
pub fn vrep_to_hrep(p: &Polytope) -> Result<HRep> {
    let vertices = p.vertices()?;
    if vertices.is_empty() {
        return Ok(HRep::contradiction(p.ambient_dim()));
    }
    vrep_to_hrep_points(p.ambient_dim(), vertices)
}

/// Homogenized row `(offset, -normal)`: nonnegative on `(1, x)` iff `x` is feasible.
fn homogenized(c: &Constraint) -> Vec<BigInt> {
    let mut row = vec![c.offset.clone()];
    row.extend(c.normal.iter().map(|x| -x));
    integer_row(&row)
}

pub(crate) fn hrep_to_vrep_system(ambient_dim: usize, hrep: &HRep, options: &DdOptions) -> Result<VRep> {
    let mut inequalities: Vec<Vec<BigInt>> = Vec::with_capacity(hrep.inequalities.len() + 1);
    let mut nonneg = vec![BigInt::zero(); ambient_dim + 1];
    nonneg[0] = BigInt::from(1);
    inequalities.push(nonneg);
    inequalities.extend(hrep.inequalities.iter().map(homogenized));
    let input = ConeInput {
        dim: ambient_dim + 1,
        equations: hrep.equations.iter().map(homogenized).collect(),
        inequalities,
    };
    let out = cone_dd(&input, options);
    let mut vertices = Vec::new();
    let mut has_direction = false;
    for ray in &out.rays {
        if ray[0].is_positive() {
            let scale = &ray[0];
            vertices.push(
                ray[1..]
                    .iter()
                    .map(|x| Rational::new(x.clone(), scale.clone()).expect("positive denominator"))
                    .collect::<QVector>(),
            );
        } else {
            has_direction = true;
        }
    }
    if !vertices.is_empty() && (has_direction || !out.lineality.is_empty()) {
        return Err(Error::Unbounded);
    }
    vertices.sort();
    Ok(VRep { vertices })
}

pub(crate) fn vrep_to_hrep_points(ambient_dim: usize, points: &[QVector]) -> Result<HRep> {
    // c0 + c · v >= 0 for every point v
    let inequalities: Vec<Vec<BigInt>> = points
        .iter()
        .map(|v| {
            let mut row = vec![Rational::one()];
            row.extend(v.iter().cloned());
            integer_row(&row)
        })
        .collect();
    let input = ConeInput { dim: ambient_dim + 1, equations: Vec::new(), inequalities };
    let out = cone_dd(&input, &DdOptions::default());

    // offset column moved last so that every lineality pivot falls on a normal
    // coordinate; a ray whose normal part then reduces to zero is `0 · x <= c0`
    let rotate = |row: &[BigInt]| -> Vec<Rational> {
        row[1..].iter().chain(std::iter::once(&row[0])).cloned().map(Rational::from).collect()
    };
    let lineality: Vec<QVector> = out.lineality.iter().map(|l| QVector::new(rotate(l))).collect();
    let (reduced, pivots) = crate::linalg::QMatrix::from_rows(&lineality, ambient_dim + 1)?.rref();

    let to_equation = |row: &[Rational]| {
        // c · x + c0 = 0  <=>  c · x = -c0
        canonical_equation(&Constraint::new(row[..ambient_dim].iter().cloned().collect(), -&row[ambient_dim]))
    };
    let mut equations: Vec<Constraint> = (0..reduced.rows()).map(|r| to_equation(reduced.row_slice(r))).collect();
    equations.sort();

    let mut inequalities = Vec::new();
    for ray in &out.rays {
        let mut row = rotate(ray);
        for (i, &pc) in pivots.iter().enumerate() {
            let factor = row[pc].clone();
            if factor.is_zero() {
                continue;
            }
            for (j, x) in row.iter_mut().enumerate() {
                *x -= &(&factor * reduced.get(i, j));
            }
        }
        if row[..ambient_dim].iter().all(Rational::is_zero) {
            continue;
        }
        // c · x + c0 >= 0  <=>  (-c) · x <= c0
        let normal: QVector = row[..ambient_dim].iter().map(|x| -x).collect();
        inequalities.push(canonical_inequality(&Constraint::new(normal, row[ambient_dim].clone())));
    }
    inequalities.sort();
    inequalities.dedup();
    Ok(HRep { inequalities, equations })
}

/// Points of `points` that are vertices of their hull, given its facets.
fn extreme_points(ambient_dim: usize, points: &[QVector], hrep: &HRep) -> Result<Vec<QVector>> {
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        let mut tight: Vec<QVector> = hrep.equations.iter().map(|e| e.normal.clone()).collect();
        for f in &hrep.inequalities {
            if f.slack(p)?.is_zero() {
                tight.push(f.normal.clone());
            }
        }
        if rank_of_rows(&tight, ambient_dim) == ambient_dim {
            out.push(p.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(data: &[&[i64]]) -> Vec<QVector> {
        data.iter().map(|r| QVector::from_i64(r)).collect()
    }

    fn ineq(normal: &[i64], offset: i64) -> Constraint {
        Constraint::new(QVector::from_i64(normal), Rational::from(offset))
    }

    #[test]
    fn square_from_inequalities() {
        let h = HRep::new(vec![ineq(&[1, 0], 1), ineq(&[-1, 0], 1), ineq(&[0, 1], 1), ineq(&[0, -1], 1)], vec![]);
        let p = Polytope::from_hrep(2, h).unwrap();
        assert_eq!(p.vertices().unwrap(), pts(&[&[-1, -1], &[-1, 1], &[1, -1], &[1, 1]]).as_slice());
    }

    #[test]
    fn unbounded_is_an_error() {
        let p = Polytope::from_hrep(2, HRep::new(vec![ineq(&[1, 0], 1), ineq(&[0, 1], 1)], vec![])).unwrap();
        assert_eq!(p.vertices().unwrap_err(), Error::Unbounded);
    }

    #[test]
    fn infeasible_is_empty() {
        let p = Polytope::from_hrep(1, HRep::new(vec![ineq(&[1], -1), ineq(&[-1], -1)], vec![])).unwrap();
        assert!(p.is_empty().unwrap());
        assert_eq!(p.dimension().unwrap(), None);
        assert!(p.facets().unwrap().is_empty());
        assert_eq!(vrep_to_hrep(&p).unwrap(), HRep::contradiction(1));
    }

    #[test]
    fn segment_facets() {
        let p = Polytope::from_points(1, &pts(&[&[0], &[1]])).unwrap();
        let h = p.hrep().unwrap();
        assert!(h.equations.is_empty());
        assert_eq!(h.inequalities, vec![ineq(&[-1], 0), ineq(&[1], 1)]);
    }

    #[test]
    fn diagonal_segment_has_an_equation() {
        let p = Polytope::from_points(2, &pts(&[&[0, 0], &[1, 1]])).unwrap();
        let h = p.hrep().unwrap();
        assert_eq!(h.equations, vec![ineq(&[1, -1], 0)]);
        assert_eq!(h.inequalities.len(), 2);
        for f in &h.inequalities {
            // each facet is one endpoint; the inequality may use either coordinate
            let tight: Vec<bool> = p.vertices().unwrap().iter().map(|v| f.slack(v).unwrap().is_zero()).collect();
            assert_eq!(tight.iter().filter(|&&t| t).count(), 1);
        }
        assert_eq!(p.dimension().unwrap(), Some(1));
    }

    #[test]
    fn diamond_facets() {
        let p = Polytope::from_points(2, &pts(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])).unwrap();
        assert_eq!(
            p.hrep().unwrap().inequalities,
            vec![ineq(&[-1, -1], 1), ineq(&[-1, 1], 1), ineq(&[1, -1], 1), ineq(&[1, 1], 1)]
        );
    }

    #[test]
    fn redundant_points_are_dropped() {
        let p = Polytope::from_points(2, &pts(&[&[0, 0], &[2, 0], &[0, 2], &[1, 0], &[0, 0], &[1, 1]])).unwrap();
        assert_eq!(p.vertices().unwrap(), pts(&[&[0, 0], &[0, 2], &[2, 0]]).as_slice());
    }

    #[test]
    fn point_polytope() {
        let p = Polytope::from_points(2, &pts(&[&[3, 4]])).unwrap();
        assert_eq!(p.dimension().unwrap(), Some(0));
        assert!(p.facets().unwrap().is_empty());
        assert_eq!(p.hrep().unwrap().equations.len(), 2);
        assert!(p.contains_interior(&QVector::from_i64(&[3, 4])).unwrap());
    }

    #[test]
    fn lower_dimensional_constraint_system() {
        // triangle x + y + z = 1, x, y, z >= 0
        let h = HRep::new(
            vec![ineq(&[-1, 0, 0], 0), ineq(&[0, -1, 0], 0), ineq(&[0, 0, -1], 0)],
            vec![ineq(&[1, 1, 1], 1)],
        );
        let p = Polytope::from_hrep(3, h).unwrap();
        assert_eq!(p.vertices().unwrap(), pts(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]).as_slice());
        assert_eq!(p.dimension().unwrap(), Some(2));
        assert!(p.vertex_certificate().unwrap());
    }

    #[test]
    fn json_round_trip() {
        let p = Polytope::from_points(2, &pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        let text = serde_json::to_string(&p.to_json().unwrap()).unwrap();
        assert!(text.contains(r#""ambient_dim":2"#));
        let back: PolytopeJson = serde_json::from_str(&text).unwrap();
        let q = Polytope::from_json(&back).unwrap();
        assert_eq!(q.vertices().unwrap(), p.vertices().unwrap());
        let h_only = PolytopeJson { vertices: None, ..back };
        let r = Polytope::from_json(&h_only).unwrap();
        assert_eq!(r.vertices().unwrap(), p.vertices().unwrap());
    }
}
