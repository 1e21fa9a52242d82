use super::{canonical_inequality, HRep, Polytope};
use crate::error::{Error, Result};
use crate::linalg::{Constraint, QVector, Rational};

/// `{y : x · y <= 1 for all x in P}`. Requires `P` full-dimensional with the
/// origin in its interior.
pub fn polar_dual(p: &Polytope) -> Result<Polytope> {
    let d = p.ambient_dim();
    if !p.is_full_dimensional()? {
        return Err(Error::NotFullDimensional { ambient: d, dim: p.dimension()? });
    }
    if !p.contains_interior(&QVector::zeros(d))? {
        return Err(Error::OriginNotInterior);
    }
    let mut vertices: Vec<QVector> = p
        .facets()?
        .iter()
        .map(|f| f.normal.scale(&f.offset.recip().expect("offset is positive")))
        .collect();
    vertices.sort();
    let facets = p.vertices()?.iter().map(|v| Constraint::new(v.clone(), Rational::one())).collect();
    let hrep = HRep::new(facets, Vec::new()).canonical();
    Ok(Polytope::from_parts(d, vertices, hrep))
}

/// `P ∩ Q`, with redundant constraints removed once vertices are known.
pub fn intersect(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    if p.ambient_dim() != q.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: p.ambient_dim(), found: q.ambient_dim() });
    }
    let a = p.constraint_system()?;
    let b = q.constraint_system()?;
    let hrep = HRep::new(
        a.inequalities.iter().chain(&b.inequalities).cloned().collect(),
        a.equations.iter().chain(&b.equations).cloned().collect(),
    );
    let raw = Polytope::from_hrep(p.ambient_dim(), hrep)?;
    let vertices = raw.vertices()?.to_vec();
    // recompute facets from vertices: drops redundant rows
    if vertices.is_empty() {
        return Ok(Polytope::empty(p.ambient_dim()));
    }
    let h = match super::facets_among(p.ambient_dim(), raw.constraint_system()?, &vertices)? {
        Some(h) => h,
        None => super::vrep_to_hrep_points(p.ambient_dim(), &vertices)?,
    };
    Ok(Polytope::from_parts(p.ambient_dim(), vertices, h))
}

/// Image of `P` under `x -> scale * x + shift`, `scale != 0`.
fn affine_image(p: &Polytope, scale: &Rational, shift: &QVector) -> Result<Polytope> {
    let d = p.ambient_dim();
    if shift.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: shift.dim() });
    }
    debug_assert!(!scale.is_zero());
    let map_point = |v: &QVector| v.scale(scale).add(shift);
    // n · x <= c with y = s x + t  <=>  n · y <= s c + n · t  (s > 0), flipped for s < 0
    let map_constraint = |c: &Constraint, flip: bool| -> Result<Constraint> {
        let offset = scale * &c.offset + c.normal.dot(shift)?;
        Ok(if flip { Constraint::new(c.normal.neg(), -offset) } else { Constraint::new(c.normal.clone(), offset) })
    };
    let flip = scale.is_negative();
    let map_hrep = |h: &HRep| -> Result<HRep> {
        Ok(HRep::new(
            h.inequalities.iter().map(|c| map_constraint(c, flip)).collect::<Result<_>>()?,
            h.equations.iter().map(|c| map_constraint(c, false)).collect::<Result<_>>()?,
        ))
    };

    let mut out = Polytope { ambient_dim: d, ..Default::default() };
    if let Some(v) = p.vrep.get() {
        let mut vertices = v.vertices.iter().map(map_point).collect::<Result<Vec<_>>>()?;
        vertices.sort();
        let _ = out.vrep.set(super::VRep { vertices });
    }
    if let Some(h) = p.hrep.get() {
        let mapped = if p.vrep.get().is_some_and(|v| v.vertices.is_empty()) {
            HRep::contradiction(d)
        } else {
            map_hrep(h)?.canonical()
        };
        let _ = out.hrep.set(mapped);
    }
    if let Some(raw) = &p.raw_hrep {
        out.raw_hrep = Some(map_hrep(raw)?);
    }
    if let Some(dim) = p.dim.get() {
        let _ = out.dim.set(*dim);
    }
    Ok(out)
}

pub fn translate(p: &Polytope, t: &QVector) -> Result<Polytope> {
    affine_image(p, &Rational::one(), t)
}

pub fn negate(p: &Polytope) -> Result<Polytope> {
    affine_image(p, &Rational::from(-1), &QVector::zeros(p.ambient_dim()))
}

/// `λ P`. A zero factor collapses `P` to the origin (or stays empty).
pub fn dilate(p: &Polytope, factor: &Rational) -> Result<Polytope> {
    let d = p.ambient_dim();
    if factor.is_zero() {
        let points = if p.is_empty()? { Vec::new() } else { vec![QVector::zeros(d)] };
        return Polytope::from_points(d, &points);
    }
    affine_image(p, factor, &QVector::zeros(d))
}

/// `conv(P × {0}, ±e_{n+1})`.
pub fn bipyramid(p: &Polytope) -> Result<Polytope> {
    let n = p.ambient_dim();
    let zero = QVector::zeros(1);
    let mut points: Vec<QVector> = p.vertices()?.iter().map(|v| v.concat(&zero)).collect();
    points.push(QVector::unit(n + 1, n));
    points.push(QVector::unit(n + 1, n).neg());
    Polytope::from_points(n + 1, &points)
}

/// Cartesian product `P × Q`.
pub fn product(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    let (dp, dq) = (p.ambient_dim(), q.ambient_dim());
    let d = dp + dq;
    if p.is_empty()? || q.is_empty()? {
        return Ok(Polytope::empty(d));
    }
    let mut vertices = Vec::with_capacity(p.vertices()?.len() * q.vertices()?.len());
    for a in p.vertices()? {
        for b in q.vertices()? {
            vertices.push(a.concat(b));
        }
    }
    vertices.sort();
    let (hp, hq) = (p.hrep()?, q.hrep()?);
    let left = |c: &Constraint| Constraint::new(c.normal.concat(&QVector::zeros(dq)), c.offset.clone());
    let right = |c: &Constraint| Constraint::new(QVector::zeros(dp).concat(&c.normal), c.offset.clone());
    let hrep = HRep::new(
        hp.inequalities.iter().map(left).chain(hq.inequalities.iter().map(right)).collect(),
        hp.equations.iter().map(left).chain(hq.equations.iter().map(right)).collect(),
    )
    .canonical();
    debug_assert!(hrep.inequalities.iter().all(|c| *c == canonical_inequality(c)));
    Ok(Polytope::from_parts(d, vertices, hrep))
}
