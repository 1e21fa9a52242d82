//! Hom-polytopes: the affine maps sending one polytope into another.
//!
//! A map `f(x) = A x + b` from `R^m` to `R^n` is flattened as
//! `(b_1, ..., b_n, A_11, ..., A_1m, A_21, ..., A_nm)`: translation first,
//! then the linear part row by row.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{affine_hull, rank_of_rows, Constraint, QMatrix, QVector, Rational};
use crate::par;
use crate::polytope::dd::{DdOptions, InsertionOrder};
use crate::polytope::{self, standard, HRep, Polytope, PolytopeJson, StandardKind};

/// `f(x) = A x + b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMapRep {
    a: QMatrix,
    b: QVector,
}

impl AffineMapRep {
    pub fn new(a: QMatrix, b: QVector) -> Result<Self> {
        if a.rows() != b.dim() {
            return Err(Error::DimensionMismatch { expected: a.rows(), found: b.dim() });
        }
        Ok(Self { a, b })
    }

    pub fn constant(source_dim: usize, value: QVector) -> Self {
        Self { a: QMatrix::zeros(value.dim(), source_dim), b: value }
    }

    pub fn linear(a: QMatrix) -> Self {
        let b = QVector::zeros(a.rows());
        Self { a, b }
    }

    /// Inverse of [`AffineMapRep::flatten`].
    pub fn from_flat(source_dim: usize, target_dim: usize, coords: &[Rational]) -> Result<Self> {
        let expected = target_dim * (source_dim + 1);
        if coords.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: coords.len() });
        }
        let b = QVector::new(coords[..target_dim].to_vec());
        let a = QMatrix::new(target_dim, source_dim, coords[target_dim..].to_vec())?;
        Ok(Self { a, b })
    }

    pub fn flatten(&self) -> QVector {
        let mut coords = self.b.coords().to_vec();
        coords.extend(self.a.entries().iter().cloned());
        QVector::new(coords)
    }

    pub fn linear_part(&self) -> &QMatrix {
        &self.a
    }

    pub fn translation(&self) -> &QVector {
        &self.b
    }

    pub fn source_dim(&self) -> usize {
        self.a.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.a.rows()
    }

    pub fn evaluate(&self, x: &QVector) -> Result<QVector> {
        self.a.mul_vec(x)?.add(&self.b)
    }

    pub fn to_json(&self, is_vertex: bool) -> MapJson {
        MapJson {
            a: (0..self.a.rows()).map(|r| self.a.row_slice(r).to_vec()).collect(),
            b: self.b.coords().to_vec(),
            rank: map_rank(self),
            is_vertex,
        }
    }

    pub fn from_json(json: &MapJson) -> Result<Self> {
        let n = json.b.len();
        let m = json.a.first().map_or(0, Vec::len);
        if json.a.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: json.a.len() });
        }
        let rows: Vec<QVector> = json.a.iter().map(|r| QVector::new(r.clone())).collect();
        Self::new(QMatrix::from_rows(&rows, m)?, QVector::new(json.b.clone()))
    }
}

/// Map file format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    #[serde(rename = "A")]
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub rank: usize,
    pub is_vertex: bool,
}

/// How a source or target polytope was specified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Descriptor {
    Standard { kind: StandardKind, n: usize },
    Custom { custom: PolytopeJson },
}

impl Descriptor {
    pub fn build(&self) -> Result<Polytope> {
        match self {
            Descriptor::Standard { kind, n } => standard(*kind, *n),
            Descriptor::Custom { custom } => Polytope::from_json(custom),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Descriptor::Standard { kind, n } => format!("{kind}:{n}"),
            Descriptor::Custom { custom } => format!("custom:{}", custom.ambient_dim),
        }
    }
}

/// `Hom(P, Q)` as an inequality system over flattened maps.
#[derive(Clone, Debug)]
pub struct HomPolytope {
    source: Polytope,
    target: Polytope,
    source_desc: Descriptor,
    target_desc: Descriptor,
    /// One row per (source vertex, target facet), vertex-major.
    hrep: HRep,
    polytope: OnceLock<Polytope>,
}

/// Hom file format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomJson {
    pub source: Descriptor,
    pub target: Descriptor,
    pub dimension: usize,
    pub coordinates: String,
    pub inequalities: Vec<Constraint>,
}

pub const COORDINATE_CONVENTION: &str = "b_1..b_n, then A row-major (A_11..A_1m, A_21..A_nm)";

fn full_dimensional(p: &Polytope) -> Result<()> {
    if p.is_full_dimensional()? {
        Ok(())
    } else {
        Err(Error::NotFullDimensional { ambient: p.ambient_dim(), dim: p.dimension()? })
    }
}

/// Row of `u · (A v + b)` in flattened coordinates.
fn pair_row(v: &QVector, u: &QVector) -> QVector {
    let (m, n) = (v.dim(), u.dim());
    let mut coords = Vec::with_capacity(n * (m + 1));
    coords.extend(u.iter().cloned());
    for ui in u.iter() {
        for vj in v.iter() {
            coords.push(ui * vj);
        }
    }
    QVector::new(coords)
}

/// Builds `Hom(P, Q)` for full-dimensional `P` and `Q`.
pub fn build_hom(source: &Polytope, target: &Polytope) -> Result<HomPolytope> {
    let source_desc = Descriptor::Custom { custom: source.to_json()? };
    let target_desc = Descriptor::Custom { custom: target.to_json()? };
    build_hom_described(source.clone(), target.clone(), source_desc, target_desc)
}

pub fn build_hom_standard(source: StandardKind, m: usize, target: StandardKind, n: usize) -> Result<HomPolytope> {
    let source_desc = Descriptor::Standard { kind: source, n: m };
    let target_desc = Descriptor::Standard { kind: target, n };
    build_hom_from(&source_desc, &target_desc)
}

pub fn build_hom_from(source: &Descriptor, target: &Descriptor) -> Result<HomPolytope> {
    build_hom_described(source.build()?, target.build()?, source.clone(), target.clone())
}

fn build_hom_described(
    source: Polytope,
    target: Polytope,
    source_desc: Descriptor,
    target_desc: Descriptor,
) -> Result<HomPolytope> {
    full_dimensional(&source)?;
    full_dimensional(&target)?;
    let mut inequalities = Vec::with_capacity(source.vertices()?.len() * target.facets()?.len());
    for v in source.vertices()? {
        for f in target.facets()? {
            inequalities.push(Constraint::new(pair_row(v, &f.normal), f.offset.clone()));
        }
    }
    let hom = HomPolytope {
        source,
        target,
        source_desc,
        target_desc,
        hrep: HRep::new(inequalities, Vec::new()),
        polytope: OnceLock::new(),
    };
    // the constant map onto the centroid of Q is strictly feasible
    let centroid = QVector::centroid(hom.target.vertices()?)?;
    let inner = AffineMapRep::constant(hom.source_dim(), centroid).flatten();
    for row in &hom.hrep.inequalities {
        if !row.slack(&inner)?.is_positive() {
            return Err(Error::InvalidArgument("constant map to the centroid is not interior".into()));
        }
    }
    Ok(hom)
}

impl HomPolytope {
    pub fn source(&self) -> &Polytope {
        &self.source
    }

    pub fn target(&self) -> &Polytope {
        &self.target
    }

    pub fn source_descriptor(&self) -> &Descriptor {
        &self.source_desc
    }

    pub fn target_descriptor(&self) -> &Descriptor {
        &self.target_desc
    }

    pub fn source_dim(&self) -> usize {
        self.source.ambient_dim()
    }

    pub fn target_dim(&self) -> usize {
        self.target.ambient_dim()
    }

    /// `n m + n`, the ambient and (certified) actual dimension.
    pub fn dimension(&self) -> usize {
        self.target_dim() * (self.source_dim() + 1)
    }

    pub fn hrep(&self) -> &HRep {
        &self.hrep
    }

    pub fn inequality_count(&self) -> usize {
        self.hrep.inequalities.len()
    }

    /// The feasible set as a polytope; vertices are computed on first use.
    pub fn polytope(&self) -> &Polytope {
        self.polytope.get_or_init(|| {
            Polytope::from_hrep(self.dimension(), self.hrep.clone()).expect("rows have the flattened dimension")
        })
    }

    pub fn to_json(&self) -> HomJson {
        HomJson {
            source: self.source_desc.clone(),
            target: self.target_desc.clone(),
            dimension: self.dimension(),
            coordinates: COORDINATE_CONVENTION.to_string(),
            inequalities: self.hrep.inequalities.clone(),
        }
    }

    /// Rebuilds from the descriptors and checks the stored rows match.
    pub fn from_json(json: &HomJson) -> Result<Self> {
        let hom = build_hom_from(&json.source, &json.target)?;
        if hom.hrep.inequalities != json.inequalities {
            return Err(Error::Json("inequalities do not match the source and target".into()));
        }
        Ok(hom)
    }

    /// Whether `f` is a vertex of this hom-polytope.
    pub fn is_vertex(&self, f: &AffineMapRep) -> Result<bool> {
        is_vertex_map(f, &self.source, &self.target)
    }
}

/// Vertices of `Hom(P, Q)` in canonical (lexicographic flattened) order.
/// Rows are inserted in vertex-major order.
pub fn enumerate_vertex_maps(hom: &HomPolytope) -> Result<Vec<AffineMapRep>> {
    let vertices = hom.polytope().vertices_with(&DdOptions { order: InsertionOrder::Input, ..Default::default() })?;
    vertices.iter().map(|v| AffineMapRep::from_flat(hom.source_dim(), hom.target_dim(), v)).collect()
}

/// As [`enumerate_vertex_maps`] with explicit kernel options; bypasses the cache.
pub fn enumerate_vertex_maps_with(hom: &HomPolytope, options: &DdOptions) -> Result<Vec<AffineMapRep>> {
    let vrep = polytope::hrep_to_vrep_with(hom.dimension(), hom.hrep(), options)?;
    vrep.vertices.iter().map(|v| AffineMapRep::from_flat(hom.source_dim(), hom.target_dim(), v)).collect()
}

fn check_into(f: &AffineMapRep, source: &Polytope, target: &Polytope) -> Result<Vec<QVector>> {
    if f.source_dim() != source.ambient_dim() || f.target_dim() != target.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: source.ambient_dim(), found: f.source_dim() });
    }
    let images = source.vertices()?.iter().map(|v| f.evaluate(v)).collect::<Result<Vec<_>>>()?;
    for (v, w) in source.vertices()?.iter().zip(&images) {
        if !target.contains(w)? {
            return Err(Error::MapNotInto(format!("{v} maps to {w}")));
        }
    }
    Ok(images)
}

/// Active-set certificate: the rows of `Hom(P, Q)` tight at `f` have full
/// rank `n m + n`.
pub fn is_vertex_map(f: &AffineMapRep, source: &Polytope, target: &Polytope) -> Result<bool> {
    full_dimensional(source)?;
    full_dimensional(target)?;
    let images = check_into(f, source, target)?;
    let mut tight = Vec::new();
    for (v, w) in source.vertices()?.iter().zip(&images) {
        for facet in target.facets()? {
            if facet.slack(w)?.is_zero() {
                tight.push(pair_row(v, &facet.normal));
            }
        }
    }
    let dim = f.target_dim() * (f.source_dim() + 1);
    Ok(rank_of_rows(&tight, dim) == dim)
}

pub fn map_rank(f: &AffineMapRep) -> usize {
    f.a.rank()
}

pub fn rank_histogram(maps: &[AffineMapRep]) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for rank in par::map(maps, map_rank) {
        *hist.entry(rank).or_default() += 1;
    }
    hist
}

pub fn image_points(f: &AffineMapRep, source: &Polytope) -> Result<Vec<QVector>> {
    let mut points = source.vertices()?.iter().map(|v| f.evaluate(v)).collect::<Result<Vec<_>>>()?;
    points.sort();
    points.dedup();
    Ok(points)
}

/// `conv f(vert P)`.
pub fn image_polytope(f: &AffineMapRep, source: &Polytope) -> Result<Polytope> {
    Polytope::from_points(f.target_dim(), &image_points(f, source)?)
}

/// `f(0) = b`.
pub fn eval_center(f: &AffineMapRep) -> QVector {
    f.b.clone()
}

/// `f ∘ ν` where `ν` embeds `R^k` onto the coordinates `indices` (0-based)
/// of the source; restricted to crosspolytopes this is `◇_k -> ◇_m`.
pub fn restrict_to_subcrosspolytope(f: &AffineMapRep, indices: &[usize]) -> Result<AffineMapRep> {
    if indices.is_empty() {
        return Err(Error::InvalidArgument("restriction needs at least one index".into()));
    }
    let m = f.source_dim();
    let mut seen = vec![false; m];
    for &i in indices {
        if i >= m || seen[i] {
            return Err(Error::InvalidArgument(format!("bad index set {indices:?} for source dimension {m}")));
        }
        seen[i] = true;
    }
    Ok(AffineMapRep { a: f.a.select_columns(indices), b: f.b.clone() })
}

/// Index of `e_{ik}` (1-based `i <= n`, `k <= m`) in `R^{n + nm}`.
pub fn bt_index(m: usize, n: usize, i: usize, k: usize) -> usize {
    debug_assert!((1..=n).contains(&i) && (1..=m).contains(&k));
    n + (i - 1) * m + (k - 1)
}

/// The point set `0, 2e_i, e_i ± e_ik, (e_i + e_j) + (e_ik - e_jk)` for
/// `i != j`, which spans a polytope combinatorially equal to `Hom(□_m, △_n)`.
pub fn bt_realization(m: usize, n: usize) -> Result<polytope::VRep> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("realization needs m, n >= 1".into()));
    }
    let d = n + n * m;
    let unit = |idx: usize| QVector::unit(d, idx);
    let add = |a: &QVector, b: &QVector| a.add(b).expect("same dimension");
    let sub = |a: &QVector, b: &QVector| a.sub(b).expect("same dimension");
    let mut points = vec![QVector::zeros(d)];
    for i in 1..=n {
        let ei = unit(i - 1);
        points.push(ei.scale(&Rational::from(2)));
        for k in 1..=m {
            let eik = unit(bt_index(m, n, i, k));
            points.push(add(&ei, &eik));
            points.push(sub(&ei, &eik));
            for j in (1..=n).filter(|&j| j != i) {
                let ej = unit(j - 1);
                let ejk = unit(bt_index(m, n, j, k));
                points.push(add(&add(&ei, &ej), &sub(&eik, &ejk)));
            }
        }
    }
    points.sort();
    points.dedup();
    Ok(polytope::VRep { vertices: points })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SegmentKind {
    Edge,
    Diagonal,
}

/// Edge or diagonal, for two distinct vertices `a`, `b` of a full-dimensional `Q`.
pub fn segment_kind(q: &Polytope, a: &QVector, b: &QVector) -> Result<SegmentKind> {
    let mut common = Vec::new();
    for f in q.facets()? {
        if f.slack(a)?.is_zero() && f.slack(b)?.is_zero() {
            common.push(f.normal.clone());
        }
    }
    // the smallest face containing both is cut out by the shared facets
    let face_dim = q.ambient_dim() - rank_of_rows(&common, q.ambient_dim());
    Ok(if face_dim == 1 { SegmentKind::Edge } else { SegmentKind::Diagonal })
}

/// Shape of a rank-1 map relative to the facet-projection picture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankOneShape {
    /// Distinct images of source vertices.
    pub image_points: usize,
    pub endpoints_are_vertices: bool,
    pub segment: Option<SegmentKind>,
    /// One fiber is the vertex set of a facet, the other of a face.
    pub fibers_are_facet_pair: bool,
}

impl RankOneShape {
    pub fn is_facet_projection(&self) -> bool {
        self.image_points == 2 && self.endpoints_are_vertices && self.fibers_are_facet_pair
    }
}

fn vertex_sets_of_facets(p: &Polytope) -> Result<Vec<Vec<usize>>> {
    let incidence = p.vertex_facet_incidence()?;
    let nf = p.facets()?.len();
    Ok((0..nf).map(|f| (0..incidence.len()).filter(|&v| incidence[v][f]).collect()).collect())
}

/// Whether `set` is the vertex set of a face of `p`.
fn is_face(p: &Polytope, facet_sets: &[Vec<usize>], set: &[usize]) -> Result<bool> {
    let nv = p.vertices()?.len();
    let mut closure: Vec<usize> = (0..nv).collect();
    for fs in facet_sets {
        if set.iter().all(|v| fs.contains(v)) {
            closure.retain(|v| fs.contains(v));
        }
    }
    Ok(closure == set)
}

pub fn rank_one_shape(f: &AffineMapRep, source: &Polytope, target: &Polytope) -> Result<RankOneShape> {
    let images = check_into(f, source, target)?;
    let points = image_points(f, source)?;
    let mut shape =
        RankOneShape { image_points: points.len(), endpoints_are_vertices: false, segment: None, fibers_are_facet_pair: false };
    if points.len() != 2 {
        return Ok(shape);
    }
    let target_vertices = target.vertices()?;
    shape.endpoints_are_vertices = points.iter().all(|p| target_vertices.binary_search(p).is_ok());
    if shape.endpoints_are_vertices {
        shape.segment = Some(segment_kind(target, &points[0], &points[1])?);
    }
    let facet_sets = vertex_sets_of_facets(source)?;
    let fibers: Vec<Vec<usize>> =
        points.iter().map(|p| (0..images.len()).filter(|&v| images[v] == *p).collect()).collect();
    let is_facet = |s: &Vec<usize>| facet_sets.contains(s);
    shape.fibers_are_facet_pair = (is_facet(&fibers[0]) && is_face(source, &facet_sets, &fibers[1])?)
        || (is_facet(&fibers[1]) && is_face(source, &facet_sets, &fibers[0])?);
    Ok(shape)
}

/// For `f: P -> △_n` with `G` the smallest face of `△_n` containing `f(P)`:
/// `dim f(P) = dim G` and every facet of `G` meets `f(P)` in dimension
/// `dim G - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceLawReport {
    pub image_dim: usize,
    pub face_dim: usize,
    /// Dimension of `f(P) ∩ F` for each facet `F` of `G`.
    pub facet_meets: Vec<usize>,
}

impl FaceLawReport {
    pub fn holds(&self) -> bool {
        self.image_dim == self.face_dim && self.facet_meets.iter().all(|&d| d + 1 == self.face_dim)
    }
}

/// Barycentric coordinates in `△_n = conv(0, e_1, ..., e_n)`, the origin's first.
fn simplex_barycentric(x: &QVector) -> Vec<Rational> {
    let mut out = vec![Rational::one() - x.iter().cloned().sum::<Rational>()];
    out.extend(x.iter().cloned());
    out
}

pub fn simplex_face_law(f: &AffineMapRep, source: &Polytope) -> Result<FaceLawReport> {
    let n = f.target_dim();
    let simplex = standard(StandardKind::Simplex, n)?;
    check_into(f, source, &simplex)?;
    let points = image_points(f, source)?;
    let bary: Vec<Vec<Rational>> = points.iter().map(simplex_barycentric).collect();
    let support: Vec<usize> = (0..=n).filter(|&j| bary.iter().any(|b| b[j].is_positive())).collect();
    let face_dim = support.len() - 1;
    let image_dim = affine_hull(&points)?.dim();
    let mut facet_meets = Vec::new();
    if face_dim > 0 {
        for &j in &support {
            let on: Vec<QVector> =
                points.iter().zip(&bary).filter(|(_, b)| b[j].is_zero()).map(|(p, _)| p.clone()).collect();
            // an empty meet is reported as dimension usize::MAX and fails the law
            facet_meets.push(if on.is_empty() { usize::MAX } else { affine_hull(&on)?.dim() });
        }
    }
    Ok(FaceLawReport { image_dim, face_dim, facet_meets })
}

/// Whether `f(◇_m)` is an `n`-dimensional crosspolytope, `n` the target
/// dimension: rank `n` and `2n` image vertices (the image is symmetric about `f(0)`).
pub fn image_is_crosspolytope(f: &AffineMapRep) -> Result<bool> {
    let n = f.target_dim();
    if map_rank(f) != n {
        return Ok(false);
    }
    let source = standard(StandardKind::Crosspolytope, f.source_dim())?;
    Ok(image_polytope(f, &source)?.vertices()?.len() == 2 * n)
}

/// For `f: ◇_m -> P`: `f(vert ◇_m) = vert(Im f) ⊆ vert(P ∩ (2 f(0) - P))`.
pub fn crosspolytope_vertex_image_law(f: &AffineMapRep, target: &Polytope) -> Result<bool> {
    let source = standard(StandardKind::Crosspolytope, f.source_dim())?;
    check_into(f, &source, target)?;
    let images = image_points(f, &source)?;
    let image = Polytope::from_points(f.target_dim(), &images)?;
    if image.vertices()? != images.as_slice() {
        return Ok(false);
    }
    let two_b = eval_center(f).scale(&Rational::from(2));
    let reflected = polytope::translate(&polytope::negate(target)?, &two_b)?;
    let meet = polytope::intersect(target, &reflected)?;
    let meet_vertices = meet.vertices()?;
    Ok(images.iter().all(|p| meet_vertices.binary_search(p).is_ok()))
}
