//! Claim registry and verification suites.
//!
//! Each claim checks a structural statement about vertex maps or counts on
//! concrete parameters. Results are data: a failing claim carries a witness,
//! and nothing depends on hidden randomness.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::counts::{self, Family};
use crate::error::{Error, Result};
use crate::experiments;
use crate::hom::{
    self, build_hom_from, enumerate_vertex_maps, image_is_crosspolytope, map_rank, AffineMapRep, Descriptor,
    HomPolytope,
};
use crate::linalg::{affine_hull, QVector, Rational};
use crate::par;
use crate::polytope::{
    combinatorially_equal, intersect, negate, product, standard, translate, Polytope, StandardKind, ISO_VERTEX_LIMIT,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteLevel {
    Core,
    Extended,
}

impl std::str::FromStr for SuiteLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "core" => Ok(SuiteLevel::Core),
            "extended" => Ok(SuiteLevel::Extended),
            other => Err(Error::InvalidArgument(format!("unknown suite level {other:?}"))),
        }
    }
}

/// Claim parameters; each claim reads the fields it needs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<Descriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Descriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seeds: Option<Vec<u64>>,
}

impl Params {
    pub fn mn(m: usize, n: usize) -> Self {
        Self { m: Some(m), n: Some(n), ..Default::default() }
    }

    pub fn homs(source: Descriptor, target: Descriptor) -> Self {
        Self { source: Some(source), target: Some(target), ..Default::default() }
    }

    pub fn with_expected(mut self, expected: u128) -> Self {
        self.expected = Some(expected);
        self
    }

    fn missing(claim: &str, what: &str, params: &Params) -> Error {
        Error::ClaimNotApplicable { claim: claim.into(), params: format!("{params} (needs {what})") }
    }

    fn m(&self, claim: &str) -> Result<usize> {
        self.m.ok_or_else(|| Self::missing(claim, "m", self))
    }

    fn n(&self, claim: &str) -> Result<usize> {
        self.n.ok_or_else(|| Self::missing(claim, "n", self))
    }

    fn source(&self, claim: &str) -> Result<Descriptor> {
        self.source.clone().ok_or_else(|| Self::missing(claim, "source", self))
    }

    fn target(&self, claim: &str) -> Result<Descriptor> {
        self.target.clone().ok_or_else(|| Self::missing(claim, "target", self))
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(family) = self.family {
            parts.push(family.name().to_string());
        }
        if let Some(s) = &self.source {
            parts.push(format!("source={}", s.label()));
        }
        if let Some(t) = &self.target {
            parts.push(format!("target={}", t.label()));
        }
        if let Some(m) = self.m {
            parts.push(format!("m={m}"));
        }
        if let Some(n) = self.n {
            parts.push(format!("n={n}"));
        }
        if let Some(e) = self.expected {
            parts.push(format!("expected={e}"));
        }
        if let Some(s) = &self.seeds {
            parts.push(format!("seeds={s:?}"));
        }
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationResult {
    pub claim_id: String,
    pub parameters: Params,
    pub status: Status,
    pub summary: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// Wall time; left out of JSON so reports are reproducible byte for byte.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub struct ClaimInfo {
    pub id: &'static str,
    pub checks: &'static str,
    pub params: &'static str,
}

pub const CLAIMS: &[ClaimInfo] = &[
    ClaimInfo { id: "dim-formula", checks: "dim Hom(P,Q) = dim P · dim Q + dim Q", params: "source, target" },
    ClaimInfo { id: "constant-maps", checks: "every constant map onto a vertex of Q is a vertex map", params: "source, target" },
    ClaimInfo { id: "facet-form", checks: "every facet of Hom(P,Q) is {f : f(v) ∈ F} for a vertex v of P and facet F of Q", params: "source, target" },
    ClaimInfo { id: "box-simplex-rank", checks: "vertex maps □_m → △_n have rank ≤ 1, rank-1 ones are facet projections, (n+1)(mn+1) of them", params: "m, n" },
    ClaimInfo { id: "bt-realization", checks: "explicit point set: (n+1)(mn+1) points, dimension nm+n, combinatorially Hom(□_m,△_n) when small", params: "m, n" },
    ClaimInfo { id: "hom-simplex-power", checks: "Hom(△_n, Q) ≅ Q^(n+1)", params: "n, target" },
    ClaimInfo { id: "hom-into-cube", checks: "Hom(P, □_n) is centrally symmetric about the origin", params: "source, n" },
    ClaimInfo { id: "diamond-center", checks: "vertex maps ◇_m → ◇_n with f(0) interior are linear and send vertices to vertices", params: "m, n" },
    ClaimInfo { id: "diamond-subcross", checks: "rank-n vertex maps ◇_m → △_n restrict to vertex maps on some n-dimensional sub-crosspolytope", params: "m, n" },
    ClaimInfo { id: "diamond-image-count", checks: "rank-n vertex maps ◇_m → △_n with crosspolytope image number σ(m,n)β(n)", params: "m, n" },
    ClaimInfo { id: "diamond-image-shape", checks: "all rank-n images of vertex maps ◇_m → △_n are crosspolytopes iff m = n or n = 3", params: "m, n" },
    ClaimInfo { id: "vertex-image-law", checks: "f(vert ◇_m) = vert(Im f) ⊆ vert(Q ∩ (2f(0) − Q)) for vertex maps ◇_m → Q", params: "m, target" },
    ClaimInfo { id: "face-law", checks: "for vertex maps P → △_n every facet of the carrier face G meets f(P) in a facet", params: "source, n" },
    ClaimInfo { id: "count-agreement", checks: "closed-form vertex count equals enumeration, term by term", params: "family, m, n" },
    ClaimInfo { id: "beta", checks: "signed permutations act freely on V(n); β(n) = |V(n)| / (2^n n!)", params: "n [, expected]" },
    ClaimInfo { id: "sigma-identity", checks: "2^m n! S(m,n) = 2^m Σ(−1)^(n−j) C(n,j) j^m, and brute force for m ≤ 4", params: "m (maximum)" },
    ClaimInfo { id: "intersection-table", checks: "△_n ∩ (2z − △_n) vertex count agrees across seeds, stays under C(2n+2,n+2)", params: "n, seeds [, expected]" },
    ClaimInfo { id: "box-diamond-bound", checks: "2n + 2mn(2n−1) + 2mn(m−1)(n−1) ≤ #vert Hom(□_m, ◇_n)", params: "m, n" },
    ClaimInfo { id: "rank-bounds", checks: "σ(m,k)β(k) ≤ #rank-k vertex maps ◇_m → △_k ≤ 2^k m!/(m−k)! C(2k+2,k+2)^(m−k) β(k)", params: "m, n (= k)" },
    ClaimInfo { id: "vertex-count", checks: "#vert Hom(P,Q) equals the expected value", params: "source, target, expected" },
];

pub fn claim_ids() -> Vec<&'static str> {
    CLAIMS.iter().map(|c| c.id).collect()
}

/// Enumerated vertex maps shared between claims.
pub struct Enumerated {
    pub hom: HomPolytope,
    pub maps: Vec<AffineMapRep>,
}

type Slot = Arc<OnceLock<Result<Arc<Enumerated>>>>;

/// Compute-once cache of hom enumerations keyed by descriptor pair.
#[derive(Default)]
pub struct HomCache {
    entries: Mutex<BTreeMap<String, Slot>>,
}

impl HomCache {
    pub fn get(&self, source: &Descriptor, target: &Descriptor) -> Result<Arc<Enumerated>> {
        let key = serde_json::to_string(&(source, target))?;
        let slot = self.entries.lock().expect("cache lock").entry(key).or_default().clone();
        slot.get_or_init(|| {
            let hom = build_hom_from(source, target)?;
            let maps = enumerate_vertex_maps(&hom)?;
            Ok(Arc::new(Enumerated { hom, maps }))
        })
        .clone()
    }

    pub fn standard(&self, source: StandardKind, m: usize, target: StandardKind, n: usize) -> Result<Arc<Enumerated>> {
        self.get(&std(source, m), &std(target, n))
    }
}

pub fn std(kind: StandardKind, n: usize) -> Descriptor {
    Descriptor::Standard { kind, n }
}

struct Outcome {
    pass: bool,
    summary: Value,
    witness: Option<Value>,
}

impl Outcome {
    fn new(pass: bool, summary: Value) -> Self {
        Self { pass, summary, witness: None }
    }

    fn witness(mut self, witness: Option<Value>) -> Self {
        self.witness = witness;
        self
    }
}

fn map_json(f: &AffineMapRep) -> Value {
    serde_json::to_value(f.to_json(true)).expect("maps serialize")
}

fn first_failure<F>(maps: &[AffineMapRep], check: F) -> Result<Option<AffineMapRep>>
where
    F: Fn(&AffineMapRep) -> Result<bool> + Sync + Send,
{
    let ok = par::try_map(maps, |f| check(f))?;
    Ok(ok.iter().position(|&b| !b).map(|i| maps[i].clone()))
}

/// Runs one claim. Unknown ids and missing parameters are errors; a failed
/// check is a `Fail` result with a witness.
pub fn run_claim(claim_id: &str, params: &Params) -> Result<VerificationResult> {
    run_claim_cached(claim_id, params, &HomCache::default())
}

pub fn run_claim_cached(claim_id: &str, params: &Params, cache: &HomCache) -> Result<VerificationResult> {
    let start = Instant::now();
    let outcome = match claim_id {
        "dim-formula" => dim_formula(params, cache),
        "constant-maps" => constant_maps(params, cache),
        "facet-form" => facet_form(params, cache),
        "box-simplex-rank" => box_simplex_rank(params, cache),
        "bt-realization" => bt_realization(params, cache),
        "hom-simplex-power" => hom_simplex_power(params, cache),
        "hom-into-cube" => hom_into_cube(params, cache),
        "diamond-center" => diamond_center(params, cache),
        "diamond-subcross" => diamond_subcross(params, cache),
        "diamond-image-count" => diamond_image_count(params, cache),
        "diamond-image-shape" => diamond_image_shape(params, cache),
        "vertex-image-law" => vertex_image_law(params, cache),
        "face-law" => face_law(params, cache),
        "count-agreement" => count_agreement(params, cache),
        "beta" => beta(params),
        "sigma-identity" => sigma_identity(params),
        "intersection-table" => intersection_table(params),
        "box-diamond-bound" => box_diamond_bound(params, cache),
        "rank-bounds" => rank_bounds(params, cache),
        "vertex-count" => vertex_count(params, cache),
        other => return Err(Error::UnknownClaim(other.into())),
    }?;
    let status = if outcome.pass { Status::Pass } else { Status::Fail };
    let witness = match (status, outcome.witness) {
        (Status::Fail, None) => Some(outcome.summary.clone()),
        (_, w) => w,
    };
    Ok(VerificationResult {
        claim_id: claim_id.into(),
        parameters: params.clone(),
        status,
        summary: outcome.summary,
        witness,
        elapsed: start.elapsed(),
    })
}

fn dim_formula(p: &Params, cache: &HomCache) -> Result<Outcome> {
    let e = cache.get(&p.source("dim-formula")?, &p.target("dim-formula")?)?;
    let dim_p = e.hom.source().dimension()?.unwrap_or(0);
    let dim_q = e.hom.target().dimension()?.unwrap_or(0);
    let flat: Vec<QVector> = e.maps.iter().map(AffineMapRep::flatten).collect();
    let dim = affine_hull(&flat)?.dim();
    let expected = dim_p * dim_q + dim_q;
    Ok(Outcome::new(dim == expected, json!({ "dimension": dim, "expected": expected, "vertices": e.maps.len() })))
}

fn constant_maps(p: &Params, cache: &HomCache) -> Result<Outcome> {
    let e = cache.get(&p.source("constant-maps")?, &p.target("constant-maps")?)?;
    let flat: BTreeSet<QVector> = e.maps.iter().map(AffineMapRep::flatten).collect();
    let m = e.hom.source_dim();
    let mut missing = None;
    let targets = e.hom.target().vertices()?;
    for q in targets {
        let f = AffineMapRep::constant(m, q.clone());
        if !flat.contains(&f.flatten()) || !e.hom.is_vertex(&f)? {
            missing = Some(map_json(&f));
            break;
        }
    }
    Ok(Outcome::new(missing.is_none(), json!({ "constant_maps": targets.len(), "vertices": e.maps.len() })).witness(missing))
}

fn facet_form(p: &Params, cache: &HomCache) -> Result<Outcome> {
    let e = cache.get(&p.source("facet-form")?, &p.target("facet-form")?)?;
    let flat: Vec<QVector> = e.maps.iter().map(AffineMapRep::flatten).collect();
    // facets from the vertex set alone, independent of the defining rows
    let hull = Polytope::from_points(e.hom.dimension(), &flat)?;
    let facets = hull.hrep()?.inequalities.clone();
    let rows: BTreeSet<_> = e.hom.hrep().canonical().inequalities.into_iter().collect();
    let stray = facets.iter().find(|f| !rows.contains(f)).map(|f| json!(f));
    Ok(Outcome::new(
        stray.is_none(),
        json!({ "facets": facets.len(), "rows": e.hom.inequality_count(), "facet_defining_rows": facets.iter().filter(|f| rows.contains(f)).count() }),
    )
    .witness(stray))
}

fn box_simplex_rank(p: &Params, cache: &HomCache) -> Result<Outcome> {
    let (m, n) = (p.m("box-simplex-rank")?, p.n("box-simplex-rank")?);
    let e = cache.standard(StandardKind::Cube, m, StandardKind::Simplex, n)?;
    let (source, target) = (e.hom.source(), e.hom.target());
    let bad = first_failure(&e.maps, |f| {
        Ok(match map_rank(f) {
            0 => true,
            1 => hom::rank_one_shape(f, source, target)?.is_facet_projection(),
            _ => false,
        })
    })?;
    let expected = (n + 1) * (m * n + 1);
    let hist = hom::rank_histogram(&e.maps);
    Ok(Outcome::new(
        bad.is_none() && e.maps.len() == expected,
        json!({ "vertices": e.maps.len(), "expected": expected, "ranks": hist }),
    )
    .witness(bad.as_ref().map(map_json)))
}

/// Largest point count for which the realization is compared combinatorially.
const BT_ISO_LIMIT: usize = 30;

fn bt_realization(p: &Params, cache: &HomCache) -> Result<Outcome> {
    let (m, n) = (p.m("bt-realization")?, p.n("bt-realization")?);
    let points = hom::bt_realization(m, n)?.vertices;
    let d = n + n * m;
    let dim = affine_hull(&points)?.dim();
    let expected = (n + 1) * (m * n + 1);
    let mut summary = json!({ "points": points.len(), "expected": expected, "dimension": dim, "expected_dimension": d });
    let mut pass = points.len() == expected && dim == d;
    if points.len() <= BT_ISO_LIMIT {
        let e = cache.standard(StandardKind::Cube, m, StandardKind::Simplex, n)?;
        let hull = Polytope::from_points(d, &points)?;
        let iso = hull.vertices()?.len() == points.len() && combinatorially_equal(&hull, e.hom.polytope())?;
        summary["combinatorially_equal"] = json!(iso);
        pass &= iso;
    }
    Ok(Outcome::new(pass, summary))
}

fn hom_simplex_power(p: &Params, cache: &HomCache) -> Result<Outcome> {
    let n = p.n("hom-simplex-power")?;
    let target = p.target("hom-simplex-power")?;
    let e = cache.get(&std(StandardKind::Simplex, n), &target)?;
    let q = e.hom.target();
    let expected = q.vertices()?.len().pow(n as u32 + 1);
    let mut summary = json!({ "vertices": e.maps.len(), "expected": expected });
    let mut pass = e.maps.len() == expected;
    if pass && expected <= ISO_VERTEX_LIMIT {
        let mut power = q.clone();
        for _ in 0..n {
            power = product(&power, q)?;
        }
        let iso = combinatorially_equal(e.hom.polytope(), &power)?;
        summary["combinatorially_equal"] = json!(iso);
        pass &= iso;
    }
    Ok(Outcome::new(pass, summary))
}

fn hom_into_cube(p: &Params, cache: &HomCache) -> Result<Outcome> {
    let n = p.n("hom-into-cube")?;
    let e = cache.get(&p.source("hom-into-cube")?, &std(StandardKind::Cube, n))?;
    let flat: BTreeSet<QVector> = e.maps.iter().map(AffineMapRep::flatten).collect();
    let bad = e.maps.iter().find(|f| !flat.contains(&f.flatten().neg()));
    Ok(Outcome::new(bad.is_none(), json!({ "vertices": e.maps.len() })).witness(bad.map(map_json)))
}

fn diamond_center(p: &Params, cache: &HomCache) -> Result<Outcome> {
    let (m, n) = (p.m("diamond-center")?, p.n("diamond-center")?);
    let e = cache.standard(StandardKind::Crosspolytope, m, StandardKind::Crosspolytope, n)?;
    let source = e.hom.source();
    let target_vertices = e.hom.target().vertices()?;
    let interior: Vec<AffineMapRep> =
        e.maps.iter().filter(|f| counts::center_face_dim(f.translation().coords()) == n).cloned().collect();
    let bad = first_failure(&interior, |f| {
        if !f.translation().is_zero() {
            return Ok(false);
        }
        for v in source.vertices()? {
            if target_vertices.binary_search(&f.evaluate(v)?).is_err() {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    Ok(Outcome::new(bad.is_none(), json!({ "vertices": e.maps.len(), "interior_center": interior.len() }))
        .witness(bad.as_ref().map(map_json)))
}

fn top_rank(e: &Enumerated, n: usize) -> Vec<AffineMapRep> {
    e.maps.iter().filter(|f| map_rank(f) == n).cloned().collect()
}

fn diamond_subcross(p: &Params, cache: &HomCache) -> Result<Outcome> {
    let (m, n) = (p.m("diamond-subcross")?, p.n("diamond-subcross")?);
    if n > m {
        return Err(Error::ClaimNotApplicable { claim: "diamond-subcross".into(), params: p.to_string() });
    }
    let e = cache.standard(StandardKind::Crosspolytope, m, StandardKind::Simplex, n)?;
    let small = standard(StandardKind::Crosspolytope, n)?;
    let simplex = e.hom.target();
    let maps = top_rank(&e, n);
    let bad = first_failure(&maps, |f| {
        for subset in (0..m).combinations(n) {
            let g = hom::restrict_to_subcrosspolytope(f, &subset)?;
            if hom::is_vertex_map(&g, &small, simplex)? {
                return Ok(true);
            }
        }
        Ok(false)
    })?;
    Ok(Outcome::new(bad.is_none(), json!({ "rank_n_maps": maps.len() })).witness(bad.as_ref().map(map_json)))
}

fn diamond_image_count(p: &Params, cache: &HomCache) -> Result<Outcome> {
    let (m, n) = (p.m("diamond-image-count")?, p.n("diamond-image-count")?);
    let e = cache.standard(StandardKind::Crosspolytope, m, StandardKind::Simplex, n)?;
    let maps = top_rank(&e, n);
    let cross = par::try_map(&maps, image_is_crosspolytope)?.into_iter().filter(|&b| b).count() as u128;
    let beta = counts::beta(n)?.beta;
    let expected = counts::sigma(m as u64, n as u64) * beta;
    Ok(Outcome::new(
        cross == expected,
        json!({ "rank_n_maps": maps.len(), "crosspolytope_images": cross as u64, "sigma": counts::sigma(m as u64, n as u64) as u64, "beta": beta as u64, "expected": expected as u64 }),
    ))
}

/// A rank-n vertex map `◇_(n+1) -> △_n` whose image is not a crosspolytope:
/// a rank-n vertex map `g` on `◇_n` extended by `±e_(n+1) ↦ v, 2g(0) − v` for
/// a vertex `v` of `△_n ∩ (2g(0) − △_n)` outside `Im g`.
pub fn non_crosspolytope_witness(n: usize, cache: &HomCache) -> Result<Option<AffineMapRep>> {
    let e = cache.standard(StandardKind::Crosspolytope, n, StandardKind::Simplex, n)?;
    let simplex = e.hom.target();
    let big = standard(StandardKind::Crosspolytope, n + 1)?;
    let small = e.hom.source();
    for g in top_rank(&e, n) {
        let b = g.translation().clone();
        let two_b = b.scale(&Rational::from(2));
        let meet = intersect(simplex, &translate(&negate(simplex)?, &two_b)?)?;
        let image = hom::image_points(&g, small)?;
        for v in meet.vertices()? {
            if image.binary_search(v).is_ok() {
                continue;
            }
            // column n+1 of A is v - b
            let column = v.sub(&b)?;
            let rows: Vec<Vec<Rational>> = (0..n)
                .map(|r| {
                    let mut row: Vec<Rational> = (0..n).map(|c| g.linear_part().get(r, c).clone()).collect();
                    row.push(column.coords()[r].clone());
                    row
                })
                .collect();
            let a = crate::linalg::QMatrix::from_rows(&rows.into_iter().map(QVector::new).collect::<Vec<_>>(), n + 1)?;
            let f = AffineMapRep::new(a, b.clone())?;
            if hom::is_vertex_map(&f, &big, simplex)? && !image_is_crosspolytope(&f)? {
                return Ok(Some(f));
            }
        }
    }
    Ok(None)
}

fn diamond_image_shape(p: &Params, cache: &HomCache) -> Result<Outcome> {
    let (m, n) = (p.m("diamond-image-shape")?, p.n("diamond-image-shape")?);
    if n < 3 || n > m {
        return Err(Error::ClaimNotApplicable { claim: "diamond-image-shape".into(), params: p.to_string() });
    }
    let all_expected = m == n || n == 3;
    if all_expected {
        let e = cache.standard(StandardKind::Crosspolytope, m, StandardKind::Simplex, n)?;
        let maps = top_rank(&e, n);
        let bad = first_failure(&maps, image_is_crosspolytope)?;
        return Ok(Outcome::new(
            bad.is_none(),
            json!({ "rank_n_maps": maps.len(), "all_crosspolytopes": bad.is_none(), "expected_all": true }),
        )
        .witness(bad.as_ref().map(map_json)));
    }
    let found = if m == n + 1 {
        non_crosspolytope_witness(n, cache)?
    } else {
        let e = cache.standard(StandardKind::Crosspolytope, m, StandardKind::Simplex, n)?;
        let maps = top_rank(&e, n);
        first_failure(&maps, image_is_crosspolytope)?
    };
    let summary = json!({
        "expected_all": false,
        "non_crosspolytope_image": found.as_ref().map(map_json),
    });
    Ok(Outcome::new(found.is_some(), summary))
}

fn vertex_image_law(p: &Params, cache: &HomCache) -> Result<Outcome> {
    let m = p.m("vertex-image-law")?;
    let e = cache.get(&std(StandardKind::Crosspolytope, m), &p.target("vertex-image-law")?)?;
    let target = e.hom.target();
    let bad = first_failure(&e.maps, |f| hom::crosspolytope_vertex_image_law(f, target))?;
    Ok(Outcome::new(bad.is_none(), json!({ "vertices": e.maps.len() })).witness(bad.as_ref().map(map_json)))
}

fn face_law(p: &Params, cache: &HomCache) -> Result<Outcome> {
    let n = p.n("face-law")?;
    let e = cache.get(&p.source("face-law")?, &std(StandardKind::Simplex, n))?;
    let source = e.hom.source();
    let bad = first_failure(&e.maps, |f| Ok(hom::simplex_face_law(f, source)?.holds()))?;
    Ok(Outcome::new(bad.is_none(), json!({ "vertices": e.maps.len() })).witness(bad.as_ref().map(map_json)))
}

fn count_agreement(p: &Params, cache: &HomCache) -> Result<Outcome> {
    let family = p.family.ok_or_else(|| Params::missing("count-agreement", "family", p))?;
    let (m, n) = (p.m("count-agreement")?, p.n("count-agreement")?);
    let max_k = match family {
        Family::BoxSimplex => 0,
        Family::DiamondSimplex => n,
        Family::DiamondDiamond => n.saturating_sub(1),
    };
    let table = counts::high_rank_table(m, max_k)?;
    let mut report = counts::closed_form(family, m as u64, n as u64, Some(&table))?;
    let (source, target) = family.kinds();
    let e = cache.standard(source, m, target, n)?;
    report.fill(&e.maps);
    Ok(Outcome::new(report.agreement == Some(true), serde_json::to_value(&report)?))
}

fn beta(p: &Params) -> Result<Outcome> {
    let n = p.n("beta")?;
    let report = counts::beta(n)?;
    let pass = report.free && report.orbits as u128 == report.quotient && p.expected.is_none_or(|e| e == report.beta);
    Ok(Outcome::new(pass, serde_json::to_value(&report)?))
}

/// Maps `{1..m} -> {±1..±n}` covering every absolute value, by listing them.
fn signed_covers_brute(m: usize, n: usize) -> u128 {
    let total = (2 * n).pow(m as u32);
    let mut count = 0;
    for code in 0..total {
        let mut seen = vec![false; n];
        let mut c = code;
        for _ in 0..m {
            seen[(c % (2 * n)) / 2] = true;
            c /= 2 * n;
        }
        if seen.iter().all(|&s| s) {
            count += 1;
        }
    }
    count
}

fn sigma_identity(p: &Params) -> Result<Outcome> {
    let max = p.m("sigma-identity")?;
    if max > 20 {
        return Err(Error::GuardExceeded("sigma identity is checked for m <= 20".into()));
    }
    let mut checked = 0;
    for m in 1..=max as u64 {
        for n in 1..=m {
            let sigma = counts::sigma(m, n);
            let ie = counts::surjections_inclusion_exclusion(m, n);
            let mut ok = ie >= 0 && sigma == (1u128 << m) * ie as u128;
            if m <= 4 {
                ok &= sigma == signed_covers_brute(m as usize, n as usize);
            }
            if !ok {
                return Ok(Outcome::new(false, json!({ "m": m, "n": n, "sigma": sigma as u64, "inclusion_exclusion": ie as i64 })));
            }
            checked += 1;
        }
    }
    Ok(Outcome::new(true, json!({ "pairs_checked": checked })))
}

fn intersection_table(p: &Params) -> Result<Outcome> {
    let n = p.n("intersection-table")?;
    let seeds = p.seeds.clone().unwrap_or_else(|| vec![1, 2, 3]);
    let eps = experiments::default_eps();
    let runs = par::try_map(&seeds, |&s| experiments::perturbed_barycenter_run(n, s, &eps))?;
    let counts: Vec<usize> = runs.iter().map(|r| r.vertex_count).collect();
    let bound = counts::intersection_bound(n as u64);
    let unanimous = counts.windows(2).all(|w| w[0] == w[1]);
    let under = counts.iter().all(|&c| c as u128 <= bound);
    let matches = p.expected.is_none_or(|e| counts.iter().all(|&c| c as u128 == e));
    Ok(Outcome::new(
        unanimous && under && matches,
        json!({ "counts": counts, "redraws": runs.iter().map(|r| r.redraws).collect::<Vec<_>>(), "bound": bound as u64 }),
    ))
}

fn box_diamond_bound(p: &Params, cache: &HomCache) -> Result<Outcome> {
    let (m, n) = (p.m("box-diamond-bound")?, p.n("box-diamond-bound")?);
    let bound = counts::bound_box_diamond(m as u64, n as u64)?;
    let e = cache.standard(StandardKind::Cube, m, StandardKind::Crosspolytope, n)?;
    let count = e.maps.len() as u128;
    Ok(Outcome::new(bound <= count, json!({ "bound": bound as u64, "vertices": count as u64 })))
}

fn rank_bounds(p: &Params, cache: &HomCache) -> Result<Outcome> {
    let (m, k) = (p.m("rank-bounds")?, p.n("rank-bounds")?);
    let beta = counts::beta(k)?.beta;
    let (lower, upper) = counts::diamond_simplex_rank_bounds(m as u64, k as u64, beta)?;
    let e = cache.standard(StandardKind::Crosspolytope, m, StandardKind::Simplex, k)?;
    let middle = top_rank(&e, k).len() as u128;
    Ok(Outcome::new(
        lower <= middle && middle <= upper,
        json!({ "lower": lower as u64, "rank_k_maps": middle as u64, "upper": upper as u64 }),
    ))
}

fn vertex_count(p: &Params, cache: &HomCache) -> Result<Outcome> {
    let expected = p.expected.ok_or_else(|| Params::missing("vertex-count", "expected", p))?;
    let e = cache.get(&p.source("vertex-count")?, &p.target("vertex-count")?)?;
    let ranks = hom::rank_histogram(&e.maps);
    Ok(Outcome::new(e.maps.len() as u128 == expected, json!({ "vertices": e.maps.len(), "ranks": ranks })))
}

/// Claims and parameters of a suite, in report order.
pub fn suite(level: SuiteLevel) -> Vec<(&'static str, Params)> {
    use StandardKind::{Crosspolytope as D, Cube as C, Simplex as S};
    let homs = |a: StandardKind, m: usize, b: StandardKind, n: usize| Params::homs(std(a, m), std(b, n));
    let family = |f: Family, m: usize, n: usize| Params { family: Some(f), ..Params::mn(m, n) };
    let mut items: Vec<(&'static str, Params)> = Vec::new();
    for (a, m, b, n) in [(S, 1, S, 1), (C, 2, S, 2), (D, 2, D, 2), (D, 3, S, 3), (C, 3, S, 2), (S, 2, C, 2), (C, 2, D, 2)] {
        items.push(("dim-formula", homs(a, m, b, n)));
    }
    for (a, m, b, n) in [(C, 2, S, 2), (D, 2, D, 2), (D, 3, S, 3), (S, 2, C, 2)] {
        items.push(("constant-maps", homs(a, m, b, n)));
    }
    for (a, m, b, n) in [(S, 1, S, 2), (C, 2, S, 2), (D, 2, S, 2), (D, 2, D, 2), (C, 2, D, 2)] {
        items.push(("facet-form", homs(a, m, b, n)));
    }
    for (m, n) in [(1, 1), (2, 2), (2, 3), (3, 2), (3, 3)] {
        items.push(("box-simplex-rank", Params::mn(m, n)));
        items.push(("bt-realization", Params::mn(m, n)));
    }
    for (n, kind, k) in [(1, S, 2), (1, C, 1), (2, S, 1), (1, C, 2), (2, D, 2)] {
        items.push(("hom-simplex-power", Params { n: Some(n), target: Some(std(kind, k)), ..Default::default() }));
    }
    for (kind, m, n) in [(D, 2, 1), (C, 2, 1), (S, 2, 2), (D, 2, 2), (D, 3, 2)] {
        items.push(("hom-into-cube", Params { n: Some(n), source: Some(std(kind, m)), ..Default::default() }));
    }
    for (m, n) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        items.push(("diamond-center", Params::mn(m, n)));
    }
    for (m, n) in [(3, 3), (4, 3), (4, 4)] {
        items.push(("diamond-subcross", Params::mn(m, n)));
        items.push(("diamond-image-count", Params::mn(m, n)));
        items.push(("diamond-image-shape", Params::mn(m, n)));
    }
    for (m, kind, n) in [(2, S, 2), (3, S, 3), (4, S, 3), (2, D, 2), (3, D, 3), (2, C, 2)] {
        items.push(("vertex-image-law", Params { m: Some(m), target: Some(std(kind, n)), ..Default::default() }));
    }
    for (kind, m, n) in [(C, 2, 2), (C, 3, 3), (D, 3, 3), (D, 4, 3), (S, 2, 2)] {
        items.push(("face-law", Params { n: Some(n), source: Some(std(kind, m)), ..Default::default() }));
    }
    for (m, n) in [(1, 1), (2, 2), (2, 3), (3, 2), (3, 3)] {
        items.push(("count-agreement", family(Family::BoxSimplex, m, n)));
    }
    for (m, n) in [(2, 2), (3, 2), (2, 3), (3, 3), (4, 3), (4, 4)] {
        items.push(("count-agreement", family(Family::DiamondSimplex, m, n)));
    }
    for (m, n) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        items.push(("count-agreement", family(Family::DiamondDiamond, m, n)));
    }
    for (n, b) in [(1, 1), (2, 0), (3, 1), (4, 5)] {
        items.push(("beta", Params { n: Some(n), expected: Some(b), ..Default::default() }));
    }
    items.push(("sigma-identity", Params { m: Some(8), ..Default::default() }));
    for (n, count) in [(3, 12), (4, 30), (5, 60), (6, 140)] {
        items.push(("intersection-table", Params { n: Some(n), seeds: Some(vec![1, 2, 3]), ..Default::default() }.with_expected(count)));
    }
    for (m, n) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        items.push(("box-diamond-bound", Params::mn(m, n)));
    }
    for (m, k) in [(3, 3), (4, 3)] {
        items.push(("rank-bounds", Params::mn(m, k)));
    }
    items.push(("vertex-count", homs(C, 1, C, 1).with_expected(4)));
    items.push(("vertex-count", homs(D, 2, C, 1).with_expected(6)));
    if level == SuiteLevel::Extended {
        items.push(("beta", Params { n: Some(5), expected: Some(408), ..Default::default() }));
        items.push(("vertex-count", homs(C, 3, D, 4).with_expected(27968)));
        items.push(("box-diamond-bound", Params::mn(3, 4)));
        items.push(("diamond-image-shape", Params::mn(5, 4)));
        items.push(("diamond-image-count", Params::mn(5, 4)));
    }
    items
}

/// Runs a suite. Errors inside a claim become failures whose witness is the
/// error message.
pub fn run_suite(level: SuiteLevel) -> Vec<VerificationResult> {
    let cache = HomCache::default();
    let items = suite(level);
    par::map(&items, |(id, params)| {
        let start = Instant::now();
        run_claim_cached(id, params, &cache).unwrap_or_else(|err| VerificationResult {
            claim_id: (*id).into(),
            parameters: params.clone(),
            status: Status::Fail,
            summary: json!({ "error": err.to_string() }),
            witness: Some(json!({ "error": err.to_string() })),
            elapsed: start.elapsed(),
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_consistent() {
        let ids = claim_ids();
        let unique: BTreeSet<_> = ids.iter().collect();
        assert_eq!(unique.len(), ids.len());
        let used: BTreeSet<&str> = suite(SuiteLevel::Core).iter().map(|(id, _)| *id).collect();
        for id in ids {
            assert!(used.contains(id), "{id} has no core parameters");
        }
    }

    #[test]
    fn unknown_and_inapplicable() {
        assert_eq!(run_claim("no-such-claim", &Params::default()).unwrap_err(), Error::UnknownClaim("no-such-claim".into()));
        assert!(matches!(run_claim("box-simplex-rank", &Params::default()), Err(Error::ClaimNotApplicable { .. })));
    }

    #[test]
    fn small_claims_pass() {
        let r = run_claim("box-simplex-rank", &Params::mn(3, 2)).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.summary["vertices"], 21);
        let r = run_claim("diamond-center", &Params::mn(2, 2)).unwrap();
        assert!(r.passed());
        assert_eq!(r.summary["vertices"], 36);
        let r = run_claim("dim-formula", &Params::homs(std(StandardKind::Simplex, 1), std(StandardKind::Simplex, 1))).unwrap();
        assert!(r.passed());
        assert_eq!(r.summary["dimension"], 2);
    }

    #[test]
    fn failures_carry_witnesses() {
        let p = Params::homs(std(StandardKind::Cube, 2), std(StandardKind::Simplex, 2)).with_expected(16);
        let r = run_claim("vertex-count", &p).unwrap();
        assert_eq!(r.status, Status::Fail);
        assert!(r.witness.is_some());
    }

    #[test]
    fn brute_force_covers() {
        assert_eq!(signed_covers_brute(3, 3), 48);
        assert_eq!(signed_covers_brute(2, 3), 0);
    }
}
