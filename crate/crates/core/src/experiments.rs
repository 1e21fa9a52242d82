//! Vertex counts of `△_n ∩ (2z − △_n)` and of random simplex pairs.

use serde::{Deserialize, Serialize};

use crate::counts::intersection_bound;
use crate::error::{Error, Result};
use crate::linalg::{affine_hull, QVector, Rational};
use crate::par;
use crate::polytope::{intersect, negate, standard, translate, Polytope, StandardKind};

/// Largest `n` accepted by [`reproduce_table`].
pub const TABLE_GUARD: usize = 8;
/// Draws attempted before giving up on a generic configuration.
pub const RETRY_BUDGET: usize = 32;

/// 64-bit LCG with the MMIX constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeededGenerator {
    pub state: u64,
}

impl SeededGenerator {
    const MUL: u64 = 6364136223846793005;
    const INC: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(Self::MUL).wrapping_add(Self::INC);
        self.state
    }

    /// Advances, then returns `((state >> 11) mod (2^21 + 1) − 2^20) / 2^20 ∈ [−1, 1]`.
    pub fn next_rational(&mut self) -> Rational {
        let s = self.next_u64();
        let k = ((s >> 11) % ((1 << 21) + 1)) as i64 - (1 << 20);
        Rational::new(k, 1i64 << 20).expect("nonzero denominator")
    }

    pub fn next_point(&mut self, dim: usize) -> QVector {
        QVector::new((0..dim).map(|_| self.next_rational()).collect())
    }
}

pub fn default_eps() -> Rational {
    Rational::new(1, 1000).expect("nonzero denominator")
}

/// `P ∩ (2z − P)`.
pub fn symmetric_intersection(p: &Polytope, z: &QVector) -> Result<Polytope> {
    let reflected = translate(&negate(p)?, &z.scale(&Rational::from(2)))?;
    intersect(p, &reflected)
}

/// Whether `x ↦ 2z − x` permutes the vertices of `p`.
pub fn is_centrally_symmetric(p: &Polytope, z: &QVector) -> Result<bool> {
    let vertices = p.vertices()?;
    let two_z = z.scale(&Rational::from(2));
    for v in vertices {
        if vertices.binary_search(&two_z.sub(v)?).is_err() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Full-dimensional with every vertex on exactly `dim` facets.
fn is_generic(p: &Polytope) -> Result<bool> {
    let n = p.ambient_dim();
    if !p.is_full_dimensional()? {
        return Ok(false);
    }
    Ok(p.vertex_facet_incidence()?.iter().all(|row| row.iter().filter(|&&b| b).count() == n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbedRun {
    pub n: usize,
    pub seed: u64,
    pub eps: Rational,
    pub z: QVector,
    /// Draws rejected as non-generic before `z`.
    pub redraws: usize,
    pub vertex_count: usize,
}

/// `#vert(△_n ∩ (2z − △_n))` for `z` the barycenter plus `eps·d`, `d` drawn
/// coordinatewise. Draws giving a degenerate or non-simple intersection are
/// redrawn. With `eps = 0` the barycenter itself is used.
pub fn perturbed_barycenter_run(n: usize, seed: u64, eps: &Rational) -> Result<PerturbedRun> {
    if n < 2 {
        return Err(Error::InvalidArgument("perturbed barycenter needs n >= 2".into()));
    }
    if eps.is_negative() {
        return Err(Error::InvalidArgument("eps must be nonnegative".into()));
    }
    let simplex = standard(StandardKind::Simplex, n)?;
    let center = QVector::centroid(simplex.vertices()?)?;
    if eps.is_zero() {
        let p = symmetric_intersection(&simplex, &center)?;
        return Ok(PerturbedRun { n, seed, eps: eps.clone(), vertex_count: p.vertices()?.len(), z: center, redraws: 0 });
    }
    let mut rng = SeededGenerator::new(seed);
    for redraws in 0..RETRY_BUDGET {
        let z = center.add(&rng.next_point(n).scale(eps))?;
        let p = symmetric_intersection(&simplex, &z)?;
        if is_generic(&p)? {
            return Ok(PerturbedRun { n, seed, eps: eps.clone(), vertex_count: p.vertices()?.len(), z, redraws });
        }
    }
    Err(Error::RetriesExhausted(format!("no generic perturbation for n = {n}, seed = {seed}")))
}

pub fn perturbed_barycenter_count(n: usize, seed: u64, eps: &Rational) -> Result<usize> {
    Ok(perturbed_barycenter_run(n, seed, eps)?.vertex_count)
}

fn random_simplex(n: usize, rng: &mut SeededGenerator) -> Result<Polytope> {
    for _ in 0..RETRY_BUDGET {
        let points: Vec<QVector> = (0..=n).map(|_| rng.next_point(n)).collect();
        if affine_hull(&points)?.dim() == n {
            return Polytope::from_points(n, &points);
        }
    }
    Err(Error::RetriesExhausted(format!("no nondegenerate {n}-simplex drawn")))
}

/// `#vert(△ ∩ △')` for two simplices with vertices drawn in `[−1, 1]^n`.
pub fn random_simplex_intersection_count(n: usize, seed: u64) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidArgument("random simplex intersection needs n >= 2".into()));
    }
    let mut rng = SeededGenerator::new(seed);
    let a = random_simplex(n, &mut rng)?;
    let b = random_simplex(n, &mut rng)?;
    Ok(intersect(&a, &b)?.vertices()?.len())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub perturbed: usize,
    pub random: usize,
    pub bound: u128,
    /// `100 · perturbed / bound`, display only.
    pub percentage: String,
    pub redraws: usize,
}

/// Four significant digits.
fn percent(count: usize, bound: u128) -> String {
    let value = 100.0 * count as f64 / bound as f64;
    let int_digits = if value >= 1.0 { value.log10().floor() as i32 + 1 } else { 1 };
    let decimals = (4 - int_digits).max(0) as usize;
    format!("{value:.decimals$}")
}

/// Rows `n_min..=n_max`; row `n` draws from seed `seed + n`.
pub fn reproduce_table(n_min: usize, n_max: usize, seed: u64, eps: &Rational) -> Result<Vec<TableRow>> {
    if n_min < 3 || n_min > n_max {
        return Err(Error::InvalidArgument(format!("table needs 3 <= n_min <= n_max, got {n_min}..{n_max}")));
    }
    if n_max > TABLE_GUARD {
        return Err(Error::GuardExceeded(format!("table rows are limited to n <= {TABLE_GUARD}, got {n_max}")));
    }
    let ns: Vec<usize> = (n_min..=n_max).collect();
    par::try_map(&ns, |&n| {
        let row_seed = seed.wrapping_add(n as u64);
        let run = perturbed_barycenter_run(n, row_seed, eps)?;
        let random = random_simplex_intersection_count(n, row_seed)?;
        let bound = intersection_bound(n as u64);
        Ok(TableRow { n, perturbed: run.vertex_count, random, bound, percentage: percent(run.vertex_count, bound), redraws: run.redraws })
    })
}

pub fn render_table(rows: &[TableRow]) -> String {
    let header = ["n", "perturbed", "random", "bound", "percent"];
    let cells: Vec<[String; 5]> = rows
        .iter()
        .map(|r| [r.n.to_string(), r.perturbed.to_string(), r.random.to_string(), r.bound.to_string(), r.percentage.clone()])
        .collect();
    let widths: Vec<usize> =
        (0..5).map(|i| cells.iter().map(|c| c[i].len()).chain([header[i].len()]).max().unwrap_or(0)).collect();
    let line = |c: [&str; 5]| {
        c.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect::<Vec<_>>().join("  ") + "\n"
    };
    let mut out = line(header);
    for c in &cells {
        out += &line([&c[0], &c[1], &c[2], &c[3], &c[4]]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_is_deterministic_and_bounded() {
        let mut a = SeededGenerator::new(7);
        let mut b = SeededGenerator::new(7);
        for _ in 0..1000 {
            let x = a.next_rational();
            assert_eq!(x, b.next_rational());
            assert!(x.abs() <= Rational::one());
        }
        let mut g = SeededGenerator::new(0);
        assert_eq!(g.next_u64(), 1442695040888963407);
    }

    #[test]
    fn percentages() {
        assert_eq!(percent(12, 56), "21.43");
        assert_eq!(percent(60, 792), "7.576");
        assert_eq!(percent(140, 3003), "4.662");
    }

    #[test]
    fn small_intersections() {
        assert_eq!(perturbed_barycenter_count(3, 1, &default_eps()).unwrap(), 12);
        for seed in 0..5 {
            let k = random_simplex_intersection_count(2, seed).unwrap();
            assert!(k <= 6, "seed {seed}: {k}");
        }
    }

    #[test]
    fn barycenter_baseline_is_symmetric() {
        let simplex = standard(StandardKind::Simplex, 3).unwrap();
        let c = QVector::centroid(simplex.vertices().unwrap()).unwrap();
        let p = symmetric_intersection(&simplex, &c).unwrap();
        assert!(is_centrally_symmetric(&p, &c).unwrap());
        let run = perturbed_barycenter_run(3, 0, &Rational::zero()).unwrap();
        assert_eq!(run.vertex_count, p.vertices().unwrap().len());
    }

    #[test]
    fn table_guards() {
        assert!(reproduce_table(2, 4, 0, &default_eps()).is_err());
        assert!(reproduce_table(5, 4, 0, &default_eps()).is_err());
        assert!(matches!(reproduce_table(3, 9, 0, &default_eps()), Err(Error::GuardExceeded(_))));
    }
}
