//! Closed-form vertex counts, bounds, and the brute-force `V(n)` / `β(n)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{enumerate_group, orbit_count, permutation_subgroup};
use crate::hom::{build_hom_standard, enumerate_vertex_maps, map_rank, AffineMapRep};
use crate::linalg::Rational;
use crate::par;
use crate::polytope::StandardKind;

/// Largest `n` accepted by [`enumerate_v`] and [`beta`].
pub const V_GUARD: usize = 5;

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> u128 {
    (1..=u128::from(n)).product()
}

/// Falling factorial `m (m-1) ... (m-k+1)`.
pub fn falling(m: u64, k: u64) -> u128 {
    if k > m {
        return 0;
    }
    ((m - k + 1)..=m).map(u128::from).product()
}

/// Stirling numbers of the second kind by `S(m,n) = n S(m-1,n) + S(m-1,n-1)`.
pub fn stirling2(m: u64, n: u64) -> u128 {
    let (m, n) = (m as usize, n as usize);
    if n > m {
        return 0;
    }
    let mut row = vec![0u128; n + 1];
    row[0] = 1;
    for _ in 0..m {
        for k in (1..=n).rev() {
            row[k] = k as u128 * row[k] + row[k - 1];
        }
        row[0] = 0;
    }
    row[n]
}

/// Surjections `{1..m} -> {1..n}`: `n! S(m, n)`.
pub fn surjections(m: u64, n: u64) -> u128 {
    factorial(n) * stirling2(m, n)
}

/// `Σ_j (-1)^(n-j) C(n,j) j^m`.
pub fn surjections_inclusion_exclusion(m: u64, n: u64) -> i128 {
    (0..=n)
        .map(|j| {
            let term = binomial(n, j) as i128 * (j as i128).pow(m as u32);
            if (n - j) % 2 == 0 { term } else { -term }
        })
        .sum()
}

/// Maps `{1..m} -> {±1..±n}` whose absolute values cover `{1..n}`.
pub fn sigma(m: u64, n: u64) -> u128 {
    (1u128 << m) * surjections(m, n)
}

/// `C(2n+2, n+2)`, the bound on vertices of the intersection of two n-simplices.
pub fn intersection_bound(n: u64) -> u128 {
    binomial(2 * n + 2, n + 2)
}

/// `2n + 2mn(2n-1) + 2mn(m-1)(n-1)`, lower bound for `#vert(Hom(□_m, ◇_n))`.
pub fn bound_box_diamond(m: u64, n: u64) -> Result<u128> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidArgument("box-diamond bound needs m, n >= 2".into()));
    }
    let (m, n) = (u128::from(m), u128::from(n));
    Ok(2 * n + 2 * m * n * (2 * n - 1) + 2 * m * n * (m - 1) * (n - 1))
}

/// `(σ(m,k) β(k), 2^k m!/(m-k)! C(2k+2,k+2)^(m-k) β(k))`, bounds on the
/// rank-k vertex count of `Hom(◇_m, △_k)`.
pub fn diamond_simplex_rank_bounds(m: u64, k: u64, beta_k: u128) -> Result<(u128, u128)> {
    if k > m {
        return Err(Error::InvalidArgument(format!("rank bounds need k <= m, got k = {k}, m = {m}")));
    }
    let lower = sigma(m, k) * beta_k;
    let upper = (1u128 << k) * falling(m, k) * intersection_bound(k).pow((m - k) as u32) * beta_k;
    Ok((lower, upper))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    BoxSimplex,
    DiamondSimplex,
    DiamondDiamond,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::BoxSimplex => "box-simplex",
            Family::DiamondSimplex => "diamond-simplex",
            Family::DiamondDiamond => "diamond-diamond",
        }
    }

    pub fn kinds(self) -> (StandardKind, StandardKind) {
        match self {
            Family::BoxSimplex => (StandardKind::Cube, StandardKind::Simplex),
            Family::DiamondSimplex => (StandardKind::Crosspolytope, StandardKind::Simplex),
            Family::DiamondDiamond => (StandardKind::Crosspolytope, StandardKind::Crosspolytope),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "box-simplex" => Ok(Family::BoxSimplex),
            "diamond-simplex" => Ok(Family::DiamondSimplex),
            "diamond-diamond" => Ok(Family::DiamondDiamond),
            other => Err(Error::InvalidArgument(format!("unknown family {other:?}"))),
        }
    }
}

/// One summand of a closed form. `key` is the map rank, or for
/// `diamond-diamond` the dimension of the face of `◇_n` whose relative
/// interior contains `f(0)` (`n` for the interior).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTerm {
    pub key: usize,
    pub label: String,
    pub closed_form: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enumerated: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub family: Family,
    pub m: u64,
    pub n: u64,
    pub closed_form: u128,
    pub enumerated: Option<u128>,
    pub agreement: Option<bool>,
    pub terms: Vec<CountTerm>,
}

impl CountReport {
    fn new(family: Family, m: u64, n: u64, terms: Vec<CountTerm>) -> Self {
        let closed_form = terms.iter().map(|t| t.closed_form).sum();
        Self { family, m, n, closed_form, enumerated: None, agreement: None, terms }
    }

    /// Enumerates the hom-polytope and fills the enumerated columns.
    pub fn with_enumeration(mut self) -> Result<Self> {
        let (source, target) = self.family.kinds();
        let hom = build_hom_standard(source, self.m as usize, target, self.n as usize)?;
        let maps = enumerate_vertex_maps(&hom)?;
        self.fill(&maps);
        Ok(self)
    }

    /// Fills the enumerated columns from an already enumerated vertex set.
    pub fn fill(&mut self, maps: &[AffineMapRep]) {
        let keys: Vec<usize> = match self.family {
            Family::DiamondDiamond => par::map(maps, |f| center_face_dim(f.translation().coords())),
            _ => par::map(maps, map_rank),
        };
        let mut hist: BTreeMap<usize, u128> = BTreeMap::new();
        for k in keys {
            *hist.entry(k).or_default() += 1;
        }
        for term in &mut self.terms {
            term.enumerated = Some(hist.remove(&term.key).unwrap_or(0));
        }
        // keys with no closed-form term
        for (key, count) in hist {
            self.terms.push(CountTerm { key, label: format!("unexpected key {key}"), closed_form: 0, enumerated: Some(count) });
        }
        self.terms.sort_by_key(|t| t.key);
        let total = maps.len() as u128;
        self.enumerated = Some(total);
        self.agreement = Some(total == self.closed_form && self.terms.iter().all(|t| t.enumerated == Some(t.closed_form)));
    }
}

/// Dimension of the face of `◇_n` with `x` in its relative interior; `n`
/// when `x` is interior.
pub fn center_face_dim(x: &[Rational]) -> usize {
    let l1: Rational = x.iter().map(Rational::abs).sum();
    if l1 < Rational::one() {
        return x.len();
    }
    x.iter().filter(|c| !c.is_zero()).count() - 1
}

fn term(key: usize, label: String, closed_form: u128) -> CountTerm {
    CountTerm { key, label, closed_form, enumerated: None }
}

/// `(n+1)(mn+1)`: `n+1` constant maps and `(n+1)mn` rank-1 maps.
pub fn count_box_simplex(m: u64, n: u64) -> Result<CountReport> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("box-simplex count needs m, n >= 1".into()));
    }
    let (mm, nn) = (u128::from(m), u128::from(n));
    Ok(CountReport::new(
        Family::BoxSimplex,
        m,
        n,
        vec![term(0, "constant maps: n+1".into(), nn + 1), term(1, "rank 1: (n+1)mn".into(), (nn + 1) * mm * nn)],
    ))
}

fn high_rank(table: Option<&BTreeMap<usize, u128>>, k: usize) -> Result<u128> {
    table.and_then(|t| t.get(&k)).copied().ok_or(Error::MissingHighRank(k))
}

/// `Σ_k C(n+1,k+1) #vert^(k)(◇_m, △_k)`, with the `k <= 3` terms in closed
/// form and `k >= 4` from `high_rank_table`.
pub fn count_diamond_simplex(m: u64, n: u64, high_rank_table: Option<&BTreeMap<usize, u128>>) -> Result<CountReport> {
    if m < 2 || n == 0 {
        return Err(Error::InvalidArgument("diamond-simplex count needs m >= 2, n >= 1".into()));
    }
    let nn = u128::from(n);
    let mut terms = vec![
        term(0, "constant maps: 1+n".into(), 1 + nn),
        term(1, "rank 1: 2^(m-1) n(n+1)".into(), (1u128 << (m - 1)) * nn * (nn + 1)),
    ];
    if n >= 2 {
        terms.push(term(2, "rank 2: 0".into(), 0));
    }
    if m >= 3 && n >= 3 {
        terms.push(term(3, "rank 3: C(n+1,4) σ(m,3)".into(), binomial(n + 1, 4) * sigma(m, 3)));
    }
    for k in 4..=m.min(n) {
        let per_face = high_rank(high_rank_table, k as usize)?;
        terms.push(term(k as usize, format!("rank {k}: C(n+1,{}) #vert^({k})(◇_m,△_{k})", k + 1), binomial(n + 1, k + 1) * per_face));
    }
    Ok(CountReport::new(Family::DiamondSimplex, m, n, terms))
}

/// `2^m n^m + Σ_k 2^(k+1) C(n,k+1) #vert^(k)(◇_m, △_k)`, keyed by the
/// dimension of the face containing `f(0)`.
pub fn count_diamond_diamond(m: u64, n: u64, high_rank_table: Option<&BTreeMap<usize, u128>>) -> Result<CountReport> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidArgument("diamond-diamond count needs m, n >= 2".into()));
    }
    let nn = u128::from(n);
    let mut terms = vec![
        term(n as usize, "interior center: 2^m n^m".into(), (1u128 << m) * nn.pow(m as u32)),
        term(0, "center at a vertex: 2n".into(), 2 * nn),
        term(1, "center on an edge: 2^(m+1) n(n-1)".into(), (1u128 << (m + 1)) * nn * (nn - 1)),
    ];
    if n >= 3 {
        terms.push(term(2, "center on a 2-face: 0".into(), 0));
    }
    if m >= 3 && n >= 4 {
        terms.push(term(3, "center on a 3-face: 16 C(n,4) σ(m,3)".into(), 16 * binomial(n, 4) * sigma(m, 3)));
    }
    for k in 4..=m.min(n - 1) {
        let per_face = high_rank(high_rank_table, k as usize)?;
        terms.push(term(
            k as usize,
            format!("center on a {k}-face: 2^{} C(n,{}) #vert^({k})(◇_m,△_{k})", k + 1, k + 1),
            (1u128 << (k + 1)) * binomial(n, k + 1) * per_face,
        ));
    }
    Ok(CountReport::new(Family::DiamondDiamond, m, n, terms))
}

/// `#vert^(k)(◇_m, △_k)` by enumeration, for use as a high-rank table entry.
pub fn top_rank_count(m: usize, k: usize) -> Result<u128> {
    let hom = build_hom_standard(StandardKind::Crosspolytope, m, StandardKind::Simplex, k)?;
    let maps = enumerate_vertex_maps(&hom)?;
    Ok(par::map(&maps, map_rank).into_iter().filter(|&r| r == k).count() as u128)
}

/// Entries `k = 4..=max_k` for the closed forms: `σ(m,m) β(m)` when `k = m`,
/// every rank-m image being a crosspolytope there; enumerated otherwise.
pub fn high_rank_table(m: usize, max_k: usize) -> Result<BTreeMap<usize, u128>> {
    let mut table = BTreeMap::new();
    for k in 4..=max_k.min(m) {
        let value = if k == m { sigma(m as u64, m as u64) * beta(m)?.beta } else { top_rank_count(m, k)? };
        table.insert(k, value);
    }
    Ok(table)
}

pub fn closed_form(family: Family, m: u64, n: u64, high_rank_table: Option<&BTreeMap<usize, u128>>) -> Result<CountReport> {
    match family {
        Family::BoxSimplex => count_box_simplex(m, n),
        Family::DiamondSimplex => count_diamond_simplex(m, n, high_rank_table),
        Family::DiamondDiamond => count_diamond_diamond(m, n, high_rank_table),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VStrategy {
    /// All ordered tuples.
    Full,
    /// Tuples starting at `(-1, ..., -1)`; the full set is `2^n` times larger.
    FixedFirst,
}

/// Ordered `(n+1)`-tuples of cube vertices, as bitmasks (bit `i` set means
/// coordinate `i` is `+1`), spanning a full-dimensional simplex with the
/// origin in its interior.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VSet {
    pub n: usize,
    pub strategy: VStrategy,
    pub tuples: Vec<Vec<u32>>,
}

impl VSet {
    /// `|V(n)|`.
    pub fn full_count(&self) -> u128 {
        match self.strategy {
            VStrategy::Full => self.tuples.len() as u128,
            VStrategy::FixedFirst => (self.tuples.len() as u128) << self.n,
        }
    }
}

pub fn mask_to_coords(n: usize, mask: u32) -> Vec<i64> {
    (0..n).map(|i| if mask >> i & 1 == 1 { 1 } else { -1 }).collect()
}

/// Determinant of a small integer matrix (fraction-free elimination).
fn det_i64(mut a: Vec<Vec<i64>>) -> i64 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r][k] != 0) else { return 0 };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn rank_i64(rows: &[Vec<i64>]) -> usize {
    let mut a = rows.to_vec();
    let (r, c) = (a.len(), a.first().map_or(0, Vec::len));
    let mut rank = 0;
    let mut prev = 1;
    for col in 0..c {
        let Some(p) = (rank..r).find(|&i| a[i][col] != 0) else { continue };
        a.swap(rank, p);
        for i in rank + 1..r {
            for j in col + 1..c {
                a[i][j] = (a[i][j] * a[rank][col] - a[i][col] * a[rank][j]) / prev;
            }
            a[i][col] = 0;
        }
        prev = a[rank][col];
        rank += 1;
    }
    rank
}

struct VSearch {
    n: usize,
    points: Vec<Vec<i64>>,
}

impl VSearch {
    fn extend(&self, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let n = self.n;
        if prefix.len() == n {
            self.close(prefix, out);
            return;
        }
        for v in 0..1u32 << n {
            let mut rows: Vec<Vec<i64>> = prefix.iter().map(|&p| self.points[p as usize].clone()).collect();
            rows.push(self.points[v as usize].clone());
            // the n vertices of any facet of such a simplex are linearly independent
            if rank_i64(&rows) == rows.len() {
                prefix.push(v);
                self.extend(prefix, out);
                prefix.pop();
            }
        }
    }

    /// Last vertex `w`: with `V` the matrix of the first `n` columns, the
    /// barycentric coordinates of 0 are proportional to `(adj(V)(-w), det V)`.
    fn close(&self, prefix: &[u32], out: &mut Vec<Vec<u32>>) {
        let n = self.n;
        // column c of V is the point prefix[c]
        let v = |r: usize, c: usize| self.points[prefix[c] as usize][r];
        let det = det_i64((0..n).map(|r| (0..n).map(|c| v(r, c)).collect()).collect());
        if det == 0 {
            return;
        }
        // adj(V)[i][j] = (-1)^(i+j) det(V without row j, column i)
        let mut adj = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<i64>> = (0..n)
                    .filter(|&r| r != j)
                    .map(|r| (0..n).filter(|&c| c != i).map(|c| v(r, c)).collect())
                    .collect();
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                adj[i][j] = sign * det_i64(minor);
            }
        }
        'last: for w in 0..1u32 << n {
            let wc = &self.points[w as usize];
            for row in &adj {
                let mu: i64 = -row.iter().zip(wc).map(|(a, x)| a * x).sum::<i64>();
                if mu.signum() != det.signum() {
                    continue 'last;
                }
            }
            let mut tuple = prefix.to_vec();
            tuple.push(w);
            out.push(tuple);
        }
    }
}

/// All of `V(n)` (or its slice with first entry `(-1,...,-1)`), in
/// lexicographic tuple order. Parallel over the first free slot.
pub fn enumerate_v(n: usize, strategy: VStrategy) -> Result<VSet> {
    if n == 0 || n > V_GUARD {
        return Err(Error::GuardExceeded(format!("V(n) is enumerated for 1 <= n <= {V_GUARD}, got {n}")));
    }
    let search = VSearch { n, points: (0..1u32 << n).map(|m| mask_to_coords(n, m)).collect() };
    let prefixes: Vec<Vec<u32>> = match strategy {
        VStrategy::Full => (0..1u32 << n).map(|v| vec![v]).collect(),
        VStrategy::FixedFirst if n == 1 => vec![vec![0]],
        VStrategy::FixedFirst => (0..1u32 << n)
            .map(|v| vec![0, v])
            .filter(|p| rank_i64(&p.iter().map(|&m| search.points[m as usize].clone()).collect::<Vec<_>>()) == 2)
            .collect(),
    };
    let tuples = par::flat_map(&prefixes, |p| {
        let mut out = Vec::new();
        let mut prefix = p.clone();
        if prefix.len() > n {
            return out;
        }
        search.extend(&mut prefix, &mut out);
        out
    });
    Ok(VSet { n, strategy, tuples })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaReport {
    pub n: usize,
    pub strategy: VStrategy,
    /// Tuples actually enumerated.
    pub enumerated_tuples: usize,
    /// `|V(n)|`.
    pub v_count: u128,
    /// Order of the group acting on the enumerated tuples.
    pub group_order: usize,
    pub orbits: usize,
    pub free: bool,
    /// `|V(n)| / (2^n n!)`.
    pub quotient: u128,
    pub beta: u128,
}

/// `β(n)`: orbits of signed permutations on `V(n)`. For `n = 5` the first
/// entry is fixed and orbits are counted under its stabilizer, the plain
/// permutations.
pub fn beta(n: usize) -> Result<BetaReport> {
    let strategy = if n >= 5 { VStrategy::FixedFirst } else { VStrategy::Full };
    beta_with(n, strategy)
}

pub fn beta_with(n: usize, strategy: VStrategy) -> Result<BetaReport> {
    let set = enumerate_v(n, strategy)?;
    let group = match strategy {
        VStrategy::Full => enumerate_group(n)?,
        VStrategy::FixedFirst => permutation_subgroup(n),
    };
    let count = orbit_count(&set.tuples, &group, |g, t| g.act_masks(t))?;
    if !count.free {
        return Err(Error::NotFree(format!("signed permutations on V({n})")));
    }
    let order = (1u128 << n) * factorial(n as u64);
    let v_count = set.full_count();
    if v_count % order != 0 || v_count / order != count.orbits as u128 {
        return Err(Error::NotFree(format!("|V({n})| = {v_count} is not {} orbits of size {order}", count.orbits)));
    }
    Ok(BetaReport {
        n,
        strategy,
        enumerated_tuples: set.tuples.len(),
        v_count,
        group_order: group.len(),
        orbits: count.orbits,
        free: count.free,
        quotient: v_count / order,
        beta: count.orbits as u128,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(4, 2), 7);
        assert_eq!(surjections(3, 3), 6);
        for m in 1..10 {
            assert_eq!(stirling2(m, m), 1);
            assert_eq!(stirling2(m, 0), 0);
        }
        assert_eq!(stirling2(0, 0), 1);
        assert_eq!(stirling2(3, 5), 0);
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(2, 2), 8);
        assert_eq!(sigma(3, 3), 48);
        assert_eq!(sigma(2, 3), 0);
        assert_eq!(sigma(4, 3), 576);
    }

    #[test]
    fn closed_forms() {
        let c = |m, n| count_box_simplex(m, n).unwrap().closed_form;
        assert_eq!((c(2, 2), c(2, 3), c(1, 1), c(3, 2), c(3, 3)), (15, 28, 4, 21, 40));
        let d = |m, n| count_diamond_simplex(m, n, None).unwrap().closed_form;
        assert_eq!((d(2, 2), d(3, 2), d(2, 3), d(3, 3)), (15, 27, 28, 100));
        let e = |m, n| count_diamond_diamond(m, n, None).unwrap().closed_form;
        assert_eq!((e(2, 2), e(2, 3), e(3, 2), e(3, 3)), (36, 90, 100, 318));
        assert_eq!(intersection_bound(3), 56);
        assert_eq!(intersection_bound(4), 210);
        assert_eq!(intersection_bound(10), 646646);
        assert_eq!(bound_box_diamond(2, 2).unwrap(), 36);
        assert_eq!(bound_box_diamond(3, 4).unwrap(), 320);
    }

    #[test]
    fn high_rank_terms_need_a_table() {
        assert_eq!(count_diamond_simplex(4, 4, None).unwrap_err(), Error::MissingHighRank(4));
        assert_eq!(count_diamond_diamond(4, 5, None).unwrap_err(), Error::MissingHighRank(4));
        let table = BTreeMap::from([(4usize, 1920u128)]);
        // 1 + 4 + 8*20 + 5*576 + 1*1920
        assert_eq!(count_diamond_simplex(4, 4, Some(&table)).unwrap().closed_form, 4965);
        assert!(count_diamond_diamond(4, 4, None).is_ok());
    }

    #[test]
    fn rank_bounds_are_tight_at_k_equals_m() {
        let (lo, hi) = diamond_simplex_rank_bounds(3, 3, 1).unwrap();
        assert_eq!((lo, hi), (48, 48));
        let (lo, hi) = diamond_simplex_rank_bounds(4, 3, 1).unwrap();
        assert_eq!((lo, hi), (576, 8 * 24 * 56));
    }

    #[test]
    fn small_v_sets() {
        assert_eq!(enumerate_v(1, VStrategy::Full).unwrap().tuples, vec![vec![0, 1], vec![1, 0]]);
        assert!(enumerate_v(2, VStrategy::Full).unwrap().tuples.is_empty());
        assert_eq!(enumerate_v(3, VStrategy::Full).unwrap().tuples.len(), 48);
        let fixed = enumerate_v(3, VStrategy::FixedFirst).unwrap();
        assert_eq!(fixed.full_count(), 48);
        assert!(enumerate_v(6, VStrategy::Full).is_err());
    }

    #[test]
    fn small_betas() {
        assert_eq!(beta(1).unwrap().beta, 1);
        assert_eq!(beta(2).unwrap().beta, 0);
        assert_eq!(beta(3).unwrap().beta, 1);
        let fixed = beta_with(3, VStrategy::FixedFirst).unwrap();
        assert_eq!((fixed.beta, fixed.v_count), (1, 48));
    }

    #[test]
    fn face_dims_of_centers() {
        let q = |p, d| Rational::new(p, d).unwrap();
        assert_eq!(center_face_dim(&[Rational::zero(), Rational::zero()]), 2);
        assert_eq!(center_face_dim(&[Rational::one(), Rational::zero()]), 0);
        assert_eq!(center_face_dim(&[q(1, 2), q(-1, 2)]), 1);
        assert_eq!(center_face_dim(&[q(1, 3), q(1, 3), q(1, 3)]), 2);
    }
}
