//! Library results against independent brute-force computations.

use std::collections::BTreeSet;

use hompoly_core::counts::{self, enumerate_v, mask_to_coords, VStrategy};
use hompoly_core::experiments::{random_simplex_intersection_count, SeededGenerator};
use hompoly_core::group::{enumerate_group, orbit_count};
use hompoly_core::hom::{build_hom_standard, enumerate_vertex_maps};
use hompoly_core::linalg::Solution;
use hompoly_core::polytope::{standard, StandardKind};
use hompoly_core::{QMatrix, QVector, Rational};

/// Whether the origin is a strictly positive combination of the points with
/// unique barycentric coordinates.
fn origin_strictly_inside(points: &[Vec<i64>]) -> bool {
    let n = points[0].len();
    let k = points.len();
    let mut entries = Vec::with_capacity((n + 1) * k);
    for r in 0..n {
        entries.extend(points.iter().map(|p| Rational::from(p[r])));
    }
    entries.extend((0..k).map(|_| Rational::one()));
    let a = QMatrix::new(n + 1, k, entries).unwrap();
    let mut rhs = vec![Rational::zero(); n];
    rhs.push(Rational::one());
    match a.solve(&QVector::new(rhs)).unwrap() {
        Solution::Unique(lambda) => lambda.iter().all(Rational::is_positive),
        _ => false,
    }
}

fn v_by_barycentric_solve(n: usize) -> BTreeSet<Vec<u32>> {
    let verts = 1u32 << n;
    let total = (verts as usize).pow(n as u32 + 1);
    (0..total)
        .filter_map(|mut code| {
            let tuple: Vec<u32> = (0..=n)
                .map(|_| {
                    let v = (code % verts as usize) as u32;
                    code /= verts as usize;
                    v
                })
                .collect();
            let points: Vec<Vec<i64>> = tuple.iter().map(|&m| mask_to_coords(n, m)).collect();
            origin_strictly_inside(&points).then_some(tuple)
        })
        .collect()
}

#[test]
fn v_matches_barycentric_oracle() {
    for n in 1..=3 {
        let fast: BTreeSet<Vec<u32>> = enumerate_v(n, VStrategy::Full).unwrap().tuples.into_iter().collect();
        let slow = v_by_barycentric_solve(n);
        assert_eq!(fast, slow, "V({n})");
    }
}

#[test]
fn fixed_first_scales_to_full() {
    for n in 2..=4 {
        let full = enumerate_v(n, VStrategy::Full).unwrap();
        let fixed = enumerate_v(n, VStrategy::FixedFirst).unwrap();
        assert_eq!(fixed.full_count(), full.full_count(), "n = {n}");
        assert!(fixed.tuples.iter().all(|t| t[0] == 0));
    }
}

#[test]
fn orbit_count_matches_burnside() {
    let n = 3;
    let set = enumerate_v(n, VStrategy::Full).unwrap().tuples;
    let group = enumerate_group(n).unwrap();
    let fixed_points: usize = group.iter().map(|g| set.iter().filter(|t| &g.act_masks(t) == *t).count()).sum();
    assert_eq!(fixed_points % group.len(), 0);
    let count = orbit_count(&set, &group, |g, t| g.act_masks(t)).unwrap();
    assert_eq!(count.orbits, fixed_points / group.len());
    assert_eq!(count.orbits as u128, counts::beta(n).unwrap().beta);
}

#[test]
fn signed_permutations_form_a_group() {
    for n in 1..=4 {
        let group = enumerate_group(n).unwrap();
        assert_eq!(group.len() as u128, (1u128 << n) * counts::factorial(n as u64));
        let set: BTreeSet<(Vec<usize>, Vec<i8>)> = group.iter().map(|g| (g.perm().to_vec(), g.signs().to_vec())).collect();
        assert_eq!(set.len(), group.len());
        for g in group.iter().step_by(3) {
            for h in group.iter().step_by(5) {
                let gh = g.compose(h);
                assert!(set.contains(&(gh.perm().to_vec(), gh.signs().to_vec())));
            }
            let e = g.compose(&g.inverse());
            assert!(e.perm().iter().enumerate().all(|(i, &p)| i == p) && e.signs().iter().all(|&s| s == 1));
        }
    }
}

/// Set partitions of `{0..m}` into exactly `n` blocks, via restricted growth strings.
fn stirling_by_growth_strings(m: usize, n: usize) -> u128 {
    fn go(pos: usize, m: usize, max: usize, n: usize) -> u128 {
        if pos == m {
            return (max == n) as u128;
        }
        (0..=max.min(n - 1)).map(|b| go(pos + 1, m, max.max(b + 1), n)).sum()
    }
    if n == 0 {
        return (m == 0) as u128;
    }
    go(0, m, 0, n)
}

#[test]
fn stirling_and_surjections() {
    for m in 0..=9u64 {
        for n in 0..=m {
            assert_eq!(counts::stirling2(m, n), stirling_by_growth_strings(m as usize, n as usize), "S({m},{n})");
            assert_eq!(counts::surjections(m, n), counts::factorial(n) * counts::stirling2(m, n));
        }
    }
}

#[test]
fn binomials_by_pascal() {
    let mut row = vec![1u128];
    for n in 0..40u64 {
        for (k, &c) in row.iter().enumerate() {
            assert_eq!(counts::binomial(n, k as u64), c);
        }
        let mut next = vec![1u128; row.len() + 1];
        for k in 1..row.len() {
            next[k] = row[k - 1] + row[k];
        }
        row = next;
    }
}

#[test]
fn hom_from_simplex_is_vertex_tuples() {
    // vertex maps △_2 -> □_2 are exactly the affine interpolations of vertex triples
    let hom = build_hom_standard(StandardKind::Simplex, 2, StandardKind::Cube, 2).unwrap();
    let maps = enumerate_vertex_maps(&hom).unwrap();
    let cube = standard(StandardKind::Cube, 2).unwrap();
    let corners = cube.vertices().unwrap().to_vec();
    let simplex = standard(StandardKind::Simplex, 2).unwrap();
    let mut expected = BTreeSet::new();
    for a in &corners {
        for b in &corners {
            for c in &corners {
                expected.insert(vec![a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    let got: BTreeSet<Vec<QVector>> = maps
        .iter()
        .map(|f| simplex.vertices().unwrap().iter().map(|v| f.evaluate(v).unwrap()).collect())
        .collect();
    assert_eq!(maps.len(), 64);
    assert_eq!(got, expected);
}

#[test]
fn generator_matches_reference_lcg() {
    let seed = 42u64;
    let mut g = SeededGenerator::new(seed);
    let mut state = seed as u128;
    for _ in 0..100 {
        state = (state * 6364136223846793005 + 1442695040888963407) % (1u128 << 64);
        let k = ((state >> 11) % ((1 << 21) + 1)) as i64 - (1 << 20);
        assert_eq!(g.next_rational(), Rational::new(k, 1 << 20).unwrap());
    }
}

#[test]
fn random_intersection_fixture() {
    // (n, seed, vertex count), recorded from this generator
    for (n, seed, count) in [(3, 41, 12), (3, 42, 0), (3, 44, 10), (4, 41, 23), (4, 42, 19), (4, 44, 8)] {
        assert_eq!(random_simplex_intersection_count(n, seed).unwrap(), count, "n = {n}, seed = {seed}");
    }
}
