//! Acceptance criteria, one test each. Every test prints a single
//! `criterion NN ... pass|fail` line before asserting; run with
//! `cargo test --test acceptance -- --nocapture` to see them.

use std::collections::BTreeMap;

use hompoly_core::counts::{self, Family};
use hompoly_core::experiments::{default_eps, perturbed_barycenter_run};
use hompoly_core::hom::{
    self, build_hom_standard, enumerate_vertex_maps, image_is_crosspolytope, image_polytope, map_rank,
    restrict_to_subcrosspolytope, AffineMapRep, HomPolytope,
};
use hompoly_core::linalg::affine_hull;
use hompoly_core::polytope::{combinatorially_equal, polar_dual, standard, Polytope, StandardKind};
use hompoly_core::verify::{run_claim, Params};
use hompoly_core::{QVector, Rational};
use itertools::Itertools;

use StandardKind::{Crosspolytope as D, Cube as C, Simplex as S};

fn report(id: u32, name: &str, ok: bool, detail: impl std::fmt::Display) {
    println!("criterion {id:02} {name:<28} {}  {detail}", if ok { "pass" } else { "fail" });
    assert!(ok, "criterion {id} ({name}) failed: {detail}");
}

fn vertex_maps(a: StandardKind, m: usize, b: StandardKind, n: usize) -> (HomPolytope, Vec<AffineMapRep>) {
    let hom = build_hom_standard(a, m, b, n).unwrap();
    let maps = enumerate_vertex_maps(&hom).unwrap();
    (hom, maps)
}

fn rank_hist(maps: &[AffineMapRep]) -> BTreeMap<usize, usize> {
    hom::rank_histogram(maps)
}

const BOX_SIMPLEX: [(usize, usize); 5] = [(1, 1), (2, 2), (2, 3), (3, 2), (3, 3)];

#[test]
fn c01_box_simplex_counts() {
    let mut details = Vec::new();
    let mut ok = true;
    for (m, n) in BOX_SIMPLEX {
        let count = vertex_maps(C, m, S, n).1.len();
        let expected = (n + 1) * (m * n + 1);
        ok &= count == expected;
        details.push(format!("({m},{n})={count}/{expected}"));
    }
    report(1, "box-simplex count", ok, details.join(" "));
}

#[test]
fn c02_box_simplex_rank_at_most_one() {
    let mut worst = 0;
    for (m, n) in BOX_SIMPLEX {
        worst = worst.max(vertex_maps(C, m, S, n).1.iter().map(map_rank).max().unwrap());
    }
    report(2, "box-simplex rank <= 1", worst <= 1, format!("max rank {worst}"));
}

#[test]
fn c03_realization() {
    let mut ok = true;
    let mut details = Vec::new();
    for (m, n) in BOX_SIMPLEX {
        let points = hom::bt_realization(m, n).unwrap().vertices;
        let d = n + n * m;
        let hull = affine_hull(&points).unwrap().dim();
        let as_polytope = Polytope::from_points(d, &points).unwrap();
        let in_convex_position = as_polytope.vertices().unwrap().len() == points.len();
        ok &= points.len() == (n + 1) * (m * n + 1) && hull == d && in_convex_position;
        details.push(format!("({m},{n}):{}pts,dim{hull}", points.len()));
    }
    let points = hom::bt_realization(2, 2).unwrap().vertices;
    let realized = Polytope::from_points(6, &points).unwrap();
    let hom = build_hom_standard(C, 2, S, 2).unwrap();
    let iso = combinatorially_equal(&realized, hom.polytope()).unwrap();
    ok &= iso;
    details.push(format!("iso(2,2)={iso}"));
    report(3, "realization", ok, details.join(" "));
}

#[test]
fn c04_beta_small() {
    let values: Vec<u128> = (1..=4).map(|n| counts::beta(n).unwrap().beta).collect();
    report(4, "beta(1..4)", values == [1, 0, 1, 5], format!("{values:?}"));
}

#[test]
#[ignore = "extended: several seconds in release, minutes in debug"]
fn c04_beta_five() {
    let r = counts::beta(5).unwrap();
    report(4, "beta(5) [extended]", r.beta == 408 && r.free, format!("beta={} |V|={}", r.beta, r.v_count));
}

fn stirling_by_recurrence(m: usize, n: usize) -> u128 {
    let mut table = vec![vec![0u128; n + 1]; m + 1];
    table[0][0] = 1;
    for i in 1..=m {
        for j in 1..=n.min(i) {
            table[i][j] = j as u128 * table[i - 1][j] + table[i - 1][j - 1];
        }
    }
    table[m][n]
}

fn brute_surjections(m: usize, n: usize) -> u128 {
    (0..n.pow(m as u32))
        .filter(|&code| {
            let mut hit = vec![false; n];
            let mut c = code;
            for _ in 0..m {
                hit[c % n] = true;
                c /= n;
            }
            hit.iter().all(|&h| h)
        })
        .count() as u128
}

#[test]
fn c05_sigma_identity() {
    let mut bad = Vec::new();
    for m in 1..=8u64 {
        for n in 1..=m {
            let sigma = counts::sigma(m, n);
            let via_stirling = (1u128 << m) * counts::factorial(n) * stirling_by_recurrence(m as usize, n as usize);
            let via_sum = (1i128 << m) * counts::surjections_inclusion_exclusion(m, n);
            let brute = if m <= 4 { Some((1u128 << m) * brute_surjections(m as usize, n as usize)) } else { None };
            if sigma != via_stirling || sigma as i128 != via_sum || brute.is_some_and(|b| b != sigma) {
                bad.push((m, n));
            }
        }
    }
    report(5, "sigma identity", bad.is_empty(), format!("36 pairs, mismatches {bad:?}"));
}

#[test]
fn c06_diamond_simplex_counts() {
    let mut ok = true;
    let mut details = Vec::new();
    for ((m, n), expected) in [(2, 2), (3, 2), (2, 3), (3, 3)].into_iter().zip([15u128, 27, 28, 100]) {
        let maps = vertex_maps(D, m, S, n).1;
        let formula = counts::closed_form(Family::DiamondSimplex, m as u64, n as u64, None).unwrap().closed_form;
        let rank2 = rank_hist(&maps).get(&2).copied().unwrap_or(0);
        ok &= maps.len() as u128 == formula && formula == expected && rank2 == 0;
        details.push(format!("({m},{n})={}/{formula} r2={rank2}", maps.len()));
    }
    report(6, "diamond-simplex count", ok, details.join(" "));
}

#[test]
fn c07_diamond_simplex_structure() {
    let (m, n) = (4, 3);
    let (_, maps) = vertex_maps(D, m, S, n);
    let simplex = standard(S, n).unwrap();
    let octahedron = standard(D, 3).unwrap();
    let source = standard(D, m).unwrap();
    let top: Vec<_> = maps.iter().filter(|f| map_rank(f) == n).collect();
    let mut restricts = 0;
    let mut octahedral = 0;
    let mut cross_images = 0u128;
    for f in &top {
        let sub = (0..m).combinations(n).any(|idx| {
            let g = restrict_to_subcrosspolytope(f, &idx).unwrap();
            hom::is_vertex_map(&g, &standard(D, n).unwrap(), &simplex).unwrap()
        });
        restricts += sub as usize;
        let image = image_polytope(f, &source).unwrap();
        octahedral += combinatorially_equal(&image, &octahedron).unwrap() as usize;
        cross_images += image_is_crosspolytope(f).unwrap() as u128;
    }
    let expected = counts::sigma(m as u64, n as u64) * counts::beta(n).unwrap().beta;
    let ok = restricts == top.len() && octahedral == top.len() && cross_images == expected;
    report(
        7,
        "diamond-simplex structure",
        ok,
        format!("rank-3 {} restrict {restricts} octahedra {octahedral} cross {cross_images}/{expected}", top.len()),
    );
}

#[test]
fn c08_diamond_diamond() {
    let mut ok = true;
    let mut details = Vec::new();
    for ((m, n), expected) in [(2, 2), (2, 3), (3, 2)].into_iter().zip([Some(36u128), Some(90), None]) {
        let (_, maps) = vertex_maps(D, m, D, n);
        let formula = counts::closed_form(Family::DiamondDiamond, m as u64, n as u64, None).unwrap().closed_form;
        ok &= maps.len() as u128 == formula && expected.is_none_or(|e| e == formula);
        let target = standard(D, n).unwrap();
        let mut centered = 0;
        for f in &maps {
            if !target.contains_interior(&hom::eval_center(f)).unwrap() {
                continue;
            }
            centered += 1;
            let a = f.linear_part();
            let columns_are_vertices = (0..m).all(|j| {
                let col = a.column(j);
                col.iter().filter(|x| !x.is_zero()).count() == 1 && col.iter().all(|x| x.is_zero() || x.abs() == Rational::one())
            });
            ok &= f.translation().is_zero() && columns_are_vertices;
        }
        details.push(format!("({m},{n})={}/{formula} centered={centered}", maps.len()));
    }
    report(8, "diamond-diamond", ok, details.join(" "));
}

#[test]
fn c09_product_isomorphisms() {
    let simplex_line = vertex_maps(S, 1, S, 2).1.len();
    let cube_cube = vertex_maps(C, 1, C, 1).1.len();
    let (diamond_hom, diamond_cube) = vertex_maps(D, 2, C, 1);
    let square = standard(D, 2).unwrap().vertices().unwrap().len();
    let bipyramid_square = hompoly_core::polytope::bipyramid(&standard(C, 2).unwrap()).unwrap();
    let iso = combinatorially_equal(diamond_hom.polytope(), &bipyramid_square).unwrap();
    let ok = simplex_line == 9 && cube_cube == 4 && cube_cube == square && diamond_cube.len() == 6 && iso;
    report(
        9,
        "product isomorphisms",
        ok,
        format!("{simplex_line} {cube_cube}={square} {}=6 iso={iso}", diamond_cube.len()),
    );
}

#[test]
fn c10_intersection_table() {
    let eps = default_eps();
    let mut ok = true;
    let mut details = Vec::new();
    for (n, expected) in [(3, 12), (4, 30), (5, 60), (6, 140)] {
        let runs: Vec<_> = [1u64, 2, 3].iter().map(|&s| perturbed_barycenter_run(n, s, &eps).unwrap()).collect();
        let counts: Vec<usize> = runs.iter().map(|r| r.vertex_count).collect();
        let redraws: usize = runs.iter().map(|r| r.redraws).sum();
        let bound = counts::intersection_bound(n as u64);
        ok &= counts.iter().all(|&c| c == expected && c as u128 <= bound);
        details.push(format!("n={n}:{counts:?}<={bound} redraws={redraws}"));
    }
    report(10, "intersection table", ok, details.join(" "));
}

#[test]
fn c11_bounds() {
    let mut ok = true;
    let mut details = Vec::new();
    let beta3 = counts::beta(3).unwrap().beta;
    for m in [3, 4] {
        let (lower, upper) = counts::diamond_simplex_rank_bounds(m, 3, beta3).unwrap();
        let middle = vertex_maps(D, m as usize, S, 3).1.iter().filter(|f| map_rank(f) == 3).count() as u128;
        ok &= lower <= middle && middle <= upper;
        details.push(format!("m={m}:{lower}<={middle}<={upper}"));
    }
    let bound = counts::bound_box_diamond(2, 2).unwrap();
    let actual = vertex_maps(C, 2, D, 2).1.len() as u128;
    ok &= bound <= actual;
    details.push(format!("box-diamond(2,2):{bound}<={actual}"));
    report(11, "bounds", ok, details.join(" "));
}

#[test]
#[ignore = "extended: a few minutes in release"]
fn c12_box_diamond_large() {
    let maps = vertex_maps(C, 3, D, 4).1;
    report(12, "Hom(cube3, cross4) [extended]", maps.len() == 27968, format!("{} vertices {:?}", maps.len(), rank_hist(&maps)));
}

#[test]
#[ignore = "extended: (5,4) crosspolytope image dichotomy"]
fn c07_dichotomy_five_four() {
    let shape = run_claim("diamond-image-shape", &Params::mn(5, 4)).unwrap();
    let count = run_claim("diamond-image-count", &Params::mn(5, 4)).unwrap();
    report(
        7,
        "(5,4) image dichotomy [extended]",
        shape.passed() && count.passed(),
        format!("{} {}", shape.summary, count.summary),
    );
}

fn symmetric_standard(kind: StandardKind, n: usize) -> Polytope {
    let p = standard(kind, n).unwrap();
    let c = QVector::centroid(p.vertices().unwrap()).unwrap().neg();
    hompoly_core::polytope::translate(&p, &c).unwrap()
}

#[test]
fn c13_property_sweep() {
    let mut failures = Vec::new();
    let mut checked = 0;

    for kind in [S, C, D] {
        for n in 1..=4 {
            let p = symmetric_standard(kind, n);
            let back = polar_dual(&polar_dual(&p).unwrap()).unwrap();
            checked += 1;
            if back.vertices().unwrap() != p.vertices().unwrap() {
                failures.push(format!("duality {kind}{n}"));
            }
            let from_h = Polytope::from_hrep(n, p.hrep().unwrap().clone()).unwrap();
            let from_v = Polytope::from_points(n, from_h.vertices().unwrap()).unwrap();
            checked += 1;
            if from_h.vertices().unwrap() != p.vertices().unwrap() || from_v.hrep().unwrap().canonical() != p.hrep().unwrap().canonical() {
                failures.push(format!("round trip {kind}{n}"));
            }
        }
    }

    let homs = [(S, 1, S, 2), (C, 2, S, 2), (D, 2, D, 2), (D, 3, S, 3), (C, 2, D, 2), (S, 2, C, 2), (C, 3, S, 2), (D, 2, C, 2)];
    for (a, m, b, n) in homs {
        let (hom, maps) = vertex_maps(a, m, b, n);
        let flat: Vec<QVector> = maps.iter().map(AffineMapRep::flatten).collect();
        checked += 1;
        if affine_hull(&flat).unwrap().dim() != m * n + n || hom.dimension() != m * n + n {
            failures.push(format!("dimension {a}{m}->{b}{n}"));
        }
        if a == D {
            for f in &maps {
                checked += 1;
                if !hom::crosspolytope_vertex_image_law(f, hom.target()).unwrap() {
                    failures.push(format!("vertex image {a}{m}->{b}{n}"));
                }
            }
        }
        if b == S {
            for f in &maps {
                checked += 1;
                if !hom::simplex_face_law(f, hom.source()).unwrap().holds() {
                    failures.push(format!("face law {a}{m}->{b}{n}"));
                }
            }
        }
    }
    report(13, "property sweep", failures.is_empty(), format!("{checked} checks, counterexamples {failures:?}"));
}
