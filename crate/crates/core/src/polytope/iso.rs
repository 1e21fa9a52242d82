use super::Polytope;
use crate::error::{Error, Result};

/// Largest vertex count accepted by [`combinatorially_equal`].
pub const ISO_VERTEX_LIMIT: usize = 200;

struct Incidence {
    /// `facets[f]` is the sorted list of vertices on facet `f`.
    facets: Vec<Vec<usize>>,
    /// `common[u][v]` counts facets containing both `u` and `v`.
    common: Vec<Vec<usize>>,
}

impl Incidence {
    fn of(p: &Polytope) -> Result<Self> {
        let matrix = p.vertex_facet_incidence()?;
        let nv = matrix.len();
        let nf = p.facets()?.len();
        let mut facets: Vec<Vec<usize>> = (0..nf).map(|f| (0..nv).filter(|&v| matrix[v][f]).collect()).collect();
        facets.sort();
        let mut common = vec![vec![0; nv]; nv];
        for f in &facets {
            for &u in f {
                for &v in f {
                    common[u][v] += 1;
                }
            }
        }
        Ok(Self { facets, common })
    }

    fn vertex_count(&self) -> usize {
        self.common.len()
    }

    fn signature(&self, v: usize) -> (usize, Vec<usize>) {
        let mut row = self.common[v].clone();
        row.sort_unstable();
        (self.common[v][v], row)
    }
}

/// Whether `P` and `Q` have the same vertex-facet incidence structure up to
/// relabeling of vertices and facets.
pub fn combinatorially_equal(p: &Polytope, q: &Polytope) -> Result<bool> {
    let (np, nq) = (p.vertices()?.len(), q.vertices()?.len());
    if np.max(nq) > ISO_VERTEX_LIMIT {
        return Err(Error::GuardExceeded(format!(
            "combinatorial comparison supports at most {ISO_VERTEX_LIMIT} vertices (got {np} and {nq}); compare vertex and facet counts instead"
        )));
    }
    if np != nq || p.dimension()? != q.dimension()? || p.facets()?.len() != q.facets()?.len() {
        return Ok(false);
    }
    let a = Incidence::of(p)?;
    let b = Incidence::of(q)?;

    let sig_a: Vec<_> = (0..np).map(|v| a.signature(v)).collect();
    let sig_b: Vec<_> = (0..nq).map(|v| b.signature(v)).collect();
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return Ok(false);
    }
    let mut sizes_a: Vec<usize> = a.facets.iter().map(Vec::len).collect();
    let mut sizes_b: Vec<usize> = b.facets.iter().map(Vec::len).collect();
    sizes_a.sort_unstable();
    sizes_b.sort_unstable();
    if sizes_a != sizes_b {
        return Ok(false);
    }

    let order = assignment_order(&a);
    let candidates: Vec<Vec<usize>> =
        (0..np).map(|u| (0..nq).filter(|&v| sig_a[u] == sig_b[v]).collect()).collect();
    let mut search = Search { a: &a, b: &b, order, candidates, map: vec![usize::MAX; np], used: vec![false; nq] };
    Ok(search.extend(0))
}

/// Vertices in an order where each one shares as many facets as possible
/// with those already placed.
fn assignment_order(a: &Incidence) -> Vec<usize> {
    let n = a.vertex_count();
    let mut placed = vec![false; n];
    let mut score = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (score[v], a.common[v][v], std::cmp::Reverse(v)))
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
        for v in 0..n {
            score[v] += a.common[next][v];
        }
    }
    order
}

struct Search<'a> {
    a: &'a Incidence,
    b: &'a Incidence,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return self.facets_match();
        }
        let u = self.order[depth];
        for i in 0..self.candidates[u].len() {
            let v = self.candidates[u][i];
            if self.used[v] {
                continue;
            }
            let consistent =
                self.order[..depth].iter().all(|&w| self.a.common[u][w] == self.b.common[v][self.map[w]]);
            if !consistent {
                continue;
            }
            self.map[u] = v;
            self.used[v] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[v] = false;
            self.map[u] = usize::MAX;
        }
        false
    }

    fn facets_match(&self) -> bool {
        let mut mapped: Vec<Vec<usize>> = self
            .a
            .facets
            .iter()
            .map(|f| {
                let mut g: Vec<usize> = f.iter().map(|&v| self.map[v]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        mapped.sort();
        mapped == self.b.facets
    }
}
