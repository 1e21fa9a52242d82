//! Signed permutations (the hyperoctahedral group) and orbit counting.

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::QVector;
use crate::par;

/// Largest `n` for which [`enumerate_group`] lists the whole group.
pub const GROUP_GUARD: usize = 6;

/// `x -> y` with `y[perm[i]] = signs[i] * x[i]`. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: signs.len() });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidArgument(format!("signs must be ±1, got {signs:?}")));
        }
        Ok(Self { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        Self { perm: (0..n).collect(), signs: vec![1; n] }
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let signs = (0..other.degree()).map(|i| self.signs[other.perm[i]] * other.signs[i]).collect();
        Self { perm, signs }
    }

    pub fn inverse(&self) -> Self {
        let n = self.degree();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        Self { perm, signs }
    }

    pub fn act_point(&self, x: &QVector) -> Result<QVector> {
        let n = self.degree();
        if x.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: x.dim() });
        }
        let mut out = vec![crate::Rational::zero(); n];
        for i in 0..n {
            out[self.perm[i]] = if self.signs[i] < 0 { -&x[i] } else { x[i].clone() };
        }
        Ok(QVector::new(out))
    }

    /// Componentwise action; the order of the tuple is kept.
    pub fn act_tuple(&self, tuple: &[QVector]) -> Result<Vec<QVector>> {
        tuple.iter().map(|x| self.act_point(x)).collect()
    }

    /// Action on a cube vertex encoded as a bitmask (bit `i` set means
    /// coordinate `i` is `+1`).
    pub fn act_mask(&self, mask: u32) -> u32 {
        let mut out = 0;
        for i in 0..self.degree() {
            let bit = (mask >> i) & 1 ^ u32::from(self.signs[i] < 0);
            out |= bit << self.perm[i];
        }
        out
    }

    pub fn act_masks(&self, tuple: &[u32]) -> Vec<u32> {
        tuple.iter().map(|&m| self.act_mask(m)).collect()
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else { break };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("successor exists");
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

/// The `2^n n!` signed permutations of degree `n`: permutations in
/// lexicographic order, each followed by its sign patterns.
pub fn enumerate_group(n: usize) -> Result<Vec<SignedPermutation>> {
    if n > GROUP_GUARD {
        return Err(Error::GuardExceeded(format!("signed permutation group of degree {n} > {GROUP_GUARD}")));
    }
    let mut out = Vec::with_capacity((1 << n) * permutations(n).len());
    for perm in permutations(n) {
        for mask in 0..1u32 << n {
            let signs = (0..n).map(|i| if mask >> (n - 1 - i) & 1 == 1 { -1 } else { 1 }).collect();
            out.push(SignedPermutation { perm: perm.clone(), signs });
        }
    }
    Ok(out)
}

/// The permutations of degree `n` with no sign changes.
pub fn permutation_subgroup(n: usize) -> Vec<SignedPermutation> {
    permutations(n).into_iter().map(|perm| SignedPermutation { perm, signs: vec![1; n] }).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCount {
    pub orbits: usize,
    /// Every orbit has exactly `|group|` elements.
    pub free: bool,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Orbits of `group` on the finite set `elements` under `act`. The set must
/// be closed under the action.
pub fn orbit_count<T, G, F>(elements: &[T], group: &[G], act: F) -> Result<OrbitCount>
where
    T: Hash + Eq + Sync,
    G: Sync,
    F: Fn(&G, &T) -> T + Sync,
{
    let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, t)| (t, i)).collect();
    if index.len() != elements.len() {
        return Err(Error::InvalidArgument("orbit counting needs distinct elements".into()));
    }
    let images: Vec<Vec<usize>> = par::try_map(elements, |t| {
        group.iter().map(|g| index.get(&act(g, t)).copied().ok_or(Error::NotClosed)).collect()
    })?;
    let mut uf = UnionFind::new(elements.len());
    for (i, row) in images.iter().enumerate() {
        for &j in row {
            uf.union(i, j);
        }
    }
    let mut sizes: HashMap<usize, usize> = HashMap::new();
    for i in 0..elements.len() {
        *sizes.entry(uf.find(i)).or_default() += 1;
    }
    let free = sizes.values().all(|&s| s == group.len());
    Ok(OrbitCount { orbits: sizes.len(), free })
}
