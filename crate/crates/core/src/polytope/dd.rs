//! Double description method on homogeneous cones.
//!
//! Input: a cone `{y in Z^D : E y = 0, A y >= 0}`. Output: a basis of its
//! lineality space and its extreme rays modulo that space, as primitive
//! integer vectors.
//!
//! Equations are applied first, each one removing a lineality direction.
//! Inequalities that cut the remaining lineality space are applied next (the
//! cut direction becomes a ray). The rest are inserted one at a time, by
//! default choosing the remaining inequality violated by the fewest current
//! rays, ties broken by input index. New rays come from adjacent (positive, negative)
//! pairs.
//!
//! Arithmetic runs on `i64` with `i128` intermediates; on overflow the whole
//! run is repeated on `BigInt`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::bareiss::rank_of_integer_rows;
use crate::par;

/// How candidate ray pairs are tested for adjacency.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AdjacencyTest {
    /// No third ray is tight on every inequality the pair shares.
    #[default]
    Combinatorial,
    /// The shared tight inequalities have rank `dim - 2`.
    Algebraic,
}

#[derive(Clone, Debug, Default)]
pub struct ConeInput {
    pub dim: usize,
    pub equations: Vec<Vec<BigInt>>,
    pub inequalities: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConeOutput {
    pub lineality: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

/// Which inequality is inserted next.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum InsertionOrder {
    /// The one violated by the fewest current rays.
    #[default]
    FewestViolations,
    /// Input order. Good for block-structured systems such as hom-polytopes.
    Input,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DdOptions {
    pub adjacency: AdjacencyTest,
    pub order: InsertionOrder,
    /// Skip the `i64` attempt.
    pub force_bigint: bool,
}

#[derive(Debug)]
struct Overflow;

trait Coeff: Clone + Send + Sync + Debug + 'static {
    fn from_big(value: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn signum(&self) -> i8;
    fn dot(a: &[Self], b: &[Self]) -> Result<Self, Overflow>;
    /// `alpha * x - beta * y`, reduced to primitive form.
    fn combine(alpha: &Self, x: &[Self], beta: &Self, y: &[Self]) -> Result<Vec<Self>, Overflow>;
    fn negated(v: &[Self]) -> Result<Vec<Self>, Overflow>;
    fn negate(value: &Self) -> Result<Self, Overflow>;
}

impl Coeff for i64 {
    fn from_big(value: &BigInt) -> Option<Self> {
        value.to_i64()
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn signum(&self) -> i8 {
        i64::signum(*self) as i8
    }

    fn dot(a: &[Self], b: &[Self]) -> Result<Self, Overflow> {
        let mut acc: i128 = 0;
        for (x, y) in a.iter().zip(b) {
            acc = acc.checked_add(*x as i128 * *y as i128).ok_or(Overflow)?;
        }
        i64::try_from(acc).map_err(|_| Overflow)
    }

    fn combine(alpha: &Self, x: &[Self], beta: &Self, y: &[Self]) -> Result<Vec<Self>, Overflow> {
        let mut wide = Vec::with_capacity(x.len());
        let mut g: i128 = 0;
        for (xi, yi) in x.iter().zip(y) {
            let a = (*alpha as i128).checked_mul(*xi as i128).ok_or(Overflow)?;
            let b = (*beta as i128).checked_mul(*yi as i128).ok_or(Overflow)?;
            let v = a.checked_sub(b).ok_or(Overflow)?;
            g = g.gcd(&v);
            wide.push(v);
        }
        if g > 1 {
            for v in wide.iter_mut() {
                *v /= g;
            }
        }
        wide.into_iter().map(|v| i64::try_from(v).map_err(|_| Overflow)).collect()
    }

    fn negated(v: &[Self]) -> Result<Vec<Self>, Overflow> {
        v.iter().map(|x| x.checked_neg().ok_or(Overflow)).collect()
    }

    fn negate(value: &Self) -> Result<Self, Overflow> {
        value.checked_neg().ok_or(Overflow)
    }
}

impl Coeff for BigInt {
    fn from_big(value: &BigInt) -> Option<Self> {
        Some(value.clone())
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }

    fn signum(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }

    fn dot(a: &[Self], b: &[Self]) -> Result<Self, Overflow> {
        let mut acc = BigInt::zero();
        for (x, y) in a.iter().zip(b) {
            if !x.is_zero() && !y.is_zero() {
                acc += x * y;
            }
        }
        Ok(acc)
    }

    fn combine(alpha: &Self, x: &[Self], beta: &Self, y: &[Self]) -> Result<Vec<Self>, Overflow> {
        let mut out: Vec<BigInt> = x.iter().zip(y).map(|(xi, yi)| alpha * xi - beta * yi).collect();
        let g = out.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if !g.is_zero() && !g.is_one() {
            for v in out.iter_mut() {
                *v /= &g;
            }
        }
        Ok(out)
    }

    fn negated(v: &[Self]) -> Result<Vec<Self>, Overflow> {
        Ok(v.iter().map(|x| -x).collect())
    }

    fn negate(value: &Self) -> Result<Self, Overflow> {
        Ok(-value)
    }
}

/// Fixed-width bit set over inequality indices.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64).max(1)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + t)
            })
        })
    }
}

#[derive(Clone, Debug)]
struct Ray<C> {
    coords: Vec<C>,
    /// Inequalities (all of them, processed or not) on which the ray is zero.
    zero: Bits,
    /// Inequalities the ray violates.
    neg: Bits,
}

struct Kernel<'a, C> {
    dim: usize,
    equations: Vec<Vec<C>>,
    inequalities: &'a [Vec<C>],
    lineality: Vec<Vec<C>>,
    rays: Vec<Ray<C>>,
    processed: Bits,
    remaining: Vec<usize>,
    violations: Vec<usize>,
    equation_rank: usize,
    equation_rows: Vec<Vec<BigInt>>,
    adjacency: AdjacencyTest,
    order: InsertionOrder,
}

impl<'a, C: Coeff> Kernel<'a, C> {
    fn make_ray(&self, coords: Vec<C>) -> Result<Ray<C>, Overflow> {
        let m = self.inequalities.len();
        let mut zero = Bits::new(m);
        let mut neg = Bits::new(m);
        for (i, row) in self.inequalities.iter().enumerate() {
            match C::dot(row, &coords)?.signum() {
                0 => zero.set(i),
                s if s < 0 => neg.set(i),
                _ => {}
            }
        }
        Ok(Ray { coords, zero, neg })
    }

    fn count_ray(&mut self, ray_neg: &Bits, delta: isize) {
        for i in ray_neg.ones() {
            self.violations[i] = (self.violations[i] as isize + delta) as usize;
        }
    }

    fn apply_equations(&mut self) -> Result<(), Overflow> {
        let equations = std::mem::take(&mut self.equations);
        for eq in &equations {
            let values = self.lineality.iter().map(|l| C::dot(eq, l)).collect::<Result<Vec<_>, _>>()?;
            let Some(p) = values.iter().position(|v| v.signum() != 0) else {
                continue;
            };
            let pivot = self.lineality.remove(p);
            let a0 = values[p].clone();
            let mut rest = Vec::with_capacity(self.lineality.len());
            for (l, al) in self.lineality.iter().zip(values.iter().enumerate().filter(|(i, _)| *i != p).map(|(_, v)| v)) {
                rest.push(C::combine(&a0, l, al, &pivot)?);
            }
            self.lineality = rest;
            self.equation_rank += 1;
        }
        Ok(())
    }

    /// Cuts the lineality space with inequality `idx` if possible.
    fn try_break_lineality(&mut self, idx: usize) -> Result<bool, Overflow> {
        let row = &self.inequalities[idx];
        let values = self.lineality.iter().map(|l| C::dot(row, l)).collect::<Result<Vec<_>, _>>()?;
        let Some(p) = values.iter().position(|v| v.signum() != 0) else {
            return Ok(false);
        };
        let mut pivot = self.lineality.remove(p);
        let mut a0 = values[p].clone();
        if a0.signum() < 0 {
            pivot = C::negated(&pivot)?;
            a0 = C::negate(&a0)?;
        }
        let others: Vec<C> = values.iter().enumerate().filter(|(i, _)| *i != p).map(|(_, v)| v.clone()).collect();
        let mut rest = Vec::with_capacity(self.lineality.len());
        for (l, al) in self.lineality.iter().zip(&others) {
            rest.push(C::combine(&a0, l, al, &pivot)?);
        }
        self.lineality = rest;

        let old = std::mem::take(&mut self.rays);
        for ray in &old {
            let neg = ray.neg.clone();
            self.count_ray(&neg, -1);
        }
        let mut rays = Vec::with_capacity(old.len() + 1);
        for ray in old {
            let ar = C::dot(row, &ray.coords)?;
            let coords = C::combine(&a0, &ray.coords, &ar, &pivot)?;
            rays.push(self.make_ray(coords)?);
        }
        rays.push(self.make_ray(pivot)?);
        for ray in &rays {
            let neg = ray.neg.clone();
            self.count_ray(&neg, 1);
        }
        self.rays = rays;
        self.processed.set(idx);
        Ok(true)
    }

    fn adjacent(&self, a: usize, b: usize, common: &Bits, zero_lists: &[Vec<u32>]) -> bool {
        let pointed_dim = self.dim - self.equation_rank - self.lineality.len();
        if common.count() + 2 < pointed_dim {
            return false;
        }
        match self.adjacency {
            AdjacencyTest::Combinatorial => {
                let Some(shortest) = common.ones().min_by_key(|&j| zero_lists[j].len()) else {
                    // nothing shared: adjacent only if no third ray exists
                    return self.rays.len() == 2;
                };
                !zero_lists[shortest].iter().any(|&r| {
                    let r = r as usize;
                    r != a && r != b && common.is_subset_of(&self.rays[r].zero)
                })
            }
            AdjacencyTest::Algebraic => {
                // the pair spans a 2-face iff E plus the shared tight rows
                // have rank dim - 2 - dim(lineality)
                let rows: Vec<Vec<BigInt>> = self
                    .equation_rows
                    .iter()
                    .cloned()
                    .chain(common.ones().map(|j| self.inequalities[j].iter().map(C::to_big).collect()))
                    .collect();
                rank_of_integer_rows(rows) + 2 + self.lineality.len() >= self.dim
            }
        }
    }

    fn insert(&mut self, idx: usize) -> Result<(), Overflow> {
        let row = &self.inequalities[idx];
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut keep = Vec::new();
        for (i, ray) in self.rays.iter().enumerate() {
            if ray.neg.get(idx) {
                neg.push(i);
            } else {
                if !ray.zero.get(idx) {
                    pos.push(i);
                }
                keep.push(i);
            }
        }
        if neg.is_empty() {
            self.processed.set(idx);
            return Ok(());
        }

        let mut zero_lists: Vec<Vec<u32>> = vec![Vec::new(); self.inequalities.len()];
        if self.adjacency == AdjacencyTest::Combinatorial {
            for (i, ray) in self.rays.iter().enumerate() {
                for j in ray.zero.and(&self.processed).ones() {
                    zero_lists[j].push(i as u32);
                }
            }
        }

        let values: Vec<C> = par::try_map(&self.rays, |ray| C::dot(row, &ray.coords))?;
        let produced: Vec<Result<Vec<Ray<C>>, Overflow>> = par::map(&pos, |&p| {
            let mut out = Vec::new();
            let zp = self.rays[p].zero.and(&self.processed);
            for &n in &neg {
                let common = zp.and(&self.rays[n].zero);
                if !self.adjacent(p, n, &common, &zero_lists) {
                    continue;
                }
                // values[p] > 0 > values[n]: both weights positive
                let coords = C::combine(&values[p], &self.rays[n].coords, &values[n], &self.rays[p].coords)?;
                out.push(self.make_ray(coords)?);
            }
            Ok(out)
        });

        let mut next: Vec<Ray<C>> = Vec::with_capacity(keep.len());
        let old = std::mem::take(&mut self.rays);
        let mut old: Vec<Option<Ray<C>>> = old.into_iter().map(Some).collect();
        for &i in &neg {
            let ray = old[i].take().expect("each ray visited once");
            self.count_ray(&ray.neg, -1);
        }
        for &i in &keep {
            next.push(old[i].take().expect("each ray visited once"));
        }
        for batch in produced {
            for ray in batch? {
                self.count_ray(&ray.neg, 1);
                next.push(ray);
            }
        }
        self.rays = next;
        self.processed.set(idx);
        Ok(())
    }

    fn run(mut self) -> Result<(Vec<Vec<C>>, Vec<Vec<C>>), Overflow> {
        self.apply_equations()?;
        loop {
            if self.remaining.is_empty() {
                break;
            }
            if !self.lineality.is_empty() {
                let mut broke = false;
                for k in 0..self.remaining.len() {
                    let idx = self.remaining[k];
                    if self.try_break_lineality(idx)? {
                        self.remaining.remove(k);
                        broke = true;
                        break;
                    }
                }
                if broke {
                    continue;
                }
            }
            let (k, _) = self
                .remaining
                .iter()
                .enumerate()
                .min_by_key(|(_, &idx)| match self.order {
                    InsertionOrder::FewestViolations => (self.violations[idx], idx),
                    InsertionOrder::Input => (0, idx),
                })
                .expect("remaining is nonempty");
            let idx = self.remaining.remove(k);
            self.insert(idx)?;
        }
        Ok((self.lineality, self.rays.into_iter().map(|r| r.coords).collect()))
    }
}

fn run_with<C: Coeff>(input: &ConeInput, options: &DdOptions) -> Result<ConeOutput, Overflow> {
    let convert = |rows: &[Vec<BigInt>]| -> Result<Vec<Vec<C>>, Overflow> {
        rows.iter()
            .map(|row| row.iter().map(|x| C::from_big(x).ok_or(Overflow)).collect())
            .collect()
    };
    let equations = convert(&input.equations)?;
    let inequalities = convert(&input.inequalities)?;
    let m = inequalities.len();
    let mut lineality = Vec::with_capacity(input.dim);
    for i in 0..input.dim {
        let mut e = vec![C::from_big(&BigInt::zero()).ok_or(Overflow)?; input.dim];
        e[i] = C::from_big(&BigInt::one()).ok_or(Overflow)?;
        lineality.push(e);
    }
    let kernel = Kernel {
        dim: input.dim,
        equations,
        inequalities: &inequalities,
        lineality,
        rays: Vec::new(),
        processed: Bits::new(m),
        remaining: (0..m).collect(),
        violations: vec![0; m],
        equation_rank: 0,
        equation_rows: input.equations.clone(),
        adjacency: options.adjacency,
        order: options.order,
    };
    let (lineality, rays) = kernel.run()?;
    let to_big = |rows: Vec<Vec<C>>| rows.into_iter().map(|r| r.iter().map(C::to_big).collect()).collect();
    Ok(ConeOutput { lineality: to_big(lineality), rays: to_big(rays) })
}

/// Lineality basis and extreme rays of `{y : E y = 0, A y >= 0}`.
pub fn cone_dd(input: &ConeInput, options: &DdOptions) -> ConeOutput {
    if !options.force_bigint {
        if let Ok(out) = run_with::<i64>(input, options) {
            return out;
        }
    }
    run_with::<BigInt>(input, options).expect("BigInt arithmetic does not overflow")
}
