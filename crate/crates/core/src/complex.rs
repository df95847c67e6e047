//! Bigraded complexes of free abelian groups and their homology.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integer::Integer;
use crate::linalg::{elementary_divisors, homology_at, ElementaryDivisors, HomologySummary, IntegerMatrix};
use crate::par::{self, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// Differentials lower the degree by one.
    Homological,
    /// Differentials raise the degree by one.
    Cohomological,
}

impl Direction {
    pub fn step(self) -> i64 {
        match self {
            Direction::Homological => -1,
            Direction::Cohomological => 1,
        }
    }
}

/// Homology keyed by `(degree, q)`.
pub type BigradedHomology = BTreeMap<(i64, i64), HomologySummary>;

/// A complex of free abelian groups split into q-degree blocks.
///
/// `ranks[(n, q)]` is the rank of the block `C_{n,q}`; `differentials[(n, q)]`
/// maps `C_{n,q}` to `C_{n+step,q}`. Missing differentials are zero maps.
/// Homology is only reported for degrees inside `certified`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    direction: Direction,
    ranks: BTreeMap<(i64, i64), usize>,
    differentials: BTreeMap<(i64, i64), IntegerMatrix>,
    certified: RangeInclusive<i64>,
}

impl ChainComplex {
    /// Assembles a complex from blocks, checking every block shape.
    pub fn from_blocks(
        direction: Direction,
        ranks: BTreeMap<(i64, i64), usize>,
        differentials: BTreeMap<(i64, i64), IntegerMatrix>,
        certified: RangeInclusive<i64>,
    ) -> Result<Self> {
        let step = direction.step();
        let ranks: BTreeMap<_, _> = ranks.into_iter().filter(|(_, r)| *r > 0).collect();
        let rank = |k: &(i64, i64)| ranks.get(k).copied().unwrap_or(0);
        for (&(n, q), d) in &differentials {
            let expect = (rank(&(n + step, q)), rank(&(n, q)));
            if d.shape() != expect {
                return Err(Error::ShapeMismatch { left: d.shape(), right: expect });
            }
        }
        let differentials = differentials.into_iter().filter(|(_, d)| !d.is_zero()).collect();
        Ok(ChainComplex { direction, ranks, differentials, certified })
    }

    /// Builds a complex from whole chain groups whose generators carry
    /// q-degrees; each differential is split into q-blocks.
    ///
    /// `differentials[n]` lists `(row in C_{n+step}, column in C_n, value)`.
    pub fn from_graded_generators(
        direction: Direction,
        generators: &BTreeMap<i64, Vec<i64>>,
        differentials: BTreeMap<i64, Vec<(usize, usize, Integer)>>,
        certified: RangeInclusive<i64>,
    ) -> Result<Self> {
        let step = direction.step();
        // (q, index inside the q-block) for every generator.
        let mut local: BTreeMap<i64, Vec<(i64, usize)>> = BTreeMap::new();
        let mut ranks: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        for (&n, qs) in generators {
            let loc = qs
                .iter()
                .map(|&q| {
                    let r = ranks.entry((n, q)).or_insert(0);
                    *r += 1;
                    (q, *r - 1)
                })
                .collect();
            local.insert(n, loc);
        }
        let empty = Vec::new();
        let mut blocks = BTreeMap::new();
        for (n, triplets) in differentials {
            let src = local.get(&n).unwrap_or(&empty);
            let dst = local.get(&(n + step)).unwrap_or(&empty);
            let mut per_q: BTreeMap<i64, Vec<(usize, usize, Integer)>> = BTreeMap::new();
            for (row, col, v) in triplets {
                let (q_src, c) = src[col];
                let (q_dst, r) = dst[row];
                if q_src != q_dst {
                    return Err(Error::GradingBroken { degree: n });
                }
                per_q.entry(q_src).or_default().push((r, c, v));
            }
            for (q, trip) in per_q {
                let rows = ranks.get(&(n + step, q)).copied().unwrap_or(0);
                let cols = ranks[&(n, q)];
                blocks.insert((n, q), IntegerMatrix::from_triplets(rows, cols, trip));
            }
        }
        ChainComplex::from_blocks(direction, ranks, blocks, certified)
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn certified_range(&self) -> RangeInclusive<i64> {
        self.certified.clone()
    }

    pub fn rank(&self, degree: i64, q: i64) -> usize {
        self.ranks.get(&(degree, q)).copied().unwrap_or(0)
    }

    /// Total rank of `C_n` summed over q.
    pub fn total_rank(&self, degree: i64) -> usize {
        self.ranks.iter().filter(|((n, _), _)| *n == degree).map(|(_, r)| r).sum()
    }

    pub fn ranks(&self) -> &BTreeMap<(i64, i64), usize> {
        &self.ranks
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.ranks.keys().map(|(n, _)| *n).dedup().collect()
    }

    pub fn q_degrees(&self) -> Vec<i64> {
        self.ranks.keys().map(|(_, q)| *q).sorted_unstable().dedup().collect()
    }

    /// The block of the differential leaving `C_{n,q}` (a zero matrix of the
    /// right shape when absent).
    pub fn differential(&self, degree: i64, q: i64) -> IntegerMatrix {
        match self.differentials.get(&(degree, q)) {
            Some(d) => d.clone(),
            None => IntegerMatrix::zeros(self.rank(degree + self.direction.step(), q), self.rank(degree, q)),
        }
    }

    pub fn differential_blocks(&self) -> &BTreeMap<(i64, i64), IntegerMatrix> {
        &self.differentials
    }

    /// Checks `d ∘ d = 0` on every pair of consecutive blocks.
    pub fn check_square_zero(&self) -> Result<()> {
        let step = self.direction.step();
        for (&(n, q), d) in &self.differentials {
            if let Some(next) = self.differentials.get(&(n + step, q)) {
                if !next.mul(d)?.is_zero() {
                    return Err(Error::CompositionNonzero { degree: Some(n), q: Some(q) });
                }
            }
        }
        Ok(())
    }

    /// Restricts to one q-degree.
    pub fn q_slice(&self, q: i64) -> ChainComplex {
        ChainComplex {
            direction: self.direction,
            ranks: self.ranks.iter().filter(|((_, j), _)| *j == q).map(|(k, v)| (*k, *v)).collect(),
            differentials: self.differentials.iter().filter(|((_, j), _)| *j == q).map(|(k, v)| (*k, v.clone())).collect(),
            certified: self.certified.clone(),
        }
    }

    /// Relabels the generators of every block by a permutation; homology is
    /// unchanged. `perms[(n, q)][i]` is the new index of generator `i`.
    pub fn permuted(&self, perms: &BTreeMap<(i64, i64), Vec<usize>>) -> ChainComplex {
        let step = self.direction.step();
        let ident = |k: &(i64, i64)| (0..self.rank(k.0, k.1)).collect::<Vec<_>>();
        let differentials = self
            .differentials
            .iter()
            .map(|(&(n, q), d)| {
                let src = perms.get(&(n, q)).cloned().unwrap_or_else(|| ident(&(n, q)));
                let dst = perms.get(&(n + step, q)).cloned().unwrap_or_else(|| ident(&(n + step, q)));
                ((n, q), d.permuted(&dst, &src))
            })
            .collect();
        ChainComplex { direction: self.direction, ranks: self.ranks.clone(), differentials, certified: self.certified.clone() }
    }

    /// Concatenates complexes living in disjoint q-degrees.
    pub fn merge_q_slices(slices: Vec<ChainComplex>) -> Result<ChainComplex> {
        let mut it = slices.into_iter();
        let Some(mut acc) = it.next() else {
            return Err(Error::Unsupported("no slices to merge".into()));
        };
        for s in it {
            for (k, v) in s.ranks {
                if acc.ranks.insert(k, v).is_some() {
                    return Err(Error::Unsupported(format!("q-slices overlap at {k:?}")));
                }
            }
            acc.differentials.extend(s.differentials);
        }
        Ok(acc)
    }
}

/// Homology of every populated bidegree inside the certified range.
pub fn complex_homology(c: &ChainComplex) -> Result<BigradedHomology> {
    complex_homology_with(c, Execution::default())
}

/// As [`complex_homology`], with an explicit choice of parallelism. The
/// invariant factors of all blocks are computed independently.
pub fn complex_homology_with(c: &ChainComplex, exec: Execution) -> Result<BigradedHomology> {
    let step = c.direction.step();
    let blocks: Vec<(&(i64, i64), &IntegerMatrix)> = c.differentials.iter().collect();
    let composed = par::map(exec, &blocks, |(&(n, q), d)| match c.differentials.get(&(n + step, q)) {
        Some(next) => next.mul(d).map(|p| p.is_zero()),
        None => Ok(true),
    });
    for (ok, (&(n, q), _)) in composed.into_iter().zip(&blocks) {
        if !ok? {
            return Err(Error::CompositionNonzero { degree: Some(n), q: Some(q) });
        }
    }
    // Largest blocks first so they do not end up last on a single thread.
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(blocks[i].1.nnz()));
    let divisors = par::map(exec, &order, |&i| elementary_divisors(blocks[i].1));
    let mut by_block: BTreeMap<(i64, i64), ElementaryDivisors> = BTreeMap::new();
    for (i, e) in order.into_iter().zip(divisors) {
        by_block.insert(*blocks[i].0, e);
    }
    let none = ElementaryDivisors::default();
    let mut out = BTreeMap::new();
    for (&(n, q), &rank) in &c.ranks {
        if !c.certified.contains(&n) {
            continue;
        }
        let outgoing = by_block.get(&(n, q)).unwrap_or(&none);
        let incoming = by_block.get(&(n - step, q)).unwrap_or(&none);
        let free = rank - outgoing.rank - incoming.rank;
        out.insert((n, q), HomologySummary::new(free, incoming.torsion.clone()));
    }
    Ok(out)
}

/// Reference route: every bidegree through [`homology_at`] (dense Smith
/// forms with kernel bases). Meant for small complexes and cross-checks.
pub fn complex_homology_by_kernels(c: &ChainComplex) -> Result<BigradedHomology> {
    let step = c.direction.step();
    let mut out = BTreeMap::new();
    for &(n, q) in c.ranks.keys() {
        if !c.certified.contains(&n) {
            continue;
        }
        let d_out = c.differential(n, q);
        let d_in = match c.differentials.get(&(n - step, q)) {
            Some(d) => d.clone(),
            None => IntegerMatrix::zeros(c.rank(n, q), c.rank(n - step, q)),
        };
        let h = homology_at(&d_in, &d_out).map_err(|e| match e {
            Error::CompositionNonzero { .. } => Error::CompositionNonzero { degree: Some(n - step), q: Some(q) },
            other => other,
        })?;
        out.insert((n, q), h);
    }
    Ok(out)
}

/// Drops zero groups.
pub fn nonzero(h: &BigradedHomology) -> BigradedHomology {
    h.iter().filter(|(_, s)| !s.is_zero()).map(|(k, v)| (*k, v.clone())).collect()
}
