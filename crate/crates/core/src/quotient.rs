//! The finite graph on blocks through which every integral and fractional
//! parameter of a step graphon is evaluated.
//!
//! Blocks `i != j` are adjacent when `W` is positive on `A_i x A_j`. Blocks
//! with a positive diagonal value ("looped") can meet no independent set in
//! positive measure, since any positive-measure subset of such a block
//! carries positive mass of `W` on its square.
//!
//! Search routines run on the *reduced* quotient: looped blocks are dropped
//! and loop-free blocks with identical neighbourhoods (non-adjacent twins)
//! are merged, adding their measures. Every parameter computed here is
//! invariant under that merge.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::graphon::{support_structure, BlockSet, BlockStructure, StepGraphon};
use crate::rational::Rational;

/// Hard limit on reduced quotient size for exponential searches.
pub const MAX_QUOTIENT_BLOCKS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGraph {
    pub graph: FiniteGraph,
    pub positive_loops: BlockSet,
}

impl QuotientGraph {
    pub fn from_structure(s: &BlockStructure) -> Self {
        let m = s.blocks();
        let edges = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .filter(|&(i, j)| s.class(i, j).admits_edge());
        let graph = FiniteGraph::new(m, edges).expect("block pairs are valid edges");
        let positive_loops = BlockSet::new((0..m).filter(|&i| s.loop_positive(i)));
        QuotientGraph {
            graph,
            positive_loops,
        }
    }

    pub fn of(w: &StepGraphon) -> Self {
        Self::from_structure(&support_structure(w))
    }
}

/// Loop-free, twin-free quotient with bitmask adjacency.
#[derive(Debug, Clone)]
pub(crate) struct Reduced {
    /// Original blocks merged into each reduced vertex, ascending.
    pub groups: Vec<Vec<usize>>,
    pub adj: Vec<u32>,
    pub weight: Vec<Rational>,
}

impl Reduced {
    pub fn of(w: &StepGraphon) -> Result<Self> {
        let q = QuotientGraph::of(w);
        let m = w.blocks();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for b in 0..m {
            if q.positive_loops.contains(b) {
                continue;
            }
            let nbrs: Vec<usize> = q
                .graph
                .neighbors(b)
                .filter(|&u| !q.positive_loops.contains(u))
                .collect();
            match index.get(&nbrs) {
                Some(&g) => groups[g].push(b),
                None => {
                    index.insert(nbrs, groups.len());
                    groups.push(vec![b]);
                }
            }
        }
        if groups.len() > MAX_QUOTIENT_BLOCKS {
            return Err(Error::TooLarge {
                what: "reduced quotient size",
                size: groups.len(),
                limit: MAX_QUOTIENT_BLOCKS,
            });
        }
        let adj = groups
            .iter()
            .map(|gi| {
                groups
                    .iter()
                    .enumerate()
                    .filter(|(_, gj)| q.graph.has_edge(gi[0], gj[0]))
                    .fold(0u32, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        let weight = groups
            .iter()
            .map(|g| g.iter().map(|&b| w.measure(b)).sum())
            .collect();
        Ok(Reduced {
            groups,
            adj,
            weight,
        })
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn full_mask(&self) -> u32 {
        if self.len() == 32 {
            u32::MAX
        } else {
            (1u32 << self.len()) - 1
        }
    }

    pub fn expand(&self, mask: u32) -> BlockSet {
        BlockSet::new(
            (0..self.len())
                .filter(|&v| mask >> v & 1 == 1)
                .flat_map(|v| self.groups[v].iter().copied()),
        )
    }

    pub fn mask_weight(&self, mask: u32) -> Rational {
        (0..self.len())
            .filter(|&v| mask >> v & 1 == 1)
            .fold(Rational::zero(), |acc, v| acc + &self.weight[v])
    }

    #[cfg(test)]
    pub fn is_independent(&self, mask: u32) -> bool {
        (0..self.len()).all(|v| mask >> v & 1 == 0 || self.adj[v] & mask == 0)
    }

    /// All maximal independent sets, by Bron–Kerbosch with pivoting on the
    /// complement graph. Sorted ascending as masks.
    pub fn maximal_independent_sets(&self) -> Vec<u32> {
        let n = self.len();
        let non_adj: Vec<u32> = (0..n)
            .map(|v| !self.adj[v] & self.full_mask() & !(1 << v))
            .collect();
        let mut out = Vec::new();
        bron_kerbosch(&non_adj, 0, self.full_mask(), 0, &mut out);
        out.sort_unstable();
        out
    }

    /// Maximum clique size (at least 1 for a nonempty graph).
    pub fn clique_number(&self) -> (usize, u32) {
        let mut best = (0usize, 0u32);
        max_clique(&self.adj, 0, self.full_mask(), &mut best);
        best
    }

    /// Exact chromatic number with an optimal colouring (colour per vertex).
    pub fn chromatic_number(&self) -> (usize, Vec<usize>) {
        let n = self.len();
        if n == 0 {
            return (0, Vec::new());
        }
        let lower = self.clique_number().0.max(1);
        for k in lower..=n {
            if let Some(c) = self.colour_with(k) {
                return (k, c);
            }
        }
        unreachable!("n colours always suffice")
    }

    /// DSATUR-ordered backtracking for a proper k-colouring.
    pub fn colour_with(&self, k: usize) -> Option<Vec<usize>> {
        let n = self.len();
        let mut colour = vec![usize::MAX; n];
        fn go(adj: &[u32], colour: &mut Vec<usize>, k: usize, done: usize) -> bool {
            let n = adj.len();
            if done == n {
                return true;
            }
            // most saturated uncoloured vertex, ties by degree then index
            let mut pick = None;
            let mut key = (0usize, 0u32);
            for v in 0..n {
                if colour[v] != usize::MAX {
                    continue;
                }
                let mut seen = 0u64;
                for u in 0..n {
                    if adj[v] >> u & 1 == 1 && colour[u] != usize::MAX {
                        seen |= 1 << colour[u];
                    }
                }
                let cand = (seen.count_ones() as usize, adj[v].count_ones());
                if pick.is_none() || cand > key {
                    pick = Some((v, seen));
                    key = cand;
                }
            }
            let (v, seen) = pick.unwrap();
            let used = colour.iter().filter(|&&c| c != usize::MAX).max().map_or(0, |&c| c + 1);
            // symmetry: only one fresh colour is tried
            for c in 0..k.min(used + 1) {
                if seen >> c & 1 == 0 {
                    colour[v] = c;
                    if go(adj, colour, k, done + 1) {
                        return true;
                    }
                    colour[v] = usize::MAX;
                }
            }
            false
        }
        go(&self.adj, &mut colour, k, 0).then_some(colour)
    }
}

fn bron_kerbosch(non_adj: &[u32], r: u32, p: u32, x: u32, out: &mut Vec<u32>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    let pivot = (0..non_adj.len())
        .filter(|&u| (p | x) >> u & 1 == 1)
        .max_by_key(|&u| (non_adj[u] & p).count_ones())
        .expect("p or x is nonempty");
    let mut candidates = p & !non_adj[pivot];
    let (mut p, mut x) = (p, x);
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        let bit = 1u32 << v;
        bron_kerbosch(non_adj, r | bit, p & non_adj[v], x & non_adj[v], out);
        p &= !bit;
        x |= bit;
        candidates &= !bit;
    }
}

fn max_clique(adj: &[u32], r: u32, p: u32, best: &mut (usize, u32)) {
    let size = r.count_ones() as usize;
    if p == 0 {
        if size > best.0 {
            *best = (size, r);
        }
        return;
    }
    if size + p.count_ones() as usize <= best.0 {
        return;
    }
    let mut p = p;
    while p != 0 {
        if size + p.count_ones() as usize <= best.0 {
            return;
        }
        let v = p.trailing_zeros() as usize;
        let bit = 1u32 << v;
        max_clique(adj, r | bit, p & adj[v], best);
        p &= !bit;
    }
}
