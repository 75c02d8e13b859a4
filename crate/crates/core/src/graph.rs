//! Simple loopless finite graphs, used as density patterns and as sample
//! output.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl FiniteGraph {
    /// Builds a graph on `n` vertices. Edges are unordered; duplicates are
    /// merged, loops and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(FiniteGraph { n, edges: set })
    }

    pub fn empty(n: usize) -> Self {
        FiniteGraph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        FiniteGraph { n, edges }
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!("cycle needs 3 vertices, got {n}")));
        }
        FiniteGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Graph whose edges are the set bits of `mask`, in the order
    /// `(0,1), (0,2), ..., (0,n-1), (1,2), ...`.
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        let mut edges = BTreeSet::new();
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> bit & 1 == 1 {
                    edges.insert((u, v));
                }
                bit += 1;
            }
        }
        FiniteGraph { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| u != v && self.has_edge(u, v))
    }

    pub fn complement(&self) -> FiniteGraph {
        let edges = (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v))
            .collect();
        FiniteGraph { n: self.n, edges }
    }

    /// Induced subgraph on `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> FiniteGraph {
        let mut edges = BTreeSet::new();
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    edges.insert((a, b));
                }
            }
        }
        FiniteGraph {
            n: vertices.len(),
            edges,
        }
    }

    /// Exact 2-colouring check by breadth-first search.
    pub fn is_bipartite(&self) -> bool {
        let adjacency: Vec<Vec<usize>> = (0..self.n).map(|v| self.neighbors(v).collect()).collect();
        let mut side = vec![None; self.n];
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &adjacency[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }
}

/// Canonical code of a graph on at most 11 vertices: the smallest edge mask
/// (in [`FiniteGraph::from_edge_mask`] order) over all relabellings that sort
/// vertices by a refinement-stable invariant.
pub fn canonical_mask(g: &FiniteGraph) -> u64 {
    let n = g.vertex_count();
    assert!(n <= 11, "canonical form supports at most 11 vertices");
    let degree: Vec<usize> = (0..n).map(|v| g.neighbors(v).count()).collect();
    let invariant: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).map(|u| degree[u]).collect();
            nd.sort_unstable();
            (degree[v], nd)
        })
        .collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| invariant[a].cmp(&invariant[b]));
    for v in order {
        match classes.last_mut() {
            Some(c) if invariant[c[0]] == invariant[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }

    fn permutations(classes: &[Vec<usize>], prefix: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        match classes.split_first() {
            None => visit(prefix),
            Some((first, rest)) => {
                let mut items = first.clone();
                permute_class(&mut items, 0, rest, prefix, visit);
            }
        }
    }

    fn permute_class(
        items: &mut Vec<usize>,
        k: usize,
        rest: &[Vec<usize>],
        prefix: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if k == items.len() {
            let len = prefix.len();
            prefix.extend_from_slice(items);
            permutations(rest, prefix, visit);
            prefix.truncate(len);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute_class(items, k + 1, rest, prefix, visit);
            items.swap(k, i);
        }
    }

    let mut best = u64::MAX;
    permutations(&classes, &mut Vec::with_capacity(n), &mut |perm: &[usize]| {
        let mut mask = 0u64;
        let mut bit = 0;
        for a in 0..n {
            for b in a + 1..n {
                if g.has_edge(perm[a], perm[b]) {
                    mask |= 1 << bit;
                }
                bit += 1;
            }
        }
        best = best.min(mask);
    });
    best
}

/// One representative of every isomorphism class of graphs on exactly `n`
/// vertices (`n <= 7`), built by vertex extension of the `n - 1` classes.
pub fn non_isomorphic_graphs(n: usize) -> Vec<FiniteGraph> {
    assert!(n <= 7, "graph catalogue supports at most 7 vertices");
    if n == 0 {
        return vec![FiniteGraph::empty(0)];
    }
    let smaller = non_isomorphic_graphs(n - 1);
    let mut seen = std::collections::BTreeSet::new();
    for g in &smaller {
        for nbrs in 0u32..1 << (n - 1) {
            let edges = g
                .edges()
                .chain((0..n - 1).filter(|u| nbrs >> u & 1 == 1).map(|u| (u, n - 1)));
            let h = FiniteGraph::new(n, edges).expect("valid extension");
            seen.insert(canonical_mask(&h));
        }
    }
    seen.into_iter().map(|mask| FiniteGraph::from_edge_mask(n, mask)).collect()
}

/// Isomorphism classes on `1..=max_n` vertices, smallest first.
pub fn graphs_up_to(max_n: usize) -> Vec<FiniteGraph> {
    (1..=max_n).flat_map(non_isomorphic_graphs).collect()
}
