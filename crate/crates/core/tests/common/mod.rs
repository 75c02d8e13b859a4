//! Graph-side reference computations used as oracles by the integration
//! tests. Everything here works on the finite graph directly and never goes
//! through the block quotient.

#![allow(dead_code)]

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use stepgraphon::graph::FiniteGraph;
use stepgraphon::lp::{self, LinearProgram, LpSolution, Relation, Sense};
use stepgraphon::{Rational, StepGraphon};

pub fn r(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

fn adjacency(g: &FiniteGraph) -> Vec<u32> {
    let n = g.vertex_count();
    (0..n)
        .map(|v| (0..n).filter(|&u| g.has_edge(u, v)).fold(0, |acc, u| acc | 1 << u))
        .collect()
}

pub fn is_independent(g: &FiniteGraph, mask: u32) -> bool {
    let adj = adjacency(g);
    (0..g.vertex_count()).all(|v| mask >> v & 1 == 0 || adj[v] & mask == 0)
}

pub fn is_clique(g: &FiniteGraph, mask: u32) -> bool {
    let n = g.vertex_count();
    (0..n).all(|u| (u + 1..n).all(|v| mask >> u & 1 == 0 || mask >> v & 1 == 0 || g.has_edge(u, v)))
}

/// Nonempty independent vertex sets as bitmasks.
pub fn independent_sets(g: &FiniteGraph) -> Vec<u32> {
    (1u32..1 << g.vertex_count()).filter(|&m| is_independent(g, m)).collect()
}

pub fn alpha(g: &FiniteGraph) -> usize {
    (0u32..1 << g.vertex_count())
        .filter(|&m| is_independent(g, m))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn omega(g: &FiniteGraph) -> usize {
    (0u32..1 << g.vertex_count())
        .filter(|&m| is_clique(g, m))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Plain backtracking over vertices in index order.
pub fn chromatic(g: &FiniteGraph) -> usize {
    let n = g.vertex_count();
    fn fits(g: &FiniteGraph, colour: &mut Vec<usize>, k: usize) -> bool {
        let v = colour.len();
        if v == g.vertex_count() {
            return true;
        }
        for c in 0..k {
            if (0..v).all(|u| !g.has_edge(u, v) || colour[u] != c) {
                colour.push(c);
                if fits(g, colour, k) {
                    return true;
                }
                colour.pop();
            }
        }
        false
    }
    (0..=n).find(|&k| fits(g, &mut Vec::new(), k)).unwrap()
}

fn solved(program: &LinearProgram) -> Rational {
    match lp::solve(program).unwrap() {
        LpSolution::Optimal(opt) => {
            assert!(lp::certifies_optimality(program, &opt), "uncertified optimum");
            opt.value
        }
        other => panic!("expected an optimum, got {:?}", other.status()),
    }
}

/// Minimum total weight on all independent sets covering each vertex.
pub fn fractional_chromatic(g: &FiniteGraph) -> Rational {
    let sets = independent_sets(g);
    let mut program = LinearProgram::new(Sense::Minimize, vec![Rational::one(); sets.len()]);
    for v in 0..g.vertex_count() {
        let row = sets.iter().map(|s| if s >> v & 1 == 1 { Rational::one() } else { Rational::zero() }).collect();
        program.constrain(row, Relation::Ge, Rational::one());
    }
    solved(&program)
}

/// Maximum total vertex weight with weight at most 1 on every independent set.
pub fn fractional_clique(g: &FiniteGraph) -> Rational {
    let n = g.vertex_count();
    let mut program = LinearProgram::new(Sense::Maximize, vec![Rational::one(); n]);
    for s in independent_sets(g) {
        let row = (0..n).map(|v| if s >> v & 1 == 1 { Rational::one() } else { Rational::zero() }).collect();
        program.constrain(row, Relation::Le, Rational::one());
    }
    solved(&program)
}

/// `chi(H) = omega(H)` for every induced subgraph `H`.
pub fn is_perfect(g: &FiniteGraph) -> bool {
    let n = g.vertex_count();
    (1u32..1 << n).all(|mask| {
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let h = g.induced(&vs);
        chromatic(&h) == omega(&h)
    })
}

/// Whether some map `V(h) -> V(g)` sends edges to edges.
pub fn has_homomorphism(h: &FiniteGraph, g: &FiniteGraph) -> bool {
    fn go(h: &FiniteGraph, g: &FiniteGraph, phi: &mut Vec<usize>) -> bool {
        let v = phi.len();
        if v == h.vertex_count() {
            return true;
        }
        for x in 0..g.vertex_count() {
            if (0..v).all(|u| !h.has_edge(u, v) || g.has_edge(phi[u], x)) {
                phi.push(x);
                if go(h, g, phi) {
                    return true;
                }
                phi.pop();
            }
        }
        false
    }
    go(h, g, &mut Vec::new())
}

/// Whether `x` is a convex combination of indicators of independent sets
/// (the empty set included), by an equality-constrained feasibility LP.
pub fn in_independent_hull(g: &FiniteGraph, x: &[Rational]) -> bool {
    let n = g.vertex_count();
    let mut sets = vec![0u32];
    sets.extend(independent_sets(g));
    let mut program = LinearProgram::new(Sense::Minimize, vec![Rational::zero(); sets.len()]);
    program.constrain(vec![Rational::one(); sets.len()], Relation::Eq, Rational::one());
    for v in 0..n {
        let row = sets.iter().map(|s| if s >> v & 1 == 1 { Rational::one() } else { Rational::zero() }).collect();
        program.constrain(row, Relation::Eq, x[v].clone());
    }
    match lp::solve(&program).unwrap() {
        LpSolution::Optimal(opt) => program.is_feasible(&opt.primal),
        LpSolution::Infeasible { farkas } => {
            assert!(program.is_farkas_certificate(&farkas));
            false
        }
        LpSolution::Unbounded { .. } => unreachable!("zero objective"),
    }
}

/// `max_{S,T} |sum_{i in S, j in T} mu_i mu_j d_ij|` over all `4^k` pairs.
pub fn cut_norm_brute_force(measures: &[Rational], d: &[Vec<Rational>]) -> Rational {
    let k = measures.len();
    let mut best = Rational::zero();
    for s in 0u32..1 << k {
        for t in 0u32..1 << k {
            let mut sum = Rational::zero();
            for i in (0..k).filter(|&i| s >> i & 1 == 1) {
                for j in (0..k).filter(|&j| t >> j & 1 == 1) {
                    sum += &measures[i] * &measures[j] * &d[i][j];
                }
            }
            best = best.max(sum.abs());
        }
    }
    best
}

/// A random step graphon with `1..=max_m` blocks. Off-diagonal values are
/// 0 with probability 1/2, 1 with probability 1/4, and a random fraction
/// otherwise; the diagonal is 0 with probability `1 - loop_rate`.
pub fn random_graphon(rng: &mut ChaCha8Rng, max_m: usize, loop_rate: f64) -> StepGraphon {
    let m = rng.gen_range(1..=max_m);
    let weights: Vec<i64> = (0..m).map(|_| rng.gen_range(1..=6)).collect();
    let total: i64 = weights.iter().sum();
    let measures = weights.iter().map(|&w| r(w, total)).collect();
    let mut values = vec![vec![Rational::zero(); m]; m];
    let entry = |rng: &mut ChaCha8Rng| match rng.gen_range(0..4) {
        0 | 1 => Rational::zero(),
        2 => Rational::one(),
        _ => {
            let q = rng.gen_range(2..=7);
            r(rng.gen_range(1..q), q)
        }
    };
    for i in 0..m {
        values[i][i] = if rng.gen_bool(loop_rate) { entry(rng).max(r(1, 3)) } else { Rational::zero() };
        for j in i + 1..m {
            let v = entry(rng);
            values[i][j] = v.clone();
            values[j][i] = v;
        }
    }
    StepGraphon::new(measures, values).unwrap()
}

pub fn is_nonnegative(v: &Rational) -> bool {
    !v.is_negative()
}
