//! Homomorphism densities `t(H, W)`, induced densities `t_ind(H, W)`, the
//! edgeless-sample sequence `a_k = t_ind(I_k, W)` and disjoint-rectangle
//! witnesses for positive densities.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::graphon::{support_structure, BlockStructure, StepGraphon};
use crate::integral::independence_number;
use crate::rational::Rational;

/// Enumeration cutoffs for the exact assignment sums.
pub const MAX_PATTERN_VERTICES: usize = 10;
pub const MAX_DENSITY_BLOCKS: usize = 12;

/// Bits of precision of the k-th root brackets.
pub const ROOT_BITS: u32 = 20;

/// A map from pattern vertices to block indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(pub Vec<usize>);

impl Assignment {
    pub fn block_of(&self, vertex: usize) -> usize {
        self.0[vertex]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for Assignment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .map(|(v, b)| format!("{v}->{b}"))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

fn check_limits(h: &FiniteGraph, w: &StepGraphon) -> Result<()> {
    if h.vertex_count() > MAX_PATTERN_VERTICES {
        return Err(Error::TooLarge {
            what: "pattern vertex count",
            size: h.vertex_count(),
            limit: MAX_PATTERN_VERTICES,
        });
    }
    if w.blocks() > MAX_DENSITY_BLOCKS {
        return Err(Error::TooLarge {
            what: "graphon block count",
            size: w.blocks(),
            limit: MAX_DENSITY_BLOCKS,
        });
    }
    Ok(())
}

/// Sum over all assignments, each vertex contributing its block measure and
/// each earlier vertex pair a factor `pair_factor(edge?, value)`.
fn assignment_sum(
    h: &FiniteGraph,
    w: &StepGraphon,
    pair_factor: &dyn Fn(bool, &Rational) -> Option<Rational>,
) -> Rational {
    let n = h.vertex_count();
    let adjacency: Vec<Vec<bool>> = (0..n)
        .map(|u| (0..n).map(|v| h.has_edge(u, v)).collect())
        .collect();

    fn go(
        v: usize,
        phi: &mut Vec<usize>,
        weight: Rational,
        adjacency: &[Vec<bool>],
        w: &StepGraphon,
        pair_factor: &dyn Fn(bool, &Rational) -> Option<Rational>,
        total: &mut Rational,
    ) {
        if v == adjacency.len() {
            *total += weight;
            return;
        }
        'blocks: for b in 0..w.blocks() {
            let mut next = &weight * w.measure(b);
            for (u, &bu) in phi.iter().enumerate() {
                match pair_factor(adjacency[u][v], w.value(bu, b)) {
                    Some(f) if f.is_zero() => continue 'blocks,
                    Some(f) => next *= f,
                    None => {}
                }
            }
            phi.push(b);
            go(v + 1, phi, next, adjacency, w, pair_factor, total);
            phi.pop();
        }
    }

    let mut total = Rational::zero();
    go(
        0,
        &mut Vec::with_capacity(n),
        Rational::one(),
        &adjacency,
        w,
        pair_factor,
        &mut total,
    );
    total
}

/// Homomorphism density `t(H, W)`, exactly.
pub fn density(h: &FiniteGraph, w: &StepGraphon) -> Result<Rational> {
    check_limits(h, w)?;
    Ok(assignment_sum(h, w, &|edge, value| edge.then(|| value.clone())))
}

/// Induced density `t_ind(H, W)`, exactly.
pub fn induced_density(h: &FiniteGraph, w: &StepGraphon) -> Result<Rational> {
    check_limits(h, w)?;
    Ok(assignment_sum(h, w, &|edge, value| {
        Some(if edge {
            value.clone()
        } else {
            Rational::one() - value
        })
    }))
}

/// Backtracking search for an assignment satisfying `allowed(edge?, i, j)`
/// on every vertex pair. Vertices are placed in order.
fn find_assignment(
    h: &FiniteGraph,
    blocks: usize,
    allowed: &dyn Fn(bool, usize, usize) -> bool,
    relevant: &dyn Fn(bool) -> bool,
) -> Option<Assignment> {
    let n = h.vertex_count();
    let adjacency: Vec<Vec<bool>> = (0..n)
        .map(|u| (0..n).map(|v| h.has_edge(u, v)).collect())
        .collect();
    let mut phi = Vec::with_capacity(n);

    fn go(
        phi: &mut Vec<usize>,
        adjacency: &[Vec<bool>],
        blocks: usize,
        allowed: &dyn Fn(bool, usize, usize) -> bool,
        relevant: &dyn Fn(bool) -> bool,
    ) -> bool {
        let v = phi.len();
        if v == adjacency.len() {
            return true;
        }
        for b in 0..blocks {
            let ok = phi.iter().enumerate().all(|(u, &bu)| {
                let e = adjacency[u][v];
                !relevant(e) || allowed(e, bu, b)
            });
            if ok {
                phi.push(b);
                if go(phi, adjacency, blocks, allowed, relevant) {
                    return true;
                }
                phi.pop();
            }
        }
        false
    }

    go(&mut phi, &adjacency, blocks, allowed, relevant).then(|| Assignment(phi))
}

fn pair_admits(s: &BlockStructure, edge: bool, i: usize, j: usize) -> bool {
    let class = s.class(i, j);
    if edge {
        class.admits_edge()
    } else {
        class.admits_non_edge()
    }
}

/// Decides `t_ind(H, W) > 0` structurally: some assignment must put every
/// edge on a non-ZERO pair and every non-edge on a non-FULL pair (same-block
/// pairs read the diagonal). Returns a witnessing assignment.
pub fn induced_density_positive(h: &FiniteGraph, w: &StepGraphon) -> Option<Assignment> {
    let s = support_structure(w);
    find_assignment(
        h,
        w.blocks(),
        &|edge, i, j| pair_admits(&s, edge, i, j),
        &|_| true,
    )
}

/// Decides `t(H, W) > 0`: every edge must land on a non-ZERO pair.
pub fn density_positive(h: &FiniteGraph, w: &StepGraphon) -> Option<Assignment> {
    let s = support_structure(w);
    find_assignment(
        h,
        w.blocks(),
        &|_, i, j| s.class(i, j).admits_edge(),
        &|edge| edge,
    )
}

/// Exponent-aware power with the convention `0^0 = 1`.
fn pow(base: &Rational, exp: u64) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    if base.is_zero() {
        return Rational::zero();
    }
    let mut result = Rational::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    result
}

/// `a_k = t_ind(I_k, W)` for `k = 1..=k_max`, by the multinomial expansion
/// over block occupation counts.
pub fn edgeless_density_sequence(w: &StepGraphon, k_max: usize) -> Result<Vec<Rational>> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    Ok((1..=k_max).map(|k| edgeless_density(w, k)).collect())
}

/// Single term `a_k` of the edgeless sequence.
pub fn edgeless_density(w: &StepGraphon, k: usize) -> Rational {
    let m = w.blocks();
    let miss: Vec<Vec<Rational>> = (0..m)
        .map(|i| (0..m).map(|j| Rational::one() - w.value(i, j)).collect())
        .collect();
    let mut factorial = vec![BigInt::one()];
    for i in 1..=k {
        let next = &factorial[i - 1] * BigInt::from(i);
        factorial.push(next);
    }

    struct Ctx<'a> {
        w: &'a StepGraphon,
        miss: &'a [Vec<Rational>],
        factorial: &'a [BigInt],
        k: usize,
    }

    // counts[j] for j < i are fixed; `term` carries prod mu^n / n! and all
    // non-edge factors among fixed blocks.
    fn go(ctx: &Ctx, i: usize, left: usize, counts: &mut Vec<usize>, term: Rational, total: &mut Rational) {
        let m = ctx.w.blocks();
        if i == m {
            if left == 0 {
                *total += term * Rational::from_integer(ctx.factorial[ctx.k].clone());
            }
            return;
        }
        let range: Vec<usize> = if i == m - 1 { vec![left] } else { (0..=left).collect() };
        for n in range {
            let mut t = term.clone();
            if n > 0 {
                let within = (n * (n - 1) / 2) as u64;
                t *= pow(&ctx.miss[i][i], within);
                for (j, &nj) in counts.iter().enumerate() {
                    if nj > 0 && !t.is_zero() {
                        t *= pow(&ctx.miss[j][i], (nj * n) as u64);
                    }
                }
                if t.is_zero() {
                    continue;
                }
                t *= pow(ctx.w.measure(i), n as u64);
                t /= Rational::from_integer(ctx.factorial[n].clone());
            }
            counts.push(n);
            go(ctx, i + 1, left - n, counts, t, total);
            counts.pop();
        }
    }

    let ctx = Ctx {
        w,
        miss: &miss,
        factorial: &factorial,
        k,
    };
    let mut total = Rational::zero();
    go(&ctx, 0, k, &mut Vec::with_capacity(m), Rational::one(), &mut total);
    total
}

/// Rational bracket `lower <= a_k^(1/k) <= upper` on the dyadic grid of
/// spacing `2^-ROOT_BITS`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBracket {
    pub k: usize,
    pub a_k: Rational,
    pub lower: Rational,
    pub upper: Rational,
}

/// Brackets the k-th root of `value` (which must lie in `[0, 1]`).
pub fn root_bracket(value: &Rational, k: usize) -> (Rational, Rational) {
    assert!(k >= 1);
    let scale = BigInt::one() << ROOT_BITS;
    let kk = k as u32;
    // j^k * q <= p * 2^(bits*k)
    let rhs = value.numer() * num_traits::pow(scale.clone(), k);
    let q = value.denom();
    let fits = |j: &BigInt| -> bool { num_traits::pow(j.clone(), kk as usize) * q <= rhs };
    let (mut lo, mut hi) = (BigInt::zero(), scale.clone());
    if fits(&hi) {
        lo = hi.clone();
    } else {
        // invariant: fits(lo), !fits(hi)
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi) >> 1;
            if fits(&mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    let lower = Rational::new(lo.clone(), scale.clone());
    let exact = num_traits::pow(lo.clone(), k) * q == rhs;
    let upper = if exact {
        lower.clone()
    } else {
        Rational::new(lo + 1, scale)
    };
    (lower, upper)
}

/// `a_k` with a bracket around its k-th root, checking `a_k >= alpha(W)^k`.
pub fn ckp_bracket(w: &StepGraphon, k: usize) -> Result<RootBracket> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let a_k = edgeless_density(w, k);
    bracket_checked(k, a_k, &independence_number(w)?.value)
}

fn bracket_checked(k: usize, a_k: Rational, alpha: &Rational) -> Result<RootBracket> {
    if a_k < pow(alpha, k as u64) {
        return Err(Error::Invariant(format!(
            "a_{k} = {a_k} is below alpha^{k} for alpha = {alpha}"
        )));
    }
    let (lower, upper) = root_bracket(&a_k, k);
    Ok(RootBracket { k, a_k, lower, upper })
}

/// Brackets for `k = 1..=k_max`, also checking that `a_k` is nonincreasing.
pub fn ckp_profile(w: &StepGraphon, k_max: usize) -> Result<Vec<RootBracket>> {
    let alpha = independence_number(w)?.value;
    let seq = edgeless_density_sequence(w, k_max)?;
    let mut out: Vec<RootBracket> = Vec::with_capacity(k_max);
    for (idx, a_k) in seq.into_iter().enumerate() {
        if let Some(prev) = out.last() {
            if a_k > prev.a_k {
                return Err(Error::Invariant(format!("a_{} increased", idx + 1)));
            }
        }
        out.push(bracket_checked(idx + 1, a_k, &alpha)?);
    }
    Ok(out)
}

/// Disjoint sets `A_v` (one per pattern vertex, all of measure `measure`)
/// with `W` positive on `A_u x A_v` for every edge `uv` outside a set of
/// relative measure `exception_bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectangleWitness {
    pub blocks: Assignment,
    pub measure: Rational,
    /// Half-open subintervals `[start, end)` of `[0,1]`, one per vertex.
    pub sets: Vec<(Rational, Rational)>,
    pub exception_bound: Rational,
}

/// Returns `None` exactly when `t(H, W) = 0`.
pub fn rectangle_witness(h: &FiniteGraph, w: &StepGraphon) -> Option<RectangleWitness> {
    let blocks = density_positive(h, w)?;
    let starts = w.partition().endpoints();
    let mut multiplicity = vec![0usize; w.blocks()];
    for &b in &blocks.0 {
        multiplicity[b] += 1;
    }
    let measure = multiplicity
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(b, &c)| w.measure(b) / Rational::from_integer(c.into()))
        .min()
        .unwrap_or_else(Rational::one);
    let mut used = vec![0usize; w.blocks()];
    let sets = blocks
        .0
        .iter()
        .map(|&b| {
            let start = &starts[b] + &measure * Rational::from_integer(used[b].into());
            used[b] += 1;
            let end = &start + &measure;
            (start, end)
        })
        .collect();
    Some(RectangleWitness {
        blocks,
        measure,
        sets,
        exception_bound: Rational::zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphon::representation_of;
    use crate::rational::{int, ratio};

    fn half() -> StepGraphon {
        StepGraphon::constant(ratio(1, 2)).unwrap()
    }

    fn k2() -> StepGraphon {
        representation_of(&FiniteGraph::complete(2)).unwrap()
    }

    fn half_k3() -> StepGraphon {
        let third = ratio(1, 3);
        let h = ratio(1, 2);
        let z = int(0);
        StepGraphon::new(
            vec![third.clone(), third.clone(), third],
            vec![
                vec![z.clone(), h.clone(), h.clone()],
                vec![h.clone(), z.clone(), h.clone()],
                vec![h.clone(), h, z],
            ],
        )
        .unwrap()
    }

    #[test]
    fn density_examples() {
        assert_eq!(density(&FiniteGraph::complete(3), &half()).unwrap(), ratio(1, 8));
        // 4 assignments of K2 into K2, the two crossing ones weigh 1/4.
        assert_eq!(density(&FiniteGraph::complete(2), &k2()).unwrap(), ratio(1, 2));
        let zero = StepGraphon::constant(int(0)).unwrap();
        assert_eq!(density(&FiniteGraph::cycle(4).unwrap(), &zero).unwrap(), int(0));
        assert_eq!(density(&FiniteGraph::empty(3), &zero).unwrap(), int(1));
    }

    #[test]
    fn induced_density_examples() {
        let p = ratio(2, 7);
        let w = StepGraphon::constant(p.clone()).unwrap();
        assert_eq!(induced_density(&FiniteGraph::empty(2), &w).unwrap(), int(1) - p);
        assert_eq!(
            induced_density(&FiniteGraph::complete(2), &k2()).unwrap(),
            ratio(1, 2)
        );
        let c5 = FiniteGraph::cycle(5).unwrap();
        assert!(induced_density(&c5, &half_k3()).unwrap() > int(0));
    }

    #[test]
    fn size_limits_enforced() {
        let big = FiniteGraph::empty(MAX_PATTERN_VERTICES + 1);
        assert!(matches!(density(&big, &half()), Err(Error::TooLarge { .. })));
        let wide = representation_of(&FiniteGraph::empty(MAX_DENSITY_BLOCKS + 1)).unwrap();
        assert!(matches!(
            induced_density(&FiniteGraph::empty(1), &wide),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn positivity_examples() {
        let bip = k2();
        assert!(induced_density_positive(&FiniteGraph::complete(3), &bip).is_none());
        let c5 = FiniteGraph::cycle(5).unwrap();
        let witness = induced_density_positive(&c5, &half_k3()).expect("C5 appears");
        assert_eq!(witness.len(), 5);
        assert!(induced_density_positive(&FiniteGraph::empty(1), &bip).is_some());
    }

    #[test]
    fn edgeless_examples() {
        let zero = StepGraphon::constant(int(0)).unwrap();
        assert!(edgeless_density_sequence(&zero, 6).unwrap().iter().all(|a| *a == int(1)));
        let p = ratio(1, 3);
        let w = StepGraphon::constant(p.clone()).unwrap();
        let q = int(1) - p;
        assert_eq!(edgeless_density(&w, 3), &q * &q * &q);
        // Two half blocks joined completely: a_2 = 2 of 4 placements.
        assert_eq!(edgeless_density(&k2(), 2), ratio(1, 2));
        assert!(edgeless_density_sequence(&zero, 0).is_err());
    }

    #[test]
    fn edgeless_matches_induced_density() {
        let w = half_k3();
        for k in 1..=5 {
            assert_eq!(
                edgeless_density(&w, k),
                induced_density(&FiniteGraph::empty(k), &w).unwrap()
            );
        }
    }

    #[test]
    fn root_bracket_contains_root() {
        let (lo, hi) = root_bracket(&ratio(1, 4), 2);
        assert_eq!((lo.clone(), hi), (ratio(1, 2), ratio(1, 2)));
        let (lo, hi) = root_bracket(&ratio(1, 2), 2);
        assert!(&lo * &lo <= ratio(1, 2) && &hi * &hi >= ratio(1, 2));
        assert_eq!(&hi - &lo, Rational::new(1.into(), BigInt::one() << ROOT_BITS));
        assert_eq!(root_bracket(&int(0), 3), (int(0), int(0)));
        assert_eq!(root_bracket(&int(1), 3), (int(1), int(1)));
    }

    #[test]
    fn ckp_examples() {
        let zero = StepGraphon::constant(int(0)).unwrap();
        let b = ckp_bracket(&zero, 7).unwrap();
        assert_eq!((b.lower, b.upper), (int(1), int(1)));

        // W = p: a_k^(1/k) = (1-p)^((k-1)/2), decreasing toward alpha = 0.
        let w = StepGraphon::constant(ratio(1, 2)).unwrap();
        let profile = ckp_profile(&w, 12).unwrap();
        for pair in profile.windows(2) {
            assert!(pair[1].upper <= pair[0].upper);
        }
        let last = profile.last().unwrap();
        // (1/2)^(11/2) ~ 0.0221
        assert!(last.lower < ratio(23, 1000) && last.upper > ratio(22, 1000));
    }

    #[test]
    fn ckp_two_block_fixture_at_200() {
        // a_k = 2 * 2^-k in closed form; a_200^(1/200) = 2^(1/200) / 2.
        let b = ckp_bracket(&k2(), 200).unwrap();
        let two = BigInt::from(2);
        assert_eq!(
            b.a_k,
            Rational::new(two.clone(), num_traits::pow(two, 200))
        );
        // Frozen dyadic bracket: floor(2^20 * 2^(1/200) / 2) = 526108.
        assert_eq!(b.lower, ratio(526_108, 1 << 20));
        assert_eq!(b.upper, ratio(526_109, 1 << 20));
        assert!((&b.upper - ratio(1, 2)) < ratio(15, 100));
    }

    #[test]
    fn rectangle_examples() {
        let w = rectangle_witness(&FiniteGraph::complete(2), &k2()).unwrap();
        assert_eq!(w.blocks.0, vec![0, 1]);
        assert_eq!(w.exception_bound, int(0));
        assert_eq!(w.sets[1], (ratio(1, 2), int(1)));

        let zero = StepGraphon::constant(int(0)).unwrap();
        assert!(rectangle_witness(&FiniteGraph::complete(2), &zero).is_none());

        let w = rectangle_witness(&FiniteGraph::complete(3), &half()).unwrap();
        assert_eq!(w.blocks.0, vec![0, 0, 0]);
        assert_eq!(w.measure, ratio(1, 3));
        assert_eq!(w.sets[2], (ratio(2, 3), int(1)));
        assert!(density(&FiniteGraph::complete(3), &half()).unwrap() > int(0));
    }
}
