//! Cut norm of step-function differences, W-random graph sampling, and the
//! semicontinuity experiments built on both.

use num_bigint::{BigInt, RandBigInt};
use num_traits::{Signed, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fractional::fractional_clique;
use crate::graph::FiniteGraph;
use crate::graphon::{
    common_refinement, constant_reciprocal, representation_of, zero_graphon, BlockPartition, BlockSet,
    StepGraphon,
};
use crate::integral::{chromatic_number, clique_number, independence_number};
use crate::rational::{common_denominator, ExtendedRational, Rational};

pub const MAX_CUT_NORM_BLOCKS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutNormResult {
    pub value: Rational,
    /// Row and column block-sets of the common refinement attaining `value`.
    pub witness_s: BlockSet,
    pub witness_t: BlockSet,
    pub refinement: BlockPartition,
}

/// Exact `max_{S,T} |sum_{i in S, j in T} mu_i mu_j (W1 - W2)_ij|` over
/// block-sets of the common refinement.
///
/// For a fixed `S` the best `T` collects the columns whose partial sums
/// share a sign, so only the `2^k` row sets are enumerated.
pub fn cut_norm(w1: &StepGraphon, w2: &StepGraphon) -> Result<CutNormResult> {
    let (a, b) = common_refinement(w1, w2);
    let k = a.blocks();
    if k > MAX_CUT_NORM_BLOCKS {
        return Err(Error::TooManyBlocks {
            blocks: k,
            limit: MAX_CUT_NORM_BLOCKS,
        });
    }
    let diff: Vec<Vec<Rational>> = (0..k)
        .map(|i| (0..k).map(|j| a.value(i, j) - b.value(i, j)).collect())
        .collect();
    let mass: Vec<Vec<Rational>> = (0..k)
        .map(|i| (0..k).map(|j| a.measure(i) * a.measure(j) * &diff[i][j]).collect())
        .collect();

    let mut best = (Rational::zero(), 0u32, 0u32);
    let mut columns = vec![Rational::zero(); k];
    for s in 1u32..1 << k {
        for (j, c) in columns.iter_mut().enumerate() {
            *c = (0..k).filter(|&i| s >> i & 1 == 1).map(|i| &mass[i][j]).sum();
        }
        for positive in [true, false] {
            let t = (0..k)
                .filter(|&j| if positive { columns[j].is_positive() } else { columns[j].is_negative() })
                .fold(0u32, |acc, j| acc | 1 << j);
            let value: Rational = (0..k).filter(|&j| t >> j & 1 == 1).map(|j| columns[j].abs()).sum();
            if value > best.0 {
                best = (value, s, t);
            }
        }
    }
    let (value, s, t) = best;

    let largest = diff.iter().flatten().map(|d| d.abs()).max().unwrap_or_else(Rational::zero);
    let total: Rational = mass.iter().flatten().sum();
    if value > largest || value < total.abs() {
        return Err(Error::Invariant(format!(
            "cut norm {value} outside [{}, {largest}]",
            total.abs()
        )));
    }
    Ok(CutNormResult {
        value,
        witness_s: BlockSet::from_mask(s as u64),
        witness_t: BlockSet::from_mask(t as u64),
        refinement: a.partition().clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignedCutNorm {
    pub value: Rational,
    /// True when the minimum over equal-measure block permutations was
    /// taken; false for a raw overlay.
    pub optimized: bool,
}

/// Permutation budget for [`aligned_cut_norm`].
const MAX_ALIGNMENTS: usize = 5040;

/// Cut norm after the best relabelling of equal-measure blocks of `w2`, when
/// both graphons share a partition; otherwise the raw overlay cut norm.
pub fn aligned_cut_norm(w1: &StepGraphon, w2: &StepGraphon) -> Result<AlignedCutNorm> {
    if w1.measures() != w2.measures() {
        return Ok(AlignedCutNorm {
            value: cut_norm(w1, w2)?.value,
            optimized: false,
        });
    }
    let m = w1.blocks();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..m {
        match classes.iter_mut().find(|c| w1.measure(c[0]) == w1.measure(i)) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    let count = classes
        .iter()
        .map(|c| (1..=c.len()).product::<usize>())
        .try_fold(1usize, |acc, f| acc.checked_mul(f))
        .unwrap_or(usize::MAX);
    if count > MAX_ALIGNMENTS {
        return Ok(AlignedCutNorm {
            value: cut_norm(w1, w2)?.value,
            optimized: false,
        });
    }
    let mut best: Option<Rational> = None;
    let mut order: Vec<usize> = (0..m).collect();
    fn visit(
        classes: &[Vec<usize>],
        depth: usize,
        order: &mut Vec<usize>,
        w1: &StepGraphon,
        w2: &StepGraphon,
        best: &mut Option<Rational>,
    ) -> Result<()> {
        if depth == classes.len() {
            let value = cut_norm(w1, &w2.permute(order)?)?.value;
            if best.as_ref().map_or(true, |b| value < *b) {
                *best = Some(value);
            }
            return Ok(());
        }
        let class = &classes[depth];
        let mut items = class.clone();
        permute_into(&mut items, 0, &mut |perm| {
            for (slot, &src) in class.iter().zip(perm) {
                order[*slot] = src;
            }
            visit(classes, depth + 1, order, w1, w2, best)
        })
    }
    visit(&classes, 0, &mut order, w1, w2, &mut best)?;
    Ok(AlignedCutNorm {
        value: best.expect("identity is always visited"),
        optimized: true,
    })
}

fn permute_into(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize]) -> Result<()>) -> Result<()> {
    if k == items.len() {
        return f(items);
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute_into(items, k + 1, f)?;
        items.swap(k, i);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledGraph {
    pub n: usize,
    /// Block containing each vertex's coordinate.
    pub coordinates: Vec<usize>,
    pub graph: FiniteGraph,
    pub seed: u64,
}

fn below(rng: &mut ChaCha8Rng, bound: &BigInt) -> BigInt {
    rng.gen_bigint_range(&BigInt::zero(), bound)
}

/// Draws a graph from `G(n, W)`.
///
/// The generator is ChaCha8 seeded with `seed`. Vertex coordinates are drawn
/// first, in vertex order: with `D` the common denominator of the measures,
/// a uniform integer below `D` selects the block whose cumulative numerator
/// range contains it. Pairs `(i, j)` with `i < j` follow in lexicographic
/// order: for `W = p/q` in lowest terms with `q > 1`, a uniform integer below
/// `q` gives an edge iff it is below `p`; values 0 and 1 consume no draw.
pub fn sample(w: &StepGraphon, n: usize, seed: u64) -> Result<SampledGraph> {
    if n == 0 {
        return Err(Error::InvalidArgument("sample size must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let denominator = common_denominator(w.measures());
    let mut cumulative = Vec::with_capacity(w.blocks());
    let mut acc = BigInt::zero();
    for mu in w.measures() {
        acc += (mu * Rational::from_integer(denominator.clone())).to_integer();
        cumulative.push(acc.clone());
    }
    let coordinates: Vec<usize> = (0..n)
        .map(|_| {
            let u = below(&mut rng, &denominator);
            cumulative.iter().position(|c| u < *c).expect("draw lies below the total")
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = w.value(coordinates[i], coordinates[j]);
            let present = if p.denom() == &BigInt::from(1) {
                !p.is_zero()
            } else {
                below(&mut rng, p.denom()) < *p.numer()
            };
            if present {
                edges.push((i, j));
            }
        }
    }
    Ok(SampledGraph {
        n,
        coordinates,
        graph: FiniteGraph::new(n, edges)?,
        seed,
    })
}

impl SampledGraph {
    /// The graphon representation with vertices ordered by block, coarsened
    /// so that interchangeable vertices share a block.
    pub fn representation(&self) -> Result<StepGraphon> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| self.coordinates[v]);
        representation_of(&self.graph.induced(&order)).map(|w| w.coarsen())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parameter {
    Alpha,
    Chi,
    Omega,
    OmegaFrac,
}

impl Parameter {
    pub fn name(self) -> &'static str {
        match self {
            Parameter::Alpha => "alpha",
            Parameter::Chi => "chi",
            Parameter::Omega => "omega",
            Parameter::OmegaFrac => "omegafrac",
        }
    }

    pub fn evaluate(self, w: &StepGraphon) -> Result<ExtendedRational> {
        Ok(match self {
            Parameter::Alpha => ExtendedRational::finite(independence_number(w)?.value),
            Parameter::Chi => chromatic_number(w)?.value,
            Parameter::Omega => clique_number(w)?.value,
            Parameter::OmegaFrac => fractional_clique(w)?.value,
        })
    }

    /// Whether the limit value may sit above (`alpha`) or below (the others)
    /// the sequence.
    pub fn holds(self, limit: &ExtendedRational, term: &ExtendedRational) -> bool {
        match self {
            Parameter::Alpha => limit >= term,
            _ => limit <= term,
        }
    }

    pub fn relation(self) -> &'static str {
        match self {
            Parameter::Alpha => ">=",
            _ => "<=",
        }
    }
}

impl std::str::FromStr for Parameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha" => Ok(Parameter::Alpha),
            "chi" => Ok(Parameter::Chi),
            "omega" => Ok(Parameter::Omega),
            "omegafrac" => Ok(Parameter::OmegaFrac),
            other => Err(Error::InvalidArgument(format!("unknown parameter `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `Y_n = 1/n` for `n = 1..=steps`, converging to zero.
    ConstantReciprocal,
    /// `floor(n W) / n` for `n = 1..=steps`, converging to `W` from below.
    Truncation(StepGraphon),
    /// Representations of `G(10 k, W)` for `k = 1..=steps`. The sample for
    /// step `k` uses the `k`-th output of a ChaCha8 stream seeded with `seed`.
    Sample { graphon: StepGraphon, seed: u64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::ConstantReciprocal => "yn",
            Family::Truncation(_) => "truncate",
            Family::Sample { .. } => "sample",
        }
    }

    pub fn limit(&self) -> StepGraphon {
        match self {
            Family::ConstantReciprocal => zero_graphon(),
            Family::Truncation(w) | Family::Sample { graphon: w, .. } => w.clone(),
        }
    }

    /// The `k`-th term (`k >= 1`) and its index `n`.
    pub fn term(&self, k: usize) -> Result<(usize, StepGraphon)> {
        match self {
            Family::ConstantReciprocal => Ok((k, constant_reciprocal(k))),
            Family::Truncation(w) => Ok((k, truncate(w, k))),
            Family::Sample { graphon, seed } => {
                let n = 10 * k;
                let mut stream = ChaCha8Rng::seed_from_u64(*seed);
                let step_seed = (0..k).map(|_| stream.next_u64()).last().expect("k >= 1");
                let s = sample(graphon, n, step_seed)?;
                Ok((n, s.representation()?))
            }
        }
    }
}

/// `floor(n W) / n` entrywise.
pub fn truncate(w: &StepGraphon, n: usize) -> StepGraphon {
    let scale = Rational::from_integer(n.into());
    let values = w
        .values()
        .iter()
        .map(|row| row.iter().map(|v| (v * &scale).floor() / &scale).collect())
        .collect();
    StepGraphon::with_partition(w.partition().clone(), values).expect("truncation keeps range and symmetry")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentRow {
    pub n: usize,
    pub value: ExtendedRational,
    pub cut_norm: Rational,
    pub aligned: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentReport {
    pub family: &'static str,
    pub parameter: Parameter,
    pub limit_value: ExtendedRational,
    pub rows: Vec<ExperimentRow>,
    /// The one-sided inequality between the limit and the last term.
    pub holds: bool,
}

pub fn semicontinuity_experiment(family: &Family, parameter: Parameter, steps: usize) -> Result<ExperimentReport> {
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be at least 1".into()));
    }
    let limit = family.limit();
    let limit_value = parameter.evaluate(&limit)?;
    let mut rows = Vec::with_capacity(steps);
    for k in 1..=steps {
        let (n, term) = family.term(k)?;
        let distance = aligned_cut_norm(&term, &limit)?;
        rows.push(ExperimentRow {
            n,
            value: parameter.evaluate(&term)?,
            cut_norm: distance.value,
            aligned: distance.optimized,
        });
    }
    let holds = parameter.holds(&limit_value, &rows.last().expect("steps >= 1").value);
    Ok(ExperimentReport {
        family: family.name(),
        parameter,
        limit_value,
        rows,
        holds,
    })
}
