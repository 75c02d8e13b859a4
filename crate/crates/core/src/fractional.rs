//! Fractional chromatic and clique numbers, b-fold colourings, and the
//! duality checks between fractional colourings and fractional cliques.
//!
//! Both fractional parameters are linear programs over the maximal
//! independent sets of the reduced quotient. Block measures do not enter the
//! colouring LP. The clique LP is solved in the mass variables
//! `y_i = mu_i f_i`, and the block densities `f_i` are reported.

use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Signed, Zero};

use crate::densities::density_positive;
use crate::error::{Error, Result};
use crate::graph::{graphs_up_to, FiniteGraph};
use crate::graphon::{representation_of, support_structure, BlockSet, StepGraphon};
use crate::integral::chromatic_number;
use crate::lp::{self, LinearProgram, LpSolution, Relation, Sense};
use crate::quotient::Reduced;
use crate::rational::{ceil_to_usize, common_denominator, ExtendedRational, Rational};

/// Nonnegative weights on independent block-sets covering every block at
/// least once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalColoring {
    pub weights: BTreeMap<BlockSet, Rational>,
    pub total: Rational,
}

impl FractionalColoring {
    pub fn new(weights: BTreeMap<BlockSet, Rational>) -> Self {
        let total = weights.values().sum();
        FractionalColoring { weights, total }
    }

    pub fn coverage(&self, block: usize) -> Rational {
        self.weights
            .iter()
            .filter(|(set, _)| set.contains(block))
            .map(|(_, c)| c.clone())
            .sum()
    }

    pub fn validate(&self, w: &StepGraphon) -> Result<()> {
        let s = support_structure(w);
        let m = w.blocks();
        for (set, c) in &self.weights {
            if c.is_negative() {
                return Err(Error::InvalidColoring(format!("negative weight {c} on {set}")));
            }
            for i in set.iter() {
                if i >= m {
                    return Err(Error::InvalidColoring(format!("{set} names block {i} of {m}")));
                }
                if s.loop_positive(i) {
                    return Err(Error::InvalidColoring(format!("{set} contains looped block {i}")));
                }
                if let Some(j) = set.iter().find(|&j| j > i && s.class(i, j).admits_edge()) {
                    return Err(Error::InvalidColoring(format!(
                        "{set} is not independent: blocks {i} and {j} are adjacent"
                    )));
                }
            }
        }
        if let Some(i) = (0..m).find(|&i| self.coverage(i) < Rational::one()) {
            return Err(Error::InvalidColoring(format!(
                "block {i} covered with total weight {} < 1",
                self.coverage(i)
            )));
        }
        if self.total != self.weights.values().sum::<Rational>() {
            return Err(Error::InvalidColoring("total does not match the weights".into()));
        }
        Ok(())
    }
}

/// A block-constant fractional clique with density `f_i` on block `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalClique {
    pub block_values: Vec<Rational>,
    pub size: Rational,
}

impl FractionalClique {
    pub fn new(w: &StepGraphon, block_values: Vec<Rational>) -> Self {
        let size = block_values.iter().zip(w.measures()).map(|(f, mu)| f * mu).sum();
        FractionalClique { block_values, size }
    }

    pub fn mass_on(&self, w: &StepGraphon, set: &BlockSet) -> Rational {
        set.iter().map(|i| &self.block_values[i] * w.measure(i)).sum()
    }

    pub fn validate(&self, w: &StepGraphon) -> Result<()> {
        let m = w.blocks();
        if self.block_values.len() != m {
            return Err(Error::InvalidClique(format!(
                "{} block values for {m} blocks",
                self.block_values.len()
            )));
        }
        if let Some(i) = (0..m).find(|&i| self.block_values[i].is_negative()) {
            return Err(Error::InvalidClique(format!("negative value on block {i}")));
        }
        let r = Reduced::of(w)?;
        for mask in r.maximal_independent_sets() {
            let set = r.expand(mask);
            let mass = self.mass_on(w, &set);
            if mass > Rational::one() {
                return Err(Error::InvalidClique(format!("mass {mass} > 1 on independent set {set}")));
            }
        }
        let size: Rational = self.block_values.iter().zip(w.measures()).map(|(f, mu)| f * mu).sum();
        if size != self.size {
            return Err(Error::InvalidClique("size does not match the block values".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalChromaticReport {
    pub value: ExtendedRational,
    pub coloring: Option<FractionalColoring>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalCliqueReport {
    pub value: ExtendedRational,
    pub clique: Option<FractionalClique>,
}

fn membership_rows(r: &Reduced, sets: &[u32]) -> Vec<Vec<Rational>> {
    (0..r.len())
        .map(|v| {
            sets.iter()
                .map(|&s| if s >> v & 1 == 1 { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

fn optimum(lp: &LinearProgram) -> Result<lp::Optimum> {
    match lp::solve(lp)? {
        LpSolution::Optimal(o) => Ok(o),
        other => Err(Error::Invariant(format!(
            "bounded feasible program reported {:?}",
            other.status()
        ))),
    }
}

pub fn fractional_chromatic(w: &StepGraphon) -> Result<FractionalChromaticReport> {
    if support_structure(w).any_positive_loop() {
        return Ok(FractionalChromaticReport {
            value: ExtendedRational::Infinite,
            coloring: None,
        });
    }
    let r = Reduced::of(w)?;
    let sets = r.maximal_independent_sets();
    let mut program = LinearProgram::new(Sense::Minimize, vec![Rational::one(); sets.len()]);
    for row in membership_rows(&r, &sets) {
        program.constrain(row, Relation::Ge, Rational::one());
    }
    let opt = optimum(&program)?;
    let weights = sets
        .iter()
        .zip(&opt.primal)
        .filter(|(_, c)| c.is_positive())
        .map(|(&s, c)| (r.expand(s), c.clone()))
        .collect();
    Ok(FractionalChromaticReport {
        value: ExtendedRational::finite(opt.value),
        coloring: Some(FractionalColoring::new(weights)),
    })
}

pub fn fractional_clique(w: &StepGraphon) -> Result<FractionalCliqueReport> {
    if support_structure(w).any_positive_loop() {
        return Ok(FractionalCliqueReport {
            value: ExtendedRational::Infinite,
            clique: None,
        });
    }
    let r = Reduced::of(w)?;
    let sets = r.maximal_independent_sets();
    let mut program = LinearProgram::new(Sense::Maximize, vec![Rational::one(); r.len()]);
    for &s in &sets {
        let row = (0..r.len())
            .map(|v| if s >> v & 1 == 1 { Rational::one() } else { Rational::zero() })
            .collect();
        program.constrain(row, Relation::Le, Rational::one());
    }
    let opt = optimum(&program)?;
    let mut values = vec![Rational::zero(); w.blocks()];
    for (v, group) in r.groups.iter().enumerate() {
        let density = &opt.primal[v] / &r.weight[v];
        for &b in group {
            values[b] = density.clone();
        }
    }
    let clique = FractionalClique::new(w, values);
    debug_assert_eq!(clique.size, opt.value);
    Ok(FractionalCliqueReport {
        value: ExtendedRational::finite(opt.value),
        clique: Some(clique),
    })
}

/// A proper b-fold colouring: every block gets `b` colours from `0..k`, and
/// adjacent blocks get disjoint colour sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFoldColoring {
    pub b: usize,
    pub k: usize,
    pub assignment: Vec<Vec<usize>>,
}

impl BFoldColoring {
    pub fn validate(&self, w: &StepGraphon) -> Result<()> {
        let s = support_structure(w);
        let m = w.blocks();
        if self.assignment.len() != m {
            return Err(Error::InvalidColoring(format!(
                "{} colour sets for {m} blocks",
                self.assignment.len()
            )));
        }
        for (i, colours) in self.assignment.iter().enumerate() {
            let distinct: HashSet<_> = colours.iter().collect();
            if colours.len() != self.b || distinct.len() != self.b {
                return Err(Error::InvalidColoring(format!("block {i} does not get {} distinct colours", self.b)));
            }
            if let Some(c) = colours.iter().find(|&&c| c >= self.k) {
                return Err(Error::InvalidColoring(format!("block {i} uses colour {c} outside 0..{}", self.k)));
            }
            if s.loop_positive(i) {
                return Err(Error::InvalidColoring(format!("block {i} has a positive loop")));
            }
            for j in i + 1..m {
                if s.class(i, j).admits_edge() && self.assignment[j].iter().any(|c| distinct.contains(c)) {
                    return Err(Error::InvalidColoring(format!("adjacent blocks {i} and {j} share a colour")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFoldReport {
    pub b: usize,
    pub value: ExtendedRational,
    pub coloring: Option<BFoldColoring>,
}

/// Turns a multiset of independent sets (`counts[s]` copies of `sets[s]`)
/// covering every reduced vertex `b` times into a b-fold colouring of `w`.
fn colouring_from_counts(r: &Reduced, w: &StepGraphon, sets: &[u32], counts: &[usize], b: usize) -> BFoldColoring {
    let mut per_vertex = vec![Vec::new(); r.len()];
    let mut next = 0;
    for (&s, &count) in sets.iter().zip(counts) {
        for colour in next..next + count {
            for (v, colours) in per_vertex.iter_mut().enumerate() {
                if s >> v & 1 == 1 && colours.len() < b {
                    colours.push(colour);
                }
            }
        }
        next += count;
    }
    let mut assignment = vec![Vec::new(); w.blocks()];
    for (v, group) in r.groups.iter().enumerate() {
        for &blk in group {
            assignment[blk] = per_vertex[v].clone();
        }
    }
    BFoldColoring { b, k: next, assignment }
}

/// Depth-first search for `budget` independent sets covering each vertex
/// `deficit[v]` more times. Failed states are memoized.
fn cover(
    sets: &[u32],
    containing: &[Vec<usize>],
    deficit: &mut Vec<usize>,
    budget: usize,
    counts: &mut Vec<usize>,
    failed: &mut HashSet<(Vec<usize>, usize)>,
) -> bool {
    let Some(v) = (0..deficit.len())
        .filter(|&v| deficit[v] > 0)
        .min_by_key(|&v| (containing[v].len(), std::cmp::Reverse(deficit[v])))
    else {
        return true;
    };
    if deficit.iter().copied().max().unwrap_or(0) > budget || failed.contains(&(deficit.clone(), budget)) {
        return false;
    }
    for &s in &containing[v] {
        let mask = sets[s];
        let touched: Vec<usize> = (0..deficit.len()).filter(|&u| mask >> u & 1 == 1 && deficit[u] > 0).collect();
        for &u in &touched {
            deficit[u] -= 1;
        }
        counts[s] += 1;
        if cover(sets, containing, deficit, budget - 1, counts, failed) {
            return true;
        }
        counts[s] -= 1;
        for &u in &touched {
            deficit[u] += 1;
        }
    }
    failed.insert((deficit.clone(), budget));
    false
}

pub fn b_fold_chromatic(w: &StepGraphon, b: usize) -> Result<BFoldReport> {
    if b == 0 {
        return Err(Error::InvalidArgument("b must be at least 1".into()));
    }
    let chi = chromatic_number(w)?.value;
    let Some(chi) = chi.as_usize() else {
        return Ok(BFoldReport {
            b,
            value: ExtendedRational::Infinite,
            coloring: None,
        });
    };
    let chi_frac = fractional_chromatic(w)?.value;
    let lower = ceil_to_usize(&(chi_frac.as_finite().expect("loop-free").clone() * Rational::from_integer(b.into())));
    let r = Reduced::of(w)?;
    let sets = r.maximal_independent_sets();
    let containing: Vec<Vec<usize>> = (0..r.len())
        .map(|v| (0..sets.len()).filter(|&s| sets[s] >> v & 1 == 1).collect())
        .collect();
    let ceiling = b * chi;
    let mut failed = HashSet::new();
    for k in lower..=ceiling {
        let mut deficit = vec![b; r.len()];
        let mut counts = vec![0; sets.len()];
        if cover(&sets, &containing, &mut deficit, k, &mut counts, &mut failed) {
            let coloring = colouring_from_counts(&r, w, &sets, &counts, b);
            coloring.validate(w).map_err(|e| Error::Invariant(format!("b-fold search: {e}")))?;
            return Ok(BFoldReport {
                b,
                value: ExtendedRational::from_usize(coloring.k),
                coloring: Some(coloring),
            });
        }
    }
    Err(Error::SearchCeiling { ceiling })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeketeRow {
    pub b: usize,
    pub chi_b: usize,
    pub ratio: Rational,
}

pub const MAX_FEKETE_B: usize = 8;

/// `chi_b(W)` and `chi_b(W) / b` for `b = 1..=b_max`, checking that every
/// ratio is at least `chi_frac(W)` and that the sequence is subadditive.
pub fn fekete_profile(w: &StepGraphon, b_max: usize) -> Result<Vec<FeketeRow>> {
    if b_max == 0 || b_max > MAX_FEKETE_B {
        return Err(Error::TooLarge {
            what: "b-fold profile length",
            size: b_max,
            limit: MAX_FEKETE_B,
        });
    }
    if chromatic_number(w)?.value.is_infinite() {
        return Err(Error::InvalidArgument("profile needs a finite chromatic number".into()));
    }
    let chi_frac = fractional_chromatic(w)?.value;
    let chi_frac = chi_frac.as_finite().expect("finite chromatic number").clone();
    let mut rows = Vec::with_capacity(b_max);
    for b in 1..=b_max {
        let chi_b = b_fold_chromatic(w, b)?.value.as_usize().expect("finite");
        let ratio = Rational::new(chi_b.into(), b.into());
        if ratio < chi_frac {
            return Err(Error::Invariant(format!(
                "chi_{b}/{b} = {ratio} below fractional chromatic number {chi_frac}"
            )));
        }
        rows.push(FeketeRow { b, chi_b, ratio });
    }
    for x in 1..=b_max {
        for y in 1..=b_max - x {
            let (cx, cy, cxy) = (rows[x - 1].chi_b, rows[y - 1].chi_b, rows[x + y - 1].chi_b);
            if cxy > cx + cy {
                return Err(Error::Invariant(format!(
                    "chi_{} = {cxy} exceeds chi_{x} + chi_{y} = {}",
                    x + y,
                    cx + cy
                )));
            }
        }
    }
    Ok(rows)
}

/// Builds a b-fold colouring from a fractional colouring whose weights all
/// have denominator dividing `b`: a palette of `b * total` colours is split
/// into consecutive runs of `b * c(I)` colours, one run per set `I`, and each
/// block keeps the first `b` colours of the runs of the sets containing it.
pub fn round_to_b_fold(c: &FractionalColoring, w: &StepGraphon) -> Result<BFoldColoring> {
    c.validate(w)?;
    let b_big = common_denominator(c.weights.values());
    let b: usize = b_big
        .try_into()
        .map_err(|_| Error::InvalidArgument("colouring denominator too large".into()))?;
    let scale = Rational::from_integer(b.into());
    let mut assignment = vec![Vec::new(); w.blocks()];
    let mut next = 0usize;
    for (set, weight) in &c.weights {
        let run = (weight * &scale).to_integer();
        let run: usize = run.try_into().expect("nonnegative run length");
        for colour in next..next + run {
            for i in set.iter() {
                if assignment[i].len() < b {
                    assignment[i].push(colour);
                }
            }
        }
        next += run;
    }
    let coloring = BFoldColoring { b, k: next, assignment };
    coloring
        .validate(w)
        .map_err(|e| Error::Invariant(format!("rounded colouring is not proper: {e}")))?;
    Ok(coloring)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakDuality {
    /// `total(c) - size(f)`, never negative.
    pub gap: Rational,
}

pub fn check_weak_duality(f: &FractionalClique, c: &FractionalColoring, w: &StepGraphon) -> Result<WeakDuality> {
    f.validate(w)?;
    c.validate(w)?;
    let gap = &c.total - &f.size;
    if gap.is_negative() {
        return Err(Error::Invariant(format!(
            "fractional clique of size {} exceeds fractional colouring of total {}",
            f.size, c.total
        )));
    }
    Ok(WeakDuality { gap })
}

/// A nonzero product in one of the two slackness families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SlackViolation {
    /// `f_i * (coverage_i - 1) != 0`
    Block { block: usize, product: Rational },
    /// `c(I) * (mass_I(f) - 1) != 0`
    Set { set: BlockSet, product: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlacknessReport {
    pub block_family_holds: bool,
    pub set_family_holds: bool,
    pub sizes_equal: bool,
    pub violation: Option<SlackViolation>,
}

impl SlacknessReport {
    pub fn holds(&self) -> bool {
        self.block_family_holds && self.set_family_holds
    }
}

/// Evaluates both slackness families at block level and checks that they
/// hold exactly when the clique size equals the colouring total.
pub fn check_complementary_slackness(
    f: &FractionalClique,
    c: &FractionalColoring,
    w: &StepGraphon,
) -> Result<SlacknessReport> {
    f.validate(w)?;
    c.validate(w)?;
    let mut violation = None;
    let mut block_family_holds = true;
    for i in 0..w.blocks() {
        let product = &f.block_values[i] * (c.coverage(i) - Rational::one());
        if !product.is_zero() {
            block_family_holds = false;
            violation.get_or_insert(SlackViolation::Block { block: i, product });
        }
    }
    let mut set_family_holds = true;
    for (set, weight) in &c.weights {
        let product = weight * (f.mass_on(w, set) - Rational::one());
        if !product.is_zero() {
            set_family_holds = false;
            violation.get_or_insert(SlackViolation::Set {
                set: set.clone(),
                product,
            });
        }
    }
    let sizes_equal = f.size == c.total;
    if sizes_equal != (block_family_holds && set_family_holds) {
        return Err(Error::Invariant(format!(
            "sizes equal: {sizes_equal}, slackness holds: {}",
            block_family_holds && set_family_holds
        )));
    }
    Ok(SlacknessReport {
        block_family_holds,
        set_family_holds,
        sizes_equal,
        violation,
    })
}

pub const MAX_SUP_CHECK_VERTICES: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupCheckReport {
    pub omega_frac: ExtendedRational,
    pub graphs_checked: usize,
    /// Largest fractional clique number among graphs of positive density,
    /// with the first graph attaining it.
    pub best: Option<(FiniteGraph, Rational)>,
}

/// Fractional clique numbers of all graphs on at most `vmax` vertices with
/// positive density in `w`, each checked against `omega_frac(w)`.
pub fn fractional_clique_sup_check(w: &StepGraphon, vmax: usize) -> Result<SupCheckReport> {
    if vmax > MAX_SUP_CHECK_VERTICES {
        return Err(Error::TooLarge {
            what: "fractional clique search vertex bound",
            size: vmax,
            limit: MAX_SUP_CHECK_VERTICES,
        });
    }
    let omega_frac = fractional_clique(w)?.value;
    let mut best: Option<(FiniteGraph, Rational)> = None;
    let mut checked = 0;
    for g in graphs_up_to(vmax) {
        if density_positive(&g, w).is_none() {
            continue;
        }
        checked += 1;
        let value = fractional_clique(&representation_of(&g)?)?.value;
        if value > omega_frac {
            return Err(Error::Invariant(format!(
                "pattern with fractional clique number {value} exceeds {omega_frac}"
            )));
        }
        let value = value.as_finite().expect("graph representations are loop-free").clone();
        if best.as_ref().map_or(true, |(_, b)| value > *b) {
            best = Some((g, value));
        }
    }
    Ok(SupCheckReport {
        omega_frac,
        graphs_checked: checked,
        best,
    })
}
