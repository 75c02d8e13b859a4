//! Membership of block-constant points in the closed convex hull of
//! indicator functions of independent sets.
//!
//! For a point constant on blocks the question reduces to a finite LP: is
//! `x` dominated by a convex combination of indicators of maximal
//! independent block-sets? A negative answer comes with separating weights
//! `w >= 0` and a threshold `t` such that every independent block-set has
//! weight at most `t` while `w . x > t`.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graphon::{support_structure, BlockSet, StepGraphon};
use crate::lp::{self, LinearProgram, LpSolution, Relation, Sense};
use crate::quotient::{QuotientGraph, Reduced};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPoint(pub Vec<Rational>);

impl BlockPoint {
    pub fn constant(m: usize, value: Rational) -> Self {
        BlockPoint(vec![value; m])
    }

    pub fn indicator(m: usize, set: &BlockSet) -> Self {
        BlockPoint(
            (0..m)
                .map(|i| if set.contains(i) { Rational::one() } else { Rational::zero() })
                .collect(),
        )
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    fn check_dimension(&self, w: &StepGraphon) -> Result<()> {
        if self.dimension() != w.blocks() {
            return Err(Error::InvalidArgument(format!(
                "point has {} coordinates for {} blocks",
                self.dimension(),
                w.blocks()
            )));
        }
        Ok(())
    }
}

impl std::fmt::Display for BlockPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(crate::rational::fmt_fraction).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionViolation {
    /// A coordinate outside `[0, 1]`.
    Range { block: usize },
    /// `x_i + x_j > 1` on an adjacent pair.
    Edge { i: usize, j: usize },
    /// `2 x_i > 1` on a block with a positive loop.
    Loop { block: usize },
}

impl std::fmt::Display for ConditionViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConditionViolation::Range { block } => write!(f, "range at block {block}"),
            ConditionViolation::Edge { i, j } => write!(f, "edge pair ({i}, {j})"),
            ConditionViolation::Loop { block } => write!(f, "looped block {block}"),
        }
    }
}

/// The pointwise conditions every member satisfies. Returns the first
/// violated condition, if any.
pub fn check_conditions(x: &BlockPoint, w: &StepGraphon) -> Result<Option<ConditionViolation>> {
    x.check_dimension(w)?;
    let s = support_structure(w);
    let m = w.blocks();
    let one = Rational::one();
    if let Some(block) = (0..m).find(|&i| x.0[i].is_negative() || x.0[i] > one) {
        return Ok(Some(ConditionViolation::Range { block }));
    }
    for i in 0..m {
        for j in i + 1..m {
            if s.class(i, j).admits_edge() && &x.0[i] + &x.0[j] > one {
                return Ok(Some(ConditionViolation::Edge { i, j }));
            }
        }
    }
    if let Some(block) = (0..m).find(|&i| s.loop_positive(i) && &x.0[i] + &x.0[i] > one) {
        return Ok(Some(ConditionViolation::Loop { block }));
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// Convex weights on independent block-sets whose combination dominates
    /// the point.
    Member { combination: Vec<(BlockSet, Rational)> },
    /// `weights . y <= threshold` for every independent indicator `y`, and
    /// `weights . x > threshold`.
    NonMember { weights: Vec<Rational>, threshold: Rational },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

pub fn membership(x: &BlockPoint, w: &StepGraphon) -> Result<Membership> {
    x.check_dimension(w)?;
    let m = w.blocks();
    if x.0.iter().any(|v| v.is_negative() || *v > Rational::one()) {
        return Err(Error::InvalidArgument(format!("point {x} is outside the unit cube")));
    }
    let r = Reduced::of(w)?;
    let sets: Vec<BlockSet> = r.maximal_independent_sets().into_iter().map(|s| r.expand(s)).collect();
    let mut program = LinearProgram::new(Sense::Minimize, vec![Rational::zero(); sets.len()]);
    program.constrain(vec![Rational::one(); sets.len()], Relation::Eq, Rational::one());
    for i in 0..m {
        let row = sets
            .iter()
            .map(|s| if s.contains(i) { Rational::one() } else { Rational::zero() })
            .collect();
        program.constrain(row, Relation::Ge, x.0[i].clone());
    }
    let result = match lp::solve(&program)? {
        LpSolution::Optimal(opt) => Membership::Member {
            combination: sets
                .into_iter()
                .zip(opt.primal)
                .filter(|(_, l)| l.is_positive())
                .collect(),
        },
        LpSolution::Infeasible { farkas } => {
            if !program.is_farkas_certificate(&farkas) {
                return Err(Error::Invariant("solver returned an invalid infeasibility certificate".into()));
            }
            Membership::NonMember {
                weights: farkas[1..].to_vec(),
                threshold: -farkas[0].clone(),
            }
        }
        LpSolution::Unbounded { .. } => {
            return Err(Error::Invariant("feasibility program reported unbounded".into()));
        }
    };
    if result.is_member() {
        if let Some(v) = check_conditions(x, w)? {
            return Err(Error::Invariant(format!("member {x} violates the {v} condition")));
        }
    }
    Ok(result)
}

/// Whether the support is bipartite without positive loops.
pub fn is_bipartite(w: &StepGraphon) -> bool {
    let q = QuotientGraph::of(w);
    q.positive_loops.is_empty() && q.graph.is_bipartite()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub bipartite: bool,
    pub trials: usize,
    /// Samples that satisfied the pointwise conditions.
    pub admissible: usize,
    pub members: usize,
    /// An admissible point outside the hull, if one was seen.
    pub non_member: Option<BlockPoint>,
}

/// Grid resolution of sampled coordinates.
const SCAN_DENOMINATOR: i64 = 12;

/// Samples `trials` random points on a `1/12` grid, tests the admissible ones
/// for membership, and for a non-bipartite support also tests the constant
/// point `1/2`.
pub fn bipartite_characterization_scan(w: &StepGraphon, trials: usize, seed: u64) -> Result<ScanReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let m = w.blocks();
    let bipartite = is_bipartite(w);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ScanReport {
        bipartite,
        trials,
        admissible: 0,
        members: 0,
        non_member: None,
    };
    for _ in 0..trials {
        let x = BlockPoint(
            (0..m)
                .map(|_| Rational::new(rng.gen_range(0..=SCAN_DENOMINATOR).into(), SCAN_DENOMINATOR.into()))
                .collect(),
        );
        if check_conditions(&x, w)?.is_some() {
            continue;
        }
        report.admissible += 1;
        if membership(&x, w)?.is_member() {
            report.members += 1;
        } else {
            if bipartite {
                return Err(Error::Invariant(format!(
                    "admissible point {x} is outside the hull of a bipartite support"
                )));
            }
            report.non_member.get_or_insert(x);
        }
    }
    if !bipartite {
        let half = BlockPoint::constant(m, Rational::new(1.into(), 2.into()));
        if membership(&half, w)?.is_member() {
            return Err(Error::Invariant("constant 1/2 lies in the hull of a non-bipartite support".into()));
        }
        report.non_member.get_or_insert(half);
    }
    Ok(report)
}
