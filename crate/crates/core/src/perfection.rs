//! Perfectness of step graphons.
//!
//! The subgraph verdict searches for odd holes and odd antiholes of bounded
//! length with positive induced density. The inheritance verdict compares
//! `chi` and `omega` on every restriction. A restriction to a set of positive
//! measure has the same quotient as the restriction to the blocks the set
//! meets in positive measure, so enumerating block-sets is complete.

use crate::densities::{induced_density_positive, Assignment};
use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::graphon::{BlockSet, StepGraphon};
use crate::integral::{chromatic_number, clique_number};
use crate::quotient::MAX_QUOTIENT_BLOCKS;
use crate::rational::ExtendedRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HoleKind {
    Hole,
    Antihole,
}

impl std::fmt::Display for HoleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            HoleKind::Hole => "hole",
            HoleKind::Antihole => "antihole",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoleWitness {
    pub length: usize,
    pub kind: HoleKind,
    pub assignment: Assignment,
}

impl HoleWitness {
    pub fn pattern(&self) -> FiniteGraph {
        let cycle = FiniteGraph::cycle(self.length).expect("length >= 5");
        match self.kind {
            HoleKind::Hole => cycle,
            HoleKind::Antihole => cycle.complement(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphVerdict {
    /// Largest odd length searched.
    pub upto: usize,
    /// No odd hole or antihole of length at most `upto` has positive induced
    /// density. Not a certificate for longer lengths.
    pub perfect: bool,
    pub witness: Option<HoleWitness>,
}

/// Default search bound `2m + 1` for an `m`-block graphon.
pub fn default_hole_bound(w: &StepGraphon) -> usize {
    (2 * w.blocks() + 1).max(5)
}

fn check_bound(upto: usize) -> Result<()> {
    if upto < 5 || upto % 2 == 0 {
        return Err(Error::InvalidArgument(format!("hole bound must be odd and at least 5, got {upto}")));
    }
    Ok(())
}

pub fn subgraph_perfect_up_to(w: &StepGraphon, upto: usize) -> Result<SubgraphVerdict> {
    check_bound(upto)?;
    for length in (5..=upto).step_by(2) {
        let hole = FiniteGraph::cycle(length)?;
        let antihole = hole.complement();
        for (kind, pattern) in [(HoleKind::Hole, hole), (HoleKind::Antihole, antihole)] {
            if let Some(assignment) = induced_density_positive(&pattern, w) {
                return Ok(SubgraphVerdict {
                    upto,
                    perfect: false,
                    witness: Some(HoleWitness {
                        length,
                        kind,
                        assignment,
                    }),
                });
            }
        }
    }
    Ok(SubgraphVerdict {
        upto,
        perfect: true,
        witness: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InheritanceWitness {
    pub blocks: BlockSet,
    pub chromatic: ExtendedRational,
    pub clique: ExtendedRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InheritanceVerdict {
    pub perfect: bool,
    /// First block-set, in increasing bitmask order, whose restriction has
    /// `chi != omega`.
    pub witness: Option<InheritanceWitness>,
}

pub fn inheritance_perfect(w: &StepGraphon) -> Result<InheritanceVerdict> {
    let m = w.blocks();
    if m > MAX_QUOTIENT_BLOCKS {
        return Err(Error::TooLarge {
            what: "block count for restriction enumeration",
            size: m,
            limit: MAX_QUOTIENT_BLOCKS,
        });
    }
    for mask in 1u64..1 << m {
        let blocks = BlockSet::from_mask(mask);
        let restricted = w.restrict(&blocks)?;
        let chromatic = chromatic_number(&restricted)?.value;
        let clique = clique_number(&restricted)?.value;
        if chromatic != clique {
            return Ok(InheritanceVerdict {
                perfect: false,
                witness: Some(InheritanceWitness {
                    blocks,
                    chromatic,
                    clique,
                }),
            });
        }
    }
    Ok(InheritanceVerdict {
        perfect: true,
        witness: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectnessReport {
    pub subgraph: SubgraphVerdict,
    pub inheritance: InheritanceVerdict,
}

pub fn perfectness(w: &StepGraphon, upto: usize) -> Result<PerfectnessReport> {
    Ok(PerfectnessReport {
        subgraph: subgraph_perfect_up_to(w, upto)?,
        inheritance: inheritance_perfect(w)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementClosure {
    pub graphon: SubgraphVerdict,
    pub complement: SubgraphVerdict,
}

/// Compares the bounded subgraph verdicts of `w` and its complement. They
/// must agree because the family of odd holes and antiholes is closed under
/// complementation.
pub fn complement_closure_check(w: &StepGraphon, upto: usize) -> Result<ComplementClosure> {
    let graphon = subgraph_perfect_up_to(w, upto)?;
    let complement = subgraph_perfect_up_to(&w.complement(), upto)?;
    if graphon.perfect != complement.perfect {
        return Err(Error::Invariant(format!(
            "subgraph verdict up to {upto} differs from its complement's ({} vs {})",
            graphon.perfect, complement.perfect
        )));
    }
    Ok(ComplementClosure { graphon, complement })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImplicationOutcome {
    /// No hole up to the bound, and inheritance-perfect.
    Holds,
    /// A hole or antihole was found, so there is nothing to check.
    Vacuous(HoleWitness),
    /// The restriction in `failure` is imperfect, and a hole exists beyond
    /// the requested bound.
    InsufficientBound {
        failure: InheritanceWitness,
        longer: HoleWitness,
    },
}

/// If no hole up to `upto` exists, checks inheritance-perfectness. A failing
/// restriction must be explained by a longer hole; holes on at most `m`
/// distinct blocks suffice, so the retry searches up to `2m + 1`.
pub fn perfect_implies_inheritance_check(w: &StepGraphon, upto: usize) -> Result<ImplicationOutcome> {
    if chromatic_number(w)?.value.is_infinite() {
        return Err(Error::InvalidArgument("the implication needs a finite chromatic number".into()));
    }
    let verdict = subgraph_perfect_up_to(w, upto)?;
    if let Some(witness) = verdict.witness {
        return Ok(ImplicationOutcome::Vacuous(witness));
    }
    let inheritance = inheritance_perfect(w)?;
    let Some(failure) = inheritance.witness else {
        return Ok(ImplicationOutcome::Holds);
    };
    let extended = default_hole_bound(w).max(upto);
    match subgraph_perfect_up_to(w, extended)?.witness {
        Some(longer) if longer.length > upto => Ok(ImplicationOutcome::InsufficientBound { failure, longer }),
        _ => Err(Error::Invariant(format!(
            "no odd hole or antihole up to {extended}, yet the restriction to {} has chi {} and omega {}",
            failure.blocks, failure.chromatic, failure.clique
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densities::induced_density;
    use crate::graphon::representation_of;
    use crate::rational::{int, ratio};

    fn half_k3() -> StepGraphon {
        let h = ratio(1, 2);
        let z = int(0);
        StepGraphon::new(
            vec![ratio(1, 3); 3],
            vec![
                vec![z.clone(), h.clone(), h.clone()],
                vec![h.clone(), z.clone(), h.clone()],
                vec![h.clone(), h, z],
            ],
        )
        .unwrap()
    }

    fn bipartite() -> StepGraphon {
        representation_of(&FiniteGraph::cycle(6).unwrap()).unwrap()
    }

    #[test]
    fn separating_example() {
        let u = half_k3();
        let v = subgraph_perfect_up_to(&u, 5).unwrap();
        assert!(!v.perfect);
        let witness = v.witness.unwrap();
        assert_eq!((witness.length, witness.kind), (5, HoleKind::Hole));
        assert!(induced_density(&witness.pattern(), &u).unwrap() > int(0));
        assert!(inheritance_perfect(&u).unwrap().perfect);
    }

    #[test]
    fn bipartite_and_zero_are_perfect() {
        assert!(subgraph_perfect_up_to(&bipartite(), 11).unwrap().perfect);
        let zero = StepGraphon::constant(int(0)).unwrap();
        assert!(subgraph_perfect_up_to(&zero, 15).unwrap().perfect);
        assert!(inheritance_perfect(&zero).unwrap().perfect);
    }

    #[test]
    fn c5_fails_inheritance_on_all_blocks() {
        let c5 = representation_of(&FiniteGraph::cycle(5).unwrap()).unwrap();
        let v = inheritance_perfect(&c5).unwrap();
        let w = v.witness.unwrap();
        assert_eq!(w.blocks, BlockSet::all(5));
        assert_eq!(w.chromatic, ExtendedRational::from_usize(3));
        assert_eq!(w.clique, ExtendedRational::from_usize(2));
        assert!(matches!(
            perfect_implies_inheritance_check(&c5, 5).unwrap(),
            ImplicationOutcome::Vacuous(_)
        ));
    }

    #[test]
    fn complement_closure_examples() {
        let zero = StepGraphon::constant(int(0)).unwrap();
        let c = complement_closure_check(&zero, 9).unwrap();
        assert!(c.graphon.perfect && c.complement.perfect);
        let c = complement_closure_check(&half_k3(), 5).unwrap();
        assert!(!c.graphon.perfect && !c.complement.perfect);
        complement_closure_check(&bipartite(), 9).unwrap();
    }

    #[test]
    fn short_bound_is_reported_as_insufficient() {
        let c7 = representation_of(&FiniteGraph::cycle(7).unwrap()).unwrap();
        match perfect_implies_inheritance_check(&c7, 5).unwrap() {
            ImplicationOutcome::InsufficientBound { longer, .. } => assert_eq!(longer.length, 7),
            other => panic!("expected an insufficient bound, got {other:?}"),
        }
        assert_eq!(perfect_implies_inheritance_check(&bipartite(), 7).unwrap(), ImplicationOutcome::Holds);
    }

    #[test]
    fn bound_must_be_odd() {
        assert!(subgraph_perfect_up_to(&bipartite(), 6).is_err());
        assert!(subgraph_perfect_up_to(&bipartite(), 3).is_err());
    }
}
