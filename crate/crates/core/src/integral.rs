//! Independence number, chromatic number and clique number of step
//! graphons, evaluated on the block quotient.
//!
//! A looped block (positive diagonal value) cannot meet an independent set in
//! positive measure, so it is excluded from `alpha`, and no finite colouring
//! covers it: `chi = inf`. Placing every vertex of `K_r` in that block gives
//! `t(K_r, W) > 0` for all `r`, hence `omega = inf` as well.

use num_traits::Zero;

use crate::densities::{density, density_positive, MAX_DENSITY_BLOCKS};
use crate::error::Result;
use crate::graph::{graphs_up_to, FiniteGraph};
use crate::graphon::{representation_of, BlockSet, StepGraphon};
use crate::quotient::{QuotientGraph, Reduced};
use crate::rational::{ExtendedRational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub value: Rational,
    /// Lexicographically smallest maximum-measure independent block-set.
    pub witness: BlockSet,
}

pub fn independence_number(w: &StepGraphon) -> Result<IndependenceReport> {
    let r = Reduced::of(w)?;
    let mut best: Option<(Rational, BlockSet)> = None;
    for mask in r.maximal_independent_sets() {
        let value = r.mask_weight(mask);
        let set = r.expand(mask);
        best = match best {
            Some((bv, bs)) if bv > value || (bv == value && bs <= set) => Some((bv, bs)),
            _ => Some((value, set)),
        };
    }
    let (value, witness) = best.unwrap_or((Rational::zero(), BlockSet::default()));
    Ok(IndependenceReport { value, witness })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticReport {
    pub value: ExtendedRational,
    /// Colour of every block when finite.
    pub colouring: Option<Vec<usize>>,
}

pub fn chromatic_number(w: &StepGraphon) -> Result<ChromaticReport> {
    let q = QuotientGraph::of(w);
    if !q.positive_loops.is_empty() {
        return Ok(ChromaticReport {
            value: ExtendedRational::Infinite,
            colouring: None,
        });
    }
    let r = Reduced::of(w)?;
    let (k, colours) = r.chromatic_number();
    let mut colouring = vec![0; w.blocks()];
    for (v, group) in r.groups.iter().enumerate() {
        for &b in group {
            colouring[b] = colours[v];
        }
    }
    Ok(ChromaticReport {
        value: ExtendedRational::from_usize(k),
        colouring: Some(colouring),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueReport {
    pub value: ExtendedRational,
    /// A maximum clique of blocks, or the looped block that makes `omega`
    /// infinite.
    pub witness: BlockSet,
}

pub fn clique_number(w: &StepGraphon) -> Result<CliqueReport> {
    let q = QuotientGraph::of(w);
    if let Some(b) = q.positive_loops.iter().next() {
        return Ok(CliqueReport {
            value: ExtendedRational::Infinite,
            witness: BlockSet::new([b]),
        });
    }
    let r = Reduced::of(w)?;
    let (size, mask) = r.clique_number();
    let witness = BlockSet::new(
        (0..r.len())
            .filter(|&v| mask >> v & 1 == 1)
            .map(|v| r.groups[v][0]),
    );
    Ok(CliqueReport {
        value: ExtendedRational::from_usize(size),
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KPartiteReport {
    pub k: usize,
    pub chromatic: ExtendedRational,
    pub graphs_checked: usize,
    /// A graph of chromatic number above `k` with positive density, and its
    /// exact density when the block count allows enumeration.
    pub witness: Option<(FiniteGraph, Option<Rational>)>,
    /// `chi(W) > k` but no witness exists on at most `vmax` vertices.
    pub search_exhausted: bool,
    pub consistent: bool,
}

/// Checks `chi(W) <= k  <=>  t(G, W) = 0 for every G with chi(G) >= k + 1`
/// over all graphs on at most `vmax` vertices.
pub fn k_partite_criterion(w: &StepGraphon, k: usize, vmax: usize) -> Result<KPartiteReport> {
    use crate::error::Error;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if vmax > 7 {
        return Err(Error::TooLarge {
            what: "k-partite search vertex bound",
            size: vmax,
            limit: 7,
        });
    }
    let chromatic = chromatic_number(w)?.value;
    let within = chromatic <= ExtendedRational::from_usize(k);
    let mut checked = 0;
    let mut witness = None;
    let mut consistent = true;
    for g in graphs_up_to(vmax) {
        let chi_g = chromatic_number(&representation_of(&g)?)?.value;
        if chi_g <= ExtendedRational::from_usize(k) {
            continue;
        }
        checked += 1;
        if density_positive(&g, w).is_some() {
            if within {
                consistent = false;
            }
            if witness.is_none() {
                let exact = if w.blocks() <= MAX_DENSITY_BLOCKS {
                    Some(density(&g, w)?)
                } else {
                    None
                };
                witness = Some((g, exact));
            }
            if !within {
                break;
            }
        }
    }
    let search_exhausted = !within && witness.is_none();
    Ok(KPartiteReport {
        k,
        chromatic,
        graphs_checked: checked,
        witness,
        search_exhausted,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn rep(g: &FiniteGraph) -> StepGraphon {
        representation_of(g).unwrap()
    }

    #[test]
    fn alpha_examples() {
        let zero = StepGraphon::constant(int(0)).unwrap();
        assert_eq!(independence_number(&zero).unwrap().value, int(1));
        let p = StepGraphon::constant(ratio(1, 5)).unwrap();
        let a = independence_number(&p).unwrap();
        assert_eq!(a.value, int(0));
        assert!(a.witness.is_empty());
        let w = StepGraphon::new(
            vec![ratio(3, 10), ratio(7, 10)],
            vec![vec![int(0), int(1)], vec![int(1), int(0)]],
        )
        .unwrap();
        let a = independence_number(&w).unwrap();
        assert_eq!(a.value, ratio(7, 10));
        assert_eq!(a.witness, BlockSet::new([1]));
    }

    #[test]
    fn alpha_ties_break_lexicographically() {
        let a = independence_number(&rep(&FiniteGraph::cycle(5).unwrap())).unwrap();
        assert_eq!(a.value, ratio(2, 5));
        assert_eq!(a.witness, BlockSet::new([0, 2]));
    }

    #[test]
    fn chromatic_examples() {
        let y7 = StepGraphon::constant(ratio(1, 7)).unwrap();
        assert_eq!(chromatic_number(&y7).unwrap().value, ExtendedRational::Infinite);
        let zero = StepGraphon::constant(int(0)).unwrap();
        assert_eq!(chromatic_number(&zero).unwrap().value, ExtendedRational::from_usize(1));
        let c5 = chromatic_number(&rep(&FiniteGraph::cycle(5).unwrap())).unwrap();
        assert_eq!(c5.value, ExtendedRational::from_usize(3));
        let col = c5.colouring.unwrap();
        for i in 0..5 {
            assert_ne!(col[i], col[(i + 1) % 5]);
        }
    }

    #[test]
    fn clique_examples() {
        let zero = StepGraphon::constant(int(0)).unwrap();
        assert_eq!(clique_number(&zero).unwrap().value, ExtendedRational::from_usize(1));
        let half = StepGraphon::constant(ratio(1, 2)).unwrap();
        assert_eq!(clique_number(&half).unwrap().value, ExtendedRational::Infinite);
        let c5 = rep(&FiniteGraph::cycle(5).unwrap());
        assert_eq!(clique_number(&c5).unwrap().value, ExtendedRational::from_usize(2));
    }

    #[test]
    fn k_partite_examples() {
        let c5 = rep(&FiniteGraph::cycle(5).unwrap());
        let report = k_partite_criterion(&c5, 2, 5).unwrap();
        assert!(report.consistent);
        let (g, d) = report.witness.expect("an odd cycle maps into C5");
        // the only 3-chromatic graph on <= 5 vertices mapping into C5 is C5
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 5));
        assert!(d.unwrap() > int(0));

        let bip = rep(&FiniteGraph::cycle(6).unwrap());
        let report = k_partite_criterion(&bip, 2, 7).unwrap();
        assert!(report.consistent && report.witness.is_none() && !report.search_exhausted);

        let zero = StepGraphon::constant(int(0)).unwrap();
        let report = k_partite_criterion(&zero, 1, 4).unwrap();
        assert!(report.consistent && report.witness.is_none());
    }

    #[test]
    fn k_partite_reports_exhaustion() {
        // Odd girth 7: nothing on at most 5 vertices with chi >= 3 maps in.
        let c7 = rep(&FiniteGraph::cycle(7).unwrap());
        let report = k_partite_criterion(&c7, 2, 5).unwrap();
        assert!(report.search_exhausted && report.consistent);
    }
}
