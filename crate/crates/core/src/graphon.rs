//! Step graphons with exact rational data.
//!
//! The underlying probability space is `[0,1]` with Lebesgue measure, cut
//! into consecutive intervals ("blocks") of the given measures. A step
//! graphon is constant on every product of two blocks.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::rational::{int, Rational};

/// Positive block masses summing to exactly one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockPartition {
    measures: Vec<Rational>,
}

impl BlockPartition {
    pub fn new(measures: Vec<Rational>) -> Result<Self> {
        if measures.is_empty() {
            return Err(Error::BadMeasure {
                index: 0,
                reason: "partition has no blocks".into(),
            });
        }
        for (index, m) in measures.iter().enumerate() {
            if !m.is_positive() {
                return Err(Error::BadMeasure {
                    index,
                    reason: format!("measure {m} is not positive"),
                });
            }
        }
        let total: Rational = measures.iter().sum();
        if !total.is_one() {
            return Err(Error::BadMeasure {
                index: measures.len() - 1,
                reason: format!("measures sum to {total}, not 1"),
            });
        }
        Ok(BlockPartition { measures })
    }

    /// `n` blocks of measure `1/n`.
    pub fn uniform(n: usize) -> Self {
        assert!(n > 0);
        let m = Rational::new(1.into(), n.into());
        BlockPartition {
            measures: vec![m; n],
        }
    }

    pub fn len(&self) -> usize {
        self.measures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.measures.is_empty()
    }

    pub fn measures(&self) -> &[Rational] {
        &self.measures
    }

    pub fn measure(&self, block: usize) -> &Rational {
        &self.measures[block]
    }

    /// Left endpoints of the blocks followed by the final endpoint 1.
    pub fn endpoints(&self) -> Vec<Rational> {
        let mut points = Vec::with_capacity(self.measures.len() + 1);
        let mut acc = Rational::zero();
        points.push(acc.clone());
        for m in &self.measures {
            acc += m;
            points.push(acc.clone());
        }
        points
    }
}

/// A sorted set of block indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BlockSet(Vec<usize>);

impl BlockSet {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        BlockSet(v)
    }

    pub fn all(m: usize) -> Self {
        BlockSet((0..m).collect())
    }

    pub fn from_mask(mask: u64) -> Self {
        BlockSet((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn contains(&self, block: usize) -> bool {
        self.0.binary_search(&block).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn intersection(&self, other: &BlockSet) -> BlockSet {
        BlockSet(self.iter().filter(|&b| other.contains(b)).collect())
    }
}

impl std::fmt::Display for BlockSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("{")?;
        for (k, b) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepGraphon {
    partition: BlockPartition,
    values: Vec<Vec<Rational>>,
}

impl StepGraphon {
    pub fn new(measures: Vec<Rational>, values: Vec<Vec<Rational>>) -> Result<Self> {
        let partition = BlockPartition::new(measures)?;
        Self::with_partition(partition, values)
    }

    pub fn with_partition(partition: BlockPartition, values: Vec<Vec<Rational>>) -> Result<Self> {
        let m = partition.len();
        if values.len() != m || values.iter().any(|row| row.len() != m) {
            return Err(Error::Shape { expected: m });
        }
        for (i, row) in values.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.is_negative() || *v > Rational::one() {
                    return Err(Error::OutOfRange { row: i, col: j });
                }
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                if values[i][j] != values[j][i] {
                    return Err(Error::NonSymmetric { row: i, col: j });
                }
            }
        }
        Ok(StepGraphon { partition, values })
    }

    /// One block of measure one carrying the value `p`.
    pub fn constant(p: Rational) -> Result<Self> {
        Self::new(vec![Rational::one()], vec![vec![p]])
    }

    pub fn blocks(&self) -> usize {
        self.partition.len()
    }

    pub fn partition(&self) -> &BlockPartition {
        &self.partition
    }

    pub fn measures(&self) -> &[Rational] {
        self.partition.measures()
    }

    pub fn measure(&self, block: usize) -> &Rational {
        self.partition.measure(block)
    }

    pub fn value(&self, i: usize, j: usize) -> &Rational {
        &self.values[i][j]
    }

    pub fn values(&self) -> &[Vec<Rational>] {
        &self.values
    }

    /// True when every value is 0 or 1.
    pub fn is_zero_one(&self) -> bool {
        self.values
            .iter()
            .flatten()
            .all(|v| v.is_zero() || v.is_one())
    }

    pub fn complement(&self) -> StepGraphon {
        let values = self
            .values
            .iter()
            .map(|row| row.iter().map(|v| Rational::one() - v).collect())
            .collect();
        StepGraphon {
            partition: self.partition.clone(),
            values,
        }
    }

    /// The subgraphon on the union of `blocks`, with measures renormalized.
    pub fn restrict(&self, blocks: &BlockSet) -> Result<StepGraphon> {
        if blocks.is_empty() {
            return Err(Error::EmptyRestriction);
        }
        if let Some(bad) = blocks.iter().find(|&b| b >= self.blocks()) {
            return Err(Error::BlockIndex {
                index: bad,
                blocks: self.blocks(),
            });
        }
        let total: Rational = blocks.iter().map(|b| self.measure(b)).sum();
        let measures = blocks.iter().map(|b| self.measure(b) / &total).collect();
        let values = blocks
            .iter()
            .map(|i| blocks.iter().map(|j| self.values[i][j].clone()).collect())
            .collect();
        Ok(StepGraphon {
            partition: BlockPartition { measures },
            values,
        })
    }

    /// Merges runs of consecutive blocks that induce the same function: two
    /// neighbouring blocks fuse when their rows agree everywhere and the
    /// values on their own and mutual squares coincide. The result is
    /// pointwise equal to `self` on `[0,1]^2`.
    pub fn coarsen(&self) -> StepGraphon {
        let m = self.blocks();
        // groups[k] = consecutive run of original blocks
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for b in 0..m {
            if let Some(last) = groups.last_mut() {
                let a = *last.last().unwrap();
                let same_rows = (0..m).all(|j| self.values[a][j] == self.values[b][j]);
                if same_rows && self.values[a][a] == self.values[a][b] {
                    last.push(b);
                    continue;
                }
            }
            groups.push(vec![b]);
        }
        let measures = groups
            .iter()
            .map(|g| g.iter().map(|&b| self.measure(b)).sum())
            .collect();
        let values = groups
            .iter()
            .map(|gi| {
                groups
                    .iter()
                    .map(|gj| self.values[gi[0]][gj[0]].clone())
                    .collect()
            })
            .collect();
        StepGraphon {
            partition: BlockPartition { measures },
            values,
        }
    }

    /// Reorders the blocks; `order[k]` is the old index placed at position `k`.
    pub fn permute(&self, order: &[usize]) -> Result<StepGraphon> {
        let m = self.blocks();
        let mut seen = vec![false; m];
        if order.len() != m {
            return Err(Error::InvalidArgument(format!(
                "permutation has length {}, expected {m}",
                order.len()
            )));
        }
        for &o in order {
            if o >= m || seen[o] {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
            seen[o] = true;
        }
        let measures = order.iter().map(|&o| self.measure(o).clone()).collect();
        let values = order
            .iter()
            .map(|&i| order.iter().map(|&j| self.values[i][j].clone()).collect())
            .collect();
        Ok(StepGraphon {
            partition: BlockPartition { measures },
            values,
        })
    }
}

/// Graphon representation of `graph`: `n` blocks of measure `1/n`, value 1
/// on edges and 0 elsewhere (including the diagonal).
pub fn representation_of(graph: &FiniteGraph) -> Result<StepGraphon> {
    let n = graph.vertex_count();
    if n == 0 {
        return Err(Error::InvalidGraph("graph has no vertices".into()));
    }
    let mut values = vec![vec![Rational::zero(); n]; n];
    for (u, v) in graph.edges() {
        values[u][v] = Rational::one();
        values[v][u] = Rational::one();
    }
    Ok(StepGraphon {
        partition: BlockPartition::uniform(n),
        values,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockClass {
    Zero,
    Partial,
    Full,
}

impl BlockClass {
    pub fn of(value: &Rational) -> Self {
        if value.is_zero() {
            BlockClass::Zero
        } else if value.is_one() {
            BlockClass::Full
        } else {
            BlockClass::Partial
        }
    }

    /// Can an edge of a pattern land here with positive probability?
    pub fn admits_edge(self) -> bool {
        self != BlockClass::Zero
    }

    /// Can a non-edge of a pattern land here with positive probability?
    pub fn admits_non_edge(self) -> bool {
        self != BlockClass::Full
    }
}

/// Ternary support classification of every block pair, i.e. `supp(W)` and
/// `supp(1-W)` at block resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStructure {
    class: Vec<Vec<BlockClass>>,
    loop_positive: Vec<bool>,
    loop_full: Vec<bool>,
}

impl BlockStructure {
    pub fn blocks(&self) -> usize {
        self.class.len()
    }

    pub fn class(&self, i: usize, j: usize) -> BlockClass {
        self.class[i][j]
    }

    pub fn loop_positive(&self, i: usize) -> bool {
        self.loop_positive[i]
    }

    pub fn loop_full(&self, i: usize) -> bool {
        self.loop_full[i]
    }

    pub fn any_positive_loop(&self) -> bool {
        self.loop_positive.iter().any(|&b| b)
    }

    /// True when no pair is PARTIAL.
    pub fn is_zero_one(&self) -> bool {
        self.class.iter().flatten().all(|&c| c != BlockClass::Partial)
    }
}

pub fn support_structure(w: &StepGraphon) -> BlockStructure {
    let m = w.blocks();
    let class: Vec<Vec<BlockClass>> = (0..m)
        .map(|i| (0..m).map(|j| BlockClass::of(w.value(i, j))).collect())
        .collect();
    let loop_positive = (0..m).map(|i| class[i][i] != BlockClass::Zero).collect();
    let loop_full = (0..m).map(|i| class[i][i] == BlockClass::Full).collect();
    BlockStructure {
        class,
        loop_positive,
        loop_full,
    }
}

/// Re-expresses both graphons on the partition generated by the union of
/// their block endpoints in `[0,1]`.
pub fn common_refinement(a: &StepGraphon, b: &StepGraphon) -> (StepGraphon, StepGraphon) {
    let ea = a.partition.endpoints();
    let eb = b.partition.endpoints();
    let mut points: Vec<Rational> = ea.iter().chain(eb.iter()).cloned().collect();
    points.sort();
    points.dedup();

    // owner of each refined cell in each input partition
    let owner = |ends: &[Rational]| -> Vec<usize> {
        let mut out = Vec::with_capacity(points.len() - 1);
        let mut block = 0;
        for cell in points.windows(2) {
            while ends[block + 1] <= cell[0] {
                block += 1;
            }
            out.push(block);
        }
        out
    };
    let oa = owner(&ea);
    let ob = owner(&eb);
    let measures: Vec<Rational> = points.windows(2).map(|c| &c[1] - &c[0]).collect();
    let lift = |w: &StepGraphon, own: &[usize]| StepGraphon {
        partition: BlockPartition {
            measures: measures.clone(),
        },
        values: own
            .iter()
            .map(|&i| own.iter().map(|&j| w.values[i][j].clone()).collect())
            .collect(),
    };
    (lift(a, &oa), lift(b, &ob))
}

/// Constant graphon `1/n`, the `Y_n` family.
pub fn constant_reciprocal(n: usize) -> StepGraphon {
    StepGraphon::constant(Rational::new(1.into(), n.into())).expect("1/n lies in [0,1]")
}

/// The constant-zero graphon on a single block.
pub fn zero_graphon() -> StepGraphon {
    StepGraphon::constant(int(0)).unwrap()
}
