use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::taxa::TaxaSet;

/// A bipartition `A|B` of the taxa, stored by its canonical side: the one
/// holding taxon 0. `A|B` and `B|A` are therefore the same value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Split {
    side: FixedBitSet,
}

impl Split {
    /// Builds a split from either of its sides.
    pub fn from_bits(mut side: FixedBitSet) -> Result<Self> {
        let n = side.len();
        let k = side.count_ones(..);
        if k == 0 || k == n {
            return Err(Error::DegenerateSplit);
        }
        if !side.contains(0) {
            side.toggle_range(..);
        }
        Ok(Split { side })
    }

    pub fn from_side<I: IntoIterator<Item = usize>>(n: usize, side: I) -> Result<Self> {
        let mut bits = FixedBitSet::with_capacity(n);
        for x in side {
            if x >= n {
                return Err(Error::TaxonOutOfRange { index: x, n });
            }
            bits.insert(x);
        }
        Self::from_bits(bits)
    }

    /// `{x} | X - x`.
    pub fn trivial(n: usize, x: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert(x);
        Self::from_bits(bits).expect("n >= 2")
    }

    /// Parses a compact form such as `12|345` or `12`, one character per taxon
    /// label. Only useful with single-character labels; handy in tests.
    pub fn compact(taxa: &TaxaSet, text: &str) -> Result<Self> {
        let n = taxa.len();
        let parse = |part: &str| -> Result<FixedBitSet> {
            let mut bits = FixedBitSet::with_capacity(n);
            for c in part.chars().filter(|c| !c.is_whitespace()) {
                bits.insert(taxa.index_of(&c.to_string())?);
            }
            Ok(bits)
        };
        let mut parts = text.splitn(2, '|');
        let left = parse(parts.next().unwrap_or(""))?;
        if let Some(right) = parts.next() {
            let right = parse(right)?;
            if !left.is_disjoint(&right) || left.union_count(&right) != n {
                return Err(Error::DegenerateSplit);
            }
        }
        Self::from_bits(left)
    }

    pub fn n(&self) -> usize {
        self.side.len()
    }

    /// The canonical side (contains taxon 0).
    pub fn bits(&self) -> &FixedBitSet {
        &self.side
    }

    /// Side 0 is the canonical side, side 1 its complement.
    pub fn side(&self, which: u8) -> FixedBitSet {
        if which == 0 {
            self.side.clone()
        } else {
            self.complement()
        }
    }

    pub fn complement(&self) -> FixedBitSet {
        let mut c = self.side.clone();
        c.toggle_range(..);
        c
    }

    /// True iff `x` lies on the canonical side.
    pub fn contains(&self, x: usize) -> bool {
        self.side.contains(x)
    }

    /// `S(x)`: the side containing `x`.
    pub fn side_of(&self, x: usize) -> Result<FixedBitSet> {
        if x >= self.n() {
            return Err(Error::TaxonOutOfRange { index: x, n: self.n() });
        }
        Ok(if self.contains(x) {
            self.side.clone()
        } else {
            self.complement()
        })
    }

    pub fn separates(&self, x: usize, y: usize) -> bool {
        self.contains(x) != self.contains(y)
    }

    /// Size of the smaller side.
    pub fn size(&self) -> usize {
        let k = self.side.count_ones(..);
        k.min(self.n() - k)
    }

    pub fn is_trivial(&self) -> bool {
        self.size() == 1
    }

    /// Compatibility of two splits over the same taxa. Both canonical sides
    /// contain 0, so only three of the four intersections can be empty.
    pub fn compatible_with(&self, other: &Split) -> bool {
        let a = &self.side;
        let c = &other.side;
        if a.is_subset(c) || c.is_subset(a) {
            return true;
        }
        // complement sides disjoint <=> A ∪ C = X
        a.union_count(c) == a.len()
    }

    pub fn compatible(&self, other: &Split) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::TaxaMismatch);
        }
        Ok(self.compatible_with(other))
    }

    /// Renders as `a b | c d`, canonical side first.
    pub fn display(&self, taxa: &TaxaSet) -> String {
        let left: Vec<&str> = self.side.ones().map(|i| taxa.name(i)).collect();
        let c = self.complement();
        let right: Vec<&str> = c.ones().map(|i| taxa.name(i)).collect();
        format!("{} | {}", left.join(" "), right.join(" "))
    }
}

impl Ord for Split {
    fn cmp(&self, other: &Self) -> Ordering {
        self.side
            .ones()
            .cmp(other.side.ones())
            .then_with(|| self.n().cmp(&other.n()))
    }
}

impl PartialOrd for Split {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let left: Vec<String> = self.side.ones().map(|i| i.to_string()).collect();
        let right: Vec<String> = self.complement().ones().map(|i| i.to_string()).collect();
        write!(f, "{}|{}", left.join(","), right.join(","))
    }
}

/// A set of distinct splits over a shared taxa table.
#[derive(Clone, PartialEq, Eq)]
pub struct SplitSystem {
    taxa: Arc<TaxaSet>,
    splits: BTreeSet<Split>,
}

impl SplitSystem {
    pub fn empty(taxa: Arc<TaxaSet>) -> Self {
        SplitSystem {
            taxa,
            splits: BTreeSet::new(),
        }
    }

    pub fn new<I: IntoIterator<Item = Split>>(taxa: Arc<TaxaSet>, splits: I) -> Result<Self> {
        let mut sys = Self::empty(taxa);
        for s in splits {
            sys.try_insert(s)?;
        }
        Ok(sys)
    }

    /// Builds a system from compact split strings (see [`Split::compact`]).
    pub fn compact(taxa: &Arc<TaxaSet>, splits: &[&str]) -> Result<Self> {
        let mut sys = Self::empty(taxa.clone());
        for s in splits {
            sys.insert(Split::compact(taxa, s)?);
        }
        Ok(sys)
    }

    /// All `n` trivial splits.
    pub fn trivial(taxa: Arc<TaxaSet>) -> Self {
        let n = taxa.len();
        let mut sys = Self::empty(taxa);
        for x in 0..n {
            sys.insert(Split::trivial(n, x));
        }
        sys
    }

    pub fn taxa(&self) -> &Arc<TaxaSet> {
        &self.taxa
    }

    pub fn n(&self) -> usize {
        self.taxa.len()
    }

    pub fn len(&self) -> usize {
        self.splits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.splits.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Split> + '_ {
        self.splits.iter()
    }

    pub fn splits(&self) -> &BTreeSet<Split> {
        &self.splits
    }

    pub fn to_vec(&self) -> Vec<Split> {
        self.splits.iter().cloned().collect()
    }

    pub fn contains(&self, s: &Split) -> bool {
        self.splits.contains(s)
    }

    /// Inserts a split; panics if it ranges over a different number of taxa.
    pub fn insert(&mut self, s: Split) -> bool {
        assert_eq!(s.n(), self.n(), "split over the wrong taxa");
        self.splits.insert(s)
    }

    pub fn try_insert(&mut self, s: Split) -> Result<bool> {
        if s.n() != self.n() {
            return Err(Error::TaxaMismatch);
        }
        Ok(self.splits.insert(s))
    }

    pub fn remove(&mut self, s: &Split) -> bool {
        self.splits.remove(s)
    }

    /// A system over the same taxa holding the given splits.
    pub fn with_splits<I: IntoIterator<Item = Split>>(&self, splits: I) -> Self {
        let mut sys = Self::empty(self.taxa.clone());
        for s in splits {
            sys.insert(s);
        }
        sys
    }

    pub fn is_subset(&self, other: &SplitSystem) -> bool {
        self.splits.is_subset(&other.splits)
    }

    pub fn union(&self, other: &SplitSystem) -> Self {
        let mut out = self.clone();
        out.splits.extend(other.splits.iter().cloned());
        out
    }

    pub fn is_compatible(&self) -> bool {
        let v: Vec<&Split> = self.splits.iter().collect();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if !v[i].compatible_with(v[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// `Σ⁻`: the system without its trivial splits.
    pub fn remove_trivial(&self) -> Self {
        self.with_splits(self.splits.iter().filter(|s| !s.is_trivial()).cloned())
    }

    pub fn has_all_trivials(&self) -> bool {
        (0..self.n()).all(|x| self.contains(&Split::trivial(self.n(), x)))
    }

    /// First taxon whose trivial split is absent.
    pub fn missing_trivial(&self) -> Option<usize> {
        (0..self.n()).find(|&x| !self.contains(&Split::trivial(self.n(), x)))
    }

    pub fn with_trivials(&self) -> Self {
        let mut out = self.clone();
        for x in 0..self.n() {
            out.insert(Split::trivial(self.n(), x));
        }
        out
    }

    /// The induced system on the blocks of `partition`. Blocks are reordered by
    /// their smallest taxon and named after it.
    pub fn quotient(&self, partition: &[Vec<usize>]) -> Result<SplitSystem> {
        let (blocks, block_of) = normalize_partition(self.n(), partition)?;
        let names: Vec<String> = blocks
            .iter()
            .map(|b| self.taxa.name(b[0]).to_string())
            .collect();
        let qtaxa = Arc::new(TaxaSet::new(names)?);
        let mut out = SplitSystem::empty(qtaxa);
        for s in &self.splits {
            let mut bits = FixedBitSet::with_capacity(blocks.len());
            for (bi, b) in blocks.iter().enumerate() {
                let inside = s.contains(b[0]);
                if b.iter().any(|&x| s.contains(x) != inside) {
                    let names: Vec<&str> = b.iter().map(|&x| self.taxa.name(x)).collect();
                    return Err(Error::SplitCutsBlock {
                        split: s.display(&self.taxa),
                        block: format!("{{{}}}", names.join(" ")),
                    });
                }
                bits.set(bi, inside);
            }
            debug_assert!(block_of[0] == 0);
            out.insert(Split::from_bits(bits)?);
        }
        Ok(out)
    }

    pub fn display(&self) -> Vec<String> {
        self.splits.iter().map(|s| s.display(&self.taxa)).collect()
    }
}

impl fmt::Debug for SplitSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.splits.iter()).finish()
    }
}

/// Validates a partition of `0..n` and sorts its blocks by smallest element.
/// Returns the sorted blocks and the block index of every taxon.
pub fn normalize_partition(n: usize, partition: &[Vec<usize>]) -> Result<(Vec<Vec<usize>>, Vec<usize>)> {
    let mut block_of = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(partition.len());
    for b in partition {
        if b.is_empty() {
            return Err(Error::InvalidPartition("empty block".into()));
        }
        let mut b = b.clone();
        b.sort_unstable();
        blocks.push(b);
    }
    blocks.sort();
    if blocks.len() < 3 {
        return Err(Error::InvalidPartition(format!(
            "needs at least 3 blocks, got {}",
            blocks.len()
        )));
    }
    for (bi, b) in blocks.iter().enumerate() {
        for &x in b {
            if x >= n {
                return Err(Error::TaxonOutOfRange { index: x, n });
            }
            if block_of[x] != usize::MAX {
                return Err(Error::InvalidPartition(format!("taxon {x} in two blocks")));
            }
            block_of[x] = bi;
        }
    }
    if let Some(x) = block_of.iter().position(|&b| b == usize::MAX) {
        return Err(Error::InvalidPartition(format!("taxon {x} not covered")));
    }
    Ok((blocks, block_of))
}
