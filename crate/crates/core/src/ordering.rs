use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::split::{Split, SplitSystem};
use crate::taxa::TaxaSet;

/// A circular ordering of all taxa, up to rotation and reflection.
///
/// Stored canonically: taxon 0 first, followed by the smaller of its two
/// neighbours.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CircularOrdering {
    order: Vec<usize>,
}

impl CircularOrdering {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &x in &order {
            if x >= n || seen[x] {
                return Err(Error::InvalidOrdering);
            }
            seen[x] = true;
        }
        if n < 3 {
            return Err(Error::TooFewTaxa(n));
        }
        Ok(Self::canonicalize(order))
    }

    /// `0, 1, ..., n-1`.
    pub fn identity(n: usize) -> Self {
        CircularOrdering {
            order: (0..n).collect(),
        }
    }

    fn canonicalize(mut order: Vec<usize>) -> Self {
        let n = order.len();
        let p = order.iter().position(|&x| x == 0).unwrap();
        order.rotate_left(p);
        if order[n - 1] < order[1] {
            order[1..].reverse();
        }
        CircularOrdering { order }
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Position of every taxon in the canonical sequence.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.n()];
        for (i, &x) in self.order.iter().enumerate() {
            pos[x] = i;
        }
        pos
    }

    /// True iff `block` is a contiguous arc. The full set and the empty set
    /// are reported as arcs too.
    pub fn is_interval(&self, block: &FixedBitSet) -> bool {
        let n = self.n();
        let mut transitions = 0;
        for i in 0..n {
            let a = block.contains(self.order[i]);
            let b = block.contains(self.order[(i + 1) % n]);
            if a != b {
                transitions += 1;
            }
        }
        transitions <= 2
    }

    pub fn displays_split(&self, s: &Split) -> bool {
        self.is_interval(s.bits())
    }

    pub fn displays(&self, sigma: &SplitSystem) -> bool {
        sigma.n() == self.n() && sigma.iter().all(|s| self.displays_split(s))
    }

    /// The arc of `len` taxa starting at position `start`.
    pub fn arc(&self, start: usize, len: usize) -> FixedBitSet {
        let n = self.n();
        let mut bits = FixedBitSet::with_capacity(n);
        for k in 0..len {
            bits.insert(self.order[(start + k) % n]);
        }
        bits
    }

    /// All `n(n-1)/2` interval splits.
    pub fn all_splits(&self, taxa: Arc<TaxaSet>) -> SplitSystem {
        let n = self.n();
        let mut sys = SplitSystem::empty(taxa);
        // arcs starting at position i of length 1..n-1; those not containing
        // position 0 cover every split exactly once
        for start in 1..n {
            for len in 1..=(n - start) {
                sys.insert(Split::from_bits(self.arc(start, len)).unwrap());
            }
        }
        debug_assert_eq!(sys.len(), n * (n - 1) / 2);
        sys
    }

    /// `Σ_d`: the splits separating each adjacent pair from the rest.
    pub fn sigma_d(&self, taxa: Arc<TaxaSet>) -> Result<SplitSystem> {
        let n = self.n();
        if n < 4 {
            return Err(Error::AdjacentPairsNeedFourTaxa);
        }
        let mut sys = SplitSystem::empty(taxa);
        for i in 0..n {
            sys.insert(Split::from_bits(self.arc(i, 2)).unwrap());
        }
        Ok(sys)
    }

    pub fn display(&self, taxa: &TaxaSet) -> String {
        let names: Vec<&str> = self.order.iter().map(|&x| taxa.name(x)).collect();
        names.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(n: usize, xs: &[usize]) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(n);
        for &x in xs {
            b.insert(x);
        }
        b
    }

    #[test]
    fn canonical_form() {
        let a = CircularOrdering::new(vec![2, 3, 4, 0, 1]).unwrap();
        let b = CircularOrdering::new(vec![1, 0, 4, 3, 2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.order(), &[0, 1, 2, 3, 4]);
        assert!(CircularOrdering::new(vec![0, 1, 1]).is_err());
        assert!(CircularOrdering::new(vec![0, 1, 3]).is_err());
    }

    #[test]
    fn intervals() {
        let o = CircularOrdering::identity(5);
        assert!(o.is_interval(&bits(5, &[1, 2])));
        assert!(o.is_interval(&bits(5, &[4, 0])));
        assert!(!o.is_interval(&bits(5, &[0, 2])));
    }

    #[test]
    fn displays_examples() {
        let t = Arc::new(TaxaSet::numbered(5).unwrap());
        let o = CircularOrdering::identity(5);
        assert!(o.displays(&SplitSystem::compact(&t, &["12|345", "23|451"]).unwrap()));
        assert!(!o.displays(&SplitSystem::compact(&t, &["13|245"]).unwrap()));
        assert!(o.displays(&SplitSystem::trivial(t)));
    }

    #[test]
    fn all_splits_counts() {
        let t4 = Arc::new(TaxaSet::numbered(4).unwrap());
        let all = CircularOrdering::identity(4).all_splits(t4.clone());
        let expect = SplitSystem::compact(&t4, &["1", "2", "3", "4", "12|34", "23|14"]).unwrap();
        assert_eq!(all, expect);
        for n in 3..10 {
            let t = Arc::new(TaxaSet::numbered(n).unwrap());
            let o = CircularOrdering::identity(n);
            let all = o.all_splits(t);
            assert_eq!(all.len(), n * (n - 1) / 2);
            assert!(o.displays(&all));
        }
        let t3 = Arc::new(TaxaSet::numbered(3).unwrap());
        let all3 = CircularOrdering::identity(3).all_splits(t3.clone());
        assert_eq!(all3, SplitSystem::trivial(t3));
    }

    #[test]
    fn sigma_d_examples() {
        let t5 = Arc::new(TaxaSet::numbered(5).unwrap());
        let o = CircularOrdering::identity(5);
        assert_eq!(
            o.sigma_d(t5.clone()).unwrap(),
            SplitSystem::compact(&t5, &["12|345", "23|451", "34|512", "45|123", "51|234"]).unwrap()
        );
        let t4 = Arc::new(TaxaSet::numbered(4).unwrap());
        assert_eq!(
            CircularOrdering::identity(4).sigma_d(t4.clone()).unwrap(),
            SplitSystem::compact(&t4, &["12|34", "23|14"]).unwrap()
        );
        let t6 = Arc::new(TaxaSet::numbered(6).unwrap());
        assert_eq!(CircularOrdering::identity(6).sigma_d(t6).unwrap().len(), 6);
        let t3 = Arc::new(TaxaSet::numbered(3).unwrap());
        assert_eq!(
            CircularOrdering::identity(3).sigma_d(t3),
            Err(Error::AdjacentPairsNeedFourTaxa)
        );
    }
}
