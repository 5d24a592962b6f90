//! Marguerites: the distinguished subgraph of a block of `G(Σ)` whose
//! external vertices are the block's gates.
//!
//! The maps are written down on the quotient cycle `1..k` (`Σ_k`, the
//! non-trivial arc splits) and lifted into the ambient graph.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::{BVertex, BunemanGraph};
use crate::error::{Error, Result};
use crate::ordering::CircularOrdering;
use crate::split::{Split, SplitSystem};
use crate::synthesis::block_cycle;
use crate::taxa::TaxaSet;

/// The cyclic interval `from, from+1, …, to` of `0..k`.
pub fn interval(k: usize, from: usize, to: usize) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(k);
    let mut x = from % k;
    loop {
        b.insert(x);
        if x == to % k {
            return b;
        }
        x = (x + 1) % k;
    }
}

/// `Σ_k`: the non-trivial arc splits of the identity ordering of `k` taxa.
pub fn sigma_k(k: usize) -> Result<SplitSystem> {
    if k < 4 {
        return Err(Error::AdjacentPairsNeedFourTaxa);
    }
    let taxa = Arc::new(TaxaSet::numbered(k)?);
    Ok(CircularOrdering::identity(k).all_splits(taxa).remove_trivial())
}

/// `φ_i^j` on `Σ_k`: sends `S` to the complement of `S(i)` when `S(i)` lies
/// in `[i-j, i]`, to `S(i)` otherwise. Taxa and `i` are 0-based.
pub fn phi_map(sk: &SplitSystem, i: usize, j: usize) -> BVertex {
    let k = sk.n();
    let win = interval(k, (i + k * k - j) % k, i);
    let mut c = FixedBitSet::with_capacity(sk.len());
    for (t, s) in sk.iter().enumerate() {
        let own = s.side_of(i).expect("taxon in range");
        let chosen_own = !own.is_subset(&win);
        // own contains 0 iff it is the canonical side
        c.set(t, s.contains(i) == chosen_own);
    }
    BVertex::from_choice(c)
}

/// `ψ_i^j`: `φ_i^j` flipped on `S_i^+ = [i, i+1]`.
pub fn psi_map(sk: &SplitSystem, i: usize, j: usize) -> BVertex {
    let k = sk.n();
    let plus = Split::from_bits(interval(k, i, i + 1)).expect("proper pair");
    let t = sk.iter().position(|s| *s == plus).expect("adjacent pair in Σ_k");
    phi_map(sk, i, j).flipped(t)
}

/// A marguerite located in a block of an ambient Buneman graph.
#[derive(Clone, Debug)]
pub struct Marguerite {
    pub k: usize,
    pub block: usize,
    pub component: usize,
    /// The taxon blocks `Y_0 … Y_{k-1}` of the component in cyclic order.
    pub cycle: Vec<Vec<usize>>,
    /// `phi[i][j]`: vertex index of `φ_i^j`, `j = 0..=k-3`.
    pub phi: Vec<Vec<usize>>,
    /// `psi[i][j-1]`: vertex index of `ψ_i^j`, `j = 1..=k-4`.
    pub psi: Vec<Vec<usize>>,
}

impl Marguerite {
    /// The external vertices `φ_i^0` in cyclic order.
    pub fn external(&self) -> Vec<usize> {
        self.phi.iter().map(|p| p[0]).collect()
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        self.phi.iter().chain(&self.psi).flatten().copied().collect()
    }

    /// The external path from `φ_i^0` to `φ_{i+1}^0`.
    pub fn external_path(&self, i: usize) -> &[usize] {
        &self.phi[i]
    }
}

/// Maps quotient vertices on `Σ_k` into the ambient graph.
struct Lifter<'a> {
    g: &'a BunemanGraph,
    component: usize,
    /// per component split: (ambient index, index in Σ_k, orientation flip)
    targets: Vec<(usize, usize, bool)>,
    template: BVertex,
}

impl<'a> Lifter<'a> {
    fn new(g: &'a BunemanGraph, component: usize, cycle: &[Vec<usize>], sk: &SplitSystem) -> Result<Self> {
        let n = g.sigma().n();
        let k = cycle.len();
        let mut block_of = vec![0usize; n];
        for (b, ys) in cycle.iter().enumerate() {
            for &x in ys {
                block_of[x] = b;
            }
        }
        let sk_index: HashMap<&Split, usize> = sk.iter().zip(0..).collect();
        let mut targets = Vec::new();
        for &a in &g.components()[component] {
            let mut q = FixedBitSet::with_capacity(k);
            for x in g.splits()[a].bits().ones() {
                q.insert(block_of[x]);
            }
            let flip = !q.contains(0);
            let qs = Split::from_bits(q)?;
            let &t = sk_index
                .get(&qs)
                .ok_or_else(|| Error::Internal("component split is not a quotient arc".into()))?;
            targets.push((a, t, flip));
        }
        let template = g.gate(g.vertex(g.leaf(0)), component);
        Ok(Lifter {
            g,
            component,
            targets,
            template,
        })
    }

    fn lift(&self, q: &BVertex) -> Result<usize> {
        let mut v = self.template.clone();
        for &(a, t, flip) in &self.targets {
            v.set(a, q.canonical(t) != flip);
        }
        let id = self
            .g
            .index_of(&v)
            .ok_or_else(|| Error::Internal(format!("lifted marguerite vertex {v:?} missing")))?;
        let block = &self.g.blocks()[self.g.block_of_component(self.component)];
        if block.vertices.binary_search(&id).is_err() {
            return Err(Error::Internal("lifted marguerite vertex outside its block".into()));
        }
        Ok(id)
    }
}

/// The marguerite of block `block`. Fails on cut-edges and on components
/// that are not circular.
pub fn marguerite(g: &BunemanGraph, block: usize) -> Result<Marguerite> {
    let b = g
        .blocks()
        .get(block)
        .ok_or_else(|| Error::Internal(format!("no block {block}")))?;
    if b.is_cut_edge() {
        return Err(Error::CutEdgeBlock(block));
    }
    let component = b.component;
    let bc = block_cycle(&g.component_system(component))?;
    let k = bc.len();
    let sk = sigma_k(k)?;
    let lifter = Lifter::new(g, component, &bc.blocks, &sk)?;
    let mut phi = Vec::with_capacity(k);
    let mut psi = Vec::with_capacity(k);
    for i in 0..k {
        phi.push(
            (0..=k - 3)
                .map(|j| lifter.lift(&phi_map(&sk, i, j)))
                .collect::<Result<Vec<_>>>()?,
        );
        psi.push(
            (1..=k.saturating_sub(4))
                .map(|j| lifter.lift(&psi_map(&sk, i, j)))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(Marguerite {
        k,
        block,
        component,
        cycle: bc.blocks,
        phi,
        psi,
    })
}

/// The marguerites of all blocks that are not cut-edges.
pub fn marguerites(g: &BunemanGraph) -> Result<Vec<Marguerite>> {
    (0..g.blocks().len())
        .filter(|&b| !g.blocks()[b].is_cut_edge())
        .map(|b| marguerite(g, b))
        .collect()
}
