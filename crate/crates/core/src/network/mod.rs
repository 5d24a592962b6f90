//! Unrooted leaf-labelled phylogenetic networks, with the extra structure of
//! 1-nested networks (every block is an edge or a cycle).

mod canonical;
mod resolve;

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph;
use crate::split::{Split, SplitSystem};
use crate::taxa::TaxaSet;

pub use resolve::Move;

/// Normalised undirected edge.
pub type Edge = (usize, usize);

pub(crate) fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Incrementally assembles a [`Network`]; all checks happen in [`build`].
///
/// [`build`]: NetworkBuilder::build
#[derive(Clone, Debug)]
pub struct NetworkBuilder {
    taxa: Arc<TaxaSet>,
    adj: Vec<Vec<usize>>,
    taxon_of: Vec<Option<usize>>,
}

impl NetworkBuilder {
    pub fn new(taxa: Arc<TaxaSet>) -> Self {
        NetworkBuilder {
            taxa,
            adj: Vec::new(),
            taxon_of: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.taxon_of.push(None);
        self.adj.len() - 1
    }

    pub fn add_leaf(&mut self, taxon: usize) -> usize {
        let v = self.add_vertex();
        self.taxon_of[v] = Some(taxon);
        v
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u].push(v);
        self.adj[v].push(u);
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn build(self) -> Result<Network> {
        Network::from_parts(self.taxa, self.adj, self.taxon_of)
    }
}

/// Which of the standard network classes a network belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub one_nested: bool,
    pub level1: bool,
    pub simple: bool,
    pub max_partially_resolved: bool,
}

/// A minimal edge cut and the split it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSet {
    pub edges: Vec<Edge>,
    pub split: Split,
}

/// A phylogenetic network on a taxa set.
///
/// Invariants checked on construction: simple and connected; leaves are
/// exactly the degree-1 vertices and carry every taxon once; all other
/// vertices have degree at least 3; no triangles.
#[derive(Clone, Debug)]
pub struct Network {
    taxa: Arc<TaxaSet>,
    adj: Vec<Vec<usize>>,
    taxon_of: Vec<Option<usize>>,
    leaf_of: Vec<usize>,
    one_nested: bool,
    cycles: Vec<Vec<usize>>,
    edge_cycle: HashMap<Edge, usize>,
    vertex_cycles: Vec<Vec<usize>>,
    bridges: Vec<Edge>,
}

impl Network {
    pub fn builder(taxa: Arc<TaxaSet>) -> NetworkBuilder {
        NetworkBuilder::new(taxa)
    }

    /// The star tree: one hub adjacent to every leaf.
    pub fn star(taxa: Arc<TaxaSet>) -> Result<Network> {
        let n = taxa.len();
        let mut b = NetworkBuilder::new(taxa);
        let hub = b.add_vertex();
        for t in 0..n {
            let l = b.add_leaf(t);
            b.add_edge(hub, l);
        }
        b.build()
    }

    /// A single cycle with one pendant leaf per cycle vertex, leaves in the
    /// given circular order.
    pub fn cycle_with_leaves(taxa: Arc<TaxaSet>, order: &[usize]) -> Result<Network> {
        let k = order.len();
        let mut b = NetworkBuilder::new(taxa);
        let ring: Vec<usize> = (0..k).map(|_| b.add_vertex()).collect();
        for i in 0..k {
            b.add_edge(ring[i], ring[(i + 1) % k]);
            let l = b.add_leaf(order[i]);
            b.add_edge(ring[i], l);
        }
        b.build()
    }

    pub fn from_parts(
        taxa: Arc<TaxaSet>,
        mut adj: Vec<Vec<usize>>,
        taxon_of: Vec<Option<usize>>,
    ) -> Result<Network> {
        let nv = adj.len();
        let n = taxa.len();
        if taxon_of.len() != nv {
            return Err(Error::Network("label table size mismatch".into()));
        }
        let mut leaf_of = vec![usize::MAX; n];
        for (v, t) in taxon_of.iter().enumerate() {
            if let Some(t) = *t {
                if t >= n {
                    return Err(Error::TaxonOutOfRange { index: t, n });
                }
                if leaf_of[t] != usize::MAX {
                    return Err(Error::Network(format!(
                        "taxon `{}` labels two vertices",
                        taxa.name(t)
                    )));
                }
                leaf_of[t] = v;
            }
        }
        if let Some(t) = leaf_of.iter().position(|&v| v == usize::MAX) {
            return Err(Error::Network(format!(
                "taxon `{}` labels no vertex",
                taxa.name(t)
            )));
        }
        for (v, nb) in adj.iter_mut().enumerate() {
            nb.sort_unstable();
            if nb.contains(&v) {
                return Err(Error::Network(format!("self-loop at vertex {v}")));
            }
            if nb.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Network(format!("parallel edges at vertex {v}")));
            }
            if nb.iter().any(|&w| w >= nv) {
                return Err(Error::Network(format!("edge to missing vertex at {v}")));
            }
        }
        if graph::component_count(&adj) != 1 {
            return Err(Error::Network("graph is not connected".into()));
        }
        for v in 0..nv {
            let d = adj[v].len();
            match (taxon_of[v], d) {
                (Some(_), 1) => {}
                (Some(t), _) => {
                    return Err(Error::Network(format!(
                        "leaf `{}` has degree {d}",
                        taxa.name(t)
                    )))
                }
                (None, 1) => return Err(Error::Network(format!("unlabelled leaf {v}"))),
                (None, d) if d < 3 => {
                    return Err(Error::Network(format!("vertex {v} has degree {d}")))
                }
                _ => {}
            }
        }
        for u in 0..nv {
            for &v in &adj[u] {
                if v <= u {
                    continue;
                }
                let (a, b) = (&adj[u], &adj[v]);
                let (mut i, mut j) = (0, 0);
                while i < a.len() && j < b.len() {
                    match a[i].cmp(&b[j]) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            return Err(Error::Network(format!(
                                "cycle of length 3 through vertices {u}, {v}, {}",
                                a[i]
                            )))
                        }
                    }
                }
            }
        }

        let mut one_nested = true;
        let mut cycles = Vec::new();
        let mut bridges = Vec::new();
        for block in graph::biconnected_blocks(&adj) {
            if block.len() == 1 {
                bridges.push(edge(block[0].0, block[0].1));
            } else if let Some(order) = graph::cycle_order(&block) {
                cycles.push(order);
            } else {
                one_nested = false;
            }
        }
        cycles.sort();
        bridges.sort();
        let mut edge_cycle = HashMap::new();
        let mut vertex_cycles = vec![Vec::new(); nv];
        for (c, cyc) in cycles.iter().enumerate() {
            let k = cyc.len();
            for i in 0..k {
                edge_cycle.insert(edge(cyc[i], cyc[(i + 1) % k]), c);
                vertex_cycles[cyc[i]].push(c);
            }
        }
        Ok(Network {
            taxa,
            adj,
            taxon_of,
            leaf_of,
            one_nested,
            cycles,
            edge_cycle,
            vertex_cycles,
            bridges,
        })
    }

    pub fn taxa(&self) -> &Arc<TaxaSet> {
        &self.taxa
    }

    pub fn n(&self) -> usize {
        self.taxa.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// All edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.adj.len() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.taxon_of[v].is_some()
    }

    pub fn taxon_of(&self, v: usize) -> Option<usize> {
        self.taxon_of[v]
    }

    /// The leaf labelled by `taxon`.
    pub fn leaf(&self, taxon: usize) -> usize {
        self.leaf_of[taxon]
    }

    pub fn is_one_nested(&self) -> bool {
        self.one_nested
    }

    fn require_one_nested(&self) -> Result<()> {
        if self.one_nested {
            Ok(())
        } else {
            Err(Error::NotOneNested)
        }
    }

    /// Cycles as vertex sequences (smallest vertex first). Only blocks that
    /// are cycles are listed, so this is complete only for 1-nested networks.
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn cycles_at(&self, v: usize) -> &[usize] {
        &self.vertex_cycles[v]
    }

    pub fn is_cycle_vertex(&self, v: usize) -> bool {
        !self.vertex_cycles[v].is_empty()
    }

    pub fn cycle_of_edge(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_cycle.get(&edge(u, v)).copied()
    }

    /// Cut-edges, sorted.
    pub fn bridges(&self) -> &[Edge] {
        &self.bridges
    }

    pub fn classify(&self) -> Classification {
        let internal = (0..self.vertex_count()).filter(|&v| !self.is_leaf(v));
        let cubic = internal.clone().all(|v| self.degree(v) == 3);
        let simple = self
            .bridges
            .iter()
            .all(|&(u, v)| self.is_leaf(u) || self.is_leaf(v));
        let resolved = self.one_nested
            && (0..self.vertex_count()).all(|v| {
                let c = self.vertex_cycles[v].len();
                c == 0 || (c == 1 && self.degree(v) == 3)
            });
        Classification {
            one_nested: self.one_nested,
            level1: self.one_nested && cubic,
            simple,
            max_partially_resolved: resolved,
        }
    }

    /// Taxa reachable from `start` without traversing any edge in `banned`.
    pub fn leaves_avoiding(&self, start: usize, banned: &[Edge]) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.n());
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            if let Some(t) = self.taxon_of[v] {
                out.insert(t);
            }
            for &w in &self.adj[v] {
                if !seen[w] && !banned.contains(&edge(v, w)) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out
    }

    /// Taxa on the `v` side of the cut-edge `{u, v}`.
    pub fn leaves_beyond(&self, u: usize, v: usize) -> FixedBitSet {
        self.leaves_avoiding(v, &[edge(u, v)])
    }

    /// For each vertex of cycle `c` (in cycle order), the taxa reachable from
    /// it without using an edge of the cycle.
    pub fn cycle_leaf_sets(&self, c: usize) -> Vec<FixedBitSet> {
        let cyc = &self.cycles[c];
        let k = cyc.len();
        (0..k)
            .map(|i| {
                let banned = [
                    edge(cyc[i], cyc[(i + 1) % k]),
                    edge(cyc[i], cyc[(i + k - 1) % k]),
                ];
                self.leaves_avoiding(cyc[i], &banned)
            })
            .collect()
    }

    /// Every minimal cut: each cut-edge and each pair of edges of a cycle.
    pub fn cut_sets(&self) -> Result<Vec<CutSet>> {
        self.require_one_nested()?;
        let mut out = Vec::new();
        for &(u, v) in &self.bridges {
            let side = self.leaves_beyond(u, v);
            out.push(CutSet {
                edges: vec![(u, v)],
                split: Split::from_bits(side)?,
            });
        }
        for c in 0..self.cycles.len() {
            let cyc = &self.cycles[c];
            let k = cyc.len();
            let leaves = self.cycle_leaf_sets(c);
            // removing cycle edges e_a = {c_a, c_a+1} and e_b leaves the arc
            // c_{a+1} ..= c_b on one side
            for a in 0..k {
                let mut side = FixedBitSet::with_capacity(self.n());
                for b in a + 1..k {
                    side.union_with(&leaves[b]);
                    out.push(CutSet {
                        edges: vec![edge(cyc[a], cyc[a + 1]), edge(cyc[b], cyc[(b + 1) % k])],
                        split: Split::from_bits(side.clone())?,
                    });
                }
            }
        }
        Ok(out)
    }

    /// `Σ(N)`: all displayed splits.
    pub fn splits(&self) -> Result<SplitSystem> {
        let mut sys = SplitSystem::empty(self.taxa.clone());
        for cut in self.cut_sets()? {
            sys.insert(cut.split);
        }
        Ok(sys)
    }

    /// Number of minimal cuts inducing `s`.
    pub fn split_multiplicity(&self, s: &Split) -> Result<usize> {
        Ok(self.cut_sets()?.iter().filter(|c| &c.split == s).count())
    }

    /// The split cut off at each vertex of cycle `c` by deleting its two
    /// cycle edges, one per vertex in cycle order (not deduplicated).
    pub fn m_splits(&self, c: usize) -> Result<Vec<Split>> {
        self.require_one_nested()?;
        if c >= self.cycles.len() {
            return Err(Error::Network(format!("no cycle {c}")));
        }
        self.cycle_leaf_sets(c)
            .into_iter()
            .map(Split::from_bits)
            .collect()
    }

    /// The splits displayed by edge pairs of cycle `c`.
    pub fn cycle_splits(&self, c: usize) -> Result<SplitSystem> {
        self.require_one_nested()?;
        let leaves = self.cycle_leaf_sets(c);
        let k = leaves.len();
        let mut sys = SplitSystem::empty(self.taxa.clone());
        for a in 0..k {
            let mut side = FixedBitSet::with_capacity(self.n());
            for l in leaves.iter().take(k).skip(a + 1) {
                side.union_with(l);
                sys.insert(Split::from_bits(side.clone())?);
            }
        }
        Ok(sys)
    }

    /// Split-set equality, the operational notion of "the same network up to
    /// isomorphism and partial resolution".
    pub fn equivalent(&self, other: &Network) -> Result<bool> {
        if self.taxa.names() != other.taxa.names() {
            return Err(Error::TaxaMismatch);
        }
        Ok(self.splits()? == other.splits()?)
    }

    /// Rebuilds from an edge list, dropping vertices flagged in `removed` and
    /// renumbering the rest densely.
    pub(crate) fn rebuild(
        taxa: Arc<TaxaSet>,
        vertex_count: usize,
        taxon_of: &[Option<usize>],
        edges: &BTreeSet<Edge>,
        removed: &[bool],
    ) -> Result<Network> {
        let mut id = vec![usize::MAX; vertex_count];
        let mut labels = Vec::new();
        for v in 0..vertex_count {
            if !removed[v] {
                id[v] = labels.len();
                labels.push(taxon_of[v]);
            }
        }
        let mut adj = vec![Vec::new(); labels.len()];
        for &(u, v) in edges {
            let (a, b) = (id[u], id[v]);
            if a == usize::MAX || b == usize::MAX {
                return Err(Error::Internal("edge to removed vertex".into()));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        Network::from_parts(taxa, adj, labels)
    }

    pub(crate) fn labels(&self) -> &[Option<usize>] {
        &self.taxon_of
    }
}

#[cfg(test)]
mod tests;
