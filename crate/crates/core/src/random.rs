//! Random generators for split systems and 1-nested networks, used by the
//! property suites and the CLI's benchmarking paths.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, RngExt};

use crate::error::Result;
use crate::network::Network;
use crate::ordering::CircularOrdering;
use crate::split::{Split, SplitSystem};
use crate::taxa::TaxaSet;

/// A mutable graph with optional leaf labels, convertible into a [`Network`].
#[derive(Clone, Debug)]
pub(crate) struct RawGraph {
    pub adj: Vec<BTreeSet<usize>>,
    pub labels: Vec<Option<usize>>,
    pub alive: Vec<bool>,
}

impl RawGraph {
    pub fn new() -> Self {
        RawGraph {
            adj: Vec::new(),
            labels: Vec::new(),
            alive: Vec::new(),
        }
    }

    pub fn add(&mut self, label: Option<usize>) -> usize {
        self.adj.push(BTreeSet::new());
        self.labels.push(label);
        self.alive.push(true);
        self.adj.len() - 1
    }

    pub fn link(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn unlink(&mut self, u: usize, v: usize) {
        self.adj[u].remove(&v);
        self.adj[v].remove(&u);
    }

    /// The star on taxa `0..3`.
    pub fn star3() -> Self {
        let mut g = RawGraph::new();
        let hub = g.add(None);
        for t in 0..3 {
            let l = g.add(Some(t));
            g.link(hub, l);
        }
        g
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.adj.len() {
            if !self.alive[u] {
                continue;
            }
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn internal(&self) -> Vec<usize> {
        (0..self.adj.len())
            .filter(|&v| self.alive[v] && self.labels[v].is_none())
            .collect()
    }

    /// Hangs a new leaf off vertex `v`.
    pub fn attach(&mut self, v: usize, taxon: usize) {
        let l = self.add(Some(taxon));
        self.link(v, l);
    }

    /// Subdivides `{u, v}` and hangs a new leaf off the middle vertex.
    pub fn subdivide(&mut self, u: usize, v: usize, taxon: usize) {
        self.unlink(u, v);
        let m = self.add(None);
        self.link(u, m);
        self.link(m, v);
        self.attach(m, taxon);
    }

    /// Merges `drop` into `keep` along the edge between them.
    pub fn contract(&mut self, keep: usize, drop: usize) {
        self.unlink(keep, drop);
        let nbs: Vec<usize> = self.adj[drop].iter().copied().collect();
        for w in nbs {
            self.unlink(drop, w);
            self.link(keep, w);
        }
        self.alive[drop] = false;
    }

    /// Replaces `v` by a cycle whose vertices attach to `order` (a cyclic
    /// arrangement of the neighbours of `v`).
    pub fn expand(&mut self, v: usize, order: &[usize]) {
        let ring: Vec<usize> = order.iter().map(|_| self.add(None)).collect();
        let k = ring.len();
        for (i, &w) in order.iter().enumerate() {
            self.unlink(v, w);
            self.link(ring[i], w);
            self.link(ring[i], ring[(i + 1) % k]);
        }
        self.alive[v] = false;
    }

    pub fn into_network(self, taxa: Arc<TaxaSet>) -> Result<Network> {
        let mut id = vec![usize::MAX; self.adj.len()];
        let mut labels = Vec::new();
        for v in 0..self.adj.len() {
            if self.alive[v] {
                id[v] = labels.len();
                labels.push(self.labels[v]);
            }
        }
        let mut adj = vec![Vec::new(); labels.len()];
        for v in 0..self.adj.len() {
            if self.alive[v] {
                adj[id[v]] = self.adj[v].iter().map(|&w| id[w]).collect();
            }
        }
        Network::from_parts(taxa, adj, labels)
    }
}

/// A uniformly built random binary tree (random stepwise addition).
pub(crate) fn random_binary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RawGraph {
    let mut g = RawGraph::star3();
    let mut taxa: Vec<usize> = (0..n).collect();
    taxa.shuffle(rng);
    // relabel the first three leaves with the shuffled taxa
    for (i, v) in (1..4).enumerate() {
        g.labels[v] = Some(taxa[i]);
    }
    for &t in &taxa[3..] {
        let edges = g.edges();
        let &(u, v) = edges.choose(rng).unwrap();
        g.subdivide(u, v, t);
    }
    g
}

/// Parameters for [`random_network`].
#[derive(Clone, Copy, Debug)]
pub struct NetworkParams {
    /// Probability of contracting each internal tree edge.
    pub contract: f64,
    /// Probability of turning a vertex of degree at least 4 into a cycle.
    pub cycle: f64,
    /// Probability of collapsing each non-trivial cut-edge at a cycle vertex
    /// afterwards, giving networks that are not partially resolved.
    pub collapse: f64,
}

impl Default for NetworkParams {
    fn default() -> Self {
        NetworkParams {
            contract: 0.5,
            cycle: 0.8,
            collapse: 0.0,
        }
    }
}

fn random_cyclic<R: Rng + ?Sized>(items: &[usize], rng: &mut R) -> Vec<usize> {
    let mut v = items.to_vec();
    v.shuffle(rng);
    v
}

/// A random 1-nested network on `taxa`.
pub fn random_network<R: Rng + ?Sized>(
    taxa: Arc<TaxaSet>,
    params: NetworkParams,
    rng: &mut R,
) -> Network {
    let n = taxa.len();
    let mut g = random_binary(n, rng);
    for (u, v) in g.edges() {
        if !g.alive[u] || !g.alive[v] || !g.adj[u].contains(&v) {
            continue;
        }
        if g.labels[u].is_none() && g.labels[v].is_none() && rng.random_bool(params.contract) {
            g.contract(u, v);
        }
    }
    for v in g.internal() {
        if g.adj[v].len() >= 4 && rng.random_bool(params.cycle) {
            let nbs: Vec<usize> = g.adj[v].iter().copied().collect();
            let order = random_cyclic(&nbs, rng);
            g.expand(v, &order);
        }
    }
    if params.collapse > 0.0 {
        let net = g.clone().into_network(taxa.clone()).expect("valid network");
        // vertex ids in `net` are the alive vertices of `g` in order
        let alive: Vec<usize> = (0..g.adj.len()).filter(|&v| g.alive[v]).collect();
        let mut cyc = vec![false; g.adj.len()];
        for (i, &v) in alive.iter().enumerate() {
            cyc[v] = net.is_cycle_vertex(i);
        }
        let bridges: Vec<(usize, usize)> = net
            .bridges()
            .iter()
            .map(|&(a, b)| (alive[a], alive[b]))
            .collect();
        for (u, v) in bridges {
            let internal = g.labels[u].is_none() && g.labels[v].is_none();
            if internal && (cyc[u] || cyc[v]) && rng.random_bool(params.collapse) {
                let (keep, drop) = if cyc[u] { (u, v) } else { (v, u) };
                // earlier contractions may have merged an endpoint away
                if g.alive[keep] && g.alive[drop] && g.adj[keep].contains(&drop) {
                    g.contract(keep, drop);
                    cyc[keep] = true;
                }
            }
        }
    }
    g.into_network(taxa).expect("generator produces valid networks")
}

/// A uniformly random circular ordering.
pub fn random_ordering<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CircularOrdering {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    CircularOrdering::new(v).expect("permutation")
}

/// `count` distinct random interval splits of a random ordering (capped at
/// the number of interval splits), optionally with all trivial splits.
pub fn random_circular<R: Rng + ?Sized>(
    taxa: Arc<TaxaSet>,
    count: usize,
    with_trivials: bool,
    rng: &mut R,
) -> (SplitSystem, CircularOrdering) {
    let n = taxa.len();
    let o = random_ordering(n, rng);
    let mut sys = SplitSystem::empty(taxa.clone());
    let total = n * (n - 1) / 2;
    if count * 2 >= total {
        let mut all = o.all_splits(taxa).to_vec();
        all.shuffle(rng);
        for s in all.into_iter().take(count) {
            sys.insert(s);
        }
    } else {
        while sys.len() < count {
            let start = rng.random_range(0..n);
            let len = rng.random_range(1..n);
            sys.insert(Split::from_bits(o.arc(start, len)).expect("proper arc"));
        }
    }
    if with_trivials {
        sys = sys.with_trivials();
    }
    (sys, o)
}

/// `count` arbitrary random splits (not necessarily circular).
pub fn random_splits<R: Rng + ?Sized>(taxa: Arc<TaxaSet>, count: usize, rng: &mut R) -> SplitSystem {
    let n = taxa.len();
    let mut sys = SplitSystem::empty(taxa);
    let max = (1usize << (n - 1)) - 1;
    let count = count.min(max);
    while sys.len() < count {
        let mut side = Vec::new();
        for x in 1..n {
            if rng.random_bool(0.5) {
                side.push(x);
            }
        }
        if let Ok(s) = Split::from_side(n, side) {
            sys.insert(s);
        }
    }
    sys
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn networks_are_valid_and_varied() {
        let mut rng = StdRng::seed_from_u64(7);
        let mut with_cycles = 0;
        let mut unresolved = 0;
        for i in 0..200 {
            let n = 4 + i % 5;
            let t = Arc::new(TaxaSet::numbered(n).unwrap());
            let p = NetworkParams {
                collapse: 0.5,
                ..Default::default()
            };
            let net = random_network(t, p, &mut rng);
            assert!(net.is_one_nested());
            if !net.cycles().is_empty() {
                with_cycles += 1;
            }
            if !net.classify().max_partially_resolved {
                unresolved += 1;
            }
        }
        assert!(with_cycles > 50, "{with_cycles}");
        assert!(unresolved > 10, "{unresolved}");
    }

    #[test]
    fn circular_systems_are_displayed() {
        let mut rng = StdRng::seed_from_u64(3);
        for n in 3..9 {
            let t = Arc::new(TaxaSet::numbered(n).unwrap());
            for count in [1, 3, n, n * (n - 1) / 2] {
                let (s, o) = random_circular(t.clone(), count, true, &mut rng);
                assert!(o.displays(&s));
            }
        }
    }
}
