//! Reading a 1-nested network off the Buneman graph: keep the leaves and
//! cut-edges, and replace each marguerite block by the cycle through its
//! external vertices.

use std::collections::BTreeSet;

use super::{marguerites, BunemanGraph};
use crate::error::{Error, Result};
use crate::network::Network;
use crate::random::RawGraph;
use crate::synthesis::is_circular;

/// `N(Σ)` from `G(Σ)`. Σ must be circular and contain all trivial splits.
/// Vertices of degree 2 left behind are suppressed.
pub fn extract_network(g: &BunemanGraph) -> Result<Network> {
    let sigma = g.sigma();
    if let Some(x) = sigma.missing_trivial() {
        return Err(Error::MissingTrivialSplit(sigma.taxa().name(x).to_string()));
    }
    if is_circular(sigma).is_none() {
        return Err(Error::NotCircular("the split system has no circular ordering".into()));
    }
    let nv = g.vertex_count();
    let mut edges: BTreeSet<(usize, usize)> = g.edges().into_iter().collect();
    let mut dead = vec![false; nv];
    for m in marguerites(g)? {
        let block = &g.blocks()[m.block];
        for e in &block.edges {
            edges.remove(e);
        }
        let ext = m.external();
        let keep: BTreeSet<usize> = ext.iter().copied().collect();
        for &v in &block.vertices {
            if !keep.contains(&v) {
                dead[v] = true;
            }
        }
        for i in 0..ext.len() {
            let (a, b) = (ext[i], ext[(i + 1) % ext.len()]);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let mut raw = RawGraph::new();
    for v in 0..nv {
        raw.add(None);
        raw.alive[v] = !dead[v];
    }
    for x in 0..sigma.n() {
        raw.labels[g.leaf(x)] = Some(x);
    }
    for (a, b) in edges {
        if !dead[a] && !dead[b] {
            raw.link(a, b);
        }
    }
    for v in 0..nv {
        if raw.alive[v] && raw.labels[v].is_none() && raw.adj[v].len() == 2 {
            let nb: Vec<usize> = raw.adj[v].iter().copied().collect();
            raw.unlink(v, nb[0]);
            raw.unlink(v, nb[1]);
            raw.link(nb[0], nb[1]);
            raw.alive[v] = false;
        }
    }
    for v in 0..nv {
        if raw.alive[v] && raw.adj[v].is_empty() {
            raw.alive[v] = false;
        }
    }
    raw.into_network(sigma.taxa().clone())
}
