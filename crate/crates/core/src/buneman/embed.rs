//! The embedding `ξ` of a partially resolved 1-nested network into the
//! Buneman graph of its own split system.

use std::collections::{BTreeSet, HashMap};

use super::{buneman_graph, marguerite, BVertex, BunemanGraph};
use crate::error::{Error, Result};
use crate::network::{Edge, Network};
use crate::split::Split;

/// A choice of `Σ*` and `x_v` for a non-leaf vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Candidate {
    /// The vertex lies on `cycle`; `taxon` is reachable without its edges.
    Cycle { cycle: usize, taxon: usize },
    /// `edge` is an incident cut-edge and `taxon` lies on the vertex's side.
    Edge { edge: Edge, taxon: usize },
}

impl Candidate {
    pub fn taxon(&self) -> usize {
        match *self {
            Candidate::Cycle { taxon, .. } | Candidate::Edge { taxon, .. } => taxon,
        }
    }
}

/// `ξ` together with the graph it maps into.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub graph: BunemanGraph,
    /// Network vertex to graph vertex index.
    pub vertex_map: Vec<usize>,
    /// For each cycle edge `(v, w)`, the graph path from `ξ(v)` to `ξ(w)`.
    pub cycle_paths: Vec<(Edge, Vec<usize>)>,
    /// Images of the cut-edges.
    pub bridge_images: Vec<(usize, usize)>,
    leaves: Vec<bool>,
}

impl Embedding {
    /// Distinct network vertices have distinct images.
    pub fn is_injective(&self) -> bool {
        let set: BTreeSet<usize> = self.vertex_map.iter().copied().collect();
        set.len() == self.vertex_map.len()
    }

    /// Images of the non-leaf vertices.
    pub fn internal_image(&self) -> BTreeSet<usize> {
        self.vertex_map
            .iter()
            .zip(&self.leaves)
            .filter(|(_, &leaf)| !leaf)
            .map(|(&g, _)| g)
            .collect()
    }

    /// Images of all vertices, leaves included.
    pub fn image(&self) -> BTreeSet<usize> {
        self.vertex_map.iter().copied().collect()
    }

    /// Every cut-edge image and every step of every cycle path is an edge of
    /// the graph.
    pub fn is_subgraph(&self) -> bool {
        let g = &self.graph;
        self.bridge_images.iter().all(|&(a, b)| g.has_edge(a, b))
            && self
                .cycle_paths
                .iter()
                .all(|(_, p)| p.windows(2).all(|w| g.has_edge(w[0], w[1])))
    }
}

/// All admissible `(Σ*, x_v)` choices for non-leaf vertex `v`.
pub fn candidates(net: &Network, v: usize) -> Vec<Candidate> {
    let mut out = Vec::new();
    if let Some(&c) = net.cycles_at(v).first() {
        let cyc = &net.cycles()[c];
        let t = cyc.iter().position(|&w| w == v).expect("vertex on its cycle");
        for x in net.cycle_leaf_sets(c)[t].ones() {
            out.push(Candidate::Cycle { cycle: c, taxon: x });
        }
    } else {
        for &w in net.neighbors(v) {
            let e = if v < w { (v, w) } else { (w, v) };
            for x in net.leaves_beyond(w, v).ones() {
                out.push(Candidate::Edge { edge: e, taxon: x });
            }
        }
    }
    out
}

/// `ξ` with the canonical choices: the first candidate (smallest taxon, and
/// for tree vertices the cut-edge to the lowest neighbour).
pub fn embed_network(net: &Network) -> Result<Embedding> {
    embed_network_with(net, &mut |_, _| 0)
}

/// `ξ` with `pick(v, candidates)` choosing `Σ*` and `x_v` for each non-leaf
/// vertex.
pub fn embed_network_with(
    net: &Network,
    pick: &mut dyn FnMut(usize, &[Candidate]) -> usize,
) -> Result<Embedding> {
    if !net.is_one_nested() {
        return Err(Error::NotOneNested);
    }
    if !net.classify().max_partially_resolved {
        return Err(Error::NotPartiallyResolved(
            "every cycle vertex must lie on one cycle and have degree 3".into(),
        ));
    }
    let sigma = net.splits()?;
    let g = buneman_graph(&sigma)?;
    let split_index: HashMap<&Split, usize> = g.splits().iter().zip(0..).collect();
    let comp_of_split = |s: &Split| -> Result<usize> {
        let &i = split_index
            .get(s)
            .ok_or_else(|| Error::Internal("network split missing from its own graph".into()))?;
        Ok(g.component_of(i))
    };
    // the component of each cycle, through one of its non-m-splits
    let mut cycle_comp = Vec::with_capacity(net.cycles().len());
    for c in 0..net.cycles().len() {
        let m: BTreeSet<Split> = net.m_splits(c)?.into_iter().collect();
        let s = net
            .cycle_splits(c)?
            .iter()
            .find(|s| !m.contains(s))
            .cloned()
            .ok_or_else(|| Error::Internal("cycle without non-m-splits".into()))?;
        cycle_comp.push(comp_of_split(&s)?);
    }
    let phi = |x: usize| -> &BVertex { g.vertex(g.leaf(x)) };
    let mut vertex_map = vec![usize::MAX; net.vertex_count()];
    let mut leaves = vec![false; net.vertex_count()];
    for v in 0..net.vertex_count() {
        if let Some(x) = net.taxon_of(v) {
            vertex_map[v] = g.leaf(x);
            leaves[v] = true;
            continue;
        }
        let cands = candidates(net, v);
        let choice = cands
            .get(pick(v, &cands))
            .copied()
            .ok_or_else(|| Error::Internal("candidate choice out of range".into()))?;
        let comp = match choice {
            Candidate::Cycle { cycle, .. } => cycle_comp[cycle],
            Candidate::Edge { edge: (a, b), .. } => {
                let s = Split::from_bits(net.leaves_beyond(a, b))?;
                comp_of_split(&s)?
            }
        };
        let xi = g.gate(phi(choice.taxon()), comp);
        vertex_map[v] = g
            .index_of(&xi)
            .ok_or_else(|| Error::Internal(format!("ξ({v}) is not a vertex of the graph")))?;
    }
    let bridge_images = net
        .bridges()
        .iter()
        .map(|&(a, b)| (vertex_map[a], vertex_map[b]))
        .collect();
    let mut cycle_paths = Vec::new();
    for (c, cyc) in net.cycles().iter().enumerate() {
        let m = marguerite(&g, g.block_of_component(cycle_comp[c]))?;
        let k = cyc.len();
        let leaf_sets = net.cycle_leaf_sets(c);
        // position of each cycle vertex in the marguerite's block order
        let pos: Vec<usize> = leaf_sets
            .iter()
            .map(|l| {
                let x = l.ones().next().expect("every cycle vertex has leaves");
                m.cycle.iter().position(|y| y.contains(&x)).expect("taxon in a block")
            })
            .collect();
        for t in 0..k {
            let (v, w) = (cyc[t], cyc[(t + 1) % k]);
            let (pv, pw) = (pos[t], pos[(t + 1) % k]);
            let interior: Vec<usize> = if pw == (pv + 1) % k {
                m.phi[pv][1..k - 3].to_vec()
            } else if pv == (pw + 1) % k {
                m.phi[pw][1..k - 3].iter().rev().copied().collect()
            } else {
                return Err(Error::Internal("cycle and block orders disagree".into()));
            };
            let mut path = vec![vertex_map[v]];
            path.extend(interior);
            path.push(vertex_map[w]);
            cycle_paths.push(((v, w), path));
        }
    }
    Ok(Embedding {
        graph: g,
        vertex_map,
        cycle_paths,
        bridge_images,
        leaves,
    })
}
