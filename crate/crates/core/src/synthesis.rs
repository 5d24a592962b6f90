//! Circularity recognition, Buneman trees, and the minimal 1-nested network
//! displaying a circular split system.
//!
//! The construction works per incompatibility component. A component with at
//! least two splits determines a partition of the taxa into blocks together
//! with a cyclic order of the blocks (unique up to reflection); its I-closure
//! is the set of all arc splits of that block cycle. Each component becomes a
//! cycle of the network; the block splits of all cycles, the singleton
//! components and the trivial splits form a compatible system whose tree
//! carries the cycles at the vertices where their block edges meet.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::incompat::IncompatGraph;
use crate::network::{Edge, Network};
use crate::ordering::CircularOrdering;
use crate::split::{Split, SplitSystem};
use crate::taxa::TaxaSet;

/// One non-singleton incompatibility component and the block cycle it forces.
#[derive(Clone, Debug)]
pub struct BlockCycle {
    pub component: SplitSystem,
    /// Blocks in cyclic order; each block sorted.
    pub blocks: Vec<Vec<usize>>,
}

impl BlockCycle {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    fn block_bits(&self, n: usize) -> Vec<FixedBitSet> {
        self.blocks
            .iter()
            .map(|b| {
                let mut bits = FixedBitSet::with_capacity(n);
                for &x in b {
                    bits.insert(x);
                }
                bits
            })
            .collect()
    }

    /// `Y_j | X - Y_j` for every block, in cyclic order.
    pub fn block_splits(&self) -> Vec<Split> {
        let n = self.component.n();
        self.block_bits(n)
            .into_iter()
            .map(|b| Split::from_bits(b).expect("proper block"))
            .collect()
    }

    /// All arc splits of the block cycle: the I-closure of the component.
    pub fn closure(&self) -> SplitSystem {
        let n = self.component.n();
        let bits = self.block_bits(n);
        let k = bits.len();
        let mut out = SplitSystem::empty(self.component.taxa().clone());
        for start in 1..k {
            let mut side = FixedBitSet::with_capacity(n);
            for b in &bits[start..] {
                side.union_with(b);
                out.insert(Split::from_bits(side.clone()).expect("proper arc"));
            }
        }
        out
    }
}

/// Everything the minimal-network construction produces.
#[derive(Clone, Debug)]
pub struct Synthesis {
    pub network: Network,
    pub ordering: CircularOrdering,
    pub cycles: Vec<BlockCycle>,
    /// Singleton components, block splits and trivial splits.
    pub sigma_prime: SplitSystem,
    pub tree: Network,
}

/// Places the splits of one incompatibility component on a cyclic sequence
/// of taxon classes. `splits` must be in an order where every split after the
/// first is incompatible with an earlier one.
pub fn arrange_component(n: usize, splits: &[Split]) -> std::result::Result<Vec<Vec<usize>>, String> {
    if splits.len() < 2 || splits[0].compatible_with(&splits[1]) {
        return Err("component must start with an incompatible pair".into());
    }
    let (a, c) = (splits[0].bits(), splits[1].bits());
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); 4];
    let mut class_of = vec![0usize; n];
    for x in 0..n {
        let id = match (a.contains(x), c.contains(x)) {
            (true, true) => 0,
            (true, false) => 1,
            (false, false) => 2,
            (false, true) => 3,
        };
        members[id].push(x);
        class_of[x] = id;
    }
    let mut seq: Vec<usize> = vec![0, 1, 2, 3];
    let mut count: Vec<usize> = Vec::new();
    const EMPTY: u8 = 0;
    const PARTIAL: u8 = 1;
    const FULL: u8 = 2;

    for (si, s) in splits.iter().enumerate().skip(2) {
        count.clear();
        count.resize(members.len(), 0);
        for x in s.bits().ones() {
            count[class_of[x]] += 1;
        }
        let mut status: Vec<u8> = (0..members.len())
            .map(|id| match count[id] {
                0 => EMPTY,
                c if c == members[id].len() => FULL,
                _ => PARTIAL,
            })
            .collect();
        let mut inside = true;
        if !seq.iter().any(|&id| status[id] == EMPTY) {
            inside = false;
            for st in status.iter_mut() {
                *st = match *st {
                    EMPTY => FULL,
                    FULL => EMPTY,
                    p => p,
                };
            }
        }
        let k = seq.len();
        let e = match seq.iter().position(|&id| status[id] == EMPTY) {
            Some(e) => e,
            None => return Err(format!("split #{si} cuts every block")),
        };
        let rot: Vec<usize> = (0..k).map(|t| seq[(e + t) % k]).collect();
        let touched: Vec<usize> = (0..k).filter(|&t| status[rot[t]] != EMPTY).collect();
        let (lo, hi) = (touched[0], *touched.last().unwrap());
        if hi - lo + 1 != touched.len() {
            return Err(format!("split #{si} is not an arc of the blocks"));
        }
        if (lo + 1..hi).any(|t| status[rot[t]] != FULL) {
            return Err(format!("split #{si} cuts an interior block"));
        }
        if lo == hi && status[rot[lo]] == PARTIAL {
            return Err(format!("split #{si} lies inside a single block"));
        }
        // side membership of taxon x for the chosen side
        let on_side = |x: usize| s.contains(x) == inside;
        let mut next = Vec::with_capacity(k + 2);
        next.extend_from_slice(&rot[..lo]);
        for t in lo..=hi {
            let id = rot[t];
            if status[id] != PARTIAL {
                next.push(id);
                continue;
            }
            let (inn, out): (Vec<usize>, Vec<usize>) = members[id].iter().partition(|&&x| on_side(x));
            let new_id = members.len();
            for &x in &inn {
                class_of[x] = new_id;
            }
            members[id] = out;
            members.push(inn);
            if t == lo && lo != hi {
                next.push(id);
                next.push(new_id);
            } else {
                next.push(new_id);
                next.push(id);
            }
        }
        next.extend_from_slice(&rot[hi + 1..]);
        seq = next;
    }
    Ok(seq.into_iter().map(|id| members[id].clone()).collect())
}

/// The block cycle of a single connected incompatibility component with at
/// least two splits.
pub fn block_cycle(component: &SplitSystem) -> Result<BlockCycle> {
    let g = IncompatGraph::new(component);
    let comps = g.component_indices();
    if comps.len() != 1 || comps[0].len() < 2 {
        return Err(Error::NotCircular(
            "expected one connected component of at least two splits".into(),
        ));
    }
    let order = bfs_order(&g, &comps[0]);
    let blocks = arrange_component(component.n(), &order).map_err(Error::NotCircular)?;
    Ok(BlockCycle {
        component: component.clone(),
        blocks,
    })
}

/// Splits of one component listed in breadth-first order of the
/// incompatibility graph.
fn bfs_order(g: &IncompatGraph, comp: &[usize]) -> Vec<Split> {
    let mut seen: HashSet<usize> = HashSet::new();
    let mut order = vec![comp[0]];
    seen.insert(comp[0]);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &w in g.neighbors(v) {
            if seen.insert(w) {
                order.push(w);
            }
        }
    }
    order.into_iter().map(|i| g.splits()[i].clone()).collect()
}

struct Tree {
    /// `(child, parent)` per edge; the child's subtree holds the side of the
    /// split not containing taxon 0.
    edges: Vec<[usize; 2]>,
    labels: Vec<Option<usize>>,
    edge_of: HashMap<Split, usize>,
}

/// Assembles the tree of a compatible system containing all trivial splits.
/// Leaf of taxon `x` is vertex `x`.
fn assemble_tree(sigma: &SplitSystem) -> Tree {
    let n = sigma.n();
    let mut clusters: Vec<(usize, &Split)> = sigma.iter().map(|s| (n - s.bits().count_ones(..), s)).collect();
    clusters.sort_by_key(|&(size, _)| size);
    let mut labels: Vec<Option<usize>> = (0..n).map(Some).collect();
    let mut parent: Vec<usize> = vec![usize::MAX; n];
    let mut top: Vec<usize> = (0..n).collect();
    let mut node_of: Vec<(Split, usize)> = Vec::with_capacity(clusters.len());
    let mut stamp: Vec<usize> = vec![usize::MAX; n];
    for (size, s) in clusters {
        if size == 1 {
            let x = s.complement().ones().next().unwrap();
            node_of.push((s.clone(), x));
            continue;
        }
        let node = labels.len();
        labels.push(None);
        parent.push(usize::MAX);
        stamp.push(usize::MAX);
        let cluster = s.complement();
        for x in cluster.ones() {
            let t = top[x];
            if stamp[t] != node {
                stamp[t] = node;
                parent[t] = node;
            }
            top[x] = node;
        }
        node_of.push((s.clone(), node));
    }
    let mut edges = Vec::with_capacity(node_of.len());
    let mut edge_of = HashMap::with_capacity(node_of.len());
    for (s, node) in node_of {
        let p = if parent[node] == usize::MAX { 0 } else { parent[node] };
        edge_of.insert(s, edges.len());
        edges.push([node, p]);
    }
    Tree {
        edges,
        labels,
        edge_of,
    }
}

fn tree_network(taxa: Arc<TaxaSet>, tree: &Tree) -> Result<Network> {
    let edges: BTreeSet<Edge> = tree
        .edges
        .iter()
        .map(|&[a, b]| if a < b { (a, b) } else { (b, a) })
        .collect();
    let removed = vec![false; tree.labels.len()];
    Network::rebuild(taxa, tree.labels.len(), &tree.labels, &edges, &removed)
}

fn first_conflict(sigma: &SplitSystem) -> Option<(Split, Split)> {
    let v: Vec<&Split> = sigma.iter().collect();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if !v[i].compatible_with(v[j]) {
                return Some((v[i].clone(), v[j].clone()));
            }
        }
    }
    None
}

/// The unrooted tree displaying exactly a compatible system that contains all
/// trivial splits.
pub fn buneman_tree(sigma: &SplitSystem) -> Result<Network> {
    if let Some(x) = sigma.missing_trivial() {
        return Err(Error::MissingTrivialSplit(sigma.taxa().name(x).to_string()));
    }
    if let Some((a, b)) = first_conflict(sigma) {
        let t = sigma.taxa();
        return Err(Error::NotCompatible(a.display(t), b.display(t)));
    }
    tree_network(sigma.taxa().clone(), &assemble_tree(sigma))
}

/// Runs the full construction. Trivial splits are added if absent.
pub fn synthesize(sigma: &SplitSystem) -> Result<Synthesis> {
    let taxa = sigma.taxa().clone();
    let n = sigma.n();
    let full = sigma.with_trivials();
    let g = IncompatGraph::new(&full);
    let not_circular = |msg: String| Error::NotCircular(msg);

    let mut cycles = Vec::new();
    let mut sigma_prime = SplitSystem::empty(taxa.clone());
    for comp in g.component_indices() {
        if comp.len() == 1 {
            sigma_prime.insert(g.splits()[comp[0]].clone());
            continue;
        }
        let order = bfs_order(&g, comp);
        let blocks = arrange_component(n, &order).map_err(|m| {
            not_circular(format!(
                "component containing {}: {m}",
                order[0].display(&taxa)
            ))
        })?;
        let bc = BlockCycle {
            component: full.with_splits(comp.iter().map(|&i| g.splits()[i].clone())),
            blocks,
        };
        for s in bc.block_splits() {
            sigma_prime.insert(s);
        }
        cycles.push(bc);
    }
    if let Some((a, b)) = first_conflict(&sigma_prime) {
        return Err(not_circular(format!(
            "the cycles cannot be arranged in a tree: {} conflicts with {}",
            a.display(&taxa),
            b.display(&taxa)
        )));
    }
    let tree = assemble_tree(&sigma_prime);
    let tree_net = tree_network(taxa.clone(), &tree)?;
    let network = expand_cycles(taxa.clone(), &tree, &cycles).map_err(not_circular)?;
    let ordering = network.planar_ordering()?;
    if let Some(s) = full.iter().find(|s| !ordering.displays_split(s)) {
        return Err(not_circular(format!(
            "split {} is not an interval of the assembled ordering",
            s.display(&taxa)
        )));
    }
    Ok(Synthesis {
        network,
        ordering,
        cycles,
        sigma_prime,
        tree: tree_net,
    })
}

fn expand_cycles(
    taxa: Arc<TaxaSet>,
    tree: &Tree,
    cycles: &[BlockCycle],
) -> std::result::Result<Network, String> {
    let mut edges = tree.edges.clone();
    let mut labels = tree.labels.clone();
    let mut degree = vec![0usize; labels.len()];
    for &[a, b] in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    // locate every cycle's vertex before touching the edge list
    let mut hubs: Vec<(usize, Vec<usize>)> = Vec::with_capacity(cycles.len());
    let mut used = HashSet::new();
    for bc in cycles {
        let mut hub = None;
        let mut idx = Vec::with_capacity(bc.len());
        for (block, s) in bc.blocks.iter().zip(bc.block_splits()) {
            let e = *tree.edge_of.get(&s).ok_or("block split missing from tree")?;
            let v = if block[0] == 0 { edges[e][0] } else { edges[e][1] };
            if *hub.get_or_insert(v) != v {
                return Err("block edges of a component do not meet at one vertex".into());
            }
            idx.push(e);
        }
        let v = hub.unwrap();
        if degree[v] != bc.len() {
            return Err("component vertex has extra attachments".into());
        }
        if !used.insert(v) {
            return Err("two components share a tree vertex".into());
        }
        hubs.push((v, idx));
    }
    let mut removed = vec![false; labels.len()];
    for (v, idx) in hubs {
        removed[v] = true;
        let base = labels.len();
        let k = idx.len();
        for (j, &e) in idx.iter().enumerate() {
            labels.push(None);
            removed.push(false);
            let slot = if edges[e][0] == v { 0 } else { 1 };
            edges[e][slot] = base + j;
        }
        for j in 0..k {
            edges.push([base + j, base + (j + 1) % k]);
        }
    }
    let set: BTreeSet<Edge> = edges
        .iter()
        .map(|&[a, b]| if a < b { (a, b) } else { (b, a) })
        .collect();
    Network::rebuild(taxa, labels.len(), &labels, &set, &removed).map_err(|e| e.to_string())
}

/// Some circular ordering displaying Σ, if there is one.
pub fn is_circular(sigma: &SplitSystem) -> Option<CircularOrdering> {
    if sigma.is_empty() {
        return Some(CircularOrdering::identity(sigma.n()));
    }
    synthesize(sigma).ok().map(|s| s.ordering)
}

/// The 1-nested network `N` with `Σ ⊆ Σ(N)` and `|Σ(N)|` minimal. Trivial
/// splits are added to Σ first.
pub fn minimal_1nested(sigma: &SplitSystem) -> Result<Network> {
    synthesize(sigma).map(|s| s.network)
}

/// The simple level-1 network of a maximal circular system: one cycle with a
/// pendant leaf per taxon. On three taxa this is the star.
pub fn simple_level1_from_maximal(sigma: &SplitSystem) -> Result<Network> {
    let n = sigma.n();
    let taxa = sigma.taxa().clone();
    let want = n * (n - 1) / 2;
    if sigma.len() != want {
        return Err(Error::NotMaximalCircular(format!(
            "has {} splits, a maximal circular system on {n} taxa has {want}",
            sigma.len()
        )));
    }
    let o = is_circular(sigma)
        .ok_or_else(|| Error::NotMaximalCircular("the system is not circular".into()))?;
    if n == 3 {
        return Network::star(taxa);
    }
    Network::cycle_with_leaves(taxa, o.order())
}

/// A 1-nested network displaying exactly Σ, which exists iff Σ is circular
/// and I-closed.
pub fn splits_equivalence_check(sigma: &SplitSystem) -> Result<Option<Network>> {
    if let Some(x) = sigma.missing_trivial() {
        return Err(Error::MissingTrivialSplit(sigma.taxa().name(x).to_string()));
    }
    let syn = match synthesize(sigma) {
        Ok(s) => s,
        Err(Error::NotCircular(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    if syn.network.splits()? == *sigma {
        Ok(Some(syn.network))
    } else {
        Ok(None)
    }
}
