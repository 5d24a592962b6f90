//! The Buneman graph `G(Σ)`: side-selection maps that pick pairwise
//! intersecting sides, joined when they differ on exactly one split.
//!
//! A vertex is stored as a bit per split (in the sorted order of Σ): bit set
//! means the side containing taxon 0 is selected. All pairwise tests reduce
//! to two precomputed relations between canonical sides, `C_i ⊆ C_j` and
//! `C_i ∪ C_j = X`.

mod embed;
mod extract;
mod marguerite;

#[cfg(test)]
mod tests;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::biconnected_blocks;
use crate::incompat::IncompatGraph;
use crate::split::{Split, SplitSystem};

pub use embed::{candidates, embed_network, embed_network_with, Candidate, Embedding};
pub use extract::extract_network;
pub use marguerite::{interval, marguerite, marguerites, phi_map, psi_map, sigma_k, Marguerite};

/// Default bound on the number of vertices [`buneman_graph`] will build.
pub const DEFAULT_MAX_VERTICES: usize = 1_000_000;
/// Environment variable overriding [`DEFAULT_MAX_VERTICES`].
pub const MAX_VERTICES_ENV: &str = "SPLITNEST_MAX_VERTICES";
/// Largest `|Σ|` accepted by [`brute_buneman`].
pub const MAX_BRUTE_SPLITS: usize = 20;

/// The vertex cap in effect: the environment override if it parses, else
/// the default.
pub fn max_vertices() -> usize {
    std::env::var(MAX_VERTICES_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_VERTICES)
}

/// A side-selection map `φ`, one bit per split.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BVertex {
    choice: FixedBitSet,
}

impl BVertex {
    pub fn from_choice(choice: FixedBitSet) -> Self {
        BVertex { choice }
    }

    pub fn choice(&self) -> &FixedBitSet {
        &self.choice
    }

    pub fn len(&self) -> usize {
        self.choice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choice.is_empty()
    }

    /// True if split `i` is mapped to its side containing taxon 0.
    pub fn canonical(&self, i: usize) -> bool {
        self.choice.contains(i)
    }

    pub fn set(&mut self, i: usize, canonical: bool) {
        self.choice.set(i, canonical);
    }

    pub fn flipped(&self, i: usize) -> BVertex {
        let mut c = self.choice.clone();
        c.toggle(i);
        BVertex { choice: c }
    }

    /// Indices of the splits on which the two maps differ: `Δ(φ, ψ)`.
    pub fn delta(&self, other: &BVertex) -> Vec<usize> {
        let mut d = self.choice.clone();
        d.symmetric_difference_with(&other.choice);
        d.ones().collect()
    }

    /// `D(φ, ψ) = |Δ(φ, ψ)|`.
    pub fn distance(&self, other: &BVertex) -> usize {
        self.choice.symmetric_difference_count(&other.choice)
    }
}

impl fmt::Debug for BVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.choice.len())
            .map(|i| if self.choice.contains(i) { '1' } else { '0' })
            .collect();
        write!(f, "φ[{s}]")
    }
}

/// The Kuratowski map `φ_x: S ↦ S(x)` over the splits of Σ in sorted order.
pub fn kuratowski(sigma: &SplitSystem, x: usize) -> Result<BVertex> {
    sigma.taxa().check(x)?;
    let mut c = FixedBitSet::with_capacity(sigma.len());
    for (i, s) in sigma.iter().enumerate() {
        c.set(i, s.contains(x));
    }
    Ok(BVertex::from_choice(c))
}

/// Pairwise relations between canonical sides (diagonals cleared).
#[derive(Clone, Debug)]
struct Relations {
    /// `sub[i][j]`: `C_i ⊆ C_j`.
    sub: Vec<FixedBitSet>,
    /// `subt[i][j]`: `C_j ⊆ C_i`.
    subt: Vec<FixedBitSet>,
    /// `cover[i][j]`: `C_i ∪ C_j = X`.
    cover: Vec<FixedBitSet>,
}

impl Relations {
    fn new(splits: &[Split]) -> Self {
        let m = splits.len();
        let n = splits.first().map_or(0, Split::n);
        let mut sub = vec![FixedBitSet::with_capacity(m); m];
        let mut subt = vec![FixedBitSet::with_capacity(m); m];
        let mut cover = vec![FixedBitSet::with_capacity(m); m];
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let (a, b) = (splits[i].bits(), splits[j].bits());
                if a.is_subset(b) {
                    sub[i].insert(j);
                    subt[j].insert(i);
                }
                if a.union_count(b) == n {
                    cover[i].insert(j);
                }
            }
        }
        Relations { sub, subt, cover }
    }

    fn zeros(&self, v: &BVertex) -> FixedBitSet {
        let mut z = v.choice.clone();
        z.toggle_range(..);
        z
    }

    /// Whether flipping split `i` keeps `v` pairwise intersecting, given that
    /// `v` is.
    fn flip_ok(&self, v: &BVertex, zeros: &FixedBitSet, i: usize) -> bool {
        if v.canonical(i) {
            // D_i must meet every C_j selected and every D_j selected
            self.subt[i].is_disjoint(&v.choice) && self.cover[i].is_disjoint(zeros)
        } else {
            // C_i must meet every selected D_j
            self.sub[i].is_disjoint(zeros)
        }
    }

    fn is_vertex(&self, v: &BVertex) -> bool {
        let zeros = self.zeros(v);
        zeros
            .ones()
            .all(|i| self.subt[i].is_disjoint(&v.choice) && self.cover[i].is_disjoint(&zeros))
    }

    /// `max(S_i | S_j)` for compatible distinct splits: true when it is the
    /// canonical side of `S_i`.
    fn max_is_canonical(&self, i: usize, j: usize) -> bool {
        !self.sub[i].contains(j)
    }
}

/// A maximal 2-connected piece of `G(Σ)`; cut-edges are blocks of one edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub edges: Vec<(usize, usize)>,
    /// Sorted vertex indices.
    pub vertices: Vec<usize>,
    /// The incompatibility component `Θ⁻¹(B)`.
    pub component: usize,
}

impl Block {
    pub fn is_cut_edge(&self) -> bool {
        self.edges.len() == 1
    }
}

/// `G(Σ)` with its blocks and their correspondence to `π₀(Σ)`.
#[derive(Clone, Debug)]
pub struct BunemanGraph {
    sigma: SplitSystem,
    splits: Vec<Split>,
    rel: Relations,
    vertices: Vec<BVertex>,
    index: HashMap<BVertex, usize>,
    adj: Vec<Vec<usize>>,
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
    blocks: Vec<Block>,
    block_of_component: Vec<usize>,
    leaves: Vec<usize>,
}

/// Builds `G(Σ)` by breadth-first search from the Kuratowski maps, stopping
/// at [`max_vertices`].
pub fn buneman_graph(sigma: &SplitSystem) -> Result<BunemanGraph> {
    buneman_graph_capped(sigma, max_vertices())
}

pub fn buneman_graph_capped(sigma: &SplitSystem, cap: usize) -> Result<BunemanGraph> {
    let splits = sigma.to_vec();
    let rel = Relations::new(&splits);
    let mut vertices: Vec<BVertex> = Vec::new();
    let mut index: HashMap<BVertex, usize> = HashMap::new();
    let mut adj: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    let mut edge_ends = 0usize;
    let cap_error = |vertices: usize, edge_ends: usize| Error::VertexCap {
        limit: cap,
        vertices,
        edges: edge_ends / 2,
    };
    for x in 0..sigma.n() {
        let k = kuratowski(sigma, x)?;
        if !index.contains_key(&k) {
            if vertices.len() >= cap {
                return Err(cap_error(vertices.len(), edge_ends));
            }
            index.insert(k.clone(), vertices.len());
            queue.push_back(vertices.len());
            vertices.push(k);
            adj.push(Vec::new());
        }
    }
    while let Some(u) = queue.pop_front() {
        let v = vertices[u].clone();
        let zeros = rel.zeros(&v);
        let mut nbs = Vec::new();
        for i in 0..splits.len() {
            if !rel.flip_ok(&v, &zeros, i) {
                continue;
            }
            let w = v.flipped(i);
            let id = match index.get(&w) {
                Some(&id) => id,
                None => {
                    if vertices.len() >= cap {
                        return Err(cap_error(vertices.len(), edge_ends));
                    }
                    let id = vertices.len();
                    index.insert(w.clone(), id);
                    vertices.push(w);
                    adj.push(Vec::new());
                    queue.push_back(id);
                    id
                }
            };
            nbs.push(id);
        }
        nbs.sort_unstable();
        edge_ends += nbs.len();
        adj[u] = nbs;
    }
    Ok(BunemanGraph::assemble(sigma.clone(), splits, rel, vertices, index, adj))
}

/// `G(Σ)` by exhaustive search over all side selections (with pruning of
/// partial selections that already fail), and edges by comparing all pairs.
pub fn brute_buneman(sigma: &SplitSystem) -> Result<BunemanGraph> {
    let m = sigma.len();
    if m > MAX_BRUTE_SPLITS {
        return Err(Error::OracleTooLarge(format!("{m} splits, limit {MAX_BRUTE_SPLITS}")));
    }
    let splits = sigma.to_vec();
    let rel = Relations::new(&splits);
    let sides: Vec<[FixedBitSet; 2]> = splits.iter().map(|s| [s.complement(), s.bits().clone()]).collect();
    let mut found = Vec::new();
    let mut pick = vec![0usize; m];
    fn rec(
        i: usize,
        pick: &mut Vec<usize>,
        sides: &[[FixedBitSet; 2]],
        found: &mut Vec<Vec<usize>>,
    ) {
        if i == sides.len() {
            found.push(pick.clone());
            return;
        }
        for b in 0..2 {
            let ok = (0..i).all(|j| !sides[i][b].is_disjoint(&sides[j][pick[j]]));
            if ok {
                pick[i] = b;
                rec(i + 1, pick, sides, found);
            }
        }
    }
    rec(0, &mut pick, &sides, &mut found);
    let vertices: Vec<BVertex> = found
        .into_iter()
        .map(|p| {
            let mut c = FixedBitSet::with_capacity(m);
            for (i, b) in p.into_iter().enumerate() {
                c.set(i, b == 1);
            }
            BVertex::from_choice(c)
        })
        .collect();
    let index: HashMap<BVertex, usize> = vertices.iter().cloned().zip(0..).collect();
    let mut adj = vec![Vec::new(); vertices.len()];
    for a in 0..vertices.len() {
        for b in a + 1..vertices.len() {
            if vertices[a].distance(&vertices[b]) == 1 {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
    }
    Ok(BunemanGraph::assemble(sigma.clone(), splits, rel, vertices, index, adj))
}

impl BunemanGraph {
    fn assemble(
        sigma: SplitSystem,
        splits: Vec<Split>,
        rel: Relations,
        vertices: Vec<BVertex>,
        index: HashMap<BVertex, usize>,
        adj: Vec<Vec<usize>>,
    ) -> Self {
        let ig = IncompatGraph::new(&sigma);
        let components = ig.component_indices().to_vec();
        let component_of: Vec<usize> = (0..splits.len()).map(|i| ig.component_of(i)).collect();
        let mut g = BunemanGraph {
            sigma,
            splits,
            rel,
            vertices,
            index,
            adj,
            components,
            component_of,
            blocks: Vec::new(),
            block_of_component: Vec::new(),
            leaves: Vec::new(),
        };
        g.leaves = (0..g.sigma.n())
            .map(|x| g.index[&kuratowski(&g.sigma, x).expect("taxon in range")])
            .collect();
        let mut blocks: Vec<Block> = biconnected_blocks(&g.adj)
            .into_iter()
            .map(|edges| {
                let vs: BTreeSet<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
                let (a, b) = edges[0];
                let comp = g.component_of[g.edge_split(a, b).expect("block edge")];
                let mut edges: Vec<(usize, usize)> =
                    edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
                edges.sort_unstable();
                Block {
                    edges,
                    vertices: vs.into_iter().collect(),
                    component: comp,
                }
            })
            .collect();
        blocks.sort_by_key(|b| b.component);
        g.block_of_component = vec![usize::MAX; g.components.len()];
        for (bi, b) in blocks.iter().enumerate() {
            g.block_of_component[b.component] = bi;
        }
        g.blocks = blocks;
        g
    }

    pub fn sigma(&self) -> &SplitSystem {
        &self.sigma
    }

    /// The splits in bit order.
    pub fn splits(&self) -> &[Split] {
        &self.splits
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> &[BVertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &BVertex {
        &self.vertices[i]
    }

    pub fn index_of(&self, v: &BVertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    /// All edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nbs) in self.adj.iter().enumerate() {
            out.extend(nbs.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// The split index on which two adjacent vertices differ.
    pub fn edge_split(&self, u: usize, v: usize) -> Option<usize> {
        let d = self.vertices[u].delta(&self.vertices[v]);
        (d.len() == 1).then(|| d[0])
    }

    /// Vertex index of the Kuratowski map of taxon `x`.
    pub fn leaf(&self, x: usize) -> usize {
        self.leaves[x]
    }

    /// The side of split `i` selected by vertex `u`.
    pub fn side(&self, u: usize, i: usize) -> FixedBitSet {
        if self.vertices[u].canonical(i) {
            self.splits[i].bits().clone()
        } else {
            self.splits[i].complement()
        }
    }

    /// Whether `v` is pairwise intersecting (a vertex of `G(Σ)`).
    pub fn is_valid(&self, v: &BVertex) -> bool {
        v.len() == self.splits.len() && self.rel.is_vertex(v)
    }

    /// `Σ^(φ)`: split indices whose selected side is inclusion-minimal.
    /// Its size is the degree of `φ`.
    pub fn degree_support(&self, u: usize) -> Vec<usize> {
        let sides: Vec<FixedBitSet> = (0..self.splits.len()).map(|i| self.side(u, i)).collect();
        (0..sides.len())
            .filter(|&i| {
                !(0..sides.len()).any(|j| j != i && sides[j].is_subset(&sides[i]))
            })
            .collect()
    }

    /// `Σ^(φ)` as a split system.
    pub fn degree_support_system(&self, u: usize) -> SplitSystem {
        self.sigma
            .with_splits(self.degree_support(u).into_iter().map(|i| self.splits[i].clone()))
    }

    /// `π₀(Σ)` as lists of split indices, ordered by smallest member.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_of(&self, split: usize) -> usize {
        self.component_of[split]
    }

    pub fn component_system(&self, c: usize) -> SplitSystem {
        self.sigma
            .with_splits(self.components[c].iter().map(|&i| self.splits[i].clone()))
    }

    /// Blocks ordered by their component.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// `Θ(Σ₀)` as a block index.
    pub fn block_of_component(&self, c: usize) -> usize {
        self.block_of_component[c]
    }

    /// `max(S_i | Σ_c)` for a split outside component `c`, as "is canonical".
    pub fn max_is_canonical(&self, i: usize, c: usize) -> bool {
        self.rel.max_is_canonical(i, self.components[c][0])
    }

    /// `max(S_i | S_j)` for compatible distinct splits, as "is canonical".
    pub fn max_pair_is_canonical(&self, i: usize, j: usize) -> bool {
        self.rel.max_is_canonical(i, j)
    }

    /// `φ_{Σ₀}`: keeps `φ` on component `c` and takes `max(S|Σ₀)` elsewhere.
    pub fn gate(&self, v: &BVertex, c: usize) -> BVertex {
        let mut g = v.clone();
        for i in 0..self.splits.len() {
            if self.component_of[i] != c {
                g.set(i, self.max_is_canonical(i, c));
            }
        }
        g
    }

    /// Vertex index of the gate of taxon `x` in the block of component `c`.
    pub fn gate_of_taxon(&self, x: usize, c: usize) -> Result<usize> {
        let g = self.gate(&self.vertices[self.leaves[x]], c);
        self.index_of(&g)
            .ok_or_else(|| Error::Internal(format!("gate of taxon {x} missing from the graph")))
    }

    /// `Gates(G(Σ))`: every vertex that is the gate of some taxon in some
    /// block. Leaves count, as gates in their own pendant edge.
    pub fn gates(&self) -> Result<BTreeSet<usize>> {
        let mut out = BTreeSet::new();
        for c in 0..self.components.len() {
            for x in 0..self.sigma.n() {
                out.insert(self.gate_of_taxon(x, c)?);
            }
        }
        Ok(out)
    }

    /// Vertices satisfying `φ(S) = max(S|Σ₀)` for all `S ∉ Σ₀`: the block
    /// `Θ(Σ₀)` by its defining formula.
    pub fn theta_members(&self, c: usize) -> Vec<usize> {
        let fixed: Vec<(usize, bool)> = (0..self.splits.len())
            .filter(|&i| self.component_of[i] != c)
            .map(|i| (i, self.max_is_canonical(i, c)))
            .collect();
        (0..self.vertices.len())
            .filter(|&u| fixed.iter().all(|&(i, b)| self.vertices[u].canonical(i) == b))
            .collect()
    }

    /// Splits Bu-displayed by the graph: deleting all edges labelled by the
    /// split leaves two components with the taxa divided accordingly.
    pub fn bu_displayed(&self) -> SplitSystem {
        let mut out = SplitSystem::empty(self.sigma.taxa().clone());
        let nv = self.vertices.len();
        for i in 0..self.splits.len() {
            let mut comp = vec![usize::MAX; nv];
            let mut count = 0;
            for s in 0..nv {
                if comp[s] != usize::MAX {
                    continue;
                }
                comp[s] = count;
                let mut stack = vec![s];
                while let Some(u) = stack.pop() {
                    for &w in &self.adj[u] {
                        if comp[w] == usize::MAX && self.vertices[u].canonical(i) == self.vertices[w].canonical(i) {
                            comp[w] = count;
                            stack.push(w);
                        }
                    }
                }
                count += 1;
            }
            if count != 2 {
                continue;
            }
            let mut side = FixedBitSet::with_capacity(self.sigma.n());
            for x in 0..self.sigma.n() {
                if comp[self.leaves[x]] == comp[self.leaves[0]] {
                    side.insert(x);
                }
            }
            if let Ok(s) = Split::from_bits(side) {
                out.insert(s);
            }
        }
        out
    }

    /// Whether the graph is a tree.
    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.vertex_count() && crate::graph::component_count(&self.adj) == 1
    }
}
