//! Brute-force reference implementations. They are exponential and exist to
//! cross-check the main algorithms on small inputs.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::network::{Edge, Network};
use crate::ordering::CircularOrdering;
use crate::random::RawGraph;
use crate::split::{Split, SplitSystem};
use crate::taxa::TaxaSet;

/// Largest taxa count accepted by [`brute_circular`].
pub const MAX_BRUTE_CIRCULAR: usize = 10;
/// Largest taxa count accepted by [`enumerate_1nested`].
pub const MAX_ENUMERATE: usize = 5;

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every circular ordering up to rotation and reflection, in lexicographic
/// order of the canonical form.
pub fn all_orderings(n: usize) -> Result<Vec<CircularOrdering>> {
    if n > MAX_BRUTE_CIRCULAR {
        return Err(Error::OracleTooLarge(format!("{n} taxa, limit {MAX_BRUTE_CIRCULAR}")));
    }
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (1..n).collect();
    loop {
        if rest[0] < rest[rest.len() - 1] {
            let mut order = vec![0];
            order.extend_from_slice(&rest);
            out.push(CircularOrdering::new(order)?);
        }
        if !next_permutation(&mut rest) {
            break;
        }
    }
    Ok(out)
}

/// Scans all `(n-1)!/2` orderings for one displaying Σ.
pub fn brute_circular(sigma: &SplitSystem) -> Result<Option<CircularOrdering>> {
    let n = sigma.n();
    if n > MAX_BRUTE_CIRCULAR {
        return Err(Error::OracleTooLarge(format!("{n} taxa, limit {MAX_BRUTE_CIRCULAR}")));
    }
    let mut rest: Vec<usize> = (1..n).collect();
    loop {
        if rest[0] < rest[rest.len() - 1] {
            let mut order = vec![0];
            order.extend_from_slice(&rest);
            let o = CircularOrdering::new(order)?;
            if o.displays(sigma) {
                return Ok(Some(o));
            }
        }
        if !next_permutation(&mut rest) {
            return Ok(None);
        }
    }
}

/// Closure by repeated full scans of all pairs until nothing changes.
pub fn naive_closure(sigma: &SplitSystem, incompatible_only: bool) -> SplitSystem {
    let mut cur: BTreeSet<Split> = sigma.splits().clone();
    loop {
        let v: Vec<Split> = cur.iter().cloned().collect();
        let mut next = cur.clone();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if incompatible_only && v[i].compatible_with(&v[j]) {
                    continue;
                }
                for a in [v[i].bits().clone(), v[i].complement()] {
                    for b in [v[j].bits().clone(), v[j].complement()] {
                        let mut c = a.clone();
                        c.intersect_with(&b);
                        if let Ok(s) = Split::from_bits(c) {
                            next.insert(s);
                        }
                    }
                }
            }
        }
        if next.len() == cur.len() {
            return sigma.with_splits(cur);
        }
        cur = next;
    }
}

fn components_without(net: &Network, banned: &[Edge]) -> Vec<usize> {
    let nv = net.vertex_count();
    let mut comp = vec![usize::MAX; nv];
    let mut id = 0;
    for s in 0..nv {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = id;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in net.neighbors(v) {
                let e = if v < w { (v, w) } else { (w, v) };
                if comp[w] == usize::MAX && !banned.contains(&e) {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
        id += 1;
    }
    comp
}

fn cut_split(net: &Network, banned: &[Edge]) -> Option<Split> {
    let comp = components_without(net, banned);
    if comp.iter().any(|&c| c > 1) || comp.iter().all(|&c| c == 0) {
        return None;
    }
    let mut side = FixedBitSet::with_capacity(net.n());
    let mut other = false;
    for t in 0..net.n() {
        if comp[net.leaf(t)] == 0 {
            side.insert(t);
        } else {
            other = true;
        }
    }
    if side.is_clear() || !other {
        return None;
    }
    Split::from_bits(side).ok()
}

/// Every minimal cut of size one or two with its split, found by trying all
/// edges and edge pairs. Works on any network, 1-nested or not.
pub fn brute_cut_sets(net: &Network) -> Vec<(Vec<Edge>, Split)> {
    let edges = net.edges();
    let mut out = Vec::new();
    let mut single = vec![false; edges.len()];
    for (i, &e) in edges.iter().enumerate() {
        if let Some(s) = cut_split(net, &[e]) {
            single[i] = true;
            out.push((vec![e], s));
        }
    }
    for i in 0..edges.len() {
        if single[i] {
            continue;
        }
        for j in i + 1..edges.len() {
            if single[j] {
                continue;
            }
            if let Some(s) = cut_split(net, &[edges[i], edges[j]]) {
                out.push((vec![edges[i], edges[j]], s));
            }
        }
    }
    out
}

/// `Σ(N)` by cut enumeration.
pub fn brute_min_cuts(net: &Network) -> SplitSystem {
    let mut sys = SplitSystem::empty(net.taxa().clone());
    for (_, s) in brute_cut_sets(net) {
        sys.insert(s);
    }
    sys
}

/// Number of minimal cuts of size at most two inducing `s`.
pub fn brute_multiplicity(net: &Network, s: &Split) -> usize {
    brute_cut_sets(net).iter().filter(|(_, t)| t == s).count()
}

/// Cyclic arrangements of `items` with the first item fixed, one per
/// reflection pair.
fn cyclic_arrangements(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut rest: Vec<usize> = items[1..].to_vec();
    rest.sort_unstable();
    loop {
        if rest.len() < 2 || rest[0] < rest[rest.len() - 1] {
            let mut v = vec![items[0]];
            v.extend_from_slice(&rest);
            out.push(v);
        }
        if !next_permutation(&mut rest) {
            break;
        }
    }
    out
}

/// All phylogenetic trees on taxa `0..n` as raw graphs, one per split set.
fn all_trees(n: usize) -> Vec<RawGraph> {
    let mut level = vec![RawGraph::star3()];
    for t in 3..n {
        let mut next: HashMap<String, RawGraph> = HashMap::new();
        for g in &level {
            let mut push = |h: RawGraph| {
                let key = tree_key(&h, t + 1);
                next.entry(key).or_insert(h);
            };
            for v in g.internal() {
                let mut h = g.clone();
                h.attach(v, t);
                push(h);
            }
            for (u, v) in g.edges() {
                let mut h = g.clone();
                h.subdivide(u, v, t);
                push(h);
            }
        }
        let mut keys: Vec<String> = next.keys().cloned().collect();
        keys.sort();
        level = keys.into_iter().map(|k| next.remove(&k).unwrap()).collect();
    }
    level
}

/// Sorted list of the leaf sets below each edge, as a string key.
fn tree_key(g: &RawGraph, n: usize) -> String {
    let taxa = Arc::new(TaxaSet::numbered(n).unwrap());
    let net = g.clone().into_network(taxa).expect("valid tree");
    format!("{:?}", net.splits().expect("tree"))
}

/// All 1-nested networks on `taxa` up to equivalence (equal split sets), as
/// trees with some of their high-degree vertices expanded into cycles.
pub fn enumerate_1nested(taxa: Arc<TaxaSet>) -> Result<Vec<Network>> {
    let n = taxa.len();
    if n > MAX_ENUMERATE {
        return Err(Error::OracleTooLarge(format!("{n} taxa, limit {MAX_ENUMERATE}")));
    }
    let mut seen: BTreeSet<Vec<Split>> = BTreeSet::new();
    let mut out = Vec::new();
    for tree in all_trees(n) {
        let hubs: Vec<usize> = tree
            .internal()
            .into_iter()
            .filter(|&v| tree.adj[v].len() >= 4)
            .collect();
        // every assignment hub -> (not expanded | one cyclic arrangement)
        let options: Vec<Vec<Option<Vec<usize>>>> = hubs
            .iter()
            .map(|&v| {
                let nbs: Vec<usize> = tree.adj[v].iter().copied().collect();
                let mut o: Vec<Option<Vec<usize>>> = vec![None];
                o.extend(cyclic_arrangements(&nbs).into_iter().map(Some));
                o
            })
            .collect();
        let mut pick = vec![0usize; hubs.len()];
        loop {
            let mut g = tree.clone();
            for (h, &p) in pick.iter().enumerate() {
                if let Some(order) = &options[h][p] {
                    g.expand(hubs[h], order);
                }
            }
            let net = g.into_network(taxa.clone())?;
            let key = net.splits()?.to_vec();
            if seen.insert(key) {
                out.push(net);
            }
            // odometer step
            let mut i = 0;
            while i < pick.len() {
                pick[i] += 1;
                if pick[i] < options[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
            if i == pick.len() {
                break;
            }
        }
    }
    Ok(out)
}
