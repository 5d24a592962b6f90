use std::collections::HashMap;

use crate::split::{Split, SplitSystem};

/// The incompatibility graph `Incomp(Σ)` and its components `π₀(Σ)`.
#[derive(Clone, Debug)]
pub struct IncompatGraph {
    splits: Vec<Split>,
    adj: Vec<Vec<usize>>,
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
}

impl IncompatGraph {
    pub fn new(sigma: &SplitSystem) -> Self {
        let splits = sigma.to_vec();
        let m = splits.len();
        let mut adj = vec![Vec::new(); m];
        for i in 0..m {
            for j in i + 1..m {
                if !splits[i].compatible_with(&splits[j]) {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        // splits are sorted, so discovering components from the lowest
        // unvisited index orders them by smallest member
        let mut component_of = vec![usize::MAX; m];
        let mut components = Vec::new();
        for start in 0..m {
            if component_of[start] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![start];
            component_of[start] = id;
            let mut head = 0;
            while head < members.len() {
                let v = members[head];
                head += 1;
                for &w in &adj[v] {
                    if component_of[w] == usize::MAX {
                        component_of[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        IncompatGraph {
            splits,
            adj,
            components,
            component_of,
        }
    }

    pub fn splits(&self) -> &[Split] {
        &self.splits
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(&j)
    }

    /// Components as lists of split indices, ordered by smallest split.
    pub fn component_indices(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_of(&self, i: usize) -> usize {
        self.component_of[i]
    }
}

pub fn incompatibility_graph(sigma: &SplitSystem) -> IncompatGraph {
    IncompatGraph::new(sigma)
}

/// `π₀(Σ)` as split systems, ordered by their smallest split.
pub fn components(sigma: &SplitSystem) -> Vec<SplitSystem> {
    let g = IncompatGraph::new(sigma);
    g.components
        .iter()
        .map(|c| sigma.with_splits(c.iter().map(|&i| g.splits[i].clone())))
        .collect()
}

/// Outcome of the maximal-generator test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorCheck {
    Maximal,
    /// No non-trivial split separates these two taxa.
    Unseparated(usize, usize),
    /// `Incomp(Σ⁻)` is disconnected; two of its components as a certificate.
    Disconnected(SplitSystem, SplitSystem),
}

impl GeneratorCheck {
    pub fn is_maximal(&self) -> bool {
        matches!(self, GeneratorCheck::Maximal)
    }
}

/// Tests whether a circular Σ generates a maximal circular system under
/// I-closure: every pair of taxa is separated by a non-trivial split, and the
/// non-trivial splits form a connected incompatibility graph.
///
/// A non-circular Σ gets an answer that only reflects these two conditions.
/// On three taxa there are no non-trivial splits, so every Σ fails the first
/// condition even though its closure may already be maximal.
pub fn is_maximal_generator(sigma: &SplitSystem) -> GeneratorCheck {
    let minus = sigma.remove_trivial();
    let comps = components(&minus);
    if comps.len() > 1 {
        return GeneratorCheck::Disconnected(comps[0].clone(), comps[1].clone());
    }
    let n = sigma.n();
    let mut first_with: HashMap<Vec<bool>, usize> = HashMap::new();
    for x in 0..n {
        let sig: Vec<bool> = minus.iter().map(|s| s.contains(x)).collect();
        if let Some(&y) = first_with.get(&sig) {
            return GeneratorCheck::Unseparated(y, x);
        }
        first_with.insert(sig, x);
    }
    GeneratorCheck::Maximal
}
