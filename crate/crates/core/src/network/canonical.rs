use super::Network;
use crate::error::Result;
use crate::ordering::CircularOrdering;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Entry {
    Edge(usize),
    Cycle(usize),
}

impl Network {
    /// The other vertices of cycle `c`, walking away from `v` in the stored
    /// direction.
    fn cycle_walk(&self, c: usize, v: usize) -> Vec<usize> {
        let cyc = &self.cycles[c];
        let k = cyc.len();
        let i = cyc.iter().position(|&x| x == v).expect("vertex on cycle");
        (1..k).map(|d| cyc[(i + d) % k]).collect()
    }

    fn tree_children(&self, v: usize, entry: Entry) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied().filter(move |&w| {
            self.cycle_of_edge(v, w).is_none() && entry != Entry::Edge(w)
        })
    }

    fn planar_visit(&self, v: usize, entry: Entry, out: &mut Vec<usize>) {
        if let Some(t) = self.taxon_of[v] {
            out.push(t);
            return;
        }
        let kids: Vec<usize> = self.tree_children(v, entry).collect();
        for w in kids {
            self.planar_visit(w, Entry::Edge(v), out);
        }
        for &c in &self.vertex_cycles[v] {
            if entry == Entry::Cycle(c) {
                continue;
            }
            for u in self.cycle_walk(c, v) {
                self.planar_visit(u, Entry::Cycle(c), out);
            }
        }
    }

    /// A circular ordering of the taxa read off a planar drawing: every split
    /// displayed by a 1-nested network is an interval of it.
    pub fn planar_ordering(&self) -> Result<CircularOrdering> {
        self.require_one_nested()?;
        let root = self.leaf_of[0];
        let mut out = vec![0];
        self.planar_visit(self.adj[root][0], Entry::Edge(root), &mut out);
        CircularOrdering::new(out)
    }

    fn encode(&self, v: usize, entry: Entry) -> String {
        if let Some(t) = self.taxon_of[v] {
            return format!("L{t}");
        }
        let mut parts: Vec<String> = self
            .tree_children(v, entry)
            .map(|w| self.encode(w, Entry::Edge(v)))
            .collect();
        for &c in &self.vertex_cycles[v] {
            if entry == Entry::Cycle(c) {
                continue;
            }
            let fwd: Vec<String> = self
                .cycle_walk(c, v)
                .into_iter()
                .map(|u| self.encode(u, Entry::Cycle(c)))
                .collect();
            let mut rev = fwd.clone();
            rev.reverse();
            let best = if rev < fwd { rev } else { fwd };
            parts.push(format!("C[{}]", best.join(",")));
        }
        parts.sort();
        format!("V({})", parts.join(","))
    }

    /// A string that two 1-nested networks share iff they are isomorphic by
    /// a map fixing every taxon.
    pub fn canonical_form(&self) -> Result<String> {
        self.require_one_nested()?;
        let root = self.leaf_of[0];
        Ok(self.encode(self.adj[root][0], Entry::Edge(root)))
    }

    pub fn is_isomorphic(&self, other: &Network) -> Result<bool> {
        Ok(self.taxa.names() == other.taxa.names()
            && self.canonical_form()? == other.canonical_form()?)
    }
}
