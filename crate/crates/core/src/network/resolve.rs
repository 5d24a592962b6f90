use std::collections::BTreeSet;

use super::{edge, Edge, Network};
use crate::error::{Error, Result};

/// A local partial-resolution move or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// `vertex` lies on `cycle` and has at least two edges outside it; all of
    /// those move to a new vertex joined to `vertex` by a cut-edge.
    R1 { vertex: usize, cycle: usize },
    /// `vertex` is shared by `cycle` and at least one other cycle; the two
    /// edges of `cycle` at `vertex` move to a new vertex joined by a cut-edge.
    R2 { vertex: usize, cycle: usize },
    /// Collapses the non-trivial cut-edge `{cycle_vertex, other}`, where
    /// `cycle_vertex` has degree 3 on a single cycle and `other` is an
    /// internal vertex on no cycle.
    R1Inverse { cycle_vertex: usize, other: usize },
    /// As [`Move::R1Inverse`] but `other` lies on a cycle too.
    R2Inverse { cycle_vertex: usize, other: usize },
}

impl Network {
    fn cycle_neighbors(&self, v: usize, c: usize) -> Option<(usize, usize)> {
        let cyc = self.cycles.get(c)?;
        let k = cyc.len();
        let i = cyc.iter().position(|&x| x == v)?;
        Some((cyc[(i + k - 1) % k], cyc[(i + 1) % k]))
    }

    fn detach(&self, v: usize, moving: &[usize]) -> Result<Network> {
        let mut edges: BTreeSet<Edge> = self.edges().into_iter().collect();
        let fresh = self.vertex_count();
        for &w in moving {
            edges.remove(&edge(v, w));
            edges.insert(edge(fresh, w));
        }
        edges.insert(edge(v, fresh));
        let mut labels = self.labels().to_vec();
        labels.push(None);
        let removed = vec![false; fresh + 1];
        Network::rebuild(self.taxa.clone(), fresh + 1, &labels, &edges, &removed)
    }

    fn contract(&self, keep: usize, drop: usize) -> Result<Network> {
        let mut edges: BTreeSet<Edge> = BTreeSet::new();
        for (a, b) in self.edges() {
            let a2 = if a == drop { keep } else { a };
            let b2 = if b == drop { keep } else { b };
            if a2 != b2 {
                edges.insert(edge(a2, b2));
            }
        }
        let mut removed = vec![false; self.vertex_count()];
        removed[drop] = true;
        Network::rebuild(
            self.taxa.clone(),
            self.vertex_count(),
            self.labels(),
            &edges,
            &removed,
        )
    }

    fn check_collapse(&self, u: usize, w: usize, other_on_cycle: bool) -> Result<()> {
        if u >= self.vertex_count() || w >= self.vertex_count() || !self.has_edge(u, w) {
            return Err(Error::MoveNotApplicable(format!("{{{u}, {w}}} is not an edge")));
        }
        if self.cycle_of_edge(u, w).is_some() {
            return Err(Error::MoveNotApplicable(format!("{{{u}, {w}}} is a cycle edge")));
        }
        if self.is_leaf(u) || self.is_leaf(w) {
            return Err(Error::MoveNotApplicable(format!("{{{u}, {w}}} is a trivial cut-edge")));
        }
        if self.cycles_at(u).len() != 1 || self.degree(u) != 3 {
            return Err(Error::MoveNotApplicable(format!(
                "vertex {u} is not a degree-3 vertex of a single cycle"
            )));
        }
        if other_on_cycle != self.is_cycle_vertex(w) {
            return Err(Error::MoveNotApplicable(if other_on_cycle {
                format!("vertex {w} is not on a cycle")
            } else {
                format!("vertex {w} is on a cycle")
            }));
        }
        Ok(())
    }

    /// Applies one move, returning the new network. Vertex ids are preserved
    /// except that a collapse removes one vertex and renumbers the rest.
    pub fn apply_move(&self, mv: Move) -> Result<Network> {
        self.require_one_nested()?;
        match mv {
            Move::R1 { vertex, cycle } => {
                let (p, q) = self.cycle_neighbors(vertex, cycle).ok_or_else(|| {
                    Error::MoveNotApplicable(format!("vertex {vertex} is not on cycle {cycle}"))
                })?;
                let moving: Vec<usize> = self
                    .neighbors(vertex)
                    .iter()
                    .copied()
                    .filter(|&w| w != p && w != q)
                    .collect();
                if moving.len() < 2 {
                    return Err(Error::MoveNotApplicable(format!(
                        "vertex {vertex} has fewer than two edges off cycle {cycle}"
                    )));
                }
                self.detach(vertex, &moving)
            }
            Move::R2 { vertex, cycle } => {
                let (p, q) = self.cycle_neighbors(vertex, cycle).ok_or_else(|| {
                    Error::MoveNotApplicable(format!("vertex {vertex} is not on cycle {cycle}"))
                })?;
                if self.cycles_at(vertex).len() < 2 {
                    return Err(Error::MoveNotApplicable(format!(
                        "vertex {vertex} is not shared by two cycles"
                    )));
                }
                self.detach(vertex, &[p, q])
            }
            Move::R1Inverse {
                cycle_vertex,
                other,
            } => {
                self.check_collapse(cycle_vertex, other, false)?;
                self.contract(cycle_vertex, other)
            }
            Move::R2Inverse {
                cycle_vertex,
                other,
            } => {
                self.check_collapse(cycle_vertex, other, true)?;
                self.contract(cycle_vertex, other)
            }
        }
    }

    /// Every move applicable to this network.
    pub fn applicable_moves(&self) -> Vec<Move> {
        let mut out = Vec::new();
        if !self.one_nested {
            return out;
        }
        for v in 0..self.vertex_count() {
            for &c in self.cycles_at(v) {
                if self.degree(v) >= 4 {
                    out.push(Move::R1 {
                        vertex: v,
                        cycle: c,
                    });
                }
                if self.cycles_at(v).len() >= 2 {
                    out.push(Move::R2 {
                        vertex: v,
                        cycle: c,
                    });
                }
            }
        }
        for &(a, b) in &self.bridges {
            for (u, w) in [(a, b), (b, a)] {
                if self.check_collapse(u, w, false).is_ok() {
                    out.push(Move::R1Inverse {
                        cycle_vertex: u,
                        other: w,
                    });
                }
                if self.check_collapse(u, w, true).is_ok() {
                    out.push(Move::R2Inverse {
                        cycle_vertex: u,
                        other: w,
                    });
                }
            }
        }
        out
    }

    /// Resolves every cycle vertex until each has degree 3 and lies on a
    /// single cycle.
    pub fn maximal_partial_resolution(&self) -> Result<Network> {
        self.require_one_nested()?;
        let mut net = self.clone();
        loop {
            let target = (0..net.vertex_count())
                .find(|&v| net.is_cycle_vertex(v) && net.degree(v) > 3);
            match target {
                None => return Ok(net),
                Some(v) => {
                    let cycle = net.cycles_at(v)[0];
                    net = net.apply_move(Move::R1 { vertex: v, cycle })?;
                }
            }
        }
    }
}
