//! Small undirected-graph helpers shared by networks and Buneman graphs.

const UNSEEN: usize = usize::MAX;

/// Biconnected components (blocks) of a simple undirected graph, each given
/// as its edge list. Bridges come out as single-edge blocks; isolated
/// vertices produce nothing. Iterative, so deep graphs are fine.
pub fn biconnected_blocks(adj: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let n = adj.len();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut time = 0usize;
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    // (vertex, parent, next neighbour index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, UNSEEN, 0));
        while let Some(&mut (v, p, ref mut i)) = stack.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                if w == p {
                    continue;
                }
                if disc[w] == UNSEEN {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if p != UNSEEN {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == (p, v) {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// Number of connected components.
pub fn component_count(adj: &[Vec<usize>]) -> usize {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut count = 0;
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        stack.push(s);
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Orders the vertices of a cycle given by its edges: starts at the smallest
/// vertex and steps to its smaller neighbour first. Returns `None` if the
/// edges do not form a single cycle.
pub fn cycle_order(edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    use std::collections::HashMap;
    let mut nb: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(a, b) in edges {
        nb.entry(a).or_default().push(b);
        nb.entry(b).or_default().push(a);
    }
    if nb.len() != edges.len() || nb.values().any(|v| v.len() != 2) {
        return None;
    }
    let start = *nb.keys().min()?;
    let first = *nb[&start].iter().min()?;
    let mut order = vec![start];
    let (mut prev, mut cur) = (start, first);
    while cur != start {
        order.push(cur);
        let ns = &nb[&cur];
        let next = if ns[0] == prev { ns[1] } else { ns[0] };
        prev = cur;
        cur = next;
        if order.len() > edges.len() {
            return None;
        }
    }
    if order.len() == edges.len() {
        Some(order)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adj(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let mut a = vec![Vec::new(); n];
        for &(u, v) in edges {
            a[u].push(v);
            a[v].push(u);
        }
        a
    }

    #[test]
    fn blocks_of_two_cycles_and_bridge() {
        // 0-1-2-3-0 square, bridge 3-4, triangle-free 4-5-6-7-4
        let e = [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 6), (6, 7), (7, 4)];
        let mut sizes: Vec<usize> = biconnected_blocks(&adj(8, &e)).iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 4, 4]);
    }

    #[test]
    fn shared_edge_is_one_block() {
        let e = [(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 5), (5, 2)];
        let blocks = biconnected_blocks(&adj(6, &e));
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].len(), 7);
    }

    #[test]
    fn cycle_ordering() {
        assert_eq!(cycle_order(&[(3, 1), (1, 2), (2, 0), (0, 3)]), Some(vec![0, 2, 1, 3]));
        assert_eq!(cycle_order(&[(0, 1), (1, 2)]), None);
    }

    #[test]
    fn components() {
        assert_eq!(component_count(&adj(4, &[(0, 1), (2, 3)])), 2);
    }
}
