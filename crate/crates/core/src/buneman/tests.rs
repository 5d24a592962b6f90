use std::collections::BTreeSet;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::SeedableRng;

use super::*;
use crate::network::Network;
use crate::random::{random_circular, random_network, random_splits, NetworkParams};
use crate::synthesis::{buneman_tree, minimal_1nested, simple_level1_from_maximal};
use crate::taxa::TaxaSet;

fn taxa(n: usize) -> Arc<TaxaSet> {
    Arc::new(TaxaSet::numbered(n).unwrap())
}

fn same_vertices(a: &BunemanGraph, b: &BunemanGraph) -> bool {
    let va: BTreeSet<&BVertex> = a.vertices().iter().collect();
    let vb: BTreeSet<&BVertex> = b.vertices().iter().collect();
    va == vb && a.edge_count() == b.edge_count()
}

#[test]
fn kuratowski_selects_own_side() {
    let t = taxa(5);
    let s = SplitSystem::compact(&t, &["12|345"]).unwrap();
    let k = kuratowski(&s, 0).unwrap();
    assert!(k.canonical(0));
    assert!(!kuratowski(&s, 3).unwrap().canonical(0));
    assert!(kuratowski(&s, 9).is_err());
}

#[test]
fn star_on_three_taxa() {
    let s = SplitSystem::trivial(taxa(3));
    let g = buneman_graph(&s).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (4, 3));
    assert!(g.is_tree());
    assert!(same_vertices(&g, &brute_buneman(&s).unwrap()));
    let centre = (0..4).find(|&u| g.neighbors(u).len() == 3).unwrap();
    assert_eq!(g.degree_support_system(centre), s);
    for x in 0..3 {
        assert_eq!(g.degree_support(g.leaf(x)), vec![g.splits().iter().position(|p| *p == Split::trivial(3, x)).unwrap()]);
    }
}

#[test]
fn maximal_circular_on_four_taxa() {
    let t = taxa(4);
    let s = SplitSystem::compact(&t, &["1", "2", "3", "4", "12|34", "23|14"]).unwrap();
    let g = buneman_graph(&s).unwrap();
    assert!(same_vertices(&g, &brute_buneman(&s).unwrap()));
    assert_eq!((g.vertex_count(), g.edge_count()), (8, 8));
    let big: Vec<&Block> = g.blocks().iter().filter(|b| !b.is_cut_edge()).collect();
    assert_eq!(big.len(), 1);
    assert_eq!(big[0].vertices.len(), 4);
    let m = marguerites(&g).unwrap();
    assert_eq!(m.len(), 1);
    assert_eq!(m[0].vertices().len(), 4);
    assert!(m[0].psi.iter().all(Vec::is_empty));
    let ext: BTreeSet<usize> = m[0].external().into_iter().collect();
    assert_eq!(ext, big[0].vertices.iter().copied().collect());
    // the gate of taxon 1 in the square is the square vertex next to leaf 1
    let c = big[0].component;
    let gate = g.gate_of_taxon(0, c).unwrap();
    assert!(g.has_edge(gate, g.leaf(0)));
    let net = extract_network(&g).unwrap();
    assert!(net.equivalent(&simple_level1_from_maximal(&s).unwrap()).unwrap());
    assert!(matches!(marguerite(&g, 0), Err(Error::CutEdgeBlock(0))));
}

#[test]
fn bfs_matches_exhaustive_enumeration() {
    let mut rng = StdRng::seed_from_u64(5);
    for i in 0..150 {
        let n = 3 + i % 4;
        let s = random_splits(taxa(n), 1 + i % 9, &mut rng);
        let g = buneman_graph(&s).unwrap();
        let b = brute_buneman(&s).unwrap();
        assert!(same_vertices(&g, &b), "{s:?}");
        for u in 0..g.vertex_count() {
            assert!(g.is_valid(g.vertex(u)));
            assert_eq!(g.degree_support(u).len(), g.neighbors(u).len());
        }
    }
}

#[test]
fn structural_properties() {
    let mut rng = StdRng::seed_from_u64(9);
    for i in 0..120 {
        let n = 3 + i % 4;
        let s = random_splits(taxa(n), 1 + i % 8, &mut rng).with_trivials();
        let g = buneman_graph(&s).unwrap();
        // (Bi) Bu-displayed splits are Σ
        assert_eq!(g.bu_displayed(), s);
        // (Bv) one block per component, reproduced by the Θ formula
        assert_eq!(g.blocks().len(), g.components().len());
        for c in 0..g.components().len() {
            let b = &g.blocks()[g.block_of_component(c)];
            assert_eq!(b.component, c);
            assert_eq!(b.vertices, g.theta_members(c));
        }
        // (Biv) max(S|Σ₂) does not depend on the representative
        for i in 0..g.splits().len() {
            for (c, comp) in g.components().iter().enumerate() {
                if g.component_of(i) == c {
                    continue;
                }
                let first = g.max_pair_is_canonical(i, comp[0]);
                assert!(comp.iter().all(|&j| g.max_pair_is_canonical(i, j) == first));
            }
        }
        // gate identity D(φ,ψ) = D(φ,g) + D(g,ψ) for ψ in the block
        for u in (0..g.vertex_count()).step_by(3) {
            let phi = g.vertex(u);
            for c in 0..g.components().len() {
                let gate = g.gate(phi, c);
                assert!(g.index_of(&gate).is_some());
                for &w in &g.blocks()[g.block_of_component(c)].vertices {
                    let psi = g.vertex(w);
                    assert_eq!(phi.distance(psi), phi.distance(&gate) + gate.distance(psi));
                }
            }
        }
    }
}

#[test]
fn compatible_systems_give_the_tree() {
    let mut rng = StdRng::seed_from_u64(2);
    for i in 0..60 {
        let n = 4 + i % 5;
        let p = NetworkParams {
            cycle: 0.0,
            ..Default::default()
        };
        let tree = random_network(taxa(n), p, &mut rng);
        let s = tree.splits().unwrap();
        let g = buneman_graph(&s).unwrap();
        assert!(g.is_tree());
        let extracted = extract_network(&g).unwrap();
        assert!(extracted.is_isomorphic(&buneman_tree(&s).unwrap()).unwrap());
        assert!(extracted.is_isomorphic(&tree).unwrap());
    }
}

#[test]
fn marguerite_closed_forms() {
    for k in 4..=8 {
        let sk = sigma_k(k).unwrap();
        assert_eq!(sk.len(), k * (k - 3) / 2);
        let g = brute_buneman(&sk).unwrap();
        let splits = sk.to_vec();
        for i in 0..k {
            for j in 0..=k - 3 {
                assert!(g.index_of(&phi_map(&sk, i, j)).is_some());
            }
            for j in 0..k - 3 {
                let d = phi_map(&sk, i, j).delta(&phi_map(&sk, i, j + 1));
                let want = Split::from_bits(interval(k, (i + 2 * k - j - 1) % k, i)).unwrap();
                assert_eq!(d.len(), 1);
                assert_eq!(splits[d[0]], want);
            }
            for j in 1..k - 3 {
                let psi = psi_map(&sk, i, j);
                assert!(g.index_of(&psi).is_some());
                assert_eq!(psi.distance(&phi_map(&sk, i, j)), 1);
            }
            assert_eq!(phi_map(&sk, i, k - 3), phi_map(&sk, (i + 1) % k, 0));
            assert_eq!(psi_map(&sk, i, k - 3), phi_map(&sk, (i + 1) % k, 1));
            if k >= 5 {
                assert_eq!(psi_map(&sk, i, k - 4), psi_map(&sk, (i + 1) % k, 1));
            }
        }
    }
}

#[test]
fn marguerite_sizes() {
    let sizes: Vec<(usize, usize, usize)> = (4..=8)
        .map(|k| {
            let sk = sigma_k(k).unwrap();
            let g = buneman_graph(&sk).unwrap();
            let m = marguerites(&g).unwrap();
            assert_eq!(m.len(), 1);
            let phi: BTreeSet<usize> = m[0].phi.iter().flatten().copied().collect();
            (g.vertex_count(), phi.len(), m[0].vertices().len())
        })
        .collect();
    assert_eq!(
        sizes,
        vec![(4, 4, 4), (11, 10, 11), (26, 18, 24), (57, 28, 42), (120, 40, 64)]
    );
}

#[test]
fn non_adjacent_splits_have_four_parallel_edges() {
    for k in 6..=8 {
        let sk = sigma_k(k).unwrap();
        let g = buneman_graph(&sk).unwrap();
        let m = &marguerites(&g).unwrap()[0];
        let verts = m.vertices();
        let mut ext = BTreeSet::new();
        for path in &m.phi {
            for w in path.windows(2) {
                ext.insert((w[0].min(w[1]), w[0].max(w[1])));
            }
        }
        for (t, s) in g.splits().iter().enumerate() {
            let size = s.size().min(k - s.size());
            if size == 2 {
                continue;
            }
            let edges: Vec<(usize, usize)> = g
                .edges()
                .into_iter()
                .filter(|&(a, b)| verts.contains(&a) && verts.contains(&b) && g.edge_split(a, b) == Some(t))
                .collect();
            assert_eq!(edges.len(), 4, "{s:?}");
            assert_eq!(edges.iter().filter(|e| ext.contains(e)).count(), 2);
        }
    }
}

#[test]
fn extraction_is_optimal() {
    let mut rng = StdRng::seed_from_u64(4);
    for i in 0..80 {
        let n = 4 + i % 4;
        let (s, _) = random_circular(taxa(n), 1 + i % 7, true, &mut rng);
        let g = buneman_graph(&s).unwrap();
        let net = extract_network(&g).unwrap();
        assert!(net.equivalent(&minimal_1nested(&s).unwrap()).unwrap(), "{s:?}");
    }
}

#[test]
fn extraction_rejects_bad_input() {
    let t = taxa(5);
    let s = SplitSystem::compact(&t, &["12|345", "13|245", "14|235"]).unwrap().with_trivials();
    assert!(matches!(extract_network(&buneman_graph(&s).unwrap()), Err(Error::NotCircular(_))));
    let s = SplitSystem::compact(&t, &["12|345"]).unwrap();
    assert!(matches!(
        extract_network(&buneman_graph(&s).unwrap()),
        Err(Error::MissingTrivialSplit(_))
    ));
}

#[test]
fn vertex_cap() {
    let sk = sigma_k(8).unwrap();
    match buneman_graph_capped(&sk, 50) {
        Err(Error::VertexCap { limit, vertices, .. }) => {
            assert_eq!(limit, 50);
            assert_eq!(vertices, 50);
        }
        other => panic!("expected a cap error, got {other:?}"),
    }
}

fn check_embedding(net: &Network) {
    let e = embed_network(net).unwrap();
    assert!(e.is_injective());
    assert!(e.is_subgraph());
    let gates = e.graph.gates().unwrap();
    assert_eq!(e.image(), gates);
    let leaves: BTreeSet<usize> = (0..net.n()).map(|x| e.graph.leaf(x)).collect();
    assert_eq!(e.internal_image(), gates.difference(&leaves).copied().collect());
}

#[test]
fn embedding_of_a_square() {
    let net = Network::cycle_with_leaves(taxa(4), &[0, 1, 2, 3]).unwrap();
    check_embedding(&net);
    let e = embed_network(&net).unwrap();
    let m = marguerites(&e.graph).unwrap();
    let ext: BTreeSet<usize> = m[0].external().into_iter().collect();
    assert_eq!(e.internal_image(), ext);
}

#[test]
fn embedding_of_a_tree_is_the_whole_graph() {
    let mut rng = StdRng::seed_from_u64(8);
    let p = NetworkParams {
        cycle: 0.0,
        ..Default::default()
    };
    let tree = random_network(taxa(7), p, &mut rng);
    let e = embed_network(&tree).unwrap();
    assert_eq!(e.image().len(), e.graph.vertex_count());
    check_embedding(&tree);
}

#[test]
fn embedding_of_random_networks() {
    let mut rng = StdRng::seed_from_u64(6);
    for i in 0..80 {
        let n = 4 + i % 4;
        let net = random_network(taxa(n), NetworkParams::default(), &mut rng)
            .maximal_partial_resolution()
            .unwrap();
        check_embedding(&net);
    }
}

#[test]
fn embedding_ignores_the_choice_of_witness() {
    let mut rng = StdRng::seed_from_u64(12);
    for i in 0..40 {
        let n = 5 + i % 3;
        let net = random_network(taxa(n), NetworkParams::default(), &mut rng)
            .maximal_partial_resolution()
            .unwrap();
        let base = embed_network(&net).unwrap().vertex_map;
        let last = embed_network_with(&net, &mut |_, c| c.len() - 1).unwrap().vertex_map;
        let mid = embed_network_with(&net, &mut |_, c| c.len() / 2).unwrap().vertex_map;
        assert_eq!(base, last);
        assert_eq!(base, mid);
    }
}

#[test]
fn embedding_needs_resolution() {
    let t = taxa(5);
    let mut b = Network::builder(t);
    let r: Vec<usize> = (0..4).map(|_| b.add_vertex()).collect();
    for i in 0..4 {
        b.add_edge(r[i], r[(i + 1) % 4]);
    }
    for (v, x) in [(r[0], 0), (r[0], 1), (r[1], 2), (r[2], 3), (r[3], 4)] {
        let l = b.add_leaf(x);
        b.add_edge(v, l);
    }
    let net = b.build().unwrap();
    assert!(matches!(embed_network(&net), Err(Error::NotPartiallyResolved(_))));
}
