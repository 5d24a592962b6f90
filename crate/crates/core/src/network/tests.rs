use super::*;

fn taxa(n: usize) -> Arc<TaxaSet> {
    Arc::new(TaxaSet::numbered(n).unwrap())
}

fn sp(t: &TaxaSet, s: &str) -> Split {
    Split::compact(t, s).unwrap()
}

/// Two 4-cycles joined by a cut-edge: (a0 a1 a2 a3) carries leaves 1, 2, 5
/// and the bridge at a3; (b0 b1 b2 b3) carries the bridge at b0 and leaves
/// 3, 4, 6.
fn two_cycles_bridge() -> Network {
    let t = taxa(6);
    let mut b = Network::builder(t);
    let a: Vec<usize> = (0..4).map(|_| b.add_vertex()).collect();
    let c: Vec<usize> = (0..4).map(|_| b.add_vertex()).collect();
    for i in 0..4 {
        b.add_edge(a[i], a[(i + 1) % 4]);
        b.add_edge(c[i], c[(i + 1) % 4]);
    }
    for (v, x) in [(a[0], 0), (a[1], 1), (a[2], 4), (c[1], 2), (c[2], 3), (c[3], 5)] {
        let l = b.add_leaf(x);
        b.add_edge(v, l);
    }
    b.add_edge(a[3], c[0]);
    b.build().unwrap()
}

#[test]
fn simple_four_cycle() {
    let t = taxa(4);
    let net = Network::cycle_with_leaves(t.clone(), &[0, 1, 2, 3]).unwrap();
    let c = net.classify();
    assert!(c.one_nested && c.level1 && c.simple && c.max_partially_resolved);
    let expect = SplitSystem::compact(&t, &["1", "2", "3", "4", "12|34", "23|14"]).unwrap();
    assert_eq!(net.splits().unwrap(), expect);
    let m = net.m_splits(0).unwrap();
    assert_eq!(m.len(), 4);
    assert!(m.iter().all(Split::is_trivial));
}

#[test]
fn star_classification() {
    let net = Network::star(taxa(4)).unwrap();
    let c = net.classify();
    assert_eq!(
        c,
        Classification {
            one_nested: true,
            level1: false,
            simple: true,
            max_partially_resolved: true,
        }
    );
    assert_eq!(net.splits().unwrap(), SplitSystem::trivial(taxa(4)));
}

#[test]
fn shared_edge_is_not_one_nested() {
    let t = taxa(6);
    let mut b = Network::builder(t);
    let v: Vec<usize> = (0..6).map(|_| b.add_vertex()).collect();
    // square v0 v1 v2 v3 plus the path v1 v4 v5 v2
    for (x, y) in [(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 5), (5, 2)] {
        b.add_edge(v[x], v[y]);
    }
    for (i, &w) in v.iter().enumerate() {
        let l = b.add_leaf(i);
        b.add_edge(w, l);
    }
    let net = b.build().unwrap();
    assert!(!net.is_one_nested());
    assert_eq!(net.splits(), Err(Error::NotOneNested));
}

#[test]
fn rejects_bad_graphs() {
    let t = taxa(3);
    // triangle with pendant leaves
    let mut b = Network::builder(t.clone());
    let v: Vec<usize> = (0..3).map(|_| b.add_vertex()).collect();
    for i in 0..3 {
        b.add_edge(v[i], v[(i + 1) % 3]);
        let l = b.add_leaf(i);
        b.add_edge(v[i], l);
    }
    assert!(matches!(b.build(), Err(Error::Network(m)) if m.contains("length 3")));

    // degree-2 vertex
    let mut b = Network::builder(t.clone());
    let h = b.add_vertex();
    let m = b.add_vertex();
    let l0 = b.add_leaf(0);
    let l1 = b.add_leaf(1);
    let l2 = b.add_leaf(2);
    b.add_edge(h, l0);
    b.add_edge(h, l1);
    b.add_edge(h, m);
    b.add_edge(m, l2);
    assert!(b.build().is_err());

    // missing taxon
    let mut b = Network::builder(t);
    let h = b.add_vertex();
    for x in 0..2 {
        let l = b.add_leaf(x);
        b.add_edge(h, l);
    }
    assert!(b.build().is_err());
}

#[test]
fn multiplicities() {
    let net = two_cycles_bridge();
    let t = net.taxa().clone();
    let c = net.classify();
    assert!(c.level1 && !c.simple && c.max_partially_resolved);
    // leaf on a cycle vertex: the leaf edge and the cycle pair
    assert_eq!(net.split_multiplicity(&sp(&t, "1")).unwrap(), 2);
    // the cut-edge between the cycles: edge + one pair on each side
    assert_eq!(net.split_multiplicity(&sp(&t, "125|346")).unwrap(), 3);
    // adjacent pair on a cycle
    assert_eq!(net.split_multiplicity(&sp(&t, "12|3456")).unwrap(), 1);
    assert_eq!(net.split_multiplicity(&sp(&t, "13|2456")).unwrap(), 0);
}

#[test]
fn interior_tree_edge_has_multiplicity_one() {
    // caterpillar ((1,2),3,(4,5))
    let t = taxa(5);
    let mut b = Network::builder(t.clone());
    let u = b.add_vertex();
    let w = b.add_vertex();
    let v = b.add_vertex();
    b.add_edge(u, w);
    b.add_edge(w, v);
    for (p, x) in [(u, 0), (u, 1), (w, 2), (v, 3), (v, 4)] {
        let l = b.add_leaf(x);
        b.add_edge(p, l);
    }
    let net = b.build().unwrap();
    assert_eq!(net.split_multiplicity(&sp(&t, "12|345")).unwrap(), 1);
    let expect = SplitSystem::compact(&t, &["1", "2", "3", "4", "5", "12|345", "123|45"]).unwrap();
    assert_eq!(net.splits().unwrap(), expect);
}

#[test]
fn resolve_and_collapse() {
    let net = two_cycles_bridge();
    let bridge = net
        .bridges()
        .iter()
        .copied()
        .find(|&(u, v)| !net.is_leaf(u) && !net.is_leaf(v))
        .unwrap();
    let collapsed = net
        .apply_move(Move::R2Inverse {
            cycle_vertex: bridge.0,
            other: bridge.1,
        })
        .unwrap();
    assert!(collapsed.classify().one_nested);
    assert!(!collapsed.classify().max_partially_resolved);
    assert_eq!(collapsed.splits().unwrap(), net.splits().unwrap());
    let shared = (0..collapsed.vertex_count())
        .find(|&v| collapsed.cycles_at(v).len() == 2)
        .unwrap();
    let c = collapsed.cycles_at(shared)[1];
    let back = collapsed
        .apply_move(Move::R2 {
            vertex: shared,
            cycle: c,
        })
        .unwrap();
    assert!(back.is_isomorphic(&net).unwrap());
    assert!(collapsed
        .maximal_partial_resolution()
        .unwrap()
        .is_isomorphic(&net)
        .unwrap());
}

#[test]
fn r1_then_inverse_is_identity() {
    // 4-cycle where one vertex carries two leaves directly
    let t = taxa(5);
    let mut b = Network::builder(t.clone());
    let r: Vec<usize> = (0..4).map(|_| b.add_vertex()).collect();
    for i in 0..4 {
        b.add_edge(r[i], r[(i + 1) % 4]);
    }
    for (v, x) in [(r[0], 0), (r[0], 1), (r[1], 2), (r[2], 3), (r[3], 4)] {
        let l = b.add_leaf(x);
        b.add_edge(v, l);
    }
    let net = b.build().unwrap();
    assert!(!net.classify().max_partially_resolved);
    let v = r[0];
    let resolved = net.apply_move(Move::R1 { vertex: v, cycle: 0 }).unwrap();
    assert!(resolved.classify().max_partially_resolved);
    assert_eq!(resolved.splits().unwrap(), net.splits().unwrap());
    let fresh = resolved.vertex_count() - 1;
    let back = resolved
        .apply_move(Move::R1Inverse {
            cycle_vertex: v,
            other: fresh,
        })
        .unwrap();
    assert!(back.is_isomorphic(&net).unwrap());
    assert!(matches!(
        net.apply_move(Move::R1 { vertex: r[1], cycle: 0 }),
        Err(Error::MoveNotApplicable(_))
    ));
}

#[test]
fn planar_ordering_displays_all_splits() {
    let net = two_cycles_bridge();
    let o = net.planar_ordering().unwrap();
    assert!(o.displays(&net.splits().unwrap()));
}

#[test]
fn equivalence() {
    let t = taxa(4);
    let a = Network::cycle_with_leaves(t.clone(), &[0, 1, 2, 3]).unwrap();
    let b = Network::cycle_with_leaves(t.clone(), &[0, 2, 1, 3]).unwrap();
    assert!(a.equivalent(&a).unwrap());
    assert!(!a.equivalent(&b).unwrap());
    assert!(!a.is_isomorphic(&b).unwrap());
    let c = Network::cycle_with_leaves(t, &[3, 2, 1, 0]).unwrap();
    assert!(a.is_isomorphic(&c).unwrap());
}
