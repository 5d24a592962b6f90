//! The fast algorithms against the brute-force references.

use std::sync::Arc;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use splitnest::closure::{i_closure, int_closure};
use splitnest::oracle::{
    brute_circular, brute_min_cuts, brute_multiplicity, enumerate_1nested, naive_closure,
};
use splitnest::random::{random_circular, random_network, random_splits, NetworkParams};
use splitnest::synthesis::{is_circular, minimal_1nested, synthesize};
use splitnest::{Split, SplitSystem, TaxaSet};

fn taxa(n: usize) -> Arc<TaxaSet> {
    Arc::new(TaxaSet::numbered(n).unwrap())
}

/// Every non-trivial split on five taxa, as a bit mask over the 10 of them.
#[test]
fn circularity_exhaustive_on_five_taxa() {
    let t = taxa(5);
    let all: Vec<Split> = (1u32..16)
        .map(|m| Split::from_side(5, (1..5).filter(|x| m & (1 << (x - 1)) != 0)).unwrap())
        .filter(|s| !s.is_trivial())
        .collect();
    assert_eq!(all.len(), 10);
    let mut circular = 0;
    for mask in 0u32..(1 << all.len()) {
        let sys = SplitSystem::new(
            t.clone(),
            all.iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, s)| s.clone()),
        )
        .unwrap();
        let fast = is_circular(&sys);
        let slow = brute_circular(&sys).unwrap();
        assert_eq!(fast.is_some(), slow.is_some(), "{sys:?}");
        if let Some(o) = fast {
            assert!(o.displays(&sys));
            circular += 1;
        }
    }
    assert!(circular > 12);
}

#[test]
fn minimality_against_enumeration() {
    let mut rng = StdRng::seed_from_u64(11);
    for n in 4..=5 {
        let t = taxa(n);
        let nets = enumerate_1nested(t.clone()).unwrap();
        let systems: Vec<SplitSystem> = nets.iter().map(|m| m.splits().unwrap()).collect();
        for _ in 0..60 {
            let (sys, _) = random_circular(t.clone(), 1 + n / 2, false, &mut rng);
            let best = systems
                .iter()
                .filter(|s| sys.is_subset(s))
                .map(SplitSystem::len)
                .min()
                .unwrap();
            let net = minimal_1nested(&sys).unwrap();
            let got = net.splits().unwrap();
            assert!(sys.is_subset(&got));
            assert_eq!(got.len(), best, "{sys:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn circularity_matches_brute_force(n in 4usize..9, count in 1usize..8, seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sys = random_splits(taxa(n), count, &mut rng);
        let fast = is_circular(&sys);
        prop_assert_eq!(fast.is_some(), brute_circular(&sys).unwrap().is_some());
        if let Some(o) = fast {
            prop_assert!(o.displays(&sys));
        }
    }

    #[test]
    fn closures_match_naive(n in 3usize..8, count in 1usize..7, seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sys = random_splits(taxa(n), count, &mut rng);
        prop_assert_eq!(int_closure(&sys).unwrap(), naive_closure(&sys, false));
        prop_assert_eq!(i_closure(&sys).unwrap(), naive_closure(&sys, true));
    }

    #[test]
    fn network_splits_match_cut_enumeration(n in 3usize..10, collapse in 0.0f64..0.7, seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let p = NetworkParams { collapse, ..Default::default() };
        let net = random_network(taxa(n), p, &mut rng);
        let splits = net.splits().unwrap();
        prop_assert_eq!(&splits, &brute_min_cuts(&net));
        for s in splits.iter() {
            prop_assert_eq!(net.split_multiplicity(s).unwrap(), brute_multiplicity(&net, s));
        }
    }

    #[test]
    fn block_cycles_equal_i_closure(n in 4usize..12, count in 2usize..10, seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (sys, _) = random_circular(taxa(n), count, true, &mut rng);
        let syn = synthesize(&sys).unwrap();
        for bc in &syn.cycles {
            prop_assert_eq!(bc.closure(), i_closure(&bc.component).unwrap());
        }
        let got = syn.network.splits().unwrap();
        prop_assert!(sys.is_subset(&got));
        prop_assert_eq!(got, i_closure(&sys).unwrap());
    }
}
