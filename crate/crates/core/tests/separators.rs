use proptest::prelude::*;
use vmc_core::separators::{enumerate_important_separators, hitting_set_for_important_separators, is_important_separator};
use vmc_core::testkit::{brute_force_important_separators, gen_random_graph, SplitMix64};
use vmc_core::VertexSet;

fn sample(seed: u64, n: usize, p: f64) -> (vmc_core::Graph, VertexSet, VertexSet) {
    let mut rng = SplitMix64::new(seed);
    let g = gen_random_graph(&mut rng, n, p);
    let s = VertexSet::singleton(n, 0);
    let mut t = VertexSet::new(n);
    t.insert(n - 1);
    if rng.chance(0.5) {
        t.insert(n - 2);
    }
    (g, s, t)
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(120) })]

    #[test]
    fn enumeration_matches_definition(seed in any::<u64>(), n in 4usize..10, k in 0usize..4, p in 0.15f64..0.6) {
        let (g, s, t) = sample(seed, n, p);
        let got: Vec<VertexSet> = enumerate_important_separators(&g, &s, &t, k)
            .unwrap()
            .into_iter()
            .map(|sep| sep.cut)
            .collect();
        prop_assert_eq!(&got, &brute_force_important_separators(&g, &s, &t, k));
        prop_assert!(got.len() <= 4usize.pow(k as u32));
        for x in &got {
            prop_assert!(is_important_separator(&g, &s, &t, x));
        }
    }

    #[test]
    fn hitting_set_hits_everything(seed in any::<u64>(), n in 4usize..10, k in 1usize..4, p in 0.15f64..0.6) {
        let (g, s, t) = sample(seed, n, p);
        let seps = enumerate_important_separators(&g, &s, &t, k).unwrap();
        // avoid one vertex of the first separator, if that leaves something to hit with
        let mut y = VertexSet::new(n);
        if let Some(first) = seps.first() {
            if first.cut.len() > 1 {
                y.insert(first.cut.first().unwrap());
            }
        }
        match hitting_set_for_important_separators(&g, &s, &t, k, &y) {
            Ok(h) => {
                prop_assert!(h.len() <= k);
                prop_assert!(h.is_disjoint(&y));
                for sep in &seps {
                    prop_assert!(!sep.cut.is_disjoint(&h), "{:?} missed by {:?}", sep.cut, h);
                }
            }
            Err(_) => prop_assert!(seps.iter().any(|sep| sep.cut.is_subset(&y))),
        }
    }
}
