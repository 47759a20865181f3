use std::ops::ControlFlow;

use vmc_core::bipedal::{
    check_region_invariants, default_depth_cap, is_bipedal, make_bipedal, make_bipedal_one, visit_branching, Bipedal,
    BranchConfig,
};
use vmc_core::testkit::{brute_force_compression, gen_compression_instance};

fn config() -> BranchConfig {
    BranchConfig {
        depth_cap: None,
        check_invariants: true,
        record_tree: false,
    }
}

#[test]
fn outputs_are_bipedal_and_invariants_hold() {
    for seed in 0..150u64 {
        let k = 1 + (seed % 3) as usize;
        let n = 6 + (seed % 6) as usize;
        let p = [0.15, 0.3, 0.5][(seed / 3 % 3) as usize];
        let inst = gen_compression_instance(seed, n, p, 4, 2 + (seed % (k as u64 + 1)) as usize, k);
        let mut emitted = Vec::new();
        let (stats, _) = visit_branching(&inst, &config(), &mut |node| {
            emitted.push(node.instance);
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(stats.region_violations, 0, "seed {seed}");
        assert_eq!(stats.identity_violations, 0, "seed {seed}");
        assert!(stats.max_depth <= default_depth_cap(k));
        for e in &emitted {
            let report = check_region_invariants(e.graph(), e.w_set());
            assert!(!report.applicable || report.holds(), "seed {seed}: {report:?}");
            if let Bipedal::Instance(b) = make_bipedal_one(e) {
                assert!(is_bipedal(b.graph(), b.w_set()));
            }
        }
    }
}

#[test]
fn bipedal_family_preserves_answers() {
    for seed in 200..600u64 {
        let k = 1 + (seed % 3) as usize;
        let inst = gen_compression_instance(seed, 8, 0.3, 3, 2 + (seed % 2) as usize, k);
        let expected = brute_force_compression(&inst);
        let family = make_bipedal(&inst).unwrap();
        let any_yes = family.iter().any(|b| brute_force_compression(b).result.is_yes());
        // no-instances stay no; a minimum shadowless solution survives somewhere
        if !expected.result.is_yes() {
            assert!(!any_yes, "seed {seed}");
        }
        let least = expected.result.witness.as_ref().map(|w| w.len());
        if expected.shadowless.as_ref().map(|w| w.len()) == least && least.is_some() {
            assert!(any_yes, "seed {seed}");
        }
    }
}
