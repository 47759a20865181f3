use vmc_core::driver::{solve_compression, solve_vmc, SolveOptions};
use vmc_core::shadow::CoverMode;
use vmc_core::solver::{SolverKind, Verdict};
use vmc_core::instance::is_multicut;
use vmc_core::testkit::{brute_force_compression, brute_force_vmc, gen_compression_instance, gen_random_instance};

#[test]
fn compression_agrees_with_brute_force() {
    let opts = SolveOptions::default();
    for seed in 0..120u64 {
        let n = 5 + (seed % 6) as usize;
        let k = (seed % 4) as usize;
        let p = [0.15, 0.3, 0.5][(seed / 4 % 3) as usize];
        let inst = gen_compression_instance(seed, n, p, 3, 1 + (seed % 3) as usize, k);
        let expected = brute_force_compression(&inst).result;
        let (got, _) = solve_compression(&inst, &opts).unwrap();
        assert_eq!(got.verdict, expected.verdict, "seed {seed}: {inst:?}");
        if let Some(w) = got.witness {
            assert!(inst.is_solution(&w.vertices));
        }
    }
}

#[test]
fn vmc_agrees_with_brute_force() {
    let opts = SolveOptions::default();
    for seed in 0..120u64 {
        let n = 4 + (seed % 9) as usize;
        let k = (seed % 4) as usize;
        let p = [0.15, 0.3, 0.5][(seed / 4 % 3) as usize];
        let inst = gen_random_instance(seed, n, p, 1 + (seed % 4) as usize, k);
        let expected = brute_force_vmc(&inst);
        let (got, _) = solve_vmc(&inst, &opts).unwrap();
        assert_eq!(got.verdict, expected.verdict, "seed {seed}");
        if let Some(w) = got.witness {
            assert!(w.len() <= k);
            assert!(is_multicut(inst.graph(), inst.pairs(), &w.vertices));
        }
    }
}

#[test]
fn vmc_is_monotone_in_k_and_order_independent() {
    let opts = SolveOptions::default();
    for seed in 500..560u64 {
        let inst = gen_random_instance(seed, 9, 0.3, 3, 0);
        let verdicts: Vec<bool> = (0..4)
            .map(|k| solve_vmc(&inst.with_k(k), &opts).unwrap().0.is_yes())
            .collect();
        assert!(verdicts.windows(2).all(|w| !w[0] || w[1]), "seed {seed}: {verdicts:?}");
        let reversed = SolveOptions {
            order: Some((0..9).rev().collect()),
            ..SolveOptions::default()
        };
        let k2 = inst.with_k(2);
        assert_eq!(solve_vmc(&k2, &reversed).unwrap().0.verdict, solve_vmc(&k2, &opts).unwrap().0.verdict);
    }
}

#[test]
fn other_modes_agree() {
    let randomized = SolveOptions {
        mode: CoverMode::Randomized { seed: 3, trials: None },
        ..SolveOptions::default()
    };
    let exact = SolveOptions {
        solver: SolverKind::Exact,
        ..SolveOptions::default()
    };
    for seed in 0..60u64 {
        let k = 1 + (seed % 2) as usize;
        let inst = gen_compression_instance(seed, 8, 0.3, 3, 2, k);
        let expected = brute_force_compression(&inst).result.verdict;
        assert_eq!(solve_compression(&inst, &exact).unwrap().0.verdict, expected, "seed {seed}");
        // randomized mode may miss a yes, never invent one
        let r = solve_compression(&inst, &randomized).unwrap().0;
        assert!(!r.is_yes() || expected == Verdict::Yes);
    }
}
