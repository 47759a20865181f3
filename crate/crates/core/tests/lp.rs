use num_traits::{One, Zero};
use proptest::prelude::*;
use vmc_core::lp::{check_2lp_eq_mincut, find_nonzero_vertex, is_feasible, lp_value, opt_lp, LpValue, Rational};
use vmc_core::separators::isolating_cut_size;
use vmc_core::testkit::{brute_force_min_multiway_cut, gen_random_graph, SplitMix64};
use vmc_core::{Graph, VertexSet};

fn sample(seed: u64, n: usize, p: f64) -> (Graph, VertexSet) {
    let mut rng = SplitMix64::new(seed);
    let g = gen_random_graph(&mut rng, n, p);
    let mut w = VertexSet::new(n);
    let size = 2 + rng.next_below(2) as usize;
    // mostly non-adjacent terminals, so that the LP is usually feasible
    for _ in 0..4 * n {
        if w.len() == size {
            break;
        }
        let v = rng.next_below(n as u64) as usize;
        if rng.chance(0.9) && w.iter().any(|x| g.has_edge(x, v)) {
            continue;
        }
        w.insert(v);
    }
    (g, w)
}

fn twice(x: &Rational) -> Rational {
    x * Rational::from_integer(2.into())
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(80) })]

    #[test]
    fn lp_properties(seed in any::<u64>(), n in 4usize..10, p in 0.15f64..0.5) {
        let (g, w) = sample(seed, n, p);
        let Ok(sol) = opt_lp(&g, &w) else {
            prop_assert!(g.edges().any(|(a, b)| w.contains(a) && w.contains(b)));
            return Ok(());
        };
        prop_assert!(twice(&sol.objective).is_integer());
        prop_assert!(sol.is_half_integral());
        prop_assert!(is_feasible(&g, &w, &sol.values));
        let total: Rational = sol.values.iter().sum();
        prop_assert_eq!(&total, &sol.objective);
        if let Some(mwc) = brute_force_min_multiway_cut(&g, &w, n) {
            prop_assert!(sol.objective <= Rational::from_integer(mwc.into()));
        }
        match find_nonzero_vertex(&g, &w) {
            Some(v) => {
                let raised = lp_value(&g.torso(&VertexSet::singleton(n, v)), &w);
                let base = LpValue::Finite(sol.objective.clone());
                match raised {
                    LpValue::Finite(x) => prop_assert!(twice(&(x - &sol.objective)) >= Rational::one()),
                    LpValue::Infeasible => prop_assert!(base < LpValue::Infeasible),
                }
            }
            None => {
                let sum: usize = w.iter().map(|x| isolating_cut_size(&g, &w, x).unwrap().unwrap()).sum();
                prop_assert_eq!(twice(&sol.objective), Rational::from_integer(sum.into()));
                prop_assert!(check_2lp_eq_mincut(&g, &w).unwrap());
            }
        }
    }
}

#[test]
fn isolated_terminals_cost_nothing() {
    let g = Graph::new(4);
    let w = VertexSet::from_iter(4, [0, 1, 2]);
    assert!(opt_lp(&g, &w).unwrap().objective.is_zero());
}
