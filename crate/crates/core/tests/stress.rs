//! Heavier multi-seed agreement sweeps; run with `cargo test -- --ignored`.

mod common;
use common::*;
use parikh_core::*;

#[test]
#[ignore = "long-running sweep; the acceptance suite covers the stated sizes"]
fn stress_methods() {
    let guards = Guards::default();
    for seed in [7u64, 99, 12345] {
        let mut r = rng(seed);
        for case in 0..500 {
            let dfa = random_dfa(&mut r, 5, 3);
            let p = random_parikh(&mut r, dfa.alphabet(), 6);
            let best = count_dfa(&dfa, &p, DfaMethod::Best, &guards).unwrap();
            let dp = count_dfa(&dfa, &p, DfaMethod::Dp, &guards).unwrap();
            let en = count_dfa(&dfa, &p, DfaMethod::Enumerate, &guards).unwrap();
            assert_eq!(best, dp, "seed {seed} case {case}");
            assert_eq!(best, en, "seed {seed} case {case}");
        }
        for case in 0..300 {
            let g = random_eulerian_graph(&mut r, 12);
            assert_eq!(
                g.euler_count().unwrap(),
                g.brute_euler_count().unwrap(),
                "seed {seed} case {case}"
            );
        }
        for case in 0..60 {
            let chain = random_cost_chain(&mut r, 4, 7, true);
            let phi = random_formula(&mut r, 25, 3);
            let a = cost_prob(&chain, &phi, CostMethod::ParikhBest, &guards).unwrap();
            let b = cost_prob(&chain, &phi, CostMethod::CostDp, &guards).unwrap();
            assert_eq!(a, b, "seed {seed} case {case}");
        }
    }
}
