//! Language-level invariants of the acceptor transforms, checked against
//! exhaustive word sets and implementation-independent oracles.

mod common;

use num_bigint::BigUint;
use num_traits::One;
use rand::prelude::*;

use common::*;
use parikh_core::*;

#[test]
fn determinization_preserves_the_language() {
    let mut rng = rng(0xA1);
    for case in 0..50 {
        let nfa = random_nfa(&mut rng, 4, 2);
        let dfa = nfa.determinize();
        for len in 0..=6 {
            for w in all_words(&["a", "b"], len) {
                assert_eq!(
                    dfa.accepts(&w).unwrap(),
                    nfa.accepts(&w).unwrap(),
                    "case {case} on {w:?}"
                );
            }
        }
    }
}

#[test]
fn normal_form_agrees_with_a_fixpoint_oracle() {
    let mut rng = rng(0xA2);
    for case in 0..60 {
        let cfg = random_cfg(&mut rng);
        let nf = cfg.to_normal_form();
        for len in 0..=5 {
            for w in all_words(&["a", "b"], len) {
                let expected = oracle_cfg_accepts(&cfg, &w);
                assert_eq!(
                    nf.accepts(&w).unwrap(),
                    expected,
                    "case {case}: normal form on {w:?}"
                );
                assert_eq!(
                    cfg.accepts(&w).unwrap(),
                    expected,
                    "case {case}: chart on {w:?}"
                );
            }
        }
    }
}

#[test]
fn parikh_is_a_monoid_morphism() {
    let mut rng = rng(0xA3);
    for _ in 0..100 {
        let u: Word = (0..rng.gen_range(0..8))
            .map(|_| ["a", "b", "c"][rng.gen_range(0..3)].to_string())
            .collect();
        let v: Word = (0..rng.gen_range(0..8))
            .map(|_| ["a", "b", "c"][rng.gen_range(0..3)].to_string())
            .collect();
        let mut uv = u.clone();
        uv.extend(v.clone());
        assert_eq!(parikh(&uv), parikh(&u).plus(&parikh(&v)));
    }
}

#[test]
fn augmentation_preserves_counts_under_enumeration() {
    let mut rng = rng(0xA4);
    for case in 0..100 {
        let dfa = random_dfa(&mut rng, 4, 2);
        let p = random_parikh(&mut rng, dfa.alphabet(), 6);
        let direct = oracle_count_words(&p, |w| dfa.accepts(w).unwrap());
        let (augmented, p2) = dfa.augment_well_formed(&p);
        let fresh = augmented.alphabet().last().unwrap().clone();
        let suffixed = oracle_count_words(&p2, |w| {
            w.last() == Some(&fresh) && augmented.accepts(w).unwrap()
        });
        assert_eq!(direct, suffixed, "case {case} on {p}");
        assert_eq!(p2.count(&fresh), BigUint::one());
    }
}
