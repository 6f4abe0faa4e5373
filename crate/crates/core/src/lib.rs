//! Exact counting of words by Parikh image in finite automata and
//! grammars, built on the circuit-counting route: flows over a well-formed
//! augmentation, spanning-tree determinants and Eulerian-circuit counts.
//! On top of the engine sit exact cost Markov chain analyses
//! (probabilities, threshold decisions, bit extraction, quantiles,
//! expectations), reduction gadget generators, and compressed-membership
//! algorithms for unary alphabets.
//!
//! All counting and probability arithmetic is arbitrary-precision and
//! exact; every value is immutable after construction and every operation
//! is pure, so the whole API is safe to drive from multiple threads.

pub mod automata;
pub mod costchain;
pub mod counting;
pub mod error;
pub mod guards;
pub mod multigraph;
pub mod reductions;
pub mod unary;

pub use automata::{
    parikh, word_of_chars, Acceptor, Cfg, Dfa, Letter, Nfa, ParikhVector, Production, Symbol,
    Transition, Word,
};
pub use costchain::{
    bitcost, cost_decide, cost_prob, cost_prob_parallel, count_chain_paths, display_rational,
    expected_cost, quantile, rational_bit, CostChain, CostEdge, CostFormula, CostMethod,
    Probability,
};
pub use counting::{
    bitp, count_acceptor, count_cfg, count_dfa, count_dfa_parallel, count_nfa, enumerate_flows,
    flow_graph, pic, DfaMethod, FlowAssignment, NfaMethod,
};
pub use error::{Error, Result};
pub use guards::Guards;
pub use multigraph::{
    bareiss_determinant, binomial, factorial, MultiEdge, WeightedMultigraph, BRUTE_EULER_EDGE_CAP,
};
pub use reductions::{
    add_one_path, gen_3sat, gen_subsetsum_cfg, graph_to_dfa, matpow_entry_gadget,
    posmat_to_multigraph, posmatpow_decide, posmatpow_gadget, unweight, CnfFormula, Literal,
    MatPowInstance, PosMatPowGadget,
};
pub use unary::{
    bounded_reach, lasso_decompose, unary_cfg_member, unary_dfa_member, unary_member,
    unary_nfa_member, unary_pic, LassoShape, UnaryNfaMethod,
};
