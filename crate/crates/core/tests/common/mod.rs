//! Shared generators and independent oracles for the integration and
//! acceptance suites. Everything here is deliberately brute-force and
//! stays independent of the engine's counting paths.

#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use parikh_core::{
    Cfg, CostChain, CostFormula, Dfa, Nfa, ParikhVector, Symbol, WeightedMultigraph, Word,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

const LETTERS: [&str; 3] = ["a", "b", "c"];

/// Random partial DFA over ≤ `max_states` states and the first
/// `alphabet_size` letters of {a,b,c}.
pub fn random_dfa(rng: &mut ChaCha8Rng, max_states: usize, alphabet_size: usize) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    let states: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
    let alphabet: Vec<&str> = LETTERS[..alphabet_size].to_vec();
    let mut transitions = Vec::new();
    for q in 0..n {
        for a in &alphabet {
            if rng.gen_bool(0.75) {
                let to = rng.gen_range(0..n);
                transitions.push((format!("q{q}"), a.to_string(), format!("q{to}")));
            }
        }
    }
    let mut finals = Vec::new();
    for q in 0..n {
        if rng.gen_bool(0.4) {
            finals.push(format!("q{q}"));
        }
    }
    if finals.is_empty() && rng.gen_bool(0.8) {
        finals.push(format!("q{}", rng.gen_range(0..n)));
    }
    let state_refs: Vec<&str> = states.iter().map(|s| s.as_str()).collect();
    Dfa::from_parts(
        alphabet.iter().map(|s| s.to_string()).collect(),
        state_refs.iter().map(|s| s.to_string()).collect(),
        "q0",
        &finals,
        &transitions,
    )
    .unwrap()
}

pub fn random_nfa(rng: &mut ChaCha8Rng, max_states: usize, alphabet_size: usize) -> Nfa {
    let n = rng.gen_range(1..=max_states);
    let alphabet: Vec<&str> = LETTERS[..alphabet_size].to_vec();
    let mut transitions = Vec::new();
    for q in 0..n {
        for a in &alphabet {
            for to in 0..n {
                if rng.gen_bool(0.3) {
                    transitions.push((format!("q{q}"), a.to_string(), format!("q{to}")));
                }
            }
        }
    }
    let mut finals = Vec::new();
    for q in 0..n {
        if rng.gen_bool(0.4) {
            finals.push(format!("q{q}"));
        }
    }
    Nfa::from_parts(
        alphabet.iter().map(|s| s.to_string()).collect(),
        (0..n).map(|i| format!("q{i}")).collect(),
        "q0",
        &finals,
        &transitions,
    )
    .unwrap()
}

/// Random Parikh vector over `alphabet` with ‖p⃗‖ ≤ `max_norm`.
pub fn random_parikh(rng: &mut ChaCha8Rng, alphabet: &[String], max_norm: u64) -> ParikhVector {
    let mut p = ParikhVector::new();
    let mut budget = rng.gen_range(0..=max_norm);
    for letter in alphabet {
        if budget == 0 {
            break;
        }
        let take = rng.gen_range(0..=budget);
        p.set(letter.clone(), BigUint::from(take));
        budget -= take;
    }
    p
}

/// Enumerates every word with image exactly `p` and counts those accepted;
/// the base oracle for all counting methods.
pub fn oracle_count_words<F: FnMut(&[String]) -> bool>(p: &ParikhVector, mut accept: F) -> BigUint {
    let mut counts: Vec<(String, u64)> = p
        .iter()
        .map(|(l, c)| (l.clone(), c.to_u64().expect("oracle norm fits u64")))
        .collect();
    let total: u64 = counts.iter().map(|(_, c)| *c).sum();
    let mut word: Word = Vec::new();
    fn rec<F: FnMut(&[String]) -> bool>(
        counts: &mut Vec<(String, u64)>,
        word: &mut Word,
        left: u64,
        accept: &mut F,
    ) -> BigUint {
        if left == 0 {
            return if accept(word) {
                BigUint::one()
            } else {
                BigUint::zero()
            };
        }
        let mut total = BigUint::zero();
        for i in 0..counts.len() {
            if counts[i].1 == 0 {
                continue;
            }
            counts[i].1 -= 1;
            word.push(counts[i].0.clone());
            total += rec(counts, word, left - 1, accept);
            word.pop();
            counts[i].1 += 1;
        }
        total
    }
    rec(&mut counts, &mut word, total, &mut accept)
}

/// All words of the given length over the alphabet.
pub fn all_words(alphabet: &[&str], len: usize) -> Vec<Word> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for w in all_words(alphabet, len - 1) {
        for a in alphabet {
            let mut w2 = w.clone();
            w2.push(a.to_string());
            out.push(w2);
        }
    }
    out
}

/// Random connected Eulerian multigraph built by overlaying directed
/// cycles; at least one edge keeps weight 1 so the circuit-count division
/// is exact, and the expanded edge count stays within `max_expanded`.
pub fn random_eulerian_graph(rng: &mut ChaCha8Rng, max_expanded: u64) -> WeightedMultigraph {
    let n = rng.gen_range(1..=4usize);
    let cap = if n <= 2 {
        max_expanded.min(8)
    } else {
        max_expanded
    };
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges: Vec<(String, String, String, u64)> = Vec::new();
    let mut expanded = 0u64;
    let mut edge_id = 0usize;
    let cycles = rng.gen_range(1..=3usize);
    for _ in 0..cycles {
        let len = rng.gen_range(1..=n);
        let mut nodes: Vec<usize> = (0..n).collect();
        nodes.shuffle(rng);
        let cycle: Vec<usize> = nodes.into_iter().take(len).collect();
        let weight = if edges.is_empty() {
            1
        } else {
            rng.gen_range(1..=3u64)
        };
        if expanded + weight * len as u64 > cap {
            continue;
        }
        expanded += weight * len as u64;
        for i in 0..cycle.len() {
            let from = cycle[i];
            let to = cycle[(i + 1) % cycle.len()];
            edges.push((
                format!("e{edge_id}"),
                names[from].clone(),
                names[to].clone(),
                weight,
            ));
            edge_id += 1;
        }
    }
    let refs: Vec<(&str, &str, &str, u64)> = edges
        .iter()
        .map(|(id, s, t, w)| (id.as_str(), s.as_str(), t.as_str(), *w))
        .collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let g = WeightedMultigraph::new(&name_refs, &refs).unwrap();
    if g.is_eulerian_connected() && !g.edges().is_empty() {
        g
    } else {
        random_eulerian_graph(rng, max_expanded)
    }
}

/// Random valid cost chain. Non-target states are `q0..`, each has an edge
/// toward a lower-indexed state or the target (so the target is reached
/// almost surely). With `allow_zero_forward`, zero-cost edges may also run
/// between non-target states, but only index-increasing ones, keeping the
/// zero-cost part acyclic so the distribution oracle stays well-defined.
pub fn random_cost_chain(
    rng: &mut ChaCha8Rng,
    max_states: usize,
    max_cost: u64,
    allow_zero_forward: bool,
) -> CostChain {
    let n = rng.gen_range(1..=max_states);
    let mut states: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
    states.push("t".to_string());
    let mut edges: Vec<(String, u64, String, BigRational)> = Vec::new();
    for q in 0..n {
        let fan = rng.gen_range(1..=3usize);
        let weights: Vec<u64> = (0..fan).map(|_| rng.gen_range(1..=5)).collect();
        let total: u64 = weights.iter().sum();
        // first edge goes toward the target side: t or a lower index
        let mut targets: Vec<String> = Vec::new();
        let toward = if q == 0 || rng.gen_bool(0.5) {
            "t".to_string()
        } else {
            format!("q{}", rng.gen_range(0..q))
        };
        targets.push(toward);
        for _ in 1..fan {
            let pick = rng.gen_range(0..=n);
            targets.push(if pick == n {
                "t".to_string()
            } else {
                format!("q{pick}")
            });
        }
        for (i, target) in targets.iter().enumerate() {
            let cost = if target == "t" {
                // zero-cost edges into the target are always fine
                if rng.gen_bool(0.3) {
                    0
                } else {
                    rng.gen_range(1..=max_cost)
                }
            } else if allow_zero_forward
                && target[1..].parse::<usize>().unwrap() > q
                && rng.gen_bool(0.4)
            {
                0
            } else {
                rng.gen_range(1..=max_cost)
            };
            // merge duplicate (source, cost, target) keys by re-rolling cost
            let mut cost = cost;
            while edges
                .iter()
                .any(|(s, k, t, _)| s == &format!("q{q}") && *k == cost && t == target)
            {
                cost = rng.gen_range(1..=max_cost);
            }
            edges.push((
                format!("q{q}"),
                cost,
                target.clone(),
                BigRational::new(BigInt::from(weights[i]), BigInt::from(total)),
            ));
        }
    }
    edges.push(("t".to_string(), 0, "t".to_string(), BigRational::one()));
    let chain = CostChain::from_parts(states, "q0", "t", edges).unwrap();
    assert!(chain.is_valid(), "generator produced an invalid chain");
    chain
}

/// Random cost formula with constants ≤ `max_constant`.
pub fn random_formula(rng: &mut ChaCha8Rng, max_constant: u64, depth: usize) -> CostFormula {
    if depth == 0 || rng.gen_bool(0.4) {
        return CostFormula::le(rng.gen_range(0..=max_constant));
    }
    match rng.gen_range(0..3) {
        0 => random_formula(rng, max_constant, depth - 1).negate(),
        1 => random_formula(rng, max_constant, depth - 1).and(random_formula(
            rng,
            max_constant,
            depth - 1,
        )),
        _ => random_formula(rng, max_constant, depth - 1).or(random_formula(
            rng,
            max_constant,
            depth - 1,
        )),
    }
}

/// Exact distribution oracle `P(K = i)` for `i ≤ cmax`, by a cost-layered
/// sweep that processes states in index order; requires every zero-cost
/// edge between non-target states to be index-increasing (the generator
/// guarantees this).
pub fn oracle_cost_distribution(chain: &CostChain, cmax: u64) -> Vec<BigRational> {
    let n = chain.states().len();
    let cmax = cmax as usize;
    let mut mass = vec![vec![BigRational::zero(); cmax + 1]; n];
    let mut arrived = vec![BigRational::zero(); cmax + 1];
    if chain.initial() == chain.target() {
        arrived[0] = BigRational::one();
        return arrived;
    }
    mass[chain.initial()][0] = BigRational::one();
    for i in 0..=cmax {
        for q in 0..n {
            if q == chain.target() || mass[q][i].is_zero() {
                continue;
            }
            let current = mass[q][i].clone();
            for e in chain.edges() {
                if e.source != q {
                    continue;
                }
                let total = i + e.cost as usize;
                if total > cmax {
                    continue;
                }
                let add = &current * &e.prob;
                if e.target == chain.target() {
                    arrived[total] += add;
                } else {
                    assert!(
                        e.cost > 0 || e.target > q,
                        "oracle needs index-increasing zero-cost edges"
                    );
                    mass[e.target][total] += add;
                }
            }
        }
    }
    arrived
}

/// Fixpoint chart recognizer for arbitrary CFGs (any body length, ε and
/// unit cycles included); an implementation-independent membership oracle.
pub fn oracle_cfg_accepts(cfg: &Cfg, word: &[String]) -> bool {
    let n = word.len();
    let indices: Vec<Option<usize>> = word.iter().map(|l| cfg.terminal_index(l)).collect();
    if indices.iter().any(Option::is_none) {
        return false;
    }
    let indices: Vec<usize> = indices.into_iter().map(Option::unwrap).collect();
    let nts = cfg.nonterminals().len();
    // derives[nt][i][j] with spans word[i..j]
    let mut derives = vec![vec![vec![false; n + 1]; n + 1]; nts];
    loop {
        let mut changed = false;
        for p in cfg.productions() {
            for i in 0..=n {
                for j in i..=n {
                    if derives[p.head][i][j] {
                        continue;
                    }
                    if body_derives(&p.body, i, j, &indices, &derives) {
                        derives[p.head][i][j] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return derives[cfg.start()][0][n];
        }
    }
}

fn body_derives(
    body: &[Symbol],
    i: usize,
    j: usize,
    word: &[usize],
    derives: &[Vec<Vec<bool>>],
) -> bool {
    if body.is_empty() {
        return i == j;
    }
    let (first, rest) = body.split_first().unwrap();
    for split in i..=j {
        let head_ok = match *first {
            Symbol::Terminal(t) => split == i + 1 && i < j && word[i] == t,
            Symbol::Nonterminal(a) => derives[a][i][split],
        };
        if head_ok && body_derives(rest, split, j, word, derives) {
            return true;
        }
    }
    false
}

/// Random CFG over {a,b} with small bodies, for language-agreement suites.
pub fn random_cfg(rng: &mut ChaCha8Rng) -> Cfg {
    let nts = ["S", "A", "B"];
    let terminals = ["a", "b"];
    let mut productions: Vec<(String, Vec<String>)> = Vec::new();
    for head in &nts {
        let count = rng.gen_range(1..=2usize);
        for _ in 0..count {
            let len = rng.gen_range(0..=3usize);
            let body: Vec<String> = (0..len)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        terminals[rng.gen_range(0..2)].to_string()
                    } else {
                        nts[rng.gen_range(0..3)].to_string()
                    }
                })
                .collect();
            productions.push((head.to_string(), body));
        }
    }
    Cfg::from_parts(
        nts.iter().map(|s| s.to_string()).collect(),
        terminals.iter().map(|s| s.to_string()).collect(),
        "S",
        &productions,
    )
    .unwrap()
}

/// `(u,v)` entry of the `n`-th power of the weighted adjacency matrix.
pub fn matrix_power_paths(g: &WeightedMultigraph, from: &str, to: &str, n: u64) -> BigUint {
    let size = g.nodes().len();
    let mut adj = vec![vec![BigUint::zero(); size]; size];
    for e in g.edges() {
        adj[e.source][e.target] += &e.weight;
    }
    let mut power: Vec<Vec<BigUint>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    if i == j {
                        BigUint::one()
                    } else {
                        BigUint::zero()
                    }
                })
                .collect()
        })
        .collect();
    for _ in 0..n {
        let mut next = vec![vec![BigUint::zero(); size]; size];
        for i in 0..size {
            for k in 0..size {
                if power[i][k].is_zero() {
                    continue;
                }
                for j in 0..size {
                    if !adj[k][j].is_zero() {
                        next[i][j] += &power[i][k] * &adj[k][j];
                    }
                }
            }
        }
        power = next;
    }
    let u = g.node_index(from).unwrap();
    let v = g.node_index(to).unwrap();
    power[u][v].clone()
}

/// Multinomial ‖p⃗‖! / ∏ p⃗(a)!, the trivial upper bound on any count.
pub fn multinomial_bound(p: &ParikhVector) -> BigUint {
    let mut numerator = parikh_core::factorial(&p.norm());
    for (_, c) in p.iter() {
        let f = parikh_core::factorial(c);
        numerator /= f;
    }
    numerator
}
