//! Unary-alphabet algorithms: compressed DFA membership through the lasso
//! shape, NFA membership through arithmetic progressions, CFG membership
//! through a derivable-length DP, and the unary comparison decision.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::automata::{Acceptor, Cfg, Dfa, Nfa, Symbol};
use crate::error::{Error, Result};
use crate::guards::Guards;

/// Membership method for unary NFA.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryNfaMethod {
    /// Arithmetic-progression search; polynomial in the automaton.
    Sawa,
    /// Boolean adjacency-matrix powering; the oracle route.
    MatPow,
}

/// The unique run shape of a unary DFA: positions `0..tail` form the tail,
/// `tail..tail+period` the cycle. An incomplete run is modeled as a tail
/// ending in an implicit non-accepting dead cycle of period 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LassoShape {
    pub tail: usize,
    pub period: usize,
    pub accepting: Vec<bool>,
}

impl LassoShape {
    /// Does the chain accept `a^n`?
    pub fn accepts_length(&self, n: &BigUint) -> bool {
        let tail = BigUint::from(self.tail);
        let position = if *n < tail {
            n.to_usize().unwrap()
        } else {
            let offset = (n - &tail) % BigUint::from(self.period);
            self.tail + offset.to_usize().unwrap()
        };
        self.accepting.get(position).copied().unwrap_or(false)
    }
}

fn require_unary<'a>(alphabet: &'a [String], what: &str) -> Result<&'a str> {
    if alphabet.len() != 1 {
        return Err(Error::input(format!(
            "{what} requires a unary alphabet, got {} letters",
            alphabet.len()
        )));
    }
    Ok(&alphabet[0])
}

/// Tail and period of the unique run from the initial state; unreachable
/// states are discarded.
pub fn lasso_decompose(dfa: &Dfa) -> Result<LassoShape> {
    require_unary(dfa.alphabet(), "lasso decomposition")?;
    let letter = 0;
    let mut position: HashMap<usize, usize> = HashMap::new();
    let mut order: Vec<usize> = Vec::new();
    let mut at = dfa.initial();
    loop {
        if let Some(&seen) = position.get(&at) {
            let tail = seen;
            let period = order.len() - seen;
            let accepting = order.iter().map(|q| dfa.finals().contains(q)).collect();
            return Ok(LassoShape {
                tail,
                period,
                accepting,
            });
        }
        position.insert(at, order.len());
        order.push(at);
        match dfa.step(at, letter) {
            Some(next) => at = next,
            None => {
                // implicit dead state: everything visited is tail
                let mut accepting: Vec<bool> =
                    order.iter().map(|q| dfa.finals().contains(q)).collect();
                accepting.push(false);
                return Ok(LassoShape {
                    tail: order.len(),
                    period: 1,
                    accepting,
                });
            }
        }
    }
}

/// `a^n ∈ L(dfa)` with `n` of arbitrary magnitude.
pub fn unary_dfa_member(dfa: &Dfa, n: &BigUint) -> Result<bool> {
    Ok(lasso_decompose(dfa)?.accepts_length(n))
}

/// Is there a run of length exactly `c` from `p1` to `p2`? Layered
/// reachability over `Q × {0..c}`; guarded at `c ≤ m² + m`, the range the
/// progression search needs.
pub fn bounded_reach(nfa: &Nfa, p1: usize, p2: usize, c: u64) -> Result<bool> {
    let m = nfa.states().len() as u64;
    if c > m * m + m {
        return Err(Error::size(format!(
            "bounded_reach limited to c ≤ m²+m = {}, got {c}",
            m * m + m
        )));
    }
    require_unary(nfa.alphabet(), "bounded reachability")?;
    let mut layer = vec![false; nfa.states().len()];
    layer[p1] = true;
    for _ in 0..c {
        let mut next = vec![false; nfa.states().len()];
        for (q, &active) in layer.iter().enumerate() {
            if active {
                for &to in nfa.successors(q, 0) {
                    next[to] = true;
                }
            }
        }
        layer = next;
    }
    Ok(layer[p2])
}

/// `a^n ∈ L(nfa)`.
///
/// The progression route: for `n ≥ m²` accept iff there are `q`, `q_f ∈ F`,
/// `b ∈ {1..m}` and `a ∈ {m²−b−1, …, m²−2}` with `n ∈ a + bℕ` and runs
/// `q₀ →^{m−1} q →^b q →^{a−(m−1)} q_f`; smaller `n` by direct layered
/// reachability.
pub fn unary_nfa_member(nfa: &Nfa, n: &BigUint, method: UnaryNfaMethod) -> Result<bool> {
    require_unary(nfa.alphabet(), "unary NFA membership")?;
    match method {
        UnaryNfaMethod::MatPow => Ok(unary_nfa_member_matpow(nfa, n)),
        UnaryNfaMethod::Sawa => unary_nfa_member_sawa(nfa, n),
    }
}

fn unary_nfa_member_sawa(nfa: &Nfa, n: &BigUint) -> Result<bool> {
    let m = nfa.states().len();
    if m <= 1 {
        if n.is_zero() {
            return Ok(nfa.finals().contains(&nfa.initial()));
        }
        let has_loop = nfa.successors(nfa.initial(), 0).contains(&nfa.initial());
        return Ok(has_loop && nfa.finals().contains(&nfa.initial()));
    }
    let m_sq = (m * m) as u64;
    if *n < BigUint::from(m_sq) {
        let small = n.to_u64().unwrap();
        for &f in nfa.finals() {
            if bounded_reach(nfa, nfa.initial(), f, small)? {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    for q in 0..m {
        for &qf in nfa.finals() {
            for b in 1..=m as u64 {
                for a in m_sq.saturating_sub(b + 1)..=m_sq - 2 {
                    if (n % b) != BigUint::from(a % b) {
                        continue;
                    }
                    if bounded_reach(nfa, nfa.initial(), q, m as u64 - 1)?
                        && bounded_reach(nfa, q, q, b)?
                        && bounded_reach(nfa, q, qf, a - (m as u64 - 1))?
                    {
                        return Ok(true);
                    }
                }
            }
        }
    }
    Ok(false)
}

#[allow(clippy::needless_range_loop)]
fn unary_nfa_member_matpow(nfa: &Nfa, n: &BigUint) -> bool {
    let m = nfa.states().len();
    let mut step = vec![vec![false; m]; m];
    for q in 0..m {
        for &to in nfa.successors(q, 0) {
            step[q][to] = true;
        }
    }
    let mut result: Vec<Vec<bool>> = (0..m).map(|i| (0..m).map(|j| i == j).collect()).collect();
    let mul = |x: &Vec<Vec<bool>>, y: &Vec<Vec<bool>>| -> Vec<Vec<bool>> {
        let mut out = vec![vec![false; m]; m];
        for i in 0..m {
            for k in 0..m {
                if x[i][k] {
                    for j in 0..m {
                        if y[k][j] {
                            out[i][j] = true;
                        }
                    }
                }
            }
        }
        out
    };
    let mut base = step;
    let bits = n.bits();
    for bit in 0..bits {
        if n.bit(bit) {
            result = mul(&result, &base);
        }
        if bit + 1 < bits {
            base = mul(&base, &base);
        }
    }
    nfa.finals().iter().any(|&f| result[nfa.initial()][f])
}

/// `a^n ∈ L(cfg)` through a derivable-length DP over the normal form;
/// guarded at unary scale.
pub fn unary_cfg_member(cfg: &Cfg, n: &BigUint, guards: &Guards) -> Result<bool> {
    require_unary(cfg.terminals(), "unary CFG membership")?;
    if *n > BigUint::from(guards.unary_cfg_cap) {
        return Err(Error::size(format!(
            "unary CFG membership limited to n ≤ {}, got {n}",
            guards.unary_cfg_cap
        )));
    }
    let n = n.to_usize().unwrap();
    let nf = cfg.to_normal_form();
    let nts = nf.nonterminals().len();
    // derivable[A][len] for len ≤ n
    let mut derivable = vec![vec![false; n + 1]; nts];
    let mut binary: Vec<(usize, usize, usize)> = Vec::new();
    let mut accepts_empty = false;
    for p in nf.productions() {
        match p.body[..] {
            [] => {
                if p.head == nf.start() {
                    accepts_empty = true;
                }
            }
            [Symbol::Terminal(_)] => {
                if n >= 1 {
                    derivable[p.head][1] = true;
                }
            }
            [Symbol::Nonterminal(b), Symbol::Nonterminal(c)] => binary.push((p.head, b, c)),
            _ => unreachable!("normal form bodies have length <= 2"),
        }
    }
    if n == 0 {
        return Ok(accepts_empty);
    }
    for len in 2..=n {
        for &(a, b, c) in &binary {
            if derivable[a][len] {
                continue;
            }
            for i in 1..len {
                if derivable[b][i] && derivable[c][len - i] {
                    derivable[a][len] = true;
                    break;
                }
            }
        }
    }
    Ok(derivable[nf.start()][n])
}

/// Unary membership with the default method per kind.
pub fn unary_member(acceptor: &Acceptor, n: &BigUint, guards: &Guards) -> Result<bool> {
    match acceptor {
        Acceptor::Dfa(d) => unary_dfa_member(d, n),
        Acceptor::Nfa(a) => unary_nfa_member(a, n, UnaryNfaMethod::Sawa),
        Acceptor::Cfg(g) => unary_cfg_member(g, n, guards),
    }
}

/// The unary comparison: `a^n ∈ L(a)` and `a^n ∉ L(b)`.
pub fn unary_pic(a: &Acceptor, b: &Acceptor, n: &BigUint, guards: &Guards) -> Result<bool> {
    let left = require_unary(&a.alphabet(), "unary comparison")?.to_string();
    let right = require_unary(&b.alphabet(), "unary comparison")?.to_string();
    if left != right {
        return Err(Error::input(format!(
            "acceptors use different unary letters {left:?} and {right:?}"
        )));
    }
    Ok(unary_member(a, n, guards)? && !unary_member(b, n, guards)?)
}
