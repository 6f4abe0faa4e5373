//! Cost Markov chains: validation, zero-cost contraction, exact cost
//! probabilities by two independent routes, threshold decisions, bit
//! extraction, quantiles and expectations. All probability arithmetic is
//! exact rational.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::guards::Guards;
use crate::multigraph::WeightedMultigraph;

/// Method for the exact cost-probability computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostMethod {
    /// Enumerate edge Parikh vectors of length ≤ c+1 and sum
    /// `N(𝒞,p⃗)·∏ Δ(e)^{p⃗(e)}`; exercises the circuit-counting engine.
    ParikhBest,
    /// Reachability DP over (state, accumulated cost ≤ c); the production
    /// path.
    CostDp,
}

/// An exact rational in [0,1].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Probability(BigRational);

impl Probability {
    pub fn new(value: BigRational) -> Result<Probability> {
        if value.is_negative() || value > BigRational::one() {
            return Err(Error::input(format!("probability {value} outside [0,1]")));
        }
        Ok(Probability(value))
    }

    pub fn from_u64_ratio(num: u64, den: u64) -> Result<Probability> {
        if den == 0 {
            return Err(Error::input("probability denominator is zero"));
        }
        Probability::new(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero() -> Probability {
        Probability(BigRational::zero())
    }

    pub fn one() -> Probability {
        Probability(BigRational::one())
    }

    pub fn ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn into_ratio(self) -> BigRational {
        self.0
    }
}

impl std::fmt::Display for Probability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", display_rational(&self.0))
    }
}

/// Renders a rational as `num/den`, or plain `num` when the denominator
/// is 1.
pub fn display_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A Boolean combination of atomic cost constraints `x ≤ b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CostFormula {
    Le(u64),
    Not(Box<CostFormula>),
    And(Box<CostFormula>, Box<CostFormula>),
    Or(Box<CostFormula>, Box<CostFormula>),
}

impl CostFormula {
    pub fn le(bound: u64) -> CostFormula {
        CostFormula::Le(bound)
    }

    pub fn negate(self) -> CostFormula {
        CostFormula::Not(Box::new(self))
    }

    pub fn and(self, other: CostFormula) -> CostFormula {
        CostFormula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: CostFormula) -> CostFormula {
        CostFormula::Or(Box::new(self), Box::new(other))
    }

    /// `n ⊨ φ`.
    pub fn sat(&self, n: u64) -> bool {
        match self {
            CostFormula::Le(b) => n <= *b,
            CostFormula::Not(f) => !f.sat(n),
            CostFormula::And(f, g) => f.sat(n) && g.sat(n),
            CostFormula::Or(f, g) => f.sat(n) || g.sat(n),
        }
    }

    /// The maximum constant occurring in the formula; satisfaction is
    /// constant beyond it.
    pub fn max_constant(&self) -> u64 {
        match self {
            CostFormula::Le(b) => *b,
            CostFormula::Not(f) => f.max_constant(),
            CostFormula::And(f, g) | CostFormula::Or(f, g) => {
                f.max_constant().max(g.max_constant())
            }
        }
    }

    /// True iff the satisfying set is infinite, decided at `c+1`.
    pub fn is_cofinite(&self) -> bool {
        self.sat(self.max_constant().saturating_add(1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostEdge {
    pub source: usize,
    pub cost: u64,
    pub target: usize,
    pub prob: BigRational,
}

/// A cost chain: states, initial and absorbing target, and edges
/// `(source, cost, target, probability)` with exact rational probabilities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostChain {
    states: Vec<String>,
    initial: usize,
    target: usize,
    edges: Vec<CostEdge>,
}

impl CostChain {
    pub fn new(
        states: &[&str],
        initial: &str,
        target: &str,
        edges: &[(&str, u64, &str, (u64, u64))],
    ) -> Result<CostChain> {
        CostChain::from_parts(
            states.iter().map(|s| s.to_string()).collect(),
            initial,
            target,
            edges
                .iter()
                .map(|(s, k, t, (m, d))| {
                    if *d == 0 {
                        return Err(Error::input("probability denominator is zero"));
                    }
                    Ok((
                        s.to_string(),
                        *k,
                        t.to_string(),
                        BigRational::new(BigInt::from(*m), BigInt::from(*d)),
                    ))
                })
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn from_parts(
        states: Vec<String>,
        initial: &str,
        target: &str,
        edges: Vec<(String, u64, String, BigRational)>,
    ) -> Result<CostChain> {
        let mut index = HashMap::new();
        for (i, s) in states.iter().enumerate() {
            if s.is_empty() || s.chars().any(|c| c.is_whitespace()) {
                return Err(Error::input(format!("bad state identifier {s:?}")));
            }
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::input(format!("duplicate state {s:?}")));
            }
        }
        let initial = *index
            .get(initial)
            .ok_or_else(|| Error::input(format!("initial state {initial:?} not declared")))?;
        let target = *index
            .get(target)
            .ok_or_else(|| Error::input(format!("target state {target:?} not declared")))?;
        let mut resolved = Vec::with_capacity(edges.len());
        for (src, cost, dst, prob) in edges {
            let source = *index
                .get(&src)
                .ok_or_else(|| Error::input(format!("edge source {src:?} not declared")))?;
            let target_idx = *index
                .get(&dst)
                .ok_or_else(|| Error::input(format!("edge target {dst:?} not declared")))?;
            resolved.push(CostEdge {
                source,
                cost,
                target: target_idx,
                prob,
            });
        }
        Ok(CostChain {
            states,
            initial,
            target,
            edges: resolved,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, i: usize) -> &str {
        &self.states[i]
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn edges(&self) -> &[CostEdge] {
        &self.edges
    }

    /// Checks every invariant; an empty report means the chain is valid.
    pub fn validate(&self) -> Vec<String> {
        let mut problems = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if !e.prob.is_positive() || e.prob > BigRational::one() {
                problems.push(format!(
                    "edge #{i} ({} -{}-> {}): probability {} outside (0,1]",
                    self.states[e.source], e.cost, self.states[e.target], e.prob
                ));
            }
        }
        let mut keys = HashMap::new();
        for e in &self.edges {
            if keys.insert((e.source, e.cost, e.target), ()).is_some() {
                problems.push(format!(
                    "duplicate edge ({} -{}-> {})",
                    self.states[e.source], e.cost, self.states[e.target]
                ));
            }
        }
        for q in 0..self.states.len() {
            let sum: BigRational = self
                .edges
                .iter()
                .filter(|e| e.source == q)
                .map(|e| e.prob.clone())
                .sum();
            if sum != BigRational::one() {
                problems.push(format!(
                    "state {}: outgoing probabilities sum to {}, expected 1",
                    self.states[q],
                    display_rational(&sum)
                ));
            }
        }
        let target_edges: Vec<&CostEdge> = self
            .edges
            .iter()
            .filter(|e| e.source == self.target)
            .collect();
        let target_ok = target_edges.len() == 1
            && target_edges[0].target == self.target
            && target_edges[0].cost == 0
            && target_edges[0].prob == BigRational::one();
        if !target_ok {
            problems.push(format!(
                "target {} must carry exactly the zero-cost self-edge with probability 1",
                self.states[self.target]
            ));
        }
        // almost-sure reachability: every q0-reachable state reaches the target
        let reachable = self.reachable_from(self.initial);
        let coreach = self.coreachable_to(self.target);
        for q in 0..self.states.len() {
            if reachable[q] && !coreach[q] {
                problems.push(format!(
                    "state {} is reachable but cannot reach the target",
                    self.states[q]
                ));
            }
        }
        problems
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn ensure_valid(&self) -> Result<()> {
        let problems = self.validate();
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::structural(problems.join("; ")))
        }
    }

    fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.states.len()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(q) = stack.pop() {
            for e in &self.edges {
                if e.source == q && !seen[e.target] {
                    seen[e.target] = true;
                    stack.push(e.target);
                }
            }
        }
        seen
    }

    fn coreachable_to(&self, goal: usize) -> Vec<bool> {
        let mut seen = vec![false; self.states.len()];
        seen[goal] = true;
        let mut stack = vec![goal];
        while let Some(q) = stack.pop() {
            for e in &self.edges {
                if e.target == q && !seen[e.source] {
                    seen[e.source] = true;
                    stack.push(e.source);
                }
            }
        }
        seen
    }

    /// Zero-cost contraction: the result has every zero-cost edge leading
    /// to the target and an identical accumulated-cost distribution. New
    /// probabilities come from the exact solution of the first-crossing
    /// linear system; parallel edges are merged by (source, cost, target).
    /// States unreachable from the initial state are dropped.
    pub fn contract_zero_cost(&self) -> Result<CostChain> {
        self.ensure_valid()?;
        let reachable = self.reachable_from(self.initial);
        let kept: Vec<usize> = (0..self.states.len()).filter(|&q| reachable[q]).collect();
        let pos: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        let n = kept.len();
        let kept_edges: Vec<&CostEdge> =
            self.edges.iter().filter(|e| reachable[e.source]).collect();
        // E': edges with non-zero cost or leading to the target
        let retained: Vec<usize> = (0..kept_edges.len())
            .filter(|&i| kept_edges[i].cost > 0 || kept_edges[i].target == self.target)
            .collect();
        // Z: one-step transfer through dropped (zero-cost, non-target) edges
        let mut matrix = vec![vec![BigRational::zero(); n]; n];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = BigRational::one();
        }
        for (i, e) in kept_edges.iter().enumerate() {
            if retained.contains(&i) {
                continue;
            }
            matrix[pos[&e.source]][pos[&e.target]] -= &e.prob;
        }
        // one RHS column per retained edge
        let mut rhs = vec![vec![BigRational::zero(); retained.len()]; n];
        for (col, &i) in retained.iter().enumerate() {
            rhs[pos[&kept_edges[i].source]][col] += &kept_edges[i].prob;
        }
        let solution = solve_linear_system(matrix, rhs).ok_or_else(|| {
            Error::internal("singular zero-cost contraction system on a valid chain")
        })?;
        let mut merged: BTreeMap<(usize, u64, usize), BigRational> = BTreeMap::new();
        for (col, &i) in retained.iter().enumerate() {
            let e = kept_edges[i];
            for (row, &q) in kept.iter().enumerate() {
                let x = &solution[row][col];
                if x.is_positive() {
                    *merged
                        .entry((q, e.cost, e.target))
                        .or_insert_with(BigRational::zero) += x;
                }
            }
        }
        let states: Vec<String> = kept.iter().map(|&q| self.states[q].clone()).collect();
        let edges: Vec<(String, u64, String, BigRational)> = merged
            .into_iter()
            .map(|((src, cost, dst), prob)| {
                (
                    self.states[src].clone(),
                    cost,
                    self.states[dst].clone(),
                    prob,
                )
            })
            .collect();
        CostChain::from_parts(
            states,
            &self.states[self.initial].clone(),
            &self.states[self.target].clone(),
            edges,
        )
    }

    /// True iff every zero-cost edge leads to the target.
    pub fn is_contracted(&self) -> bool {
        self.edges
            .iter()
            .all(|e| e.cost > 0 || e.target == self.target)
    }

    fn max_edge_cost(&self) -> u64 {
        self.edges.iter().map(|e| e.cost).max().unwrap_or(0)
    }

    /// Bounded cost support ⇔ the reachable non-target subgraph of a
    /// contracted chain is acyclic.
    fn support_bounded(&self) -> bool {
        debug_assert!(self.is_contracted());
        let reachable = self.reachable_from(self.initial);
        // DFS cycle detection over non-target reachable states
        let n = self.states.len();
        let mut color = vec![0u8; n]; // 0 unvisited, 1 active, 2 done
        fn dfs(
            q: usize,
            edges: &[CostEdge],
            target: usize,
            reachable: &[bool],
            color: &mut [u8],
        ) -> bool {
            color[q] = 1;
            for e in edges {
                if e.source != q || e.target == target || !reachable[e.target] {
                    continue;
                }
                if color[e.target] == 1 {
                    return false;
                }
                if color[e.target] == 0 && !dfs(e.target, edges, target, reachable, color) {
                    return false;
                }
            }
            color[q] = 2;
            true
        }
        for q in 0..n {
            if q != self.target
                && reachable[q]
                && color[q] == 0
                && !dfs(q, &self.edges, self.target, &reachable, &mut color)
            {
                return false;
            }
        }
        true
    }
}

/// Gauss–Jordan elimination over exact rationals; returns `None` when the
/// matrix is singular.
#[allow(clippy::needless_range_loop)]
fn solve_linear_system(
    mut a: Vec<Vec<BigRational>>,
    mut b: Vec<Vec<BigRational>>,
) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for x in b[col].iter_mut() {
            *x *= &inv;
        }
        for row in 0..n {
            if row == col || a[row][col].is_zero() {
                continue;
            }
            let factor = a[row][col].clone();
            for j in 0..n {
                let sub = &a[col][j] * &factor;
                a[row][j] -= sub;
            }
            for j in 0..b[row].len() {
                let sub = &b[col][j] * &factor;
                b[row][j] -= sub;
            }
        }
    }
    Some(b)
}

/// `N(𝒞,p⃗)`: the number of initial→target paths (up to and including the
/// first edge into the target) whose edge multiset is `p`, indexed like
/// `chain.edges()`. Computed through the forced-flow circuit route and a
/// path DP; the two must agree.
pub fn count_chain_paths(chain: &CostChain, p: &[u64]) -> Result<BigUint> {
    if p.len() != chain.edges.len() {
        return Err(Error::input(format!(
            "multiplicity vector has {} entries for {} edges",
            p.len(),
            chain.edges.len()
        )));
    }
    if !chain.is_contracted() {
        return Err(Error::structural(
            "count_chain_paths expects a contracted chain",
        ));
    }
    let best = chain_paths_circuit(chain, p)?;
    let dp = chain_paths_dp(chain, p);
    if best != dp {
        return Err(Error::internal(format!(
            "path-count routes disagree: circuits {best}, DP {dp}"
        )));
    }
    Ok(best)
}

/// The chain viewed as a DFA with uniquely-labelled edges and no
/// transitions out of the target; the flow is forced to `p` plus the
/// anchoring edge target→initial.
fn chain_paths_circuit(chain: &CostChain, p: &[u64]) -> Result<BigUint> {
    for (i, e) in chain.edges.iter().enumerate() {
        if e.source == chain.target && p[i] > 0 {
            return Ok(BigUint::zero());
        }
    }
    let mut edges: Vec<(String, String, String, BigUint)> = chain
        .edges
        .iter()
        .enumerate()
        .filter(|(_, e)| e.source != chain.target)
        .map(|(i, e)| {
            (
                format!("e{i}"),
                chain.states[e.source].clone(),
                chain.states[e.target].clone(),
                BigUint::from(p[i]),
            )
        })
        .collect();
    edges.push((
        "anchor".to_string(),
        chain.states[chain.target].clone(),
        chain.states[chain.initial].clone(),
        BigUint::one(),
    ));
    let graph = WeightedMultigraph::from_parts(chain.states.to_vec(), edges)
        .expect("chain flow graph construction cannot fail");
    if graph.is_eulerian_connected() {
        graph.euler_count()
    } else {
        Ok(BigUint::zero())
    }
}

fn chain_paths_dp(chain: &CostChain, p: &[u64]) -> BigUint {
    let mut memo: HashMap<(usize, Vec<u64>), BigUint> = HashMap::new();
    fn rec(
        chain: &CostChain,
        q: usize,
        remaining: &mut Vec<u64>,
        memo: &mut HashMap<(usize, Vec<u64>), BigUint>,
    ) -> BigUint {
        if q == chain.target {
            return if remaining.iter().all(|&r| r == 0) {
                BigUint::one()
            } else {
                BigUint::zero()
            };
        }
        if let Some(hit) = memo.get(&(q, remaining.clone())) {
            return hit.clone();
        }
        let mut total = BigUint::zero();
        for i in 0..chain.edges.len() {
            if chain.edges[i].source != q || remaining[i] == 0 {
                continue;
            }
            remaining[i] -= 1;
            total += rec(chain, chain.edges[i].target, remaining, memo);
            remaining[i] += 1;
        }
        memo.insert((q, remaining.clone()), total.clone());
        total
    }
    let mut remaining = p.to_vec();
    rec(chain, chain.initial, &mut remaining, &mut memo)
}

/// Exact `P(K ⊨ φ)`.
pub fn cost_prob(
    chain: &CostChain,
    phi: &CostFormula,
    method: CostMethod,
    guards: &Guards,
) -> Result<Probability> {
    cost_prob_parallel(chain, phi, method, guards, 1)
}

/// As [`cost_prob`], with the ParikhBest vector sum partitioned across
/// workers; results are identical for any worker count.
pub fn cost_prob_parallel(
    chain: &CostChain,
    phi: &CostFormula,
    method: CostMethod,
    guards: &Guards,
    workers: usize,
) -> Result<Probability> {
    chain.ensure_valid()?;
    let contracted = chain.contract_zero_cost()?;
    let value = if phi.is_cofinite() {
        let complement =
            cost_prob_finite(&contracted, &phi.clone().negate(), method, guards, workers)?;
        BigRational::one() - complement
    } else {
        cost_prob_finite(&contracted, phi, method, guards, workers)?
    };
    Probability::new(value).map_err(|_| Error::internal("cost probability outside [0,1]"))
}

fn cost_prob_finite(
    contracted: &CostChain,
    phi: &CostFormula,
    method: CostMethod,
    guards: &Guards,
    workers: usize,
) -> Result<BigRational> {
    debug_assert!(!phi.is_cofinite());
    match method {
        CostMethod::CostDp => cost_prob_dp(contracted, phi, guards),
        CostMethod::ParikhBest => cost_prob_vectors(contracted, phi, guards, workers.max(1)),
    }
}

fn cost_prob_dp(chain: &CostChain, phi: &CostFormula, guards: &Guards) -> Result<BigRational> {
    debug_assert!(chain.is_contracted());
    let c = phi.max_constant();
    let table = c.saturating_mul(chain.states.len() as u64);
    if table > guards.cost_dp_table_cap {
        return Err(Error::size(format!(
            "cost DP table c·|Q| = {table} exceeds cap {}",
            guards.cost_dp_table_cap
        )));
    }
    let n = chain.states.len();
    let c = c as usize;
    let mut mass = vec![vec![BigRational::zero(); c + 1]; n];
    let mut arrived = vec![BigRational::zero(); c + 1];
    if chain.initial == chain.target {
        arrived[0] = BigRational::one();
    } else {
        mass[chain.initial][0] = BigRational::one();
    }
    for i in 0..=c {
        for q in 0..n {
            if q == chain.target || mass[q][i].is_zero() {
                continue;
            }
            let current = mass[q][i].clone();
            for e in &chain.edges {
                if e.source != q {
                    continue;
                }
                let total = i as u64 + e.cost;
                if total > c as u64 {
                    continue;
                }
                let add = &current * &e.prob;
                if e.target == chain.target {
                    arrived[total as usize] += add;
                } else {
                    // contracted: non-target edges have cost ≥ 1
                    mass[e.target][total as usize] += add;
                }
            }
        }
    }
    let mut sum = BigRational::zero();
    for (i, prob) in arrived.iter().enumerate() {
        if phi.sat(i as u64) {
            sum += prob;
        }
    }
    Ok(sum)
}

fn cost_prob_vectors(
    chain: &CostChain,
    phi: &CostFormula,
    guards: &Guards,
    workers: usize,
) -> Result<BigRational> {
    let c = phi.max_constant();
    if c > guards.cost_c_cap {
        return Err(Error::size(format!(
            "formula constant {c} exceeds ParikhBest cap {}",
            guards.cost_c_cap
        )));
    }
    let budget = c
        .checked_add(1)
        .ok_or_else(|| Error::size("formula constant overflows the path budget"))?;
    // candidate vectors: Σp(e) ≤ c+1, K(p) ≤ c, no weight on target-sourced
    // edges, enumerated in edge order with running-cost pruning
    let mut candidates: Vec<Vec<u64>> = Vec::new();
    let edges = &chain.edges;
    let usable: Vec<usize> = (0..edges.len())
        .filter(|&i| edges[i].source != chain.target)
        .collect();
    let mut current = vec![0u64; edges.len()];
    #[allow(clippy::too_many_arguments)]
    fn expand(
        edges: &[CostEdge],
        usable: &[usize],
        pos: usize,
        budget: u64,
        cost_left: u64,
        current: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
        phi: &CostFormula,
        c: u64,
    ) {
        if pos == usable.len() {
            let total_cost = c - cost_left;
            if phi.sat(total_cost) {
                out.push(current.clone());
            }
            return;
        }
        let e = usable[pos];
        let unit = edges[e].cost;
        let mut v = 0u64;
        loop {
            let spent = v.checked_mul(unit);
            if v > budget || spent.is_none() || spent.unwrap() > cost_left {
                break;
            }
            current[e] = v;
            expand(
                edges,
                usable,
                pos + 1,
                budget - v,
                cost_left - spent.unwrap(),
                current,
                out,
                phi,
                c,
            );
            v += 1;
        }
        current[e] = 0;
    }
    expand(
        edges,
        &usable,
        0,
        budget,
        c,
        &mut current,
        &mut candidates,
        phi,
        c,
    );
    let chunks: Vec<Vec<&Vec<u64>>> = (0..workers)
        .map(|w| candidates.iter().skip(w).step_by(workers).collect())
        .collect();
    let partials: Vec<Result<BigRational>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|chunk| {
                scope.spawn(move || {
                    let mut sum = BigRational::zero();
                    for p in chunk {
                        let count = count_chain_paths(chain, p)?;
                        if count.is_zero() {
                            continue;
                        }
                        let mut term = BigRational::from(BigInt::from(count));
                        for (i, e) in chain.edges.iter().enumerate() {
                            if p[i] > 0 {
                                let num = e.prob.numer().pow(p[i] as u32);
                                let den = e.prob.denom().pow(p[i] as u32);
                                term *= BigRational::new(num, den);
                            }
                        }
                        sum += term;
                    }
                    Ok(sum)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut total = BigRational::zero();
    for partial in partials {
        total += partial?;
    }
    Ok(total)
}

/// The Cost Problem: `P(K ⊨ φ) ≥ τ`, exact.
pub fn cost_decide(
    chain: &CostChain,
    phi: &CostFormula,
    tau: &Probability,
    method: CostMethod,
    guards: &Guards,
) -> Result<bool> {
    Ok(cost_prob(chain, phi, method, guards)? >= *tau)
}

/// Bit `j` of the binary expansion of `P(K ⊨ φ)`: `⌊2^j·P⌋ mod 2`,
/// evaluated modularly so large `j` stays cheap.
pub fn bitcost(
    chain: &CostChain,
    phi: &CostFormula,
    j: u64,
    method: CostMethod,
    guards: &Guards,
) -> Result<bool> {
    let p = cost_prob(chain, phi, method, guards)?;
    Ok(rational_bit(p.ratio(), j))
}

/// `⌊2^j·n/d⌋ mod 2` for a non-negative rational `n/d`.
pub fn rational_bit(value: &BigRational, j: u64) -> bool {
    let num = value.numer().magnitude();
    let den = value.denom().magnitude();
    let double_den = den << 1;
    let shifted = BigUint::from(2u32).modpow(&BigUint::from(j), &double_den) * num % &double_den;
    shifted >= *den
}

/// `min{b : P(K ≤ b) ≥ τ}` by exponential then binary search over the CDF.
pub fn quantile(chain: &CostChain, tau: &Probability, guards: &Guards) -> Result<u64> {
    if *tau <= Probability::zero() {
        return Err(Error::input("quantile requires τ > 0"));
    }
    chain.ensure_valid()?;
    let contracted = chain.contract_zero_cost()?;
    if *tau == Probability::one() && !contracted.support_bounded() {
        return Err(Error::structural(
            "cost support is unbounded; the τ = 1 quantile does not exist",
        ));
    }
    let cdf =
        |b: u64| -> Result<BigRational> { cost_prob_dp(&contracted, &CostFormula::le(b), guards) };
    if cdf(0)? >= *tau.ratio() {
        return Ok(0);
    }
    let mut hi = contracted.max_edge_cost().max(1);
    while cdf(hi)? < *tau.ratio() {
        hi = hi
            .checked_mul(2)
            .ok_or_else(|| Error::internal("quantile search overflow"))?;
    }
    let mut lo = 0u64; // cdf(lo) < τ
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if cdf(mid)? >= *tau.ratio() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// `E[K]` as an exact rational, by solving the expectation system over the
/// reachable states.
pub fn expected_cost(chain: &CostChain) -> Result<BigRational> {
    chain.ensure_valid()?;
    if chain.initial == chain.target {
        return Ok(BigRational::zero());
    }
    let reachable = chain.reachable_from(chain.initial);
    let kept: Vec<usize> = (0..chain.states.len())
        .filter(|&q| reachable[q] && q != chain.target)
        .collect();
    let pos: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    let n = kept.len();
    let mut matrix = vec![vec![BigRational::zero(); n]; n];
    let mut rhs = vec![vec![BigRational::zero(); 1]; n];
    for (i, row) in matrix.iter_mut().enumerate() {
        row[i] = BigRational::one();
    }
    for e in &chain.edges {
        let Some(&row) = pos.get(&e.source) else {
            continue;
        };
        rhs[row][0] += &e.prob * BigRational::from(BigInt::from(e.cost));
        if let Some(&col) = pos.get(&e.target) {
            matrix[row][col] -= &e.prob;
        }
    }
    let solution = solve_linear_system(matrix, rhs)
        .ok_or_else(|| Error::internal("singular expectation system on a valid chain"))?;
    Ok(solution[pos[&chain.initial]][0].clone())
}
