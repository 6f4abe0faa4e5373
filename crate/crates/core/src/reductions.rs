//! Constructive gadget generators: a DFA whose Parikh-image count equals a
//! 3-CNF model count, the matrix-power positivity pipeline down to DFA
//! counting, and subset-sum grammars over a unary alphabet.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::automata::{Cfg, Dfa, ParikhVector};
use crate::counting::{count_dfa, DfaMethod};
use crate::error::{Error, Result};
use crate::guards::Guards;
use crate::multigraph::WeightedMultigraph;

/// A literal: 1-based variable index plus polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

/// A 3-CNF formula; every clause mentions three pairwise distinct
/// variables (a repeated variable would break the count-to-3 accounting of
/// the generated automaton).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    vars: usize,
    clauses: Vec<[Literal; 3]>,
}

impl CnfFormula {
    pub fn new(vars: usize, clauses: Vec<[Literal; 3]>) -> Result<CnfFormula> {
        if vars == 0 {
            return Err(Error::input("formula needs at least one variable"));
        }
        for (i, clause) in clauses.iter().enumerate() {
            for lit in clause {
                if lit.var == 0 || lit.var > vars {
                    return Err(Error::input(format!(
                        "clause {}: variable {} out of range 1..={vars}",
                        i + 1,
                        lit.var
                    )));
                }
            }
            if clause[0].var == clause[1].var
                || clause[0].var == clause[2].var
                || clause[1].var == clause[2].var
            {
                return Err(Error::input(format!(
                    "clause {}: variables must be pairwise distinct",
                    i + 1
                )));
            }
        }
        Ok(CnfFormula { vars, clauses })
    }

    /// Convenience constructor from signed 1-based literals.
    pub fn from_ints(vars: usize, clauses: &[[i64; 3]]) -> Result<CnfFormula> {
        let clauses = clauses
            .iter()
            .map(|c| {
                c.map(|l| Literal {
                    var: l.unsigned_abs() as usize,
                    positive: l > 0,
                })
            })
            .collect();
        CnfFormula::new(vars, clauses)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause
                .iter()
                .any(|lit| assignment[lit.var - 1] == lit.positive)
        })
    }

    /// Model count by brute force over all assignments.
    pub fn brute_model_count(&self) -> BigUint {
        let mut count = BigUint::zero();
        for bits in 0u64..(1 << self.vars) {
            let assignment: Vec<bool> = (0..self.vars).map(|v| bits >> v & 1 == 1).collect();
            if self.satisfied_by(&assignment) {
                count += 1u32;
            }
        }
        count
    }
}

/// DFA + Parikh vector whose count equals the model count of `psi`.
///
/// Phase 1 guesses a valuation per variable through two deterministic
/// chains (true: `x_i`, the `c_j` of clauses satisfied by it, `x̄_i`;
/// false: the dual); phase 2 lets every clause emit up to two extra `c_i`
/// through three dummy-framed chains. The vector demands each `c_i`
/// exactly three times, so exactly the satisfying valuations extend to a
/// word, and each in exactly one way.
pub fn gen_3sat(psi: &CnfFormula) -> Result<(Dfa, ParikhVector)> {
    let n = psi.vars;
    let k = psi.clauses.len();
    let pos = |i: usize| format!("x{i}");
    let neg = |i: usize| format!("!x{i}");
    let cls = |i: usize| format!("c{i}");
    let dum = |i: usize, j: usize| format!("d{i}_{j}");

    let mut alphabet: Vec<String> = Vec::new();
    for i in 1..=n {
        alphabet.push(pos(i));
        alphabet.push(neg(i));
    }
    for i in 1..=k {
        alphabet.push(cls(i));
    }
    for i in 1..=k {
        for j in 0..3 {
            alphabet.push(dum(i, j));
        }
    }

    let mut states: Vec<String> = Vec::new();
    let mut transitions: Vec<(String, String, String)> = Vec::new();
    states.push("s0".to_string());
    let chain = |states: &mut Vec<String>,
                 transitions: &mut Vec<(String, String, String)>,
                 from: &str,
                 to: &str,
                 letters: &[String],
                 tag: &str| {
        let mut at = from.to_string();
        for (idx, letter) in letters.iter().enumerate() {
            let next = if idx + 1 == letters.len() {
                to.to_string()
            } else {
                let fresh = format!("{tag}_{idx}");
                states.push(fresh.clone());
                fresh
            };
            transitions.push((at.clone(), letter.clone(), next.clone()));
            at = next;
        }
    };

    for i in 1..=n {
        let from = format!("s{}", i - 1);
        let to = format!("s{i}");
        states.push(to.clone());
        let mut true_chain = vec![pos(i)];
        for (ci, clause) in psi.clauses.iter().enumerate() {
            if clause.iter().any(|l| l.var == i && l.positive) {
                true_chain.push(cls(ci + 1));
            }
        }
        true_chain.push(neg(i));
        chain(
            &mut states,
            &mut transitions,
            &from,
            &to,
            &true_chain,
            &format!("p{i}T"),
        );
        let mut false_chain = vec![neg(i)];
        for (ci, clause) in psi.clauses.iter().enumerate() {
            if clause.iter().any(|l| l.var == i && !l.positive) {
                false_chain.push(cls(ci + 1));
            }
        }
        false_chain.push(pos(i));
        chain(
            &mut states,
            &mut transitions,
            &from,
            &to,
            &false_chain,
            &format!("p{i}F"),
        );
    }

    let mut at = format!("s{n}");
    for i in 1..=k {
        let to = format!("t{i}");
        states.push(to.clone());
        let options: [Vec<String>; 3] = [
            vec![dum(i, 0), dum(i, 1), dum(i, 2)],
            vec![dum(i, 1), cls(i), dum(i, 0), dum(i, 2)],
            vec![dum(i, 2), cls(i), cls(i), dum(i, 0), dum(i, 1)],
        ];
        for (oi, letters) in options.iter().enumerate() {
            chain(
                &mut states,
                &mut transitions,
                &at,
                &to,
                letters,
                &format!("q{i}o{oi}"),
            );
        }
        at = to;
    }

    let dfa = Dfa::from_parts(alphabet, states, "s0", &[at], &transitions)?;
    let mut p = ParikhVector::new();
    for i in 1..=n {
        p.set(pos(i), BigUint::one());
        p.set(neg(i), BigUint::one());
    }
    for i in 1..=k {
        p.set(cls(i), BigUint::from(3u32));
        for j in 0..3 {
            p.set(dum(i, j), BigUint::one());
        }
    }
    Ok((dfa, p))
}

/// A matrix-power positivity instance: decide `f(Mⁿ) ≥ 0` for the linear
/// function with coefficient matrix `coeffs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatPowInstance {
    pub matrix: Vec<Vec<BigInt>>,
    pub coeffs: Vec<Vec<BigInt>>,
    pub exponent: u64,
}

impl MatPowInstance {
    pub fn new(
        matrix: Vec<Vec<BigInt>>,
        coeffs: Vec<Vec<BigInt>>,
        exponent: u64,
    ) -> Result<MatPowInstance> {
        let m = matrix.len();
        if m == 0 {
            return Err(Error::input("matrix must be non-empty"));
        }
        if matrix.iter().any(|row| row.len() != m) {
            return Err(Error::input("matrix must be square"));
        }
        if coeffs.len() != m || coeffs.iter().any(|row| row.len() != m) {
            return Err(Error::input(
                "coefficient matrix must match the matrix dimension",
            ));
        }
        if exponent == 0 {
            return Err(Error::input("exponent must be positive"));
        }
        Ok(MatPowInstance {
            matrix,
            coeffs,
            exponent,
        })
    }

    pub fn dimension(&self) -> usize {
        self.matrix.len()
    }

    /// `f(Mⁿ)` by direct exact matrix powering.
    #[allow(clippy::needless_range_loop)]
    pub fn direct_value(&self) -> BigInt {
        let m = self.dimension();
        let mut power = vec![vec![BigInt::zero(); m]; m];
        for (i, row) in power.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        for _ in 0..self.exponent {
            let mut next = vec![vec![BigInt::zero(); m]; m];
            for i in 0..m {
                for k in 0..m {
                    if power[i][k].is_zero() {
                        continue;
                    }
                    for j in 0..m {
                        let add = &power[i][k] * &self.matrix[k][j];
                        next[i][j] += add;
                    }
                }
            }
            power = next;
        }
        let mut value = BigInt::zero();
        for i in 0..m {
            for j in 0..m {
                value += &self.coeffs[i][j] * &power[i][j];
            }
        }
        value
    }
}

/// Sign-doubled entry gadget: `(Mⁿ)_{i,j} = N(G,v_i⁺,v_j⁺,n) −
/// N(G,v_i⁺,v_j⁻,n)`; `i`, `j` are 1-based. Returns the graph and the
/// start/plus/minus node names.
pub fn matpow_entry_gadget(
    matrix: &[Vec<BigInt>],
    i: usize,
    j: usize,
) -> Result<(WeightedMultigraph, String, String, String)> {
    let m = matrix.len();
    if matrix.iter().any(|row| row.len() != m) {
        return Err(Error::input("matrix must be square"));
    }
    if i == 0 || i > m || j == 0 || j > m {
        return Err(Error::input(format!("entry ({i},{j}) out of range")));
    }
    let plus = |k: usize| format!("v{k}+");
    let minus = |k: usize| format!("v{k}-");
    let mut nodes = Vec::new();
    for k in 1..=m {
        nodes.push(plus(k));
        nodes.push(minus(k));
    }
    let mut edges = Vec::new();
    for k in 1..=m {
        for l in 1..=m {
            let entry = &matrix[k - 1][l - 1];
            if entry.is_zero() {
                continue;
            }
            let w = entry.magnitude().clone();
            if entry.is_positive() {
                edges.push((format!("m{k}_{l}a"), plus(k), plus(l), w.clone()));
                edges.push((format!("m{k}_{l}b"), minus(k), minus(l), w));
            } else {
                edges.push((format!("m{k}_{l}a"), plus(k), minus(l), w.clone()));
                edges.push((format!("m{k}_{l}b"), minus(k), plus(l), w));
            }
        }
    }
    let graph = WeightedMultigraph::from_parts(nodes, edges)?;
    Ok((graph, plus(i), plus(j), minus(j)))
}

/// Full linear-function gadget: `f(Mⁿ) = N(G,v₀,v⁺,n+2) − N(G,v₀,v⁻,n+2)`.
pub fn posmat_to_multigraph(
    inst: &MatPowInstance,
) -> Result<(WeightedMultigraph, String, String, String)> {
    let m = inst.dimension();
    let mut nodes = vec!["v0".to_string(), "vp".to_string(), "vn".to_string()];
    let mut edges: Vec<(String, String, String, BigUint)> = Vec::new();
    for i in 1..=m {
        for j in 1..=m {
            let prefix = format!("g{i}_{j}.");
            let (gadget, start, plus, minus) = matpow_entry_gadget(&inst.matrix, i, j)?;
            for node in gadget.nodes() {
                nodes.push(format!("{prefix}{node}"));
            }
            for e in gadget.edges() {
                edges.push((
                    format!("{prefix}{}", e.id),
                    format!("{prefix}{}", gadget.node_name(e.source)),
                    format!("{prefix}{}", gadget.node_name(e.target)),
                    e.weight.clone(),
                ));
            }
            edges.push((
                format!("in{i}_{j}"),
                "v0".to_string(),
                format!("{prefix}{start}"),
                BigUint::one(),
            ));
            let b = &inst.coeffs[i - 1][j - 1];
            if b.is_positive() {
                let w = b.magnitude().clone();
                edges.push((
                    format!("out{i}_{j}p"),
                    format!("{prefix}{plus}"),
                    "vp".to_string(),
                    w.clone(),
                ));
                edges.push((
                    format!("out{i}_{j}n"),
                    format!("{prefix}{minus}"),
                    "vn".to_string(),
                    w,
                ));
            } else if b.is_negative() {
                let w = b.magnitude().clone();
                edges.push((
                    format!("out{i}_{j}p"),
                    format!("{prefix}{plus}"),
                    "vn".to_string(),
                    w.clone(),
                ));
                edges.push((
                    format!("out{i}_{j}n"),
                    format!("{prefix}{minus}"),
                    "vp".to_string(),
                    w,
                ));
            }
        }
    }
    let graph = WeightedMultigraph::from_parts(nodes, edges)?;
    Ok((graph, "v0".into(), "vp".into(), "vn".into()))
}

/// Replaces every weight-`w` edge by `w` paths of length `k` through the
/// recursive halving gadget, so `N(G,u,v,n) = N(G',u,v,n·k)`.
/// Requires `k ≥ 1 + ⌊log₂ max w⌋`.
pub fn unweight(g: &WeightedMultigraph, k: u32) -> Result<WeightedMultigraph> {
    if k == 0 {
        return Err(Error::input("path length k must be positive"));
    }
    let needed = g.edges().iter().map(|e| e.weight.bits()).max().unwrap_or(1);
    if u64::from(k) < needed {
        return Err(Error::input(format!(
            "k = {k} below the bound {needed} required by the largest weight"
        )));
    }
    let mut nodes: Vec<String> = g.nodes().to_vec();
    let mut edges: Vec<(String, String, String, BigUint)> = Vec::new();
    for e in g.edges() {
        let mut counter = 0usize;
        let from = g.node_name(e.source).to_string();
        let to = g.node_name(e.target).to_string();
        expand_edge(
            &e.id,
            &from,
            &to,
            e.weight.clone(),
            k,
            &mut nodes,
            &mut edges,
            &mut counter,
        );
    }
    WeightedMultigraph::from_parts(nodes, edges)
}

#[allow(clippy::too_many_arguments)]
fn expand_edge(
    id: &str,
    from: &str,
    to: &str,
    weight: BigUint,
    budget: u32,
    nodes: &mut Vec<String>,
    edges: &mut Vec<(String, String, String, BigUint)>,
    counter: &mut usize,
) {
    let fresh_node = |nodes: &mut Vec<String>, counter: &mut usize| {
        let name = format!("{id}.n{counter}");
        *counter += 1;
        nodes.push(name.clone());
        name
    };
    let fresh_edge = |edges: &mut Vec<(String, String, String, BigUint)>,
                      counter: &mut usize,
                      from: &str,
                      to: &str| {
        let name = format!("{id}.e{counter}");
        *counter += 1;
        edges.push((name, from.to_string(), to.to_string(), BigUint::one()));
    };
    let simple_path = |len: u32,
                       nodes: &mut Vec<String>,
                       edges: &mut Vec<(String, String, String, BigUint)>,
                       counter: &mut usize| {
        let mut at = from.to_string();
        for step in 0..len {
            let next = if step + 1 == len {
                to.to_string()
            } else {
                fresh_node(nodes, counter)
            };
            fresh_edge(edges, counter, &at, &next);
            at = next;
        }
    };
    if weight.is_one() {
        simple_path(budget, nodes, edges, counter);
        return;
    }
    // weight ≥ 2: split through a fresh two-in vertex, halving the weight
    let half = &weight >> 1;
    let odd = weight.bit(0);
    let mid = fresh_node(nodes, counter);
    fresh_edge(edges, counter, from, &mid);
    fresh_edge(edges, counter, from, &mid);
    expand_edge(id, &mid, to, half, budget - 1, nodes, edges, counter);
    if odd {
        simple_path(budget, nodes, edges, counter);
    }
}

/// Shift/add-one constructions: `N(G₀,v₀,v₁,n+2) = N(G,v₀,v₁,n)` and
/// `N(G₁,v₀,v₁,n+2) = N(G,v₀,v₁,n) + 1`.
pub fn add_one_path(
    g: &WeightedMultigraph,
    v0: &str,
    v1: &str,
) -> Result<(WeightedMultigraph, WeightedMultigraph)> {
    if g.node_index(v0).is_none() || g.node_index(v1).is_none() {
        return Err(Error::input(format!(
            "unknown anchor node {v0:?} or {v1:?}"
        )));
    }
    let existing: HashSet<&String> = g.nodes().iter().collect();
    let fresh = |base: String| {
        let mut name = base;
        while existing.contains(&name) {
            name.push('\'');
        }
        name
    };
    let v0s = fresh(format!("{v0}#s"));
    let v1e = if v0 == v1 {
        v0s.clone()
    } else {
        fresh(format!("{v1}#e"))
    };
    let mut nodes: Vec<String> = g.nodes().to_vec();
    nodes.push(v0s.clone());
    if v0 != v1 {
        nodes.push(v1e.clone());
    }
    let redirect = |name: &str| {
        if name == v0 {
            v0s.clone()
        } else if name == v1 {
            v1e.clone()
        } else {
            name.to_string()
        }
    };
    let mut edges: Vec<(String, String, String, BigUint)> = g
        .edges()
        .iter()
        .map(|e| {
            (
                e.id.clone(),
                redirect(g.node_name(e.source)),
                redirect(g.node_name(e.target)),
                e.weight.clone(),
            )
        })
        .collect();
    edges.push(("#enter".into(), v0.to_string(), v0s.clone(), BigUint::one()));
    edges.push(("#exit".into(), v1e.clone(), v1.to_string(), BigUint::one()));
    let g0 = WeightedMultigraph::from_parts(nodes.clone(), edges.clone())?;
    let y = fresh("#one".to_string());
    nodes.push(y.clone());
    edges.push(("#one_in".into(), v0.to_string(), y.clone(), BigUint::one()));
    edges.push(("#one_loop".into(), y.clone(), y.clone(), BigUint::one()));
    edges.push(("#one_out".into(), y, v1.to_string(), BigUint::one()));
    let g1 = WeightedMultigraph::from_parts(nodes, edges)?;
    Ok((g0, g1))
}

/// Encodes an all-weights-1 multigraph as a DFA over `{a,b}`: the `j`-th
/// out-edge of a node becomes the run `b^{j−1} a b^{d−j}` through a shared
/// per-node trie, so `N(G,v₀,v₁,n) = N(𝒜, {a:n, b:n(d−1)})`.
pub fn graph_to_dfa(g: &WeightedMultigraph, v0: &str, v1: &str, d: usize) -> Result<Dfa> {
    if g.node_index(v0).is_none() || g.node_index(v1).is_none() {
        return Err(Error::input(format!(
            "unknown anchor node {v0:?} or {v1:?}"
        )));
    }
    if g.edges().iter().any(|e| !e.weight.is_one()) {
        return Err(Error::input("graph must have all weights 1"));
    }
    let max_out = (0..g.nodes().len())
        .map(|v| g.edges().iter().filter(|e| e.source == v).count())
        .max()
        .unwrap_or(0);
    if d == 0 || d < max_out {
        return Err(Error::input(format!(
            "d = {d} below the maximum out-degree {max_out}"
        )));
    }
    let mut states: Vec<String> = g.nodes().to_vec();
    let mut transitions: Vec<(String, String, String)> = Vec::new();
    // (state, letter) -> state, to share run prefixes within each node
    let mut built: HashSet<(String, String)> = HashSet::new();
    let find = |transitions: &Vec<(String, String, String)>, at: &str, letter: &str| {
        transitions
            .iter()
            .find(|(s, l, _)| s == at && l == letter)
            .map(|(_, _, t)| t.clone())
    };
    for v in 0..g.nodes().len() {
        let out: Vec<usize> = (0..g.edges().len())
            .filter(|&i| g.edges()[i].source == v)
            .collect();
        let mut interior = 0usize;
        for (j, &ei) in out.iter().enumerate() {
            let target = g.node_name(g.edges()[ei].target).to_string();
            let run: Vec<&str> = (0..d).map(|pos| if pos == j { "a" } else { "b" }).collect();
            let mut at = g.node_name(v).to_string();
            for (pos, &letter) in run.iter().enumerate() {
                let last = pos + 1 == run.len();
                if last {
                    transitions.push((at.clone(), letter.to_string(), target.clone()));
                    built.insert((at.clone(), letter.to_string()));
                    break;
                }
                match find(&transitions, &at, letter) {
                    Some(next) => at = next,
                    None => {
                        let fresh = format!("{}.r{}", g.node_name(v), interior);
                        interior += 1;
                        states.push(fresh.clone());
                        transitions.push((at.clone(), letter.to_string(), fresh.clone()));
                        built.insert((at.clone(), letter.to_string()));
                        at = fresh;
                    }
                }
            }
        }
    }
    Dfa::from_parts(
        vec!["a".to_string(), "b".to_string()],
        states,
        v0,
        &[v1.to_string()],
        &transitions,
    )
}

/// The two DFAs and shared Parikh vector realizing
/// `f(Mⁿ) + 1 = N(𝒜,p⃗) − N(ℬ,p⃗)`.
#[derive(Debug, Clone)]
pub struct PosMatPowGadget {
    pub positive: Dfa,
    pub negative: Dfa,
    pub parikh: ParikhVector,
}

pub fn posmatpow_gadget(inst: &MatPowInstance) -> Result<PosMatPowGadget> {
    let (graph, v0, vplus, vminus) = posmat_to_multigraph(inst)?;
    let k: u32 = graph
        .edges()
        .iter()
        .map(|e| e.weight.bits())
        .max()
        .unwrap_or(1)
        .try_into()
        .map_err(|_| Error::size("weights too large to unweight"))?;
    let unweighted = unweight(&graph, k)?;
    let (_, plus_one) = add_one_path(&unweighted, &v0, &vplus)?;
    let (shift_only, _) = add_one_path(&unweighted, &v0, &vminus)?;
    let out_degree_bound = |g: &WeightedMultigraph| {
        (0..g.nodes().len())
            .map(|v| g.edges().iter().filter(|e| e.source == v).count())
            .max()
            .unwrap_or(0)
    };
    let d = out_degree_bound(&plus_one)
        .max(out_degree_bound(&shift_only))
        .max(1);
    let positive = graph_to_dfa(&plus_one, &v0, &vplus, d)?;
    let negative = graph_to_dfa(&shift_only, &v0, &vminus, d)?;
    let length = inst
        .exponent
        .checked_add(2)
        .and_then(|x| x.checked_mul(u64::from(k)))
        .and_then(|x| x.checked_add(2))
        .ok_or_else(|| Error::size("path length overflows"))?;
    let b_count = length
        .checked_mul(d as u64 - 1)
        .ok_or_else(|| Error::size("path length overflows"))?;
    let mut parikh = ParikhVector::new();
    parikh.set("a", BigUint::from(length));
    parikh.set("b", BigUint::from(b_count));
    Ok(PosMatPowGadget {
        positive,
        negative,
        parikh,
    })
}

/// Decides `f(Mⁿ) ≥ 0` through the full reduction pipeline with DP
/// counting.
pub fn posmatpow_decide(inst: &MatPowInstance, guards: &Guards) -> Result<bool> {
    let gadget = posmatpow_gadget(inst)?;
    let plus = count_dfa(&gadget.positive, &gadget.parikh, DfaMethod::Dp, guards)?;
    let minus = count_dfa(&gadget.negative, &gadget.parikh, DfaMethod::Dp, guards)?;
    Ok(plus > minus)
}

/// A grammar over `{a}` generating exactly the subset sums of `values`,
/// of size O(Σ log vᵢ) via doubling nonterminals.
pub fn gen_subsetsum_cfg(values: &[BigUint]) -> Result<Cfg> {
    if values.iter().any(|v| v.is_zero()) {
        return Err(Error::input("subset-sum values must be positive"));
    }
    let max_bit = values.iter().map(|v| v.bits()).max().unwrap_or(1) - 1;
    let mut nonterminals = vec!["S".to_string()];
    let mut productions: Vec<(String, Vec<String>)> = Vec::new();
    for j in 0..=max_bit {
        nonterminals.push(format!("D{j}"));
        if j == 0 {
            productions.push(("D0".into(), vec!["a".into()]));
        } else {
            productions.push((
                format!("D{j}"),
                vec![format!("D{}", j - 1), format!("D{}", j - 1)],
            ));
        }
    }
    let mut top_body = Vec::new();
    for (i, value) in values.iter().enumerate() {
        let name = format!("V{}", i + 1);
        nonterminals.push(name.clone());
        top_body.push(name.clone());
        let bits: Vec<String> = (0..value.bits())
            .filter(|&b| value.bit(b))
            .map(|b| format!("D{b}"))
            .collect();
        productions.push((name.clone(), bits));
        productions.push((name, vec![]));
    }
    productions.push(("S".into(), top_body));
    let nt_refs: Vec<String> = nonterminals;
    Cfg::from_parts(nt_refs, vec!["a".to_string()], "S", &productions)
}
