//! The counting engine: `N(𝒜,p⃗)` for DFA via flow enumeration plus
//! Eulerian-circuit counts, with DP and word-enumeration routes as
//! independent methods, NFA/CFG counting, and the PIC/BitP decisions.
//!
//! The flow route always counts through the well-formed augmentation: the
//! fresh letter contributes a unique weight-1 edge, which anchors circuit
//! rotation classes bijectively to accepted words.

use std::collections::{BTreeSet, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::automata::{Acceptor, Cfg, Chart, Dfa, Nfa, ParikhVector, Word};
use crate::error::{Error, Result};
use crate::guards::Guards;
use crate::multigraph::WeightedMultigraph;

/// Counting method for DFA.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DfaMethod {
    /// Augment, enumerate flows, sum Eulerian-circuit counts. Exact for
    /// arbitrary-precision Parikh vectors; unguarded.
    Best,
    /// Dynamic programming over (state, sub-vector ≤ p⃗); lattice-guarded.
    Dp,
    /// Multiset-permutation walk with acceptance check; norm-guarded.
    Enumerate,
}

/// Counting method for NFA.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NfaMethod {
    DeterminizeDp,
    Enumerate,
}

/// A transition-multiplicity assignment whose induced multigraph is
/// connected and Eulerian; `weights` is aligned with the automaton's
/// transition list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowAssignment {
    pub weights: Vec<BigUint>,
}

/// Enumerates `W(𝒜,p⃗)` for a well-formed DFA, each assignment exactly
/// once, letters in alphabet order and per-letter weak compositions in
/// lexicographic order.
pub fn enumerate_flows(wf_dfa: &Dfa, p: &ParikhVector) -> Result<Vec<FlowAssignment>> {
    let enumerator = FlowEnumerator::new(wf_dfa, p)?;
    let mut flows = Vec::new();
    enumerator.for_each_flow(&mut |weights| {
        flows.push(FlowAssignment {
            weights: weights.to_vec(),
        });
        Ok(())
    })?;
    Ok(flows)
}

/// The edge-weighted multigraph `𝒜^w` induced by a flow assignment
/// (zero-weight transitions are dropped at construction).
pub fn flow_graph(dfa: &Dfa, weights: &[BigUint]) -> WeightedMultigraph {
    let edges: Vec<(String, String, String, BigUint)> = dfa
        .transitions()
        .iter()
        .zip(weights)
        .enumerate()
        .map(|(i, (t, w))| {
            (
                format!("t{i}"),
                dfa.state_name(t.from).to_string(),
                dfa.state_name(t.to).to_string(),
                w.clone(),
            )
        })
        .collect();
    WeightedMultigraph::from_parts(dfa.states().to_vec(), edges)
        .expect("flow graph construction cannot fail")
}

type SlotContinuation<'c> = dyn FnMut(&mut Vec<BigUint>, &mut Vec<BigInt>) -> Result<()> + 'c;

struct FlowEnumerator<'a> {
    dfa: &'a Dfa,
    /// Per letter: transition indices carrying it, in declaration order.
    letter_slots: Vec<Vec<usize>>,
    /// Per letter: target total weight.
    targets: Vec<BigUint>,
    /// `suffix_touch[a][s]` = Σ over letters a' ≥ a touching s of p(a').
    suffix_touch: Vec<Vec<BigUint>>,
    /// Per letter and state: last slot position touching the state.
    last_touch: Vec<Vec<Option<usize>>>,
}

impl<'a> FlowEnumerator<'a> {
    fn new(dfa: &'a Dfa, p: &ParikhVector) -> Result<FlowEnumerator<'a>> {
        if !dfa.is_well_formed() {
            return Err(Error::input(
                "flow enumeration requires a well-formed DFA (initial = unique final)",
            ));
        }
        for letter in p.letters() {
            if dfa.letter_index(letter).is_none() {
                return Err(Error::input(format!(
                    "Parikh letter {letter:?} outside alphabet"
                )));
            }
        }
        let n_letters = dfa.alphabet().len();
        let n_states = dfa.states().len();
        let mut letter_slots = vec![Vec::new(); n_letters];
        for (i, t) in dfa.transitions().iter().enumerate() {
            letter_slots[t.letter].push(i);
        }
        let targets: Vec<BigUint> = dfa.alphabet().iter().map(|a| p.count(a)).collect();
        let mut last_touch = vec![vec![None; n_states]; n_letters];
        for (a, slots) in letter_slots.iter().enumerate() {
            for (pos, &ti) in slots.iter().enumerate() {
                let t = dfa.transitions()[ti];
                last_touch[a][t.from] = Some(pos);
                last_touch[a][t.to] = Some(pos);
            }
        }
        // suffix sums of per-letter budget over the states each letter touches
        let mut suffix_touch = vec![vec![BigUint::zero(); n_states]; n_letters + 1];
        for a in (0..n_letters).rev() {
            for s in 0..n_states {
                let mut sum = suffix_touch[a + 1][s].clone();
                if last_touch[a][s].is_some() {
                    sum += &targets[a];
                }
                suffix_touch[a][s] = sum;
            }
        }
        Ok(FlowEnumerator {
            dfa,
            letter_slots,
            targets,
            suffix_touch,
            last_touch,
        })
    }

    fn n_states(&self) -> usize {
        self.dfa.states().len()
    }

    fn for_each_flow(&self, f: &mut dyn FnMut(&[BigUint]) -> Result<()>) -> Result<()> {
        let mut weights = vec![BigUint::zero(); self.dfa.transitions().len()];
        let mut imbalance = vec![BigInt::zero(); self.n_states()];
        self.rec_letter(0, &mut weights, &mut imbalance, f)
    }

    /// Enumerates the compositions of the first letter; used to partition
    /// work across workers deterministically.
    fn first_letter_prefixes(&self) -> Result<Vec<Vec<BigUint>>> {
        if self.letter_slots.is_empty() {
            return Ok(vec![Vec::new()]);
        }
        let mut prefixes = Vec::new();
        let mut weights = vec![BigUint::zero(); self.dfa.transitions().len()];
        let mut imbalance = vec![BigInt::zero(); self.n_states()];
        let slots = self.letter_slots[0].clone();
        self.rec_slot(
            0,
            &slots,
            0,
            self.targets[0].clone(),
            &mut weights,
            &mut imbalance,
            &mut |w, _| {
                prefixes.push(slots.iter().map(|&ti| w[ti].clone()).collect());
                Ok(())
            },
        )?;
        Ok(prefixes)
    }

    /// Resumes enumeration at `letter` after a first-letter prefix was
    /// applied externally.
    fn run_with_prefix(
        &self,
        prefix: &[BigUint],
        f: &mut dyn FnMut(&[BigUint]) -> Result<()>,
    ) -> Result<()> {
        if self.letter_slots.is_empty() {
            return self.for_each_flow(f);
        }
        let mut weights = vec![BigUint::zero(); self.dfa.transitions().len()];
        let mut imbalance = vec![BigInt::zero(); self.n_states()];
        for (&ti, w) in self.letter_slots[0].iter().zip(prefix) {
            let t = self.dfa.transitions()[ti];
            weights[ti] = w.clone();
            imbalance[t.from] += BigInt::from(w.clone());
            imbalance[t.to] -= BigInt::from(w.clone());
        }
        self.rec_letter(1, &mut weights, &mut imbalance, f)
    }

    fn rec_letter(
        &self,
        letter: usize,
        weights: &mut Vec<BigUint>,
        imbalance: &mut Vec<BigInt>,
        f: &mut dyn FnMut(&[BigUint]) -> Result<()>,
    ) -> Result<()> {
        if letter == self.letter_slots.len() {
            // pruning has enforced zero imbalance; connectivity remains
            if self.support_connected(weights) {
                f(weights)?;
            }
            return Ok(());
        }
        let slots = self.letter_slots[letter].clone();
        self.rec_slot(
            letter,
            &slots,
            0,
            self.targets[letter].clone(),
            weights,
            imbalance,
            &mut |w, imb| self.rec_letter(letter + 1, w, imb, f),
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn rec_slot(
        &self,
        letter: usize,
        slots: &[usize],
        pos: usize,
        remaining: BigUint,
        weights: &mut Vec<BigUint>,
        imbalance: &mut Vec<BigInt>,
        cont: &mut SlotContinuation<'_>,
    ) -> Result<()> {
        if pos == slots.len() {
            if remaining.is_zero() {
                return cont(weights, imbalance);
            }
            return Ok(()); // letter has no capacity left
        }
        let last = pos + 1 == slots.len();
        let mut value = if last {
            remaining.clone()
        } else {
            BigUint::zero()
        };
        loop {
            let rest = &remaining - &value;
            self.assign(slots[pos], &value, weights, imbalance, false);
            if self.feasible(letter, pos + 1, &rest, imbalance) {
                self.rec_slot(letter, slots, pos + 1, rest, weights, imbalance, cont)?;
            }
            self.assign(slots[pos], &value, weights, imbalance, true);
            if last || value == remaining {
                return Ok(());
            }
            value += 1u32;
        }
    }

    fn assign(
        &self,
        slot: usize,
        value: &BigUint,
        weights: &mut [BigUint],
        imbalance: &mut [BigInt],
        undo: bool,
    ) {
        let t = self.dfa.transitions()[slot];
        let delta = BigInt::from(value.clone());
        if undo {
            weights[slot] = BigUint::zero();
            imbalance[t.from] -= &delta;
            imbalance[t.to] += &delta;
        } else {
            weights[slot] = value.clone();
            imbalance[t.from] += &delta;
            imbalance[t.to] -= &delta;
        }
    }

    /// Every residual imbalance must be coverable by weight still
    /// assignable among transitions touching that state.
    fn feasible(
        &self,
        letter: usize,
        next_pos: usize,
        remaining: &BigUint,
        imbalance: &[BigInt],
    ) -> bool {
        for (s, imb) in imbalance.iter().enumerate() {
            if imb.is_zero() {
                continue;
            }
            let mut bound = self.suffix_touch[letter + 1][s].clone();
            if matches!(self.last_touch[letter][s], Some(p) if p >= next_pos) {
                bound += remaining;
            }
            if imb.abs().to_biguint().unwrap() > bound {
                return false;
            }
        }
        true
    }

    fn support_connected(&self, weights: &[BigUint]) -> bool {
        let n = self.n_states();
        let mut touched = vec![false; n];
        let mut fwd: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut bwd: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut any = false;
        for (i, t) in self.dfa.transitions().iter().enumerate() {
            if !weights[i].is_zero() {
                touched[t.from] = true;
                touched[t.to] = true;
                fwd[t.from].push(t.to);
                bwd[t.to].push(t.from);
                any = true;
            }
        }
        if !any {
            return true;
        }
        let start = touched.iter().position(|&t| t).unwrap();
        let reach = |adj: &Vec<Vec<usize>>| {
            let mut seen = vec![false; n];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen
        };
        let f = reach(&fwd);
        let b = reach(&bwd);
        (0..n).all(|s| !touched[s] || (f[s] && b[s]))
    }
}

fn validate_letters(alphabet: &[String], p: &ParikhVector) -> Result<()> {
    for letter in p.letters() {
        if !alphabet.iter().any(|a| a == letter) {
            return Err(Error::input(format!(
                "Parikh letter {letter:?} outside alphabet"
            )));
        }
    }
    Ok(())
}

/// `N(𝒜,p⃗)` for a DFA.
pub fn count_dfa(
    dfa: &Dfa,
    p: &ParikhVector,
    method: DfaMethod,
    guards: &Guards,
) -> Result<BigUint> {
    count_dfa_parallel(dfa, p, method, guards, 1)
}

/// As [`count_dfa`], with the flow sum of the `Best` method partitioned
/// over `workers` threads by the first letter's composition. The result is
/// identical for any worker count.
pub fn count_dfa_parallel(
    dfa: &Dfa,
    p: &ParikhVector,
    method: DfaMethod,
    guards: &Guards,
    workers: usize,
) -> Result<BigUint> {
    validate_letters(dfa.alphabet(), p)?;
    match method {
        DfaMethod::Best => count_dfa_best(dfa, p, workers.max(1)),
        DfaMethod::Dp => count_dfa_dp(dfa, p, guards),
        DfaMethod::Enumerate => count_dfa_enumerate(dfa, p, guards),
    }
}

fn count_dfa_best(dfa: &Dfa, p: &ParikhVector, workers: usize) -> Result<BigUint> {
    let (augmented, p2) = dfa.augment_well_formed(p);
    let enumerator = FlowEnumerator::new(&augmented, &p2)?;
    if workers <= 1 {
        let mut total = BigUint::zero();
        enumerator.for_each_flow(&mut |weights| {
            total += flow_graph(&augmented, weights).euler_count()?;
            Ok(())
        })?;
        return Ok(total);
    }
    let prefixes = enumerator.first_letter_prefixes()?;
    let chunks: Vec<Vec<&Vec<BigUint>>> = (0..workers)
        .map(|w| prefixes.iter().skip(w).step_by(workers).collect())
        .collect();
    let partials: Vec<Result<BigUint>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|chunk| {
                let enumerator = &enumerator;
                let augmented = &augmented;
                scope.spawn(move || {
                    let mut sum = BigUint::zero();
                    for prefix in chunk {
                        enumerator.run_with_prefix(prefix, &mut |weights| {
                            sum += flow_graph(augmented, weights).euler_count()?;
                            Ok(())
                        })?;
                    }
                    Ok(sum)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut total = BigUint::zero();
    for partial in partials {
        total += partial?;
    }
    Ok(total)
}

/// Sparse table over (sub-vector, state); only reachable entries are
/// materialized, the guard bounds the nominal lattice `∏(p⃗(a)+1)`.
fn count_dfa_dp(dfa: &Dfa, p: &ParikhVector, guards: &Guards) -> Result<BigUint> {
    let mut lattice = BigUint::one();
    for a in dfa.alphabet() {
        lattice *= p.count(a) + 1u32;
    }
    if lattice > BigUint::from(guards.dp_lattice_cap) {
        return Err(Error::size(format!(
            "DP lattice {lattice} exceeds cap {}",
            guards.dp_lattice_cap
        )));
    }
    let radix: Vec<u64> = dfa
        .alphabet()
        .iter()
        .map(|a| p.count(a).to_u64().unwrap() + 1)
        .collect();
    let mut stride = vec![1u64; radix.len()];
    for i in 1..radix.len() {
        stride[i] = stride[i - 1]
            .checked_mul(radix[i - 1])
            .ok_or_else(|| Error::size("DP lattice overflows"))?;
    }
    let norm = p
        .norm()
        .to_u64()
        .ok_or_else(|| Error::size("Parikh norm too large for DP"))?;
    let full: u64 = radix.iter().zip(&stride).map(|(r, s)| (r - 1) * s).sum();
    let mut outgoing: Vec<Vec<(usize, usize)>> = vec![Vec::new(); dfa.states().len()];
    for t in dfa.transitions() {
        outgoing[t.from].push((t.letter, t.to));
    }
    let mut layer: HashMap<(u64, usize), BigUint> =
        HashMap::from([((0u64, dfa.initial()), BigUint::one())]);
    for _ in 0..norm {
        let mut next: HashMap<(u64, usize), BigUint> = HashMap::new();
        for ((idx, state), cnt) in &layer {
            for &(letter, to) in &outgoing[*state] {
                let digit = (idx / stride[letter]) % radix[letter];
                if digit + 1 < radix[letter] {
                    *next
                        .entry((idx + stride[letter], to))
                        .or_insert_with(BigUint::zero) += cnt;
                }
            }
        }
        layer = next;
    }
    let mut total = BigUint::zero();
    for &f in dfa.finals() {
        if let Some(cnt) = layer.get(&(full, f)) {
            total += cnt;
        }
    }
    Ok(total)
}

fn check_enumeration_norm(p: &ParikhVector, guards: &Guards) -> Result<Vec<(String, u64)>> {
    if p.norm() > BigUint::from(guards.enumeration_norm_cap) {
        return Err(Error::size(format!(
            "enumeration requires ‖p⃗‖ ≤ {}, got {}",
            guards.enumeration_norm_cap,
            p.norm()
        )));
    }
    Ok(p.iter()
        .map(|(l, c)| (l.clone(), c.to_u64().unwrap()))
        .collect())
}

fn count_dfa_enumerate(dfa: &Dfa, p: &ParikhVector, guards: &Guards) -> Result<BigUint> {
    let counts = check_enumeration_norm(p, guards)?;
    let letters: Vec<usize> = counts
        .iter()
        .map(|(l, _)| dfa.letter_index(l).unwrap())
        .collect();
    let mut remaining: Vec<u64> = counts.iter().map(|(_, c)| *c).collect();
    let left: u64 = remaining.iter().sum();
    fn rec(
        dfa: &Dfa,
        letters: &[usize],
        remaining: &mut [u64],
        state: usize,
        left: u64,
    ) -> BigUint {
        if left == 0 {
            return if dfa.finals().contains(&state) {
                BigUint::one()
            } else {
                BigUint::zero()
            };
        }
        let mut total = BigUint::zero();
        for i in 0..letters.len() {
            if remaining[i] == 0 {
                continue;
            }
            if let Some(next) = dfa.step(state, letters[i]) {
                remaining[i] -= 1;
                total += rec(dfa, letters, remaining, next, left - 1);
                remaining[i] += 1;
            }
        }
        total
    }
    Ok(rec(dfa, &letters, &mut remaining, dfa.initial(), left))
}

/// Number of accepted **words** (not runs) with image `p⃗`.
pub fn count_nfa(
    nfa: &Nfa,
    p: &ParikhVector,
    method: NfaMethod,
    guards: &Guards,
) -> Result<BigUint> {
    validate_letters(nfa.alphabet(), p)?;
    match method {
        NfaMethod::DeterminizeDp => count_dfa_dp(&nfa.determinize(), p, guards),
        NfaMethod::Enumerate => count_nfa_enumerate(nfa, p, guards),
    }
}

fn count_nfa_enumerate(nfa: &Nfa, p: &ParikhVector, guards: &Guards) -> Result<BigUint> {
    let counts = check_enumeration_norm(p, guards)?;
    let letters: Vec<usize> = counts
        .iter()
        .map(|(l, _)| nfa.letter_index(l).unwrap())
        .collect();
    let mut remaining: Vec<u64> = counts.iter().map(|(_, c)| *c).collect();
    let left: u64 = remaining.iter().sum();
    fn rec(
        nfa: &Nfa,
        letters: &[usize],
        remaining: &mut [u64],
        states: &BTreeSet<usize>,
        left: u64,
    ) -> BigUint {
        if left == 0 {
            return if states.iter().any(|s| nfa.finals().contains(s)) {
                BigUint::one()
            } else {
                BigUint::zero()
            };
        }
        let mut total = BigUint::zero();
        for i in 0..letters.len() {
            if remaining[i] == 0 {
                continue;
            }
            let mut next = BTreeSet::new();
            for &s in states {
                next.extend(nfa.successors(s, letters[i]).iter().copied());
            }
            if next.is_empty() {
                continue;
            }
            remaining[i] -= 1;
            total += rec(nfa, letters, remaining, &next, left - 1);
            remaining[i] += 1;
        }
        total
    }
    let start = BTreeSet::from([nfa.initial()]);
    Ok(rec(nfa, &letters, &mut remaining, &start, left))
}

/// Number of words with image `p⃗` generated by the grammar
/// (ambiguity-safe: words, not derivations), by enumeration plus chart
/// parsing.
pub fn count_cfg(cfg: &Cfg, p: &ParikhVector, guards: &Guards) -> Result<BigUint> {
    validate_letters(cfg.terminals(), p)?;
    let counts = check_enumeration_norm(p, guards)?;
    let chart = Chart::new(&cfg.to_normal_form());
    let mut remaining: Vec<u64> = counts.iter().map(|(_, c)| *c).collect();
    let left: u64 = remaining.iter().sum();
    let mut word: Word = Vec::new();
    fn rec(
        chart: &Chart,
        counts: &[(String, u64)],
        remaining: &mut [u64],
        word: &mut Word,
        left: u64,
    ) -> Result<BigUint> {
        if left == 0 {
            return Ok(if chart.recognizes(word)? {
                BigUint::one()
            } else {
                BigUint::zero()
            });
        }
        let mut total = BigUint::zero();
        for i in 0..counts.len() {
            if remaining[i] == 0 {
                continue;
            }
            remaining[i] -= 1;
            word.push(counts[i].0.clone());
            total += rec(chart, counts, remaining, word, left - 1)?;
            word.pop();
            remaining[i] += 1;
        }
        Ok(total)
    }
    rec(&chart, &counts, &mut remaining, &mut word, left)
}

/// `N(𝒜,p⃗)` with the default method per acceptor kind (DFA best,
/// NFA determinize+DP, CFG enumerate).
pub fn count_acceptor(acceptor: &Acceptor, p: &ParikhVector, guards: &Guards) -> Result<BigUint> {
    match acceptor {
        Acceptor::Dfa(d) => count_dfa(d, p, DfaMethod::Best, guards),
        Acceptor::Nfa(n) => count_nfa(n, p, NfaMethod::DeterminizeDp, guards),
        Acceptor::Cfg(g) => count_cfg(g, p, guards),
    }
}

/// `N(a,p⃗) > N(b,p⃗)`, strict.
pub fn pic(a: &Acceptor, b: &Acceptor, p: &ParikhVector, guards: &Guards) -> Result<bool> {
    if a.alphabet_set() != b.alphabet_set() {
        return Err(Error::input(
            "PIC requires both acceptors over the same alphabet",
        ));
    }
    Ok(count_acceptor(a, p, guards)? > count_acceptor(b, p, guards)?)
}

/// Bit `i` of `N(a,p⃗)`; bit 0 is least significant.
pub fn bitp(a: &Acceptor, p: &ParikhVector, i: u64, guards: &Guards) -> Result<bool> {
    Ok(count_acceptor(a, p, guards)?.bit(i))
}
