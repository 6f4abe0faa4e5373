//! Finite-state acceptors, words and Parikh images.
//!
//! State and letter identifiers are arbitrary non-empty UTF-8 tokens
//! without whitespace; declaration order is preserved everywhere so that
//! all downstream enumeration is deterministic.

mod grammar;

pub(crate) use grammar::Chart;
pub use grammar::{Cfg, Production, Symbol};

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Letter = String;
pub type Word = Vec<Letter>;

/// Builds a word of single-character letters, e.g. `"aba"` → `[a, b, a]`.
pub fn word_of_chars(s: &str) -> Word {
    s.chars().map(|c| c.to_string()).collect()
}

/// Letter-occurrence counts of a word.
pub fn parikh(word: &[Letter]) -> ParikhVector {
    let mut v = ParikhVector::new();
    for letter in word {
        v.add(letter, &BigUint::one());
    }
    v
}

/// A target occurrence-count vector: letter → count, absent letter = 0.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParikhVector {
    counts: BTreeMap<Letter, BigUint>,
}

impl ParikhVector {
    pub fn new() -> Self {
        ParikhVector::default()
    }

    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, u64)>,
        S: Into<String>,
    {
        let mut v = ParikhVector::new();
        for (letter, count) in pairs {
            v.set(letter.into(), BigUint::from(count));
        }
        v
    }

    /// Zero counts are normalized away so that `p == q` means equal images.
    pub fn set(&mut self, letter: impl Into<String>, count: BigUint) {
        let letter = letter.into();
        if count.is_zero() {
            self.counts.remove(&letter);
        } else {
            self.counts.insert(letter, count);
        }
    }

    pub fn add(&mut self, letter: &str, amount: &BigUint) {
        if amount.is_zero() {
            return;
        }
        *self
            .counts
            .entry(letter.to_string())
            .or_insert_with(BigUint::zero) += amount;
    }

    pub fn count(&self, letter: &str) -> BigUint {
        self.counts
            .get(letter)
            .cloned()
            .unwrap_or_else(BigUint::zero)
    }

    /// Sum of all counts (`‖p⃗‖`).
    pub fn norm(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = &Letter> {
        self.counts.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Letter, &BigUint)> {
        self.counts.iter()
    }

    /// Componentwise sum.
    pub fn plus(&self, other: &ParikhVector) -> ParikhVector {
        let mut out = self.clone();
        for (letter, count) in other.iter() {
            out.add(letter, count);
        }
        out
    }
}

impl fmt::Display for ParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (letter, count) in &self.counts {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{letter}={count}")?;
            first = false;
        }
        Ok(())
    }
}

fn check_identifier(kind: &str, token: &str) -> Result<()> {
    if token.is_empty() {
        return Err(Error::input(format!("empty {kind} identifier")));
    }
    if token.chars().any(|c| c.is_whitespace()) {
        return Err(Error::input(format!(
            "{kind} identifier {token:?} contains whitespace"
        )));
    }
    Ok(())
}

fn index_names(kind: &str, names: &[String]) -> Result<HashMap<String, usize>> {
    let mut map = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        check_identifier(kind, name)?;
        if map.insert(name.clone(), i).is_some() {
            return Err(Error::input(format!("duplicate {kind} {name:?}")));
        }
    }
    Ok(map)
}

/// A labelled transition, all parts resolved to declaration indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transition {
    pub from: usize,
    pub letter: usize,
    pub to: usize,
}

/// A deterministic finite automaton: per (state, letter) at most one
/// outgoing transition. Missing transitions reject.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<Letter>,
    states: Vec<String>,
    initial: usize,
    finals: BTreeSet<usize>,
    transitions: Vec<Transition>,
    step: HashMap<(usize, usize), usize>,
}

impl Dfa {
    pub fn new(
        alphabet: &[&str],
        states: &[&str],
        initial: &str,
        finals: &[&str],
        transitions: &[(&str, &str, &str)],
    ) -> Result<Dfa> {
        Dfa::from_parts(
            alphabet.iter().map(|s| s.to_string()).collect(),
            states.iter().map(|s| s.to_string()).collect(),
            initial,
            &finals.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            &transitions
                .iter()
                .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
                .collect::<Vec<_>>(),
        )
    }

    pub fn from_parts(
        alphabet: Vec<String>,
        states: Vec<String>,
        initial: &str,
        finals: &[String],
        transitions: &[(String, String, String)],
    ) -> Result<Dfa> {
        let (alphabet, states, initial, finals, transitions) =
            resolve_automaton_parts(alphabet, states, initial, finals, transitions)?;
        let mut step = HashMap::new();
        for (i, t) in transitions.iter().enumerate() {
            if step.insert((t.from, t.letter), i).is_some() {
                return Err(Error::input(format!(
                    "determinism violated: duplicate transition from {:?} on {:?}",
                    states[t.from], alphabet[t.letter]
                )));
            }
        }
        Ok(Dfa {
            alphabet,
            states,
            initial,
            finals,
            transitions,
            step,
        })
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn state_name(&self, i: usize) -> &str {
        &self.states[i]
    }

    pub fn letter_name(&self, i: usize) -> &str {
        &self.alphabet[i]
    }

    pub fn letter_index(&self, letter: &str) -> Option<usize> {
        self.alphabet.iter().position(|l| l == letter)
    }

    pub fn state_index(&self, state: &str) -> Option<usize> {
        self.states.iter().position(|s| s == state)
    }

    /// Successor under one letter, if defined.
    pub fn step(&self, state: usize, letter: usize) -> Option<usize> {
        self.step
            .get(&(state, letter))
            .map(|&i| self.transitions[i].to)
    }

    /// Initial state is the unique final state.
    pub fn is_well_formed(&self) -> bool {
        self.finals.len() == 1 && self.finals.contains(&self.initial)
    }

    pub fn accepts(&self, word: &[Letter]) -> Result<bool> {
        let mut state = self.initial;
        for letter in word {
            let li = self
                .letter_index(letter)
                .ok_or_else(|| Error::input(format!("letter {letter:?} outside alphabet")))?;
            match self.step(state, li) {
                Some(next) => state = next,
                None => return Ok(false),
            }
        }
        Ok(self.finals.contains(&state))
    }

    /// Reinterprets the automaton as an NFA over the same structure.
    pub fn as_nfa(&self) -> Nfa {
        Nfa::from_resolved(
            self.alphabet.clone(),
            self.states.clone(),
            self.initial,
            self.finals.clone(),
            self.transitions.clone(),
        )
    }

    /// Well-formed augmentation: a fresh letter `b` (the lexicographically
    /// smallest unused `##`-prefixed identifier), transitions `(q_f, b, q0)`
    /// for every final state, and the initial state as unique final state.
    /// The vector is extended with `b ↦ 1`. Counting words of the result
    /// that end in `b` recovers the original count.
    pub fn augment_well_formed(&self, p: &ParikhVector) -> (Dfa, ParikhVector) {
        let fresh = fresh_letter(&self.alphabet);
        let mut alphabet = self.alphabet.clone();
        alphabet.push(fresh.clone());
        let fresh_idx = alphabet.len() - 1;
        let mut transitions = self.transitions.clone();
        for &f in &self.finals {
            transitions.push(Transition {
                from: f,
                letter: fresh_idx,
                to: self.initial,
            });
        }
        let mut step = HashMap::new();
        for (i, t) in transitions.iter().enumerate() {
            step.insert((t.from, t.letter), i);
        }
        let augmented = Dfa {
            alphabet,
            states: self.states.clone(),
            initial: self.initial,
            finals: BTreeSet::from([self.initial]),
            transitions,
            step,
        };
        let mut p2 = p.clone();
        p2.set(fresh, BigUint::one());
        (augmented, p2)
    }
}

/// Smallest unused `##a…a` identifier; lexicographically least among all
/// unused `##`-prefixed lowercase identifiers.
fn fresh_letter(alphabet: &[Letter]) -> Letter {
    let mut k = 1;
    loop {
        let candidate = format!("##{}", "a".repeat(k));
        if !alphabet.contains(&candidate) {
            return candidate;
        }
        k += 1;
    }
}

type ResolvedParts = (
    Vec<Letter>,
    Vec<String>,
    usize,
    BTreeSet<usize>,
    Vec<Transition>,
);

fn resolve_automaton_parts(
    alphabet: Vec<String>,
    states: Vec<String>,
    initial: &str,
    finals: &[String],
    transitions: &[(String, String, String)],
) -> Result<ResolvedParts> {
    let letter_idx = index_names("letter", &alphabet)?;
    let state_idx = index_names("state", &states)?;
    let initial = *state_idx
        .get(initial)
        .ok_or_else(|| Error::input(format!("initial state {initial:?} not declared")))?;
    let mut final_set = BTreeSet::new();
    for f in finals {
        let i = *state_idx
            .get(f)
            .ok_or_else(|| Error::input(format!("final state {f:?} not declared")))?;
        final_set.insert(i);
    }
    let mut resolved = Vec::with_capacity(transitions.len());
    for (src, letter, dst) in transitions {
        let from = *state_idx
            .get(src)
            .ok_or_else(|| Error::input(format!("transition source {src:?} not declared")))?;
        let to = *state_idx
            .get(dst)
            .ok_or_else(|| Error::input(format!("transition target {dst:?} not declared")))?;
        let letter = *letter_idx
            .get(letter)
            .ok_or_else(|| Error::input(format!("transition letter {letter:?} not declared")))?;
        resolved.push(Transition { from, letter, to });
    }
    Ok((alphabet, states, initial, final_set, resolved))
}

/// A nondeterministic finite automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Vec<Letter>,
    states: Vec<String>,
    initial: usize,
    finals: BTreeSet<usize>,
    transitions: Vec<Transition>,
    step: HashMap<(usize, usize), Vec<usize>>,
}

impl Nfa {
    pub fn new(
        alphabet: &[&str],
        states: &[&str],
        initial: &str,
        finals: &[&str],
        transitions: &[(&str, &str, &str)],
    ) -> Result<Nfa> {
        Nfa::from_parts(
            alphabet.iter().map(|s| s.to_string()).collect(),
            states.iter().map(|s| s.to_string()).collect(),
            initial,
            &finals.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            &transitions
                .iter()
                .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
                .collect::<Vec<_>>(),
        )
    }

    pub fn from_parts(
        alphabet: Vec<String>,
        states: Vec<String>,
        initial: &str,
        finals: &[String],
        transitions: &[(String, String, String)],
    ) -> Result<Nfa> {
        let (alphabet, states, initial, finals, transitions) =
            resolve_automaton_parts(alphabet, states, initial, finals, transitions)?;
        Ok(Nfa::from_resolved(
            alphabet,
            states,
            initial,
            finals,
            transitions,
        ))
    }

    fn from_resolved(
        alphabet: Vec<Letter>,
        states: Vec<String>,
        initial: usize,
        finals: BTreeSet<usize>,
        transitions: Vec<Transition>,
    ) -> Nfa {
        let mut step: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for t in &transitions {
            step.entry((t.from, t.letter)).or_default().push(t.to);
        }
        Nfa {
            alphabet,
            states,
            initial,
            finals,
            transitions,
            step,
        }
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn letter_index(&self, letter: &str) -> Option<usize> {
        self.alphabet.iter().position(|l| l == letter)
    }

    pub fn state_index(&self, state: &str) -> Option<usize> {
        self.states.iter().position(|s| s == state)
    }

    pub fn successors(&self, state: usize, letter: usize) -> &[usize] {
        self.step
            .get(&(state, letter))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn accepts(&self, word: &[Letter]) -> Result<bool> {
        let mut current: BTreeSet<usize> = BTreeSet::from([self.initial]);
        for letter in word {
            let li = self
                .letter_index(letter)
                .ok_or_else(|| Error::input(format!("letter {letter:?} outside alphabet")))?;
            let mut next = BTreeSet::new();
            for &s in &current {
                next.extend(self.successors(s, li).iter().copied());
            }
            current = next;
            if current.is_empty() {
                return Ok(false);
            }
        }
        Ok(current.iter().any(|s| self.finals.contains(s)))
    }

    /// Subset construction over reachable subsets. The empty subset is left
    /// implicit (a missing transition), so the result is a partial DFA over
    /// exactly the reachable non-empty subsets.
    pub fn determinize(&self) -> Dfa {
        let mut subset_index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::new();
        let start = vec![self.initial];
        subset_index.insert(start.clone(), 0);
        subsets.push(start);
        queue.push_back(0);
        let mut transitions: Vec<(usize, usize, usize)> = Vec::new();
        while let Some(idx) = queue.pop_front() {
            let subset = subsets[idx].clone();
            for li in 0..self.alphabet.len() {
                let mut next = BTreeSet::new();
                for &s in &subset {
                    next.extend(self.successors(s, li).iter().copied());
                }
                if next.is_empty() {
                    continue;
                }
                let key: Vec<usize> = next.into_iter().collect();
                let target = match subset_index.get(&key) {
                    Some(&t) => t,
                    None => {
                        let t = subsets.len();
                        subset_index.insert(key.clone(), t);
                        subsets.push(key);
                        queue.push_back(t);
                        t
                    }
                };
                transitions.push((idx, li, target));
            }
        }
        let names: Vec<String> = subsets
            .iter()
            .map(|subset| {
                let inner: Vec<&str> = subset.iter().map(|&s| self.states[s].as_str()).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect();
        let finals: BTreeSet<usize> = subsets
            .iter()
            .enumerate()
            .filter(|(_, subset)| subset.iter().any(|s| self.finals.contains(s)))
            .map(|(i, _)| i)
            .collect();
        let resolved: Vec<Transition> = transitions
            .iter()
            .map(|&(from, letter, to)| Transition { from, letter, to })
            .collect();
        let mut step = HashMap::new();
        for (i, t) in resolved.iter().enumerate() {
            step.insert((t.from, t.letter), i);
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            states: names,
            initial: 0,
            finals,
            transitions: resolved,
            step,
        }
    }
}

/// A language acceptor of any supported kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Acceptor {
    Dfa(Dfa),
    Nfa(Nfa),
    Cfg(Cfg),
}

impl Acceptor {
    pub fn alphabet(&self) -> Vec<Letter> {
        match self {
            Acceptor::Dfa(d) => d.alphabet().to_vec(),
            Acceptor::Nfa(n) => n.alphabet().to_vec(),
            Acceptor::Cfg(g) => g.terminals().to_vec(),
        }
    }

    pub fn alphabet_set(&self) -> BTreeSet<Letter> {
        self.alphabet().into_iter().collect()
    }

    pub fn accepts(&self, word: &[Letter]) -> Result<bool> {
        match self {
            Acceptor::Dfa(d) => d.accepts(word),
            Acceptor::Nfa(n) => n.accepts(word),
            Acceptor::Cfg(g) => g.accepts(word),
        }
    }
}
