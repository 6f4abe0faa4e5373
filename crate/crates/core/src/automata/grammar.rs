//! Context-free grammars, normal-form conversion and chart parsing.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};

use super::Letter;

/// A body symbol, resolved to declaration indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Terminal(usize),
    Nonterminal(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Production {
    pub head: usize,
    pub body: Vec<Symbol>,
}

/// A context-free grammar with disjoint declared terminals and
/// nonterminals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cfg {
    nonterminals: Vec<String>,
    terminals: Vec<Letter>,
    start: usize,
    productions: Vec<Production>,
}

impl Cfg {
    pub fn new(
        nonterminals: &[&str],
        terminals: &[&str],
        start: &str,
        productions: &[(&str, &[&str])],
    ) -> Result<Cfg> {
        Cfg::from_parts(
            nonterminals.iter().map(|s| s.to_string()).collect(),
            terminals.iter().map(|s| s.to_string()).collect(),
            start,
            &productions
                .iter()
                .map(|(h, b)| (h.to_string(), b.iter().map(|s| s.to_string()).collect()))
                .collect::<Vec<_>>(),
        )
    }

    pub fn from_parts(
        nonterminals: Vec<String>,
        terminals: Vec<String>,
        start: &str,
        productions: &[(String, Vec<String>)],
    ) -> Result<Cfg> {
        let nt_idx = super::index_names("nonterminal", &nonterminals)?;
        let t_idx = super::index_names("terminal", &terminals)?;
        for t in &terminals {
            if nt_idx.contains_key(t) {
                return Err(Error::input(format!(
                    "symbol {t:?} declared both terminal and nonterminal"
                )));
            }
        }
        let start = *nt_idx
            .get(start)
            .ok_or_else(|| Error::input(format!("start symbol {start:?} not declared")))?;
        let mut resolved = Vec::with_capacity(productions.len());
        for (head, body) in productions {
            let head = *nt_idx
                .get(head)
                .ok_or_else(|| Error::input(format!("production head {head:?} not declared")))?;
            let mut symbols = Vec::with_capacity(body.len());
            for token in body {
                if let Some(&n) = nt_idx.get(token) {
                    symbols.push(Symbol::Nonterminal(n));
                } else if let Some(&t) = t_idx.get(token) {
                    symbols.push(Symbol::Terminal(t));
                } else {
                    return Err(Error::input(format!("body symbol {token:?} not declared")));
                }
            }
            resolved.push(Production {
                head,
                body: symbols,
            });
        }
        Ok(Cfg {
            nonterminals,
            terminals,
            start,
            productions: resolved,
        })
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &[Letter] {
        &self.terminals
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn terminal_index(&self, letter: &str) -> Option<usize> {
        self.terminals.iter().position(|t| t == letter)
    }

    /// Membership by chart parsing over the normal form.
    pub fn accepts(&self, word: &[Letter]) -> Result<bool> {
        let chart = Chart::new(&self.to_normal_form());
        chart.recognizes(word)
    }

    /// Conversion to binary normal form: every body is two nonterminals or
    /// a single terminal, plus a possible ε-production on a dedicated start
    /// symbol that occurs in no body. The language is preserved, including
    /// ε membership.
    pub fn to_normal_form(&self) -> Cfg {
        NormalFormBuilder::new(self).build()
    }
}

/// Fresh-name generator that avoids an existing set deterministically.
struct NameSupply {
    used: HashSet<String>,
}

impl NameSupply {
    fn new(used: impl IntoIterator<Item = String>) -> Self {
        NameSupply {
            used: used.into_iter().collect(),
        }
    }

    fn fresh(&mut self, base: &str) -> String {
        if !self.used.contains(base) {
            self.used.insert(base.to_string());
            return base.to_string();
        }
        let mut k = 1usize;
        loop {
            let candidate = format!("{base}{k}");
            if !self.used.contains(&candidate) {
                self.used.insert(candidate.clone());
                return candidate;
            }
            k += 1;
        }
    }
}

struct NormalFormBuilder<'a> {
    cfg: &'a Cfg,
    names: NameSupply,
    nonterminals: Vec<String>,
    productions: Vec<(usize, Vec<Symbol>)>,
}

impl<'a> NormalFormBuilder<'a> {
    fn new(cfg: &'a Cfg) -> Self {
        NormalFormBuilder {
            cfg,
            names: NameSupply::new(cfg.nonterminals.iter().chain(cfg.terminals.iter()).cloned()),
            nonterminals: cfg.nonterminals.clone(),
            productions: Vec::new(),
        }
    }

    fn add_nonterminal(&mut self, base: &str) -> usize {
        let name = self.names.fresh(base);
        self.nonterminals.push(name);
        self.nonterminals.len() - 1
    }

    fn build(mut self) -> Cfg {
        // Dedicated start symbol.
        let start = self.add_nonterminal("S'");
        self.productions
            .push((start, vec![Symbol::Nonterminal(self.cfg.start)]));
        for p in &self.cfg.productions {
            self.productions.push((p.head, p.body.clone()));
        }

        self.wrap_terminals();
        self.binarize();
        self.eliminate_epsilon(start);
        self.eliminate_units();

        // Deduplicate, keeping first occurrence order.
        let mut seen = HashSet::new();
        let productions: Vec<Production> = self
            .productions
            .iter()
            .filter(|(h, b)| seen.insert((*h, b.clone())))
            .map(|(h, b)| Production {
                head: *h,
                body: b.clone(),
            })
            .collect();

        Cfg {
            nonterminals: self.nonterminals,
            terminals: self.cfg.terminals.clone(),
            start,
            productions,
        }
    }

    /// Terminals within bodies of length ≥ 2 become wrapper nonterminals.
    fn wrap_terminals(&mut self) {
        let mut wrapper: HashMap<usize, usize> = HashMap::new();
        let mut extra = Vec::new();
        for i in 0..self.productions.len() {
            if self.productions[i].1.len() < 2 {
                continue;
            }
            let body = self.productions[i].1.clone();
            let new_body: Vec<Symbol> = body
                .iter()
                .map(|sym| match *sym {
                    Symbol::Terminal(t) => {
                        let nt = *wrapper.entry(t).or_insert_with(|| {
                            let base = format!("T_{}", self.cfg.terminals[t]);
                            let name = self.names.fresh(&base);
                            self.nonterminals.push(name);
                            let id = self.nonterminals.len() - 1;
                            extra.push((id, vec![Symbol::Terminal(t)]));
                            id
                        });
                        Symbol::Nonterminal(nt)
                    }
                    s => s,
                })
                .collect();
            self.productions[i].1 = new_body;
        }
        self.productions.extend(extra);
    }

    /// Bodies longer than two are split with fresh chain nonterminals.
    #[allow(clippy::needless_range_loop)]
    fn binarize(&mut self) {
        let mut out = Vec::new();
        let originals = std::mem::take(&mut self.productions);
        for (head, body) in originals {
            if body.len() <= 2 {
                out.push((head, body));
                continue;
            }
            let mut current = head;
            for i in 0..body.len() - 2 {
                let fresh = self.add_nonterminal("B");
                out.push((current, vec![body[i], Symbol::Nonterminal(fresh)]));
                current = fresh;
            }
            out.push((current, body[body.len() - 2..].to_vec()));
        }
        self.productions = out;
    }

    /// Nullable elimination; ε survives only as a production of `start`.
    fn eliminate_epsilon(&mut self, start: usize) {
        let mut nullable = HashSet::new();
        loop {
            let mut changed = false;
            for (head, body) in &self.productions {
                if nullable.contains(head) {
                    continue;
                }
                let all_nullable = body.iter().all(|s| match s {
                    Symbol::Nonterminal(n) => nullable.contains(n),
                    Symbol::Terminal(_) => false,
                });
                if all_nullable {
                    nullable.insert(*head);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut out = Vec::new();
        for (head, body) in &self.productions {
            // Bodies here have length ≤ 2; expand nullable drop choices.
            let mut variants: Vec<Vec<Symbol>> = vec![vec![]];
            for sym in body {
                let mut next = Vec::new();
                for v in &variants {
                    let mut with = v.clone();
                    with.push(*sym);
                    next.push(with);
                    if let Symbol::Nonterminal(n) = sym {
                        if nullable.contains(n) {
                            next.push(v.clone());
                        }
                    }
                }
                variants = next;
            }
            for v in variants {
                if !v.is_empty() {
                    out.push((*head, v));
                }
            }
        }
        if nullable.contains(&start) {
            out.push((start, vec![]));
        }
        self.productions = out;
    }

    /// Unit-production removal by closure.
    #[allow(clippy::needless_range_loop)]
    fn eliminate_units(&mut self) {
        let n = self.nonterminals.len();
        // unit_reach[a] = set of b with a ⇒* b through unit productions
        let mut unit_reach: Vec<BTreeSet<usize>> = (0..n).map(|i| BTreeSet::from([i])).collect();
        loop {
            let mut changed = false;
            for (head, body) in &self.productions {
                if let [Symbol::Nonterminal(b)] = body[..] {
                    let reachable: Vec<usize> = unit_reach[b].iter().copied().collect();
                    for r in reachable {
                        if unit_reach[*head].insert(r) {
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let originals = std::mem::take(&mut self.productions);
        let non_unit: Vec<&(usize, Vec<Symbol>)> = originals
            .iter()
            .filter(|(_, body)| !matches!(body[..], [Symbol::Nonterminal(_)]))
            .collect();
        let mut out = Vec::new();
        for a in 0..n {
            for &(head, ref body) in &non_unit {
                if unit_reach[a].contains(head) && (a == *head || !body.is_empty()) {
                    out.push((a, body.clone()));
                }
            }
        }
        self.productions = out;
    }
}

/// CYK recognizer over a normal-form grammar.
pub(crate) struct Chart {
    terminals: Vec<Letter>,
    start: usize,
    nt_count: usize,
    accepts_empty: bool,
    // terminal index -> heads
    term_heads: HashMap<usize, Vec<usize>>,
    // (B, C) -> heads of A -> B C
    pair_heads: HashMap<(usize, usize), Vec<usize>>,
}

impl Chart {
    pub(crate) fn new(normal_form: &Cfg) -> Chart {
        let mut term_heads: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut pair_heads: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        let mut accepts_empty = false;
        for p in &normal_form.productions {
            match p.body[..] {
                [] => {
                    if p.head == normal_form.start {
                        accepts_empty = true;
                    }
                }
                [Symbol::Terminal(t)] => term_heads.entry(t).or_default().push(p.head),
                [Symbol::Nonterminal(b), Symbol::Nonterminal(c)] => {
                    pair_heads.entry((b, c)).or_default().push(p.head)
                }
                _ => unreachable!("normal form bodies have length <= 2"),
            }
        }
        Chart {
            terminals: normal_form.terminals.clone(),
            start: normal_form.start,
            nt_count: normal_form.nonterminals.len(),
            accepts_empty,
            term_heads,
            pair_heads,
        }
    }

    pub(crate) fn recognizes(&self, word: &[Letter]) -> Result<bool> {
        let indices: Vec<usize> = word
            .iter()
            .map(|l| {
                self.terminals
                    .iter()
                    .position(|t| t == l)
                    .ok_or_else(|| Error::input(format!("letter {l:?} outside alphabet")))
            })
            .collect::<Result<_>>()?;
        let n = indices.len();
        if n == 0 {
            return Ok(self.accepts_empty);
        }
        // cell(i, len) = set of nonterminals deriving word[i..i+len]
        let mut table = vec![vec![false; self.nt_count]; n * (n + 1)];
        let cell = |i: usize, len: usize| len * n + i;
        for (i, &t) in indices.iter().enumerate() {
            if let Some(heads) = self.term_heads.get(&t) {
                for &h in heads {
                    table[cell(i, 1)][h] = true;
                }
            }
        }
        for len in 2..=n {
            for i in 0..=n - len {
                for split in 1..len {
                    let left = cell(i, split);
                    let right = cell(i + split, len - split);
                    for (&(b, c), heads) in &self.pair_heads {
                        if table[left][b] && table[right][c] {
                            for &h in heads {
                                table[cell(i, len)][h] = true;
                            }
                        }
                    }
                }
            }
        }
        Ok(table[cell(0, n)][self.start])
    }
}
