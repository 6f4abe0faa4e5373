//! Text formats for models and vectors. Line-oriented and
//! whitespace-split; blank lines are skipped (identifiers may contain any
//! non-whitespace characters, so there is no comment syntax); parse
//! errors carry line numbers.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use parikh_core::{Acceptor, Cfg, CostChain, Dfa, Nfa, ParikhVector};

#[derive(Debug)]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: Some(line),
            message: message.into(),
        }
    }

    fn whole(message: impl Into<String>) -> ParseError {
        ParseError {
            line: None,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

type Lines<'a> = Vec<(usize, Vec<&'a str>)>;

fn significant_lines(text: &str) -> Lines<'_> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| (i, l.split_whitespace().collect()))
        .collect()
}

fn keyword_line<'a>(
    lines: &'a Lines<'a>,
    index: usize,
    keyword: &str,
) -> Result<(usize, &'a [&'a str]), ParseError> {
    let (line_no, tokens) = lines
        .get(index)
        .ok_or_else(|| ParseError::whole(format!("missing {keyword:?} line")))?;
    if tokens[0] != keyword {
        return Err(ParseError::at(
            *line_no,
            format!("expected {keyword:?}, found {:?}", tokens[0]),
        ));
    }
    Ok((*line_no, &tokens[1..]))
}

/// Parses a model file into an acceptor; the first line must be one of
/// `dfa`, `nfa`, `cfg`.
pub fn parse_acceptor(text: &str) -> Result<Acceptor, ParseError> {
    let lines = significant_lines(text);
    let (first_line, first) = lines
        .first()
        .ok_or_else(|| ParseError::whole("empty model file"))?;
    match first[0] {
        "dfa" | "nfa" => parse_finite_automaton(&lines, first[0] == "dfa"),
        "cfg" => parse_cfg(&lines),
        other => Err(ParseError::at(
            *first_line,
            format!("unknown model kind {other:?} (expected dfa, nfa or cfg)"),
        )),
    }
}

fn parse_finite_automaton(lines: &Lines, deterministic: bool) -> Result<Acceptor, ParseError> {
    let (_, alphabet) = keyword_line(lines, 1, "alphabet")?;
    let (_, states) = keyword_line(lines, 2, "states")?;
    let (initial_line, initial) = keyword_line(lines, 3, "initial")?;
    if initial.len() != 1 {
        return Err(ParseError::at(
            initial_line,
            "expected exactly one initial state",
        ));
    }
    let (_, finals) = keyword_line(lines, 4, "final")?;
    let mut transitions = Vec::new();
    for (line_no, tokens) in &lines[5..] {
        if tokens.len() != 3 {
            return Err(ParseError::at(
                *line_no,
                format!("expected `src letter dst`, found {} tokens", tokens.len()),
            ));
        }
        transitions.push((
            tokens[0].to_string(),
            tokens[1].to_string(),
            tokens[2].to_string(),
        ));
    }
    let alphabet: Vec<String> = alphabet.iter().map(|s| s.to_string()).collect();
    let states: Vec<String> = states.iter().map(|s| s.to_string()).collect();
    let finals: Vec<String> = finals.iter().map(|s| s.to_string()).collect();
    if deterministic {
        Dfa::from_parts(alphabet, states, initial[0], &finals, &transitions)
            .map(Acceptor::Dfa)
            .map_err(|e| ParseError::whole(e.to_string()))
    } else {
        Nfa::from_parts(alphabet, states, initial[0], &finals, &transitions)
            .map(Acceptor::Nfa)
            .map_err(|e| ParseError::whole(e.to_string()))
    }
}

fn parse_cfg(lines: &Lines) -> Result<Acceptor, ParseError> {
    let (_, terminals) = keyword_line(lines, 1, "terminals")?;
    let (start_line, start) = keyword_line(lines, 2, "start")?;
    if start.len() != 1 {
        return Err(ParseError::at(
            start_line,
            "expected exactly one start symbol",
        ));
    }
    let start = start[0].to_string();
    let terminals: Vec<String> = terminals.iter().map(|s| s.to_string()).collect();
    // first pass: heads declare the nonterminals
    let mut nonterminals: Vec<String> = vec![start.clone()];
    let mut rules: Vec<(usize, String, Vec<Vec<String>>)> = Vec::new();
    for (line_no, tokens) in &lines[3..] {
        let arrow = tokens
            .iter()
            .position(|&t| t == "->")
            .ok_or_else(|| ParseError::at(*line_no, "expected a production `head -> body`"))?;
        if arrow != 1 {
            return Err(ParseError::at(
                *line_no,
                "expected exactly one head symbol before `->`",
            ));
        }
        let head = tokens[0].to_string();
        if !nonterminals.contains(&head) {
            nonterminals.push(head.clone());
        }
        let mut alternatives: Vec<Vec<String>> = vec![Vec::new()];
        for &token in &tokens[2..] {
            if token == "|" {
                alternatives.push(Vec::new());
            } else {
                alternatives.last_mut().unwrap().push(token.to_string());
            }
        }
        rules.push((*line_no, head, alternatives));
    }
    let mut productions: Vec<(String, Vec<String>)> = Vec::new();
    for (line_no, head, alternatives) in rules {
        for body in alternatives {
            for symbol in &body {
                if !nonterminals.contains(symbol) && !terminals.contains(symbol) {
                    return Err(ParseError::at(
                        line_no,
                        format!("undeclared symbol {symbol:?} in production body"),
                    ));
                }
            }
            productions.push((head.clone(), body));
        }
    }
    Cfg::from_parts(nonterminals, terminals, &start, &productions)
        .map(Acceptor::Cfg)
        .map_err(|e| ParseError::whole(e.to_string()))
}

/// Parses a probability or threshold literal: `m/d` or a plain integer.
/// Decimal notation is rejected, not rounded.
pub fn parse_rational(token: &str) -> Result<BigRational, ParseError> {
    if token.contains('.') {
        return Err(ParseError::whole(format!(
            "decimal literal {token:?} rejected; probabilities must be integer fractions m/d"
        )));
    }
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token, "1"),
    };
    let num = BigInt::parse_bytes(num.as_bytes(), 10)
        .ok_or_else(|| ParseError::whole(format!("bad integer {num:?}")))?;
    let den = BigInt::parse_bytes(den.as_bytes(), 10)
        .ok_or_else(|| ParseError::whole(format!("bad integer {den:?}")))?;
    if den == BigInt::from(0) {
        return Err(ParseError::whole("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// Parses a cost-chain file. States appear in first-use order (initial,
/// target, then edge endpoints); a missing target self-loop is inserted
/// with a warning on stderr.
pub fn parse_costchain(text: &str) -> Result<CostChain, ParseError> {
    let lines = significant_lines(text);
    let (first_line, first) = lines
        .first()
        .ok_or_else(|| ParseError::whole("empty model file"))?;
    if first[0] != "costchain" {
        return Err(ParseError::at(
            *first_line,
            format!("expected kind `costchain`, found {:?}", first[0]),
        ));
    }
    let (initial_line, initial) = keyword_line(&lines, 1, "initial")?;
    if initial.len() != 1 {
        return Err(ParseError::at(
            initial_line,
            "expected exactly one initial state",
        ));
    }
    let (target_line, target) = keyword_line(&lines, 2, "target")?;
    if target.len() != 1 {
        return Err(ParseError::at(
            target_line,
            "expected exactly one target state",
        ));
    }
    let initial = initial[0].to_string();
    let target = target[0].to_string();
    let mut states: Vec<String> = vec![initial.clone()];
    if target != initial {
        states.push(target.clone());
    }
    let mut edges: Vec<(String, u64, String, BigRational)> = Vec::new();
    for (line_no, tokens) in &lines[3..] {
        if tokens.len() != 4 {
            return Err(ParseError::at(
                *line_no,
                format!("expected `src dst cost m/d`, found {} tokens", tokens.len()),
            ));
        }
        let cost: u64 = tokens[2]
            .parse()
            .map_err(|_| ParseError::at(*line_no, format!("bad cost {:?}", tokens[2])))?;
        let prob = parse_rational(tokens[3]).map_err(|e| ParseError::at(*line_no, e.message))?;
        for endpoint in [tokens[0], tokens[1]] {
            if !states.iter().any(|s| s == endpoint) {
                states.push(endpoint.to_string());
            }
        }
        edges.push((tokens[0].to_string(), cost, tokens[1].to_string(), prob));
    }
    if !edges.iter().any(|(s, _, _, _)| s == &target) {
        eprintln!("warning: inserting missing target self-loop ({target} {target} 0 1)");
        edges.push((
            target.clone(),
            0,
            target.clone(),
            BigRational::from(BigInt::from(1)),
        ));
    }
    let chain = CostChain::from_parts(states, &initial, &target, edges)
        .map_err(|e| ParseError::whole(e.to_string()))?;
    let problems = chain.validate();
    if !problems.is_empty() {
        return Err(ParseError::whole(problems.join("; ")));
    }
    Ok(chain)
}

/// Parses `letter=count` pairs separated by whitespace; counts are
/// arbitrary-precision decimals. The letter is everything before the last
/// `=`.
pub fn parse_parikh(text: &str) -> Result<ParikhVector, ParseError> {
    let mut p = ParikhVector::new();
    for token in text.split_whitespace() {
        let (letter, count) = token
            .rsplit_once('=')
            .ok_or_else(|| ParseError::whole(format!("expected letter=count, found {token:?}")))?;
        if letter.is_empty() {
            return Err(ParseError::whole(format!("empty letter in {token:?}")));
        }
        let count = BigUint::parse_bytes(count.as_bytes(), 10)
            .ok_or_else(|| ParseError::whole(format!("bad count in {token:?}")))?;
        p.add(letter, &count);
    }
    Ok(p)
}

/// Serializes a Parikh vector with letters in the given order; letters
/// absent from the order are appended in their own order.
pub fn serialize_parikh(p: &ParikhVector, order: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for letter in order {
        parts.push(format!("{letter}={}", p.count(letter)));
    }
    for (letter, count) in p.iter() {
        if !order.contains(letter) {
            parts.push(format!("{letter}={count}"));
        }
    }
    parts.join(" ")
}

pub fn serialize_acceptor(acceptor: &Acceptor) -> String {
    match acceptor {
        Acceptor::Dfa(d) => serialize_fa(
            "dfa",
            d.alphabet(),
            d.states(),
            d.state_name(d.initial()),
            &d.finals()
                .iter()
                .map(|&f| d.state_name(f))
                .collect::<Vec<_>>(),
            &d.transitions()
                .iter()
                .map(|t| {
                    (
                        d.state_name(t.from),
                        d.letter_name(t.letter),
                        d.state_name(t.to),
                    )
                })
                .collect::<Vec<_>>(),
        ),
        Acceptor::Nfa(n) => serialize_fa(
            "nfa",
            n.alphabet(),
            n.states(),
            &n.states()[n.initial()],
            &n.finals()
                .iter()
                .map(|&f| n.states()[f].as_str())
                .collect::<Vec<_>>(),
            &n.transitions()
                .iter()
                .map(|t| {
                    (
                        n.states()[t.from].as_str(),
                        n.alphabet()[t.letter].as_str(),
                        n.states()[t.to].as_str(),
                    )
                })
                .collect::<Vec<_>>(),
        ),
        Acceptor::Cfg(g) => serialize_cfg(g),
    }
}

fn serialize_fa(
    kind: &str,
    alphabet: &[String],
    states: &[String],
    initial: &str,
    finals: &[&str],
    transitions: &[(&str, &str, &str)],
) -> String {
    let mut out = String::new();
    out.push_str(kind);
    out.push('\n');
    out.push_str(
        &format!("alphabet {}\n", alphabet.join(" ")).replace("alphabet \n", "alphabet\n"),
    );
    out.push_str(&format!("states {}\n", states.join(" ")));
    out.push_str(&format!("initial {initial}\n"));
    if finals.is_empty() {
        out.push_str("final\n");
    } else {
        out.push_str(&format!("final {}\n", finals.join(" ")));
    }
    for (src, letter, dst) in transitions {
        out.push_str(&format!("{src} {letter} {dst}\n"));
    }
    out
}

fn serialize_cfg(g: &Cfg) -> String {
    let mut out = String::new();
    out.push_str("cfg\n");
    out.push_str(&format!("terminals {}\n", g.terminals().join(" ")));
    out.push_str(&format!("start {}\n", g.nonterminals()[g.start()]));
    for p in g.productions() {
        let body: Vec<&str> = p
            .body
            .iter()
            .map(|s| match *s {
                parikh_core::Symbol::Terminal(t) => g.terminals()[t].as_str(),
                parikh_core::Symbol::Nonterminal(n) => g.nonterminals()[n].as_str(),
            })
            .collect();
        if body.is_empty() {
            out.push_str(&format!("{} ->\n", g.nonterminals()[p.head]));
        } else {
            out.push_str(&format!(
                "{} -> {}\n",
                g.nonterminals()[p.head],
                body.join(" ")
            ));
        }
    }
    out
}

pub fn serialize_costchain(chain: &CostChain) -> String {
    let mut out = String::new();
    out.push_str("costchain\n");
    out.push_str(&format!("initial {}\n", chain.state_name(chain.initial())));
    out.push_str(&format!("target {}\n", chain.state_name(chain.target())));
    for e in chain.edges() {
        let prob = parikh_core::display_rational(&e.prob);
        out.push_str(&format!(
            "{} {} {} {prob}\n",
            chain.state_name(e.source),
            chain.state_name(e.target),
            e.cost
        ));
    }
    out
}

/// DIMACS-like 3-CNF: `c` comments, `p cnf vars clauses`, clause lines of
/// signed literals terminated by 0.
pub fn parse_cnf(text: &str) -> Result<parikh_core::CnfFormula, ParseError> {
    let mut vars: Option<usize> = None;
    let mut clauses: Vec<[i64; 3]> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let line_no = i + 1;
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p ") {
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            if tokens.len() != 3 || tokens[0] != "cnf" {
                return Err(ParseError::at(line_no, "expected `p cnf <vars> <clauses>`"));
            }
            vars = Some(
                tokens[1]
                    .parse()
                    .map_err(|_| ParseError::at(line_no, "bad variable count"))?,
            );
            continue;
        }
        let numbers: Vec<i64> = line
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| ParseError::at(line_no, format!("bad literal {t:?}")))
            })
            .collect::<Result<_, _>>()?;
        match numbers.as_slice() {
            [a, b, c, 0] => clauses.push([*a, *b, *c]),
            _ => {
                return Err(ParseError::at(
                    line_no,
                    "expected exactly three literals terminated by 0",
                ))
            }
        }
    }
    let vars = vars.ok_or_else(|| ParseError::whole("missing `p cnf` header"))?;
    parikh_core::CnfFormula::from_ints(vars, &clauses).map_err(|e| ParseError::whole(e.to_string()))
}

/// Whitespace-separated rows of decimal integers; one row per line.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<BigInt>>, ParseError> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let row: Vec<BigInt> = line
            .split_whitespace()
            .map(|t| {
                BigInt::parse_bytes(t.as_bytes(), 10)
                    .ok_or_else(|| ParseError::at(i + 1, format!("bad integer {t:?}")))
            })
            .collect::<Result<_, _>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ParseError::whole("empty matrix"));
    }
    Ok(rows)
}
