//! Command-line front end: exact Parikh-image counting, cost-chain
//! analyses and gadget generation over plain-text model files.
//!
//! Exit codes: 0 = computed (decision results are data, printed as
//! true/false), 2 = usage or parse error, 3 = resource guard exceeded.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use parikh_core::{
    cost_decide, cost_prob_parallel, count_dfa_parallel, count_nfa, display_rational,
    expected_cost, gen_3sat, gen_subsetsum_cfg, posmatpow_gadget, quantile, rational_bit,
    unary_member, unary_nfa_member, Acceptor, CostMethod, DfaMethod, Error as CoreError, Guards,
    MatPowInstance, NfaMethod, Probability, UnaryNfaMethod,
};

use parikh_cli::formats::{
    self, parse_acceptor, parse_cnf, parse_costchain, parse_matrix, parse_parikh, parse_rational,
    serialize_acceptor, serialize_costchain, serialize_parikh,
};
use parikh_cli::formula;

#[derive(Parser)]
#[command(
    name = "parikh",
    about = "Exact word counting by Parikh image, cost-chain probabilities and reduction gadgets",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct WorkerOpt {
    /// Worker threads for the enumeration sums; the output is identical
    /// for any value.
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Subcommand)]
enum Command {
    /// N(A, p): number of accepted words with the given Parikh image.
    Count {
        #[arg(long)]
        acceptor: PathBuf,
        /// Space-separated letter=count pairs, e.g. "a=2 b=1".
        #[arg(long)]
        parikh: String,
        /// best | dp | enumerate (DFA), determinize_dp | enumerate (NFA).
        #[arg(long)]
        method: Option<String>,
        #[command(flatten)]
        workers: WorkerOpt,
    },
    /// Is N(A, p) > N(B, p)?
    Pic {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        parikh: String,
    },
    /// Is bit i of N(A, p) equal to one? Bit 0 is least significant.
    Bitp {
        #[arg(long)]
        acceptor: PathBuf,
        #[arg(long)]
        parikh: String,
        #[arg(long)]
        index: u64,
    },
    /// Exact P(K ⊨ φ) as a reduced fraction.
    CostProb {
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        formula: String,
        /// parikh_best | cost_dp
        #[arg(long, default_value = "cost_dp")]
        method: String,
        #[command(flatten)]
        workers: WorkerOpt,
    },
    /// Is P(K ⊨ φ) ≥ τ?
    CostDecide {
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        formula: String,
        /// Threshold as m/d or an integer.
        #[arg(long)]
        threshold: String,
        #[arg(long, default_value = "cost_dp")]
        method: String,
    },
    /// Is bit j of P(K ⊨ φ) equal to one? Bit j is the j-th binary digit
    /// after the point (bit 0 is the integer part).
    BitCost {
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        index: u64,
        #[arg(long, default_value = "cost_dp")]
        method: String,
    },
    /// min { b : P(K ≤ b) ≥ τ }.
    Quantile {
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        tau: String,
    },
    /// E[K] as an exact rational.
    Expected {
        #[arg(long)]
        chain: PathBuf,
    },
    /// Zero-cost contraction; prints the contracted chain.
    Contract {
        #[arg(long)]
        chain: PathBuf,
    },
    /// Gadget generators.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Is a^n accepted? n may be huge (binary-encoded) for DFA and NFA.
    UnaryMember {
        #[arg(long)]
        acceptor: PathBuf,
        #[arg(long)]
        n: String,
        /// sawa | matpow (NFA only).
        #[arg(long)]
        method: Option<String>,
    },
    /// Is a^n in L(A) \ L(B)?
    UnaryPic {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        n: String,
    },
    /// Built-in cross-check battery.
    Selftest,
}

#[derive(Subcommand)]
enum GenCommand {
    /// DFA + vector whose count is the 3-CNF model count.
    #[command(name = "3sat")]
    ThreeSat {
        /// DIMACS-like input: `p cnf` header, 3-literal clauses ending in 0.
        #[arg(long)]
        cnf: PathBuf,
        /// Output files: DFA, Parikh vector.
        #[arg(long, num_args = 2)]
        emit: Vec<PathBuf>,
    },
    /// Two DFAs + vector with N(A,p) − N(B,p) = f(M^n) + 1.
    Posmatpow {
        #[arg(long)]
        matrix: PathBuf,
        /// Coefficient matrix of the linear function.
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long)]
        n: u64,
        /// Output files: positive DFA, negative DFA, Parikh vector.
        #[arg(long, num_args = 3)]
        emit: Vec<PathBuf>,
    },
    /// Grammar over {a} generating exactly the subset sums.
    Subsetsum {
        /// Space-separated positive integers, e.g. "3 5".
        #[arg(long)]
        values: String,
        /// Output file: CFG.
        #[arg(long, num_args = 1)]
        emit: Vec<PathBuf>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Failure {
        let code = match e {
            CoreError::Size(_) => 3,
            CoreError::Internal(_) => 1,
            CoreError::Input(_) | CoreError::Structural(_) => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<formats::ParseError> for Failure {
    fn from(e: formats::ParseError) -> Failure {
        Failure::usage(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(output) => {
            if !output.is_empty() {
                println!("{output}");
            }
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            std::process::exit(failure.code);
        }
    }
}

fn guards_from_env() -> Result<Guards, Failure> {
    let mut guards = Guards::default();
    let read = |name: &str| -> Result<Option<u64>, Failure> {
        match std::env::var(name) {
            Ok(value) => value
                .parse::<u64>()
                .map(Some)
                .map_err(|_| Failure::usage(format!("bad {name} value {value:?}"))),
            Err(_) => Ok(None),
        }
    };
    if let Some(cap) = read("PARIKH_ENUM_CAP")? {
        guards.enumeration_norm_cap = cap;
    }
    if let Some(cap) = read("PARIKH_DP_LATTICE_CAP")? {
        guards.dp_lattice_cap = cap;
    }
    if let Some(cap) = read("PARIKH_COST_C_CAP")? {
        guards.cost_c_cap = cap;
    }
    Ok(guards)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn load_acceptor(path: &Path) -> Result<Acceptor, Failure> {
    let text = read_file(path)?;
    parse_acceptor(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_chain(path: &Path) -> Result<parikh_core::CostChain, Failure> {
    let text = read_file(path)?;
    parse_costchain(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn cost_method(name: &str) -> Result<CostMethod, Failure> {
    match name {
        "parikh_best" => Ok(CostMethod::ParikhBest),
        "cost_dp" => Ok(CostMethod::CostDp),
        other => Err(Failure::usage(format!(
            "unknown cost method {other:?} (expected parikh_best or cost_dp)"
        ))),
    }
}

fn parse_formula_arg(text: &str) -> Result<parikh_core::CostFormula, Failure> {
    formula::parse_formula(text).map_err(|e| Failure::usage(format!("formula: {e}")))
}

fn probability_arg(text: &str) -> Result<Probability, Failure> {
    let ratio = parse_rational(text)?;
    Probability::new(ratio).map_err(Failure::from)
}

fn big_n(text: &str) -> Result<BigUint, Failure> {
    BigUint::parse_bytes(text.as_bytes(), 10)
        .ok_or_else(|| Failure::usage(format!("bad non-negative integer {text:?}")))
}

fn bool_answer(value: bool) -> String {
    if value { "true" } else { "false" }.to_string()
}

fn run(command: Command) -> Result<String, Failure> {
    let guards = guards_from_env()?;
    match command {
        Command::Count {
            acceptor,
            parikh,
            method,
            workers,
        } => {
            let acceptor = load_acceptor(&acceptor)?;
            let p = parse_parikh(&parikh)?;
            let count = match (&acceptor, method.as_deref()) {
                (Acceptor::Dfa(d), None | Some("best")) => {
                    count_dfa_parallel(d, &p, DfaMethod::Best, &guards, workers.workers)?
                }
                (Acceptor::Dfa(d), Some("dp")) => {
                    count_dfa_parallel(d, &p, DfaMethod::Dp, &guards, workers.workers)?
                }
                (Acceptor::Dfa(d), Some("enumerate")) => {
                    count_dfa_parallel(d, &p, DfaMethod::Enumerate, &guards, workers.workers)?
                }
                (Acceptor::Nfa(n), None | Some("determinize_dp")) => {
                    count_nfa(n, &p, NfaMethod::DeterminizeDp, &guards)?
                }
                (Acceptor::Nfa(n), Some("enumerate")) => {
                    count_nfa(n, &p, NfaMethod::Enumerate, &guards)?
                }
                (Acceptor::Cfg(g), None | Some("enumerate")) => {
                    parikh_core::count_cfg(g, &p, &guards)?
                }
                (_, Some(other)) => {
                    return Err(Failure::usage(format!(
                        "method {other:?} does not apply to this acceptor kind"
                    )))
                }
            };
            Ok(count.to_string())
        }
        Command::Pic { a, b, parikh } => {
            let a = load_acceptor(&a)?;
            let b = load_acceptor(&b)?;
            let p = parse_parikh(&parikh)?;
            Ok(bool_answer(parikh_core::pic(&a, &b, &p, &guards)?))
        }
        Command::Bitp {
            acceptor,
            parikh,
            index,
        } => {
            let acceptor = load_acceptor(&acceptor)?;
            let p = parse_parikh(&parikh)?;
            Ok(bool_answer(parikh_core::bitp(
                &acceptor, &p, index, &guards,
            )?))
        }
        Command::CostProb {
            chain,
            formula,
            method,
            workers,
        } => {
            let chain = load_chain(&chain)?;
            let phi = parse_formula_arg(&formula)?;
            let method = cost_method(&method)?;
            let p = cost_prob_parallel(&chain, &phi, method, &guards, workers.workers)?;
            Ok(p.to_string())
        }
        Command::CostDecide {
            chain,
            formula,
            threshold,
            method,
        } => {
            let chain = load_chain(&chain)?;
            let phi = parse_formula_arg(&formula)?;
            let tau = probability_arg(&threshold)?;
            let method = cost_method(&method)?;
            Ok(bool_answer(cost_decide(
                &chain, &phi, &tau, method, &guards,
            )?))
        }
        Command::BitCost {
            chain,
            formula,
            index,
            method,
        } => {
            let chain = load_chain(&chain)?;
            let phi = parse_formula_arg(&formula)?;
            let method = cost_method(&method)?;
            let p = parikh_core::cost_prob(&chain, &phi, method, &guards)?;
            Ok(bool_answer(rational_bit(p.ratio(), index)))
        }
        Command::Quantile { chain, tau } => {
            let chain = load_chain(&chain)?;
            let tau = probability_arg(&tau)?;
            Ok(quantile(&chain, &tau, &guards)?.to_string())
        }
        Command::Expected { chain } => {
            let chain = load_chain(&chain)?;
            Ok(display_rational(&expected_cost(&chain)?))
        }
        Command::Contract { chain } => {
            let chain = load_chain(&chain)?;
            let contracted = chain.contract_zero_cost()?;
            Ok(serialize_costchain(&contracted).trim_end().to_string())
        }
        Command::Gen(gen) => run_gen(gen),
        Command::UnaryMember {
            acceptor,
            n,
            method,
        } => {
            let acceptor = load_acceptor(&acceptor)?;
            let n = big_n(&n)?;
            let answer = match (method.as_deref(), &acceptor) {
                (None, _) => unary_member(&acceptor, &n, &guards)?,
                (Some("sawa"), Acceptor::Nfa(nfa)) => {
                    unary_nfa_member(nfa, &n, UnaryNfaMethod::Sawa)?
                }
                (Some("matpow"), Acceptor::Nfa(nfa)) => {
                    unary_nfa_member(nfa, &n, UnaryNfaMethod::MatPow)?
                }
                (Some(other), Acceptor::Nfa(_)) => {
                    return Err(Failure::usage(format!(
                        "unknown unary method {other:?} (expected sawa or matpow)"
                    )))
                }
                (Some(_), _) => {
                    return Err(Failure::usage(
                        "--method applies only to NFA acceptors".to_string(),
                    ))
                }
            };
            Ok(bool_answer(answer))
        }
        Command::UnaryPic { a, b, n } => {
            let a = load_acceptor(&a)?;
            let b = load_acceptor(&b)?;
            let n = big_n(&n)?;
            Ok(bool_answer(parikh_core::unary_pic(&a, &b, &n, &guards)?))
        }
        Command::Selftest => selftest(&guards),
    }
}

fn run_gen(command: GenCommand) -> Result<String, Failure> {
    match command {
        GenCommand::ThreeSat { cnf, emit } => {
            let text = read_file(&cnf)?;
            let psi =
                parse_cnf(&text).map_err(|e| Failure::usage(format!("{}: {e}", cnf.display())))?;
            let (dfa, p) = gen_3sat(&psi)?;
            let order = dfa.alphabet().to_vec();
            write_file(&emit[0], &serialize_acceptor(&Acceptor::Dfa(dfa)))?;
            write_file(&emit[1], &format!("{}\n", serialize_parikh(&p, &order)))?;
            Ok(String::new())
        }
        GenCommand::Posmatpow {
            matrix,
            function,
            n,
            emit,
        } => {
            let matrix = parse_matrix(&read_file(&matrix)?)?;
            let coeffs = parse_matrix(&read_file(&function)?)?;
            let inst = MatPowInstance::new(matrix, coeffs, n)?;
            let gadget = posmatpow_gadget(&inst)?;
            let order = vec!["a".to_string(), "b".to_string()];
            write_file(
                &emit[0],
                &serialize_acceptor(&Acceptor::Dfa(gadget.positive)),
            )?;
            write_file(
                &emit[1],
                &serialize_acceptor(&Acceptor::Dfa(gadget.negative)),
            )?;
            write_file(
                &emit[2],
                &format!("{}\n", serialize_parikh(&gadget.parikh, &order)),
            )?;
            Ok(String::new())
        }
        GenCommand::Subsetsum { values, emit } => {
            let values: Vec<BigUint> = values
                .split_whitespace()
                .map(big_n)
                .collect::<Result<_, _>>()?;
            let cfg = gen_subsetsum_cfg(&values)?;
            write_file(&emit[0], &serialize_acceptor(&Acceptor::Cfg(cfg)))?;
            Ok(String::new())
        }
    }
}

fn selftest(guards: &Guards) -> Result<String, Failure> {
    use parikh_core::*;
    let mut lines = Vec::new();
    let mut check = |label: &str, ok: bool| -> std::result::Result<(), Failure> {
        if ok {
            lines.push(format!("ok {label}"));
            Ok(())
        } else {
            Err(Failure {
                code: 1,
                message: format!("selftest failed: {label}"),
            })
        }
    };

    let dfa = Dfa::new(
        &["a", "b"],
        &["q0", "q1"],
        "q0",
        &["q0"],
        &[("q0", "a", "q1"), ("q1", "b", "q0")],
    )?;
    let p = ParikhVector::from_pairs([("a", 2u64), ("b", 2u64)]);
    let best = count_dfa(&dfa, &p, DfaMethod::Best, guards)?;
    let dp = count_dfa(&dfa, &p, DfaMethod::Dp, guards)?;
    let enumerated = count_dfa(&dfa, &p, DfaMethod::Enumerate, guards)?;
    check(
        "count methods agree on the pair language",
        best == dp && dp == enumerated && best == BigUint::from(1u32),
    )?;

    let loops = WeightedMultigraph::new(&["v"], &[("l1", "v", "v", 2), ("l2", "v", "v", 1)])?;
    check(
        "circuit count matches brute force",
        loops.euler_count()? == loops.brute_euler_count()?,
    )?;

    let chain = CostChain::new(
        &["s", "u", "t"],
        "s",
        "t",
        &[
            ("s", 20, "t", (9, 10)),
            ("s", 15, "u", (1, 10)),
            ("u", 5, "u", (1, 5)),
            ("u", 10, "t", (4, 5)),
            ("t", 0, "t", (1, 1)),
        ],
    )?;
    let phi = CostFormula::le(30);
    let by_vectors = cost_prob(&chain, &phi, CostMethod::ParikhBest, guards)?;
    let by_dp = cost_prob(&chain, &phi, CostMethod::CostDp, guards)?;
    check(
        "cost probability methods agree",
        by_vectors == by_dp && by_dp.to_string() == "249/250",
    )?;
    check(
        "expectation is exact",
        display_rational(&expected_cost(&chain)?) == "165/8",
    )?;
    check(
        "quantile search is minimal",
        quantile(&chain, &Probability::from_u64_ratio(9, 10)?, guards)? == 20,
    )?;

    let even = Nfa::new(
        &["a"],
        &["p", "q"],
        "p",
        &["p"],
        &[("p", "a", "q"), ("q", "a", "p")],
    )?;
    let mut agree = true;
    for n in [0u64, 1, 7, 1_000_000_007] {
        let n = BigUint::from(n);
        agree &= unary_nfa_member(&even, &n, UnaryNfaMethod::Sawa)?
            == unary_nfa_member(&even, &n, UnaryNfaMethod::MatPow)?;
    }
    check("unary membership methods agree", agree)?;

    let serialized = serialize_acceptor(&Acceptor::Dfa(dfa.clone()));
    let reparsed = parse_acceptor(&serialized)?;
    check("model round-trip is stable", reparsed == Acceptor::Dfa(dfa))?;

    lines.push(format!("selftest: {} checks passed", lines.len()));
    Ok(lines.join("\n"))
}
