use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rgphom::nhom::{is_n_core_with, solve, Certificate, NCoreVerdict, Removed, Solver};
use rgphom::regex::{language_inclusion, universality, Inclusion};
use rgphom::rgp::export_dot;
use rgphom::testkit::{gadget_inclusion, gadget_ncore, gadget_universality};
use rgphom::unary::{classify_undirected_template, d_of_q, UnaryError};
use rgphom::{parse_regex, verify_n_hom, Alphabet, Budget, Regex, Rgp, SolveError};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "rgphom", version, about = "Navigational homomorphisms between regular graph patterns")]
struct Cli {
    /// Search-node budget for the backtracking solvers.
    #[arg(long, global = true, env = "RGPHOM_BUDGET", default_value_t = 10_000_000)]
    budget: u64,
    /// Output format; DOT is available for commands that produce patterns or digraphs.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Look for an n-homomorphism from P to Q.
    Nhom {
        p: PathBuf,
        q: PathBuf,
        /// Write the certificate here when one is found.
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long, default_value = "auto")]
        solver: Solver,
        /// Threads for the per-label relation precomputation.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check a certificate produced by `nhom`.
    Verify { p: PathBuf, q: PathBuf, certificate: PathBuf },
    /// Decide whether P is an n-core, printing a retraction when it is not.
    Core { p: PathBuf },
    /// Decide L(E1) ⊆ L(E2).
    Include {
        e1: String,
        e2: String,
        #[arg(long)]
        alphabet: String,
    },
    /// Decide L(E) = Σ*.
    Universal {
        e: String,
        #[arg(long)]
        alphabet: String,
    },
    /// Print the two-labeled digraph D(Q) of a unary template.
    Dq { q: PathBuf },
    /// Classify a unary undirected template.
    Classify {
        q: PathBuf,
        /// Skip the n-core check and trust the caller.
        #[arg(long)]
        assume_core: bool,
    },
    /// Emit a reduction gadget.
    Gadget {
        #[command(subcommand)]
        kind: Gadget,
    },
    /// Find a walk from u to v in Q whose label word set is contained in L(E).
    Walk { q: PathBuf, u: String, v: String, e: String },
}

#[derive(Subcommand)]
enum Gadget {
    Inclusion {
        e1: String,
        e2: String,
        #[arg(long)]
        alphabet: String,
    },
    Universality {
        e: String,
        #[arg(long)]
        alphabet: String,
    },
    Ncore {
        e1: String,
        e2: String,
        #[arg(long)]
        alphabet: String,
    },
}

enum Failure {
    Input(String),
    Budget(String),
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::NotApplicable(_) => Failure::Input(e.to_string()),
            _ => Failure::Budget(e.to_string()),
        }
    }
}

impl From<UnaryError> for Failure {
    fn from(e: UnaryError) -> Self {
        match e {
            UnaryError::Solve(e) => e.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

/// Whether the property holds (status 0) or fails (status 1).
type Outcome = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Rgp, Failure> {
    Rgp::from_json(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn alphabet(s: &str) -> Result<Alphabet, Failure> {
    match s.chars().find(|&c| !Alphabet::is_valid_symbol(c)) {
        Some(c) => Err(Failure::Input(format!("{c:?} cannot be an alphabet symbol"))),
        None => Ok(Alphabet::from_chars(s)),
    }
}

fn regex(text: &str, sigma: &Alphabet) -> Result<Regex, Failure> {
    parse_regex(text, sigma).map_err(|e| Failure::Input(format!("{text:?}: {e}")))
}

fn document(p: &Rgp) -> Value {
    serde_json::from_str(&p.to_json()).expect("pattern JSON is valid")
}

fn emit(value: Value) {
    println!("{value}");
}

fn json_only(format: Format) -> Result<(), Failure> {
    match format {
        Format::Json => Ok(()),
        Format::Dot => Err(Failure::Input("this command has no DOT rendering".into())),
    }
}

fn inclusion_report(result: &Inclusion) -> bool {
    emit(json!({
        "holds": result.holds(),
        "counterexample": result.counterexample().map(|w| w.to_string()),
    }));
    result.holds()
}

fn run(cli: Cli) -> Outcome {
    let budget = Budget { max_nodes: cli.budget, ..Budget::default() };
    match cli.command {
        Command::Nhom { p, q, certificate, solver, jobs } => {
            json_only(cli.format)?;
            let (p, q) = (load(&p)?, load(&q)?);
            let Some(h) = solve(&p, &q, solver, &budget, jobs.max(1))? else {
                emit(json!({ "found": false }));
                return Ok(false);
            };
            let cert = Certificate::from_hom(&p, &q, &h);
            if let Some(path) = certificate {
                std::fs::write(&path, cert.to_json()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            emit(json!({ "found": true, "certificate": cert }));
            Ok(true)
        }
        Command::Verify { p, q, certificate } => {
            json_only(cli.format)?;
            let (p, q) = (load(&p)?, load(&q)?);
            let cert = Certificate::from_json(&read(&certificate)?).map_err(input)?;
            let (valid, reason) = match cert.to_hom(&p, &q) {
                Ok(h) if verify_n_hom(&p, &q, &h) => (true, None),
                Ok(_) => (false, Some("an arc's witness label is not contained in the arc's label".to_string())),
                Err(e) => (false, Some(e.to_string())),
            };
            emit(json!({ "valid": valid, "reason": reason }));
            Ok(valid)
        }
        Command::Core { p } => {
            let p = load(&p)?;
            let NCoreVerdict::NotCore { removed, sub, retraction } = is_n_core_with(&p, &budget)? else {
                match cli.format {
                    Format::Json => emit(json!({ "core": true })),
                    Format::Dot => print!("{}", export_dot(&p)),
                }
                return Ok(true);
            };
            match cli.format {
                Format::Json => {
                    let removed = match removed {
                        Removed::Arc(a) => json!({ "arc": a }),
                        Removed::Vertex(v) => json!({ "vertex": p.vertex_name(v) }),
                    };
                    emit(json!({
                        "core": false,
                        "removed": removed,
                        "sub": document(&sub),
                        "retraction": Certificate::from_hom(&p, &sub, &retraction),
                    }));
                }
                Format::Dot => print!("{}", export_dot(&sub)),
            }
            Ok(false)
        }
        Command::Include { e1, e2, alphabet: a } => {
            json_only(cli.format)?;
            let sigma = alphabet(&a)?;
            Ok(inclusion_report(&language_inclusion(&regex(&e1, &sigma)?, &regex(&e2, &sigma)?)))
        }
        Command::Universal { e, alphabet: a } => {
            json_only(cli.format)?;
            let sigma = alphabet(&a)?;
            Ok(inclusion_report(&universality(&regex(&e, &sigma)?, &sigma).map_err(input)?))
        }
        Command::Dq { q } => {
            let d = d_of_q(&load(&q)?)?;
            match cli.format {
                Format::Json => emit(serde_json::from_str(&d.to_json()).expect("D(Q) JSON is valid")),
                Format::Dot => print!("{}", d.to_dot()),
            }
            Ok(true)
        }
        Command::Classify { q, assume_core } => {
            json_only(cli.format)?;
            let class = classify_undirected_template(&load(&q)?, assume_core, &budget)?;
            let polynomial = class.is_polynomial();
            emit(json!({ "class": class, "polynomial": polynomial }));
            Ok(polynomial)
        }
        Command::Gadget { kind } => {
            let (patterns, fact) = match kind {
                Gadget::Inclusion { e1, e2, alphabet: a } => {
                    let sigma = alphabet(&a)?;
                    let g = gadget_inclusion(&regex(&e1, &sigma)?, &regex(&e2, &sigma)?);
                    (vec![("left", g.left), ("right", g.right)], Some(g.fact))
                }
                Gadget::Universality { e, alphabet: a } => {
                    let sigma = alphabet(&a)?;
                    let g = gadget_universality(&regex(&e, &sigma)?, &sigma).map_err(input)?;
                    (vec![("left", g.left), ("right", g.right)], Some(g.fact))
                }
                Gadget::Ncore { e1, e2, alphabet: a } => {
                    let sigma = alphabet(&a)?;
                    let p = gadget_ncore(&regex(&e1, &sigma)?, &regex(&e2, &sigma)?).map_err(input)?;
                    (vec![("pattern", p)], None)
                }
            };
            match cli.format {
                Format::Json => {
                    let mut out = serde_json::Map::new();
                    for (name, p) in &patterns {
                        out.insert(name.to_string(), document(p));
                    }
                    if let Some(fact) = fact {
                        out.insert("fact".into(), fact.into());
                    }
                    emit(Value::Object(out));
                }
                Format::Dot => patterns.iter().for_each(|(_, p)| print!("{}", export_dot(p))),
            }
            Ok(true)
        }
        Command::Walk { q, u, v, e } => {
            json_only(cli.format)?;
            let q = load(&q)?;
            let vertex = |name: &str| q.vertex_id(name).ok_or_else(|| Failure::Input(format!("unknown vertex {name:?}")));
            let (u, v) = (vertex(&u)?, vertex(&v)?);
            let e = regex(&e, q.alphabet())?;
            let Some(w) = rgphom::walk::find_walk(&q, u, v, &e).map_err(input)? else {
                emit(json!({ "found": false }));
                return Ok(false);
            };
            let labels: Vec<String> = w.labels(&q).iter().map(|l| l.to_string()).collect();
            emit(json!({ "found": true, "arcs": w.arcs(), "labels": labels }));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("budget exceeded: {msg}");
            ExitCode::from(3)
        }
    }
}
