//! `nabla`: classify, count, apply and verify grad/curl/div chains.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 meaningless chain where
//! a meaningful one is required, 3 a verification suite found a violation.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use nabla_core::classify::{census_bounded, classify, Classification, DEFAULT_CENSUS_BOUND};
use nabla_core::collections::{collection_order, CollectionKind, DEFAULT_MAX_ORDER};
use nabla_core::field::{apply_chain, eval_at, FieldError, FieldValue};
use nabla_core::json::{field_from_json, field_to_json, parse_point, point_value_to_json};
use nabla_core::operator::{chain_signature, Chain, ChainSignature};
use nabla_core::parse::parse;
use nabla_core::verify::{run, Suite, VerifyParams};

#[derive(Parser)]
#[command(
    name = "nabla",
    version,
    about = "Operator algebra for grad, curl and div on R^3"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a chain as meaningless, identically zero or nontrivial.
    Classify {
        /// Chain expression, e.g. "div curl grad". Several words are joined.
        #[arg(required = true, num_args = 1..)]
        expr: Vec<String>,
    },
    /// Count chains by classification for every length up to --max.
    Census {
        #[arg(long)]
        max: usize,
        #[arg(long)]
        json: bool,
    },
    /// Apply a chain to a polynomial field read from a JSON file.
    Apply {
        #[arg(long)]
        chain: String,
        #[arg(long)]
        field: PathBuf,
        /// Evaluate the result at "a,b,c" (rational coordinates).
        #[arg(long)]
        at: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Least order of a field in a collection (harmonic, curling, vharmonic).
    Order {
        #[arg(long)]
        collection: String,
        #[arg(long)]
        field: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max: usize,
    },
    /// Run a verification suite (identities, associativity, examples, oracle).
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        /// Finite-difference step for the oracle suite's first-order check.
        #[arg(long)]
        fd_step: Option<f64>,
    },
}

enum Failure {
    Input(String),
    Meaningless(String),
    Violation,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Meaningless(_) => 2,
            Failure::Violation => 3,
        }
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::MeaninglessChain(_) => Failure::Meaningless(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn describe(chain: &Chain) -> String {
    match classify(chain) {
        Classification::Meaningless => "meaningless".to_string(),
        Classification::TrivialZero { output, witness } => {
            let ops = chain.ops();
            format!(
                "zero ({output}), annihilating pair at position {witness}: {} {}",
                ops[witness],
                ops[witness + 1]
            )
        }
        Classification::Nontrivial { family, order } => {
            let sig = chain_signature(chain);
            format!("nontrivial: {family}, order {order}, signature {sig}")
        }
    }
}

#[derive(Serialize)]
struct CensusRow {
    length: usize,
    total: u64,
    meaningless: u64,
    trivial: u64,
    nontrivial: u64,
}

fn read_field(path: &PathBuf) -> Result<FieldValue, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    field_from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn execute(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Classify { expr } => {
            let chain = parse(&expr.join(" ")).map_err(input)?;
            println!("{}", describe(&chain));
        }
        Command::Census { max, json } => {
            if max == 0 || max > DEFAULT_CENSUS_BOUND {
                return Err(Failure::Input(format!(
                    "--max must lie in 1..={DEFAULT_CENSUS_BOUND}"
                )));
            }
            let rows = (1..=max)
                .map(|n| {
                    let c = census_bounded(n, DEFAULT_CENSUS_BOUND).map_err(input)?;
                    Ok(CensusRow {
                        length: n,
                        total: c.total(),
                        meaningless: c.meaningless,
                        trivial: c.trivial,
                        nontrivial: c.nontrivial,
                    })
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            if json {
                println!("{}", serde_json::to_string(&rows).map_err(input)?);
            } else {
                println!(
                    "{:>6} {:>8} {:>11} {:>12} {:>10}",
                    "length", "total", "meaningless", "trivial-zero", "nontrivial"
                );
                for r in rows {
                    println!(
                        "{:>6} {:>8} {:>11} {:>12} {:>10}",
                        r.length, r.total, r.meaningless, r.trivial, r.nontrivial
                    );
                }
            }
        }
        Command::Apply {
            chain,
            field,
            at,
            json,
        } => {
            let chain = parse(&chain).map_err(input)?;
            if chain_signature(&chain) == ChainSignature::Meaningless {
                return Err(FieldError::MeaninglessChain(chain).into());
            }
            let point = at.as_deref().map(parse_point).transpose().map_err(input)?;
            let value = read_field(&field)?;
            let result = apply_chain(&chain, &value)?;
            match point {
                None => println!("{}", field_to_json(&result)),
                Some(p) => {
                    let v = eval_at(&result, &p);
                    if json {
                        println!("{}", point_value_to_json(&v));
                    } else {
                        println!("{v}");
                    }
                }
            }
        }
        Command::Order {
            collection,
            field,
            max,
        } => {
            let kind = CollectionKind::from_name(&collection)
                .ok_or_else(|| Failure::Input(format!("unknown collection {collection:?}")))?;
            if max == 0 {
                return Err(Failure::Input("--max must be positive".into()));
            }
            let value = read_field(&field)?;
            println!("{}", collection_order(kind, &value, max)?);
        }
        Command::Verify {
            suite,
            trials,
            seed,
            degree,
            fd_step,
        } => {
            let suite = Suite::from_name(&suite)
                .ok_or_else(|| Failure::Input(format!("unknown suite {suite:?}")))?;
            if trials == 0 {
                return Err(Failure::Input("--trials must be positive".into()));
            }
            let report = run(
                suite,
                VerifyParams {
                    trials,
                    seed,
                    degree,
                    fd_step,
                },
            );
            println!("{report}");
            if !report.all_passed() {
                return Err(Failure::Violation);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Input(msg) | Failure::Meaningless(msg) => eprintln!("error: {msg}"),
                Failure::Violation => eprintln!("error: verification failed"),
            }
            ExitCode::from(f.code())
        }
    }
}
