//! `pmgraph`: exact invariants of polarized metric graphs from the shell.
//!
//! Every command prints one JSON document
//! `{"command", "input_sha256", "payload", "status"}` on stdout.
//!
//! Exit codes: 0 success, 2 unreadable or malformed input, 3 invalid graph or
//! arguments, 4 internal crosscheck failure, 5 a requested identity or
//! convergence check did not hold.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use pmgraph::rational;
use pmgraph::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_VALIDATION: u8 = 3;
pub const EXIT_CROSSCHECK: u8 = 4;
pub const EXIT_IDENTITY: u8 = 5;

#[derive(Parser, Debug)]
#[command(name = "pmgraph", version, about = "Exact invariants of polarized metric graphs")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Re-render every exact value with this many significant digits.
    #[arg(long, global = true, value_name = "DIGITS")]
    decimal: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full invariant report: δ, ε, φ, ψ, c, resistances, crosschecks.
    Invariants { graph: PathBuf },
    /// g_μ(x, y) for two points given as vertex:ID or edge:ID@p/q.
    Green {
        graph: PathBuf,
        #[arg(long = "at", required = true, num_args = 1)]
        at: Vec<String>,
    },
    /// Potential f, capacity c and the quadratic edge profiles of f.
    Potential {
        graph: PathBuf,
        #[arg(long = "at", num_args = 1)]
        at: Vec<String>,
    },
    /// Genus-two catalog: engine φ against the closed form.
    Genus2 {
        /// trivial, I, II, III, IV, V or VI
        tag: String,
        /// Edge lengths x1, x2, ... as p/q.
        lengths: Vec<String>,
    },
    /// Hyperelliptic identities for a graph and its node-type counts.
    Hyperelliptic { graph: PathBuf, counts: PathBuf },
    /// Recover φ as a rational function of the edge lengths.
    Fit { family: PathBuf },
    /// Midpoint-quadrature ladder for φ or ε.
    Oracle {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
        orders: Vec<usize>,
        #[arg(long, default_value = "phi", value_parser = ["phi", "epsilon"])]
        quantity: String,
        /// Also require the final error to be below this.
        #[arg(long)]
        tolerance: Option<f64>,
        /// Emit the ladder as CSV instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Second differences of g_μ(x, ·) along an edge.
    Probe {
        graph: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        edge: String,
        #[arg(long)]
        step: String,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// Exact invariance under random refinements of the model.
    Subdivide {
        graph: PathBuf,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
    /// Structural checks: connectivity, lengths, genus, stability.
    Validate { graph: PathBuf },
}

/// Why a command did not produce a passing result.
#[derive(Debug)]
pub enum Failure {
    Io(String),
    Engine(Error),
    /// The command ran but its check did not hold; the payload is still
    /// reported.
    Check(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::CrosscheckFailure { .. }
        | Error::ProfileSampleMismatch { .. }
        | Error::RankDeficient { .. }
        | Error::ValidationFailure(_) => EXIT_CROSSCHECK,
        _ => EXIT_VALIDATION,
    }
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "Parse",
        Error::EmptyGraph => "EmptyGraph",
        Error::DuplicateId(_) => "DuplicateId",
        Error::UnknownVertex { .. } => "UnknownVertex",
        Error::DisconnectedGraph { .. } => "DisconnectedGraph",
        Error::NonPositiveLength { .. } => "NonPositiveLength",
        Error::GenusZero => "GenusZero",
        Error::UnknownPoint(_) => "UnknownPoint",
        Error::OffsetOutOfRange { .. } => "OffsetOutOfRange",
        Error::ProfileSampleMismatch { .. } => "ProfileSampleMismatch",
        Error::CrosscheckFailure { .. } => "CrosscheckFailure",
        Error::InconsistentCounts(_) => "InconsistentCounts",
        Error::GenusMismatch { .. } => "GenusMismatch",
        Error::LengthMismatch { .. } => "LengthMismatch",
        Error::ArityMismatch { .. } => "ArityMismatch",
        Error::RankDeficient { .. } => "RankDeficient",
        Error::ValidationFailure(_) => "ValidationFailure",
        Error::DenominatorZero => "DenominatorZero",
    }
}

/// Replaces the `decimal` rendering next to every `exact` field.
fn redecimalize(v: &mut Value, digits: usize) {
    match v {
        Value::Object(map) => {
            let exact = map.get("exact").and_then(Value::as_str).map(str::to_owned);
            if let (Some(exact), true) = (exact, map.contains_key("decimal")) {
                if let Ok(r) = rational::parse(&exact) {
                    map.insert("decimal".into(), Value::String(rational::to_decimal(&r, digits)));
                }
            }
            for (_, x) in map.iter_mut() {
                redecimalize(x, digits);
            }
        }
        Value::Array(xs) => xs.iter_mut().for_each(|x| redecimalize(x, digits)),
        _ => {}
    }
}

/// Inputs hashed into the envelope: file contents, or the arguments for
/// commands without files.
pub struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn new() -> Self {
        Inputs { hasher: Sha256::new() }
    }

    pub fn read(&mut self, path: &PathBuf) -> Result<String, Failure> {
        let s = std::fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
        self.hasher.update((s.len() as u64).to_le_bytes());
        self.hasher.update(s.as_bytes());
        Ok(s)
    }

    pub fn note(&mut self, s: &str) {
        self.hasher.update((s.len() as u64).to_le_bytes());
        self.hasher.update(s.as_bytes());
    }

    fn digest(self) -> String {
        hex::encode(self.hasher.finalize())
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let mut inputs = Inputs::new();
    let result = commands::run(&cli.command, cli.seed, &mut inputs);
    let (status, payload) = match result {
        Ok(commands::Output::Json(p)) => (EXIT_OK, p),
        Ok(commands::Output::Text(t, ok)) => {
            emit(&t);
            return ExitCode::from(if ok { EXIT_OK } else { EXIT_IDENTITY });
        }
        Err(Failure::Check(p)) => (EXIT_IDENTITY, p),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            (EXIT_PARSE, json!({ "error": { "kind": "Io", "message": msg } }))
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            (exit_code(&e), json!({ "error": { "kind": kind(&e), "message": e.to_string() } }))
        }
    };
    let mut payload = payload;
    if let Some(d) = cli.decimal {
        redecimalize(&mut payload, d);
    }
    let doc = json!({
        "command": echo.join(" "),
        "input_sha256": inputs.digest(),
        "payload": payload,
        "status": status,
    });
    emit(&(serde_json::to_string_pretty(&doc).expect("json") + "\n"));
    ExitCode::from(status)
}
