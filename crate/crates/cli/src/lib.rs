//! Front end for `wproj`: argument parsing, command dispatch, and the
//! JSON report envelope.

mod commands;
pub mod sweep;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use wproj_core::Error;

pub use sweep::{sweep, SweepFailure, SweepReport};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Parser, Debug)]
#[command(name = "wproj", version, about = "Exact invariants of weighted projective spaces")]
pub struct Cli {
    /// Emit the JSON report instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Delorme reduction to a well-formed weight vector.
    Normalize {
        #[arg(required = true, allow_negative_numbers = true)]
        weights: Vec<i64>,
    },
    /// Decide whether two weight vectors give isomorphic spaces.
    Iso {
        #[arg(required = true, allow_negative_numbers = true)]
        first: Vec<i64>,
        #[arg(last = true, required = true, allow_negative_numbers = true)]
        second: Vec<i64>,
    },
    /// Unimodular completion, rays and cone multiplicities.
    Fan {
        #[arg(required = true, allow_negative_numbers = true)]
        weights: Vec<i64>,
    },
    /// The Zariski Brauer group E2^{0,1}.
    Brauer {
        #[arg(required = true, allow_negative_numbers = true)]
        weights: Vec<i64>,
    },
    /// Class group, Picard index and stack pullback multiplier.
    ClassGroups {
        #[arg(required = true, allow_negative_numbers = true)]
        weights: Vec<i64>,
    },
    /// Dimension (and optionally a monomial basis) of H^i(O(l)).
    Cohomology {
        #[arg(required = true, allow_negative_numbers = true)]
        weights: Vec<i64>,
        #[arg(long = "i")]
        degree: usize,
        #[arg(long, allow_negative_numbers = true)]
        ell: i64,
        #[arg(long)]
        basis: bool,
        /// Report for the weighted projective stack.
        #[arg(long)]
        stack: bool,
    },
    /// Carry O(l) through one Delorme step.
    Twist {
        #[arg(required = true, allow_negative_numbers = true)]
        weights: Vec<i64>,
        #[arg(long, allow_negative_numbers = true)]
        ell: num_bigint::BigInt,
    },
    /// Check every weight vector with n+1 entries in [1, M].
    Sweep {
        #[arg(long)]
        dim: usize,
        #[arg(long = "max-weight")]
        max_weight: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Normalize { .. } => "normalize",
            Command::Iso { .. } => "iso",
            Command::Fan { .. } => "fan",
            Command::Brauer { .. } => "brauer",
            Command::ClassGroups { .. } => "class-groups",
            Command::Cohomology { .. } => "cohomology",
            Command::Twist { .. } => "twist",
            Command::Sweep { .. } => "sweep",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    InvalidInput,
    InternalError,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::InvalidInput => "invalid-input",
            Status::InternalError => "internal-error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InvalidInput => 1,
            Status::InternalError => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub status: Status,
    pub payload: Value,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "status": self.status.as_str(),
            "payload": self.payload,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("reports serialize")
    }
}

/// Everything a run produces; `main` only prints it.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Option<Report>,
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { report: None, stdout: String::new(), stderr: text, exit_code: 1 }
            } else {
                Outcome { report: None, stdout: text, stderr: String::new(), exit_code: 0 }
            };
        }
    };
    let (report, human) = execute(&cli.command);
    let mut stderr = String::new();
    if let Some(msg) = report.payload.get("error").and_then(Value::as_str) {
        stderr.push_str(&format!("wproj {}: {msg}\n", report.command));
    }
    let text = report.to_json_string();
    let mut exit_code = report.status.exit_code();
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            stderr.push_str(&format!("wproj: cannot write {}: {e}\n", path.display()));
            exit_code = exit_code.max(1);
        }
    }
    let stdout = if cli.json {
        format!("{text}\n")
    } else {
        human
    };
    Outcome { report: Some(report), stdout, stderr, exit_code }
}

fn execute(cmd: &Command) -> (Report, String) {
    let inputs = commands::inputs(cmd);
    let (status, payload, human) = match commands::dispatch(cmd) {
        Ok((payload, human)) => (Status::Ok, payload, human),
        Err(e) => {
            let status = if e.is_user_error() { Status::InvalidInput } else { Status::InternalError };
            (status, json!({ "error": e.to_string() }), String::new())
        }
    };
    (
        Report {
            command: cmd.name().to_string(),
            inputs,
            status,
            payload,
        },
        human,
    )
}

pub(crate) fn weights_from(raw: &[i64]) -> Result<wproj_core::WeightVector, Error> {
    wproj_core::WeightVector::from_signed(raw)
}
