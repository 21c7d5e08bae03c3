//! Command-line driver for the verification suites.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qkernel::suites::{self, Record};
use qkernel::Error;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "qkernel", version, about = "Run a verification suite and write a report")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Subcommand)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Coloring counts on two graph shapes
    Dims(Params),
    /// Small-coloring basis and its parity split
    Basis(Params),
    /// Divisibility gates and the two reduced matrix reproductions
    TwistFixtures(Params),
    /// Separating-twist independence test
    Independence(Params),
    /// Valuation bounds for commutators and p-th powers
    Filtration(Params),
    /// Submodule-closure trials on V
    SpIrred(Params),
    /// Johnson images of simple intersecting pairs
    Sip(Params),
    /// Faithfulness checks on Λ³ and V
    Faithful(Params),
    /// Laws of the diagonal-block trace morphisms
    DPrime(Params),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Dims(_) => "dims",
            Command::Basis(_) => "basis",
            Command::TwistFixtures(_) => "twist-fixtures",
            Command::Independence(_) => "independence",
            Command::Filtration(_) => "filtration",
            Command::SpIrred(_) => "sp-irred",
            Command::Sip(_) => "sip",
            Command::Faithful(_) => "faithful",
            Command::DPrime(_) => "d-prime",
        }
    }

    pub fn params(&self) -> &Params {
        match self {
            Command::Dims(p)
            | Command::Basis(p)
            | Command::TwistFixtures(p)
            | Command::Independence(p)
            | Command::Filtration(p)
            | Command::SpIrred(p)
            | Command::Sip(p)
            | Command::Faithful(p)
            | Command::DPrime(p) => p,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Args)]
pub struct Params {
    #[arg(long, default_value_t = 3)]
    pub g: usize,
    #[arg(long, default_value_t = 5)]
    pub p: u32,
    /// Filtration order of the first matrix
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Filtration order of the second matrix
    #[arg(long, default_value_t = 1)]
    pub l: u32,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[serde(skip)]
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Serialize)]
pub struct Report<'a> {
    pub command: &'a str,
    pub params: &'a Params,
    pub passed: bool,
    pub records: &'a [Record],
}

/// Exit status of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Passed,
    Failed,
    Usage,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Passed => 0,
            Status::Failed => 1,
            Status::Usage => 2,
        }
    }
}

pub fn execute(command: &Command) -> Result<Vec<Record>, Error> {
    let c = command.params();
    match command {
        Command::Dims(_) => suites::dims(c.g, c.p),
        Command::Basis(_) => suites::basis(c.g, c.p),
        Command::TwistFixtures(_) => suites::twist_fixtures(c.p),
        Command::Independence(_) => suites::independence(c.g, c.p),
        Command::Filtration(_) => suites::filtration(c.p, c.k, c.l, c.trials, c.seed),
        Command::SpIrred(_) => suites::sp_irred(c.g, c.p, c.trials, c.seed),
        Command::Sip(_) => suites::sip(c.g, c.p),
        Command::Faithful(_) => suites::faithful(c.g, c.p),
        Command::DPrime(_) => suites::d_prime(c.p, c.trials, c.seed),
    }
}

pub fn render(command: &Command, records: &[Record]) -> Result<String, String> {
    let params = command.params();
    let passed = records.iter().all(Record::passed);
    match params.format {
        Format::Json => {
            let report = Report {
                command: command.name(),
                params,
                passed,
                records,
            };
            serde_json::to_string_pretty(&report)
                .map(|s| s + "\n")
                .map_err(|e| e.to_string())
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["test", "p", "g", "verdict", "witness"]).map_err(|e| e.to_string())?;
            for r in records {
                let verdict = if r.passed() { "pass" } else { "fail" };
                w.write_record([
                    r.test.clone(),
                    r.p.to_string(),
                    r.g.map(|g| g.to_string()).unwrap_or_default(),
                    verdict.to_string(),
                    r.witness.to_string(),
                ])
                .map_err(|e| e.to_string())?;
            }
            let bytes = w.into_inner().map_err(|e| e.to_string())?;
            String::from_utf8(bytes).map_err(|e| e.to_string())
        }
    }
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidArgument(_) | Error::ResourceCap(_) | Error::UnsupportedOrder { .. }
    )
}

/// Runs one command, writes its report, and returns the exit status.
pub fn run(command: &Command) -> Status {
    let records = match execute(command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("qkernel {}: {e}", command.name());
            return if is_usage_error(&e) { Status::Usage } else { Status::Failed };
        }
    };
    let text = match render(command, &records) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("qkernel {}: cannot render report: {e}", command.name());
            return Status::Failed;
        }
    };
    let written = match &command.params().out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("qkernel {}: cannot write report: {e}", command.name());
        return Status::Failed;
    }
    if records.iter().all(Record::passed) {
        Status::Passed
    } else {
        Status::Failed
    }
}
