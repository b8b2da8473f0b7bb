//! Command-line frontend: every command builds one JSON report, printed as
//! is with `--json` or rendered as text.

pub mod args;
pub mod corpus;
mod human;
pub mod report;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use clap::Parser;
use pellcf::cf::CfError;
use pellcf::genus0::Genus0Error;
use pellcf::poly::{parse_poly, ParseError, MIN_PRECISION};
use serde_json::{json, Value};

use args::{Cli, Command, Common};
use report::Outcome;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<CfError> for CliError {
    fn from(e: CfError) -> Self {
        match e {
            CfError::SeriesExhausted { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<Genus0Error> for CliError {
    fn from(e: Genus0Error) -> Self {
        match e {
            Genus0Error::Cf(c) => c.into(),
            Genus0Error::Roots(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn check_common(c: &Common) -> Result<(), CliError> {
    if c.precision < MIN_PRECISION {
        return Err(CliError::Input(format!(
            "--precision must be at least {MIN_PRECISION}, got {}",
            c.precision
        )));
    }
    if c.window_validate < 2 {
        return Err(CliError::Input("--window-validate must be at least 2".into()));
    }
    if c.time_budget.is_some_and(|s| !(s > 0.0) || !s.is_finite()) {
        return Err(CliError::Input("--time-budget must be a positive number of seconds".into()));
    }
    Ok(())
}

fn parameters(c: &Common) -> Value {
    json!({
        "steps": c.steps,
        "precision_bits": c.precision,
        "tolerance": report::rat_str(&c.tolerance),
        "max_steps": c.max_steps,
        "window_validate": c.window_validate,
        "time_budget_s": c.time_budget,
    })
}

fn dispatch(cmd: &Command) -> Result<(Option<String>, Outcome), CliError> {
    let common = cmd.common();
    check_common(common)?;
    let poly = |s: &str| parse_poly(s).map_err(CliError::from);
    Ok(match cmd {
        Command::Expand { poly: p, quotients, .. } => {
            let d = poly(p)?;
            (Some(d.to_string()), report::expand_cmd(&d, common, *quotients)?)
        }
        Command::Pell { poly: p, .. } => {
            let d = poly(p)?;
            (Some(d.to_string()), report::pell_cmd(&d, common)?)
        }
        Command::Analyze { poly: p, .. } => {
            let d = poly(p)?;
            (Some(d.to_string()), report::analyze_cmd(&d, common)?)
        }
        Command::Verify { poly: p, .. } => {
            let d = poly(p)?;
            (Some(d.to_string()), report::verify_cmd(&d, common)?)
        }
        Command::GenExample { l, p, q, h, witness, .. } => {
            let input = format!("l = {l}, p = {p}, q = {q}, h = {h}");
            (Some(input), report::gen_example_cmd(*l, *p, *q, h, *witness, common)?)
        }
        Command::Corpus { path, .. } => (Some(path.clone()), corpus::corpus_cmd(path, common)?),
    })
}

/// Full report for a parsed command; `Err` carries the exit class.
pub fn build_report(cmd: &Command) -> Result<Value, CliError> {
    let start = Instant::now();
    let caught = catch_unwind(AssertUnwindSafe(|| dispatch(cmd)));
    let (input, outcome) = match caught {
        Ok(r) => r?,
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            return Err(CliError::Internal(format!("internal failure: {msg}")));
        }
    };
    Ok(json!({
        "input": input,
        "command": cmd.name(),
        "parameters": parameters(cmd.common()),
        "results": outcome.results,
        "warnings": outcome.warnings,
        "timing": { "elapsed_ms": start.elapsed().as_secs_f64() * 1e3 },
    }))
}

pub fn run<I, S>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let (stdout, stderr) = if code == EXIT_OK { (text, String::new()) } else { (String::new(), text) };
            return RunOutput { code, stdout, stderr };
        }
    };
    let json_out = cli.command.common().json;
    match build_report(&cli.command) {
        Ok(report) => {
            let stdout = if json_out {
                let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
                s.push('\n');
                s
            } else {
                human::render(&report)
            };
            RunOutput { code: EXIT_OK, stdout, stderr: String::new() }
        }
        Err(e) => RunOutput {
            code: e.code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", e.message()),
        },
    }
}
