use clap::{Args, Parser, Subcommand};
use pellcf::poly::{parse_poly, Rat};

#[derive(Debug, Parser)]
#[command(name = "pellcf", version, about = "Continued fractions of polynomial square roots")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Finite-window knobs, echoed in every report.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Partial quotients a_0..a_N to compute
    #[arg(long, default_value_t = 32)]
    pub steps: usize,
    /// Working precision in bits for numeric values
    #[arg(long, default_value_t = 256)]
    pub precision: usize,
    /// Zero-test tolerance: a rational such as 1/1000 or a power such as 2^-64
    #[arg(long, default_value = "2^-64", value_parser = parse_tolerance)]
    pub tolerance: Rat,
    /// Emit the JSON report instead of text
    #[arg(long)]
    pub json: bool,
    /// Full repetitions required before a degree period is reported
    #[arg(long, default_value_t = 3)]
    pub window_validate: usize,
    /// Search window for `pell`
    #[arg(long, default_value_t = 200)]
    pub max_steps: usize,
    /// Wall-clock budget in seconds; expansions stop early when it runs out
    #[arg(long)]
    pub time_budget: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand √D and detect periods
    Expand {
        poly: String,
        /// Include the exact partial quotients
        #[arg(long)]
        quotients: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Search for a solution of x² − D y² = c
    Pell {
        poly: String,
        #[command(flatten)]
        common: Common,
    },
    /// Decompose D = c(t² − 1)D₁² and locate the roots-of-unity part
    Analyze {
        poly: String,
        #[command(flatten)]
        common: Common,
    },
    /// Check the expansion against the W-equation and the Pellian part
    Verify {
        poly: String,
        #[command(flatten)]
        common: Common,
    },
    /// Build a radicand with prescribed b values
    GenExample {
        #[arg(long, default_value_t = 3)]
        l: usize,
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value = "2", value_parser = parse_rational)]
        h: Rat,
        /// Also construct the witness for n = l·m
        #[arg(long)]
        witness: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Analyze and expand every `label: polynomial` line of a file
    Corpus {
        path: String,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Expand { .. } => "expand",
            Command::Pell { .. } => "pell",
            Command::Analyze { .. } => "analyze",
            Command::Verify { .. } => "verify",
            Command::GenExample { .. } => "gen-example",
            Command::Corpus { .. } => "corpus",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Expand { common, .. }
            | Command::Pell { common, .. }
            | Command::Analyze { common, .. }
            | Command::Verify { common, .. }
            | Command::GenExample { common, .. }
            | Command::Corpus { common, .. } => common,
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rat, String> {
    let p = parse_poly(s).map_err(|e| e.to_string())?;
    if !p.is_constant() {
        return Err(format!("`{s}` is not a constant"));
    }
    Ok(p.coeff(0))
}

/// A positive rational, also written `base^exponent` with a negative exponent.
pub fn parse_tolerance(s: &str) -> Result<Rat, String> {
    let value = match s.split_once('^') {
        Some((base, exp)) => {
            let base = parse_rational(base.trim())?;
            let exp: i32 = exp.trim().parse().map_err(|_| format!("bad exponent in `{s}`"))?;
            if base == Rat::from_integer(0.into()) {
                return Err("tolerance base must be nonzero".into());
            }
            base.pow(exp)
        }
        None => parse_rational(s)?,
    };
    if value <= Rat::from_integer(0.into()) {
        return Err(format!("tolerance must be positive, got {value}"));
    }
    Ok(value)
}
