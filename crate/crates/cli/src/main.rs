//! `odpn`: parse, compare, validate and decompose ordinal diagrams, enumerate
//! fragments, iterate operators over carriers and run the check harness.

use std::cmp::Ordering;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use odpn::decomposition::{decompose, induced_seq};
use odpn::enumeration::{enumerate_fragment, Carrier, GenConfig};
use odpn::harness::{any_failed, render, run_named_suite, RunOptions};
use odpn::operators::{iterate, OpName, Operator, Universe};
use odpn::validity::System;
use odpn::{compare, parse_lines, print, DiagramError, IndexSeq, SystemParams};

/// Exit status for rejected input: syntax errors and invalid diagrams.
const EXIT_REJECTED: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "odpn", version, about = "Ordinal diagrams for Pi_N-reflection")]
struct Cli {
    /// Diagram system: `od`, `m32` or `piN`.
    #[arg(long, global = true, default_value = "piN", value_parser = ["od", "m32", "piN"])]
    system: String,
    /// Reflection level N (at least 4; ignored by `m32`).
    #[arg(long = "N", global = true, default_value_t = 4, value_parser = clap::value_parser!(u32).range(4..))]
    n: u32,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Parse and validate a diagram, printing its canonical text.
    Parse { term: String },
    /// Print the canonical text of a term without validating it.
    Print { term: String },
    /// Compare two diagrams: prints LT, EQ or GT.
    Cmp { a: String, b: String },
    /// Print the validity report; exits with status 2 if invalid.
    Validate { term: String },
    /// Print the decomposition `alpha(s)` for a sequence written `s[d,l):bits`.
    Decompose { term: String, seq: String },
    /// Print the induced sequence `s[k; alpha, beta]`.
    Seq { k: u32, a: String, b: String },
    /// Iterate an operator over a carrier file and print the stages.
    Iterate {
        /// `gamma2`, `gamma32` or `gammaN`; defaults to the system's operator.
        #[arg(long)]
        op: Option<String>,
        /// Diagram-per-line carrier file.
        #[arg(long)]
        carrier: PathBuf,
    },
    /// Enumerate every valid diagram up to a symbol bound.
    Enumerate {
        #[arg(long)]
        max_symbols: u32,
    },
    /// Run harness checks on an enumerated fragment; exits with 1 on any failure.
    Check {
        /// Suite name, `all`, a check id, or a comma-separated list.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_symbols: u32,
        /// Seed for sampled checks.
        #[arg(long, env = "ODPN_SEED", default_value_t = 0)]
        seed: u64,
    },
}

fn params(cli: &Cli) -> SystemParams {
    match cli.system.as_str() {
        "od" => SystemParams::od(cli.n),
        "m32" => SystemParams::m32(),
        _ => SystemParams::pi_n(cli.n),
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<ExitCode> {
    let params = params(cli);
    let sys = System::new(params);
    match &cli.verb {
        Verb::Parse { term } => writeln!(out, "{}", print(&sys.parse(term)?))?,
        Verb::Print { term } => writeln!(out, "{}", print(&odpn::parse(term)?))?,
        Verb::Cmp { a, b } => {
            let word = match compare(&sys.parse(a)?, &sys.parse(b)?) {
                Ordering::Less => "LT",
                Ordering::Equal => "EQ",
                Ordering::Greater => "GT",
            };
            writeln!(out, "{word}")?;
        }
        Verb::Validate { term } => {
            let report = sys.validate(&odpn::parse(term)?);
            writeln!(out, "{report}")?;
            if !report.valid {
                return Ok(ExitCode::from(EXIT_REJECTED));
            }
        }
        Verb::Decompose { term, seq } => {
            let s: IndexSeq = seq.parse()?;
            writeln!(out, "{}", decompose(&sys.parse(term)?, &s)?)?;
        }
        Verb::Seq { k, a, b } => {
            writeln!(out, "{}", induced_seq(params.n, *k, &sys.parse(a)?, &sys.parse(b)?)?)?;
        }
        Verb::Iterate { op, carrier } => {
            let text = std::fs::read_to_string(carrier).with_context(|| format!("reading {}", carrier.display()))?;
            let mut ds = Vec::new();
            for d in parse_lines(&text)? {
                ds.push(sys.ensure(d)?);
            }
            let carrier = Carrier::from_diagrams(params, ds);
            let uni = Universe::new(&carrier)?;
            let op = match op {
                Some(name) => Operator::new(name.parse::<OpName>()?, &uni)?,
                None => Operator::for_system(&uni)?,
            };
            write!(out, "{}", iterate(&op)?.render(&uni))?;
        }
        Verb::Enumerate { max_symbols } => {
            write!(out, "{}", enumerate_fragment(&GenConfig::new(params, *max_symbols))?.to_text())?;
        }
        Verb::Check { suite, max_symbols, seed } => {
            let carrier = enumerate_fragment(&GenConfig::new(params, *max_symbols))?;
            let opts = RunOptions { seed: *seed, ..RunOptions::default() };
            let results = run_named_suite(&carrier, suite, &opts)?;
            write!(out, "{}", render(&results))?;
            if any_failed(&results) {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(&cli, &mut stdout) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let rejected = matches!(
                e.downcast_ref::<DiagramError>(),
                Some(DiagramError::Syntax { .. } | DiagramError::Invalid { .. })
            );
            if rejected {
                ExitCode::from(EXIT_REJECTED)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
