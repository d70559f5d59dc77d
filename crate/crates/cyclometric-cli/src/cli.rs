//! Flag grammar and dispatch.
//!
//! Everything is controlled by flags — no config files and no global state.
//! The single environment variable `CYCLOMETRIC_BUDGET` may override the
//! default evaluation budget for exhaustive enumerations, and an explicit
//! `--budget` flag overrides both. Exit codes: 0 success, 1 validation or
//! usage error, 2 budget exceeded or bounded search exhausted.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cyclometric_core::empirical::DEFAULT_EVAL_BUDGET;
use cyclometric_core::{BoxSpec, CycloElement};

use crate::commands;
use crate::error::CliError;
use crate::parse::parse_rational;
use crate::wire::parse_element_arg;

/// Name of the only recognized environment variable: a decimal `u64`
/// overriding the default evaluation budget.
pub const BUDGET_ENV_VAR: &str = "CYCLOMETRIC_BUDGET";

#[derive(Debug, Parser)]
#[command(
    name = "cyclometric",
    version,
    about = "Exact trace-metric computations on prime cyclotomic fields",
    disable_help_subcommand = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// An element flag accepts `{"p": …, "coeffs": …}` JSON, a bare coefficient
/// array (with `--p`), or `@file` containing either.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Squared trace norm, trace, and trace vector of one element
    Norm(NormArgs),
    /// Exact and normalized distance between two elements
    Distance(DistanceArgs),
    /// Degree and stabilizer of the subfield generated by an element
    Galois(GaloisArgs),
    /// Closeness criterion: does nearness to `a` force containing Q(a)?
    Krasner(KrasnerArgs),
    /// Smallest n such that a + b/n generates Q(a, b)
    Primitive(PrimitiveArgs),
    /// Closed-form moments of the squared distance over a box
    Moments(MomentsArgs),
    /// Exhaustively enumerated statistic over all ordered pairs of box points
    Bruteforce(BruteforceArgs),
    /// Concentration experiment: fraction of pairs outside the typical band
    Concentrate(ConcentrateArgs),
}

#[derive(Debug, Args)]
pub struct NormArgs {
    /// Element to measure
    #[arg(long)]
    pub element: String,
    /// Modulus for bare coefficient arrays
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    /// First element
    #[arg(long)]
    pub a: String,
    /// Second element
    #[arg(long)]
    pub b: String,
    /// Modulus for bare coefficient arrays
    #[arg(long)]
    pub p: Option<u64>,
    /// Box radius; adds both normalized distances to the report
    #[arg(long)]
    pub n: Option<u64>,
}

#[derive(Debug, Args)]
pub struct GaloisArgs {
    /// Element generating the subfield
    #[arg(long)]
    pub element: String,
    /// Modulus for bare coefficient arrays
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Debug, Args)]
pub struct KrasnerArgs {
    /// Element whose conjugate spacing sets the closeness threshold
    #[arg(long)]
    pub a: String,
    /// Candidate approximant
    #[arg(long)]
    pub b: String,
    /// Modulus for bare coefficient arrays
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Debug, Args)]
pub struct PrimitiveArgs {
    /// First generator
    #[arg(long)]
    pub a: String,
    /// Second generator
    #[arg(long)]
    pub b: String,
    /// Modulus for bare coefficient arrays
    #[arg(long)]
    pub p: Option<u64>,
    /// Largest denominator to try before giving up (exit 2)
    #[arg(long, default_value_t = 64)]
    pub max_n: u64,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    /// Odd prime modulus
    #[arg(long)]
    pub p: u64,
    /// Box radius
    #[arg(long)]
    pub n: u64,
    /// Concentration tolerance; adds the tail bound to the report
    #[arg(long)]
    pub eps: Option<String>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BruteforceArgs {
    /// Odd prime modulus
    #[arg(long)]
    pub p: u64,
    /// Box radius
    #[arg(long)]
    pub n: u64,
    /// Statistic to enumerate
    #[arg(long, value_enum)]
    pub what: WhatArg,
    /// Evaluation budget override (ordered pairs allowed to be visited)
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ConcentrateArgs {
    /// Odd prime modulus
    #[arg(long)]
    pub p: u64,
    /// Box radius
    #[arg(long)]
    pub n: u64,
    /// Band half-width around the typical normalized distance
    #[arg(long)]
    pub eps: String,
    /// Exhaustive classification or seeded Monte Carlo estimate
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    /// Sample count (required for --mode mc)
    #[arg(long)]
    pub samples: Option<u64>,
    /// Monte Carlo seed (default 0)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Evaluation budget override for exhaustive mode
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WhatArg {
    M2,
    M4,
    R,
    Diameter,
}

impl WhatArg {
    pub fn name(self) -> &'static str {
        match self {
            WhatArg::M2 => "m2",
            WhatArg::M4 => "m4",
            WhatArg::R => "r",
            WhatArg::Diameter => "diameter",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Mc,
}

/// Resolve the evaluation budget: `--budget` flag, then `CYCLOMETRIC_BUDGET`,
/// then the built-in default.
fn resolve_budget(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(value) = flag {
        return Ok(value);
    }
    match std::env::var(BUDGET_ENV_VAR) {
        Ok(text) => text.trim().parse::<u64>().map_err(|_| {
            CliError::Usage(format!(
                "{BUDGET_ENV_VAR}: `{text}` is not an unsigned integer"
            ))
        }),
        Err(_) => Ok(DEFAULT_EVAL_BUDGET),
    }
}

fn element_pair(
    a: &str,
    b: &str,
    p_flag: Option<u64>,
) -> Result<(CycloElement, CycloElement), CliError> {
    Ok((parse_element_arg(a, p_flag)?, parse_element_arg(b, p_flag)?))
}

/// Run one parsed subcommand to its report text.
pub fn execute(command: Command) -> Result<String, CliError> {
    match command {
        Command::Norm(args) => {
            let element = parse_element_arg(&args.element, args.p)?;
            commands::norm_command(&element)
        }
        Command::Distance(args) => {
            let (a, b) = element_pair(&args.a, &args.b, args.p)?;
            commands::distance_command(&a, &b, args.n)
        }
        Command::Galois(args) => {
            let element = parse_element_arg(&args.element, args.p)?;
            commands::galois_command(&element)
        }
        Command::Krasner(args) => {
            let (a, b) = element_pair(&args.a, &args.b, args.p)?;
            commands::krasner_command(&a, &b)
        }
        Command::Primitive(args) => {
            let (a, b) = element_pair(&args.a, &args.b, args.p)?;
            commands::primitive_command(&a, &b, args.max_n)
        }
        Command::Moments(args) => {
            let bx = BoxSpec::new(args.p, args.n)?;
            let eps = args
                .eps
                .as_deref()
                .map(|text| parse_rational(text, "--eps"))
                .transpose()?;
            commands::moments_command(&bx, eps.as_ref(), args.format)
        }
        Command::Bruteforce(args) => {
            let bx = BoxSpec::new(args.p, args.n)?;
            let budget = resolve_budget(args.budget)?;
            commands::bruteforce_command(&bx, args.what, budget)
        }
        Command::Concentrate(args) => {
            let bx = BoxSpec::new(args.p, args.n)?;
            let eps = parse_rational(&args.eps, "--eps")?;
            match args.mode {
                ModeArg::Exhaustive => {
                    let budget = resolve_budget(args.budget)?;
                    commands::concentrate_exhaustive_command(&bx, &eps, budget, args.format)
                }
                ModeArg::Mc => {
                    let samples = args.samples.ok_or_else(|| {
                        CliError::Usage("--mode mc requires --samples".to_string())
                    })?;
                    commands::concentrate_mc_command(
                        &bx,
                        &eps,
                        samples,
                        args.seed.unwrap_or(0),
                        args.format,
                    )
                }
            }
        }
    }
}

/// Parse arguments, run the subcommand, print the report, and return the
/// process exit code. Reports go to stdout; errors go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version land here; they print to stdout and
            // succeed. Genuine usage errors print to stderr and exit 1.
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(report) => {
            print!("{report}");
            0
        }
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}
