//! Command-line front end for `lieform`.
//!
//! Exit codes: 0 success or verified, 1 refuted or false, 2 input or parse
//! error, 3 unknown or uncertified verdict.

pub mod commands;
pub mod error;
pub mod manifest;
pub mod refs;

use std::collections::HashMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::commands::Report;
use crate::error::{CliError, CliResult};
use crate::manifest::Manifest;
use crate::refs::Context;

#[derive(Debug, Parser)]
#[command(
    name = "lieform",
    version,
    about = "Exact computations with Lie algebras over number field towers"
)]
pub struct Cli {
    /// Manifest of named fields and algebras (one JSON object per line).
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    /// Emit one JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate the Jacobi identity and print structural invariants.
    Check { algebra: String },
    /// Conjugate structure constants by a field automorphism.
    Conjugate {
        algebra: String,
        /// `id`, an index into the Galois group, or images like `i->-i`.
        #[arg(long)]
        sigma: String,
        /// Subfield the automorphism must fix.
        #[arg(long, default_value = "Q")]
        over: String,
    },
    /// Restrict scalars to a lower level of the tower.
    Restrict {
        algebra: String,
        #[arg(long)]
        to: String,
    },
    /// Extend scalars to a field containing the algebra's field.
    Extend {
        algebra: String,
        #[arg(long)]
        to: String,
    },
    /// Verify that the restriction, extended back, is the sum of conjugates.
    VerifySumconjugate {
        algebra: String,
        #[arg(long, default_value = "Q")]
        over: String,
    },
    /// Split into indecomposable ideals.
    Decompose {
        algebra: String,
        /// Restrict scalars to this level first.
        #[arg(long)]
        over: Option<String>,
        /// Random trials in the idempotent search.
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Pfaffian form of a 2-step nilpotent algebra.
    Pfaffian { algebra: String },
    /// The invariant c = S^3/T^2 of an algebra of type (8, 2).
    InvariantC { algebra: String },
    /// Count algebras over the same field with the same restriction.
    CountForms {
        algebra: String,
        #[arg(long, default_value = "Q")]
        over: String,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Print a catalog family member.
    Catalog {
        /// heisenberg, abelian, g_lambda, r3, r3_plus_abelian, g1 or nintot.
        family: String,
        #[arg(long, default_value = "Q(i)")]
        field: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
    },
    /// Compare two algebras summand by summand.
    Match {
        first: String,
        second: String,
        #[arg(long)]
        trials: Option<usize>,
    },
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Output {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let as_json = cli.json;
    match execute(cli) {
        Ok(report) => {
            let stdout = if as_json {
                let mut v = report.json;
                v["exit_code"] = json!(report.outcome.exit_code());
                serde_json::to_string_pretty(&v).expect("plain data") + "\n"
            } else {
                report.text
            };
            Output {
                code: report.outcome.exit_code(),
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let code = e.exit_code();
            let stdout = if as_json {
                serde_json::to_string_pretty(&json!({ "error": e.to_string(), "exit_code": code })).expect("plain data")
                    + "\n"
            } else {
                String::new()
            };
            Output {
                code,
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn load(path: Option<&PathBuf>) -> CliResult<Context> {
    let Some(path) = path else {
        return Ok(Context::empty());
    };
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Context::new(Manifest::parse(&text)?)
}

pub fn execute(cli: Cli) -> CliResult<Report> {
    let ctx = load(cli.manifest.as_ref())?;
    match &cli.command {
        Command::Check { algebra } => commands::check(&ctx, algebra),
        Command::Conjugate { algebra, sigma, over } => commands::conjugate_cmd(&ctx, algebra, sigma, over),
        Command::Restrict { algebra, to } => commands::restrict(&ctx, algebra, to),
        Command::Extend { algebra, to } => commands::extend(&ctx, algebra, to),
        Command::VerifySumconjugate { algebra, over } => commands::verify_sumconjugate_cmd(&ctx, algebra, over),
        Command::Decompose { algebra, over, trials } => commands::decompose(&ctx, algebra, over.as_deref(), *trials),
        Command::Pfaffian { algebra } => commands::pfaffian(&ctx, algebra),
        Command::InvariantC { algebra } => commands::invariant_c_cmd(&ctx, algebra),
        Command::CountForms { algebra, over, trials } => commands::count_forms_cmd(&ctx, algebra, over, *trials),
        Command::Catalog {
            family,
            field,
            lambda,
            alpha,
            n,
            k,
            j,
        } => {
            let mut params = HashMap::new();
            let strings = [("lambda", lambda.clone()), ("alpha", alpha.clone())];
            let counts = [("n", *n), ("k", *k), ("j", *j)];
            params.extend(
                strings
                    .into_iter()
                    .filter_map(|(key, v)| v.map(|v| (key.to_string(), v))),
            );
            params.extend(
                counts
                    .into_iter()
                    .filter_map(|(key, v)| v.map(|v| (key.to_string(), v.to_string()))),
            );
            commands::catalog(&ctx, family, field, &params)
        }
        Command::Match { first, second, trials } => commands::match_cmd(&ctx, first, second, *trials),
    }
}
