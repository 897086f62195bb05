//! The `hyperell` command line: genus-two identity verification, genus-one
//! elliptic checks, static transformations, the AKNS check and PDE runs.
//!
//! Every subcommand produces a JSON report (CSV for `elliptic-check`) on
//! standard output or in `--out`. Exit status is 0 when every requested check
//! passes, 1 when any check fails or is skipped, and 2 on a usage error.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

mod args;
mod elliptic;
mod g2;
mod output;
mod pde;

pub use args::{Axis, InitSpec};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Pde(#[from] hyperell::PdeError),
    #[error(transparent)]
    Elliptic(#[from] hyperell::EllipticError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "hyperell",
    version,
    about = "Exact genus-two identity checks, elliptic functions and soliton PDE runs"
)]
struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for parallel checks.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verify genus-two identities on one curve.
    VerifyG2(g2::VerifyArgs),
    /// Kummer surface relations K₂ (and K₁ when λ₆ = 0).
    Kummer(g2::CurveArgs),
    /// Half-period relation, plus the G_II projective map when λ₁ = λ₅ = 4.
    HalfPeriod(g2::CurveArgs),
    /// Genus-one residuals on a complex grid, written as CSV.
    EllipticCheck(elliptic::EllipticArgs),
    /// Factorization identities of the static transformations.
    StaticTransforms(elliptic::StaticArgs),
    /// Zero-curvature check of the AKNS pair on random jets.
    AknsCheck(pde::AknsArgs),
    /// Evolve KdV or generalized mKdV and report residuals and invariant drift.
    PdeRun(pde::PdeArgs),
    /// Verify an identity set on seeded random curves.
    Sweep(g2::SweepArgs),
}

/// Run the command line `argv` (program name first) and return the exit status.
pub fn run<S: AsRef<str>>(argv: &[S]) -> i32 {
    let cli = match Cli::try_parse_from(argv.iter().map(|s| s.as_ref())) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<bool, CliError> {
    let sink = output::Sink::new(cli.out);
    let go = move || match cli.command {
        Command::VerifyG2(a) => g2::verify(&a, &sink),
        Command::Kummer(a) => g2::kummer(&a, &sink),
        Command::HalfPeriod(a) => g2::half_period(&a, &sink),
        Command::EllipticCheck(a) => elliptic::check(&a, &sink),
        Command::StaticTransforms(a) => elliptic::static_transforms(&a, &sink),
        Command::AknsCheck(a) => pde::akns(&a, &sink),
        Command::PdeRun(a) => pde::run(&a, &sink),
        Command::Sweep(a) => g2::sweep(&a, &sink),
    };
    match cli.jobs {
        Some(0) => Err(CliError::Usage("--jobs must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(go),
        None => go(),
    }
}
