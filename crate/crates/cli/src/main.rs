//! `hermlift`: verify the central-value/period identity for a fixture and expose the
//! underlying computations. JSON goes to stdout, a readable summary to stderr.
//!
//! Exit codes: 0 within tolerance, 2 outside tolerance, 1 on any other failure.

mod commands;
mod config;
mod output;

use clap::{Parser, Subcommand};
use config::{Overrides, Settings};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "hermlift", version, about = "Hermitian Maass lift periods and central L-values")]
struct Cli {
    /// Tolerance: relative gap for identities, quadrature target for `petersson`.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Truncate newform coefficients to this many terms.
    #[arg(long, global = true)]
    nmax: Option<usize>,
    /// Fixture cache directory (also settable by HERMLIFT_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// File of `key = value` settings; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare the normalized central value with the class-group average of c0.
    Verify {
        #[arg(long = "D")]
        d: u64,
        #[arg(long)]
        kappa: u32,
        #[arg(long)]
        fixture: PathBuf,
        /// Also write the report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check the genus-twisted identity for the class of norm C.
    Corollary {
        #[arg(long = "D")]
        d: u64,
        #[arg(long)]
        kappa: u32,
        #[arg(long)]
        class_norm: u64,
        /// Fixture file; defaults to the cached or bundled form for D.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Constant term c0 of the pullback for one ideal class.
    Pullback {
        #[arg(long = "D")]
        d: u64,
        #[arg(long)]
        kappa: u32,
        #[arg(long)]
        class_index: usize,
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Central value L(1/2, f × g) of a fixture.
    Lvalue {
        #[arg(long)]
        fixture: PathBuf,
    },
    /// Reduced forms, class number and genus structure for −D.
    Classgroup {
        #[arg(value_name = "D")]
        d: u64,
    },
    /// Petersson norm of the level-one eigenform of the given weight.
    Petersson {
        #[arg(long)]
        weight: u32,
    },
    /// Place a newform in the cache, fetching it remotely if allowed.
    Ingest {
        #[arg(long)]
        label: String,
        /// Allow network access.
        #[arg(long)]
        fetch: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let flags = Overrides {
        tol: cli.tol,
        nmax: cli.nmax,
        cache_dir: cli.cache_dir.clone(),
    };
    let settings = match Settings::resolve(&flags, cli.config.as_deref()) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let result = match cli.command {
        Command::Verify {
            d,
            kappa,
            fixture,
            json,
        } => commands::verify(&settings, d, kappa, &fixture, json.as_deref()),
        Command::Corollary {
            d,
            kappa,
            class_norm,
            fixture,
        } => commands::corollary(&settings, d, kappa, class_norm, fixture.as_deref()),
        Command::Pullback {
            d,
            kappa,
            class_index,
            fixture,
        } => commands::pullback(&settings, d, kappa, class_index, fixture.as_deref()),
        Command::Lvalue { fixture } => commands::lvalue(&settings, &fixture),
        Command::Classgroup { d } => commands::classgroup(d),
        Command::Petersson { weight } => commands::petersson(&settings, flags.tol, weight),
        Command::Ingest { label, fetch } => commands::ingest(&settings, &label, fetch),
    };
    match result {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
