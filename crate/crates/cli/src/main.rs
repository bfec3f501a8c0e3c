//! `domino`: exact domino tiling counts, two-sided tables and the checks
//! built on them.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use domino_core::{Error, Limits};

#[derive(Parser, Debug)]
#[command(
    name = "domino",
    version,
    about = "Signed domino tiling counts and reciprocity checks"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Worker threads for the parallel kernels (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// TOML file overriding the size caps.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// T(m, n); negative n is read off the extrapolated table.
    #[command(allow_negative_numbers = true)]
    Count { m: usize, n: i64 },
    /// T(m, n) for every n in [from, to].
    #[command(allow_negative_numbers = true)]
    Table {
        m: usize,
        #[arg(long)]
        from: i64,
        #[arg(long)]
        to: i64,
    },
    /// Exhaustive signed count of G(m, n).
    #[command(allow_negative_numbers = true)]
    Oracle {
        m: usize,
        n: i64,
        /// Include the signed graph.
        #[arg(long)]
        graph: bool,
        /// Include every matching with its sign.
        #[arg(long)]
        matchings: bool,
    },
    /// Transfer matrix of width m (row-major).
    Matrix { m: usize },
    /// Minimal and characteristic recurrences of T(m, .).
    Recurrence { m: usize },
    /// Generating function P/Q and its reversal symmetries.
    Genfun { m: usize },
    /// Check T(m, -2-n) = eps(m, n) T(m, n) for 0 <= n <= nmax.
    Verify {
        m: usize,
        #[arg(long)]
        nmax: usize,
        /// Also count G(m, -2-n) exhaustively where small enough.
        #[arg(long)]
        oracle: bool,
    },
    /// T(k, m, n) for the k x m x n box.
    Count3d { k: usize, m: usize, n: usize },
    /// Check |T(k, m, -2-n)| = |T(k, m, n)| for 0 <= n <= nmax.
    Verify3d {
        k: usize,
        m: usize,
        #[arg(long)]
        nmax: usize,
    },
    /// Weighted matching polynomials of G(2, n) for down_to <= n <= 3.
    #[command(allow_negative_numbers = true)]
    Laurent {
        #[arg(long)]
        down_to: i64,
    },
}

fn load_limits(path: Option<&PathBuf>) -> Result<Limits, String> {
    let Some(path) = path else {
        return Ok(Limits::default());
    };
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Caller mistakes map to 2; a failed internal consistency check maps to 1.
fn error_code(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) | Error::WidthMismatch { .. } | Error::CapExceeded { .. } => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let limits = match load_limits(cli.config.as_ref()) {
        Ok(l) => l,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }

    match commands::run(&cli.command, &limits) {
        Ok(outcome) => {
            let out = render::render(&outcome, cli.format);
            print!("{out}");
            ExitCode::from(if outcome.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
