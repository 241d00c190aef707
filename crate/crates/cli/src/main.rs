use std::process::ExitCode;
use std::time::Instant;

use anisogauge::Exec;
use anisogauge_cli::commands::{
    self, BOUND_ENV, EXIT_FAILED, EXIT_OK, EXIT_USAGE, SWEEP_BOUND, VERIFY_BOUND,
};
use anisogauge_cli::{render, CliError, CliResult, Format};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

/// Censuses, group checks and the group-theoreticality criterion for the
/// Z/p-gaugings of the anisotropic plane over F_q.
#[derive(Parser)]
#[command(name = "anisogauge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simple objects and dimensions of the gauged category of dimension p²q².
    Census {
        p: u64,
        q: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Largest q accepted.
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Group orders, fusion axioms, censuses and the criterion for one pair.
    Verify {
        p: u64,
        q: u64,
        /// Largest p·q² accepted.
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Existence gate and verification over all odd prime pairs p < q ≤ qmax.
    Sweep {
        qmax: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Largest qmax accepted (at most 200).
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Rank of the Drinfeld double of a group given by its multiplication
    /// table (first line n, then n lines of n indices).
    DoubleRank {
        group_file: std::path::PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn run(cmd: Command) -> CliResult<(anisogauge_cli::RunReport, Format)> {
    let env = std::env::var(BOUND_ENV).ok();
    let env = env.as_deref();
    let exec = Exec::default();
    Ok(match cmd {
        Command::Census {
            p,
            q,
            format,
            bound,
        } => {
            let bound = commands::resolve_bound(bound, env, commands::default_census_bound())?;
            (commands::census(p, q, bound)?, format)
        }
        Command::Verify {
            p,
            q,
            bound,
            format,
        } => {
            let bound = commands::resolve_bound(bound, env, VERIFY_BOUND)?;
            (commands::verify(p, q, bound, exec)?, format)
        }
        Command::Sweep {
            qmax,
            format,
            bound,
        } => {
            let bound = commands::resolve_bound(bound, env, SWEEP_BOUND)?;
            (commands::sweep(qmax, bound, exec)?, format)
        }
        Command::DoubleRank { group_file, format } => {
            let text = std::fs::read_to_string(&group_file)
                .map_err(|e| CliError::usage(format!("{}: {e}", group_file.display())))?;
            (commands::double_rank(&text)?, format)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::from(EXIT_OK as u8),
                _ => ExitCode::from(EXIT_USAGE as u8),
            };
        }
    };
    let start = Instant::now();
    let code = match run(cli.command) {
        Ok((report, format)) => {
            print!("{}", render(&report, format));
            if report.passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    };
    eprintln!("elapsed: {:.1} ms", start.elapsed().as_secs_f64() * 1e3);
    ExitCode::from(code as u8)
}
