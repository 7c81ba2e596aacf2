use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use spin_orbits::orbits::OrbitLabel;
use spin_orbits::report::{cmd_orbits, cmd_spectrum, cmd_verify, Format, Report, VerifyOptions};

/// Exact-arithmetic toolkit for small nilpotent orbits of so(2n, C).
#[derive(Parser)]
#[command(name = "spin-orbits", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, default_value = "table")]
    format: String,

    /// Write the rendered report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Atlas of the small nilpotent orbits at one rank.
    Orbits {
        #[arg(long)]
        n: usize,
    },
    /// Enumerate one K-type spectrum family up to a cutoff.
    Spectrum {
        #[arg(long)]
        n: usize,
        /// Orbit partition, e.g. `3,2,2,1` or `2,2,2,2:II`.
        #[arg(long)]
        orbit: String,
        /// Component-group character: an index or a name like `psi3`, `Triv`.
        #[arg(long)]
        psi: Option<String>,
        /// Unipotent K-structure: an index or a name like `Xi2`, `Xi'`.
        #[arg(long)]
        xi: Option<String>,
        /// Bound on sum |a_i|.
        #[arg(long, default_value_t = 4)]
        cutoff: i64,
    },
    /// Run a verification suite.
    Verify {
        /// One of: matchup, oracle, clifford, bgg, pinrep, all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        cutoff: Option<i64>,
        /// Rank parameter for the branching / pinrep oracles.
        #[arg(long)]
        p: Option<usize>,
        /// Overrides the matrix-model dimension bound.
        #[arg(long)]
        max_dim: Option<u64>,
    },
}

fn run(cli: &Cli) -> spin_orbits::Result<Report> {
    match &cli.command {
        Command::Orbits { n } => cmd_orbits(*n),
        Command::Spectrum {
            n,
            orbit,
            psi,
            xi,
            cutoff,
        } => {
            let orbit = OrbitLabel::from_str(orbit)?;
            cmd_spectrum(&orbit, *n, psi.as_deref(), xi.as_deref(), *cutoff)
        }
        Command::Verify {
            suite,
            n,
            cutoff,
            p,
            max_dim,
        } => cmd_verify(
            suite,
            VerifyOptions {
                n: *n,
                cutoff: *cutoff,
                p: *p,
                max_dim: *max_dim,
            },
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match Format::from_str(&cli.format) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(report) => {
            let rendered = report.render(format);
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &rendered) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{rendered}");
            }
            if report.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
