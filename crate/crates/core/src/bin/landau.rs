use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use landau_hermite::diagnostics::cli::{cmd_fit, cmd_run, cmd_verify, init_threads, CliError};
use landau_hermite::diagnostics::Suite;
use landau_hermite::solver::SolverConfig;

#[derive(Parser)]
#[command(name = "landau", about = "Hermite–Fourier simulator for the linearized-plus-nonlinear Landau equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a simulation from a config file.
    Run {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Execute a verification suite and print JSON lines.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
    /// Fit decay rates from a spectra CSV.
    Fit {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    match real_main() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> Result<bool, CliError> {
    init_threads()?;
    match Cli::parse().command {
        Command::Run { config, out } => {
            let cfg = match config {
                Some(p) => SolverConfig::from_file(&p)?,
                None => SolverConfig::default(),
            };
            let s = cmd_run(&cfg, &out)?;
            println!(
                "steps {}  ‖g₀‖ {:.6e}  sup‖g‖ {:.6e}  ‖g(T)‖ {:.6e}  energy constant {}",
                s.steps,
                s.initial_norm,
                s.sup_norm,
                s.final_norm,
                s.energy_constant.map_or("n/a".into(), |c| format!("{c:.4}"))
            );
            if let Some(l) = s.picard_lambda {
                println!("picard contraction factor {l:.3e}");
            }
            Ok(true)
        }
        Command::Verify { suite } => cmd_verify(suite, std::io::stdout().lock()),
        Command::Fit { input, out } => {
            let path = cmd_fit(&input, &out)?;
            println!("{}", path.display());
            Ok(true)
        }
    }
}
