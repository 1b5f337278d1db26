//! The `run`, `verify` and `fit` commands. All files are written from the
//! calling thread.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::fit::{fit_series, write_fitted_rates_csv};
use super::series::DiagnosticsSeries;
use super::verify::{run_suite, Suite};
use crate::solver::{run, write_snapshot, ConfigError, SolverConfig, SolverError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Usage(String),
}

fn io_at(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path).map(BufWriter::new).map_err(io_at(path))
}

/// Cap the rayon pool from `LANDAU_THREADS` when set.
pub fn init_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("LANDAU_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| CliError::Usage(format!("LANDAU_THREADS must be a positive integer, got {v:?}")))?;
        // A pool built earlier in the process wins; that is fine.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    Ok(())
}

/// Summary of a finished run.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub steps: usize,
    pub initial_norm: f64,
    pub sup_norm: f64,
    pub final_norm: f64,
    pub energy_constant: Option<f64>,
    pub picard_lambda: Option<f64>,
}

/// Run a simulation and write `ledger.csv`, `spectra.csv` and, when
/// `snapshot_every > 0`, `snapshots/step_XXXXXX.lnsp` under `out`.
pub fn cmd_run(cfg: &SolverConfig, out: &Path) -> Result<RunSummary, CliError> {
    cfg.validate()?;
    fs::create_dir_all(out).map_err(io_at(out))?;
    let snap_dir = out.join("snapshots");
    if cfg.snapshot_every > 0 {
        fs::create_dir_all(&snap_dir).map_err(io_at(&snap_dir))?;
    }
    let steps = cfg.steps();
    let mut series = DiagnosticsSeries::new();
    let output = run(cfg, |k, g| {
        if k % cfg.record_every.max(1) == 0 || k == steps {
            series.record(g);
        }
        if cfg.snapshot_every > 0 && (k % cfg.snapshot_every == 0 || k == steps) {
            let path = snap_dir.join(format!("step_{k:06}.lnsp"));
            let w = File::create(&path).map(BufWriter::new)?;
            write_snapshot(w, g)?;
        }
        Ok(())
    })?;

    let ledger_path = out.join("ledger.csv");
    output.ledger.write_csv(create(&ledger_path)?)?;
    let spectra_path = out.join("spectra.csv");
    series.write_csv(create(&spectra_path)?)?;

    Ok(RunSummary {
        steps,
        initial_norm: output.ledger.initial_norm(),
        sup_norm: output.ledger.sup_norm(),
        final_norm: output.final_state.h_r_norm(),
        energy_constant: output.ledger.energy_constant(),
        picard_lambda: output.picard.map(|p| p.lambda),
    })
}

/// Run a suite, writing one JSON line per check. Returns whether all passed.
pub fn cmd_verify<W: Write>(suite: Suite, mut out: W) -> Result<bool, CliError> {
    let checks = run_suite(suite);
    let mut ok = true;
    for c in &checks {
        ok &= c.passed();
        writeln!(out, "{}", c.to_json()).map_err(io_at(Path::new("<stdout>")))?;
    }
    Ok(ok)
}

/// Fit recorded spectra and write `fitted_rates.csv` under `out`.
pub fn cmd_fit(input: &Path, out: &Path) -> Result<PathBuf, CliError> {
    let series = DiagnosticsSeries::read_csv(File::open(input).map_err(io_at(input))?)?;
    let rates = fit_series(&series);
    fs::create_dir_all(out).map_err(io_at(out))?;
    let path = out.join("fitted_rates.csv");
    write_fitted_rates_csv(create(&path)?, &rates)?;
    Ok(path)
}
