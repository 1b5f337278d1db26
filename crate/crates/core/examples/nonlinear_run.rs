//! Small-data nonlinear run at desk scale with spectra and fitted rates.
//!
//! `cargo run --release --example nonlinear_run`

use landau_hermite::diagnostics::{fit_series, DiagnosticsSeries};
use landau_hermite::solver::{run, SolverConfig, SolverError};

fn main() -> Result<(), SolverError> {
    let cfg = SolverConfig::default();
    let mut series = DiagnosticsSeries::new();
    let out = run(&cfg, |k, g| {
        if k % cfg.record_every == 0 {
            series.record(g);
        }
        Ok(())
    })?;
    println!("{:>6} {:>9} {:>9} {:>8} {:>8}", "t", "c_v", "c_x", "resid_v", "resid_x");
    for r in fit_series(&series) {
        let (v, x) = (r.velocity.unwrap(), r.spatial.unwrap());
        println!("{:>6.3} {:>9.4} {:>9.4} {:>8.4} {:>8.4}", r.t, v.rate, x.rate, v.residual, x.residual);
    }
    let l = &out.ledger;
    println!("sup‖g‖/‖g₀‖ = {:.4}, energy constant {:.3}", l.sup_norm() / l.initial_norm(), l.energy_constant().unwrap());
    Ok(())
}
