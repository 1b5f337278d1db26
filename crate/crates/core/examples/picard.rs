//! Picard iteration on a reduced lattice and its agreement with the direct
//! nonlinear march.

use landau_hermite::solver::picard::picard_solve;
use landau_hermite::solver::step::march;
use landau_hermite::solver::{initial_state, Forcing, SolverConfig, SolverError, Stepper};

fn main() -> Result<(), SolverError> {
    let cfg = SolverConfig {
        n: 8,
        k: 4,
        dt: 2e-3,
        t_final: 0.2,
        ..SolverConfig::default()
    };
    for scale in [1.0, 100.0] {
        let cfg = SolverConfig {
            amplitude: scale * cfg.amplitude,
            ..cfg.clone()
        };
        let g0 = initial_state(&cfg)?;
        let out = picard_solve(&g0, cfg.dt, cfg.steps(), cfg.picard_tol, cfg.picard_max_iter)?;
        println!("‖g₀‖ = {:.0e}: distances {:?}, λ = {:.3e}", cfg.amplitude, out.report.distances.iter().map(|d| format!("{d:.2e}")).collect::<Vec<_>>(), out.report.lambda);
        let direct = march(&Stepper::new(cfg.n, cfg.dt)?, &g0, cfg.steps(), |_| Forcing::SelfInteraction, |_, _| Ok(()))?;
        println!("  Picard vs direct at T: {:.2e}", out.final_state.h_r_distance(&direct));
    }
    Ok(())
}
