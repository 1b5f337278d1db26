//! Orchestration of a full run from a [`SolverConfig`].

use super::config::{Scheme, SolverConfig};
use super::ledger::EnergyLedger;
use super::picard::{picard_solve, PicardReport};
use super::state::{initial_state, PhaseState};
use super::step::{march, Forcing, Stepper};
use super::SolverError;

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub ledger: EnergyLedger,
    pub final_state: PhaseState,
    pub picard: Option<PicardReport>,
}

/// Run `cfg` to its final time. `observer(step, state)` sees every state,
/// starting with the initial datum; the ledger records every step.
pub fn run(
    cfg: &SolverConfig,
    mut observer: impl FnMut(usize, &PhaseState) -> Result<(), SolverError>,
) -> Result<RunOutput, SolverError> {
    cfg.validate()?;
    let g0 = initial_state(cfg)?;
    run_from(cfg, &g0, &mut observer)
}

/// As [`run`], from an explicit initial state.
pub fn run_from(
    cfg: &SolverConfig,
    g0: &PhaseState,
    observer: &mut dyn FnMut(usize, &PhaseState) -> Result<(), SolverError>,
) -> Result<RunOutput, SolverError> {
    let steps = cfg.steps();
    let stepper = Stepper::new(g0.cap(), cfg.dt)?;
    let mut ledger = EnergyLedger::new();
    let mut visit = |k: usize, g: &PhaseState| {
        ledger.record(g);
        observer(k, g)
    };
    let (final_state, picard) = match (cfg.scheme, cfg.nonlinear) {
        (_, false) => (march(&stepper, g0, steps, |_| Forcing::None, &mut visit)?, None),
        (Scheme::ImexEuler, true) => (march(&stepper, g0, steps, |_| Forcing::SelfInteraction, &mut visit)?, None),
        (Scheme::Picard, true) => {
            let out = picard_solve(g0, cfg.dt, steps, cfg.picard_tol, cfg.picard_max_iter)?;
            let frozen = out.frozen;
            let g = march(&stepper, g0, steps, |k| Forcing::Frozen(&frozen[k]), &mut visit)?;
            (g, Some(out.report))
        }
    };
    Ok(RunOutput {
        ledger,
        final_state,
        picard,
    })
}
