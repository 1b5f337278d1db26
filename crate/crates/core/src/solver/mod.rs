//! Time integration of `∂_t g + v·∇_x g + L g = Γ(g, g)` on a periodic
//! Fourier(x) × Hermite(v) truncation.
//!
//! `L` is treated implicitly through its level blocks, transport and `Γ`
//! explicitly (first-order IMEX Euler). The Picard mode solves the linear
//! problems `∂_t gⁿ⁺¹ + v·∇_x gⁿ⁺¹ + L gⁿ⁺¹ = Γ(gⁿ, gⁿ⁺¹)` with the same
//! stepper and reports the empirical contraction factor.

pub mod config;
pub mod ledger;
pub mod picard;
pub mod run;
pub mod snapshot;
pub mod state;
pub mod step;

use thiserror::Error;

pub use config::{ConfigError, InitKind, Scheme, SolverConfig};
pub use ledger::{EnergyLedger, LedgerRow};
pub use picard::{picard_solve, PicardReport};
pub use run::{run, RunOutput};
pub use snapshot::{read_snapshot, write_snapshot};
pub use state::{apply_transport, gamma_conv, initial_state, Lattice, PhaseState};
pub use step::{step_imex, Forcing, Stepper};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("coefficient tensor has length {got}, expected {expected}")]
    Shape { expected: usize, got: usize },
    #[error("initial datum: {0}")]
    Init(String),
    #[error("step guard: dt·λ_max = {product} exceeds {limit}")]
    StepGuard { product: f64, limit: f64 },
    #[error("divergence at t = {time}: norm {norm:.3e} exceeds {limit:.3e}")]
    Diverged { time: f64, norm: f64, limit: f64 },
    #[error("Picard iterate {iterate} did not contract: λ = {lambda:.4}")]
    NonContraction { iterate: usize, lambda: f64 },
    #[error("Picard iteration stopped after {iterations} iterates at distance {distance:.3e}")]
    PicardUnconverged { iterations: usize, distance: f64 },
    #[error("snapshot: {0}")]
    Snapshot(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
