//! Spectra, decay-rate fits, verification suites and the command-line front
//! end.
//!
//! The smoothing statement is probed through two spectra of a state: the
//! weighted Hermite level spectrum `S_n` and the Fourier shell spectrum
//! `R_m`. Exponential decay of `S_n` in `√(2n+3)` stands in for analyticity in
//! `v`, exponential decay of `R_m` in `m` for analyticity in `x`.

pub mod cli;
pub mod fit;
pub mod series;
pub mod verify;

pub use fit::{fit_rates, fit_series, FitError, FittedRates, LineFit};
pub use series::{fourier_spectrum, hermite_level_spectrum, DiagnosticsSeries};
pub use verify::{run_suite, Check, Suite};
