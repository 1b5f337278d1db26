//! Least-squares decay-rate fits of recorded spectra.
//!
//! The velocity rate `ĉ_v` is the slope of `−log S_n` against the
//! harmonic-oscillator scale `√(2n+3)`; the spatial rate `ĉ_x` is the slope of
//! `−log R_m` against the shell radius `m`. Only entries above
//! [`RESOLVED_FLOOR`] take part.

use std::io::Write;

use serde::Serialize;
use thiserror::Error;

use super::series::DiagnosticsSeries;
use crate::solver::SolverError;

pub const RESOLVED_FLOOR: f64 = 1e-13;
pub const MIN_POINTS: usize = 5;
/// Fits whose relative residual exceeds this are flagged non-exponential.
pub const NON_EXPONENTIAL_RESIDUAL: f64 = 0.18;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum FitError {
    #[error("only {points} resolved points, need {needed}")]
    Underresolved { points: usize, needed: usize },
}

/// `log y ≈ intercept − rate·x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LineFit {
    pub rate: f64,
    pub intercept: f64,
    /// `sqrt(SS_res / SS_tot)` of the logarithms; `0` for an exact exponential.
    pub residual: f64,
    pub points: usize,
}

impl LineFit {
    pub fn is_exponential(&self) -> bool {
        self.residual <= NON_EXPONENTIAL_RESIDUAL
    }
}

/// Fit `log y` against `x` over the resolved entries.
pub fn fit_log_linear(xs: &[f64], ys: &[f64]) -> Result<LineFit, FitError> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(_, &y)| y > RESOLVED_FLOOR && y.is_finite())
        .map(|(&x, &y)| (x, y.ln()))
        .collect();
    if pts.len() < MIN_POINTS {
        return Err(FitError::Underresolved {
            points: pts.len(),
            needed: MIN_POINTS,
        });
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let residual = if syy > 0.0 { (ss_res / syy).sqrt() } else { 0.0 };
    Ok(LineFit {
        rate: -slope,
        intercept,
        residual,
        points: pts.len(),
    })
}

/// `√(2n+3)` for `n = 0..len`.
pub fn hermite_abscissa(len: usize) -> Vec<f64> {
    (0..len).map(|n| ((2 * n + 3) as f64).sqrt()).collect()
}

pub fn fit_velocity_rate(hermite: &[f64]) -> Result<LineFit, FitError> {
    fit_log_linear(&hermite_abscissa(hermite.len()), hermite)
}

pub fn fit_spatial_rate(fourier: &[f64]) -> Result<LineFit, FitError> {
    let xs: Vec<f64> = (0..fourier.len()).map(|m| m as f64).collect();
    fit_log_linear(&xs, fourier)
}

/// `log R ≈ b − κ m²`, the Gaussian profile of a Kolmogorov-type decay.
pub fn fit_gaussian_rate(radii: &[f64], values: &[f64]) -> Result<LineFit, FitError> {
    let xs: Vec<f64> = radii.iter().map(|m| m * m).collect();
    fit_log_linear(&xs, values)
}

/// `t̃ = min{1, t}`
pub fn t_tilde(t: f64) -> f64 {
    t.min(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FittedRates {
    pub t: f64,
    pub velocity: Result<LineFit, FitError>,
    pub spatial: Result<LineFit, FitError>,
}

impl FittedRates {
    pub fn c_v(&self) -> Option<f64> {
        self.velocity.as_ref().ok().map(|f| f.rate)
    }
    pub fn c_x(&self) -> Option<f64> {
        self.spatial.as_ref().ok().map(|f| f.rate)
    }
}

pub fn fit_rates(t: f64, hermite: &[f64], fourier: &[f64]) -> FittedRates {
    FittedRates {
        t,
        velocity: fit_velocity_rate(hermite),
        spatial: fit_spatial_rate(fourier),
    }
}

pub fn fit_series(series: &DiagnosticsSeries) -> Vec<FittedRates> {
    (0..series.len())
        .map(|i| fit_rates(series.times[i], &series.hermite[i], &series.fourier[i]))
        .collect()
}

#[derive(Serialize)]
struct RateRow {
    t: f64,
    c_v: String,
    c_x: String,
    resid_v: String,
    resid_x: String,
}

fn cell(x: Option<f64>) -> String {
    x.map_or_else(|| "nan".to_string(), |v| format!("{v:e}"))
}

/// `t, c_v, c_x, resid_v, resid_x`; under-resolved fits are written as `nan`.
pub fn write_fitted_rates_csv<W: Write>(w: W, rates: &[FittedRates]) -> Result<(), SolverError> {
    let mut out = csv::Writer::from_writer(w);
    for r in rates {
        out.serialize(RateRow {
            t: r.t,
            c_v: cell(r.c_v()),
            c_x: cell(r.c_x()),
            resid_v: cell(r.velocity.as_ref().ok().map(|f| f.residual)),
            resid_x: cell(r.spatial.as_ref().ok().map(|f| f.residual)),
        })?;
    }
    out.flush()?;
    Ok(())
}
