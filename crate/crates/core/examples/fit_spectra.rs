//! Decay-rate fits on planted spectra.

use landau_hermite::diagnostics::fit::{fit_rates, fit_velocity_rate};

fn main() {
    let a = 0.8;
    let s: Vec<f64> = (0..=16).map(|n| (-a * ((2 * n + 3) as f64).sqrt()).exp()).collect();
    let r: Vec<f64> = (0..=8).map(|m| 1e-3 * (-0.5 * m as f64).exp()).collect();
    let rates = fit_rates(0.5, &s, &r);
    println!("planted (0.8, 0.5) → fitted ({:.4}, {:.4})", rates.c_v().unwrap(), rates.c_x().unwrap());

    let algebraic: Vec<f64> = (0..=16).map(|n| (1.0 + n as f64).powi(-2)).collect();
    let fit = fit_velocity_rate(&algebraic).unwrap();
    println!("algebraic spectrum: residual {:.3}, exponential: {}", fit.residual, fit.is_exponential());

    let thin = [1.0, 1e-5, 1e-11, 1e-15, 0.0];
    println!("under-resolved: {:?}", fit_velocity_rate(&thin));
}
