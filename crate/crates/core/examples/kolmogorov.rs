//! Exact Fourier solution of the Kolmogorov model and its smoothing norm.

use landau_hermite::kolmogorov::*;
use landau_hermite::Complex64;

fn main() -> Result<(), KolmogorovError> {
    let s0 = FourierGridState::from_fn(1, AxisLattice::new(8, 1.0), AxisLattice::covering(12.0, 1.0 / 64.0), |eta, xi| {
        Complex64::new((-(eta[0] * eta[0]) / 8.0 - xi[0] * xi[0]).exp(), 0.0)
    })?;
    let c = 1.0 / 64.0;
    let mut rows = Vec::new();
    for i in 1..=10 {
        let t = i as f64 / 10.0;
        let p = exact_propagate(&s0, t)?;
        rows.push((t, c, smoothing_norm(&p.state, c)));
    }
    write_smoothing_csv(std::io::stdout().lock(), &rows)?;

    let exact = exact_propagate(&s0, 1.0)?.state;
    for dt in [1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0] {
        let err = imex_reference_march(&s0, 1.0, dt)?.distance(&exact)?;
        eprintln!("dt = {dt:.5}: reference march error {err:.3e}");
    }
    Ok(())
}
