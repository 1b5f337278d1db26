use std::fs;

use landau_hermite::diagnostics::cli::{cmd_fit, cmd_run, cmd_verify};
use landau_hermite::diagnostics::fit::{fit_gaussian_rate, fit_spatial_rate, fit_velocity_rate, NON_EXPONENTIAL_RESIDUAL};
use landau_hermite::diagnostics::*;
use landau_hermite::kolmogorov::{exact_propagate, AxisLattice, FourierGridState};
use landau_hermite::solver::*;
use landau_hermite::Complex64;

fn small_config() -> SolverConfig {
    SolverConfig {
        n: 6,
        k: 3,
        dt: 1e-2,
        t_final: 0.2,
        record_every: 5,
        snapshot_every: 10,
        ..SolverConfig::default()
    }
}

#[test]
fn planted_spatial_rate() {
    let r: Vec<f64> = (0..9).map(|m| (-0.4 * m as f64).exp()).collect();
    let fit = fit_spatial_rate(&r).unwrap();
    assert!((fit.rate - 0.4).abs() < 1e-12);
}

#[test]
fn level_spectrum_matches_norm() {
    let g = initial_state(&small_config()).unwrap();
    let s = hermite_level_spectrum(&g);
    let total: f64 = s.iter().map(|x| x * x).sum();
    assert!((total - g.h_r_norm_sqr()).abs() < 1e-10 * g.h_r_norm_sqr());
    let r = fourier_spectrum(&g);
    assert_eq!(r.len(), 4);
    let plain: f64 = g.coeffs().iter().map(|c| c.norm_sqr()).sum();
    assert!((r.iter().map(|x| x * x).sum::<f64>() - plain).abs() < 1e-12 * plain);
}

#[test]
fn rough_datum_is_flagged_non_exponential() {
    let cfg = SolverConfig::default();
    let g = initial_state(&cfg).unwrap();
    let v = fit_velocity_rate(&hermite_level_spectrum(&g)).unwrap();
    let x = fit_spatial_rate(&fourier_spectrum(&g)).unwrap();
    assert!(v.residual > NON_EXPONENTIAL_RESIDUAL && !v.is_exponential());
    assert!(x.residual > NON_EXPONENTIAL_RESIDUAL && !x.is_exponential());
}

/// Datum `e^{−ε|ξ|²}` with every `η` mode equal; at `ξ = 0` the exact solution
/// is `exp(−(t³/3 + εt²)|η|²)`.
#[test]
fn kolmogorov_gaussian_rate() {
    let eps = 1e-3;
    let s0 = FourierGridState::from_fn(1, AxisLattice::new(8, 1.0), AxisLattice::covering(12.0, 1.0 / 64.0), |_, xi| {
        Complex64::new((-eps * xi[0] * xi[0]).exp(), 0.0)
    })
    .unwrap();
    let x0 = (0..s0.xi_lattice().len()).find(|&x| s0.xi_point(x)[0] == 0.0).unwrap();
    for t in [0.5, 0.75, 1.0] {
        let st = exact_propagate(&s0, t).unwrap().state;
        let (radii, values): (Vec<f64>, Vec<f64>) = (0..st.eta_lattice().len())
            .map(|e| (st.eta_point(e)[0].abs(), st.slice(e)[x0].norm()))
            .unzip();
        let fit = fit_gaussian_rate(&radii, &values).unwrap();
        let closed = t * t * t / 3.0;
        assert!((fit.rate - closed).abs() < 0.05 * closed, "t {t}: {} vs {closed}", fit.rate);
    }
}

#[test]
fn spectra_csv_round_trip() {
    let mut series = DiagnosticsSeries::new();
    let mut g = initial_state(&small_config()).unwrap();
    series.record(&g);
    g.set_time(0.5);
    series.record(&g);
    let mut buf = Vec::new();
    series.write_csv(&mut buf).unwrap();
    assert!(String::from_utf8_lossy(&buf).starts_with("t,kind,index,value\n0.0,hermite,0,"));
    let back = DiagnosticsSeries::read_csv(buf.as_slice()).unwrap();
    assert_eq!(back, series);
}

#[test]
fn run_writes_artifacts_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let cfg = small_config();
    let s = cmd_run(&cfg, &a).unwrap();
    cmd_run(&cfg, &b).unwrap();
    assert_eq!(s.steps, 20);
    assert!(s.sup_norm <= 2.0 * s.initial_norm);
    for name in ["ledger.csv", "spectra.csv", "snapshots/step_000000.lnsp", "snapshots/step_000020.lnsp"] {
        let x = fs::read(a.join(name)).unwrap();
        assert_eq!(x, fs::read(b.join(name)).unwrap(), "{name}");
    }
    let snap = read_snapshot(fs::File::open(a.join("snapshots/step_000020.lnsp")).unwrap()).unwrap();
    assert!((snap.time() - 0.2).abs() < 1e-12);

    let path = cmd_fit(&a.join("spectra.csv"), &a).unwrap();
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,c_v,c_x,resid_v,resid_x"));
    // the spatial spectrum has only four shells, so c_x is under-resolved
    assert!(lines.next().unwrap().contains(",nan,"));
}

#[test]
fn verify_emits_json_lines() {
    let mut out = Vec::new();
    let ok = cmd_verify(Suite::Ladder, &mut out).unwrap();
    assert!(ok);
    let text = String::from_utf8(out).unwrap();
    assert_eq!(text.lines().count(), 4);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["suite"], "ladder");
        assert_eq!(v["status"], "pass");
    }
}
