use landau_hermite::hermite::{Axis, HermiteSpectrum, MultiIndex};
use landau_hermite::landau::{apply_l1, collision_invariants, gamma_apply};
use landau_hermite::solver::config::InitKind;
use landau_hermite::solver::picard::picard_solve;
use landau_hermite::solver::state::rough_datum;
use landau_hermite::solver::step::march;
use landau_hermite::solver::*;
use landau_hermite::Complex64;

fn small_rough(d_x: usize, k: usize, cap: usize, amp: f64, seed: u64) -> PhaseState {
    let mut s = PhaseState::zeros(Lattice::new(d_x, k), cap, 2.0);
    rough_datum(&mut s, seed, 3.0, 2.0);
    let n = s.h_r_norm();
    s.scale(Complex64::new(amp / n, 0.0));
    s
}

#[test]
fn transport_vanishes_without_space() {
    let s = small_rough(0, 4, 6, 1.0, 1);
    assert_eq!(apply_transport(&s).h_r_norm(), 0.0);
}

#[test]
fn transport_is_skew() {
    let s = small_rough(2, 3, 8, 1.0, 2);
    let t = apply_transport(&s);
    assert!(t.h_r_inner(&s).re.abs() < 1e-10 * t.h_r_norm() * s.h_r_norm());
}

#[test]
fn homogeneous_gamma_conv_is_gamma_apply() {
    let f = small_rough(0, 0, 6, 1.0, 3);
    let g = small_rough(0, 0, 6, 1.0, 4);
    let out = gamma_conv(&f, &g);
    let direct = gamma_apply(&f.spectrum(0), &g.spectrum(0));
    assert!(out.spectrum(0).max_abs_diff(&direct) < 1e-15);
}

#[test]
fn ground_state_at_origin_gives_minus_l1() {
    let lat = Lattice::new(1, 3);
    let mut f = PhaseState::zeros(lat, 6, 2.0);
    f.set_spectrum(lat.index(&[0]).unwrap(), &HermiteSpectrum::ground(6));
    let g = small_rough(1, 3, 6, 1.0, 5);
    let out = gamma_conv(&f, &g);
    for m in 0..lat.len() {
        let want = -&apply_l1(&g.spectrum(m));
        assert!(out.spectrum(m).max_abs_diff(&want) < 1e-12);
    }
}

#[test]
fn self_interaction_conserves_per_mode() {
    let g = small_rough(1, 3, 8, 1.0, 6);
    let out = gamma_conv(&g, &g);
    let inv = collision_invariants(8);
    for m in 0..g.modes() {
        let s = out.spectrum(m);
        for i in &inv {
            assert!(landau_hermite::hermite::inner_product(&s, i).norm() < 1e-12);
        }
    }
}

#[test]
fn triple_norm_of_ground_state_is_three() {
    let lat = Lattice::new(1, 2);
    let mut s = PhaseState::zeros(lat, 4, 2.0);
    assert_eq!(s.triple_norm(), 0.0);
    s.set_spectrum(lat.index(&[0]).unwrap(), &HermiteSpectrum::ground(4));
    assert!((s.triple_norm_sqr() - 3.0).abs() < 1e-13);
}

#[test]
fn kernel_is_stationary_without_space() {
    let lat = Lattice::new(0, 0);
    let mut g = PhaseState::zeros(lat, 6, 2.0);
    let mut s = HermiteSpectrum::zeros(6);
    for (i, inv) in collision_invariants(6).iter().enumerate() {
        s.axpy(Complex64::new(1.0 + i as f64, 0.0), inv);
    }
    g.set_spectrum(0, &s);
    let st = Stepper::new(6, 1e-2).unwrap();
    let out = march(&st, &g, 100, |_| Forcing::None, |_, _| Ok(())).unwrap();
    assert!(out.spectrum(0).max_abs_diff(&s) < 1e-13);
}

#[test]
fn pair_mode_amplitude_after_unit_time() {
    let cfg = SolverConfig {
        n: 6,
        k: 0,
        d_x: 0,
        dt: 1e-2,
        t_final: 1.0,
        nonlinear: false,
        init: InitKind::Basis {
            alpha: [1, 1, 0],
            eta: vec![],
        },
        amplitude: 1.0,
        ..SolverConfig::default()
    };
    let out = run(&cfg, |_, _| Ok(())).unwrap();
    let got = out.final_state.spectrum(0).get(MultiIndex::pair(Axis::X, Axis::Y)).re;
    assert!((got - (1.0f64 + 12.0 * 1e-2).powi(-100)).abs() < 1e-13);
    assert_eq!(out.ledger.len(), 101);
    assert!(out.ledger.strictly_increasing());
}

#[test]
fn self_convergence_is_first_order() {
    let g0 = small_rough(1, 3, 6, 1e-2, 7);
    let final_at = |dt: f64| {
        let st = Stepper::new(6, dt).unwrap();
        march(&st, &g0, (0.2 / dt).round() as usize, |_| Forcing::SelfInteraction, |_, _| Ok(())).unwrap()
    };
    let reference = final_at(0.2 / 64.0);
    let e1 = final_at(0.2 / 4.0).h_r_distance(&reference);
    let e2 = final_at(0.2 / 8.0).h_r_distance(&reference);
    let ratio = e1 / e2;
    assert!(ratio > 1.6 && ratio < 2.6, "ratio {ratio}");
}

#[test]
fn reality_is_preserved() {
    let g0 = small_rough(2, 2, 6, 1e-2, 8);
    assert_eq!(g0.hermitian_defect(), 0.0);
    let st = Stepper::new(6, 1e-2).unwrap();
    let g = march(&st, &g0, 20, |_| Forcing::SelfInteraction, |_, _| Ok(())).unwrap();
    assert!(g.hermitian_defect() < 1e-12 * g.h_r_norm());
}

#[test]
fn divergence_guard_fires() {
    let g0 = small_rough(1, 2, 6, 50.0, 9);
    let st = Stepper::new(6, 1e-2).unwrap();
    let r = march(&st, &g0, 200, |_| Forcing::SelfInteraction, |_, _| Ok(()));
    assert!(matches!(r, Err(SolverError::Diverged { .. })), "{r:?}");
}

#[test]
fn picard_matches_direct_march() {
    let g0 = small_rough(1, 3, 6, 1e-2, 10);
    let (dt, steps, tol) = (1e-2, 30, 1e-12);
    let out = picard_solve(&g0, dt, steps, tol, 20).unwrap();
    assert!(out.report.converged);
    assert!(out.report.lambda < 1.0);
    let st = Stepper::new(6, dt).unwrap();
    let direct = march(&st, &g0, steps, |_| Forcing::SelfInteraction, |_, _| Ok(())).unwrap();
    assert!(out.final_state.h_r_distance(&direct) < 10.0 * tol);
}

#[test]
fn picard_scheme_in_run() {
    let cfg = SolverConfig {
        n: 6,
        k: 2,
        dt: 1e-2,
        t_final: 0.1,
        scheme: Scheme::Picard,
        ..SolverConfig::default()
    };
    let out = run(&cfg, |_, _| Ok(())).unwrap();
    let report = out.picard.unwrap();
    assert!(report.converged && report.lambda < 1.0);
}

#[test]
fn snapshot_round_trip() {
    let mut g = small_rough(2, 2, 5, 1.0, 11);
    g.set_time(0.25);
    let mut buf = Vec::new();
    write_snapshot(&mut buf, &g).unwrap();
    assert_eq!(&buf[..4], b"LNSP");
    assert_eq!(buf.len(), 4 + 4 + 12 + 16 + 16 * g.coeffs().len());
    let back = read_snapshot(buf.as_slice()).unwrap();
    assert_eq!(back, g);
    buf[0] = b'X';
    assert!(read_snapshot(buf.as_slice()).is_err());
}

#[test]
fn ledger_csv_header() {
    let cfg = SolverConfig {
        n: 4,
        k: 1,
        dt: 1e-2,
        t_final: 0.02,
        ..SolverConfig::default()
    };
    let out = run(&cfg, |_, _| Ok(())).unwrap();
    let mut buf = Vec::new();
    out.ledger.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("t,h_r_norm,triple_norm,dissipation_integral\n"));
    assert_eq!(text.lines().count(), 4);
    assert!(out.ledger.all_finite());
}
