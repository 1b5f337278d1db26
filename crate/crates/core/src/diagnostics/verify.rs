//! Verification suites behind `landau verify`.
//!
//! Each check reports its worst observed value next to the tolerance it is
//! held to; a suite passes when every check does.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::hermite::{
    angular, differentiate_v, enumerate_indices, inner_product, lower, multiply_v, raise, Axis, HermiteSpectrum,
    MultiIndex,
};
use crate::kolmogorov::{
    exact_propagate, imex_reference_march, kolmogorov_exponent, smoothing_norm, AxisLattice, FourierGridState,
};
use crate::landau::{
    apply_l, apply_l1, apply_l2, collision_invariants, gamma_apply, gamma_quadrature_oracle, gamma_weak_d,
    gamma_weak_e, level_blocks_l, triple_norm_sqr_v,
};
use crate::weights::{
    check_log_derivative_identity, standard_directions, standard_identity_grid, submultiplicativity_check,
    transport_identity_residual, ukai_floor, ukai_lower_ratio, ukai_upper_ratio, UkaiGrid, WeightParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One line of the JSON-lines report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: String,
    pub check: String,
    pub status: Status,
    pub worst_value: f64,
    pub tolerance: f64,
}

impl Check {
    /// Passes when `worst ≤ tolerance`.
    pub fn at_most(suite: &str, check: &str, worst: f64, tolerance: f64) -> Self {
        Self::new(suite, check, worst, tolerance, worst <= tolerance)
    }

    /// Passes when `worst ≥ tolerance`, for lower bounds.
    pub fn at_least(suite: &str, check: &str, worst: f64, tolerance: f64) -> Self {
        Self::new(suite, check, worst, tolerance, worst >= tolerance)
    }

    fn new(suite: &str, check: &str, worst: f64, tolerance: f64, ok: bool) -> Self {
        Self {
            suite: suite.to_string(),
            check: check.to_string(),
            status: if ok && worst.is_finite() { Status::Pass } else { Status::Fail },
            worst_value: worst,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Ladder,
    LinearOp,
    GammaOracle,
    Weights,
    Kolmogorov,
    All,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "ladder" => Suite::Ladder,
            "linear_op" => Suite::LinearOp,
            "gamma_oracle" => Suite::GammaOracle,
            "weights" => Suite::Weights,
            "kolmogorov" => Suite::Kolmogorov,
            "all" => Suite::All,
            other => return Err(format!("unknown suite {other:?}")),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Ladder => "ladder",
            Suite::LinearOp => "linear_op",
            Suite::GammaOracle => "gamma_oracle",
            Suite::Weights => "weights",
            Suite::Kolmogorov => "kolmogorov",
            Suite::All => "all",
        })
    }
}

pub fn run_suite(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Ladder => ladder_suite(12, 100, 11),
        Suite::LinearOp => linear_op_suite(12, 100, 12),
        Suite::GammaOracle => {
            let mut out = gamma_representation_suite(10, 100, 13);
            out.extend(gamma_conservation_suite(10, 100, 14));
            out.extend(gamma_oracle_suite(20, 15));
            out
        }
        Suite::Weights => weights_suite(100_000, 16),
        Suite::Kolmogorov => kolmogorov_suite(),
        Suite::All => [Suite::Ladder, Suite::LinearOp, Suite::GammaOracle, Suite::Weights, Suite::Kolmogorov]
            .into_iter()
            .flat_map(run_suite)
            .collect(),
    }
}

/// Complex coefficients uniform in `[−1, 1]²` up to `degree`, scaled to unit norm.
pub fn random_spectrum(rng: &mut impl Rng, cap: usize, degree: usize) -> HermiteSpectrum {
    let mut s = HermiteSpectrum::zeros(cap);
    for a in enumerate_indices(degree.min(cap)) {
        s.set(a, Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    }
    let n = s.norm();
    s.scale(Complex64::new(1.0 / n, 0.0));
    s
}

/// `[a₋,a₊] = 1`, adjointness of `a₊` and `a₋`, skew-symmetry of `L_{k,j}`
/// and `L_{k,j} = vⱼ∂ₖ − vₖ∂ⱼ`.
pub fn ladder_suite(cap: usize, samples: usize, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut comm, mut adj, mut skew, mut ident): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for _ in 0..samples {
        let s = random_spectrum(&mut rng, cap, cap - 2);
        let s1 = random_spectrum(&mut rng, cap, cap - 1);
        let s2 = random_spectrum(&mut rng, cap, cap);
        let full = random_spectrum(&mut rng, cap, cap);
        for j in Axis::ALL {
            let c = &lower(j, &raise(j, &s)) - &raise(j, &lower(j, &s));
            comm = comm.max(c.max_abs_diff(&s));
            adj = adj.max((inner_product(&raise(j, &s1), &s2) - inner_product(&s1, &lower(j, &s2))).norm());
        }
        for k in Axis::ALL {
            for j in Axis::ALL {
                if k == j {
                    continue;
                }
                let lf = angular(k, j, &full).expect("distinct axes");
                let ls2 = angular(k, j, &s2).expect("distinct axes");
                skew = skew.max((inner_product(&lf, &s2) + inner_product(&full, &ls2)).norm());
                let composed = &multiply_v(j, &differentiate_v(k, &s)) - &multiply_v(k, &differentiate_v(j, &s));
                ident = ident.max(angular(k, j, &s).expect("distinct axes").max_abs_diff(&composed));
            }
        }
    }
    vec![
        Check::at_most("ladder", "commutation", comm, 1e-12),
        Check::at_most("ladder", "adjointness", adj, 1e-12),
        Check::at_most("ladder", "angular_skew_symmetry", skew, 1e-12),
        Check::at_most("ladder", "angular_ladder_identity", ident, 1e-12),
    ]
}

/// Kernel, level-block spectra, the pair eigenvalue and the coercivity identity.
pub fn linear_op_suite(cap: usize, samples: usize, seed: u64) -> Vec<Check> {
    let kernel = collision_invariants(cap)
        .iter()
        .map(|s| apply_l(s).norm())
        .fold(0.0, f64::max);

    let blocks = level_blocks_l(cap);
    let mut asym: f64 = 0.0;
    let mut min_eig = f64::INFINITY;
    for b in &blocks {
        asym = asym.max((b - b.transpose()).amax());
        min_eig = min_eig.min(b.clone().symmetric_eigen().eigenvalues.min());
    }

    let pair = HermiteSpectrum::basis(cap, MultiIndex::pair(Axis::X, Axis::Y));
    let eig = apply_l(&pair).max_abs_diff(&(&pair * 12.0));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coer: f64 = 0.0;
    for _ in 0..samples {
        let g = random_spectrum(&mut rng, cap, cap - 2);
        let lhs = inner_product(&apply_l1(&g), &g);
        let rhs = triple_norm_sqr_v(&g) - 3.0 * g.norm_sqr();
        coer = coer.max((lhs - Complex64::new(rhs, 0.0)).norm());
    }
    vec![
        Check::at_most("linear_op", "kernel_annihilated", kernel, 1e-12),
        Check::at_most("linear_op", "blocks_symmetric", asym, 1e-12),
        Check::at_least("linear_op", "blocks_min_eigenvalue", min_eig, -1e-10),
        Check::at_most("linear_op", "pair_eigenvalue_12", eig, 1e-10),
        Check::at_most("linear_op", "coercivity_identity", coer, 1e-10),
    ]
}

/// Weak D-form, weak E-form and the strong form agree; ground-state slots.
pub fn gamma_representation_suite(cap: usize, samples: usize, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut de, mut da): (f64, f64) = (0.0, 0.0);
    let (mut l1, mut l2): (f64, f64) = (0.0, 0.0);
    let phi0 = HermiteSpectrum::ground(cap);
    for _ in 0..samples {
        let f = random_spectrum(&mut rng, cap, cap);
        let g = random_spectrum(&mut rng, cap, cap);
        let h = random_spectrum(&mut rng, cap, cap);
        let d = gamma_weak_d(&f, &g, &h);
        let e = gamma_weak_e(&f, &g, &h);
        let a = inner_product(&gamma_apply(&f, &g), &h);
        de = de.max((d - e).norm());
        da = da.max((d - a).norm());
        l1 = l1.max(gamma_apply(&phi0, &g).max_abs_diff(&-&apply_l1(&g)));
        l2 = l2.max(gamma_apply(&g, &phi0).max_abs_diff(&-&apply_l2(&g)));
    }
    vec![
        Check::at_most("gamma_oracle", "weak_d_vs_weak_e", de, 1e-12),
        Check::at_most("gamma_oracle", "weak_d_vs_strong", da, 1e-12),
        Check::at_most("gamma_oracle", "ground_first_slot", l1, 1e-12),
        Check::at_most("gamma_oracle", "ground_second_slot", l2, 1e-12),
    ]
}

/// Collision moments of `Γ`. Mass is conserved by `Γ(f, g)` for every pair;
/// momentum and energy only by the symmetric combination `Γ(f,g) + Γ(g,f)`,
/// in particular by `Γ(g, g)`.
pub fn gamma_conservation_suite(cap: usize, samples: usize, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let invariants = collision_invariants(cap);
    let (mut mass, mut diagonal, mut symmetric): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..samples {
        let f = random_spectrum(&mut rng, cap, cap);
        let g = random_spectrum(&mut rng, cap, cap);
        let fg = gamma_apply(&f, &g);
        let sym = &fg + &gamma_apply(&g, &f);
        let gg = gamma_apply(&g, &g);
        mass = mass.max(inner_product(&fg, &invariants[0]).norm());
        for inv in &invariants {
            diagonal = diagonal.max(inner_product(&gg, inv).norm());
            symmetric = symmetric.max(inner_product(&sym, inv).norm());
        }
    }
    vec![
        Check::at_most("gamma_oracle", "mass_any_pair", mass, 1e-10),
        Check::at_most("gamma_oracle", "conservation_diagonal", diagonal, 1e-10),
        Check::at_most("gamma_oracle", "conservation_symmetrized", symmetric, 1e-10),
    ]
}

/// Strong form against the quadrature oracle on degree ≤ 3 inputs; the
/// output cap is raised to 5 so nothing is truncated.
pub fn gamma_oracle_suite(samples: usize, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let f = random_spectrum(&mut rng, 3, 3);
        let g = random_spectrum(&mut rng, 5, 3);
        let exact = gamma_apply(&f, &g);
        let rel = match gamma_quadrature_oracle(&f, &g) {
            Ok(q) => (&exact - &q).norm() / q.norm().max(f64::MIN_POSITIVE),
            Err(_) => f64::INFINITY,
        };
        worst = worst.max(rel);
    }
    vec![Check::at_most("gamma_oracle", "quadrature_relative_error", worst, 1e-8)]
}

/// Ukai floors and upper constants, the two weight identities and the
/// submultiplicativity bound.
pub fn weights_suite(submult_samples: usize, seed: u64) -> Vec<Check> {
    let grid = UkaiGrid::standard();
    let mut out = Vec::new();
    for alpha in [1.0, 2.0] {
        let floor = ukai_floor(alpha).expect("floor known for α = 1, 2");
        let low = ukai_lower_ratio(alpha, &grid);
        let high = ukai_upper_ratio(alpha, &grid);
        out.push(Check::at_least("weights", &format!("ukai_lower_alpha{alpha}"), low.worst_ratio, floor));
        out.push(Check::at_most("weights", &format!("ukai_upper_alpha{alpha}"), high.worst_ratio, f64::MAX));
    }

    let c0 = 1.0 / 32.0;
    let mut transport: f64 = 0.0;
    let mut log_deriv: f64 = 0.0;
    let directions = standard_directions();
    for (t, eta, xi) in standard_identity_grid() {
        transport = transport.max(transport_identity_residual(t, &eta, &xi, c0));
        let params = WeightParams::new(c0, 0.5, 0.1, 2.0, t).expect("valid parameters");
        for d in &directions {
            log_deriv = log_deriv.max(check_log_derivative_identity(&params, &eta, &xi, d).residual);
        }
    }
    out.push(Check::at_most("weights", "transport_identity", transport, 1e-6));
    out.push(Check::at_most("weights", "log_derivative_identity", log_deriv, 1e-6));

    let sub = submultiplicativity_check(0.5, submult_samples, seed);
    out.push(Check::at_most("weights", "submultiplicativity_violations", sub.violations as f64, 0.0));
    out
}

/// Gaussian datum `e^{−|η|²/8 − |ξ|²}` on `η ∈ {−8..8}`, `|ξ| ≤ 12` with
/// spacing `1/64`, in one spatial dimension.
pub fn kolmogorov_test_state() -> FourierGridState {
    FourierGridState::from_fn(1, AxisLattice::new(8, 1.0), AxisLattice::covering(12.0, 1.0 / 64.0), |eta, xi| {
        Complex64::new((-(eta[0] * eta[0]) / 8.0 - xi[0] * xi[0]).exp(), 0.0)
    })
    .expect("one spatial dimension")
}

/// Heat reduction, first-order convergence of the reference march and the
/// smoothing norm at half the `α = 2` floor.
pub fn kolmogorov_suite() -> Vec<Check> {
    let s0 = kolmogorov_test_state();
    let t = 1.0;
    let exact = exact_propagate(&s0, t).expect("t ≥ 0").state;

    let e0 = (0..s0.eta_lattice().len())
        .find(|&e| s0.eta_point(e).iter().all(|v| *v == 0.0))
        .expect("lattice contains η = 0");
    let heat = (0..s0.xi_lattice().len())
        .map(|x| {
            let xi = s0.xi_point(x);
            let expect = s0.slice(e0)[x] * (-kolmogorov_exponent(t, &[0.0], &xi)).exp();
            let plain = s0.slice(e0)[x] * (-t * xi[0] * xi[0]).exp();
            (exact.slice(e0)[x] - expect).norm().max((exact.slice(e0)[x] - plain).norm())
        })
        .fold(0.0, f64::max);

    let errors: Vec<f64> = [1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0]
        .iter()
        .map(|&dt| {
            imex_reference_march(&s0, t, dt)
                .and_then(|m| m.distance(&exact))
                .unwrap_or(f64::INFINITY)
        })
        .collect();
    let ratio_dev = errors
        .windows(2)
        .map(|w| (w[0] / w[1] - 2.0).abs())
        .fold(0.0, f64::max);

    let c = ukai_floor(2.0).expect("floor known for α = 2") / 2.0;
    let times: Vec<f64> = (1..=10).map(|i| i as f64 / 10.0).collect();
    let norms: Vec<Option<f64>> = times
        .iter()
        .map(|&t| smoothing_norm(&exact_propagate(&s0, t).expect("t ≥ 0").state, c).value())
        .collect();
    let diverged = norms.iter().filter(|n| n.is_none()).count();
    let increase = norms
        .windows(2)
        .map(|w| match (w[0], w[1]) {
            (Some(a), Some(b)) => (b - a).max(0.0),
            _ => f64::INFINITY,
        })
        .fold(0.0, f64::max);

    vec![
        Check::at_most("kolmogorov", "heat_reduction", heat, 0.0),
        Check::at_most("kolmogorov", "imex_order_ratio_deviation", ratio_dev, 0.4),
        Check::at_most("kolmogorov", "smoothing_norm_diverged", diverged as f64, 0.0),
        Check::at_most("kolmogorov", "smoothing_norm_increase", increase, 0.0),
    ]
}
