//! The time-integrated Fourier weight `Ψ(t,η,ξ) = c₀∫₀ᵗ⟨ξ+ρη⟩dρ`, the
//! regularized exponential weight
//!
//! ```text
//! F_{δ,δ′} = e^Ψ / ((1 + δe^Ψ)(1 + δ′Ψ)^r)
//! ```
//!
//! and brute-force checks of the inequalities built on them: the two-sided
//! comparison of `∫₀ᵗ⟨ξ+ρη⟩^α dρ` with `t{1+|ξ|²+t²|η|²}^{α/2}`, the
//! logarithmic-derivative identity of `F`, submultiplicativity of
//! `X ↦ e^X/(1+δe^X)` and the triangle bound used for the convolution in `η`.
//!
//! Here `⟨z⟩ = √(1+|z|²)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::quad::integrate_adaptive;

pub type Vec3 = [f64; 3];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeightError {
    #[error("c0 must be positive, got {0}")]
    C0(f64),
    #[error("delta must lie in (0, 1], got {0}")]
    Delta(f64),
    #[error("r must exceed 3/2, got {0}")]
    R(f64),
    #[error("delta_prime must satisfy 0 < r*delta_prime <= 1, got delta_prime = {delta_prime}, r = {r}")]
    DeltaPrime { delta_prime: f64, r: f64 },
    #[error("t must lie in (0, 1], got {0}")]
    Time(f64),
}

/// Parameters of `Ψ` and `F_{δ,δ′}`; ranges are checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightParams {
    c0: f64,
    delta: f64,
    delta_prime: f64,
    r: f64,
    t: f64,
}

impl WeightParams {
    pub fn new(c0: f64, delta: f64, delta_prime: f64, r: f64, t: f64) -> Result<Self, WeightError> {
        if !(c0 > 0.0 && c0.is_finite()) {
            return Err(WeightError::C0(c0));
        }
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(WeightError::Delta(delta));
        }
        if !(r > 1.5 && r.is_finite()) {
            return Err(WeightError::R(r));
        }
        if !(delta_prime > 0.0 && r * delta_prime <= 1.0) {
            return Err(WeightError::DeltaPrime { delta_prime, r });
        }
        if !(t > 0.0 && t <= 1.0) {
            return Err(WeightError::Time(t));
        }
        Ok(Self { c0, delta, delta_prime, r, t })
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }
    pub fn delta(&self) -> f64 {
        self.delta
    }
    pub fn delta_prime(&self) -> f64 {
        self.delta_prime
    }
    pub fn r(&self) -> f64 {
        self.r
    }
    pub fn t(&self) -> f64 {
        self.t
    }

    /// Same parameters at another time.
    pub fn at_time(&self, t: f64) -> Result<Self, WeightError> {
        Self::new(self.c0, self.delta, self.delta_prime, self.r, t)
    }
}

#[inline]
fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
fn axpy(a: &Vec3, s: f64, b: &Vec3) -> Vec3 {
    [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]]
}

/// `⟨z⟩ = √(1+|z|²)`
#[inline]
pub fn japanese(z: &Vec3) -> f64 {
    (1.0 + dot(z, z)).sqrt()
}

const PSI_TOL: f64 = 1e-12;

/// `Ψ(t,η,ξ) = c₀∫₀ᵗ⟨ξ+ρη⟩dρ` by adaptive Gauss–Legendre quadrature.
pub fn psi(t: f64, eta: &Vec3, xi: &Vec3, c0: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    c0 * integrate_adaptive(|rho| japanese(&axpy(xi, rho, eta)), 0.0, t, PSI_TOL)
}

/// `∫₀ᵀ √(aτ² + bτ + c) dτ` for a quadratic that stays positive.
///
/// Uses the asinh antiderivative; falls back to quadrature when `a` is too
/// small for the antiderivative to be free of cancellation.
pub fn sqrt_quadratic_integral(a: f64, b: f64, c: f64, big_t: f64) -> f64 {
    if a == 0.0 && b == 0.0 {
        return big_t * c.sqrt();
    }
    let disc = 4.0 * a * c - b * b;
    if a * big_t * big_t < 1e-6 * c || disc <= 0.0 {
        return integrate_adaptive(|x| (a * x * x + b * x + c).max(0.0).sqrt(), 0.0, big_t, 1e-14);
    }
    let prim = |x: f64| {
        let q = (a * x * x + b * x + c).max(0.0).sqrt();
        let u = 2.0 * a * x + b;
        u * q / (4.0 * a) + disc / (8.0 * a * a.sqrt()) * (u / disc.sqrt()).asinh()
    };
    prim(big_t) - prim(0.0)
}

/// Closed-form `Ψ`, the cross-check for [`psi`].
pub fn psi_closed_form(t: f64, eta: &Vec3, xi: &Vec3, c0: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    c0 * sqrt_quadratic_integral(dot(eta, eta), 2.0 * dot(xi, eta), 1.0 + dot(xi, xi), t)
}

/// Analytic partial derivatives of `Ψ` in `(t, η, ξ)`, packed as
/// `[∂_t, ∂_{η₁..₃}, ∂_{ξ₁..₃}]`.
pub fn psi_gradient(t: f64, eta: &Vec3, xi: &Vec3, c0: f64) -> [f64; 7] {
    let mut g = [0.0; 7];
    g[0] = c0 * japanese(&axpy(xi, t, eta));
    for j in 0..3 {
        g[1 + j] = c0
            * integrate_adaptive(
                |rho| {
                    let z = axpy(xi, rho, eta);
                    rho * z[j] / japanese(&z)
                },
                0.0,
                t,
                PSI_TOL,
            );
        g[4 + j] = c0
            * integrate_adaptive(
                |rho| {
                    let z = axpy(xi, rho, eta);
                    z[j] / japanese(&z)
                },
                0.0,
                t,
                PSI_TOL,
            );
    }
    g
}

fn f_from_psi(p: &WeightParams, psi: f64) -> f64 {
    // e^Ψ/(1+δe^Ψ) written without overflow
    1.0 / (((-psi).exp() + p.delta) * (1.0 + p.delta_prime * psi).powf(p.r))
}

/// `F_{δ,δ′}(t, η, ξ)` at the time stored in `params`.
pub fn weight_f(params: &WeightParams, eta: &Vec3, xi: &Vec3) -> f64 {
    f_from_psi(params, psi(params.t, eta, xi, params.c0))
}

/// `F_{δ,0}` (the `δ′ = 0` weight).
pub fn weight_f_delta0(params: &WeightParams, eta: &Vec3, xi: &Vec3) -> f64 {
    let s = psi(params.t, eta, xi, params.c0);
    1.0 / ((-s).exp() + params.delta)
}

/// The factors `(F_{δ,0}, G_{δ′})` with `F_{δ,δ′}⟨η⟩^r = F_{δ,0}·G_{δ′}`.
pub fn weight_f_split(params: &WeightParams, eta: &Vec3, xi: &Vec3) -> (f64, f64) {
    let s = psi(params.t, eta, xi, params.c0);
    let f0 = 1.0 / ((-s).exp() + params.delta);
    let g = (japanese(eta) / (1.0 + params.delta_prime * s)).powf(params.r);
    (f0, g)
}

/// The bracket `1/(1+δe^Ψ) − rδ′/(1+δ′Ψ)` of the logarithmic derivative.
pub fn log_derivative_factor(params: &WeightParams, psi: f64) -> f64 {
    let a = (-psi).exp() / ((-psi).exp() + params.delta);
    a - params.r * params.delta_prime / (1.0 + params.delta_prime * psi)
}

/// Result of one finite-difference identity check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityResidual {
    pub residual: f64,
    pub bracket: f64,
}

/// `A F = (1/(1+δe^Ψ) − rδ′/(1+δ′Ψ))(AΨ)F` for `A` the derivative along
/// `direction ∈ ℝ⁷` in `(t, η, ξ)`. The left side is a central difference,
/// the right side uses the analytic gradient of `Ψ`; the residual is relative
/// to `max(1, F)`.
pub fn check_log_derivative_identity(params: &WeightParams, eta: &Vec3, xi: &Vec3, direction: &[f64; 7]) -> IdentityResidual {
    let h = 1e-4;
    let eval = |s: f64| {
        let t = params.t + s * direction[0];
        let e = [eta[0] + s * direction[1], eta[1] + s * direction[2], eta[2] + s * direction[3]];
        let x = [xi[0] + s * direction[4], xi[1] + s * direction[5], xi[2] + s * direction[6]];
        f_from_psi(params, psi(t, &e, &x, params.c0))
    };
    let fd = (eval(h) - eval(-h)) / (2.0 * h);
    let s = psi(params.t, eta, xi, params.c0);
    let grad = psi_gradient(params.t, eta, xi, params.c0);
    let a_psi: f64 = grad.iter().zip(direction).map(|(g, d)| g * d).sum();
    let bracket = log_derivative_factor(params, s);
    let exact = bracket * a_psi * f_from_psi(params, s);
    IdentityResidual {
        residual: (fd - exact).abs() / f_from_psi(params, s).max(1.0),
        bracket,
    }
}

/// `(∂_t − η·∇_ξ)Ψ − c₀⟨ξ⟩` by central differences.
pub fn transport_identity_residual(t: f64, eta: &Vec3, xi: &Vec3, c0: f64) -> f64 {
    let h = 1e-4;
    let dt = (psi(t + h, eta, xi, c0) - psi(t - h, eta, xi, c0)) / (2.0 * h);
    let mut along = 0.0;
    for j in 0..3 {
        let mut xp = *xi;
        let mut xm = *xi;
        xp[j] += h;
        xm[j] -= h;
        along += eta[j] * (psi(t, eta, &xp, c0) - psi(t, eta, &xm, c0)) / (2.0 * h);
    }
    (dt - along - c0 * japanese(xi)).abs()
}

/// The sample points used for the identity checks: `t ∈ {0.1, 0.5, 1}` and
/// `η, ξ` drawn from a small set of vectors of length up to 7.
pub fn standard_identity_grid() -> Vec<(f64, Vec3, Vec3)> {
    let vecs: Vec<Vec3> = vec![
        [0.0, 0.0, 0.0],
        [0.5, 0.0, 0.0],
        [0.0, -2.0, 1.0],
        [1.5, 1.0, -0.5],
        [-3.0, 2.0, 4.0],
        [7.0, 0.0, 0.0],
    ];
    let mut out = Vec::new();
    for t in [0.1, 0.5, 1.0] {
        for eta in &vecs {
            for xi in &vecs {
                out.push((t, *eta, *xi));
            }
        }
    }
    out
}

/// Directions in `(t, η, ξ)` used for the identity: the seven coordinate
/// axes and one mixed direction.
pub fn standard_directions() -> Vec<[f64; 7]> {
    let mut out: Vec<[f64; 7]> = (0..7)
        .map(|i| {
            let mut d = [0.0; 7];
            d[i] = 1.0;
            d
        })
        .collect();
    out.push([0.3, -0.2, 0.5, 0.1, 0.7, -0.4, 0.2]);
    out
}

/// One JSON-lines verification record.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub grid: String,
    pub worst_point: Vec<f64>,
    pub worst_ratio: f64,
}

impl CheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

/// Sampled derivative bounds: the largest `|∂_{ξⱼ}Ψ|/(c₀t)` (bounded by 1)
/// and the largest second difference `|∂²_{ξⱼξₖ}Ψ|/(c₀t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeBoundReport {
    pub first: CheckReport,
    pub second: CheckReport,
}

pub fn psi_derivative_bounds(params: &WeightParams, samples: &[(Vec3, Vec3)]) -> DerivativeBoundReport {
    let (t, c0) = (params.t, params.c0);
    let scale = c0 * t;
    let h = 1e-3;
    let mut first = (0.0, Vec::new());
    let mut second = (0.0, Vec::new());
    for (eta, xi) in samples {
        let g = psi_gradient(t, eta, xi, c0);
        for j in 0..3 {
            let v = g[4 + j].abs() / scale;
            if v > first.0 {
                first = (v, [eta.as_slice(), xi.as_slice()].concat());
            }
            for k in 0..3 {
                let shifted = |s: f64| {
                    let mut x = *xi;
                    x[k] += s;
                    psi_gradient(t, eta, &x, c0)[4 + j]
                };
                let d2 = ((shifted(h) - shifted(-h)) / (2.0 * h)).abs() / scale;
                if d2 > second.0 {
                    second = (d2, [eta.as_slice(), xi.as_slice()].concat());
                }
            }
        }
    }
    let grid = format!("{} sampled (eta, xi) points, t = {t}", samples.len());
    DerivativeBoundReport {
        first: CheckReport {
            check: "psi_first_derivative".into(),
            grid: grid.clone(),
            worst_point: first.1,
            worst_ratio: first.0,
        },
        second: CheckReport {
            check: "psi_second_derivative".into(),
            grid,
            worst_point: second.1,
            worst_ratio: second.0,
        },
    }
}

/// Sampling specification for the two-sided comparison: radial values for
/// `|ξ|` and `|η̃|`, the directions of `ξ`, and the directions of `η̃` taken
/// relative to each `ξ`-direction.
#[derive(Debug, Clone)]
pub struct UkaiGrid {
    pub radii: Vec<f64>,
    pub xi_directions: Vec<Vec3>,
    pub eta_directions: Vec<Vec3>,
    /// Extra in-plane angles between `ξ` and `η̃`, in radians.
    pub extra_angles: Vec<f64>,
    /// Also evaluate the scale-invariant limit along every ray.
    pub asymptotic_rays: bool,
}

/// Vertices, face centres and edge midpoints of the regular icosahedron,
/// normalized (62 directions).
pub fn icosahedral_directions() -> Vec<Vec3> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut verts: Vec<Vec3> = Vec::new();
    for s1 in [-1.0, 1.0] {
        for s2 in [-1.0, 1.0] {
            verts.push([0.0, s1, s2 * phi]);
            verts.push([s1, s2 * phi, 0.0]);
            verts.push([s2 * phi, 0.0, s1]);
        }
    }
    let edge = 2.0;
    let close = |a: &Vec3, b: &Vec3| {
        let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
        (dot(&d, &d).sqrt() - edge).abs() < 1e-9
    };
    let normalize = |v: Vec3| {
        let n = dot(&v, &v).sqrt();
        [v[0] / n, v[1] / n, v[2] / n]
    };
    let mut out: Vec<Vec3> = verts.iter().map(|v| normalize(*v)).collect();
    for i in 0..12 {
        for j in i + 1..12 {
            if close(&verts[i], &verts[j]) {
                out.push(normalize([
                    verts[i][0] + verts[j][0],
                    verts[i][1] + verts[j][1],
                    verts[i][2] + verts[j][2],
                ]));
                for k in j + 1..12 {
                    if close(&verts[i], &verts[k]) && close(&verts[j], &verts[k]) {
                        out.push(normalize([
                            verts[i][0] + verts[j][0] + verts[k][0],
                            verts[i][1] + verts[j][1] + verts[k][1],
                            verts[i][2] + verts[j][2] + verts[k][2],
                        ]));
                    }
                }
            }
        }
    }
    out
}

impl UkaiGrid {
    /// `|ξ|, |η̃| ∈ {0} ∪` 40 log-spaced values in `[10⁻³, 100]`; `ξ` along the
    /// 12 icosahedral vertices, `η̃` along all 62 icosahedral directions plus 33
    /// in-plane angles in `[0, π]`; asymptotic rays included.
    pub fn standard() -> Self {
        let mut radii = vec![0.0];
        let n = 40;
        for i in 0..n {
            radii.push(10f64.powf(-3.0 + 5.0 * i as f64 / (n - 1) as f64));
        }
        let dirs = icosahedral_directions();
        Self {
            radii,
            xi_directions: dirs[..12].to_vec(),
            eta_directions: dirs,
            extra_angles: (0..=32).map(|k| std::f64::consts::PI * k as f64 / 32.0).collect(),
            asymptotic_rays: true,
        }
    }

    pub fn describe(&self) -> String {
        format!(
            "radii={}x[0,{}] log; xi_dirs={}; eta_dirs={}+{} angles; rays={}",
            self.radii.len(),
            self.radii.last().copied().unwrap_or(0.0),
            self.xi_directions.len(),
            self.eta_directions.len(),
            self.extra_angles.len(),
            self.asymptotic_rays
        )
    }

    /// Every `(ξ̂, η̂)` direction pair on the grid.
    fn direction_pairs(&self) -> Vec<(Vec3, Vec3)> {
        let mut out = Vec::new();
        for u in &self.xi_directions {
            for w in &self.eta_directions {
                out.push((*u, *w));
            }
            // a unit vector orthogonal to u for the in-plane sweep
            let helper = if u[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
            let p = axpy(&helper, -dot(&helper, u), u);
            let pn = dot(&p, &p).sqrt();
            let p = [p[0] / pn, p[1] / pn, p[2] / pn];
            for &th in &self.extra_angles {
                let w = [
                    th.cos() * u[0] + th.sin() * p[0],
                    th.cos() * u[1] + th.sin() * p[1],
                    th.cos() * u[2] + th.sin() * p[2],
                ];
                out.push((*u, w));
            }
        }
        out
    }
}

/// `∫₀¹⟨ξ − τη̃⟩^α dτ`
pub fn ukai_integral(alpha: f64, xi: &Vec3, eta_t: &Vec3) -> f64 {
    let a = dot(eta_t, eta_t);
    let b = -2.0 * dot(xi, eta_t);
    let c = 1.0 + dot(xi, xi);
    if alpha == 1.0 {
        sqrt_quadratic_integral(a, b, c, 1.0)
    } else if alpha == 2.0 {
        c + b / 2.0 + a / 3.0
    } else {
        integrate_adaptive(|x| (a * x * x + b * x + c).powf(alpha / 2.0), 0.0, 1.0, 1e-13)
    }
}

/// `∫₀¹⟨ξ − τη̃⟩^α dτ / (1+|ξ|²+|η̃|²)^{α/2}`
pub fn ukai_ratio(alpha: f64, xi: &Vec3, eta_t: &Vec3) -> f64 {
    ukai_integral(alpha, xi, eta_t) / (1.0 + dot(xi, xi) + dot(eta_t, eta_t)).powf(alpha / 2.0)
}

/// Scale-invariant limit of [`ukai_ratio`] along the ray `s(ξ, η̃)`, `s → ∞`.
pub fn ukai_ray_limit(alpha: f64, xi: &Vec3, eta_t: &Vec3) -> f64 {
    let a = dot(eta_t, eta_t);
    let b = -2.0 * dot(xi, eta_t);
    let c = dot(xi, xi);
    let num = if alpha == 2.0 {
        c + b / 2.0 + a / 3.0
    } else {
        integrate_adaptive(|x| (a * x * x + b * x + c).max(0.0).powf(alpha / 2.0), 0.0, 1.0, 1e-13)
    };
    num / (a + c).powf(alpha / 2.0)
}

fn ukai_extreme(alpha: f64, grid: &UkaiGrid, want_min: bool) -> CheckReport {
    let better = |v: f64, best: f64| if want_min { v < best } else { v > best };
    let mut best = if want_min { f64::INFINITY } else { f64::NEG_INFINITY };
    let mut point = Vec::new();
    for (u, w) in grid.direction_pairs() {
        for &rx in &grid.radii {
            for &re in &grid.radii {
                let xi = [rx * u[0], rx * u[1], rx * u[2]];
                let eta = [re * w[0], re * w[1], re * w[2]];
                let v = ukai_ratio(alpha, &xi, &eta);
                if better(v, best) {
                    best = v;
                    point = [xi.as_slice(), eta.as_slice()].concat();
                }
            }
        }
        if grid.asymptotic_rays {
            for &rx in &grid.radii {
                // rays of every relative length, with |η̃| normalized to 1
                let xi = [rx * u[0], rx * u[1], rx * u[2]];
                let v = ukai_ray_limit(alpha, &xi, &w);
                if better(v, best) {
                    best = v;
                    point = [xi.as_slice(), w.as_slice(), &[f64::INFINITY]].concat();
                }
            }
        }
    }
    CheckReport {
        check: format!("ukai_{}_alpha{alpha}", if want_min { "lower" } else { "upper" }),
        grid: grid.describe(),
        worst_point: point,
        worst_ratio: best,
    }
}

/// Grid minimum of the scaled ratio; the lower constant `c_α` of the
/// two-sided comparison is at most this value.
pub fn ukai_lower_ratio(alpha: f64, grid: &UkaiGrid) -> CheckReport {
    ukai_extreme(alpha, grid, true)
}

/// Grid maximum of the scaled ratio, i.e. the empirical upper constant `C_α`.
pub fn ukai_upper_ratio(alpha: f64, grid: &UkaiGrid) -> CheckReport {
    ukai_extreme(alpha, grid, false)
}

/// Lower floors derived from the proof chain: `1/16` for `α = 1` and `1/32`
/// for `α = 2`.
pub fn ukai_floor(alpha: f64) -> Option<f64> {
    if alpha == 1.0 {
        Some(1.0 / 16.0)
    } else if alpha == 2.0 {
        Some(1.0 / 32.0)
    } else {
        None
    }
}

/// `F̃_δ(X) = e^X/(1+δe^X)`
pub fn f_tilde(delta: f64, x: f64) -> f64 {
    1.0 / ((-x).exp() + delta)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledBound {
    pub samples: usize,
    pub violations: usize,
    /// Largest observed `lhs / rhs` (the bound holds when `≤ 1`).
    pub max_ratio: f64,
    pub worst_point: Vec<f64>,
}

/// `F̃_δ(X+Y) ≤ 3F̃_δ(X)F̃_δ(Y)` on seeded random `X, Y ≥ 0` spread over
/// `[0, 60]` with extra mass near 0.
pub fn submultiplicativity_check(delta: f64, samples: usize, seed: u64) -> SampledBound {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| -> f64 {
        match rng.random_range(0..3) {
            0 => 0.0,
            1 => rng.random::<f64>(),
            _ => 60.0 * rng.random::<f64>(),
        }
    };
    let mut out = SampledBound {
        samples,
        violations: 0,
        max_ratio: 0.0,
        worst_point: vec![],
    };
    for _ in 0..samples {
        let (x, y) = (draw(&mut rng), draw(&mut rng));
        // F̃(X+Y)/(3F̃(X)F̃(Y)) without overflow
        let ratio = ((-x).exp() + delta) * ((-y).exp() + delta) / (3.0 * ((-x - y).exp() + delta));
        if ratio > 1.0 + 1e-14 {
            out.violations += 1;
        }
        if ratio > out.max_ratio {
            out.max_ratio = ratio;
            out.worst_point = vec![x, y];
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleReport {
    /// `⟨ξ+ρη⟩ ≤ ⟨ξ*+ρη⟩ + |ξ| + |ξ*|`
    pub pointwise: SampledBound,
    /// `F_{δ,0}(η,ξ) ≤ 9F_{δ,0}(η−η̃,ξ*)F_{δ,0}(η̃,ξ)e^{c₀t⟨ξ*⟩}`
    pub exponential: SampledBound,
    /// Largest `F(η,ξ)⟨η⟩^r / [(⟨η−η̃⟩^r+⟨η̃⟩^r)F_{δ,0}(η−η̃,ξ*)F(η̃,ξ)e^{c₀t⟨ξ*⟩}]`.
    pub empirical_c7: f64,
}

fn random_vec(rng: &mut ChaCha8Rng, max_len: f64) -> Vec3 {
    // log-uniform length in [1e-2, max_len], uniform direction
    let len = if rng.random_range(0..8) == 0 {
        0.0
    } else {
        (1e-2f64.ln() + rng.random::<f64>() * (max_len / 1e-2).ln()).exp()
    };
    let z: f64 = rng.random_range(-1.0..1.0);
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let s = (1.0 - z * z).sqrt();
    [len * s * phi.cos(), len * s * phi.sin(), len * z]
}

/// Sample the triangle-type bounds used for the `η`-convolution.
pub fn weight_triangle_check(params: &WeightParams, samples: usize, seed: u64) -> TriangleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (t, c0, r) = (params.t, params.c0, params.r);
    let mut pointwise = SampledBound {
        samples,
        violations: 0,
        max_ratio: 0.0,
        worst_point: vec![],
    };
    let mut exponential = pointwise.clone();
    let mut c7: f64 = 0.0;
    let psi_of = |eta: &Vec3, xi: &Vec3| psi_closed_form(t, eta, xi, c0);
    for _ in 0..samples {
        let eta = random_vec(&mut rng, 100.0);
        let eta_t = random_vec(&mut rng, 100.0);
        let xi = random_vec(&mut rng, 100.0);
        let xi_s = random_vec(&mut rng, 100.0);
        let rho: f64 = rng.random::<f64>() * t;

        let lhs = japanese(&axpy(&xi, rho, &eta));
        let rhs = japanese(&axpy(&xi_s, rho, &eta)) + dot(&xi, &xi).sqrt() + dot(&xi_s, &xi_s).sqrt();
        let ratio = lhs / rhs;
        if ratio > 1.0 + 1e-14 {
            pointwise.violations += 1;
        }
        if ratio > pointwise.max_ratio {
            pointwise.max_ratio = ratio;
            pointwise.worst_point = [eta, xi, xi_s].concat();
            pointwise.worst_point.push(rho);
        }

        let diff = [eta[0] - eta_t[0], eta[1] - eta_t[1], eta[2] - eta_t[2]];
        let p_full = psi_of(&eta, &xi);
        let p_a = psi_of(&diff, &xi_s);
        let p_b = psi_of(&eta_t, &xi);
        let extra = c0 * t * japanese(&xi_s);
        // log of F_{δ,0}(η,ξ) / [9 F_{δ,0}(η−η̃,ξ*) F_{δ,0}(η̃,ξ) e^{c₀t⟨ξ*⟩}]
        let lf = |s: f64| -((-s).exp() + params.delta).ln();
        let log_ratio = lf(p_full) - (9f64.ln() + lf(p_a) + lf(p_b) + extra);
        let ratio = log_ratio.exp();
        if log_ratio > 1e-12 {
            exponential.violations += 1;
        }
        if ratio > exponential.max_ratio {
            exponential.max_ratio = ratio;
            exponential.worst_point = [eta, eta_t, xi, xi_s].concat();
        }

        let lf_full = |s: f64| lf(s) - r * (1.0 + params.delta_prime * s).ln();
        let log_c7 = lf_full(p_full) + r * japanese(&eta).ln()
            - (japanese(&diff).powf(r) + japanese(&eta_t).powf(r)).ln()
            - lf(p_a)
            - lf_full(p_b)
            - extra;
        c7 = c7.max(log_c7.exp());
    }
    TriangleReport {
        pointwise,
        exponential,
        empirical_c7: c7,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_are_validated() {
        assert!(WeightParams::new(1.0 / 32.0, 0.5, 0.1, 2.0, 1.0).is_ok());
        assert_eq!(WeightParams::new(0.0, 0.5, 0.1, 2.0, 1.0), Err(WeightError::C0(0.0)));
        assert_eq!(WeightParams::new(0.1, 1.5, 0.1, 2.0, 1.0), Err(WeightError::Delta(1.5)));
        assert_eq!(WeightParams::new(0.1, 0.5, 0.1, 1.5, 1.0), Err(WeightError::R(1.5)));
        assert!(matches!(
            WeightParams::new(0.1, 0.5, 0.6, 2.0, 1.0),
            Err(WeightError::DeltaPrime { .. })
        ));
        assert_eq!(WeightParams::new(0.1, 0.5, 0.1, 2.0, 1.5), Err(WeightError::Time(1.5)));
    }

    #[test]
    fn psi_examples() {
        let c0 = 0.25;
        let xi = [1.0, -2.0, 0.5];
        let v = psi(0.7, &[0.0; 3], &xi, c0);
        assert!((v - c0 * 0.7 * japanese(&xi)).abs() < 1e-14);
        let exact = c0 * (2f64.sqrt() + (1.0 + 2f64.sqrt()).ln()) / 2.0;
        assert!((psi(1.0, &[1.0, 0.0, 0.0], &[0.0; 3], c0) - exact).abs() < 1e-14);
        assert!((psi_closed_form(1.0, &[1.0, 0.0, 0.0], &[0.0; 3], c0) - exact).abs() < 1e-14);
    }

    #[test]
    fn closed_form_matches_quadrature() {
        for (t, eta, xi) in standard_identity_grid() {
            let q = psi(t, &eta, &xi, 1.0);
            let c = psi_closed_form(t, &eta, &xi, 1.0);
            assert!((q - c).abs() <= 1e-10 * q.max(1.0), "{t} {eta:?} {xi:?}: {q} {c}");
        }
    }

    #[test]
    fn f_limits() {
        let p = WeightParams::new(0.1, 1.0, 0.2, 2.0, 1.0).unwrap();
        // Ψ = 0 only at t = 0, use the formula directly
        assert!((f_from_psi(&p, 0.0) - 0.5).abs() < 1e-15);
        let eta = [3.0, 0.0, 0.0];
        let xi = [0.0, 1.0, 0.0];
        let f = weight_f(&p, &eta, &xi);
        assert!(f > 0.0 && f <= 1.0 / p.delta());
        let (f0, g) = weight_f_split(&p, &eta, &xi);
        assert!((f * japanese(&eta).powf(p.r()) - f0 * g).abs() < 1e-12 * f0 * g);
    }

    #[test]
    fn icosahedral_direction_count() {
        let d = icosahedral_directions();
        assert_eq!(d.len(), 62);
        for v in &d {
            assert!((dot(v, v) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn ukai_trivial_ratio() {
        let xi = [2.0, 1.0, 0.0];
        assert!((ukai_ratio(1.0, &xi, &[0.0; 3]) - 1.0).abs() < 1e-14);
        assert!((ukai_ratio(2.0, &xi, &[0.0; 3]) - 1.0).abs() < 1e-14);
        let q = integrate_adaptive(|x| japanese(&axpy(&xi, -x, &[0.3, 4.0, -1.0])), 0.0, 1.0, 1e-14);
        assert!((ukai_integral(1.0, &xi, &[0.3, 4.0, -1.0]) - q).abs() < 1e-12);
    }

    #[test]
    fn submultiplicative_small_run() {
        let rep = submultiplicativity_check(0.5, 2000, 1);
        assert_eq!(rep.violations, 0);
        assert!(rep.max_ratio <= 1.0);
    }
}
