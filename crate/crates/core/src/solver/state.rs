//! Phase-space state: Fourier modes `η ∈ {−K..K}^{d_x}` times Hermite
//! coefficients `|α| ≤ N`, together with the operators acting on it.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::{InitKind, SolverConfig};
use super::SolverError;
use crate::hermite::{basis_len, raise_into, lower_into, Axis, HermiteSpectrum, MultiIndex};
use crate::landau::{triple_norm_sqr_v, CollisionMoments, GammaResponses};

/// The integer lattice `{−K..K}^{d_x}`, enumerated lexicographically with the
/// first component most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lattice {
    pub d_x: usize,
    pub k: usize,
}

impl Lattice {
    pub fn new(d_x: usize, k: usize) -> Self {
        assert!(d_x <= 3, "spatial dimension must be 0..=3");
        Self { d_x, k }
    }

    pub fn len(&self) -> usize {
        (2 * self.k + 1).pow(self.d_x as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn mode(&self, mut index: usize) -> Vec<i64> {
        let side = 2 * self.k + 1;
        let mut eta = vec![0i64; self.d_x];
        for j in (0..self.d_x).rev() {
            eta[j] = (index % side) as i64 - self.k as i64;
            index /= side;
        }
        eta
    }

    /// Position of `η`, or `None` when it lies outside the lattice.
    pub fn index(&self, eta: &[i64]) -> Option<usize> {
        debug_assert_eq!(eta.len(), self.d_x);
        let side = 2 * self.k + 1;
        let mut idx = 0;
        for &e in eta {
            if e.unsigned_abs() as usize > self.k {
                return None;
            }
            idx = idx * side + (e + self.k as i64) as usize;
        }
        Some(idx)
    }

    /// Index of `−η`; the enumeration is symmetric so this is a reversal.
    pub fn mirror(&self, index: usize) -> usize {
        self.len() - 1 - index
    }

    /// `⟨η⟩ = √(1+|η|²)` for every mode.
    pub fn japanese(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| {
                let e2: i64 = self.mode(i).iter().map(|e| e * e).sum();
                (1.0 + e2 as f64).sqrt()
            })
            .collect()
    }

    /// `|η|` for every mode.
    pub fn radius(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| (self.mode(i).iter().map(|e| e * e).sum::<i64>() as f64).sqrt())
            .collect()
    }
}

/// `ĝ(t, η, α)` on the truncated lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseState {
    lattice: Lattice,
    cap: usize,
    r: f64,
    time: f64,
    coeffs: Vec<Complex64>,
}

impl PhaseState {
    pub fn zeros(lattice: Lattice, cap: usize, r: f64) -> Self {
        Self {
            lattice,
            cap,
            r,
            time: 0.0,
            coeffs: vec![Complex64::new(0.0, 0.0); lattice.len() * basis_len(cap)],
        }
    }

    pub fn from_config(cfg: &SolverConfig) -> Self {
        Self::zeros(Lattice::new(cfg.d_x, cfg.k), cfg.n, cfg.r)
    }

    pub fn from_coeffs(lattice: Lattice, cap: usize, r: f64, time: f64, coeffs: Vec<Complex64>) -> Result<Self, SolverError> {
        let expected = lattice.len() * basis_len(cap);
        if coeffs.len() != expected {
            return Err(SolverError::Shape {
                expected,
                got: coeffs.len(),
            });
        }
        Ok(Self {
            lattice,
            cap,
            r,
            time,
            coeffs,
        })
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }
    pub fn cap(&self) -> usize {
        self.cap
    }
    pub fn r(&self) -> f64 {
        self.r
    }
    pub fn time(&self) -> f64 {
        self.time
    }
    pub fn set_time(&mut self, t: f64) {
        self.time = t;
    }
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }
    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn modes(&self) -> usize {
        self.lattice.len()
    }

    fn dim(&self) -> usize {
        basis_len(self.cap)
    }

    pub fn slice(&self, mode: usize) -> &[Complex64] {
        let d = self.dim();
        &self.coeffs[mode * d..(mode + 1) * d]
    }

    pub fn slice_mut(&mut self, mode: usize) -> &mut [Complex64] {
        let d = self.dim();
        &mut self.coeffs[mode * d..(mode + 1) * d]
    }

    pub fn spectrum(&self, mode: usize) -> HermiteSpectrum {
        HermiteSpectrum::from_coeffs(self.cap, self.slice(mode).to_vec()).expect("slice length matches cap")
    }

    pub fn set_spectrum(&mut self, mode: usize, s: &HermiteSpectrum) {
        assert_eq!(s.cap(), self.cap);
        self.slice_mut(mode).copy_from_slice(s.coeffs());
    }

    /// An empty state on the same lattice and time.
    pub fn zeros_like(&self) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); self.coeffs.len()],
            ..self.clone()
        }
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.lattice == other.lattice && self.cap == other.cap
    }

    /// `self += a · other`
    pub fn axpy(&mut self, a: Complex64, other: &Self) {
        assert!(self.same_shape(other), "states live on different lattices");
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *x += a * y;
        }
    }

    pub fn scale(&mut self, a: Complex64) {
        self.coeffs.iter_mut().for_each(|c| *c *= a);
    }

    /// `‖g‖²_{H^r_x(L²_v)} = Σ ⟨η⟩^{2r}|c|²`
    pub fn h_r_norm_sqr(&self) -> f64 {
        let w = self.lattice.japanese();
        (0..self.modes())
            .map(|m| w[m].powf(2.0 * self.r) * self.slice(m).iter().map(|c| c.norm_sqr()).sum::<f64>())
            .sum()
    }

    pub fn h_r_norm(&self) -> f64 {
        self.h_r_norm_sqr().sqrt()
    }

    /// `(s₁, s₂)_{H^r_x(L²_v)}`
    pub fn h_r_inner(&self, other: &Self) -> Complex64 {
        assert!(self.same_shape(other));
        let w = self.lattice.japanese();
        (0..self.modes())
            .map(|m| {
                let s: Complex64 = self.slice(m).iter().zip(other.slice(m)).map(|(a, b)| a * b.conj()).sum();
                s * w[m].powf(2.0 * self.r)
            })
            .sum()
    }

    /// `‖self − other‖_{H^r_x(L²_v)}`
    pub fn h_r_distance(&self, other: &Self) -> f64 {
        assert!(self.same_shape(other));
        let w = self.lattice.japanese();
        (0..self.modes())
            .map(|m| {
                w[m].powf(2.0 * self.r)
                    * self
                        .slice(m)
                        .iter()
                        .zip(other.slice(m))
                        .map(|(a, b)| (a - b).norm_sqr())
                        .sum::<f64>()
            })
            .sum::<f64>()
            .sqrt()
    }

    /// `max |c(−η,α) − conj(c(η,α))|`; zero for the transform of a real `g`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for m in 0..self.modes() {
            let mm = self.lattice.mirror(m);
            for (a, b) in self.slice(m).iter().zip(self.slice(mm)) {
                worst = worst.max((a - b.conj()).norm());
            }
        }
        worst
    }

    /// `|||g|||²_{r,0}`: the velocity triple norm of each mode weighted by `⟨η⟩^{2r}`.
    pub fn triple_norm_sqr(&self) -> f64 {
        let w = self.lattice.japanese();
        let per_mode: Vec<f64> = (0..self.modes())
            .into_par_iter()
            .map(|m| w[m].powf(2.0 * self.r) * triple_norm_sqr_v(&self.spectrum(m)))
            .collect();
        per_mode.iter().sum()
    }

    pub fn triple_norm(&self) -> f64 {
        self.triple_norm_sqr().sqrt()
    }

    /// Collision moments of every mode.
    pub fn moments(&self) -> Vec<CollisionMoments> {
        (0..self.modes()).map(|m| CollisionMoments::of(&self.spectrum(m))).collect()
    }
}

/// Build the initial datum requested by `cfg`.
pub fn initial_state(cfg: &SolverConfig) -> Result<PhaseState, SolverError> {
    let mut state = PhaseState::from_config(cfg);
    match &cfg.init {
        InitKind::Zero => {}
        InitKind::Basis { alpha, eta } => {
            let lat = state.lattice();
            let m = lat.index(eta).ok_or(SolverError::Init("eta outside the lattice".into()))?;
            let a = MultiIndex::new(alpha[0], alpha[1], alpha[2]);
            let rank = a.rank();
            let mm = lat.mirror(m);
            state.slice_mut(m)[rank] = Complex64::new(cfg.amplitude, 0.0);
            state.slice_mut(mm)[rank] = Complex64::new(cfg.amplitude, 0.0);
        }
        InitKind::Rough => {
            rough_datum(&mut state, cfg.seed, cfg.decay_x, cfg.decay_v);
            let norm = state.h_r_norm();
            if norm > 0.0 {
                state.scale(Complex64::new(cfg.amplitude / norm, 0.0));
            }
        }
    }
    Ok(state)
}

/// Seeded random phases with amplitude `⟨η⟩^{-p_x}(1+|α|)^{-p_v}`, mirrored so
/// that `c(−η,α) = conj(c(η,α))`.
pub fn rough_datum(state: &mut PhaseState, seed: u64, p_x: f64, p_v: f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lat = state.lattice();
    let w = lat.japanese();
    let indices = crate::hermite::enumerate_indices(state.cap());
    for m in 0..lat.len() {
        let mm = lat.mirror(m);
        if mm < m {
            continue;
        }
        for (rank, a) in indices.iter().enumerate() {
            let amp = w[m].powf(-p_x) * (1.0 + a.level() as f64).powf(-p_v);
            let value = if mm == m {
                let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                Complex64::new(sign * amp, 0.0)
            } else {
                Complex64::from_polar(amp, rng.random_range(0.0..std::f64::consts::TAU))
            };
            state.slice_mut(m)[rank] = value;
            state.slice_mut(mm)[rank] = value.conj();
        }
    }
}

/// `v·∇_x g`: in mode `η` this is `i Σⱼ ηⱼ vⱼ ĝ(η)`.
pub fn apply_transport(state: &PhaseState) -> PhaseState {
    let mut out = state.zeros_like();
    let lat = state.lattice();
    let dim = basis_len(state.cap());
    out.coeffs_mut()
        .par_chunks_mut(dim)
        .enumerate()
        .for_each(|(m, dst)| {
            let eta = lat.mode(m);
            if eta.iter().all(|&e| e == 0) {
                return;
            }
            let src = state.spectrum(m);
            let mut acc = HermiteSpectrum::zeros(state.cap());
            for (j, &e) in eta.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let axis = Axis::ALL[j];
                let coef = Complex64::new(0.0, e as f64);
                raise_into(axis, coef, &src, &mut acc);
                lower_into(axis, coef, &src, &mut acc);
            }
            dst.copy_from_slice(acc.coeffs());
        });
    out
}

/// Per-mode responses of `g`, the `g`-dependent half of `Γ`.
pub fn responses(g: &PhaseState) -> Vec<GammaResponses> {
    (0..g.modes())
        .into_par_iter()
        .map(|m| GammaResponses::of(&g.spectrum(m)))
        .collect()
}

/// `Γ` lifted to Fourier modes: `out(η) = Σ_{η̃} Γ(f(η−η̃), g(η̃))`, with
/// convolution terms that leave the lattice dropped. `f` enters only through
/// its collision moments.
pub fn gamma_conv_moments(f: &[CollisionMoments], g_resp: &[GammaResponses], template: &PhaseState) -> PhaseState {
    let lat = template.lattice();
    assert_eq!(f.len(), lat.len());
    assert_eq!(g_resp.len(), lat.len());
    let dim = basis_len(template.cap());
    let modes: Vec<Vec<i64>> = (0..lat.len()).map(|m| lat.mode(m)).collect();
    let mut out = template.zeros_like();
    out.coeffs_mut()
        .par_chunks_mut(dim)
        .enumerate()
        .for_each(|(m, dst)| {
            let eta = &modes[m];
            let mut diff = vec![0i64; lat.d_x];
            for (mt, eta_t) in modes.iter().enumerate() {
                for j in 0..lat.d_x {
                    diff[j] = eta[j] - eta_t[j];
                }
                let Some(mf) = lat.index(&diff) else { continue };
                if f[mf].is_zero() {
                    continue;
                }
                g_resp[mt].accumulate(&f[mf], dst);
            }
        });
    out
}

/// `gamma_conv(f, g)`
pub fn gamma_conv(f: &PhaseState, g: &PhaseState) -> PhaseState {
    assert!(f.same_shape(g), "states live on different lattices");
    gamma_conv_moments(&f.moments(), &responses(g), g)
}
