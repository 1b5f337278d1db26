//! One IMEX Euler step: `gₖ₊₁ = (I + dt·L)⁻¹ [gₖ − dt·v·∇_x gₖ + dt·Γ]`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::state::{apply_transport, gamma_conv_moments, responses, PhaseState};
use super::SolverError;
use crate::hermite::{basis_len, level_len, level_offset};
use crate::landau::{level_blocks_l, CollisionMoments};

/// Largest admissible `dt · λ_max`.
pub const STEP_GUARD: f64 = 10.0;

/// What enters the first slot of `Γ` during a step.
#[derive(Debug, Clone, Copy)]
pub enum Forcing<'a> {
    /// The linear equation.
    None,
    /// `Γ(g, g)`
    SelfInteraction,
    /// `Γ(f, g)` with the moments of `f` given per mode.
    Frozen(&'a [CollisionMoments]),
}

/// Precomputed implicit solves for a fixed `(cap, dt)`.
#[derive(Debug, Clone)]
pub struct Stepper {
    cap: usize,
    dt: f64,
    lambda_max: f64,
    inverse: Vec<DMatrix<f64>>,
}

impl Stepper {
    pub fn new(cap: usize, dt: f64) -> Result<Self, SolverError> {
        let blocks = level_blocks_l(cap);
        let lambda_max = blocks
            .iter()
            .map(|b| b.clone().symmetric_eigen().eigenvalues.max())
            .fold(0.0, f64::max);
        let product = dt * lambda_max;
        if !(dt > 0.0) || product > STEP_GUARD {
            return Err(SolverError::StepGuard {
                product,
                limit: STEP_GUARD,
            });
        }
        let inverse = blocks
            .into_iter()
            .map(|b| {
                let n = b.nrows();
                let m = DMatrix::identity(n, n) + b * dt;
                m.cholesky().expect("I + dt·L is positive definite").inverse()
            })
            .collect();
        Ok(Self {
            cap,
            dt,
            lambda_max,
            inverse,
        })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }
    pub fn dt(&self) -> f64 {
        self.dt
    }
    /// Largest eigenvalue of `L` on the truncation.
    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    /// `(I + dt·L)⁻¹` applied slice-wise in place.
    pub fn solve_in_place(&self, state: &mut PhaseState) {
        assert_eq!(state.cap(), self.cap);
        let dim = basis_len(self.cap);
        state.coeffs_mut().par_chunks_mut(dim).for_each(|slice| {
            let mut buf = Vec::new();
            for (n, inv) in self.inverse.iter().enumerate() {
                let off = level_offset(n);
                let len = level_len(n);
                let level = &mut slice[off..off + len];
                buf.clear();
                buf.extend_from_slice(level);
                for (i, d) in level.iter_mut().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (j, x) in buf.iter().enumerate() {
                        acc += x * inv[(i, j)];
                    }
                    *d = acc;
                }
            }
        });
    }

    /// Advance `g` by one step; the returned state carries time `t + dt`.
    pub fn step(&self, g: &PhaseState, forcing: Forcing<'_>) -> PhaseState {
        let mut rhs = g.clone();
        if g.lattice().d_x > 0 {
            rhs.axpy(Complex64::new(-self.dt, 0.0), &apply_transport(g));
        }
        let gamma = match forcing {
            Forcing::None => None,
            Forcing::SelfInteraction => Some(gamma_conv_moments(&g.moments(), &responses(g), g)),
            Forcing::Frozen(m) => Some(gamma_conv_moments(m, &responses(g), g)),
        };
        if let Some(gamma) = gamma {
            rhs.axpy(Complex64::new(self.dt, 0.0), &gamma);
        }
        self.solve_in_place(&mut rhs);
        rhs.set_time(g.time() + self.dt);
        rhs
    }
}

/// Aborts a march once `‖g‖_{H^r_x(L²_v)}` exceeds twice its initial value.
#[derive(Debug, Clone, Copy)]
pub struct DivergenceGuard {
    limit: f64,
}

impl DivergenceGuard {
    pub fn new(initial: &PhaseState) -> Self {
        Self {
            limit: 2.0 * initial.h_r_norm(),
        }
    }

    pub fn check(&self, state: &PhaseState) -> Result<f64, SolverError> {
        let norm = state.h_r_norm();
        if norm.is_finite() && norm <= self.limit {
            Ok(norm)
        } else {
            Err(SolverError::Diverged {
                time: state.time(),
                norm,
                limit: self.limit,
            })
        }
    }
}

/// March `steps` steps from `g0`. `forcing(k)` supplies the first slot of `Γ`
/// for the step leaving `t_k`; `visit` sees every state including `g0`.
/// The divergence guard is checked after each step.
pub fn march<'m>(
    stepper: &Stepper,
    g0: &PhaseState,
    steps: usize,
    forcing: impl Fn(usize) -> Forcing<'m>,
    mut visit: impl FnMut(usize, &PhaseState) -> Result<(), SolverError>,
) -> Result<PhaseState, SolverError> {
    let guard = DivergenceGuard::new(g0);
    let t0 = g0.time();
    let mut g = g0.clone();
    visit(0, &g)?;
    for k in 0..steps {
        g = stepper.step(&g, forcing(k));
        g.set_time(t0 + (k + 1) as f64 * stepper.dt());
        guard.check(&g)?;
        visit(k + 1, &g)?;
    }
    Ok(g)
}

/// One nonlinear IMEX step of size `dt`.
pub fn step_imex(state: &PhaseState, dt: f64) -> Result<PhaseState, SolverError> {
    let stepper = Stepper::new(state.cap(), dt)?;
    Ok(stepper.step(state, Forcing::SelfInteraction))
}
