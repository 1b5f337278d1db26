//! Exact Fourier solution of the Kolmogorov equation
//! `∂_t f + v·∇_x f − Δ_v f = 0`.
//!
//! In Fourier variables `(x, v) ↔ (η, ξ)` the equation becomes
//! `(∂_t − η·∇_ξ + |ξ|²) f̂ = 0`, solved by
//!
//! ```text
//! f̂(t,η,ξ) = exp(−t|ξ|² − t²ξ·η − t³|η|²/3) f̂₀(η, ξ + tη)
//! ```
//!
//! States live on a lattice of `η` (spacing usually 1, the torus) times a
//! lattice of `ξ` truncated at `|ξᵢ| ≤ Ξ_max`; mass pushed past the `ξ`
//! cutoff is absorbed and reported.

use std::io::Write;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum KolmogorovError {
    #[error("spatial dimension must be 1, 2 or 3, got {0}")]
    Dims(usize),
    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),
    #[error("time step must be positive and divide the final time, got dt = {dt}, t = {t}")]
    Step { dt: f64, t: f64 },
    #[error("states live on different lattices")]
    LatticeMismatch,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Symmetric one-dimensional lattice `{−n·step, …, n·step}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisLattice {
    pub half_width: usize,
    pub step: f64,
}

impl AxisLattice {
    pub fn new(half_width: usize, step: f64) -> Self {
        Self { half_width, step }
    }

    /// Lattice covering `[−max, max]` with spacing `step`.
    pub fn covering(max: f64, step: f64) -> Self {
        Self::new((max / step).round() as usize, step)
    }

    pub fn len(&self) -> usize {
        2 * self.half_width + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self, i: usize) -> f64 {
        (i as f64 - self.half_width as f64) * self.step
    }

    pub fn max(&self) -> f64 {
        self.half_width as f64 * self.step
    }
}

/// `f̂(η, ξ)` on an `η`-lattice times a `ξ`-lattice in `d` dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierGridState {
    dims: usize,
    eta: AxisLattice,
    xi: AxisLattice,
    values: Vec<Complex64>,
    time: f64,
}

fn unravel(mut flat: usize, len: usize, dims: usize, out: &mut [usize]) {
    for k in (0..dims).rev() {
        out[k] = flat % len;
        flat /= len;
    }
}

impl FourierGridState {
    pub fn from_fn(
        dims: usize,
        eta: AxisLattice,
        xi: AxisLattice,
        mut f: impl FnMut(&[f64], &[f64]) -> Complex64,
    ) -> Result<Self, KolmogorovError> {
        if !(1..=3).contains(&dims) {
            return Err(KolmogorovError::Dims(dims));
        }
        let (ne, nx) = (eta.len().pow(dims as u32), xi.len().pow(dims as u32));
        let mut values = Vec::with_capacity(ne * nx);
        let mut ie = [0usize; 3];
        let mut ix = [0usize; 3];
        let mut ev = [0.0; 3];
        let mut xv = [0.0; 3];
        for e in 0..ne {
            unravel(e, eta.len(), dims, &mut ie);
            for k in 0..dims {
                ev[k] = eta.value(ie[k]);
            }
            for x in 0..nx {
                unravel(x, xi.len(), dims, &mut ix);
                for k in 0..dims {
                    xv[k] = xi.value(ix[k]);
                }
                values.push(f(&ev[..dims], &xv[..dims]));
            }
        }
        Ok(Self {
            dims,
            eta,
            xi,
            values,
            time: 0.0,
        })
    }

    pub fn dims(&self) -> usize {
        self.dims
    }
    pub fn eta_lattice(&self) -> AxisLattice {
        self.eta
    }
    pub fn xi_lattice(&self) -> AxisLattice {
        self.xi
    }
    pub fn time(&self) -> f64 {
        self.time
    }
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    fn xi_count(&self) -> usize {
        self.xi.len().pow(self.dims as u32)
    }

    fn eta_count(&self) -> usize {
        self.eta.len().pow(self.dims as u32)
    }

    /// `η` coordinates of slice `e`.
    pub fn eta_point(&self, e: usize) -> Vec<f64> {
        let mut idx = [0usize; 3];
        unravel(e, self.eta.len(), self.dims, &mut idx);
        idx[..self.dims].iter().map(|&i| self.eta.value(i)).collect()
    }

    /// `ξ` coordinates of lattice point `x`.
    pub fn xi_point(&self, x: usize) -> Vec<f64> {
        let mut idx = [0usize; 3];
        unravel(x, self.xi.len(), self.dims, &mut idx);
        idx[..self.dims].iter().map(|&i| self.xi.value(i)).collect()
    }

    /// The `ξ`-slice at `η`-index `e`.
    pub fn slice(&self, e: usize) -> &[Complex64] {
        let n = self.xi_count();
        &self.values[e * n..(e + 1) * n]
    }

    /// Value at lattice `η`-index `e` and the point `ξ` (multilinear
    /// interpolation); `None` outside the `ξ` lattice.
    pub fn interpolate(&self, e: usize, xi: &[f64]) -> Option<Complex64> {
        let slice = self.slice(e);
        let len = self.xi.len();
        let mut base = [0usize; 3];
        let mut frac = [0.0; 3];
        for k in 0..self.dims {
            let pos = xi[k] / self.xi.step + self.xi.half_width as f64;
            // tolerate round-off at the lattice edge
            let pos = if (pos - pos.round()).abs() < 1e-9 { pos.round() } else { pos };
            if pos < 0.0 || pos > (len - 1) as f64 {
                return None;
            }
            let b = (pos.floor() as usize).min(len - 1);
            base[k] = b;
            frac[k] = pos - b as f64;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for corner in 0..(1usize << self.dims) {
            let mut w = 1.0;
            let mut flat = 0;
            let mut skip = false;
            for k in 0..self.dims {
                let up = (corner >> k) & 1 == 1;
                let wk = if up { frac[k] } else { 1.0 - frac[k] };
                if wk == 0.0 {
                    skip = true;
                    break;
                }
                w *= wk;
                flat = flat * len + base[k] + up as usize;
            }
            if !skip {
                acc += slice[flat] * w;
            }
        }
        Some(acc)
    }

    /// `‖f̂‖²` in the lattice measure (`ξ`-cell volume times `η`-cell volume).
    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|c| c.norm_sqr()).sum::<f64>() * self.cell_volume()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    fn cell_volume(&self) -> f64 {
        (self.xi.step * self.eta.step).powi(self.dims as i32)
    }

    /// Mass of each `η`-slice, `Σ_ξ |f̂(η,ξ)|² h^d`.
    pub fn slice_masses(&self) -> Vec<f64> {
        let h = self.xi.step.powi(self.dims as i32);
        (0..self.eta_count())
            .map(|e| self.slice(e).iter().map(|c| c.norm_sqr()).sum::<f64>() * h)
            .collect()
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, KolmogorovError> {
        if self.dims != other.dims || self.eta != other.eta || self.xi != other.xi {
            return Err(KolmogorovError::LatticeMismatch);
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `‖self − other‖` in the lattice measure.
    pub fn distance(&self, other: &Self) -> Result<f64, KolmogorovError> {
        if self.dims != other.dims || self.eta != other.eta || self.xi != other.xi {
            return Err(KolmogorovError::LatticeMismatch);
        }
        let s: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        Ok((s * self.cell_volume()).sqrt())
    }

    /// `f̂(η, ξ + sη)` for every lattice point, plus the mass of source
    /// points whose image falls outside the lattice.
    fn shifted(&self, s: f64) -> (Vec<Complex64>, f64) {
        let nx = self.xi_count();
        let mut out = vec![Complex64::new(0.0, 0.0); self.values.len()];
        let mut lost = 0.0;
        let h = self.xi.step.powi(self.dims as i32);
        let mut target = [0.0; 3];
        for e in 0..self.eta_count() {
            let eta = self.eta_point(e);
            for x in 0..nx {
                let xi = self.xi_point(x);
                for k in 0..self.dims {
                    target[k] = xi[k] + s * eta[k];
                }
                if let Some(v) = self.interpolate(e, &target[..self.dims]) {
                    out[e * nx + x] = v;
                }
                // source point ξ leaves through the shift when ξ − sη is off-lattice
                let mut back = [0.0; 3];
                let mut outside = false;
                for k in 0..self.dims {
                    back[k] = xi[k] - s * eta[k];
                    if back[k].abs() > self.xi.max() * (1.0 + 1e-12) {
                        outside = true;
                    }
                }
                if outside {
                    lost += self.values[e * nx + x].norm_sqr() * h;
                }
            }
        }
        (out, lost * self.eta.step.powi(self.dims as i32))
    }
}

/// `∫₀ᵗ|ξ+ρη|²dρ = t|ξ|² + t²ξ·η + t³|η|²/3`
pub fn kolmogorov_exponent(t: f64, eta: &[f64], xi: &[f64]) -> f64 {
    let (mut xx, mut xe, mut ee) = (0.0, 0.0, 0.0);
    for k in 0..eta.len() {
        xx += xi[k] * xi[k];
        xe += xi[k] * eta[k];
        ee += eta[k] * eta[k];
    }
    t * xx + t * t * xe + t * t * t * ee / 3.0
}

/// Outcome of an exact propagation.
#[derive(Debug, Clone, PartialEq)]
pub struct Propagated {
    pub state: FourierGridState,
    /// Mass carried off the `ξ` lattice by the shift `ξ + tη`.
    pub lost_mass: f64,
}

impl Propagated {
    /// Raised when more than `1e-12` of mass left the lattice.
    pub fn truncation_flagged(&self) -> bool {
        self.lost_mass > 1e-12
    }
}

/// Advance by time `t` with the exact solution formula.
pub fn exact_propagate(state: &FourierGridState, t: f64) -> Result<Propagated, KolmogorovError> {
    if t < 0.0 {
        return Err(KolmogorovError::NegativeTime(t));
    }
    let (mut values, lost_mass) = state.shifted(t);
    let nx = state.xi_count();
    for e in 0..state.eta_count() {
        let eta = state.eta_point(e);
        for x in 0..nx {
            let xi = state.xi_point(x);
            values[e * nx + x] *= (-kolmogorov_exponent(t, &eta, &xi)).exp();
        }
    }
    Ok(Propagated {
        state: FourierGridState {
            values,
            time: state.time + t,
            ..state.clone()
        },
        lost_mass,
    })
}

/// A smoothing norm, or the report that its weight overflowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SmoothingNorm {
    Finite(f64),
    Diverged,
}

impl SmoothingNorm {
    pub fn value(&self) -> Option<f64> {
        match self {
            SmoothingNorm::Finite(v) => Some(*v),
            SmoothingNorm::Diverged => None,
        }
    }
}

/// `‖e^{c(t|ξ|² + t³|η|²)} f̂‖` at the state's own time.
pub fn smoothing_norm(state: &FourierGridState, c: f64) -> SmoothingNorm {
    let t = state.time;
    let nx = state.xi_count();
    let mut total = 0.0;
    for e in 0..state.eta_count() {
        let eta = state.eta_point(e);
        let ee: f64 = eta.iter().map(|x| x * x).sum();
        for x in 0..nx {
            let v = state.values[e * nx + x].norm_sqr();
            if v == 0.0 {
                continue;
            }
            let xi = state.xi_point(x);
            let xx: f64 = xi.iter().map(|x| x * x).sum();
            let log_w = 2.0 * c * (t * xx + t * t * t * ee) + v.ln();
            if log_w > 700.0 {
                return SmoothingNorm::Diverged;
            }
            total += log_w.exp();
        }
    }
    let total = total * state.cell_volume();
    if total.is_finite() {
        SmoothingNorm::Finite(total.sqrt())
    } else {
        SmoothingNorm::Diverged
    }
}

/// Largest violation of `lower·(t|ξ|²+t³|η|²) ≤ ∫₀ᵗ|ξ+ρη|²dρ ≤ upper·(…)`
/// over the lattice at time `t`, as a relative excess (0 when both hold).
pub fn exponent_sandwich_violation(state: &FourierGridState, t: f64, lower: f64, upper: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for e in 0..state.eta_count() {
        let eta = state.eta_point(e);
        let ee: f64 = eta.iter().map(|x| x * x).sum();
        for x in 0..state.xi_count() {
            let xi = state.xi_point(x);
            let xx: f64 = xi.iter().map(|x| x * x).sum();
            let scale = t * xx + t * t * t * ee;
            if scale == 0.0 {
                continue;
            }
            let q = kolmogorov_exponent(t, &eta, &xi) / scale;
            worst = worst.max(lower - q).max(q - upper);
        }
    }
    worst
}

/// First-order splitting reference: each step applies the exact transport
/// shift `ξ → ξ + dt·η` and then implicit diffusion `(1 + dt|ξ|²)⁻¹`.
pub fn imex_reference_march(state0: &FourierGridState, t: f64, dt: f64) -> Result<FourierGridState, KolmogorovError> {
    if t < 0.0 {
        return Err(KolmogorovError::NegativeTime(t));
    }
    let steps = (t / dt).round();
    if !(dt > 0.0) || (steps * dt - t).abs() > 1e-12 * t.max(1.0) {
        return Err(KolmogorovError::Step { dt, t });
    }
    let nx = state0.xi_count();
    let damping: Vec<f64> = (0..nx)
        .map(|x| {
            let xx: f64 = state0.xi_point(x).iter().map(|v| v * v).sum();
            1.0 / (1.0 + dt * xx)
        })
        .collect();
    let mut state = state0.clone();
    for _ in 0..steps as usize {
        let (mut values, _) = state.shifted(dt);
        for (i, v) in values.iter_mut().enumerate() {
            *v *= damping[i % nx];
        }
        state.values = values;
        state.time += dt;
    }
    Ok(state)
}

/// Write `(t, c, smoothing_norm)` rows; diverged norms are written as `inf`.
pub fn write_smoothing_csv<W: Write>(out: W, rows: &[(f64, f64, SmoothingNorm)]) -> Result<(), KolmogorovError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "c", "smoothing_norm"])?;
    for (t, c, n) in rows {
        let v = match n {
            SmoothingNorm::Finite(v) => format!("{v:e}"),
            SmoothingNorm::Diverged => "inf".to_string(),
        };
        w.write_record([format!("{t}"), format!("{c}"), v])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian(dims: usize) -> FourierGridState {
        FourierGridState::from_fn(dims, AxisLattice::new(4, 1.0), AxisLattice::covering(6.0, 0.25), |eta, xi| {
            let e: f64 = eta.iter().map(|x| x * x).sum();
            let x: f64 = xi.iter().map(|x| x * x).sum();
            Complex64::new((-(e + x)).exp(), 0.0)
        })
        .unwrap()
    }

    #[test]
    fn zero_time_is_identity() {
        let s = gaussian(1);
        let p = exact_propagate(&s, 0.0).unwrap();
        assert_eq!(p.state.values(), s.values());
        assert_eq!(p.lost_mass, 0.0);
    }

    #[test]
    fn exponent_example() {
        let v = kolmogorov_exponent(1.0, &[0.0, 1.0, 0.0], &[1.0, 0.0, 0.0]);
        assert!((v - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn homogeneous_modes_decay_like_heat() {
        let s = gaussian(2);
        let t = 0.37;
        let p = exact_propagate(&s, t).unwrap();
        let e0 = (0..s.eta_count()).find(|&e| s.eta_point(e).iter().all(|v| *v == 0.0)).unwrap();
        for x in 0..s.xi_count() {
            let xx: f64 = s.xi_point(x).iter().map(|v| v * v).sum();
            let expect = s.slice(e0)[x] * (-t * xx).exp();
            assert!((p.state.slice(e0)[x] - expect).norm() == 0.0);
        }
    }

    #[test]
    fn slice_mass_does_not_grow() {
        let s = gaussian(1);
        let m0 = s.slice_masses();
        let m1 = exact_propagate(&s, 0.5).unwrap().state.slice_masses();
        for (a, b) in m0.iter().zip(&m1) {
            assert!(b <= a);
        }
    }

    #[test]
    fn interpolation_is_exact_on_lattice() {
        let s = gaussian(2);
        let p = s.xi_point(17);
        assert_eq!(s.interpolate(3, &p), Some(s.slice(3)[17]));
        assert_eq!(s.interpolate(3, &[100.0, 0.0]), None);
    }

    #[test]
    fn smoothing_norm_limits() {
        let s = gaussian(1);
        assert_eq!(smoothing_norm(&s, 5.0), SmoothingNorm::Finite(s.norm()));
        let p = exact_propagate(&s, 0.5).unwrap().state;
        assert_eq!(smoothing_norm(&p, 0.0), SmoothingNorm::Finite(p.norm()));
        assert_eq!(smoothing_norm(&p, 1e4), SmoothingNorm::Diverged);
    }

    #[test]
    fn march_rejects_bad_steps() {
        let s = gaussian(1);
        assert!(matches!(imex_reference_march(&s, 1.0, 0.3), Err(KolmogorovError::Step { .. })));
        assert!(matches!(imex_reference_march(&s, 1.0, 0.0), Err(KolmogorovError::Step { .. })));
    }
}
