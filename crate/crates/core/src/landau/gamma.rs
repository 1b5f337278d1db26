//! The bilinear term `Γ(f, g) = μ^{-1/2} Q_L(μ^{1/2} f, μ^{1/2} g)`.
//!
//! Three codings of the same form, kept deliberately separate so that they
//! can check one another:
//!
//! * [`gamma_weak_d`]: the ladder-operator pairing `(Γ(f,g), h) = D₁ + … + D₇`,
//! * [`gamma_weak_e`]: the intermediate `E₁ + … + E₇` form written with
//!   multiplication and differentiation only,
//! * [`gamma_apply`]: the strong form obtained by moving every operator off
//!   `h` (`a₋* = a₊`, `L_{k,j}* = −L_{k,j}`).
//!
//! All pairings are `(x, y) = Σ x·conj(y)`, so the weak forms are linear in
//! `f, g` and antilinear in `h`.

use num_complex::Complex64;

use super::CollisionMoments;
use crate::hermite::{
    angular, angular_into, differentiate_v, inner_product, lower, multiply_v, raise, raise_into,
    Axis, HermiteSpectrum, MultiIndex,
};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

fn ordered_pairs() -> impl Iterator<Item = (Axis, Axis)> {
    Axis::ALL
        .into_iter()
        .flat_map(|i| Axis::ALL.into_iter().filter(move |&j| j != i).map(move |j| (i, j)))
}

fn ang(k: Axis, j: Axis, s: &HermiteSpectrum) -> HermiteSpectrum {
    angular(k, j, s).expect("ordered pairs have distinct axes")
}

/// `(Γ(f,g), h)` as the sum of the seven ladder blocks `D₁ … D₇`.
pub fn gamma_weak_d(f: &HermiteSpectrum, g: &HermiteSpectrum, h: &HermiteSpectrum) -> Complex64 {
    let m = CollisionMoments::of(f);
    // one spare level keeps a₊g intact; every pairing then sees exact data
    let cap = g.cap().max(h.cap()) + 1;
    let g = g.with_cap(cap);
    let h = h.with_cap(cap);
    let (mut d1, mut d2, mut d3, mut d4, mut d5, mut d6, mut d7) = (ZERO, ZERO, ZERO, ZERO, ZERO, ZERO, ZERO);
    for (i, j) in ordered_pairs() {
        let (ii, jj) = (i.index(), j.index());
        let a_plus_i_g = raise(i, &g);
        let a_minus_i_h = lower(i, &h);
        let l_ij_g = ang(i, j, &g);
        let l_ij_h = ang(i, j, &h);
        let f_ij = f.get(MultiIndex::pair(i, j));

        d1 += 2f64.sqrt() * m.m2d[jj] * inner_product(&a_plus_i_g, &a_minus_i_h);
        d2 -= m.m0 * inner_product(&lower(i, &g), &a_minus_i_h);
        d3 -= f_ij * inner_product(&raise(j, &g), &a_minus_i_h);
        d4 += m.m1[ii] * inner_product(&g, &a_minus_i_h);
        d5 -= 0.5 * m.m0 * inner_product(&l_ij_g, &l_ij_h);
        d6 += m.m1[jj] * inner_product(&l_ij_g, &a_minus_i_h);
        d7 -= m.m1[jj] * inner_product(&a_plus_i_g, &l_ij_h);
    }
    d1 + d2 + d3 + d4 + d5 + d6 + d7
}

/// `(Γ(f,g), h)` as `E₁ + … + E₇`, using only multiplication by `vⱼ` and
/// differentiation in `vⱼ`.
pub fn gamma_weak_e(f: &HermiteSpectrum, g: &HermiteSpectrum, h: &HermiteSpectrum) -> Complex64 {
    // two spare levels: every expression below raises degree by at most 2
    let cap = f.cap().max(g.cap()).max(h.cap()) + 2;
    let f = f.with_cap(cap);
    let g = g.with_cap(cap);
    let h = h.with_cap(cap);
    let phi0 = HermiteSpectrum::ground(cap);

    let v = |j: Axis, s: &HermiteSpectrum| multiply_v(j, s);
    let d = |j: Axis, s: &HermiteSpectrum| differentiate_v(j, s);
    // ∂ₖs − (vₖ/2)s and −∂ₖs − (vₖ/2)s
    let d_minus_half_v = |k: Axis, s: &HermiteSpectrum| &d(k, s) - &(&v(k, s) * 0.5);
    let neg_d_minus_half_v = |k: Axis, s: &HermiteSpectrum| &(-&d(k, s)) - &(&v(k, s) * 0.5);
    // vⱼ∂ₖs − vₖ∂ⱼs
    let rot = |k: Axis, j: Axis, s: &HermiteSpectrum| &v(j, &d(k, s)) - &v(k, &d(j, s));

    let f_mass = inner_product(&f, &phi0);
    let mut total = ZERO;
    for (k, j) in ordered_pairs() {
        let f_vjj = inner_product(&f, &v(j, &v(j, &phi0)));
        let f_vkj = inner_product(&f, &v(k, &v(j, &phi0)));
        let f_vk = inner_product(&f, &v(k, &phi0));
        let f_vj = inner_product(&f, &v(j, &phi0));

        let hk = neg_d_minus_half_v(k, &h);
        let gk = d_minus_half_v(k, &g);
        let rot_g = rot(k, j, &g);
        let rot_h = rot(k, j, &h);

        let e1 = f_vjj * inner_product(&gk, &hk);
        let e2 = -f_vkj * inner_product(&d_minus_half_v(j, &g), &hk);
        let e3 = f_mass * inner_product(&v(k, &g), &hk);
        let e4 = -f_vk * inner_product(&g, &hk);
        let e5 = -0.5 * f_mass * inner_product(&rot_g, &rot_h);
        let e6 = f_vj * inner_product(&rot_g, &(-&hk));
        let e7 = f_vj * inner_product(&gk, &rot_h);
        total += e1 + e2 + e3 + e4 + e5 + e6 + e7;
    }
    total
}

/// The ten spectra `Γ(f, g)` is a moment-weighted sum of:
///
/// ```text
/// Γ(f,g) = m₀ r₀ + Σ m₁[i] r₁[i] + Σ m₂d[j] r₂d[j] + Σ m₂o[p] r₂o[p]
/// ```
///
/// They depend on `g` only, so a convolution over Fourier modes can build
/// them once per `g`-mode.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaResponses {
    pub r0: HermiteSpectrum,
    pub r1: [HermiteSpectrum; 3],
    pub r2d: [HermiteSpectrum; 3],
    pub r2o: [HermiteSpectrum; 3],
}

impl GammaResponses {
    /// Build the responses of `g`; raising steps past the cap are dropped,
    /// which is exactly the Galerkin projection of `Γ(f, g)`.
    pub fn of(g: &HermiteSpectrum) -> Self {
        let cap = g.cap();
        let zeros = || HermiteSpectrum::zeros(cap);
        let sqrt2 = Complex64::new(2f64.sqrt(), 0.0);
        let mut tmp = zeros();
        let clear = |s: &mut HermiteSpectrum| s.coeffs_mut().iter_mut().for_each(|c| *c = ZERO);

        // r₀ = −L₁ g
        let mut r0 = super::apply_l1(g);
        r0.scale(-ONE);

        // r₁[m] = 2a₊,ₘg + Σ_{i≠m} (a₊,ᵢL_{i,m} + L_{i,m}a₊,ᵢ) g
        let r1 = Axis::ALL.map(|m| {
            let mut out = zeros();
            raise_into(m, Complex64::new(2.0, 0.0), g, &mut out);
            for i in Axis::ALL.into_iter().filter(|&i| i != m) {
                clear(&mut tmp);
                angular_into(i, m, ONE, g, &mut tmp);
                raise_into(i, ONE, &tmp, &mut out);
                clear(&mut tmp);
                raise_into(i, ONE, g, &mut tmp);
                angular_into(i, m, ONE, &tmp, &mut out);
            }
            out
        });

        // a₊,ᵢg computed once, reused for the second-order responses
        let raised = Axis::ALL.map(|i| raise(i, g));

        // r₂d[j] = √2 Σ_{i≠j} a₊,ᵢ² g
        let r2d = Axis::ALL.map(|j| {
            let mut out = zeros();
            for i in Axis::ALL.into_iter().filter(|&i| i != j) {
                raise_into(i, sqrt2, &raised[i.index()], &mut out);
            }
            out
        });

        // r₂o[(p,q)] = −2 a₊,ₚa₊,_q g
        let r2o = Axis::pairs().map(|(p, q)| {
            let mut out = zeros();
            raise_into(p, Complex64::new(-2.0, 0.0), &raised[q.index()], &mut out);
            out
        });

        Self { r0, r1, r2d, r2o }
    }

    pub fn cap(&self) -> usize {
        self.r0.cap()
    }

    fn parts(&self) -> [&HermiteSpectrum; 10] {
        [
            &self.r0, &self.r1[0], &self.r1[1], &self.r1[2], &self.r2d[0], &self.r2d[1],
            &self.r2d[2], &self.r2o[0], &self.r2o[1], &self.r2o[2],
        ]
    }

    /// `out += Γ(f, g)` for `f` given through its moments.
    pub fn accumulate(&self, m: &CollisionMoments, out: &mut [Complex64]) {
        for (w, r) in m.as_array().iter().zip(self.parts()) {
            if w.re == 0.0 && w.im == 0.0 {
                continue;
            }
            for (o, x) in out.iter_mut().zip(r.coeffs()) {
                *o += w * x;
            }
        }
    }

    pub fn apply(&self, m: &CollisionMoments) -> HermiteSpectrum {
        let mut out = HermiteSpectrum::zeros(self.cap());
        self.accumulate(m, out.coeffs_mut());
        out
    }
}

/// `P_N Γ(f, g)` in strong form; the cap is that of `g`.
pub fn gamma_apply(f: &HermiteSpectrum, g: &HermiteSpectrum) -> HermiteSpectrum {
    GammaResponses::of(g).apply(&CollisionMoments::of(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landau::{apply_l1, apply_l2};

    fn sample(cap: usize, deg: usize, seed: u64) -> HermiteSpectrum {
        let mut s = HermiteSpectrum::zeros(cap);
        let mut x = seed as f64 + 0.5;
        for a in crate::hermite::enumerate_indices(deg) {
            x = (x * 12.9898 + 78.233).sin() * 43758.5453;
            let re = x.fract();
            x = (x * 12.9898 + 78.233).sin() * 43758.5453;
            s.set(a, Complex64::new(re, x.fract()));
        }
        s
    }

    #[test]
    fn d_form_with_ground_state_is_minus_l1() {
        let n = 4;
        let f = HermiteSpectrum::ground(n);
        let g = HermiteSpectrum::basis(n, MultiIndex::unit(Axis::X));
        let v = gamma_weak_d(&f, &g, &g);
        assert!((v - Complex64::new(-4.0, 0.0)).norm() < 1e-13);
        assert!((gamma_weak_e(&f, &g, &g) - v).norm() < 1e-13);
    }

    #[test]
    fn three_forms_agree() {
        let n = 6;
        for seed in 0..5 {
            let (f, g, h) = (sample(n, 4, seed), sample(n, 4, seed + 10), sample(n, 4, seed + 20));
            let d = gamma_weak_d(&f, &g, &h);
            let e = gamma_weak_e(&f, &g, &h);
            let a = inner_product(&gamma_apply(&f, &g), &h);
            assert!((d - e).norm() < 1e-11 * (1.0 + d.norm()), "{d} vs {e}");
            assert!((d - a).norm() < 1e-11 * (1.0 + d.norm()), "{d} vs {a}");
        }
    }

    #[test]
    fn ground_state_slots() {
        let n = 6;
        let g = sample(n, 6, 3);
        let phi0 = HermiteSpectrum::ground(n);
        assert!(gamma_apply(&phi0, &g).max_abs_diff(&-&apply_l1(&g)) < 1e-12);
        assert!(gamma_apply(&g, &phi0).max_abs_diff(&-&apply_l2(&g)) < 1e-12);
    }
}
