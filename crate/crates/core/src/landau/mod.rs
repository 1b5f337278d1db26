//! The linearized Landau operator for Maxwellian molecules and the bilinear
//! collision term, in Hermite coordinates.
//!
//! `L = L₁ + L₂` with
//!
//! ```text
//! L₁ = 2(−Δ_v + |v|²/4 − 3/2) − Δ_{S²} = 2N̂ − Δ_{S²}
//! L₂ = [Δ_{S²} − 2N̂] P₁ + [−Δ_{S²} − 2N̂] P₂
//! ```
//!
//! where `N̂ = Σⱼ a₊,ⱼa₋,ⱼ` multiplies `Φ_α` by `|α|` and `Pₖ` projects onto
//! level `k`. Both pieces preserve the Hermite level, so `L` is block diagonal
//! with one dense block per level.

mod gamma;
pub mod oracle;

pub use gamma::{gamma_apply, gamma_weak_d, gamma_weak_e, GammaResponses};
pub use oracle::{gamma_quadrature_oracle, OracleError, OracleOptions};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::hermite::{
    level_len, level_offset, number_operator, sphere_laplacian, Axis, HermiteSpectrum, MultiIndex,
};

/// `L₁ s = 2N̂ s − Δ_{S²} s`. Exact at every degree.
pub fn apply_l1(s: &HermiteSpectrum) -> HermiteSpectrum {
    let mut out = &number_operator(s) * 2.0;
    out -= &sphere_laplacian(s);
    out
}

/// `L₂ s`, supported on levels 1 and 2.
pub fn apply_l2(s: &HermiteSpectrum) -> HermiteSpectrum {
    let mut out = HermiteSpectrum::zeros(s.cap());
    for (level, sign) in [(1, 1.0), (2, -1.0)] {
        if level > s.cap() {
            break;
        }
        let p = s.project_level(level);
        let mut block = &sphere_laplacian(&p) * sign;
        block.axpy(Complex64::new(-2.0 * level as f64, 0.0), &p);
        out += &block;
    }
    out
}

/// `L s = L₁ s + L₂ s`
pub fn apply_l(s: &HermiteSpectrum) -> HermiteSpectrum {
    let mut out = apply_l1(s);
    out += &apply_l2(s);
    out
}

/// Dense matrices of `L` restricted to each level `n = 0..=cap`, in the
/// canonical within-level order. Entry `(i, j)` is `(L Φ_j, Φ_i)`.
pub fn level_blocks_l(cap: usize) -> Vec<DMatrix<f64>> {
    (0..=cap)
        .map(|n| {
            let dim = level_len(n);
            let off = level_offset(n);
            let mut m = DMatrix::zeros(dim, dim);
            for j in 0..dim {
                let col = apply_l(&HermiteSpectrum::basis(n, MultiIndex::from_rank(off + j)));
                for (i, c) in col.level(n).iter().enumerate() {
                    m[(i, j)] = c.re;
                }
            }
            m
        })
        .collect()
}

/// Apply `L` level by level from precomputed blocks.
pub fn apply_blocks(blocks: &[DMatrix<f64>], s: &HermiteSpectrum) -> HermiteSpectrum {
    assert!(blocks.len() > s.cap(), "not enough level blocks");
    let mut out = HermiteSpectrum::zeros(s.cap());
    for n in 0..=s.cap() {
        let src = s.level(n);
        let dst = out.level_mut(n);
        let b = &blocks[n];
        for (i, d) in dst.iter_mut().enumerate() {
            *d = src.iter().enumerate().map(|(j, x)| x * b[(i, j)]).sum();
        }
    }
    out
}

/// The ten moments of `f` that `Γ(f, ·)` depends on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionMoments {
    /// `(f, Φ₀)`
    pub m0: Complex64,
    /// `(f, Φ_{eᵢ})`
    pub m1: [Complex64; 3],
    /// `(f, Φ_{2eⱼ})`
    pub m2d: [Complex64; 3],
    /// `(f, Φ_{eᵢ+eⱼ})` for the pairs `(1,2), (1,3), (2,3)`
    pub m2o: [Complex64; 3],
}

impl CollisionMoments {
    pub fn of(f: &HermiteSpectrum) -> Self {
        let mut m = Self {
            m0: f.get(MultiIndex::ZERO),
            m1: [Complex64::new(0.0, 0.0); 3],
            m2d: [Complex64::new(0.0, 0.0); 3],
            m2o: [Complex64::new(0.0, 0.0); 3],
        };
        for ax in Axis::ALL {
            m.m1[ax.index()] = f.get(MultiIndex::unit(ax));
            m.m2d[ax.index()] = f.get(MultiIndex::pair(ax, ax));
        }
        for (p, (i, j)) in Axis::pairs().into_iter().enumerate() {
            m.m2o[p] = f.get(MultiIndex::pair(i, j));
        }
        m
    }

    /// The ten values in the order `m0, m1, m2d, m2o`.
    pub fn as_array(&self) -> [Complex64; 10] {
        let mut out = [self.m0; 10];
        out[1..4].copy_from_slice(&self.m1);
        out[4..7].copy_from_slice(&self.m2d);
        out[7..10].copy_from_slice(&self.m2o);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.as_array().iter().all(|c| c.norm_sqr() == 0.0)
    }
}

/// `collision_moments(f)`
pub fn collision_moments(f: &HermiteSpectrum) -> CollisionMoments {
    CollisionMoments::of(f)
}

/// The five collision invariants `Φ₀, Φ_{e₁}, Φ_{e₂}, Φ_{e₃}, Σₖ Φ_{2eₖ}`.
pub fn collision_invariants(cap: usize) -> Vec<HermiteSpectrum> {
    assert!(cap >= 2);
    let mut out = vec![HermiteSpectrum::ground(cap)];
    for ax in Axis::ALL {
        out.push(HermiteSpectrum::basis(cap, MultiIndex::unit(ax)));
    }
    let mut energy = HermiteSpectrum::zeros(cap);
    for ax in Axis::ALL {
        energy.set(MultiIndex::pair(ax, ax), Complex64::new(1.0, 0.0));
    }
    out.push(energy);
    out
}

/// `|||g|||²_v = 2Σⱼ(‖∂ⱼg‖² + ¼‖vⱼg‖²) + ½Σ_{j≠k}‖L_{k,j}g‖²`.
///
/// Computed on a copy padded by one level so the result is exact for every
/// input degree.
pub fn triple_norm_sqr_v(g: &HermiteSpectrum) -> f64 {
    use crate::hermite::{angular, differentiate_v, multiply_v};
    let g = g.with_cap(g.cap() + 1);
    let mut total = 0.0;
    for ax in Axis::ALL {
        total += 2.0 * differentiate_v(ax, &g).norm_sqr() + 0.5 * multiply_v(ax, &g).norm_sqr();
    }
    for (k, j) in Axis::pairs() {
        // ordered pairs (k,j) and (j,k) give equal norms
        total += angular(k, j, &g).expect("distinct axes").norm_sqr();
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::SymmetricEigen;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn l1_examples() {
        let n = 4;
        assert_eq!(apply_l1(&HermiteSpectrum::ground(n)).norm(), 0.0);
        for ax in Axis::ALL {
            let e = HermiteSpectrum::basis(n, MultiIndex::unit(ax));
            assert!(apply_l1(&e).max_abs_diff(&(&e * 4.0)) < 1e-14);
        }
        let p = HermiteSpectrum::basis(n, MultiIndex::new(1, 1, 0));
        assert!(apply_l1(&p).max_abs_diff(&(&p * 10.0)) < 1e-13);
    }

    #[test]
    fn l2_examples() {
        let n = 4;
        let e = HermiteSpectrum::basis(n, MultiIndex::unit(Axis::Y));
        assert!(apply_l2(&e).max_abs_diff(&(&e * -4.0)) < 1e-14);
        let energy = collision_invariants(n).pop().unwrap();
        assert!(apply_l2(&energy).max_abs_diff(&(&energy * -4.0)) < 1e-13);
        let cubic = HermiteSpectrum::basis(n, MultiIndex::new(3, 0, 0));
        assert_eq!(apply_l2(&cubic).norm(), 0.0);
    }

    #[test]
    fn kernel_and_first_excited_value() {
        let n = 6;
        for inv in collision_invariants(n) {
            assert!(apply_l(&inv).norm() < 1e-12);
        }
        let p = HermiteSpectrum::basis(n, MultiIndex::new(1, 1, 0));
        assert!(apply_l(&p).max_abs_diff(&(&p * 12.0)) < 1e-12);
    }

    #[test]
    fn blocks_match_matrix_free() {
        let n = 7;
        let blocks = level_blocks_l(n);
        let mut s = HermiteSpectrum::zeros(n);
        for (i, x) in s.coeffs_mut().iter_mut().enumerate() {
            *x = Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 0.91).cos());
        }
        assert!(apply_blocks(&blocks, &s).max_abs_diff(&apply_l(&s)) < 1e-12);
    }

    #[test]
    fn level_three_spectrum() {
        let blocks = level_blocks_l(3);
        let eig = SymmetricEigen::new(blocks[3].clone());
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(f64::total_cmp);
        // three l=1 modes at 2·3+2 = 8, seven l=3 modes at 6+12 = 18
        for (i, v) in vals.iter().enumerate() {
            let expect = if i < 3 { 8.0 } else { 18.0 };
            assert!((v - expect).abs() < 1e-10, "{vals:?}");
        }
    }

    #[test]
    fn moments_read_coefficients() {
        let m = collision_moments(&HermiteSpectrum::ground(3));
        assert_eq!(m.m0, c(1.0));
        assert!(m.as_array()[1..].iter().all(|z| z.norm() == 0.0));
        let m = collision_moments(&HermiteSpectrum::basis(3, MultiIndex::new(1, 1, 0)));
        assert_eq!(m.m2o[0], c(1.0));
        assert_eq!(m.as_array().iter().filter(|z| z.norm() > 0.0).count(), 1);
    }

    #[test]
    fn triple_norm_of_ground_state() {
        assert!((triple_norm_sqr_v(&HermiteSpectrum::ground(2)) - 3.0).abs() < 1e-14);
    }
}
