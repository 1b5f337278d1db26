//! The nonlinear term in three forms, checked against direct Gauss–Hermite
//! quadrature of its weak form.

use landau_hermite::hermite::inner_product;
use landau_hermite::landau::{gamma_apply, gamma_quadrature_oracle, gamma_weak_d, gamma_weak_e};
use landau_hermite::{Complex64, HermiteSpectrum, MultiIndex};

fn main() {
    let mut f = HermiteSpectrum::zeros(3);
    f.set(MultiIndex::new(1, 0, 0), Complex64::new(0.3, 0.0));
    f.set(MultiIndex::new(0, 1, 1), Complex64::new(-0.2, 0.1));
    f.set(MultiIndex::new(2, 0, 0), Complex64::new(0.5, 0.0));
    let mut g = HermiteSpectrum::zeros(5);
    g.set(MultiIndex::new(1, 1, 0), Complex64::new(1.0, 0.0));
    g.set(MultiIndex::new(0, 0, 3), Complex64::new(0.0, 0.7));

    let strong = gamma_apply(&f.with_cap(5), &g);
    let oracle = gamma_quadrature_oracle(&f, &g).expect("inputs of degree ≤ 3");
    println!("‖Γ‖ = {:.6}, strong vs quadrature: {:.2e}", strong.norm(), strong.max_abs_diff(&oracle));

    let h = HermiteSpectrum::basis(5, MultiIndex::new(2, 1, 0));
    let fw = f.with_cap(5);
    println!(
        "(Γ(f,g), Φ_(2,1,0)): D-form {:.12}, E-form {:.12}, strong {:.12}",
        gamma_weak_d(&fw, &g, &h),
        gamma_weak_e(&fw, &g, &h),
        inner_product(&strong, &h)
    );
}
