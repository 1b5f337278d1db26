//! Creation/annihilation operators on a Hermite spectrum and the identities
//! they satisfy.

use landau_hermite::hermite::{angular, differentiate_v, lower, multiply_v, raise, sphere_laplacian};
use landau_hermite::{Axis, HermiteSpectrum, MultiIndex};

fn main() {
    let cap = 6;
    let phi0 = HermiteSpectrum::ground(cap);
    let e1 = raise(Axis::X, &phi0);
    println!("a+_1 Φ0 = Φ_(1,0,0): {}", e1 == HermiteSpectrum::basis(cap, MultiIndex::unit(Axis::X)));

    let v1e1 = multiply_v(Axis::X, &e1);
    println!("v1 Φ_e1 = √2 Φ_2e1 + Φ0: coefficients {:.6} and {:.6}", v1e1.get(MultiIndex::new(2, 0, 0)).re, v1e1.get(MultiIndex::ZERO).re);

    let s = HermiteSpectrum::basis(cap, MultiIndex::new(1, 2, 0));
    let comm = &lower(Axis::Y, &raise(Axis::Y, &s)) - &raise(Axis::Y, &lower(Axis::Y, &s));
    println!("[a-, a+] Φ_(1,2,0) − Φ_(1,2,0) = {:.1e}", comm.max_abs_diff(&s));

    let l = angular(Axis::Y, Axis::X, &s).unwrap();
    let composed = &multiply_v(Axis::X, &differentiate_v(Axis::Y, &s)) - &multiply_v(Axis::Y, &differentiate_v(Axis::X, &s));
    println!("L_21 via ladders vs v1∂2 − v2∂1: {:.1e}", l.max_abs_diff(&composed));

    let p = HermiteSpectrum::basis(cap, MultiIndex::new(1, 1, 0));
    let lap = sphere_laplacian(&p);
    println!("Δ_S Φ_(1,1,0) = {} Φ_(1,1,0)", lap.get(MultiIndex::new(1, 1, 0)).re);
}
