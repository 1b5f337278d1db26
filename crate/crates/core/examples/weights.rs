//! The time-dependent Fourier weight: Ukai two-sided comparison, the
//! transport identity and the sampled convolution bounds.

use landau_hermite::weights::*;

fn main() {
    let grid = UkaiGrid::standard();
    println!("grid: {}", grid.describe());
    for alpha in [1.0, 2.0] {
        let low = ukai_lower_ratio(alpha, &grid);
        let high = ukai_upper_ratio(alpha, &grid);
        println!("α = {alpha}: min ratio {:.4} (floor {:.4}), max ratio {:.4}", low.worst_ratio, ukai_floor(alpha).unwrap(), high.worst_ratio);
        println!("  {}", low.to_json());
    }
    let c0 = 1.0 / 32.0;
    let worst = standard_identity_grid()
        .iter()
        .map(|(t, eta, xi)| transport_identity_residual(*t, eta, xi, c0))
        .fold(0.0, f64::max);
    println!("transport identity residual {worst:.2e}");
    let params = WeightParams::new(c0, 0.5, 0.1, 2.0, 1.0).unwrap();
    let f = weight_f(&params, &[1.0, 0.0, 0.0], &[2.0, -1.0, 0.5]);
    println!("F(t=1, η=e1, ξ=(2,-1,.5)) = {f:.6}");
    let sub = submultiplicativity_check(0.5, 100_000, 1);
    println!("submultiplicativity: {} violations, max ratio {:.4}", sub.violations, sub.max_ratio);
    let tri = weight_triangle_check(&params, 20_000, 2);
    println!("triangle bounds: {} / {} violations, empirical C7 {:.3}", tri.pointwise.violations, tri.exponential.violations, tri.empirical_c7);
}
