//! Spectrum of the linearized operator level by level.

use landau_hermite::hermite::level_len;
use landau_hermite::landau::{apply_l, collision_invariants, level_blocks_l};

fn main() {
    let cap = 8;
    for inv in collision_invariants(cap) {
        assert!(apply_l(&inv).norm() < 1e-12);
    }
    println!("the five collision invariants lie in the kernel");
    for (n, block) in level_blocks_l(cap).into_iter().enumerate() {
        let mut e: Vec<f64> = block.symmetric_eigen().eigenvalues.iter().map(|x| (x * 1e9).round() / 1e9 + 0.0).collect();
        e.sort_by(|a, b| a.partial_cmp(b).unwrap());
        e.dedup();
        println!("level {n:>2} ({:>3} modes): distinct eigenvalues {e:?}", level_len(n));
    }
}
