//! One-dimensional quadrature rules.

use nalgebra::{DMatrix, SymmetricEigen};

/// Nodes and weights of a one-dimensional rule.
#[derive(Debug, Clone)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Golub–Welsch: nodes are the eigenvalues of the Jacobi matrix, weights the
/// squared first eigenvector components times the total mass.
fn golub_welsch(n: usize, off_diag: impl Fn(usize) -> f64, mass: f64) -> Rule {
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let b = off_diag(k);
        jac[(k - 1, k)] = b;
        jac[(k, k - 1)] = b;
    }
    let eig = SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], mass * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Rule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

/// Gauss–Hermite rule for the standard normal density: `Σ wᵢ p(xᵢ)` equals
/// `∫ p(x) e^{-x²/2} dx / √(2π)` for polynomials of degree `≤ 2n−1`.
pub fn gauss_hermite_normal(n: usize) -> Rule {
    let mut rule = golub_welsch(n, |k| (k as f64).sqrt(), 1.0);
    // Newton polish on the orthonormal recurrence, then Christoffel weights
    // `1/Σ hₘ(x)²`; the eigen-solver alone leaves ~1e-12 relative error.
    for i in 0..n {
        let mut x = rule.nodes[i];
        for _ in 0..3 {
            let h = orthonormal_hermite(n, x);
            let dx = h[n] / ((n as f64).sqrt() * h[n - 1]);
            x -= dx;
        }
        let h = orthonormal_hermite(n, x);
        rule.nodes[i] = x;
        rule.weights[i] = 1.0 / h[..n].iter().map(|v| v * v).sum::<f64>();
    }
    // symmetrize away round-off
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        let w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.nodes[i] = -x;
        rule.nodes[j] = x;
        rule.weights[i] = w;
        rule.weights[j] = w;
    }
    if n % 2 == 1 {
        rule.nodes[n / 2] = 0.0;
    }
    rule
}

/// `Heₘ(x)/√m!` for `m = 0..=n`.
fn orthonormal_hermite(n: usize, x: f64) -> Vec<f64> {
    let mut h = vec![1.0; n + 1];
    if n >= 1 {
        h[1] = x;
    }
    for m in 1..n {
        h[m + 1] = (x * h[m] - (m as f64).sqrt() * h[m - 1]) / ((m + 1) as f64).sqrt();
    }
    h
}

/// Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Rule {
    golub_welsch(n, |k| k as f64 / ((4 * k * k - 1) as f64).sqrt(), 2.0)
}

/// Adaptive Gauss–Legendre integration of `f` over `[a, b]`.
///
/// Each panel is integrated with 10 and 20 points; panels whose estimates
/// disagree beyond `rel_tol` times a coarse estimate of `∫|f|` are bisected.
pub fn integrate_adaptive(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    thread_local! {
        static RULES: (Rule, Rule) = (gauss_legendre(10), gauss_legendre(20));
    }
    RULES.with(|(lo, hi)| {
        let panel = |rule: &Rule, a: f64, b: f64| {
            let (m, h) = (0.5 * (a + b), 0.5 * (b - a));
            h * rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(x, w)| w * f(m + h * x))
                .sum::<f64>()
        };
        let (m, h) = (0.5 * (a + b), 0.5 * (b - a));
        let scale: f64 = h * hi
            .nodes
            .iter()
            .zip(&hi.weights)
            .map(|(x, w)| w * f(m + h * x).abs())
            .sum::<f64>();
        if scale == 0.0 {
            return 0.0;
        }
        let mut stack = vec![(a, b, 0u32)];
        let mut total = 0.0;
        while let Some((a, b, depth)) = stack.pop() {
            let coarse = panel(lo, a, b);
            let fine = panel(hi, a, b);
            if (fine - coarse).abs() <= rel_tol * scale || depth >= 30 {
                total += fine;
            } else {
                let m = 0.5 * (a + b);
                stack.push((m, b, depth + 1));
                stack.push((a, m, depth + 1));
            }
        }
        total
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_rule_moments() {
        let rule = gauss_hermite_normal(20);
        // E[x^{2k}] = (2k−1)!!
        let mut dfact = 1.0;
        for k in 0..20 {
            let m: f64 = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(x, w)| w * x.powi(2 * k))
                .sum();
            assert!((m - dfact).abs() <= 1e-11 * dfact, "k={k}: {m} vs {dfact}");
            let odd: f64 = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(x, w)| w * x.powi(2 * k as i32 + 1))
                .sum();
            assert!(odd.abs() <= 1e-11 * dfact.max(1.0) * 10.0);
            dfact *= (2 * k + 1) as f64;
        }
    }

    #[test]
    fn legendre_rule_polynomials() {
        let rule = gauss_legendre(10);
        for k in 0..20 {
            let m: f64 = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(x, w)| w * x.powi(k))
                .sum();
            let exact = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert!((m - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn adaptive_handles_kinks() {
        let v = integrate_adaptive(|x| x.abs().sqrt(), -1.0, 1.0, 1e-12);
        assert!((v - 4.0 / 3.0).abs() < 1e-10);
        let v = integrate_adaptive(|x| (1.0 + x * x).sqrt(), 0.0, 1.0, 1e-13);
        let exact = (2f64.sqrt() + (1.0 + 2f64.sqrt()).ln()) / 2.0;
        assert!((v - exact).abs() < 1e-13);
    }
}
