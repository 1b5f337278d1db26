//! Quadrature reference for `Γ(f, g)` that uses no ladder algebra.
//!
//! With `Φ_α = P_α(v) μ^{1/2}` (`P_α` a product of normalized probabilists'
//! Hermite polynomials) the weak form of `Γ(f, g)` against `Φ_β` is
//!
//! ```text
//! −∬ Σ_{k,j} ∂ₖP_β(v) a_{kj}(v−v*) [P_f(v*)(∂ⱼP_g − vⱼP_g)(v)
//!                                   − (∂ⱼP_f − v*ⱼP_f)(v*) P_g(v)] dμ(v) dμ(v*)
//! ```
//!
//! with `a_{kj}(z) = δ_{kj}|z|² − zₖzⱼ`. Both integrals run over a tensor
//! Gauss–Hermite rule for the standard normal measure. Because `a_{kj}` is a
//! quadratic polynomial, the `v*` sum collapses onto the zeroth, first and
//! second moments of the `v*` factor; [`gamma_quadrature_oracle`] uses that
//! factorization, [`gamma_quadrature_direct`] the literal double loop.

use num_complex::Complex64;
use thiserror::Error;

use crate::hermite::{for_each_index, HermiteSpectrum};
use crate::quad::{gauss_hermite_normal, Rule};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("input degree {degree} exceeds the oracle limit {limit}")]
    DegreeTooHigh { degree: usize, limit: usize },
    #[error("quadrature not converged at {nodes} nodes: raising the order changed an entry by {change:e}")]
    Unconverged { nodes: usize, change: f64 },
}

#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    /// Gauss–Hermite nodes per axis.
    pub nodes: usize,
    /// Extra nodes used for the convergence re-run.
    pub check_increment: usize,
    /// Largest tolerated entry change between the two runs.
    pub tolerance: f64,
    pub max_input_degree: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            nodes: 20,
            check_increment: 4,
            tolerance: 1e-9,
            max_input_degree: 3,
        }
    }
}

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Normalized Hermite polynomials `Heₘ(x)/√m!` and their derivatives at the
/// rule nodes, indexed `[m][node]`.
struct Tables {
    h: Vec<Vec<f64>>,
    dh: Vec<Vec<f64>>,
}

impl Tables {
    fn new(rule: &Rule, max_deg: usize) -> Self {
        let n = rule.len();
        let mut h = vec![vec![1.0; n]; max_deg + 1];
        if max_deg >= 1 {
            h[1].copy_from_slice(&rule.nodes);
        }
        for m in 1..max_deg {
            for a in 0..n {
                let x = rule.nodes[a];
                h[m + 1][a] = (x * h[m][a] - (m as f64).sqrt() * h[m - 1][a]) / ((m + 1) as f64).sqrt();
            }
        }
        let mut dh = vec![vec![0.0; n]; max_deg + 1];
        for m in 1..=max_deg {
            for a in 0..n {
                dh[m][a] = (m as f64).sqrt() * h[m - 1][a];
            }
        }
        Self { h, dh }
    }
}

/// `P_s` and `∇P_s` at every tensor node, flattened as `a·n² + b·n + c`.
fn eval_poly(s: &HermiteSpectrum, t: &Tables, n: usize) -> (Vec<Complex64>, [Vec<Complex64>; 3]) {
    let len = n * n * n;
    let mut p = vec![ZERO; len];
    let mut grad = [vec![ZERO; len], vec![ZERO; len], vec![ZERO; len]];
    let deg = s.degree();
    for_each_index(deg, |rank, a1, a2, a3| {
        let c = s.coeffs()[rank];
        if c.norm_sqr() == 0.0 {
            return;
        }
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    let idx = (a * n + b) * n + cc;
                    let (h1, h2, h3) = (t.h[a1][a], t.h[a2][b], t.h[a3][cc]);
                    p[idx] += c * (h1 * h2 * h3);
                    grad[0][idx] += c * (t.dh[a1][a] * h2 * h3);
                    grad[1][idx] += c * (h1 * t.dh[a2][b] * h3);
                    grad[2][idx] += c * (h1 * h2 * t.dh[a3][cc]);
                }
            }
        }
    });
    (p, grad)
}

fn node_point(rule: &Rule, n: usize, idx: usize) -> ([f64; 3], f64) {
    let (a, b, c) = (idx / (n * n), (idx / n) % n, idx % n);
    (
        [rule.nodes[a], rule.nodes[b], rule.nodes[c]],
        rule.weights[a] * rule.weights[b] * rule.weights[c],
    )
}

/// `(∂ⱼP − vⱼP)` at every node.
fn shifted_gradient(rule: &Rule, n: usize, p: &[Complex64], grad: &[Vec<Complex64>; 3]) -> [Vec<Complex64>; 3] {
    std::array::from_fn(|j| {
        (0..p.len())
            .map(|idx| {
                let (v, _) = node_point(rule, n, idx);
                grad[j][idx] - p[idx] * v[j]
            })
            .collect()
    })
}

/// Zeroth, first and second moments of a nodal function.
#[derive(Clone, Copy)]
struct Moments {
    m0: Complex64,
    m1: [Complex64; 3],
    m2: [[Complex64; 3]; 3],
}

impl Moments {
    fn of(rule: &Rule, n: usize, w: &[Complex64]) -> Self {
        let mut m = Moments {
            m0: ZERO,
            m1: [ZERO; 3],
            m2: [[ZERO; 3]; 3],
        };
        for (idx, x) in w.iter().enumerate() {
            let (v, wt) = node_point(rule, n, idx);
            let x = x * wt;
            m.m0 += x;
            for i in 0..3 {
                m.m1[i] += x * v[i];
                for l in 0..3 {
                    m.m2[i][l] += x * (v[i] * v[l]);
                }
            }
        }
        m
    }

    /// `∫ a_{kj}(v − v*) w(v*) dμ(v*)`
    fn kernel(&self, v: &[f64; 3], k: usize, j: usize) -> Complex64 {
        let mut out = ZERO;
        if k == j {
            for i in 0..3 {
                out += self.m0 * (v[i] * v[i]) - self.m1[i] * (2.0 * v[i]) + self.m2[i][i];
            }
        }
        out - (self.m0 * (v[k] * v[j]) - self.m1[j] * v[k] - self.m1[k] * v[j] + self.m2[k][j])
    }
}

/// Project `Σₖ ∂ₖP_β · Iₖ` onto every `β` with `|β| ≤ cap`.
fn project(rule: &Rule, n: usize, t: &Tables, cap: usize, flux: &[[Complex64; 3]]) -> HermiteSpectrum {
    let mut out = HermiteSpectrum::zeros(cap);
    let weighted: Vec<[Complex64; 3]> = flux
        .iter()
        .enumerate()
        .map(|(idx, fl)| {
            let (_, w) = node_point(rule, n, idx);
            [fl[0] * w, fl[1] * w, fl[2] * w]
        })
        .collect();
    for_each_index(cap, |rank, b1, b2, b3| {
        let mut acc = ZERO;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let fl = &weighted[(a * n + b) * n + c];
                    let (h1, h2, h3) = (t.h[b1][a], t.h[b2][b], t.h[b3][c]);
                    acc += fl[0] * (t.dh[b1][a] * h2 * h3)
                        + fl[1] * (h1 * t.dh[b2][b] * h3)
                        + fl[2] * (h1 * h2 * t.dh[b3][c]);
                }
            }
        }
        out.coeffs_mut()[rank] = -acc;
    });
    out
}

struct Prepared {
    rule: Rule,
    n: usize,
    tables: Tables,
    pf: Vec<Complex64>,
    bf: [Vec<Complex64>; 3],
    pg: Vec<Complex64>,
    ag: [Vec<Complex64>; 3],
}

fn prepare(f: &HermiteSpectrum, g: &HermiteSpectrum, nodes: usize) -> Prepared {
    let rule = gauss_hermite_normal(nodes);
    let max_deg = f.cap().max(g.cap()) + 1;
    let tables = Tables::new(&rule, max_deg);
    let (pf, grad_f) = eval_poly(f, &tables, nodes);
    let (pg, grad_g) = eval_poly(g, &tables, nodes);
    let bf = shifted_gradient(&rule, nodes, &pf, &grad_f);
    let ag = shifted_gradient(&rule, nodes, &pg, &grad_g);
    Prepared { rule, n: nodes, tables, pf, bf, pg, ag }
}

/// Factorized tensor-rule evaluation at a fixed node count.
pub fn gamma_quadrature_fixed(f: &HermiteSpectrum, g: &HermiteSpectrum, nodes: usize) -> HermiteSpectrum {
    let p = prepare(f, g, nodes);
    let n = p.n;
    let mf = Moments::of(&p.rule, n, &p.pf);
    let mb: [Moments; 3] = std::array::from_fn(|j| Moments::of(&p.rule, n, &p.bf[j]));
    let flux: Vec<[Complex64; 3]> = (0..n * n * n)
        .map(|idx| {
            let (v, _) = node_point(&p.rule, n, idx);
            std::array::from_fn(|k| {
                (0..3)
                    .map(|j| mf.kernel(&v, k, j) * p.ag[j][idx] - mb[j].kernel(&v, k, j) * p.pg[idx])
                    .sum()
            })
        })
        .collect();
    project(&p.rule, n, &p.tables, g.cap(), &flux)
}

/// Literal double loop over `(v, v*)`; cost grows like `nodes⁶`.
pub fn gamma_quadrature_direct(f: &HermiteSpectrum, g: &HermiteSpectrum, nodes: usize) -> HermiteSpectrum {
    let p = prepare(f, g, nodes);
    let n = p.n;
    let len = n * n * n;
    let pts: Vec<([f64; 3], f64)> = (0..len).map(|i| node_point(&p.rule, n, i)).collect();
    let flux: Vec<[Complex64; 3]> = (0..len)
        .map(|iv| {
            let v = pts[iv].0;
            let mut out = [ZERO; 3];
            for (is, (vs, ws)) in pts.iter().enumerate() {
                let z = [v[0] - vs[0], v[1] - vs[1], v[2] - vs[2]];
                let z2 = z[0] * z[0] + z[1] * z[1] + z[2] * z[2];
                for (k, o) in out.iter_mut().enumerate() {
                    for j in 0..3 {
                        let a = if k == j { z2 } else { 0.0 } - z[k] * z[j];
                        if a == 0.0 {
                            continue;
                        }
                        *o += (p.pf[is] * p.ag[j][iv] - p.bf[j][is] * p.pg[iv]) * (a * ws);
                    }
                }
            }
            out
        })
        .collect();
    project(&p.rule, n, &p.tables, g.cap(), &flux)
}

/// Quadrature reference for `P_N Γ(f, g)` with the default options.
pub fn gamma_quadrature_oracle(f: &HermiteSpectrum, g: &HermiteSpectrum) -> Result<HermiteSpectrum, OracleError> {
    gamma_quadrature_oracle_with(f, g, &OracleOptions::default())
}

/// Evaluate at `opts.nodes` and again at `opts.nodes + opts.check_increment`;
/// report non-convergence rather than return a doubtful value.
pub fn gamma_quadrature_oracle_with(
    f: &HermiteSpectrum,
    g: &HermiteSpectrum,
    opts: &OracleOptions,
) -> Result<HermiteSpectrum, OracleError> {
    for s in [f, g] {
        let degree = s.degree();
        if degree > opts.max_input_degree {
            return Err(OracleError::DegreeTooHigh {
                degree,
                limit: opts.max_input_degree,
            });
        }
    }
    let base = gamma_quadrature_fixed(f, g, opts.nodes);
    let check = gamma_quadrature_fixed(f, g, opts.nodes + opts.check_increment);
    let change = base.max_abs_diff(&check);
    if change > opts.tolerance {
        return Err(OracleError::Unconverged {
            nodes: opts.nodes,
            change,
        });
    }
    Ok(base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::{Axis, MultiIndex};

    #[test]
    fn equilibrium_is_stationary() {
        let phi0 = HermiteSpectrum::ground(4);
        let out = gamma_quadrature_oracle(&phi0, &phi0).unwrap();
        assert!(out.norm() < 1e-12);
    }

    #[test]
    fn factorized_matches_double_loop() {
        let mut f = HermiteSpectrum::zeros(4);
        f.set(MultiIndex::ZERO, Complex64::new(0.3, 0.1));
        f.set(MultiIndex::new(1, 0, 1), Complex64::new(-0.7, 0.0));
        f.set(MultiIndex::new(0, 2, 0), Complex64::new(0.2, 0.4));
        let mut g = HermiteSpectrum::zeros(4);
        g.set(MultiIndex::unit(Axis::Y), Complex64::new(1.0, -0.5));
        g.set(MultiIndex::new(1, 1, 0), Complex64::new(0.25, 0.0));
        let a = gamma_quadrature_fixed(&f, &g, 7);
        let b = gamma_quadrature_direct(&f, &g, 7);
        assert!(a.max_abs_diff(&b) < 1e-12 * (1.0 + a.norm()));
    }

    #[test]
    fn degree_guard() {
        let f = HermiteSpectrum::basis(5, MultiIndex::new(4, 0, 0));
        let g = HermiteSpectrum::ground(5);
        assert!(matches!(
            gamma_quadrature_oracle(&f, &g),
            Err(OracleError::DegreeTooHigh { degree: 4, limit: 3 })
        ));
    }

    #[test]
    fn too_few_nodes_is_reported() {
        let f = HermiteSpectrum::basis(6, MultiIndex::new(1, 1, 0));
        let g = HermiteSpectrum::basis(6, MultiIndex::new(0, 3, 0));
        let opts = OracleOptions {
            nodes: 2,
            ..OracleOptions::default()
        };
        assert!(matches!(
            gamma_quadrature_oracle_with(&f, &g, &opts),
            Err(OracleError::Unconverged { nodes: 2, .. })
        ));
    }
}
