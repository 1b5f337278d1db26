//! Hermite–Fourier spectral toolkit for the Landau equation with Maxwellian
//! molecules, linearized around the global Maxwellian `μ`.
//!
//! The perturbation `g`, defined by `f = μ + μ^{1/2} g`, obeys
//!
//! ```text
//! ∂_t g + v·∇_x g + L g = Γ(g, g)
//! ```
//!
//! Velocity dependence is expanded on Hermite functions `Φ_α` (exact ladder
//! algebra, see [`hermite`]); space is a periodic torus expanded in Fourier
//! modes. The crate provides
//!
//! * [`hermite`]: basis indexing and the creation/annihilation/rotation operators,
//! * [`landau`]: the linearized operator `L = L₁ + L₂` and the bilinear term `Γ`
//!   in three independent forms plus a Gauss–Hermite quadrature oracle,
//! * [`weights`]: the time-integrated Fourier weight `Ψ`, the regularized
//!   weight `F_{δ,δ′}` and brute-force checks of the inequalities around them,
//! * [`kolmogorov`]: the exact Fourier propagator of `∂_t f + v·∇_x f − Δ_v f = 0`,
//! * [`solver`]: IMEX and Picard time integration of the perturbation equation,
//! * [`diagnostics`]: spectra, decay-rate fits, verification suites and the CLI.

pub mod diagnostics;
pub mod hermite;
pub mod kolmogorov;
pub mod landau;
pub mod quad;
pub mod solver;
pub mod weights;

pub use hermite::{Axis, HermiteSpectrum, MultiIndex};
pub use num_complex::Complex64;
