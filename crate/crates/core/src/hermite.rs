//! Hermite function basis on `L²(ℝ³_v)` and its exact operator algebra.
//!
//! The basis `Φ_α`, `α ∈ ℕ³`, is generated from the ground state
//! `Φ₀ = μ^{1/2}` by the creation operators `a₊,ⱼ = vⱼ/2 − ∂ⱼ`, normalized so
//! that it is orthonormal. Every operator in this module acts on coefficient
//! vectors through index arithmetic only:
//!
//! * `a₊,ⱼ Φ_α = √(αⱼ+1) Φ_{α+eⱼ}`
//! * `a₋,ⱼ Φ_α = √αⱼ Φ_{α−eⱼ}`
//! * `vⱼ = a₊,ⱼ + a₋,ⱼ`, `∂ⱼ = (a₋,ⱼ − a₊,ⱼ)/2`
//! * `L_{k,j} = vⱼ∂ₖ − vₖ∂ⱼ = a₊,ⱼa₋,ₖ − a₊,ₖa₋,ⱼ`
//!
//! Spectra are truncated at a total degree `N`. Anything pushed above `N` by a
//! raising step is dropped (Galerkin projection), so compositions of `m`
//! raising steps are exact on inputs of degree `≤ N − m`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HermiteError {
    #[error("velocity axis must be 1, 2 or 3, got {0}")]
    BadAxis(usize),
    #[error("angular operator needs two distinct axes, got {0} twice")]
    DegenerateAngular(Axis),
    #[error("expected {expected} coefficients for degree cap {cap}, got {got}")]
    Length { cap: usize, expected: usize, got: usize },
}

/// A velocity axis `v₁`, `v₂` or `v₃`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Build from the 1-based axis number used in formulas.
    pub fn new(j: usize) -> Result<Self, HermiteError> {
        match j {
            1 => Ok(Axis::X),
            2 => Ok(Axis::Y),
            3 => Ok(Axis::Z),
            _ => Err(HermiteError::BadAxis(j)),
        }
    }

    /// Zero-based position, usable as an array index.
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    /// The three unordered pairs `(1,2), (1,3), (2,3)`.
    pub fn pairs() -> [(Axis, Axis); 3] {
        [(Axis::X, Axis::Y), (Axis::X, Axis::Z), (Axis::Y, Axis::Z)]
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index() + 1)
    }
}

/// Number of multi-indices with `|α| ≤ cap`, i.e. `C(cap+3, 3)`.
#[inline]
pub fn basis_len(cap: usize) -> usize {
    (cap + 1) * (cap + 2) * (cap + 3) / 6
}

/// Number of multi-indices with `|α| = n`.
#[inline]
pub fn level_len(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

/// Canonical position of the first index of level `n`.
#[inline]
pub fn level_offset(n: usize) -> usize {
    n * (n + 1) * (n + 2) / 6
}

#[inline]
fn rank_of(a: usize, b: usize, c: usize) -> usize {
    let n = a + b + c;
    // lexicographic inside the level: a ascending, then b ascending
    level_offset(n) + a * (n + 1) - a * a.saturating_sub(1) / 2 + b
}

/// Multi-index `α = (α₁, α₂, α₃)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    alpha: [usize; 3],
}

impl MultiIndex {
    pub const ZERO: MultiIndex = MultiIndex { alpha: [0; 3] };

    pub fn new(a1: usize, a2: usize, a3: usize) -> Self {
        Self { alpha: [a1, a2, a3] }
    }

    /// `e_j`
    pub fn unit(axis: Axis) -> Self {
        let mut alpha = [0; 3];
        alpha[axis.index()] = 1;
        Self { alpha }
    }

    /// `e_j + e_k` (equals `2e_j` when the axes coincide).
    pub fn pair(j: Axis, k: Axis) -> Self {
        Self::unit(j).raised(k)
    }

    pub fn components(&self) -> [usize; 3] {
        self.alpha
    }

    pub fn get(&self, axis: Axis) -> usize {
        self.alpha[axis.index()]
    }

    /// `|α|`
    pub fn level(&self) -> usize {
        self.alpha.iter().sum()
    }

    pub fn raised(mut self, axis: Axis) -> Self {
        self.alpha[axis.index()] += 1;
        self
    }

    pub fn lowered(mut self, axis: Axis) -> Option<Self> {
        let a = &mut self.alpha[axis.index()];
        if *a == 0 {
            return None;
        }
        *a -= 1;
        Some(self)
    }

    /// Position in the canonical (level-major, then lexicographic) order.
    pub fn rank(&self) -> usize {
        let [a, b, c] = self.alpha;
        rank_of(a, b, c)
    }

    pub fn from_rank(rank: usize) -> Self {
        let mut n = 0;
        while level_offset(n + 1) <= rank {
            n += 1;
        }
        let mut rest = rank - level_offset(n);
        for a in 0..=n {
            let width = n - a + 1;
            if rest < width {
                return Self::new(a, rest, n - a - rest);
            }
            rest -= width;
        }
        unreachable!("rank inside level {n} always resolves")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.alpha;
        write!(f, "({a},{b},{c})")
    }
}

/// All `α` with `|α| ≤ cap`, in canonical order.
pub fn enumerate_indices(cap: usize) -> Vec<MultiIndex> {
    let mut out = Vec::with_capacity(basis_len(cap));
    for_each_index(cap, |_, a, b, c| out.push(MultiIndex::new(a, b, c)));
    out
}

/// Visit `(rank, α₁, α₂, α₃)` for every index with `|α| ≤ cap`, in order.
#[inline]
pub(crate) fn for_each_index(cap: usize, mut visit: impl FnMut(usize, usize, usize, usize)) {
    let mut rank = 0;
    for n in 0..=cap {
        for a in 0..=n {
            for b in 0..=n - a {
                visit(rank, a, b, n - a - b);
                rank += 1;
            }
        }
    }
}

/// Coefficients of a function in the orthonormal basis `{Φ_α : |α| ≤ N}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteSpectrum {
    cap: usize,
    coeffs: Vec<Complex64>,
}

impl HermiteSpectrum {
    pub fn zeros(cap: usize) -> Self {
        Self {
            cap,
            coeffs: vec![Complex64::new(0.0, 0.0); basis_len(cap)],
        }
    }

    /// The basis element `Φ_α`; `α` must satisfy `|α| ≤ cap`.
    pub fn basis(cap: usize, alpha: MultiIndex) -> Self {
        assert!(
            alpha.level() <= cap,
            "basis index {alpha} exceeds degree cap {cap}"
        );
        let mut s = Self::zeros(cap);
        s.coeffs[alpha.rank()] = Complex64::new(1.0, 0.0);
        s
    }

    /// `Φ₀ = μ^{1/2}`
    pub fn ground(cap: usize) -> Self {
        Self::basis(cap, MultiIndex::ZERO)
    }

    pub fn from_coeffs(cap: usize, coeffs: Vec<Complex64>) -> Result<Self, HermiteError> {
        let expected = basis_len(cap);
        if coeffs.len() != expected {
            return Err(HermiteError::Length {
                cap,
                expected,
                got: coeffs.len(),
            });
        }
        Ok(Self { cap, coeffs })
    }

    pub fn from_real(cap: usize, coeffs: &[f64]) -> Result<Self, HermiteError> {
        Self::from_coeffs(cap, coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Degree cap `N`.
    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of `Φ_α`, zero when `α` lies above the cap.
    pub fn get(&self, alpha: MultiIndex) -> Complex64 {
        if alpha.level() > self.cap {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[alpha.rank()]
        }
    }

    pub fn set(&mut self, alpha: MultiIndex, value: Complex64) {
        assert!(alpha.level() <= self.cap);
        self.coeffs[alpha.rank()] = value;
    }

    /// Coefficients of level `n` as a contiguous slice.
    pub fn level(&self, n: usize) -> &[Complex64] {
        &self.coeffs[level_offset(n)..level_offset(n + 1)]
    }

    pub fn level_mut(&mut self, n: usize) -> &mut [Complex64] {
        &mut self.coeffs[level_offset(n)..level_offset(n + 1)]
    }

    /// Highest level carrying a nonzero coefficient (0 for the zero spectrum).
    pub fn degree(&self) -> usize {
        (0..=self.cap)
            .rev()
            .find(|&n| self.level(n).iter().any(|c| c.norm_sqr() > 0.0))
            .unwrap_or(0)
    }

    /// Copy into a spectrum with another cap, padding with zeros or
    /// discarding levels above the new cap.
    pub fn with_cap(&self, cap: usize) -> Self {
        let mut out = Self::zeros(cap);
        let n = out.coeffs.len().min(self.coeffs.len());
        out.coeffs[..n].copy_from_slice(&self.coeffs[..n]);
        out
    }

    /// Keep only level `n`.
    pub fn project_level(&self, n: usize) -> Self {
        let mut out = Self::zeros(self.cap);
        if n <= self.cap {
            out.level_mut(n).copy_from_slice(self.level(n));
        }
        out
    }

    /// Squared `L²` norm (Parseval).
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn conj(&self) -> Self {
        Self {
            cap: self.cap,
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    /// `self += a · other`
    pub fn axpy(&mut self, a: Complex64, other: &Self) {
        assert_eq!(self.cap, other.cap, "degree caps differ");
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *x += a * y;
        }
    }

    pub fn scale(&mut self, a: Complex64) {
        self.coeffs.iter_mut().for_each(|c| *c *= a);
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.cap, other.cap, "degree caps differ");
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Add for &HermiteSpectrum {
    type Output = HermiteSpectrum;
    fn add(self, rhs: &HermiteSpectrum) -> HermiteSpectrum {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &HermiteSpectrum {
    type Output = HermiteSpectrum;
    fn sub(self, rhs: &HermiteSpectrum) -> HermiteSpectrum {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&HermiteSpectrum> for HermiteSpectrum {
    fn add_assign(&mut self, rhs: &HermiteSpectrum) {
        assert_eq!(self.cap, rhs.cap, "degree caps differ");
        self.coeffs.iter_mut().zip(&rhs.coeffs).for_each(|(a, b)| *a += b);
    }
}

impl SubAssign<&HermiteSpectrum> for HermiteSpectrum {
    fn sub_assign(&mut self, rhs: &HermiteSpectrum) {
        assert_eq!(self.cap, rhs.cap, "degree caps differ");
        self.coeffs.iter_mut().zip(&rhs.coeffs).for_each(|(a, b)| *a -= b);
    }
}

impl Neg for &HermiteSpectrum {
    type Output = HermiteSpectrum;
    fn neg(self) -> HermiteSpectrum {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c = -*c);
        out
    }
}

impl Mul<Complex64> for &HermiteSpectrum {
    type Output = HermiteSpectrum;
    fn mul(self, a: Complex64) -> HermiteSpectrum {
        let mut out = self.clone();
        out.scale(a);
        out
    }
}

impl Mul<f64> for &HermiteSpectrum {
    type Output = HermiteSpectrum;
    fn mul(self, a: f64) -> HermiteSpectrum {
        self * Complex64::new(a, 0.0)
    }
}

/// `(s₁, s₂)_{L²} = Σ_α s₁[α]·conj(s₂[α])`
pub fn inner_product(s1: &HermiteSpectrum, s2: &HermiteSpectrum) -> Complex64 {
    assert_eq!(s1.cap, s2.cap, "degree caps differ");
    s1.coeffs
        .iter()
        .zip(&s2.coeffs)
        .map(|(a, b)| a * b.conj())
        .sum()
}

// Accumulating kernels. All of them add `coef · op(src)` into `dst`.

pub(crate) fn raise_into(axis: Axis, coef: Complex64, src: &HermiteSpectrum, dst: &mut HermiteSpectrum) {
    debug_assert_eq!(src.cap, dst.cap);
    let cap = src.cap;
    let j = axis.index();
    let s = &src.coeffs;
    let d = &mut dst.coeffs;
    for_each_index(cap.saturating_sub(1), |rank, a, b, c| {
        let x = s[rank];
        if x.re == 0.0 && x.im == 0.0 {
            return;
        }
        let mut alpha = [a, b, c];
        let factor = ((alpha[j] + 1) as f64).sqrt();
        alpha[j] += 1;
        d[rank_of(alpha[0], alpha[1], alpha[2])] += coef * x * factor;
    });
}

pub(crate) fn lower_into(axis: Axis, coef: Complex64, src: &HermiteSpectrum, dst: &mut HermiteSpectrum) {
    debug_assert_eq!(src.cap, dst.cap);
    let j = axis.index();
    let s = &src.coeffs;
    let d = &mut dst.coeffs;
    for_each_index(src.cap, |rank, a, b, c| {
        let mut alpha = [a, b, c];
        if alpha[j] == 0 {
            return;
        }
        let x = s[rank];
        let factor = (alpha[j] as f64).sqrt();
        alpha[j] -= 1;
        d[rank_of(alpha[0], alpha[1], alpha[2])] += coef * x * factor;
    });
}

/// `L_{k,j} = a₊,ⱼa₋,ₖ − a₊,ₖa₋,ⱼ`, applied without intermediates.
pub(crate) fn angular_into(k: Axis, j: Axis, coef: Complex64, src: &HermiteSpectrum, dst: &mut HermiteSpectrum) {
    debug_assert_ne!(k, j);
    debug_assert_eq!(src.cap, dst.cap);
    let (ki, ji) = (k.index(), j.index());
    let s = &src.coeffs;
    let d = &mut dst.coeffs;
    for_each_index(src.cap, |rank, a, b, c| {
        let x = s[rank];
        if x.re == 0.0 && x.im == 0.0 {
            return;
        }
        let alpha = [a, b, c];
        if alpha[ki] > 0 {
            // α → α − e_k + e_j
            let mut t = alpha;
            t[ki] -= 1;
            t[ji] += 1;
            let w = ((alpha[ki] * (alpha[ji] + 1)) as f64).sqrt();
            d[rank_of(t[0], t[1], t[2])] += coef * x * w;
        }
        if alpha[ji] > 0 {
            // α → α − e_j + e_k
            let mut t = alpha;
            t[ji] -= 1;
            t[ki] += 1;
            let w = ((alpha[ji] * (alpha[ki] + 1)) as f64).sqrt();
            d[rank_of(t[0], t[1], t[2])] -= coef * x * w;
        }
    });
}

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const HALF: Complex64 = Complex64 { re: 0.5, im: 0.0 };

/// `a₊,ⱼ s`; coefficients pushed above the cap are dropped.
pub fn raise(axis: Axis, s: &HermiteSpectrum) -> HermiteSpectrum {
    let mut out = HermiteSpectrum::zeros(s.cap);
    raise_into(axis, ONE, s, &mut out);
    out
}

/// `a₋,ⱼ s`
pub fn lower(axis: Axis, s: &HermiteSpectrum) -> HermiteSpectrum {
    let mut out = HermiteSpectrum::zeros(s.cap);
    lower_into(axis, ONE, s, &mut out);
    out
}

/// `vⱼ s = (a₊,ⱼ + a₋,ⱼ) s`
pub fn multiply_v(axis: Axis, s: &HermiteSpectrum) -> HermiteSpectrum {
    let mut out = HermiteSpectrum::zeros(s.cap);
    raise_into(axis, ONE, s, &mut out);
    lower_into(axis, ONE, s, &mut out);
    out
}

/// `∂_{vⱼ} s = (a₋,ⱼ − a₊,ⱼ) s / 2`
pub fn differentiate_v(axis: Axis, s: &HermiteSpectrum) -> HermiteSpectrum {
    let mut out = HermiteSpectrum::zeros(s.cap);
    lower_into(axis, HALF, s, &mut out);
    raise_into(axis, -HALF, s, &mut out);
    out
}

/// `L_{k,j} s = (vⱼ∂ₖ − vₖ∂ⱼ) s`. Level preserving, hence never truncated.
pub fn angular(k: Axis, j: Axis, s: &HermiteSpectrum) -> Result<HermiteSpectrum, HermiteError> {
    if k == j {
        return Err(HermiteError::DegenerateAngular(k));
    }
    let mut out = HermiteSpectrum::zeros(s.cap);
    angular_into(k, j, ONE, s, &mut out);
    Ok(out)
}

/// The number operator `Σⱼ a₊,ⱼa₋,ⱼ`, i.e. multiplication by `|α|`.
pub fn number_operator(s: &HermiteSpectrum) -> HermiteSpectrum {
    let mut out = s.clone();
    for n in 0..=s.cap {
        out.level_mut(n).iter_mut().for_each(|c| *c *= n as f64);
    }
    out
}

/// `Δ_{S²} s = ½ Σ_{j≠k} L²_{k,j} s = Σ_{k<j} L²_{k,j} s`.
pub fn sphere_laplacian(s: &HermiteSpectrum) -> HermiteSpectrum {
    let mut out = HermiteSpectrum::zeros(s.cap);
    let mut tmp = HermiteSpectrum::zeros(s.cap);
    for (k, j) in Axis::pairs() {
        tmp.coeffs.iter_mut().for_each(|c| *c = Complex64::new(0.0, 0.0));
        angular_into(k, j, ONE, s, &mut tmp);
        angular_into(k, j, ONE, &tmp, &mut out);
    }
    out
}
