//! Discretization parameters, eigen-index arithmetic, and the analytic
//! kernels shared by every solver in the crate.
//!
//! The measurement domain is the cube `Ω = [0, R]³` sampled on an `n×n×n`
//! Cartesian grid. Reconstruction expands the unknown source in the
//! orthonormal Dirichlet eigenfunctions of the Laplacian on the cube,
//!
//! ```text
//! u_m(x) = (2/R)^{3/2} · sin(πm₁x₁/R) sin(πm₂x₂/R) sin(πm₃x₃/R),
//! λ_m    = (π/R)·|m|,          m = (m₁, m₂, m₃), mᵢ ≥ 1,
//! ```
//!
//! where `λ_m²` is the (positive) eigenvalue of `−Δ`. Projections are
//! sampled at radii `r_k = k·dr` up to the cube diameter `D = √3·R`; the
//! radial sample count `n1` and the padded transform length `n2` fix the
//! uniform spectral grid with cutoff `λ_nyq = π/dr`.

use crate::{Error, Result};
use std::f64::consts::PI;

/// Discretization of the cube domain and of the radial/spectral axes.
///
/// All derived quantities are computed once in [`make_grid`] so that the
/// defining identities (`dx = R/(n−1)`, `dr = D/(n1−1)`, `lambda_nyq = π/dr`)
/// hold exactly in floating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// Nodes per axis, boundary included.
    pub n: usize,
    /// Cube side length `R`.
    pub side: f64,
    /// Grid step `R/(n−1)`.
    pub dx: f64,
    /// Cube diameter `D = √3·R`, the largest distance a sphere centered on
    /// the boundary must reach.
    pub diam: f64,
    /// Radial sample count: `⌈√3(n−1)⌉ + 1`.
    pub n1: usize,
    /// Padded transform length: smallest power of two ≥ `n1`.
    pub n2: usize,
    /// Radial step `D/(n1−1)`.
    pub dr: f64,
    /// Spectral cutoff `π/dr = π(n1−1)/D`.
    pub lambda_nyq: f64,
}

impl GridSpec {
    /// Interior node count per axis, `n − 2`; detectors and eigen indices
    /// both range over `1..=nd`.
    pub fn nd(&self) -> usize {
        self.n - 2
    }

    /// Spacing of the uniform spectral grid, `lambda_nyq/(n2−1)`.
    pub fn dlambda(&self) -> f64 {
        self.lambda_nyq / (self.n2 - 1) as f64
    }

    /// The `l`-th spectral node `λ_l = l·lambda_nyq/(n2−1)`.
    pub fn lambda_l(&self, l: usize) -> f64 {
        l as f64 * self.dlambda()
    }
}

/// Builds the grid for `n` nodes per axis on a cube of side `side`.
///
/// `n1` is chosen so the radial grid, with the same order of resolution as
/// the spatial grid, reaches the diameter exactly: `(n1−1)·dr = D`. `n2`
/// pads to a power of two, which keeps `n1 ≤ n2 < 2·n1`.
pub fn make_grid(n: usize, side: f64) -> Result<GridSpec> {
    if n < 3 {
        return Err(Error::InvalidGrid(format!("n = {n} but at least 3 nodes per axis are required")));
    }
    if side <= 0.0 || !side.is_finite() {
        return Err(Error::InvalidGrid(format!("cube side must be positive and finite, got {side}")));
    }
    let sqrt3 = 3.0_f64.sqrt();
    let n1 = (sqrt3 * (n - 1) as f64).ceil() as usize + 1;
    let n2 = n1.next_power_of_two();
    let diam = sqrt3 * side;
    let dr = diam / (n1 - 1) as f64;
    Ok(GridSpec {
        n,
        side,
        dx: side / (n - 1) as f64,
        diam,
        n1,
        n2,
        dr,
        lambda_nyq: PI / dr,
    })
}

/// Index triple of a cube eigenfunction; every component is ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EigenIndex {
    pub m: [usize; 3],
}

impl EigenIndex {
    /// Validates that all components are ≥ 1.
    pub fn new(m1: usize, m2: usize, m3: usize) -> Result<Self> {
        if m1 == 0 || m2 == 0 || m3 == 0 {
            return Err(Error::InvalidIndex(format!(
                "eigen index components must be ≥ 1, got ({m1}, {m2}, {m3})"
            )));
        }
        Ok(EigenIndex { m: [m1, m2, m3] })
    }

    /// Euclidean norm `|m| = √(m₁² + m₂² + m₃²)`.
    pub fn norm(&self) -> f64 {
        let [a, b, c] = self.m;
        ((a * a + b * b + c * c) as f64).sqrt()
    }
}

/// Eigenvalue parameter `λ_m = (π/R)·|m|` of the index `m` on a cube of
/// side `side`; `λ_m²` solves the Dirichlet eigenproblem.
pub fn lambda_of_index(m: &EigenIndex, side: f64) -> f64 {
    PI * m.norm() / side
}

/// Value of the L²-normalized eigenfunction `u_m` at a point of the closed
/// cube `[0, side]³`. Vanishes on the boundary.
pub fn eigenfunction_value(m: &EigenIndex, x: [f64; 3], side: f64) -> Result<f64> {
    for xi in x {
        if !(0.0..=side).contains(&xi) {
            return Err(Error::OutsideDomain(format!(
                "point ({}, {}, {}) is outside the closed cube [0, {side}]³",
                x[0], x[1], x[2]
            )));
        }
    }
    let norm = (2.0 / side).powf(1.5);
    let mut v = norm;
    for (mi, xi) in m.m.iter().zip(&x) {
        v *= (PI * *mi as f64 * xi / side).sin();
    }
    Ok(v)
}

/// Free-space Helmholtz kernel `Φ_λ(t) = cos(λt)/(4πt)`.
///
/// `t = 0` is a pole; callers handle the `r → 0` limit of `g/r` themselves
/// (the projection of any bounded source behaves like `r²`, so the limit
/// is zero).
pub fn green_kernel(lambda: f64, t: f64) -> f64 {
    debug_assert!(t > 0.0, "green_kernel evaluated at its pole t = 0");
    (lambda * t).cos() / (4.0 * PI * t)
}

/// Spectral apodization applied to the recovered coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterSpec {
    pub kind: FilterKind,
    /// Coefficients with `λ` above the cutoff get weight 0.
    pub cutoff: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterKind {
    /// Cosine window `cos(πλ/(2·cutoff))`: 1 at λ=0, rolling off to 0 at
    /// the cutoff. Suppresses Gibbs ringing from series truncation.
    Cosine,
    /// Sharp truncation: weight 1 up to the cutoff, 0 beyond.
    None,
}

impl FilterSpec {
    pub fn cosine(cutoff: f64) -> Self {
        FilterSpec { kind: FilterKind::Cosine, cutoff }
    }

    pub fn none(cutoff: f64) -> Self {
        FilterSpec { kind: FilterKind::None, cutoff }
    }
}

/// Filter weight `η(λ) ∈ [0, 1]` for a spectral value `λ ≥ 0`.
pub fn filter_eta(lambda: f64, spec: &FilterSpec) -> f64 {
    if lambda > spec.cutoff {
        return 0.0;
    }
    match spec.kind {
        FilterKind::Cosine => (PI * lambda / (2.0 * spec.cutoff)).cos(),
        FilterKind::None => 1.0,
    }
}
