//! Slow, transform-free reference implementation of the series inversion.
//!
//! This module evaluates the same chain as [`crate::recon_fast`] — kernel
//! integrals `I(z, λ)`, face integrals against the normal derivative of the
//! eigenfunctions, sine-series synthesis — but by direct quadrature at
//! exact eigenvalues, with no spectral grid and no interpolation. It is the
//! correctness oracle for the fast pipeline: the two paths share their
//! quadrature rules exactly, so any disagreement isolates the fast path's
//! Lagrange resampling step.
//!
//! Complexity is `O(n³)` per coefficient and `O(n⁶)` for a full
//! reconstruction (grouped by distinct eigenvalues to make small cases
//! comfortable); [`reconstruct_reference`] therefore refuses grids beyond
//! `n = 65` unless forced.

use crate::domain::{filter_eta, lambda_of_index, EigenIndex, FilterSpec, GridSpec};
use crate::forward::{ProjectionSet, FACES};
use crate::recon_fast::{synthesize_image, CoefficientVolume, VolumeImage};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Kernel integral `I(z, λ) = ∫ g(z, r)·cos(λr)/(4πr) dr` for one
/// detector's radial samples, by trapezoid quadrature at an arbitrary
/// `λ ≥ 0` (no grid restriction, no interpolation).
///
/// Quadrature convention (shared with the fast path, which realizes it via
/// a zero-padded DCT-I): the `k = 0` term is the exact limit 0, interior
/// samples carry weight 1, and a sample carries the trapezoid half-weight
/// only when it sits at the padded endpoint `k = n2−1` (i.e. when
/// `n1 = n2`); otherwise the integrand vanishes beyond the data and the
/// padded endpoint weight falls on a zero.
pub fn radial_spectrum_at(proj_z: &[f64], grid: &GridSpec, lambda: f64) -> f64 {
    assert_eq!(proj_z.len(), grid.n1, "need one sample per radial node");
    assert!(lambda >= 0.0 && lambda.is_finite(), "lambda must be finite and ≥ 0");
    let mut acc = 0.0;
    for (k, &g) in proj_z.iter().enumerate().skip(1) {
        let r = k as f64 * grid.dr;
        let w = if k == grid.n2 - 1 { 0.5 } else { 1.0 };
        acc += w * g * (lambda * r).cos() / (4.0 * PI * r);
    }
    acc * grid.dr
}

/// Sine tables `sin(πm·p/(n−1))` for `m = 1..=m_max`, `p = 1..=n−2`.
fn sine_tables(grid: &GridSpec, m_max: usize) -> Vec<Vec<f64>> {
    let nd = grid.nd();
    (1..=m_max)
        .map(|m| (1..=nd).map(|p| (PI * (m * p) as f64 / (grid.n - 1) as f64).sin()).collect())
        .collect()
}

/// `Σ_{p,q} I[(p,q)]·sin_a[p]·sin_b[q]` over one face's detector array.
fn face_mode_sum(i_values: &[f64], sin_a: &[f64], sin_b: &[f64]) -> f64 {
    let nd = sin_a.len();
    let mut acc = 0.0;
    for p in 0..nd {
        let row = &i_values[p * nd..(p + 1) * nd];
        let mut inner = 0.0;
        for q in 0..nd {
            inner += row[q] * sin_b[q];
        }
        acc += sin_a[p] * inner;
    }
    acc
}

/// Combines the six face integrals `T_j` with the outward-normal-derivative
/// signs of `u_m` into the coefficient:
/// `(2/R)^{3/2}(π/R)·Σ_c m_c((−1)^{m_c}·T_top − T_bottom)`.
fn combine_faces(m: [usize; 3], tj: [f64; 6], side: f64) -> f64 {
    let sign = |mc: usize| if mc.is_multiple_of(2) { 1.0 } else { -1.0 };
    let combo = m[0] as f64 * (sign(m[0]) * tj[0] - tj[1])
        + m[1] as f64 * (sign(m[1]) * tj[2] - tj[3])
        + m[2] as f64 * (sign(m[2]) * tj[4] - tj[5]);
    (2.0 / side).powf(1.5) * PI / side * combo
}

/// Coefficient `α_m = ∫_{∂Ω} I(z, λ_m) ∂u_m/∂n ds(z)` by direct surface
/// quadrature: `I` via [`radial_spectrum_at`] at the exact eigenvalue,
/// the normal derivative as analytic sine products, `dx²` node weights.
/// `O(n³)` per call; no spectral cutoff is applied (values above the
/// resolvable band are meaningful only diagnostically).
pub fn coefficient_direct(proj: &ProjectionSet, m: &EigenIndex) -> f64 {
    let grid = *proj.grid();
    let nd = grid.nd();
    let n1 = grid.n1;
    let lambda = lambda_of_index(m, grid.side);
    let tables: Vec<Vec<f64>> =
        (0..3).map(|i| (1..=nd).map(|p| (PI * (m.m[i] * p) as f64 / (grid.n - 1) as f64).sin()).collect()).collect();
    let mut tj = [0.0; 6];
    for (f, slot) in tj.iter_mut().enumerate() {
        let geom = FACES[f];
        let block = proj.face(f + 1);
        let sa = &tables[geom.in_axes[0]];
        let sb = &tables[geom.in_axes[1]];
        let mut acc = 0.0;
        for p in 0..nd {
            let mut inner = 0.0;
            for q in 0..nd {
                let gz = &block[(p * nd + q) * n1..(p * nd + q + 1) * n1];
                inner += radial_spectrum_at(gz, &grid, lambda) * sb[q];
            }
            acc += sa[p] * inner;
        }
        *slot = acc * grid.dx * grid.dx;
    }
    combine_faces(m.m, tj, grid.side)
}

/// Measurement-free ground truth `α_m = ∫_Ω u_m f dx` as the interior
/// Riemann sum `dx³·Σ u_m(x_{ijk}) f(x_{ijk})` of a sampled volume.
pub fn coefficient_oracle(f_vol: &VolumeImage, m: &EigenIndex) -> f64 {
    let grid = *f_vol.grid();
    let nd = grid.nd();
    let n = grid.n;
    let tables: Vec<Vec<f64>> =
        (0..3).map(|i| (1..=nd).map(|p| (PI * (m.m[i] * p) as f64 / (n - 1) as f64).sin()).collect()).collect();
    let mut acc = 0.0;
    for k in 1..n - 1 {
        for j in 1..n - 1 {
            let sjk = tables[1][j - 1] * tables[2][k - 1];
            let mut row = 0.0;
            for i in 1..n - 1 {
                row += f_vol.at(i, j, k) * tables[0][i - 1];
            }
            acc += row * sjk;
        }
    }
    acc * (2.0 / grid.side).powf(1.5) * grid.dx.powi(3)
}

/// All filtered coefficients with `m_i ≤ m_max`, grouped by distinct
/// eigenvalue so each kernel pass over the data is shared by every index
/// with the same `|m|`. Returns the dense `(n−2)³` array (zeros elsewhere).
pub(crate) fn grouped_coefficients(proj: &ProjectionSet, filter: &FilterSpec, m_max: usize) -> Vec<f64> {
    let grid = *proj.grid();
    let nd = grid.nd();
    let n1 = grid.n1;
    let mut alpha = vec![0.0; nd * nd * nd];
    let mut groups: BTreeMap<u64, Vec<[usize; 3]>> = BTreeMap::new();
    for m3 in 1..=m_max {
        for m2 in 1..=m_max {
            for m1 in 1..=m_max {
                let norm2 = (m1 * m1 + m2 * m2 + m3 * m3) as u64;
                let lambda = PI * (norm2 as f64).sqrt() / grid.side;
                if lambda > grid.lambda_nyq || filter_eta(lambda, filter) == 0.0 {
                    continue;
                }
                groups.entry(norm2).or_default().push([m1, m2, m3]);
            }
        }
    }
    let tables = sine_tables(&grid, m_max);
    let mut i_faces: Vec<Vec<f64>> = (0..6).map(|_| vec![0.0; nd * nd]).collect();
    let mut kernel = vec![0.0; n1];
    for (&norm2, modes) in &groups {
        let lambda = PI * (norm2 as f64).sqrt() / grid.side;
        // Quadrature weights of radial_spectrum_at folded into one vector.
        for (k, slot) in kernel.iter_mut().enumerate().skip(1) {
            let r = k as f64 * grid.dr;
            let w = if k == grid.n2 - 1 { 0.5 } else { 1.0 };
            *slot = w * (lambda * r).cos() / (4.0 * PI * r) * grid.dr;
        }
        for j in 1..=6 {
            let block = proj.face(j);
            let out = &mut i_faces[j - 1];
            for (d, slot) in out.iter_mut().enumerate() {
                let gz = &block[d * n1..(d + 1) * n1];
                let mut acc = 0.0;
                for k in 1..n1 {
                    acc += gz[k] * kernel[k];
                }
                *slot = acc;
            }
        }
        for &m in modes {
            let eta = filter_eta(lambda, filter);
            let mut tj = [0.0; 6];
            for (f, slot) in tj.iter_mut().enumerate() {
                let geom = FACES[f];
                let sa = &tables[m[geom.in_axes[0]] - 1];
                let sb = &tables[m[geom.in_axes[1]] - 1];
                *slot = face_mode_sum(&i_faces[f], sa, sb) * grid.dx * grid.dx;
            }
            alpha[(m[0] - 1) + nd * ((m[1] - 1) + nd * (m[2] - 1))] = combine_faces(m, tj, grid.side) * eta;
        }
    }
    alpha
}

fn reference_inner(proj: &ProjectionSet, filter: &FilterSpec, m_max: usize) -> Result<VolumeImage> {
    let grid = proj.grid();
    if m_max == 0 || m_max > grid.nd() {
        return Err(Error::InvalidInput(format!("m_max must be in 1..={}, got {m_max}", grid.nd())));
    }
    let alpha = grouped_coefficients(proj, filter, m_max);
    let coeffs = CoefficientVolume::from_parts_unchecked(*grid, alpha);
    synthesize_image(&coeffs)
}

/// Direct-quadrature reconstruction: [`coefficient_direct`] for every
/// `m_i ≤ m_max` (grouped by eigenvalue), filtered, then summed as a sine
/// series. Intended for small grids; `O(n⁶)` overall.
///
/// # Errors
/// Refuses `n > 65` ([`Error::ReferenceTooLarge`]); use
/// [`reconstruct_reference_forced`] to override deliberately.
pub fn reconstruct_reference(proj: &ProjectionSet, filter: &FilterSpec, m_max: usize) -> Result<VolumeImage> {
    let n = proj.grid().n;
    if n > 65 {
        return Err(Error::ReferenceTooLarge(format!(
            "n = {n} exceeds the reference guard (n ≤ 65); this path is O(n⁶) — call reconstruct_reference_forced to run it anyway"
        )));
    }
    reference_inner(proj, filter, m_max)
}

/// [`reconstruct_reference`] without the grid-size guard, for callers who
/// accept the `O(n⁶)` runtime knowingly.
pub fn reconstruct_reference_forced(proj: &ProjectionSet, filter: &FilterSpec, m_max: usize) -> Result<VolumeImage> {
    reference_inner(proj, filter, m_max)
}
