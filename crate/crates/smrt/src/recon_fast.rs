//! Five-stage fast inversion of the spherical mean data, `O(n³ log n)`.
//!
//! The source `f`, supported in the cube `[0, R]³`, is expanded in the
//! Dirichlet eigenbasis `u_m(x) = (2/R)^{3/2} ∏ sin(πmᵢxᵢ/R)` with
//! eigenvalues `λ_m = π|m|/R`. Each coefficient `α_m = ∫ u_m f dx` is
//! recoverable from boundary data through the Helmholtz representation of
//! `u_m`: integrating one projection against the free-space kernel
//! `Φ_λ(r) = cos(λr)/(4πr)` gives
//!
//! ```text
//! I(z, λ) = ∫₀^{√3·R} g(z, r) Φ_λ(r) dr,
//! ```
//!
//! and integrating `I(·, λ_m)` against the outward normal derivative of
//! `u_m` over the cube surface yields `α_m`. On the uniform grids of
//! [`GridSpec`] the whole chain becomes five fast stages:
//!
//! 1. [`radial_spectra`] — per detector, a DCT-I of `g/(4πr)` evaluates
//!    `I(z, λ_l)` on the spectral grid `λ_l = l·λ_nyq/(n2−1)` (the grids
//!    align so that `cos(λ_l r_k) = cos(πlk/(n2−1))` exactly);
//! 2. [`face_spectra`] — per face and per `λ_l`, a 2-D DST-I turns detector
//!    arrays into the face integrals `S_j(m_a, m_b; λ_l)` of `I` against
//!    the in-face sine products;
//! 3. [`interp_lambda`] — 7-point Lagrange interpolation resamples each
//!    face profile from the `λ_l` grid onto the eigenvalues `λ_m`;
//! 4. [`assemble_coefficients`] — the six face values combine with the
//!    normal-derivative signs into `α_m`, apodized by the filter;
//! 5. [`synthesize_image`] — a 3-D DST-I sums the sine series back onto
//!    the grid.
//!
//! Everything is single-threaded and evaluated in a fixed order, so runs
//! are bitwise reproducible.

use crate::domain::{filter_eta, FilterSpec, GridSpec};
use crate::forward::ProjectionSet;
use crate::transforms::SpectralPlans;
use crate::{Error, Result};
use std::time::{Duration, Instant};

/// Reconstructed (or sampled) volume on the full `n³` grid, x-fastest
/// layout, boundary layers identically 0 (the sine basis vanishes there).
#[derive(Debug, Clone, PartialEq)]
pub struct VolumeImage {
    grid: GridSpec,
    values: Vec<f64>,
}

impl VolumeImage {
    pub fn zeros(grid: GridSpec) -> VolumeImage {
        VolumeImage { grid, values: vec![0.0; grid.n * grid.n * grid.n] }
    }

    /// Wraps a full `n³` array; rejects wrong length, non-finite entries,
    /// and nonzero boundary values.
    pub fn from_values(grid: GridSpec, values: Vec<f64>) -> Result<VolumeImage> {
        let n = grid.n;
        if values.len() != n * n * n {
            return Err(Error::InvalidInput(format!("volume needs {}³ = {} values, got {}", n, n * n * n, values.len())));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("volume values"));
        }
        for k in 0..n {
            for j in 0..n {
                for i in 0..n {
                    let boundary = i == 0 || j == 0 || k == 0 || i == n - 1 || j == n - 1 || k == n - 1;
                    if boundary && values[i + n * (j + n * k)] != 0.0 {
                        return Err(Error::InvalidInput(format!("boundary node ({i},{j},{k}) must be 0")));
                    }
                }
            }
        }
        Ok(VolumeImage { grid, values })
    }

    /// Builds a volume from its `(n−2)³` interior values (x-fastest),
    /// padding the boundary with zeros.
    pub fn from_interior(grid: GridSpec, interior: Vec<f64>) -> Result<VolumeImage> {
        let n = grid.n;
        let nd = grid.nd();
        if interior.len() != nd * nd * nd {
            return Err(Error::InvalidInput(format!("interior needs {}³ = {} values, got {}", nd, nd * nd * nd, interior.len())));
        }
        if interior.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("interior values"));
        }
        let mut values = vec![0.0; n * n * n];
        for k in 0..nd {
            for j in 0..nd {
                let src = nd * (j + nd * k);
                let dst = 1 + n * ((j + 1) + n * (k + 1));
                values[dst..dst + nd].copy_from_slice(&interior[src..src + nd]);
            }
        }
        Ok(VolumeImage { grid, values })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Node value at grid indices `(i, j, k)`, i.e. `x = (i, j, k)·dx`.
    pub fn at(&self, i: usize, j: usize, k: usize) -> f64 {
        let n = self.grid.n;
        self.values[i + n * (j + n * k)]
    }
}

/// Whether a [`SpectralFaceData`] still holds per-detector values (stage A)
/// or in-face sine coefficients (stage B).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralKind {
    /// `I(z, λ_l)` indexed by detector `(p, q)`.
    Detector,
    /// `S_j(m_a, m_b; λ_l)` indexed by in-face mode.
    Mode,
}

/// Spectral data over the six faces: for each face, `(n−2)²` profiles of
/// `n2` values, profile-major (`λ` index fastest). Keeping each profile
/// contiguous makes the stage-4 gather — a 7-tap stencil in `λ` at a fixed
/// in-face position — a one-or-two cache-line read, which dominates the
/// assembly cost at large `n`.
#[derive(Debug, Clone)]
pub struct SpectralFaceData {
    grid: GridSpec,
    kind: SpectralKind,
    lambdas: Vec<f64>,
    faces: Vec<Vec<f64>>,
}

impl SpectralFaceData {
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn kind(&self) -> SpectralKind {
        self.kind
    }

    /// The spectral nodes `λ_l = l·λ_nyq/(n2−1)`.
    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    /// The profile over all `λ_l` at flat in-face index `d` of face `j`
    /// (1..=6). In stage A `d` is the detector index `(p−1)(n−2)+(q−1)`;
    /// in stage B it is the mode index `(m_a−1)(n−2)+(m_b−1)`. This is
    /// exactly the array [`interp_lambda`] consumes.
    pub fn profile(&self, j: usize, d: usize) -> &[f64] {
        let nd2 = self.grid.nd() * self.grid.nd();
        assert!((1..=6).contains(&j) && d < nd2);
        let n2 = self.grid.n2;
        &self.faces[j - 1][d * n2..(d + 1) * n2]
    }

    /// Plane `l` of face `j` (1..=6), gathered across all `(n−2)²` in-face
    /// positions (diagnostic accessor; the hot paths walk profiles).
    pub fn plane(&self, j: usize, l: usize) -> Vec<f64> {
        assert!((1..=6).contains(&j) && l < self.grid.n2);
        let nd2 = self.grid.nd() * self.grid.nd();
        let n2 = self.grid.n2;
        (0..nd2).map(|d| self.faces[j - 1][d * n2 + l]).collect()
    }

    /// The λ profile of face `j` at in-face indices `(a, b)` (each 1..=n−2).
    pub fn mode_profile(&self, j: usize, a: usize, b: usize) -> Vec<f64> {
        let nd = self.grid.nd();
        assert!(a >= 1 && a <= nd && b >= 1 && b <= nd);
        self.profile(j, (a - 1) * nd + (b - 1)).to_vec()
    }

    #[cfg(test)]
    pub(crate) fn from_parts(grid: GridSpec, kind: SpectralKind, faces: Vec<Vec<f64>>) -> SpectralFaceData {
        let lambdas = (0..grid.n2).map(|l| grid.lambda_l(l)).collect();
        SpectralFaceData { grid, kind, lambdas, faces }
    }
}

/// Stage 1: per detector, evaluate `I(z, λ_l)` for all `l` by a DCT-I.
///
/// The integrand samples are `c_k = g(z, r_k)/(4π r_k)` for `k ≥ 1` and
/// `c_0 = 0` (the exact `r → 0` limit, since `g = O(r²)`), zero-padded to
/// length `n2`; the transform output times `dr` is the trapezoid quadrature
/// of `g·Φ_λ` because the padded endpoint samples vanish — except when
/// `n1 = n2`, where the last data sample genuinely sits at the transform
/// endpoint and carries the trapezoid half-weight.
pub fn radial_spectra(proj: &ProjectionSet) -> Result<SpectralFaceData> {
    let grid = *proj.grid();
    let nd = grid.nd();
    let nd2 = nd * nd;
    let (n1, n2, dr) = (grid.n1, grid.n2, grid.dr);
    let inv4pi = 1.0 / (4.0 * std::f64::consts::PI);
    let mut plans = SpectralPlans::new();
    let mut faces: Vec<Vec<f64>> = (0..6).map(|_| vec![0.0; nd2 * n2]).collect();
    // The transform output is the detector's λ profile, which is exactly
    // one row of the profile-major layout, so detector pairs stream
    // straight into place through the packed transform.
    let mut pad_a = vec![0.0; n2];
    let mut pad_b = vec![0.0; n2];
    let fill = |pad: &mut [f64], g: &[f64]| {
        pad[0] = 0.0;
        for k in 1..n1 {
            pad[k] = g[k] * inv4pi / (k as f64 * dr);
        }
        for v in pad[n1..].iter_mut() {
            *v = 0.0;
        }
    };
    for j in 1..=6 {
        let data = proj.face(j);
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("projection data"));
        }
        let out = &mut faces[j - 1];
        let mut d = 0;
        while d + 1 < nd2 {
            fill(&mut pad_a, &data[d * n1..(d + 1) * n1]);
            fill(&mut pad_b, &data[(d + 1) * n1..(d + 2) * n1]);
            let (row_a, row_b) = out[d * n2..(d + 2) * n2].split_at_mut(n2);
            plans.dct1_pair_into(&pad_a, &pad_b, row_a, row_b);
            d += 2;
        }
        if d < nd2 {
            fill(&mut pad_a, &data[d * n1..(d + 1) * n1]);
            plans.dct1_into(&pad_a, &mut out[d * n2..(d + 1) * n2]);
        }
        for v in out.iter_mut() {
            *v *= dr;
        }
    }
    let lambdas = (0..n2).map(|l| grid.lambda_l(l)).collect();
    Ok(SpectralFaceData { grid, kind: SpectralKind::Detector, lambdas, faces })
}

/// Stage 2: per face and per `λ` plane, replace the detector array of
/// `I(·, λ_l)` by its in-face sine coefficients
/// `S_j(m_a, m_b; λ_l) = dx² · Σ_{p,q} I(z_{pq}, λ_l) sin(πm_a p/(n−1)) sin(πm_b q/(n−1))`,
/// computed as a 2-D DST-I times `dx²` (the surface quadrature weight; the
/// integrand vanishes on the face edges, so interior nodes carry full
/// weight).
pub fn face_spectra(mut spectra: SpectralFaceData) -> Result<SpectralFaceData> {
    if spectra.kind != SpectralKind::Detector {
        return Err(Error::InvalidInput("face_spectra expects stage-A (detector) data".into()));
    }
    let grid = spectra.grid;
    let nd = grid.nd();
    let nd2 = nd * nd;
    let n2 = grid.n2;
    let w = grid.dx * grid.dx;
    let mut plans = SpectralPlans::new();
    // λ planes are processed in bundles of up to 8: one bundle of adjacent
    // profile entries shares a cache line, so the block gather/scatter and
    // the in-block line gathers all run at full cache-line utilization,
    // and adjacent planes pair up for the packed transform.
    const BUNDLE: usize = 8;
    let mut block = vec![0.0; nd2 * BUNDLE];
    let mut in_a = vec![0.0; nd];
    let mut in_b = vec![0.0; nd];
    let mut out_a = vec![0.0; nd];
    let mut out_b = vec![0.0; nd];
    for face in &mut spectra.faces {
        let mut l0 = 0;
        while l0 < n2 {
            let bs = BUNDLE.min(n2 - l0);
            for d in 0..nd2 {
                block[d * bs..(d + 1) * bs].copy_from_slice(&face[d * n2 + l0..d * n2 + l0 + bs]);
            }
            // Axis q (flat index d = p·nd + q): lines at stride bs.
            for p in 0..nd {
                let row = p * nd * bs;
                transform_block_lines(&mut plans, &mut block[row..row + nd * bs], nd, bs, &mut in_a, &mut in_b, &mut out_a, &mut out_b);
            }
            // Axis p: lines at stride nd·bs, one per (q, plane) pair.
            for q in 0..nd {
                let col = q * bs;
                transform_strided_lines(&mut plans, &mut block, nd, nd * bs, col, bs, &mut in_a, &mut in_b, &mut out_a, &mut out_b);
            }
            for d in 0..nd2 {
                for (slot, v) in face[d * n2 + l0..d * n2 + l0 + bs].iter_mut().zip(&block[d * bs..(d + 1) * bs]) {
                    *slot = v * w;
                }
            }
            l0 += bs;
        }
    }
    spectra.kind = SpectralKind::Mode;
    Ok(spectra)
}

/// DST-I over lines `x ↦ block[x·stride + b]` for `b` in `0..count`,
/// pairing adjacent `b` for the packed transform.
#[allow(clippy::too_many_arguments)]
fn transform_block_lines(
    plans: &mut SpectralPlans,
    block: &mut [f64],
    n: usize,
    count: usize,
    in_a: &mut [f64],
    in_b: &mut [f64],
    out_a: &mut [f64],
    out_b: &mut [f64],
) {
    transform_strided_lines(plans, block, n, count, 0, count, in_a, in_b, out_a, out_b);
}

/// DST-I over `count` lines `x ↦ block[base + x·stride + b]`, `b` in
/// `0..count`, pairing adjacent lines so two 8-byte neighbours ride one
/// packed transform and one set of cache lines.
#[allow(clippy::too_many_arguments)]
fn transform_strided_lines(
    plans: &mut SpectralPlans,
    block: &mut [f64],
    n: usize,
    stride: usize,
    base: usize,
    count: usize,
    in_a: &mut [f64],
    in_b: &mut [f64],
    out_a: &mut [f64],
    out_b: &mut [f64],
) {
    let mut b = 0;
    while b + 1 < count {
        for x in 0..n {
            let at = base + x * stride + b;
            in_a[x] = block[at];
            in_b[x] = block[at + 1];
        }
        plans.dst1_pair_into(in_a, in_b, out_a, out_b);
        for x in 0..n {
            let at = base + x * stride + b;
            block[at] = out_a[x];
            block[at + 1] = out_b[x];
        }
        b += 2;
    }
    if b < count {
        for x in 0..n {
            in_a[x] = block[base + x * stride + b];
        }
        plans.dst1_into(in_a, out_a);
        for x in 0..n {
            block[base + x * stride + b] = out_a[x];
        }
    }
}

/// Lagrange weights for a 7-node stencil `{0..6}` evaluated at `t`.
fn lagrange7(t: f64) -> [f64; 7] {
    // ∏_{j≠i}(i−j) for i = 0..6.
    const DENOM: [f64; 7] = [720.0, -120.0, 48.0, -36.0, 48.0, -120.0, 720.0];
    let mut pre = [1.0; 7];
    for i in 1..7 {
        pre[i] = pre[i - 1] * (t - (i - 1) as f64);
    }
    let mut suf = [1.0; 7];
    for i in (0..6).rev() {
        suf[i] = suf[i + 1] * (t - (i + 1) as f64);
    }
    let mut w = [0.0; 7];
    for i in 0..7 {
        w[i] = pre[i] * suf[i] / DENOM[i];
    }
    w
}

/// Stencil start and local coordinate for interpolation at `λ`: the 7-node
/// window nearest `u = λ/Δλ`, clamped to the grid (one-sided near the ends,
/// still 6th order — no extrapolation ever occurs for `λ ≤ λ_nyq`). `u` is
/// snapped to an exact node when within 10⁻⁹ of one, so eigenvalues that
/// land on the grid analytically survive floating-point drift and hit the
/// Lagrange cardinal case.
fn stencil_at(grid: &GridSpec, target: f64) -> (usize, f64) {
    let mut u = target / grid.dlambda();
    let r = u.round();
    if (u - r).abs() < 1e-9 {
        u = r;
    }
    let start = (u.round() as isize - 3).clamp(0, grid.n2 as isize - 7) as usize;
    (start, u - start as f64)
}

/// Stage 3: resample one face profile from the `λ_l` grid onto an arbitrary
/// `λ ∈ [0, λ_nyq]` by 7-point Lagrange interpolation (exact for
/// polynomials of degree ≤ 6 on the stencil).
///
/// # Errors
/// `LambdaRange` if `target` lies outside `[0, λ_nyq]`; `InvalidInput` if
/// `face_values` does not hold one value per spectral node.
pub fn interp_lambda(face_values: &[f64], grid: &GridSpec, target: f64) -> Result<f64> {
    if face_values.len() != grid.n2 {
        return Err(Error::InvalidInput(format!("expected {} spectral values, got {}", grid.n2, face_values.len())));
    }
    if !target.is_finite() || target < 0.0 || target > grid.lambda_nyq {
        return Err(Error::LambdaRange(format!("target {target} outside [0, {}]", grid.lambda_nyq)));
    }
    let (start, t) = stencil_at(grid, target);
    let w = lagrange7(t);
    let mut acc = 0.0;
    for i in 0..7 {
        acc += w[i] * face_values[start + i];
    }
    Ok(acc)
}

/// Filtered eigenfunction coefficients, `(n−2)³` values with `m₁` fastest;
/// entries with `λ_m > λ_nyq` are exactly 0.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVolume {
    grid: GridSpec,
    alpha: Vec<f64>,
}

impl CoefficientVolume {
    /// Wraps an `(n−2)³` coefficient array, enforcing the spectral cutoff
    /// invariant.
    pub fn from_alpha(grid: GridSpec, alpha: Vec<f64>) -> Result<CoefficientVolume> {
        let nd = grid.nd();
        if alpha.len() != nd * nd * nd {
            return Err(Error::InvalidInput(format!("coefficients need {}³ = {} values, got {}", nd, nd * nd * nd, alpha.len())));
        }
        if alpha.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("coefficient values"));
        }
        // Same floating-point expression as assemble_coefficients, so the
        // two paths agree even for modes exactly on the cutoff.
        for m3 in 1..=nd {
            for m2 in 1..=nd {
                for m1 in 1..=nd {
                    let lambda = std::f64::consts::PI * ((m1 * m1 + m2 * m2 + m3 * m3) as f64).sqrt() / grid.side;
                    if lambda > grid.lambda_nyq && alpha[(m1 - 1) + nd * ((m2 - 1) + nd * (m3 - 1))] != 0.0 {
                        return Err(Error::LambdaRange(format!("coefficient ({m1},{m2},{m3}) lies above the spectral cutoff and must be 0")));
                    }
                }
            }
        }
        Ok(CoefficientVolume { grid, alpha })
    }

    /// Internal constructor for reconstruction paths whose coefficients are
    /// zeroed above the cutoff by construction.
    pub(crate) fn from_parts_unchecked(grid: GridSpec, alpha: Vec<f64>) -> CoefficientVolume {
        debug_assert_eq!(alpha.len(), grid.nd().pow(3));
        CoefficientVolume { grid, alpha }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// Flat coefficient array, index `(m₁−1) + (n−2)(m₂−1) + (n−2)²(m₃−1)`.
    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    /// Coefficient at eigenfunction index `(m1, m2, m3)` (each 1..=n−2).
    pub fn value_at(&self, m1: usize, m2: usize, m3: usize) -> f64 {
        let nd = self.grid.nd();
        assert!(m1 >= 1 && m1 <= nd && m2 >= 1 && m2 <= nd && m3 >= 1 && m3 <= nd);
        self.alpha[(m1 - 1) + nd * ((m2 - 1) + nd * (m3 - 1))]
    }
}

/// Stage 4: recover every coefficient below the spectral cutoff.
///
/// For each `m` with `λ_m ≤ λ_nyq`, the six face integrals are resampled at
/// `λ_m` (7-point Lagrange, shared stencil) and combined with the outward
/// normal derivative of `u_m`, whose face traces are
/// `±(2/R)^{3/2}(πm_c/R)(−1)^{m_c}` times in-face sine products:
///
/// ```text
/// α_m = (2/R)^{3/2} (π/R) [ m₁((−1)^{m₁}T₁ − T₂) + m₂((−1)^{m₂}T₃ − T₄)
///                          + m₃((−1)^{m₃}T₅ − T₆) ],
/// ```
///
/// then apodized by `filter_eta(λ_m)`. Entries above the cutoff are 0.
pub fn assemble_coefficients(spectra: &SpectralFaceData, filter: &FilterSpec) -> Result<CoefficientVolume> {
    if spectra.kind != SpectralKind::Mode {
        return Err(Error::InvalidInput("assemble_coefficients expects stage-B (mode) data".into()));
    }
    let grid = spectra.grid;
    let nd = grid.nd();
    let n2 = grid.n2;
    let scale = (2.0 / grid.side).powf(1.5) * std::f64::consts::PI / grid.side;
    let mut alpha = vec![0.0; nd * nd * nd];
    let faces = &spectra.faces;
    for m3 in 1..=nd {
        for m2 in 1..=nd {
            // In-plane offsets that do not depend on m1.
            let p12 = (m2 - 1) * nd + (m3 - 1); // faces 1,2: modes (m2, m3)
            for m1 in 1..=nd {
                let lambda = std::f64::consts::PI * ((m1 * m1 + m2 * m2 + m3 * m3) as f64).sqrt() / grid.side;
                if lambda > grid.lambda_nyq {
                    continue; // stays exactly 0
                }
                let eta = filter_eta(lambda, filter);
                if eta == 0.0 {
                    continue;
                }
                let (start, t) = stencil_at(&grid, lambda);
                let w = lagrange7(t);
                let p34 = (m1 - 1) * nd + (m3 - 1); // faces 3,4: modes (m1, m3)
                let p56 = (m1 - 1) * nd + (m2 - 1); // faces 5,6: modes (m1, m2)
                let mut tj = [0.0; 6];
                for (f, slot) in tj.iter_mut().enumerate() {
                    let offset = [p12, p12, p34, p34, p56, p56][f];
                    let taps = &faces[f][offset * n2 + start..offset * n2 + start + 7];
                    let mut acc = 0.0;
                    for i in 0..7 {
                        acc += w[i] * taps[i];
                    }
                    *slot = acc;
                }
                let sign = |m: usize| if m.is_multiple_of(2) { 1.0 } else { -1.0 };
                let combo = m1 as f64 * (sign(m1) * tj[0] - tj[1])
                    + m2 as f64 * (sign(m2) * tj[2] - tj[3])
                    + m3 as f64 * (sign(m3) * tj[4] - tj[5]);
                alpha[(m1 - 1) + nd * ((m2 - 1) + nd * (m3 - 1))] = scale * combo * eta;
            }
        }
    }
    Ok(CoefficientVolume { grid, alpha })
}

/// Stage 5: sum the sine series on the grid — interior values are
/// `(2/R)^{3/2}` times the 3-D DST-I of the coefficients, boundary 0.
pub fn synthesize_image(coeffs: &CoefficientVolume) -> Result<VolumeImage> {
    let grid = coeffs.grid;
    let nd = grid.nd();
    let mut interior = coeffs.alpha.clone();
    let mut plans = SpectralPlans::new();
    plans.dst1_3d_inplace(&mut interior, nd);
    let norm = (2.0 / grid.side).powf(1.5);
    for v in &mut interior {
        *v *= norm;
    }
    VolumeImage::from_interior(grid, interior)
}

/// Wall-clock time of each reconstruction stage (stages 3 and 4 share one
/// pass and are reported together as `assemble`).
#[derive(Debug, Clone, Copy)]
pub struct StageTimings {
    pub radial: Duration,
    pub faces: Duration,
    pub assemble: Duration,
    pub synthesize: Duration,
}

impl StageTimings {
    pub fn total(&self) -> Duration {
        self.radial + self.faces + self.assemble + self.synthesize
    }
}

///// Full pipeline: projections → filtered coefficients → image.
pub fn reconstruct_fast(proj: &ProjectionSet, filter: &FilterSpec) -> Result<VolumeImage> {
    reconstruct_fast_timed(proj, filter).map(|(vol, _)| vol)
}

/// [`reconstruct_fast`] with per-stage wall-clock timings (for `bench`).
pub fn reconstruct_fast_timed(proj: &ProjectionSet, filter: &FilterSpec) -> Result<(VolumeImage, StageTimings)> {
    let t0 = Instant::now();
    let spectra = radial_spectra(proj)?;
    let t1 = Instant::now();
    let spectra = face_spectra(spectra)?;
    let t2 = Instant::now();
    let coeffs = assemble_coefficients(&spectra, filter)?;
    let t3 = Instant::now();
    let vol = synthesize_image(&coeffs)?;
    let t4 = Instant::now();
    let timings = StageTimings {
        radial: t1 - t0,
        faces: t2 - t1,
        assemble: t3 - t2,
        synthesize: t4 - t3,
    };
    Ok((vol, timings))
}
