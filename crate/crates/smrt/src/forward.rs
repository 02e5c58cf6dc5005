//! Analytic forward model: spherical mean projections of ball phantoms and
//! smooth radial bumps, grid rasterization, and calibrated noise injection.
//!
//! A detector at `z` on the cube surface measures
//!
//! ```text
//! g(z, r) = ∫_{S²} f(z + r·t̂) r² ds(t̂),
//! ```
//!
//! the unnormalized integral of `f` over the sphere of radius `r` about `z`.
//! For a ball indicator the integrand is piecewise constant and `g` reduces
//! to a closed-form spherical cap area ([`cap_area`]); for a radial bump it
//! reduces to a 1-D integral of the profile evaluated by quadrature
//! ([`project_radial_bump`]). Both projectors are exact up to floating
//! point / quadrature of a smooth 1-D integrand — no 3-D numerics anywhere.
//!
//! Projections are sampled at the interior face nodes of the measurement
//! cube (`(n−2)²` detectors per face; the sine basis vanishes on the edges,
//! so edge data would be dead weight) and at radii `r_k = k·dr`,
//! `k = 0..n1−1`. The `k = 0` sample is always 0 and exists to align the
//! radial grid with the cosine-transform indexing of the inversion.
//!
//! Sources may lie outside the measurement cube: `cube_origin` places the
//! cube anywhere relative to the phantom, and spheres reaching past the
//! cube still see exterior balls. The inversion remains exact inside the
//! cube in that regime, which is exercised by the exterior-source tests.

use crate::domain::GridSpec;
use crate::recon_fast::VolumeImage;
use crate::{Error, Result};
use rand::SeedableRng;
use rand_distr::Distribution;

/// One spherical inclusion: indicator of `|x − center| < radius`, scaled by
/// `amplitude` (which may be negative).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ball {
    pub center: [f64; 3],
    pub radius: f64,
    pub amplitude: f64,
}

/// A sum of weighted ball indicators; the standard source model.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Phantom {
    pub balls: Vec<Ball>,
}

impl Phantom {
    /// Validating constructor; an empty list (the zero function) is legal.
    pub fn new(balls: Vec<Ball>) -> Result<Self> {
        let p = Phantom { balls };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, b) in self.balls.iter().enumerate() {
            if b.radius <= 0.0 || !b.radius.is_finite() {
                return Err(Error::InvalidInput(format!("ball {i}: radius must be positive and finite, got {}", b.radius)));
            }
            if !b.amplitude.is_finite() || b.center.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidInput(format!("ball {i}: non-finite center or amplitude")));
            }
        }
        Ok(())
    }

    /// The toolkit's standard test pattern: eight unit-amplitude balls with
    /// radii from 0.06 to 0.13, centered on a ring of radius 0.28 about
    /// (0.5, 0.5) in the plane x₃ = 0.5 of the unit cube. Radii alternate
    /// large/small around the ring so neighbouring balls never overlap —
    /// every adjacent radii sum is ≤ 0.20, below the ring chord
    /// 2·0.28·sin(π/8) ≈ 0.214 — and the whole pattern stays inside the
    /// unit cube (max extent 0.5 + 0.28 + 0.13 = 0.91).
    pub fn eight_ball_ring() -> Phantom {
        let radii = [0.06, 0.13, 0.07, 0.12, 0.08, 0.11, 0.09, 0.10];
        let balls = radii
            .iter()
            .enumerate()
            .map(|(i, &radius)| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / 8.0;
                Ball {
                    center: [0.5 + 0.28 * t.cos(), 0.5 + 0.28 * t.sin(), 0.5],
                    radius,
                    amplitude: 1.0,
                }
            })
            .collect();
        Phantom { balls }
    }

    /// True when every ball is contained in the closed cube
    /// `[origin, origin + side]³` (support inside the measurement region).
    pub fn contained_in_cube(&self, origin: [f64; 3], side: f64) -> bool {
        self.balls.iter().all(|b| {
            (0..3).all(|i| b.center[i] - b.radius >= origin[i] && b.center[i] + b.radius <= origin[i] + side)
        })
    }
}

/// A compactly supported radial C^∞ bump:
/// `amplitude · exp(1 − 1/(1 − (|x−center|/radius)²))` inside its ball,
/// 0 outside. Used by the convergence and oracle tests, which need a smooth
/// source with super-algebraic coefficient decay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialBump {
    pub center: [f64; 3],
    pub radius: f64,
    pub amplitude: f64,
}

/// Unit-height profile `exp(1 − 1/(1 − (s/rho)²))` of the standard bump:
/// equals 1 at `s = 0` and vanishes with all derivatives at `s = rho`.
pub fn bump_profile(s: f64, rho: f64) -> f64 {
    debug_assert!(rho > 0.0);
    let u = s / rho;
    if u.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - u * u)).exp()
    }
}

/// Geometry of one cube face: which axis is frozen, at which end, and which
/// two axes parametrize the face (in increasing order — the first in-face
/// axis is the slow detector index, the second the fast one).
#[derive(Debug, Clone, Copy)]
pub(crate) struct FaceGeom {
    pub axis: usize,
    pub at_top: bool,
    pub in_axes: [usize; 2],
}

///// Faces j = 1..6 (stored 0-based): x₁=R, x₁=0, x₂=R, x₂=0, x₃=R, x₃=0.
pub(crate) const FACES: [FaceGeom; 6] = [
    FaceGeom { axis: 0, at_top: true, in_axes: [1, 2] },
    FaceGeom { axis: 0, at_top: false, in_axes: [1, 2] },
    FaceGeom { axis: 1, at_top: true, in_axes: [0, 2] },
    FaceGeom { axis: 1, at_top: false, in_axes: [0, 2] },
    FaceGeom { axis: 2, at_top: true, in_axes: [0, 1] },
    FaceGeom { axis: 2, at_top: false, in_axes: [0, 1] },
];

/// Spherical mean data on all six faces of the measurement cube.
///
/// Face block `j` (1..=6) holds `(n−2)²` detectors × `n1` radial samples,
/// radial index fastest: sample `(p, q, k)` lives at
/// `((p−1)·(n−2) + (q−1))·n1 + k`, where `p`/`q` run over the first/second
/// in-face axis (1..=n−2) and `r_k = k·dr`.
///
/// Positions are stored in cube-local coordinates; the same data inverts to
/// the same image wherever the cube sits in world space.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionSet {
    grid: GridSpec,
    faces: Vec<Vec<f64>>,
}

impl ProjectionSet {
    pub fn zeros(grid: GridSpec) -> ProjectionSet {
        let len = grid.nd() * grid.nd() * grid.n1;
        ProjectionSet { grid, faces: (0..6).map(|_| vec![0.0; len]).collect() }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// Face block for `j` in 1..=6.
    pub fn face(&self, j: usize) -> &[f64] {
        assert!((1..=6).contains(&j), "face index must be 1..=6, got {j}");
        &self.faces[j - 1]
    }

    pub fn face_mut(&mut self, j: usize) -> &mut [f64] {
        assert!((1..=6).contains(&j), "face index must be 1..=6, got {j}");
        &mut self.faces[j - 1]
    }

    /// Flat index of sample `(p, q, k)` inside a face block.
    pub fn sample_index(grid: &GridSpec, p: usize, q: usize, k: usize) -> usize {
        debug_assert!(p >= 1 && p <= grid.nd() && q >= 1 && q <= grid.nd() && k < grid.n1);
        ((p - 1) * grid.nd() + (q - 1)) * grid.n1 + k
    }

    /// Cube-local position of detector `(p, q)` on face `j`.
    pub fn detector_position(grid: &GridSpec, j: usize, p: usize, q: usize) -> [f64; 3] {
        assert!((1..=6).contains(&j), "face index must be 1..=6, got {j}");
        let f = FACES[j - 1];
        let mut z = [0.0; 3];
        z[f.axis] = if f.at_top { grid.side } else { 0.0 };
        z[f.in_axes[0]] = p as f64 * grid.dx;
        z[f.in_axes[1]] = q as f64 * grid.dx;
        z
    }

    /// Total number of detectors (6·(n−2)²).
    pub fn detector_count(&self) -> usize {
        6 * self.grid.nd() * self.grid.nd()
    }

    /// Global L² norm of the samples, √(Σ g²) over all faces.
    pub fn l2_norm(&self) -> f64 {
        self.faces.iter().flat_map(|f| f.iter()).map(|v| v * v).sum::<f64>().sqrt()
    }

    /// `self += s · other`; grids must match.
    pub fn add_scaled(&mut self, other: &ProjectionSet, s: f64) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::InvalidInput("projection grids do not match".into()));
        }
        for (a, b) in self.faces.iter_mut().zip(&other.faces) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += s * y;
            }
        }
        Ok(())
    }

    pub fn scale(&mut self, s: f64) {
        for f in &mut self.faces {
            for x in f.iter_mut() {
                *x *= s;
            }
        }
    }
}

/// Distance `|z − c|` with the three squared components summed in sorted
/// (descending) order, so geometrically equivalent configurations — axis
/// permutations and reflections — produce bitwise-identical distances and
/// hence bitwise-symmetric projections.
fn canonical_distance(z: [f64; 3], c: [f64; 3]) -> f64 {
    let mut s = [
        (z[0] - c[0]) * (z[0] - c[0]),
        (z[1] - c[1]) * (z[1] - c[1]),
        (z[2] - c[2]) * (z[2] - c[2]),
    ];
    s.sort_by(|a, b| b.partial_cmp(a).expect("squared distances are finite"));
    (s[0] + s[1] + s[2]).sqrt()
}

/// Area of the intersection of the sphere `S(z, r)` with the closed ball
/// `B(c, rho)`, where `d = |z − c|`:
///
/// - 0 when they are disjoint (`r + rho ≤ d`),
/// - `4πr²` when the sphere lies inside the ball (`d + r ≤ rho`),
/// - 0 when the ball lies strictly inside the sphere (`d + rho ≤ r`),
/// - otherwise the spherical cap `π·r·(rho² − (d−r)²)/d`.
pub fn cap_area(d: f64, r: f64, rho: f64) -> f64 {
    debug_assert!(d >= 0.0 && r > 0.0 && rho > 0.0);
    if r + rho <= d {
        return 0.0;
    }
    if d + r <= rho {
        return 4.0 * std::f64::consts::PI * r * r;
    }
    if d + rho <= r {
        return 0.0;
    }
    std::f64::consts::PI * r * (rho * rho - (d - r) * (d - r)) / d
}

/// Projects a ball phantom onto the faces of the cube
/// `[cube_origin, cube_origin + R]³`: `g(z, r_k) = Σ amplitude ·
/// cap_area(|z − c|, r_k, radius)`, exact up to floating point.
///
/// Balls may lie partly or wholly outside the cube; spheres centered on the
/// surface still intersect them and the data records those contributions.
pub fn project_phantom(phantom: &Phantom, grid: &GridSpec, cube_origin: [f64; 3]) -> Result<ProjectionSet> {
    phantom.validate()?;
    if cube_origin.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidInput("non-finite cube origin".into()));
    }
    let mut proj = ProjectionSet::zeros(*grid);
    let nd = grid.nd();
    let n1 = grid.n1;
    let dr = grid.dr;
    for ball in &phantom.balls {
        for j in 1..=6 {
            let block = proj.face_mut(j);
            for p in 1..=nd {
                for q in 1..=nd {
                    let zl = ProjectionSet::detector_position(grid, j, p, q);
                    let z = [zl[0] + cube_origin[0], zl[1] + cube_origin[1], zl[2] + cube_origin[2]];
                    let d = canonical_distance(z, ball.center);
                    let base = ((p - 1) * nd + (q - 1)) * n1;
                    // k = 0 stays 0: a sphere of radius 0 carries no area.
                    for k in 1..n1 {
                        block[base + k] += ball.amplitude * cap_area(d, k as f64 * dr, ball.radius);
                    }
                }
            }
        }
    }
    Ok(proj)
}

/// Cumulative integral table for `Ψ(t) = ∫₀ᵗ φ(s)·s ds` of the bump
/// profile, built once per projection: 3-point Gauss–Legendre per cell plus
/// a partial-cell rule at query time, accurate to ~10⁻¹² of `Ψ(rho)`.
struct BumpCumulative {
    rho: f64,
    h: f64,
    cum: Vec<f64>,
}

/// 3-point Gauss–Legendre of `φ(s)·s` over `[a, b]`.
fn gl3_profile(rho: f64, a: f64, b: f64) -> f64 {
    const X: f64 = 0.774_596_669_241_483_4; // √(3/5)
    const W0: f64 = 5.0 / 9.0;
    const W1: f64 = 8.0 / 9.0;
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f = |s: f64| bump_profile(s, rho) * s;
    half * (W0 * f(mid - half * X) + W1 * f(mid) + W0 * f(mid + half * X))
}

impl BumpCumulative {
    fn build(rho: f64) -> BumpCumulative {
        let cells = 4000;
        let h = rho / cells as f64;
        let mut cum = Vec::with_capacity(cells + 1);
        cum.push(0.0);
        let mut acc = 0.0;
        for i in 1..=cells {
            acc += gl3_profile(rho, (i - 1) as f64 * h, i as f64 * h);
            cum.push(acc);
        }
        BumpCumulative { rho, h, cum }
    }

    fn psi(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        if t >= self.rho {
            return *self.cum.last().expect("table is non-empty");
        }
        let c = ((t / self.h) as usize).min(self.cum.len() - 2);
        self.cum[c] + gl3_profile(self.rho, c as f64 * self.h, t)
    }
}

/// Projects a smooth radial bump: with `d = |z − center|` and
/// `φ` the bump profile, the spherical mean reduces to the 1-D integral
///
/// ```text
/// g(z, r) = amplitude · (2πr/d) · ∫ φ(s)·s ds  over  |r−d| ≤ s ≤ min(r+d, radius),
/// ```
///
/// (and `4πr²·φ(r)` in the degenerate case `d = 0`), evaluated from a
/// cumulative Gauss–Legendre table. The quadrature error is far below the
/// discretization error of any reconstruction that consumes the data.
pub fn project_radial_bump(bump: &RadialBump, grid: &GridSpec, cube_origin: [f64; 3]) -> Result<ProjectionSet> {
    if bump.radius <= 0.0 || !bump.radius.is_finite() {
        return Err(Error::InvalidInput(format!("bump radius must be positive and finite, got {}", bump.radius)));
    }
    if !bump.amplitude.is_finite() || bump.center.iter().any(|c| !c.is_finite()) || cube_origin.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidInput("non-finite bump parameters or cube origin".into()));
    }
    let table = BumpCumulative::build(bump.radius);
    let mut proj = ProjectionSet::zeros(*grid);
    let nd = grid.nd();
    let n1 = grid.n1;
    let dr = grid.dr;
    for j in 1..=6 {
        let block = proj.face_mut(j);
        for p in 1..=nd {
            for q in 1..=nd {
                let zl = ProjectionSet::detector_position(grid, j, p, q);
                let z = [zl[0] + cube_origin[0], zl[1] + cube_origin[1], zl[2] + cube_origin[2]];
                let d = canonical_distance(z, bump.center);
                let base = ((p - 1) * nd + (q - 1)) * n1;
                for k in 1..n1 {
                    let r = k as f64 * dr;
                    block[base + k] = if d < 1e-12 {
                        bump.amplitude * 4.0 * std::f64::consts::PI * r * r * bump_profile(r, bump.radius)
                    } else {
                        let lo = (r - d).abs();
                        let hi = (r + d).min(bump.radius);
                        if lo >= hi {
                            0.0
                        } else {
                            bump.amplitude * (2.0 * std::f64::consts::PI * r / d) * (table.psi(hi) - table.psi(lo))
                        }
                    };
                }
            }
        }
    }
    Ok(proj)
}

/// Samples a ball phantom on the cube grid (cube-local frame): node value =
/// sum of amplitudes of balls strictly containing the node. Boundary nodes
/// are fixed at 0 to match the reconstruction image space, whose sine basis
/// vanishes there.
pub fn rasterize_phantom(phantom: &Phantom, grid: &GridSpec, cube_origin: [f64; 3]) -> Result<VolumeImage> {
    phantom.validate()?;
    rasterize_with(grid, |x| {
        phantom
            .balls
            .iter()
            .filter(|b| canonical_distance(x, b.center) < b.radius)
            .map(|b| b.amplitude)
            .sum()
    }, cube_origin)
}

/// Samples a radial bump on the cube grid, boundary nodes fixed at 0.
pub fn rasterize_radial_bump(bump: &RadialBump, grid: &GridSpec, cube_origin: [f64; 3]) -> Result<VolumeImage> {
    rasterize_with(grid, |x| bump.amplitude * bump_profile(canonical_distance(x, bump.center), bump.radius), cube_origin)
}

fn rasterize_with(grid: &GridSpec, f: impl Fn([f64; 3]) -> f64, cube_origin: [f64; 3]) -> Result<VolumeImage> {
    let n = grid.n;
    let mut values = vec![0.0; n * n * n];
    for k in 1..n - 1 {
        for j in 1..n - 1 {
            for i in 1..n - 1 {
                let x = [
                    cube_origin[0] + i as f64 * grid.dx,
                    cube_origin[1] + j as f64 * grid.dx,
                    cube_origin[2] + k as f64 * grid.dx,
                ];
                values[i + n * (j + n * k)] = f(x);
            }
        }
    }
    VolumeImage::from_values(*grid, values)
}

/// Adds i.i.d. zero-mean Gaussian noise to every informative sample
/// (`k ≥ 1`; the `r = 0` samples stay exactly 0), rescaled so the global L²
/// norm of the added noise equals `level · ‖g‖₂` exactly. Deterministic for
/// a fixed seed: the generator is ChaCha12 and samples are drawn in face,
/// detector, radial order.
pub fn add_noise(proj: &ProjectionSet, level: f64, seed: u64) -> Result<ProjectionSet> {
    if level < 0.0 || !level.is_finite() {
        return Err(Error::InvalidInput(format!("noise level must be finite and ≥ 0, got {level}")));
    }
    let mut out = proj.clone();
    if level == 0.0 {
        return Ok(out);
    }
    let grid = *proj.grid();
    let n1 = grid.n1;
    let per_face = grid.nd() * grid.nd() * n1;
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let normal = rand_distr::StandardNormal;
    let mut draws: Vec<Vec<f64>> = Vec::with_capacity(6);
    let mut noise_sq = 0.0;
    for _ in 0..6 {
        let mut e = vec![0.0; per_face];
        for d in 0..per_face / n1 {
            for k in 1..n1 {
                let v: f64 = normal.sample(&mut rng);
                e[d * n1 + k] = v;
                noise_sq += v * v;
            }
        }
        draws.push(e);
    }
    let scale = if noise_sq > 0.0 { level * proj.l2_norm() / noise_sq.sqrt() } else { 0.0 };
    for j in 1..=6 {
        let block = out.face_mut(j);
        for (x, e) in block.iter_mut().zip(&draws[j - 1]) {
            *x += scale * e;
        }
    }
    Ok(out)
}
