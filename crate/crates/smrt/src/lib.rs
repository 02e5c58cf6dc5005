//! Inversion of the spherical mean Radon transform with detectors on the
//! surface of a cube.
//!
//! A function `f` supported inside the cube `[0, R]³` is observed through
//! its spherical means: for every detector position `z` on the cube surface
//! and every radius `r > 0` the data is
//!
//! ```text
//! g(z, r) = ∫_{S²} f(z + r·t̂) r² ds(t̂),
//! ```
//!
//! the integral of `f` over the sphere of radius `r` about `z` (surface
//! measure, not averaged: integrating `g` over `r` recovers `∫ f dx`).
//! This is the acquisition geometry of photo/thermoacoustic tomography with
//! a cubic detection surface.
//!
//! The crate provides:
//!
//! - [`forward`]: analytic projection of ball phantoms and smooth radial
//!   bumps onto detector data, plus rasterization and noise,
//! - [`recon_fast`]: a five-stage `O(n³ log n)` inversion built on type-I
//!   fast cosine/sine transforms and a spectral interpolation step,
//! - [`recon_reference`]: a direct-quadrature oracle for the same series
//!   solution, used for validation at small sizes,
//! - [`metrics`]: error norms and an artifact-depth measure,
//! - [`io`]: binary volume/projection formats and text phantom/config
//!   parsing for the `smrt` command-line tool.
//!
//! The inversion expands `f` in the Dirichlet–Laplacian eigenbasis of the
//! cube, `u_m(x) = (2/R)^{3/2} ∏ᵢ sin(πmᵢxᵢ/R)`, and recovers each
//! coefficient from the data by integrating `g` against the free-space
//! kernel `cos(λt)/(4πt)` at the eigenvalue `λ_m = π|m|/R` — see
//! [`recon_fast`] for how that reduction becomes five FFT-shaped stages.

pub mod domain;
pub mod forward;
pub mod io;
pub mod metrics;
pub mod recon_fast;
pub mod recon_reference;
pub mod transforms;

pub use domain::{
    eigenfunction_value, filter_eta, green_kernel, lambda_of_index, make_grid, EigenIndex,
    FilterKind, FilterSpec, GridSpec,
};
pub use forward::{
    add_noise, bump_profile, project_phantom, project_radial_bump, rasterize_phantom,
    rasterize_radial_bump, Ball, Phantom, ProjectionSet, RadialBump,
};
pub use metrics::{compute_metrics, trough_depth, BoxRegion, Metrics};
pub use recon_fast::{
    assemble_coefficients, face_spectra, interp_lambda, radial_spectra, reconstruct_fast,
    reconstruct_fast_timed, synthesize_image, CoefficientVolume, SpectralFaceData, StageTimings,
    VolumeImage,
};
pub use recon_reference::{
    coefficient_direct, coefficient_oracle, radial_spectrum_at, reconstruct_reference,
    reconstruct_reference_forced,
};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Grid construction was asked for an unusable size or side length.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    /// An eigenfunction index had a zero component.
    #[error("invalid eigenfunction index: {0}")]
    InvalidIndex(String),
    /// A point lay outside the closed cube `[0, R]³`.
    #[error("point outside the cube domain: {0}")]
    OutsideDomain(String),
    /// An input array contained NaN or ±∞.
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    /// A spectral parameter fell outside the resolvable band.
    #[error("lambda out of range: {0}")]
    LambdaRange(String),
    /// The direct-quadrature reference was asked for a grid it cannot
    /// finish in reasonable time (pass `force` to override).
    #[error("reference reconstruction refused: {0}")]
    ReferenceTooLarge(String),
    /// Mismatched lengths, malformed text, or other caller errors.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A binary stream did not match the expected format.
    #[error("format error at byte {offset}: {message}")]
    Format { offset: u64, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
