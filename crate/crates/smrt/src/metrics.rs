//! Error metrics between a reconstruction and a sampled ground truth.
//!
//! All metrics run over an optional axis-aligned mask so boundary artifacts
//! (the series vanishes on ∂Ω by construction) can be excluded from scoring.

use crate::recon_fast::VolumeImage;
use crate::{Error, Result};

/// Axis-aligned box in the cube's local frame (corner at the origin), used
/// to restrict metrics to a region of interest. Bounds are inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxRegion {
    pub lo: [f64; 3],
    pub hi: [f64; 3],
}

impl BoxRegion {
    /// Whether `x` (local-frame coordinates) lies in the closed box.
    pub fn contains(&self, x: [f64; 3]) -> bool {
        (0..3).all(|i| x[i] >= self.lo[i] && x[i] <= self.hi[i])
    }
}

/// Summary of agreement between two volumes over a common mask.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    /// `‖recon − truth‖₂ / ‖truth‖₂` over the mask; 0 when both vanish.
    pub rel_l2: f64,
    /// `max |recon − truth|` over the mask.
    pub max_abs_err: f64,
    /// Worst undershoot relative to the truth's peak,
    /// `max(0, −min(recon − truth)) / max(truth)`, clamped to 1; `None`
    /// when the truth has no positive values to normalize by.
    pub trough_depth: Option<f64>,
}

/// Computes [`Metrics`] over the nodes whose positions fall inside `mask`
/// (all nodes when `mask` is `None`). Both volumes must share a grid.
pub fn compute_metrics(recon: &VolumeImage, truth: &VolumeImage, mask: Option<&BoxRegion>) -> Result<Metrics> {
    let grid = recon.grid();
    if truth.grid() != grid {
        return Err(Error::InvalidInput(format!(
            "grid mismatch: recon has n = {}, side = {}; truth has n = {}, side = {}",
            grid.n,
            grid.side,
            truth.grid().n,
            truth.grid().side
        )));
    }
    let n = grid.n;
    let mut diff2 = 0.0f64;
    let mut truth2 = 0.0f64;
    let mut max_abs = 0.0f64;
    let mut min_diff = f64::INFINITY;
    let mut truth_max = f64::NEG_INFINITY;
    let mut any = false;
    for k in 0..n {
        for j in 0..n {
            for i in 0..n {
                if let Some(region) = mask {
                    let x = [i as f64 * grid.dx, j as f64 * grid.dx, k as f64 * grid.dx];
                    if !region.contains(x) {
                        continue;
                    }
                }
                any = true;
                let t = truth.at(i, j, k);
                let d = recon.at(i, j, k) - t;
                diff2 += d * d;
                truth2 += t * t;
                max_abs = max_abs.max(d.abs());
                min_diff = min_diff.min(d);
                truth_max = truth_max.max(t);
            }
        }
    }
    if !any {
        return Err(Error::InvalidInput("mask excludes every grid node".into()));
    }
    let rel_l2 = if truth2 > 0.0 {
        (diff2 / truth2).sqrt()
    } else if diff2 > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    let trough = if truth_max > 0.0 { Some(((-min_diff).max(0.0) / truth_max).min(1.0)) } else { None };
    Ok(Metrics { rel_l2, max_abs_err: max_abs, trough_depth: trough })
}

/// Just the undershoot metric of [`compute_metrics`].
pub fn trough_depth(recon: &VolumeImage, truth: &VolumeImage, mask: Option<&BoxRegion>) -> Result<Option<f64>> {
    Ok(compute_metrics(recon, truth, mask)?.trough_depth)
}
