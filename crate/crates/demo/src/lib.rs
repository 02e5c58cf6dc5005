//! WebAssembly bindings for the browser demo: simulate boundary data for a
//! phantom, reconstruct it, and expose slices and error metrics to a plain
//! HTML page. All computation happens in this module; the page only draws.

use smrt::{
    add_noise, compute_metrics, make_grid, project_phantom, rasterize_phantom, reconstruct_fast,
    Ball, FilterSpec, Metrics, Phantom, VolumeImage,
};
use wasm_bindgen::prelude::*;

fn js_err(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// One simulated experiment: phantom truth, reconstruction from (optionally
/// noisy) boundary data, and the error metrics between them.
#[wasm_bindgen]
pub struct DemoState {
    truth: VolumeImage,
    recon: VolumeImage,
    metrics: Metrics,
    peak: f64,
}

#[wasm_bindgen]
impl DemoState {
    /// Runs the full pipeline on an `n³` grid (`n` odd, 9..=65 keeps the
    /// demo interactive). `preset` is `"center-ball"` or `"eight-ball"`
    /// (matching the CLI names); `noise_percent` is the calibrated noise
    /// level in percent of the data norm; `seed` makes runs reproducible;
    /// `cosine_filter` toggles the spectral apodization against a plain
    /// cutoff.
    #[wasm_bindgen(constructor)]
    pub fn new(
        n: usize,
        preset: &str,
        noise_percent: f64,
        seed: u32,
        cosine_filter: bool,
    ) -> Result<DemoState, JsValue> {
        if !(9..=65).contains(&n) {
            return Err(js_err("n must lie in 9..=65"));
        }
        let phantom = match preset {
            "center-ball" => {
                Phantom::new(vec![Ball { center: [0.5, 0.5, 0.5], radius: 0.25, amplitude: 1.0 }])
                    .map_err(js_err)?
            }
            "eight-ball" => Phantom::eight_ball_ring(),
            other => {
                return Err(js_err(format!(
                    "unknown preset {other:?} (use \"center-ball\" or \"eight-ball\")"
                )))
            }
        };
        let grid = make_grid(n, 1.0).map_err(js_err)?;
        let truth = rasterize_phantom(&phantom, &grid, [0.0; 3]).map_err(js_err)?;
        let mut proj = project_phantom(&phantom, &grid, [0.0; 3]).map_err(js_err)?;
        if noise_percent > 0.0 {
            proj = add_noise(&proj, noise_percent / 100.0, seed as u64).map_err(js_err)?;
        }
        let filter = if cosine_filter {
            FilterSpec::cosine(grid.lambda_nyq)
        } else {
            FilterSpec::none(grid.lambda_nyq)
        };
        let recon = reconstruct_fast(&proj, &filter).map_err(js_err)?;
        let metrics = compute_metrics(&recon, &truth, None).map_err(js_err)?;
        let peak = truth.values().iter().cloned().fold(0.0f64, f64::max).max(1e-300);
        Ok(DemoState { truth, recon, metrics, peak })
    }

    pub fn n(&self) -> usize {
        self.truth.grid().n
    }

    /// Grayscale slice (`n²` bytes, row-major with the first remaining axis
    /// as columns) of `"truth"` or `"recon"` at `index` along `axis`
    /// (`"x"`, `"y"` or `"z"`). Values are scaled by the phantom maximum;
    /// negative overshoots clamp to black.
    pub fn slice(&self, volume: &str, axis: &str, index: usize) -> Result<Vec<u8>, JsValue> {
        let vol = match volume {
            "truth" => &self.truth,
            "recon" => &self.recon,
            other => return Err(js_err(format!("unknown volume {other:?}"))),
        };
        let n = self.n();
        if index >= n {
            return Err(js_err(format!("slice index {index} out of range (n = {n})")));
        }
        let (ca, ra) = match axis {
            "x" => (1, 2),
            "y" => (0, 2),
            "z" => (0, 1),
            other => return Err(js_err(format!("unknown axis {other:?}"))),
        };
        let mut out = Vec::with_capacity(n * n);
        for row in 0..n {
            for col in 0..n {
                let mut idx = [index; 3];
                idx[ca] = col;
                idx[ra] = row;
                let v = vol.at(idx[0], idx[1], idx[2]) / self.peak;
                out.push((v.clamp(0.0, 1.0) * 255.0).round() as u8);
            }
        }
        Ok(out)
    }

    /// Human-readable error summary of the reconstruction against the truth.
    pub fn metrics_line(&self) -> String {
        let trough = match self.metrics.trough_depth {
            Some(t) => format!("{t:.4}"),
            None => "n/a".to_string(),
        };
        format!(
            "rel L2 error {:.4}   max abs error {:.4}   trough depth {}",
            self.metrics.rel_l2, self.metrics.max_abs_err, trough
        )
    }
}
