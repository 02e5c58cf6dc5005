//! Type-I discrete cosine and sine transforms on a real FFT core.
//!
//! `dct1` is the quadrature engine of the radial stage: it computes the
//! endpoint-weighted cosine sums
//!
//! ```text
//! X_l = Σ_{k=0}^{N−1} w_k x_k cos(πlk/(N−1)),   w_0 = w_{N−1} = ½, else 1,
//! ```
//!
//! i.e. a trapezoid rule against the cosine kernel on a uniform grid.
//! `dst1` is the unnormalized sine transform
//!
//! ```text
//! X_k = Σ_{j=0}^{N−1} x_j sin(π(j+1)(k+1)/(N+1)),
//! ```
//!
//! which is its own inverse up to the scale `(N+1)/2`. All physical factors
//! (`dx²`, `dr`, eigenfunction normalization) live in the reconstruction
//! modules so these primitives stay textbook-checkable against their
//! defining sums.
//!
//! Both reduce to complex FFTs in `O(N log N)`: the DCT by even extension
//! to length `2(N−1)`, the DST by odd extension to `2(N+1)` or, when that
//! length contains a prime factor the FFT backend only handles generically,
//! by a half-length identity using an FFT of `N+1`. Hot loops batch two
//! real lines per complex transform. Plans are cached per length inside
//! [`SpectralPlans`]; the free functions plan per call.

use crate::{Error, Result};
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::Arc;

fn check_finite(x: &[f64], what: &'static str) -> Result<()> {
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite(what));
    }
    Ok(())
}

/// Endpoint-weighted DCT-I of a sequence of length ≥ 2. `O(N log N)`.
pub fn dct1(x: &[f64]) -> Result<Vec<f64>> {
    if x.len() < 2 {
        return Err(Error::InvalidInput("dct1 requires at least 2 samples".into()));
    }
    check_finite(x, "dct1 input")?;
    let mut plans = SpectralPlans::new();
    let mut out = vec![0.0; x.len()];
    plans.dct1_into(x, &mut out);
    Ok(out)
}

/// Unnormalized DST-I of a sequence of length ≥ 1. `O(N log N)`.
pub fn dst1(x: &[f64]) -> Result<Vec<f64>> {
    if x.is_empty() {
        return Err(Error::InvalidInput("dst1 requires at least 1 sample".into()));
    }
    check_finite(x, "dst1 input")?;
    let mut plans = SpectralPlans::new();
    let mut out = vec![0.0; x.len()];
    plans.dst1_into(x, &mut out);
    Ok(out)
}

/// Separable DST-I of a square `n×n` array stored row-major (first index
/// fastest). Axes are transformed in a fixed order for bitwise determinism.
pub fn dst1_2d(a: &[f64], n: usize) -> Result<Vec<f64>> {
    if a.len() != n * n {
        return Err(Error::InvalidInput(format!("dst1_2d: expected {}×{} = {} values, got {}", n, n, n * n, a.len())));
    }
    check_finite(a, "dst1_2d input")?;
    let mut plans = SpectralPlans::new();
    let mut out = a.to_vec();
    plans.dst1_2d_inplace(&mut out, n);
    Ok(out)
}

/// Separable DST-I of a cubic `n×n×n` array stored x-fastest. Axes are
/// transformed in the fixed order x, y, z.
pub fn dst1_3d(a: &[f64], n: usize) -> Result<Vec<f64>> {
    if a.len() != n * n * n {
        return Err(Error::InvalidInput(format!("dst1_3d: expected {}³ = {} values, got {}", n, n * n * n, a.len())));
    }
    check_finite(a, "dst1_3d input")?;
    let mut plans = SpectralPlans::new();
    let mut out = a.to_vec();
    plans.dst1_3d_inplace(&mut out, n);
    Ok(out)
}

/// Cached FFT plans and scratch buffers, keyed by transform length.
///
/// Not shared across threads; each worker owns one. Reusing the plans takes
/// the per-call cost from "plan + transform" to "transform" in the stages
/// that issue hundreds of thousands of 1-D transforms.
pub struct SpectralPlans {
    planner: FftPlanner<f64>,
    ffts: HashMap<usize, Arc<dyn Fft<f64>>>,
    buf: Vec<Complex<f64>>,
    scratch: Vec<Complex<f64>>,
    lines: Vec<f64>,
    sines: HashMap<usize, Arc<Vec<f64>>>,
    use_half: HashMap<usize, bool>,
}

/// Largest prime factor of `m ≥ 1` by trial division (cached per length by
/// the callers; lengths here are a few hundred at most).
fn largest_prime_factor(mut m: usize) -> usize {
    let mut largest = 1;
    let mut p = 2;
    while p * p <= m {
        while m.is_multiple_of(p) {
            largest = p;
            m /= p;
        }
        p += 1;
    }
    if m > 1 {
        largest = m;
    }
    largest
}

impl Default for SpectralPlans {
    fn default() -> Self {
        Self::new()
    }
}

impl SpectralPlans {
    pub fn new() -> Self {
        SpectralPlans {
            planner: FftPlanner::new(),
            ffts: HashMap::new(),
            buf: Vec::new(),
            scratch: Vec::new(),
            lines: Vec::new(),
            sines: HashMap::new(),
            use_half: HashMap::new(),
        }
    }

    fn fft_of_len(&mut self, m: usize) -> Arc<dyn Fft<f64>> {
        if let Some(f) = self.ffts.get(&m) {
            return f.clone();
        }
        let f = self.planner.plan_fft_forward(m);
        self.ffts.insert(m, f.clone());
        f
    }

    /// Table of `sin(πj/l)` for `j = 0..l`, shared across calls.
    fn sine_table(&mut self, l: usize) -> Arc<Vec<f64>> {
        if let Some(t) = self.sines.get(&l) {
            return t.clone();
        }
        let t: Arc<Vec<f64>> = Arc::new((0..l).map(|j| (std::f64::consts::PI * j as f64 / l as f64).sin()).collect());
        self.sines.insert(l, t.clone());
        t
    }

    /// Whether the half-length DST path pays off for logical size `n`: the
    /// odd extension needs an FFT of `2(n+1)`, which the FFT backend
    /// handles several times slower once a prime factor exceeds its
    /// specialized butterflies, while the half-length path runs an FFT of
    /// only `n+1` regardless of its factorization.
    fn half_dst_pays(&mut self, n: usize) -> bool {
        if let Some(&v) = self.use_half.get(&n) {
            return v;
        }
        let v = largest_prime_factor(2 * (n + 1)) > 31;
        self.use_half.insert(n, v);
        v
    }

    fn run_fft(&mut self, m: usize) {
        let fft = self.fft_of_len(m);
        self.scratch.resize(fft.get_inplace_scratch_len(), Complex::new(0.0, 0.0));
        fft.process_with_scratch(&mut self.buf, &mut self.scratch);
    }

    /// DCT-I via even extension: the length-2(N−1) FFT of
    /// (x₀, …, x_{N−1}, x_{N−2}, …, x₁) has real part 2·X_l.
    pub fn dct1_into(&mut self, x: &[f64], out: &mut [f64]) {
        let n = x.len();
        debug_assert!(n >= 2 && out.len() == n);
        let m = 2 * (n - 1);
        self.buf.clear();
        self.buf.resize(m, Complex::new(0.0, 0.0));
        for (k, &v) in x.iter().enumerate() {
            self.buf[k] = Complex::new(v, 0.0);
        }
        for (k, &v) in x.iter().enumerate().take(n - 1).skip(1) {
            self.buf[m - k] = Complex::new(v, 0.0);
        }
        self.run_fft(m);
        for (l, o) in out.iter_mut().enumerate() {
            *o = self.buf[l].re / 2.0;
        }
    }

    /// DST-I via odd extension: the length-2(N+1) FFT of
    /// (0, x₀, …, x_{N−1}, 0, −x_{N−1}, …, −x₀) has imaginary part −2·X_k
    /// at bin k+1.
    pub fn dst1_into(&mut self, x: &[f64], out: &mut [f64]) {
        let n = x.len();
        debug_assert!(out.len() == n);
        let m = 2 * (n + 1);
        self.buf.clear();
        self.buf.resize(m, Complex::new(0.0, 0.0));
        for (k, &v) in x.iter().enumerate() {
            self.buf[k + 1] = Complex::new(v, 0.0);
            self.buf[m - 1 - k] = Complex::new(-v, 0.0);
        }
        self.run_fft(m);
        for (k, o) in out.iter_mut().enumerate() {
            *o = -self.buf[k + 1].im / 2.0;
        }
    }

    /// DCT-I of two equal-length sequences through one complex FFT. The
    /// even extensions of `x` and `y` are packed as real and imaginary
    /// parts; both spectra are real, so they come back separated as the
    /// real and imaginary parts of the packed transform. This nearly
    /// halves the cost of the transform-bound stages.
    pub fn dct1_pair_into(&mut self, x: &[f64], y: &[f64], out_x: &mut [f64], out_y: &mut [f64]) {
        let n = x.len();
        debug_assert!(n >= 2 && y.len() == n && out_x.len() == n && out_y.len() == n);
        let m = 2 * (n - 1);
        self.buf.clear();
        self.buf.resize(m, Complex::new(0.0, 0.0));
        for k in 0..n {
            self.buf[k] = Complex::new(x[k], y[k]);
        }
        for k in 1..n - 1 {
            self.buf[m - k] = Complex::new(x[k], y[k]);
        }
        self.run_fft(m);
        for l in 0..n {
            out_x[l] = self.buf[l].re / 2.0;
            out_y[l] = self.buf[l].im / 2.0;
        }
    }

    /// DST-I of two equal-length sequences through one complex FFT,
    /// dispatching between the odd-extension and half-length realizations
    /// by transform size.
    pub fn dst1_pair_into(&mut self, x: &[f64], y: &[f64], out_x: &mut [f64], out_y: &mut [f64]) {
        let n = x.len();
        debug_assert!(y.len() == n && out_x.len() == n && out_y.len() == n);
        if self.half_dst_pays(n) {
            self.dst1_pair_half(x, y, out_x, out_y);
        } else {
            self.dst1_pair_odd(x, y, out_x, out_y);
        }
    }

    /// DST-I pair via odd extension to length `2(n+1)`. The odd extensions
    /// transform to purely imaginary spectra, so the packed transform
    /// `Z = FFT(x̃ + i·ỹ)` separates as `Im Z = spectrum of x̃` and
    /// `Re Z = −spectrum of ỹ`.
    fn dst1_pair_odd(&mut self, x: &[f64], y: &[f64], out_x: &mut [f64], out_y: &mut [f64]) {
        let n = x.len();
        let m = 2 * (n + 1);
        self.buf.clear();
        self.buf.resize(m, Complex::new(0.0, 0.0));
        for k in 0..n {
            self.buf[k + 1] = Complex::new(x[k], y[k]);
            self.buf[m - 1 - k] = Complex::new(-x[k], -y[k]);
        }
        self.run_fft(m);
        for k in 0..n {
            out_x[k] = -self.buf[k + 1].im / 2.0;
            out_y[k] = self.buf[k + 1].re / 2.0;
        }
    }

    /// DST-I pair via the half-length identity. With `L = n+1`, inputs
    /// relabeled `a_1..a_n` (and `a_0 = a_L = 0`), the auxiliary sequence
    ///
    /// ```text
    /// ỹ_j = sin(πj/L)(a_j + a_{L−j}) + ½(a_j − a_{L−j}),   j = 0..L−1,
    /// ```
    ///
    /// has the DFT `Y_m = (S_{2m+1} − S_{2m−1}) − i·S_{2m}` in terms of the
    /// sine coefficients `S_k`, so one length-`L` FFT plus an `O(n)`
    /// recursion (`S_1 = Re Y_0 / 2`, then `S_{2m+1} = S_{2m−1} + Re Y_m`)
    /// recovers the transform. Both lines ride one complex FFT and are
    /// separated by the conjugate symmetry of real-input DFTs.
    fn dst1_pair_half(&mut self, x: &[f64], y: &[f64], out_x: &mut [f64], out_y: &mut [f64]) {
        let n = x.len();
        let l = n + 1;
        let sines = self.sine_table(l);
        self.buf.clear();
        self.buf.resize(l, Complex::new(0.0, 0.0));
        for j in 1..l {
            let s = sines[j];
            let (xa, xb) = (x[j - 1], x[l - j - 1]);
            let (ya, yb) = (y[j - 1], y[l - j - 1]);
            self.buf[j] = Complex::new(s * (xa + xb) + 0.5 * (xa - xb), s * (ya + yb) + 0.5 * (ya - yb));
        }
        self.run_fft(l);
        let z0 = self.buf[0];
        out_x[0] = z0.re / 2.0;
        out_y[0] = z0.im / 2.0;
        let mut run_x = out_x[0];
        let mut run_y = out_y[0];
        for m in 1..=n / 2 {
            let zm = self.buf[m];
            let zc = self.buf[l - m];
            // Conjugate-symmetry split of the two packed real-input DFTs.
            let re_x = 0.5 * (zm.re + zc.re);
            let im_x = 0.5 * (zm.im - zc.im);
            let re_y = 0.5 * (zm.im + zc.im);
            let im_y = 0.5 * (zc.re - zm.re);
            out_x[2 * m - 1] = -im_x;
            out_y[2 * m - 1] = -im_y;
            if 2 * m < n {
                run_x += re_x;
                run_y += re_y;
                out_x[2 * m] = run_x;
                out_y[2 * m] = run_y;
            }
        }
    }

    /// In-place separable DST-I over the first two axes of an `n×n` block.
    pub fn dst1_2d_inplace(&mut self, a: &mut [f64], n: usize) {
        self.transform_axis(a, n, n * n, 1, n); // x: rows are contiguous
        self.transform_axis(a, n, n * n, n, 1); // y
    }

    /// In-place separable DST-I over all three axes of an `n³` volume.
    pub fn dst1_3d_inplace(&mut self, a: &mut [f64], n: usize) {
        self.transform_axis(a, n, n * n * n, 1, n); // x
        self.transform_axis(a, n, n * n * n, n, 1); // y (within each z-plane)
        self.transform_axis(a, n, n * n * n, n * n, 1); // z
    }

    /// Applies `dst1` along one axis of a flattened array: lines of length
    /// `n` and stride `stride`; consecutive lines advance by `line_step`
    /// within each span of `n·stride` elements. Consecutive lines are fed
    /// to the packed pair transform; their gathers share cache lines
    /// because successive starts sit adjacent in memory.
    fn transform_axis(&mut self, a: &mut [f64], n: usize, total: usize, stride: usize, line_step: usize) {
        let lines = total / n;
        let span = n * stride; // elements covered by one bundle of lines
        let bundles = total / span;
        let per_bundle = lines / bundles;
        let start_of = |line: usize| (line / per_bundle) * span + (line % per_bundle) * line_step;
        let mut scratch = std::mem::take(&mut self.lines);
        scratch.resize(4 * n, 0.0);
        let (input, output) = scratch.split_at_mut(2 * n);
        let (in_a, in_b) = input.split_at_mut(n);
        let (out_a, out_b) = output.split_at_mut(n);
        let mut l = 0;
        while l + 1 < lines {
            let s0 = start_of(l);
            let s1 = start_of(l + 1);
            for i in 0..n {
                in_a[i] = a[s0 + i * stride];
                in_b[i] = a[s1 + i * stride];
            }
            self.dst1_pair_into(in_a, in_b, out_a, out_b);
            for i in 0..n {
                a[s0 + i * stride] = out_a[i];
                a[s1 + i * stride] = out_b[i];
            }
            l += 2;
        }
        if l < lines {
            let s0 = start_of(l);
            for i in 0..n {
                in_a[i] = a[s0 + i * stride];
            }
            self.dst1_into(in_a, out_a);
            for i in 0..n {
                a[s0 + i * stride] = out_a[i];
            }
        }
        self.lines = scratch;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force reference for the endpoint-weighted cosine sum.
    fn dct1_direct(x: &[f64]) -> Vec<f64> {
        let n = x.len();
        let mut out = vec![0.0; n];
        for (l, o) in out.iter_mut().enumerate() {
            for (k, &v) in x.iter().enumerate() {
                let w = if k == 0 || k == n - 1 { 0.5 } else { 1.0 };
                *o += w * v * (std::f64::consts::PI * (l * k) as f64 / (n - 1) as f64).cos();
            }
        }
        out
    }

    /// Brute-force reference for the plain sine sum.
    fn dst1_direct(x: &[f64]) -> Vec<f64> {
        let n = x.len();
        let mut out = vec![0.0; n];
        for (k, o) in out.iter_mut().enumerate() {
            for (j, &v) in x.iter().enumerate() {
                *o += v * (std::f64::consts::PI * ((j + 1) * (k + 1)) as f64 / (n + 1) as f64).sin();
            }
        }
        out
    }

    fn lcg_vec(len: usize, seed: &mut u64) -> Vec<f64> {
        // Small deterministic generator; the values only need to be varied.
        (0..len)
            .map(|_| {
                *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (*seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
            })
            .collect()
    }

    #[test]
    fn dct1_small_closed_form() {
        // N=3, x=(0,1,0): X_l = cos(πl/2) = (1, 0, −1).
        let x = dct1(&[0.0, 1.0, 0.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14);
        assert!(x[1].abs() < 1e-14);
        assert!((x[2] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn dct1_cosine_orthogonality() {
        // A pure cosine line lands on a single bin with weight (N−1)/2.
        let n = 33;
        let l0 = 7;
        let x: Vec<f64> = (0..n).map(|k| (std::f64::consts::PI * (l0 * k) as f64 / (n - 1) as f64).cos()).collect();
        let spec = dct1(&x).unwrap();
        for (l, v) in spec.iter().enumerate() {
            let expect = if l == l0 { (n - 1) as f64 / 2.0 } else { 0.0 };
            assert!((v - expect).abs() < 1e-10, "bin {l}: {v}");
        }
    }

    #[test]
    fn dst1_small_closed_form() {
        let x = dst1(&[1.0, 0.0, 0.0]).unwrap();
        let s = |t: f64| (std::f64::consts::PI * t / 4.0).sin();
        assert!((x[0] - s(1.0)).abs() < 1e-14);
        assert!((x[1] - s(2.0)).abs() < 1e-14);
        assert!((x[2] - s(3.0)).abs() < 1e-14);
    }

    #[test]
    fn transforms_match_brute_force() {
        let mut seed = 0x5eed;
        for n in [2usize, 3, 5, 8, 17, 31, 64] {
            for _ in 0..10 {
                let x = lcg_vec(n, &mut seed);
                let fast = dct1(&x).unwrap();
                let slow = dct1_direct(&x);
                let scale = slow.iter().fold(1e-30f64, |m, v| m.max(v.abs()));
                for (a, b) in fast.iter().zip(&slow) {
                    assert!((a - b).abs() <= 1e-10 * scale);
                }
                let fast = dst1(&x).unwrap();
                let slow = dst1_direct(&x);
                let scale = slow.iter().fold(1e-30f64, |m, v| m.max(v.abs()));
                for (a, b) in fast.iter().zip(&slow) {
                    assert!((a - b).abs() <= 1e-10 * scale);
                }
            }
        }
    }

    #[test]
    fn pair_transforms_match_singles() {
        // Covers the dispatching pair entry points and both private DST
        // realizations at every size, including the half-length path with
        // odd (n=36 → L=37, n=126 → L=127) and even (n=121 → L=122)
        // FFT lengths.
        let mut seed = 42;
        let mut plans = SpectralPlans::new();
        for n in [1usize, 2, 3, 9, 33, 36, 40, 121, 126] {
            let x = lcg_vec(n, &mut seed);
            let y = lcg_vec(n, &mut seed);
            let (mut px, mut py) = (vec![0.0; n], vec![0.0; n]);
            if n >= 2 {
                plans.dct1_pair_into(&x, &y, &mut px, &mut py);
                let (sx, sy) = (dct1_direct(&x), dct1_direct(&y));
                let scale = sx.iter().chain(&sy).fold(1e-30f64, |m, v| m.max(v.abs()));
                for i in 0..n {
                    assert!((px[i] - sx[i]).abs() <= 1e-12 * scale, "dct pair x, n={n} bin {i}");
                    assert!((py[i] - sy[i]).abs() <= 1e-12 * scale, "dct pair y, n={n} bin {i}");
                }
            }
            let (sx, sy) = (dst1_direct(&x), dst1_direct(&y));
            let scale = sx.iter().chain(&sy).fold(1e-30f64, |m, v| m.max(v.abs()));
            let check = |px: &[f64], py: &[f64], label: &str| {
                for i in 0..n {
                    assert!((px[i] - sx[i]).abs() <= 1e-12 * scale, "{label} x, n={n} bin {i}");
                    assert!((py[i] - sy[i]).abs() <= 1e-12 * scale, "{label} y, n={n} bin {i}");
                }
            };
            plans.dst1_pair_into(&x, &y, &mut px, &mut py);
            check(&px, &py, "dst pair");
            plans.dst1_pair_odd(&x, &y, &mut px, &mut py);
            check(&px, &py, "dst pair (odd ext)");
            plans.dst1_pair_half(&x, &y, &mut px, &mut py);
            check(&px, &py, "dst pair (half length)");
        }
    }

    #[test]
    fn prime_factor_helper() {
        assert_eq!(largest_prime_factor(1), 1);
        assert_eq!(largest_prime_factor(2), 2);
        assert_eq!(largest_prime_factor(126), 7);
        assert_eq!(largest_prime_factor(254), 127);
        assert_eq!(largest_prime_factor(510), 17);
        assert_eq!(largest_prime_factor(127), 127);
    }

    #[test]
    fn dst1_double_application_scales() {
        // dst1 ∘ dst1 = (N+1)/2 · id; at N=3 the factor is exactly 2.
        let x = [0.3, -1.2, 0.9];
        let twice = dst1(&dst1(&x).unwrap()).unwrap();
        for (a, b) in twice.iter().zip(&x) {
            assert!((a - 2.0 * b).abs() < 1e-12);
        }
        let mut seed = 99;
        for n in [5usize, 16, 33] {
            let x = lcg_vec(n, &mut seed);
            let twice = dst1(&dst1(&x).unwrap()).unwrap();
            let factor = (n + 1) as f64 / 2.0;
            for (a, b) in twice.iter().zip(&x) {
                assert!((a - factor * b).abs() < 1e-12 * factor);
            }
        }
    }

    #[test]
    fn separable_transforms() {
        // Rank-1 input: the 2-D transform is the outer product of 1-D ones.
        let n = 6;
        let mut seed = 7;
        let u = lcg_vec(n, &mut seed);
        let v = lcg_vec(n, &mut seed);
        let mut a = vec![0.0; n * n];
        for j in 0..n {
            for i in 0..n {
                a[i + n * j] = u[i] * v[j];
            }
        }
        let t = dst1_2d(&a, n).unwrap();
        let tu = dst1(&u).unwrap();
        let tv = dst1(&v).unwrap();
        for j in 0..n {
            for i in 0..n {
                assert!((t[i + n * j] - tu[i] * tv[j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn dst3d_involution() {
        // Triple application of the 1-D involution: scale ((N+1)/2)³.
        let n = 3; // interior size of an n=5 grid
        let mut seed = 1234;
        let a = lcg_vec(n * n * n, &mut seed);
        let twice = dst1_3d(&dst1_3d(&a, n).unwrap(), n).unwrap();
        let factor = (((n + 1) as f64) / 2.0).powi(3);
        for (x, y) in twice.iter().zip(&a) {
            assert!((x - factor * y).abs() < 1e-12 * factor);
        }
    }

    #[test]
    fn dst3d_matches_direct_triple_sum() {
        let n = 4;
        let mut seed = 31;
        let a = lcg_vec(n * n * n, &mut seed);
        let fast = dst1_3d(&a, n).unwrap();
        let sin = |p: usize, q: usize| (std::f64::consts::PI * (p * q) as f64 / (n + 1) as f64).sin();
        for k in 0..n {
            for j in 0..n {
                for i in 0..n {
                    let mut s = 0.0;
                    for c in 0..n {
                        for b in 0..n {
                            for ax in 0..n {
                                s += a[ax + n * (b + n * c)] * sin(ax + 1, i + 1) * sin(b + 1, j + 1) * sin(c + 1, k + 1);
                            }
                        }
                    }
                    assert!((fast[i + n * (j + n * k)] - s).abs() < 1e-11);
                }
            }
        }
    }

    #[test]
    fn rejects_non_finite() {
        assert!(dct1(&[0.0, f64::NAN, 1.0]).is_err());
        assert!(dst1(&[f64::INFINITY]).is_err());
        assert!(dst1_2d(&[0.0; 4], 3).is_err()); // shape mismatch
    }

    #[test]
    fn zero_maps_to_zero() {
        assert!(dct1(&[0.0; 16]).unwrap().iter().all(|&v| v == 0.0));
        assert!(dst1(&[0.0; 16]).unwrap().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn linearity_and_scale() {
        let mut seed = 5;
        let x = lcg_vec(20, &mut seed);
        let y = lcg_vec(20, &mut seed);
        let sum: Vec<f64> = x.iter().zip(&y).map(|(a, b)| 2.0 * a + b).collect();
        let lhs = dst1(&sum).unwrap();
        let tx = dst1(&x).unwrap();
        let ty = dst1(&y).unwrap();
        for i in 0..20 {
            let rhs = 2.0 * tx[i] + ty[i];
            assert!((lhs[i] - rhs).abs() < 1e-12 * rhs.abs().max(1.0));
        }
    }
}
