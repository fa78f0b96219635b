//! 3-D frequency-domain kernels: forward/inverse FFT over (T, H, W) per
//! channel, the Gaussian-complement high-pass filter, high-frequency
//! extraction, and the high-frequency loss.
//!
//! Conventions: unnormalized forward transform, 1/(T*H*W) on the inverse;
//! signed normalized frequencies in [-1/2, 1/2) per axis. All numerics are
//! f64. Everything here is a pure function of its inputs.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::tensor::{Dims, LatentTensor};

/// Imaginary residue below this is numerical noise and is discarded.
const IMAG_DISCARD_TOL: f64 = 1e-9;
/// Residue at or above this signals a non-symmetric spectrum.
const IMAG_ERROR_TOL: f64 = 1e-6;

/// Complex spectrum of a latent tensor, same layout as the source.
#[derive(Debug, Clone)]
pub struct Spectrum {
    dims: Dims,
    data: Vec<Complex64>,
}

impl Spectrum {
    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn offset(&self, c: usize, ft: usize, fh: usize, fw: usize) -> usize {
        ((c * self.dims.t + ft) * self.dims.h + fh) * self.dims.w + fw
    }

    pub fn get(&self, c: usize, ft: usize, fh: usize, fw: usize) -> Complex64 {
        self.data[self.offset(c, ft, fh, fw)]
    }

    pub fn scale(&self, factor: f64) -> Spectrum {
        Spectrum {
            dims: self.dims,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    /// Sum of |F|^2 over one channel.
    pub fn channel_power(&self, c: usize) -> f64 {
        let vol = self.dims.volume();
        self.data[c * vol..(c + 1) * vol]
            .iter()
            .map(|v| v.norm_sqr())
            .sum()
    }
}

/// High-pass filter parameters: temporal and spatial cutoffs plus steepness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterParams {
    sigma_t: f64,
    sigma_s: f64,
    alpha: f64,
}

impl FilterParams {
    pub fn new(sigma_t: f64, sigma_s: f64, alpha: f64) -> Result<FilterParams> {
        if !(sigma_t > 0.0 && sigma_s > 0.0 && alpha > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "filter params must be strictly positive, got sigma_t={sigma_t} sigma_s={sigma_s} alpha={alpha}"
            )));
        }
        Ok(FilterParams {
            sigma_t,
            sigma_s,
            alpha,
        })
    }

    pub fn sigma_t(&self) -> f64 {
        self.sigma_t
    }

    pub fn sigma_s(&self) -> f64 {
        self.sigma_s
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl Default for FilterParams {
    /// Cutoffs 0.25 cycles per frame/pixel, steepness 1.
    fn default() -> FilterParams {
        FilterParams {
            sigma_t: 0.25,
            sigma_s: 0.25,
            alpha: 1.0,
        }
    }
}

/// Signed normalized frequency of bin k out of n: k/n for k < n/2,
/// (k-n)/n otherwise. Always in [-1/2, 1/2).
pub fn normalized_freq(k: usize, n: usize) -> f64 {
    if 2 * k < n {
        k as f64 / n as f64
    } else {
        (k as f64 - n as f64) / n as f64
    }
}

/// Gaussian-complement high-pass gain, 1 - exp(-a(ft^2/st^2 + (fh^2+fw^2)/ss^2)).
///
/// Zero at DC, strictly below 1 everywhere, even in each argument.
pub fn highpass_gain(f_t: f64, f_h: f64, f_w: f64, p: &FilterParams) -> f64 {
    let e = f_t * f_t / (p.sigma_t * p.sigma_t)
        + (f_h * f_h + f_w * f_w) / (p.sigma_s * p.sigma_s);
    1.0 - (-p.alpha * e).exp()
}

/// Run an FFT along one axis of a flat [T][H][W] complex volume.
fn fft_axis(
    volume: &mut [Complex64],
    fft: &std::sync::Arc<dyn rustfft::Fft<f64>>,
    lane_starts: impl Iterator<Item = usize>,
    stride: usize,
    len: usize,
    scratch: &mut Vec<Complex64>,
) {
    scratch.resize(len, Complex64::new(0.0, 0.0));
    for start in lane_starts {
        for (i, s) in scratch.iter_mut().enumerate() {
            *s = volume[start + i * stride];
        }
        fft.process(scratch);
        for (i, s) in scratch.iter().enumerate() {
            volume[start + i * stride] = *s;
        }
    }
}

fn transform_volume(volume: &mut [Complex64], dims: Dims, forward: bool) {
    let (t, h, w) = (dims.t, dims.h, dims.w);
    let mut planner = FftPlanner::new();
    let plan = |n: usize, planner: &mut FftPlanner<f64>| {
        if forward {
            planner.plan_fft_forward(n)
        } else {
            planner.plan_fft_inverse(n)
        }
    };
    let mut scratch = Vec::new();

    // Along w: contiguous lanes.
    let fft_w = plan(w, &mut planner);
    fft_axis(volume, &fft_w, (0..t * h).map(|i| i * w), 1, w, &mut scratch);

    // Along h: stride w.
    let fft_h = plan(h, &mut planner);
    let h_starts = (0..t).flat_map(move |ti| (0..w).map(move |wi| ti * h * w + wi));
    fft_axis(volume, &fft_h, h_starts, w, h, &mut scratch);

    // Along t: stride h*w.
    let fft_t = plan(t, &mut planner);
    let t_starts = (0..h * w).collect::<Vec<_>>().into_iter();
    fft_axis(volume, &fft_t, t_starts, h * w, t, &mut scratch);
}

/// Forward 3-D FFT, applied independently per channel over (T, H, W).
///
/// Unnormalized: bin (0,0,0) of each channel equals the channel sum.
pub fn fft3(z: &LatentTensor) -> Result<Spectrum> {
    let dims = z.dims();
    dims.validate()?;
    let vol = dims.volume();
    let mut data = vec![Complex64::new(0.0, 0.0); dims.len()];
    for (dst, src) in data.iter_mut().zip(z.data().iter()) {
        dst.re = *src;
    }
    for c in 0..dims.c {
        transform_volume(&mut data[c * vol..(c + 1) * vol], dims, true);
    }
    Ok(Spectrum { dims, data })
}

/// Inverse 3-D FFT with 1/(T*H*W) normalization.
///
/// The imaginary residue of the mathematical inverse must stay below 1e-9;
/// a residue at or above 1e-6 means the spectrum lost conjugate symmetry
/// and is reported as an error instead of silently producing garbage.
pub fn ifft3(s: &Spectrum) -> Result<LatentTensor> {
    let dims = s.dims;
    dims.validate()?;
    let vol = dims.volume();
    let mut work = s.data.clone();
    for c in 0..dims.c {
        transform_volume(&mut work[c * vol..(c + 1) * vol], dims, false);
    }
    let norm = 1.0 / vol as f64;
    let mut max_imag = 0.0_f64;
    let mut out = Vec::with_capacity(dims.len());
    for v in &work {
        let scaled = v * norm;
        max_imag = max_imag.max(scaled.im.abs());
        out.push(scaled.re);
    }
    if max_imag >= IMAG_ERROR_TOL {
        return Err(Error::SymmetryViolation { max_imag });
    }
    debug_assert!(max_imag < IMAG_DISCARD_TOL, "imag residue {max_imag}");
    LatentTensor::from_vec(dims, out)
}

/// Apply the high-pass gain bin-by-bin to a spectrum.
pub fn apply_highpass(s: &Spectrum, p: &FilterParams) -> Spectrum {
    let dims = s.dims;
    let mut data = s.data.clone();
    let mut idx = 0;
    for _c in 0..dims.c {
        for kt in 0..dims.t {
            let ft = normalized_freq(kt, dims.t);
            for kh in 0..dims.h {
                let fh = normalized_freq(kh, dims.h);
                for kw in 0..dims.w {
                    let fw = normalized_freq(kw, dims.w);
                    data[idx] *= highpass_gain(ft, fh, fw, p);
                    idx += 1;
                }
            }
        }
    }
    Spectrum { dims, data }
}

/// High-frequency component of a tensor: inverse-FFT of the gain-filtered
/// spectrum. Linear in the input; a constant tensor maps to zero.
pub fn extract_high_freq(z: &LatentTensor, p: &FilterParams) -> Result<LatentTensor> {
    let spectrum = fft3(z)?;
    ifft3(&apply_highpass(&spectrum, p))
}

/// Sum of squares of the high-frequency component.
pub fn hf_energy(z: &LatentTensor, p: &FilterParams) -> Result<f64> {
    Ok(extract_high_freq(z, p)?.sum_sq())
}

/// High-frequency loss: per-element mean of the squared difference between
/// the two high-frequency extractions.
pub fn hf_loss(a: &LatentTensor, b: &LatentTensor, p: &FilterParams) -> Result<f64> {
    if a.dims() != b.dims() {
        return Err(Error::InvalidShape(format!(
            "hf_loss dims {} vs {}",
            a.dims(),
            b.dims()
        )));
    }
    let ha = extract_high_freq(a, p)?;
    let hb = extract_high_freq(b, p)?;
    ha.mean_sq_diff(&hb)
}

/// High-frequency loss plus its gradient with respect to the first argument.
///
/// With E the (linear, self-adjoint) extraction operator and D the element
/// count, d(mean((E a - E b)^2))/da = (2/D) E(E a - E b). Self-adjointness
/// holds because the gain is even on the frequency index circle.
pub fn hf_loss_with_grad(
    a: &LatentTensor,
    b: &LatentTensor,
    p: &FilterParams,
) -> Result<(f64, LatentTensor)> {
    if a.dims() != b.dims() {
        return Err(Error::InvalidShape(format!(
            "hf_loss dims {} vs {}",
            a.dims(),
            b.dims()
        )));
    }
    let ha = extract_high_freq(a, p)?;
    let hb = extract_high_freq(b, p)?;
    let residual = ha.sub(&hb)?;
    let loss = residual.sum_sq() / residual.len() as f64;
    let grad = extract_high_freq(&residual, p)?.scale(2.0 / residual.len() as f64);
    Ok((loss, grad))
}
