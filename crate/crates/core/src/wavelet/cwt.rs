//! Continuous wavelet transform by direct correlation with resampled,
//! L2-normalised wavelet kernels.

use super::{WaveletDescriptor, WaveletError, WaveletKind};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

const MIN_LEN: usize = 8;
const VOICES_PER_OCTAVE: i32 = 8;

/// Real scale × time coefficient map. Rows follow `scales`.
///
/// Real wavelets store signed coefficients; complex wavelets store the
/// modulus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scalogram {
    pub coefficients: Vec<Vec<f64>>,
    pub scales: Vec<f64>,
    pub wavelet: WaveletKind,
    /// `true` where the kernel at that scale overruns a signal end.
    pub coi_mask: Vec<Vec<bool>>,
    /// Largest |sample| of the analysed signal.
    pub input_peak: f64,
}

impl Scalogram {
    pub fn n_scales(&self) -> usize {
        self.scales.len()
    }

    pub fn n_times(&self) -> usize {
        self.coefficients.first().map_or(0, Vec::len)
    }

    pub fn is_interior(&self, scale: usize, time: usize) -> bool {
        !self.coi_mask[scale][time]
    }

    /// Magnitude below which coefficients are indistinguishable from
    /// rounding error for this input.
    pub fn noise_floor(&self) -> f64 {
        let top = self.scales.last().copied().unwrap_or(1.0);
        1e-10 * self.input_peak * top.sqrt()
    }

    /// Largest |coefficient| outside the cone of influence.
    pub fn interior_max_abs(&self) -> f64 {
        self.coefficients
            .iter()
            .zip(&self.coi_mask)
            .flat_map(|(row, mask)| row.iter().zip(mask))
            .filter(|(_, &m)| !m)
            .map(|(v, _)| v.abs())
            .fold(0.0, f64::max)
    }
}

/// Dyadic scales with 8 voices per octave from 2 up to `len / 4`. Always
/// holds at least scale 2.
pub fn default_scales(len: usize) -> Vec<f64> {
    let top = len as f64 / 4.0;
    let mut scales = vec![2.0];
    for j in 1.. {
        let s = 2.0 * (j as f64 / VOICES_PER_OCTAVE as f64).exp2();
        if s > top {
            break;
        }
        scales.push(s);
    }
    scales
}

/// Resampled kernel for one scale: taps for offsets `lo..lo+taps.len()`.
struct Kernel {
    lo: isize,
    taps: Vec<Complex64>,
}

impl Kernel {
    fn build(wavelet: &WaveletDescriptor, scale: f64) -> Self {
        let c = wavelet.center();
        let (t0, t1) = wavelet.support;
        let mut lo = (scale * (t0 - c)).ceil() as isize;
        let mut hi = (scale * (t1 - c)).floor() as isize;
        let norm = scale.sqrt().recip();
        let at = |j: isize| wavelet.eval(j as f64 / scale + c).conj() * norm;
        let zero = Complex64::new(0.0, 0.0);
        while lo < hi && at(lo) == zero {
            lo += 1;
        }
        while hi > lo && at(hi) == zero {
            hi -= 1;
        }
        let p = wavelet.vanishing_moments as isize;
        if wavelet.is_compact() && hi - lo < p {
            // Too few taps to carry p vanishing moments (tiny scales).
            lo -= 1;
            hi += 1;
        }
        let mut taps: Vec<Complex64> = (lo..=hi).map(at).collect();
        if wavelet.is_compact() {
            restore_moments(&mut taps, lo, scale, wavelet.vanishing_moments as usize);
        }
        Kernel { lo, taps }
    }

    fn hi(&self) -> isize {
        self.lo + self.taps.len() as isize - 1
    }
}

/// Projects the real kernel onto the complement of the polynomials of
/// degree < `p` over its own taps.
///
/// Linear interpolation at non-dyadic scales leaks a fraction of the DC and
/// ramp response; at dyadic scales the sampled kernel already has these
/// discrete moments and the projection changes it only by rounding.
fn restore_moments(taps: &mut [Complex64], lo: isize, scale: f64, p: usize) {
    let n = taps.len();
    let p = p.min(n.saturating_sub(1));
    if p == 0 {
        return;
    }
    let mid = lo as f64 + (n as f64 - 1.0) / 2.0;
    let u: Vec<f64> = (0..n)
        .map(|i| (lo as f64 + i as f64 - mid) / scale)
        .collect();
    // Modified Gram-Schmidt on 1, u, u², ...
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(p);
    for d in 0..p {
        let mut v: Vec<f64> = u.iter().map(|x| x.powi(d as i32)).collect();
        for b in &basis {
            let dot: f64 = v.iter().zip(b).map(|(a, c)| a * c).sum();
            v.iter_mut().zip(b).for_each(|(a, c)| *a -= dot * c);
        }
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm < 1e-12 {
            break;
        }
        v.iter_mut().for_each(|a| *a /= norm);
        basis.push(v);
    }
    for b in &basis {
        let dot: Complex64 = taps.iter().zip(b).map(|(t, c)| t * c).sum();
        taps.iter_mut().zip(b).for_each(|(t, c)| *t -= dot * c);
    }
}

fn validate(len: usize, scales: &[f64]) -> Result<(), WaveletError> {
    if len < MIN_LEN {
        return Err(WaveletError::SignalTooShort(len));
    }
    if scales.is_empty() {
        return Err(WaveletError::NoScales);
    }
    let max = len as f64 / 2.0;
    let mut prev = 0.0;
    for &s in scales {
        if !(s >= 1.0 && s <= max && s > prev) {
            return Err(WaveletError::ScaleOutOfRange { scale: s, max });
        }
        prev = s;
    }
    Ok(())
}

/// Coefficients of one scale and their cone-of-influence flags.
type Row = (Vec<Complex64>, Vec<bool>);

fn correlate(values: &[f64], kernel: &Kernel) -> Row {
    let len = values.len() as isize;
    let mut row = Vec::with_capacity(values.len());
    let mut mask = Vec::with_capacity(values.len());
    for n in 0..len {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &k) in kernel.taps.iter().enumerate() {
            let m = n + kernel.lo + i as isize;
            if (0..len).contains(&m) {
                acc += k * values[m as usize];
            }
        }
        row.push(acc);
        mask.push(n + kernel.lo < 0 || n + kernel.hi() >= len);
    }
    (row, mask)
}

fn transform(
    values: &[f64],
    wavelet: &WaveletDescriptor,
    scales: &[f64],
) -> Result<Vec<Row>, WaveletError> {
    validate(values.len(), scales)?;
    // Rows are independent; each inner sum runs in fixed index order.
    Ok(scales
        .par_iter()
        .map(|&s| correlate(values, &Kernel::build(wavelet, s)))
        .collect())
}

/// `W[s][n] = Σ_m x[m] ψ*((m - n)/s + c) / √s` with `c` the centre of the
/// wavelet support and zero padding outside the signal.
pub fn cwt(
    values: &[f64],
    wavelet: &WaveletDescriptor,
    scales: &[f64],
) -> Result<Scalogram, WaveletError> {
    let rows = transform(values, wavelet, scales)?;
    let complex = wavelet.is_complex();
    let (coefficients, coi_mask) = rows
        .into_iter()
        .map(|(row, mask)| {
            let row = row
                .into_iter()
                .map(|z| if complex { z.norm() } else { z.re })
                .collect();
            (row, mask)
        })
        .unzip();
    Ok(Scalogram {
        coefficients,
        scales: scales.to_vec(),
        wavelet: wavelet.kind,
        coi_mask,
        input_peak: values.iter().fold(0.0, |a: f64, v| a.max(v.abs())),
    })
}

/// Complex coefficients before the modulus is taken.
pub fn cwt_complex(
    values: &[f64],
    wavelet: &WaveletDescriptor,
    scales: &[f64],
) -> Result<Vec<Vec<Complex64>>, WaveletError> {
    Ok(transform(values, wavelet, scales)?
        .into_iter()
        .map(|(row, _)| row)
        .collect())
}
