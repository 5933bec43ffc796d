//! Discrete Stockwell (S-) transform.
//!
//! With the forward Fourier convention `H[m] = (1/N) Σ_n x[n] e^(-i2πmn/N)`,
//! voice `k ≥ 1` is
//!
//! ```text
//! S[k][n] = Σ_m H[m + k] · exp(-2π² m² γ² / k²) · e^(+i2πmn/N),
//!           m = -⌈N/2⌉+1 ..= ⌊N/2⌋
//! ```
//!
//! and voice 0 is the signal mean. Averaging any voice over time returns
//! `H[k]` exactly, which is what makes the transform invertible.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;
use thiserror::Error;

pub const MIN_LEN: usize = 8;
/// Largest input accepted by [`s_transform_direct`].
pub const ORACLE_MAX_LEN: usize = 512;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StError {
    #[error("signal of length {0} is too short for the S-transform (need {MIN_LEN})")]
    SignalTooShort(usize),
    #[error("direct S-transform limited to {ORACLE_MAX_LEN} samples, got {0}")]
    OracleSizeExceeded(usize),
    #[error("gamma {0} outside [0.2, 5]")]
    InvalidGamma(f64),
    #[error("malformed spectrum: {0}")]
    MalformedSpectrum(String),
    #[error("non-finite sample at index {0}")]
    NonFinite(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StConfig {
    /// Gaussian width factor; 1 gives the canonical transform.
    pub gamma: f64,
}

impl Default for StConfig {
    fn default() -> Self {
        Self { gamma: 1.0 }
    }
}

impl StConfig {
    pub fn new(gamma: f64) -> Result<Self, StError> {
        let cfg = Self { gamma };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), StError> {
        if (0.2..=5.0).contains(&self.gamma) {
            Ok(())
        } else {
            Err(StError::InvalidGamma(self.gamma))
        }
    }
}

/// Complex voice × time matrix; voice `k` sits at `k / N` cycles per sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StSpectrum {
    pub coefficients: Vec<Vec<Complex64>>,
    pub n_samples: usize,
    /// Spacing of the input samples, in days.
    pub sample_interval: f64,
}

impl StSpectrum {
    pub fn n_voices(&self) -> usize {
        self.coefficients.len()
    }

    /// Frequency of each voice in cycles per sample.
    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.n_voices())
            .map(|k| k as f64 / self.n_samples as f64)
            .collect()
    }

    /// `(1/N) Σ_n S[k][n]` for every voice.
    pub fn time_average(&self) -> Vec<Complex64> {
        let n = self.n_samples as f64;
        self.coefficients
            .iter()
            .map(|row| row.iter().sum::<Complex64>() / n)
            .collect()
    }
}

fn check_input(values: &[f64], cfg: &StConfig) -> Result<(), StError> {
    cfg.validate()?;
    if values.len() < MIN_LEN {
        return Err(StError::SignalTooShort(values.len()));
    }
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(StError::NonFinite(i));
    }
    Ok(())
}

/// Forward DFT with the `1/N` convention, via FFT.
pub fn fourier_coefficients(values: &[f64]) -> Vec<Complex64> {
    let n = values.len();
    let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    buf.iter_mut().for_each(|z| *z *= scale);
    buf
}

fn gaussian(m: i64, k: usize, gamma: f64) -> f64 {
    let r = m as f64 * gamma / k as f64;
    (-2.0 * PI * PI * r * r).exp()
}

/// Offsets `m` in the voice sum.
fn offsets(n: usize) -> std::ops::RangeInclusive<i64> {
    let n = n as i64;
    (-(n + 1) / 2 + 1)..=n / 2
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Fast S-transform: per voice, shift the spectrum by `k`, apply the
/// Gaussian and inverse-transform. O(N² log N).
pub fn s_transform(values: &[f64], cfg: &StConfig) -> Result<StSpectrum, StError> {
    check_input(values, cfg)?;
    let n = values.len();
    let spectrum = fourier_coefficients(values);
    let inverse: Arc<dyn Fft<f64>> = FftPlanner::new().plan_fft_inverse(n);

    let dc = Complex64::new(mean(values), 0.0);
    let mut rows = vec![vec![dc; n]];
    rows.par_extend((1..=n / 2).into_par_iter().map(|k| {
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        for m in offsets(n) {
            let idx = m.rem_euclid(n as i64) as usize;
            let src = (m + k as i64).rem_euclid(n as i64) as usize;
            buf[idx] = spectrum[src] * gaussian(m, k, cfg.gamma);
        }
        inverse.process(&mut buf);
        buf
    }));

    Ok(StSpectrum {
        coefficients: rows,
        n_samples: n,
        sample_interval: 1.0,
    })
}

/// Literal evaluation of the defining sums, without any FFT. O(N³); used to
/// cross-check [`s_transform`].
pub fn s_transform_direct(values: &[f64], cfg: &StConfig) -> Result<StSpectrum, StError> {
    check_input(values, cfg)?;
    let n = values.len();
    if n > ORACLE_MAX_LEN {
        return Err(StError::OracleSizeExceeded(n));
    }
    let ni = n as i64;
    // e^(i2πj/N) for j = 0..N; arguments reduced mod N before lookup.
    let twiddle: Vec<Complex64> = (0..n)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64))
        .collect();
    let spectrum: Vec<Complex64> = (0..n)
        .map(|m| {
            values
                .iter()
                .enumerate()
                .map(|(t, &v)| twiddle[(n - (m * t) % n) % n] * v)
                .sum::<Complex64>()
                / n as f64
        })
        .collect();

    let mut rows = vec![vec![Complex64::new(mean(values), 0.0); n]];
    for k in 1..=n / 2 {
        let row = (0..ni)
            .map(|t| {
                offsets(n)
                    .map(|m| {
                        let h = spectrum[(m + k as i64).rem_euclid(ni) as usize];
                        h * gaussian(m, k, cfg.gamma) * twiddle[(m * t).rem_euclid(ni) as usize]
                    })
                    .sum::<Complex64>()
            })
            .collect();
        rows.push(row);
    }
    Ok(StSpectrum {
        coefficients: rows,
        n_samples: n,
        sample_interval: 1.0,
    })
}

/// Recovers the real signal: time-average each voice to get `H[k]`, extend
/// by conjugate symmetry and invert the DFT.
pub fn inverse_s_transform(spec: &StSpectrum) -> Result<Vec<f64>, StError> {
    let n = spec.n_samples;
    if n == 0 {
        return Err(StError::MalformedSpectrum("zero samples".into()));
    }
    if spec.n_voices() != n / 2 + 1 {
        return Err(StError::MalformedSpectrum(format!(
            "{} voices for {n} samples, expected {}",
            spec.n_voices(),
            n / 2 + 1
        )));
    }
    if let Some(k) = spec.coefficients.iter().position(|r| r.len() != n) {
        return Err(StError::MalformedSpectrum(format!(
            "voice {k} has {} columns, expected {n}",
            spec.coefficients[k].len()
        )));
    }

    let half = spec.time_average();
    let mut full: Vec<Complex64> = (0..n)
        .map(|j| {
            if j <= n / 2 {
                half[j]
            } else {
                half[n - j].conj()
            }
        })
        .collect();
    FftPlanner::new().plan_fft_inverse(n).process(&mut full);
    Ok(full.into_iter().map(|z| z.re).collect())
}

/// Elementwise modulus, same shape as the spectrum.
pub fn st_magnitude(spec: &StSpectrum) -> Vec<Vec<f64>> {
    spec.coefficients
        .iter()
        .map(|row| row.iter().map(|z| z.norm()).collect())
        .collect()
}
