//! Mother wavelets, the continuous wavelet transform and modulus-maxima
//! singularity detection.
//!
//! Wavelets are carried as [`WaveletDescriptor`]s: samples of ψ on a dyadic
//! grid of step `2^-J`. Haar and Morlet are sampled from their closed forms;
//! the Daubechies, Symlet and Coiflet families have none and are produced by
//! the cascade algorithm from their scaling filters.

mod cascade;
mod cwt;
mod filters;
mod maxima;

pub use cascade::{cascade_wavelet, max_grid_difference};
pub use cwt::{cwt, cwt_complex, default_scales, Scalogram};
pub use filters::{
    check_orthonormal, coiflet6, daubechies4, family_vanishing_moments, orthogonal_filter,
    quadrature_mirror, OrthogonalFamily, HAAR,
};
pub use maxima::{
    detect_discontinuities, detect_discontinuities_with, modulus_maxima, modulus_maxima_with,
    MaximaLine, MaximaPoint, DEFAULT_MAXIMA_THRESHOLD, DEFAULT_MIN_SCALE_FRACTION,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use thiserror::Error;

pub const DEFAULT_LEVEL: u32 = 8;
pub const MIN_LEVEL: u32 = 4;
pub const MAX_LEVEL: u32 = 12;
pub const DEFAULT_OMEGA0: f64 = 6.0;
/// Half-width of the truncated Morlet support; the envelope there is e^-32.
pub const MORLET_HALF_SUPPORT: f64 = 8.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WaveletError {
    #[error("no {family} filter with {taps} taps")]
    UnsupportedFamilyOrLength {
        family: OrthogonalFamily,
        taps: usize,
    },
    #[error("invalid scaling filter: {0}")]
    InvalidFilter(String),
    #[error("resolution level {0} outside {MIN_LEVEL}..={MAX_LEVEL}")]
    InvalidLevel(u32),
    #[error("cascade did not meet tolerances: mean {mean:e}, norm-1 {norm_err:e}")]
    NonConvergent { mean: f64, norm_err: f64 },
    #[error("Morlet centre frequency {0} below 5")]
    InvalidOmega(f64),
    #[error("signal of length {0} is too short for the CWT (need 8)")]
    SignalTooShort(usize),
    #[error("scale {scale} outside [1, {max}] or not strictly increasing")]
    ScaleOutOfRange { scale: f64, max: f64 },
    #[error("no scales requested")]
    NoScales,
    #[error("minimum scale fraction {0} outside (0, 1]")]
    InvalidFraction(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum WaveletKind {
    Haar,
    Daubechies {
        taps: usize,
    },
    Symlet {
        taps: usize,
    },
    Coiflet {
        taps: usize,
    },
    /// Built from an arbitrary orthonormal filter.
    Cascade {
        taps: usize,
    },
    Morlet {
        omega0: f64,
    },
}

impl fmt::Display for WaveletKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Haar => write!(f, "haar"),
            Self::Daubechies { taps } => write!(f, "db{taps}"),
            Self::Symlet { taps } => write!(f, "sym{taps}"),
            Self::Coiflet { taps } => write!(f, "coif{taps}"),
            Self::Cascade { taps } => write!(f, "cascade{taps}"),
            Self::Morlet { omega0 } => write!(f, "morlet({omega0})"),
        }
    }
}

/// Haar mother wavelet: 1 on [0, ½), -1 on [½, 1), 0 elsewhere.
pub fn haar_psi(t: f64) -> f64 {
    if (0.0..0.5).contains(&t) {
        1.0
    } else if (0.5..1.0).contains(&t) {
        -1.0
    } else {
        0.0
    }
}

/// Analytic Morlet `π^(-1/4) e^(iω₀t) e^(-t²/2)`, without the admissibility
/// correction (below 1e-7 relative for ω₀ ≥ 6).
pub fn morlet_psi(t: f64, omega0: f64) -> Complex64 {
    let envelope = PI.powf(-0.25) * (-0.5 * t * t).exp();
    let phase = omega0 * t;
    Complex64::new(envelope * phase.cos(), envelope * phase.sin())
}

/// ψ sampled on `t_min + i * grid_step`, `i = 0..samples.len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletDescriptor {
    pub kind: WaveletKind,
    pub samples: Vec<Complex64>,
    pub grid_step: f64,
    pub support: (f64, f64),
    pub vanishing_moments: u32,
    pub level: u32,
}

fn check_level(level: u32) -> Result<(), WaveletError> {
    if (MIN_LEVEL..=MAX_LEVEL).contains(&level) {
        Ok(())
    } else {
        Err(WaveletError::InvalidLevel(level))
    }
}

impl WaveletDescriptor {
    pub fn haar(level: u32) -> Result<Self, WaveletError> {
        check_level(level)?;
        let step = (-(level as f64)).exp2();
        let n = 1usize << level;
        let samples = (0..=n)
            .map(|i| Complex64::new(haar_psi(i as f64 * step), 0.0))
            .collect();
        Ok(Self {
            kind: WaveletKind::Haar,
            samples,
            grid_step: step,
            support: (0.0, 1.0),
            vanishing_moments: 1,
            level,
        })
    }

    pub fn morlet(omega0: f64, level: u32) -> Result<Self, WaveletError> {
        check_level(level)?;
        if omega0.is_nan() || omega0 < 5.0 {
            return Err(WaveletError::InvalidOmega(omega0));
        }
        let step = (-(level as f64)).exp2();
        let half = (MORLET_HALF_SUPPORT / step) as i64;
        let samples = (-half..=half)
            .map(|i| morlet_psi(i as f64 * step, omega0))
            .collect();
        Ok(Self {
            kind: WaveletKind::Morlet { omega0 },
            samples,
            grid_step: step,
            support: (-MORLET_HALF_SUPPORT, MORLET_HALF_SUPPORT),
            vanishing_moments: 1,
            level,
        })
    }

    /// Cascade wavelet of a named orthogonal family.
    pub fn orthogonal(
        family: OrthogonalFamily,
        taps: usize,
        level: u32,
    ) -> Result<Self, WaveletError> {
        let h = orthogonal_filter(family, taps)?;
        let mut d = cascade_wavelet(&h, level)?;
        d.kind = match family {
            OrthogonalFamily::Daubechies => WaveletKind::Daubechies { taps },
            OrthogonalFamily::Symlet => WaveletKind::Symlet { taps },
            OrthogonalFamily::Coiflet => WaveletKind::Coiflet { taps },
        };
        d.vanishing_moments = family_vanishing_moments(family, taps);
        Ok(d)
    }

    pub fn daubechies4(level: u32) -> Result<Self, WaveletError> {
        Self::orthogonal(OrthogonalFamily::Daubechies, 4, level)
    }

    pub fn is_complex(&self) -> bool {
        matches!(self.kind, WaveletKind::Morlet { .. })
    }

    /// Compactly supported wavelets are exactly zero outside `support`.
    pub fn is_compact(&self) -> bool {
        !self.is_complex()
    }

    /// Midpoint of the support; the CWT aligns this point with each time index.
    pub fn center(&self) -> f64 {
        0.5 * (self.support.0 + self.support.1)
    }

    pub fn time_of(&self, i: usize) -> f64 {
        self.support.0 + i as f64 * self.grid_step
    }

    /// Linear interpolation of the samples; zero outside the support.
    pub fn eval(&self, t: f64) -> Complex64 {
        let (lo, hi) = self.support;
        if !(t >= lo && t <= hi) {
            return Complex64::new(0.0, 0.0);
        }
        let pos = (t - lo) / self.grid_step;
        let i = pos.floor() as usize;
        let last = self.samples.len() - 1;
        if i >= last {
            return self.samples[last];
        }
        let frac = pos - i as f64;
        if frac == 0.0 {
            self.samples[i]
        } else {
            self.samples[i] * (1.0 - frac) + self.samples[i + 1] * frac
        }
    }

    /// Riemann-sum estimate of `∫ t^p ψ(t) dt`.
    pub fn moment(&self, p: i32) -> Complex64 {
        self.samples
            .iter()
            .enumerate()
            .map(|(i, &s)| s * self.time_of(i).powi(p))
            .sum::<Complex64>()
            * self.grid_step
    }

    /// Riemann-sum estimate of `∫ |ψ|² dt`.
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() * self.grid_step
    }
}
