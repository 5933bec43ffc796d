//! Scaling (lowpass) filters of the compactly supported orthogonal families,
//! keyed by tap count. All tables are normalised so that `sum(h) = sqrt(2)`.

use super::WaveletError;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrthogonalFamily {
    Daubechies,
    Symlet,
    Coiflet,
}

impl fmt::Display for OrthogonalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Daubechies => "Daubechies",
            Self::Symlet => "Symlet",
            Self::Coiflet => "Coiflet",
        })
    }
}

pub const HAAR: [f64; 2] = [
    std::f64::consts::FRAC_1_SQRT_2,
    std::f64::consts::FRAC_1_SQRT_2,
];

// Minimum-phase spectral factors, high-precision.
#[allow(clippy::excessive_precision)]
const DAUBECHIES_8: [f64; 8] = [
    0.230_377_813_308_896_500_86,
    0.714_846_570_552_915_647_09,
    0.630_880_767_929_858_907_88,
    -0.027_983_769_416_859_854_211,
    -0.187_034_811_719_093_084_08,
    0.030_841_381_835_560_763_627,
    0.032_883_011_666_885_199_735,
    -0.010_597_401_785_069_032_105,
];

#[allow(clippy::excessive_precision)]
const DAUBECHIES_12: [f64; 12] = [
    0.111_540_743_350_109_463_62,
    0.494_623_890_398_453_085_68,
    0.751_133_908_021_095_350_68,
    0.315_250_351_709_197_629_09,
    -0.226_264_693_965_439_820_08,
    -0.129_766_867_567_261_935_56,
    0.097_501_605_587_323_049_102,
    0.027_522_865_530_305_728_626,
    -0.031_582_039_317_486_029_565,
    0.000_553_842_201_161_496_139_25,
    0.004_777_257_510_945_510_639_6,
    -0.001_077_301_085_308_479_564_9,
];

// Least-asymmetric factor with four vanishing moments.
#[allow(clippy::excessive_precision)]
const SYMLET_8: [f64; 8] = [
    0.032_223_100_604_051_467_872,
    -0.012_603_967_262_031_303_754,
    -0.099_219_543_576_633_532_585,
    0.297_857_795_605_306_051_4,
    0.803_738_751_805_132_080_88,
    0.497_618_667_632_774_989_98,
    -0.029_635_527_646_002_491_764,
    -0.075_765_714_789_502_213_228,
];

/// Daubechies 4-tap filter from its closed form
/// `[(1+√3), (3+√3), (3-√3), (1-√3)] / (4√2)`.
pub fn daubechies4() -> [f64; 4] {
    let s3 = 3f64.sqrt();
    let d = 4.0 * std::f64::consts::SQRT_2;
    [
        (1.0 + s3) / d,
        (3.0 + s3) / d,
        (3.0 - s3) / d,
        (1.0 - s3) / d,
    ]
}

/// Six-tap Coiflet, closed form in `√7`.
pub fn coiflet6() -> [f64; 6] {
    let s7 = 7f64.sqrt();
    let c = std::f64::consts::SQRT_2 / 32.0;
    [
        (s7 - 3.0) * c,
        (1.0 - s7) * c,
        (14.0 - 2.0 * s7) * c,
        (14.0 + 2.0 * s7) * c,
        (5.0 + s7) * c,
        (1.0 - s7) * c,
    ]
}

/// Scaling filter for `family` with `taps` coefficients.
///
/// Supported: Daubechies 4/8/12, Symlet 8, Coiflet 6.
pub fn orthogonal_filter(family: OrthogonalFamily, taps: usize) -> Result<Vec<f64>, WaveletError> {
    let h = match (family, taps) {
        (OrthogonalFamily::Daubechies, 4) => daubechies4().to_vec(),
        (OrthogonalFamily::Daubechies, 8) => DAUBECHIES_8.to_vec(),
        (OrthogonalFamily::Daubechies, 12) => DAUBECHIES_12.to_vec(),
        (OrthogonalFamily::Symlet, 8) => SYMLET_8.to_vec(),
        (OrthogonalFamily::Coiflet, 6) => coiflet6().to_vec(),
        _ => return Err(WaveletError::UnsupportedFamilyOrLength { family, taps }),
    };
    Ok(h)
}

/// Number of vanishing moments of the wavelet built from a filter of the
/// given family and length.
pub fn family_vanishing_moments(family: OrthogonalFamily, taps: usize) -> u32 {
    match family {
        OrthogonalFamily::Daubechies | OrthogonalFamily::Symlet => (taps / 2) as u32,
        OrthogonalFamily::Coiflet => (taps / 3) as u32,
    }
}

/// Highpass partner `g[k] = (-1)^k h[L-1-k]`.
pub fn quadrature_mirror(h: &[f64]) -> Vec<f64> {
    let l = h.len();
    (0..l)
        .map(|k| {
            if k % 2 == 0 {
                h[l - 1 - k]
            } else {
                -h[l - 1 - k]
            }
        })
        .collect()
}

/// Checks `sum(h) = sqrt(2)` and double-shift orthonormality to `tol`.
pub fn check_orthonormal(h: &[f64], tol: f64) -> Result<(), WaveletError> {
    if h.len() < 2 || !h.len().is_multiple_of(2) {
        return Err(WaveletError::InvalidFilter(format!(
            "length {} is not even",
            h.len()
        )));
    }
    let sum: f64 = h.iter().sum();
    if (sum - std::f64::consts::SQRT_2).abs() > tol {
        return Err(WaveletError::InvalidFilter(format!(
            "coefficients sum to {sum}, expected sqrt(2)"
        )));
    }
    for shift in (0..h.len()).step_by(2) {
        let dot: f64 = h.iter().zip(&h[shift..]).map(|(a, b)| a * b).sum();
        let want = if shift == 0 { 1.0 } else { 0.0 };
        if (dot - want).abs() > tol {
            return Err(WaveletError::InvalidFilter(format!(
                "shift-{shift} autocorrelation is {dot}, expected {want}"
            )));
        }
    }
    Ok(())
}
