//! Cascade algorithm: iterated filter refinement producing ψ samples from an
//! orthonormal scaling filter.
//!
//! After `J` refinements the product filter
//! `G(z^(2^(J-1))) · Π_{i<J-1} H(z^(2^i))`, scaled by `2^(J/2)`, samples ψ at
//! `t = n 2^-J`. Orthonormality of the filter bank makes the Riemann-sum
//! energy exactly 1 and the Riemann-sum mean exactly 0 at every level.

use super::filters::{check_orthonormal, quadrature_mirror, HAAR};
use super::{check_level, WaveletDescriptor, WaveletError, WaveletKind};
use num_complex::Complex64;

const FILTER_TOL: f64 = 1e-10;
const MEAN_TOL: f64 = 1e-6;
const NORM_TOL: f64 = 1e-6;

/// `c * f(z^stride)` for sparse upsampled `f`.
fn convolve_upsampled(c: &[f64], f: &[f64], stride: usize) -> Vec<f64> {
    let mut out = vec![0.0; c.len() + (f.len() - 1) * stride];
    for (k, &fk) in f.iter().enumerate() {
        let off = k * stride;
        for (i, &ci) in c.iter().enumerate() {
            out[off + i] += ci * fk;
        }
    }
    out
}

/// Raw cascade output on the grid `n 2^-level`, `n = 0..=(L-1) 2^level`.
pub(crate) fn iterate_cascade(h: &[f64], level: u32) -> Vec<f64> {
    let g = quadrature_mirror(h);
    let mut c = vec![1.0];
    for i in 0..level - 1 {
        c = convolve_upsampled(&c, h, 1 << i);
    }
    c = convolve_upsampled(&c, &g, 1 << (level - 1));
    let scale = (level as f64 / 2.0).exp2();
    let full = (h.len() - 1) * (1 << level) + 1;
    let mut samples: Vec<f64> = c.into_iter().map(|v| v * scale).collect();
    samples.resize(full, 0.0);
    samples
}

/// Number of leading discrete moments of `g` that vanish.
fn discrete_vanishing_moments(g: &[f64]) -> u32 {
    let l = g.len() as f64;
    let mut p = 0;
    while (p as usize) < g.len() / 2 {
        let m: f64 = g
            .iter()
            .enumerate()
            .map(|(n, v)| (n as f64).powi(p) * v)
            .sum();
        if m.abs() > 1e-8 * l.powi(p) {
            break;
        }
        p += 1;
    }
    p as u32
}

/// Samples ψ for the orthonormal scaling filter `h` on the grid `2^-level`
/// over `[0, L-1]`.
pub fn cascade_wavelet(h: &[f64], level: u32) -> Result<WaveletDescriptor, WaveletError> {
    check_level(level)?;
    check_orthonormal(h, FILTER_TOL)?;

    // Haar is the fixed point of its own cascade; take the exact samples.
    if h.len() == 2 && h.iter().zip(HAAR).all(|(a, b)| (a - b).abs() < 1e-15) {
        return WaveletDescriptor::haar(level);
    }

    let samples = iterate_cascade(h, level);
    let step = (-(level as f64)).exp2();
    let d = WaveletDescriptor {
        kind: WaveletKind::Cascade { taps: h.len() },
        samples: samples
            .into_iter()
            .map(|v| Complex64::new(v, 0.0))
            .collect(),
        grid_step: step,
        support: (0.0, (h.len() - 1) as f64),
        vanishing_moments: discrete_vanishing_moments(&quadrature_mirror(h)).max(1),
        level,
    };
    let mean = d.moment(0).norm();
    let norm_err = (d.energy() - 1.0).abs();
    if mean > MEAN_TOL || norm_err > NORM_TOL {
        return Err(WaveletError::NonConvergent { mean, norm_err });
    }
    Ok(d)
}

/// `max |ψ_coarse(t) - ψ_fine(t)|` over the grid points of the coarser
/// descriptor. Both must share the same support.
pub fn max_grid_difference(coarse: &WaveletDescriptor, fine: &WaveletDescriptor) -> f64 {
    let ratio = (coarse.grid_step / fine.grid_step).round() as usize;
    coarse
        .samples
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let f = fine
                .samples
                .get(i * ratio)
                .copied()
                .unwrap_or(Complex64::new(0.0, 0.0));
            (c - f).norm()
        })
        .fold(0.0, f64::max)
}
