//! Modulus maxima chaining across scales and discontinuity detection.

use super::{cwt, default_scales, Scalogram, WaveletDescriptor, WaveletError};
use serde::{Deserialize, Serialize};

/// Maxima below this fraction of the largest interior modulus are ignored.
pub const DEFAULT_MAXIMA_THRESHOLD: f64 = 0.05;
pub const DEFAULT_MIN_SCALE_FRACTION: f64 = 0.7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaximaPoint {
    pub scale_index: usize,
    pub time_index: usize,
    pub modulus: f64,
}

/// Chain of maxima over consecutive scales, finest first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaximaLine {
    pub points: Vec<MaximaPoint>,
    /// Time index at the finest participating scale.
    pub terminal_time: usize,
}

impl MaximaLine {
    pub fn span(&self) -> usize {
        self.points.len()
    }
}

fn local_maxima(sc: &Scalogram, scale: usize, floor: f64) -> Vec<MaximaPoint> {
    let row = &sc.coefficients[scale];
    (1..row.len().saturating_sub(1))
        .filter(|&n| sc.is_interior(scale, n))
        .filter_map(|n| {
            let m = row[n].abs();
            (m > row[n - 1].abs() && m > row[n + 1].abs() && m > floor).then_some(MaximaPoint {
                scale_index: scale,
                time_index: n,
                modulus: m,
            })
        })
        .collect()
}

pub fn modulus_maxima(sc: &Scalogram) -> Vec<MaximaLine> {
    modulus_maxima_with(sc, DEFAULT_MAXIMA_THRESHOLD)
}

/// Finds interior local maxima of |W| in time at every scale and links
/// them from fine to coarse scales. A maximum at scale `i` continues a chain
/// ending at scale `i - 1` when their times differ by at most
/// `max(1, s_i / 2)`; closest pairs are linked first.
pub fn modulus_maxima_with(sc: &Scalogram, threshold: f64) -> Vec<MaximaLine> {
    let peak = sc.interior_max_abs();
    if peak <= sc.noise_floor() {
        return Vec::new();
    }
    let floor = (threshold * peak).max(sc.noise_floor());

    let mut finished: Vec<MaximaLine> = Vec::new();
    let mut active: Vec<MaximaLine> = Vec::new();
    for scale in 0..sc.n_scales() {
        let maxima = local_maxima(sc, scale, floor);
        let tol = (sc.scales[scale] / 2.0).max(1.0);

        let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
        for (ci, chain) in active.iter().enumerate() {
            let t = chain.points.last().unwrap().time_index;
            for (mi, m) in maxima.iter().enumerate() {
                let d = t.abs_diff(m.time_index);
                if d as f64 <= tol {
                    pairs.push((d, ci, mi));
                }
            }
        }
        pairs.sort_unstable();

        let mut chain_taken = vec![false; active.len()];
        let mut max_taken = vec![false; maxima.len()];
        for (_, ci, mi) in pairs {
            if !chain_taken[ci] && !max_taken[mi] {
                chain_taken[ci] = true;
                max_taken[mi] = true;
                active[ci].points.push(maxima[mi]);
            }
        }

        let mut next = Vec::new();
        for (chain, taken) in active.into_iter().zip(chain_taken) {
            if taken {
                next.push(chain);
            } else {
                finished.push(chain);
            }
        }
        for (m, taken) in maxima.into_iter().zip(max_taken) {
            if !taken {
                next.push(MaximaLine {
                    points: vec![m],
                    terminal_time: m.time_index,
                });
            }
        }
        active = next;
    }
    finished.extend(active);
    finished.sort_by_key(|l| (l.terminal_time, l.points[0].scale_index));
    finished
}

pub fn detect_discontinuities(
    values: &[f64],
    wavelet: &WaveletDescriptor,
) -> Result<Vec<usize>, WaveletError> {
    detect_discontinuities_with(values, wavelet, DEFAULT_MIN_SCALE_FRACTION)
}

/// Terminal times of maxima chains that persist over at least
/// `min_scale_fraction` of the default scale set, ascending. Terminal times
/// within ±1 of a common index are reported once; wavelets whose step
/// response has two lobes (Daubechies) produce a pair of lines flanking
/// the step that merges this way.
pub fn detect_discontinuities_with(
    values: &[f64],
    wavelet: &WaveletDescriptor,
    min_scale_fraction: f64,
) -> Result<Vec<usize>, WaveletError> {
    if !(min_scale_fraction > 0.0 && min_scale_fraction <= 1.0) {
        return Err(WaveletError::InvalidFraction(min_scale_fraction));
    }
    let scales = default_scales(values.len());
    let sc = cwt(values, wavelet, &scales)?;
    let needed = min_scale_fraction * scales.len() as f64 - 1e-9;
    let mut times: Vec<usize> = modulus_maxima(&sc)
        .into_iter()
        .filter(|l| l.span() as f64 >= needed)
        .map(|l| l.terminal_time)
        .collect();
    times.sort_unstable();
    Ok(merge_within_one(&times))
}

/// Groups sorted times that all lie within ±1 of a common centre and
/// reports each group's centre (rounded down).
fn merge_within_one(sorted: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let first = sorted[i];
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1] - first <= 2 {
            j += 1;
        }
        out.push((first + sorted[j]) / 2);
        i = j + 1;
    }
    out
}
