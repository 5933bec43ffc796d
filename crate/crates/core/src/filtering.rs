//! Sliding-window median filter.
//!
//! Each output sample is the median of the `window` input samples centred
//! on it. Samples beyond either end are supplied by the boundary policy, so
//! output length always equals input length.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilterError {
    #[error("median window must be odd, got {0}")]
    EvenWindow(usize),
    #[error("median window {window} exceeds twice the signal length {len}")]
    WindowTooLarge { window: usize, len: usize },
    #[error("cannot filter an empty signal")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// Repeat the edge sample: `a a | a b c`.
    #[default]
    Replicate,
    /// Mirror about the edge sample without repeating it: `c b | a b c`.
    Reflect,
}

impl std::str::FromStr for Boundary {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "replicate" => Ok(Self::Replicate),
            "reflect" => Ok(Self::Reflect),
            other => Err(format!("unknown boundary policy `{other}`")),
        }
    }
}

impl std::fmt::Display for Boundary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Replicate => "replicate",
            Self::Reflect => "reflect",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MedianFilterConfig {
    pub window: usize,
    pub boundary: Boundary,
}

impl Default for MedianFilterConfig {
    fn default() -> Self {
        Self {
            window: 5,
            boundary: Boundary::Replicate,
        }
    }
}

impl MedianFilterConfig {
    pub fn new(window: usize, boundary: Boundary) -> Result<Self, FilterError> {
        if window.is_multiple_of(2) {
            return Err(FilterError::EvenWindow(window));
        }
        Ok(Self { window, boundary })
    }

    fn validate(&self, len: usize) -> Result<(), FilterError> {
        if len == 0 {
            return Err(FilterError::Empty);
        }
        if self.window.is_multiple_of(2) {
            return Err(FilterError::EvenWindow(self.window));
        }
        if self.window > 2 * len {
            return Err(FilterError::WindowTooLarge {
                window: self.window,
                len,
            });
        }
        Ok(())
    }
}

/// Maps a possibly out-of-range index onto the signal. Valid for offsets of
/// at most `len - 1` past either end, which `window <= 2*len` guarantees.
pub(crate) fn boundary_index(i: isize, len: usize, boundary: Boundary) -> usize {
    let last = len as isize - 1;
    let j = match boundary {
        Boundary::Replicate => i.clamp(0, last),
        Boundary::Reflect => {
            if i < 0 {
                -i
            } else if i > last {
                2 * last - i
            } else {
                i
            }
        }
    };
    j.clamp(0, last) as usize
}

/// Median-filters `values`.
///
/// Keeps a sorted copy of the current window and slides it one sample at a
/// time (binary-search removal and insertion), O(n * window).
pub fn median_filter(values: &[f64], cfg: &MedianFilterConfig) -> Result<Vec<f64>, FilterError> {
    cfg.validate(values.len())?;
    let len = values.len();
    let half = (cfg.window / 2) as isize;
    let at = |i: isize| values[boundary_index(i, len, cfg.boundary)];

    let mut sorted: Vec<f64> = (-half..=half).map(at).collect();
    sorted.sort_by(f64::total_cmp);

    let mut out = Vec::with_capacity(len);
    out.push(sorted[half as usize]);
    for i in 1..len as isize {
        let leaving = at(i - 1 - half);
        let entering = at(i + half);
        let pos = sorted
            .binary_search_by(|x| x.total_cmp(&leaving))
            .expect("leaving sample is in the window");
        sorted.remove(pos);
        let pos = sorted
            .binary_search_by(|x| x.total_cmp(&entering))
            .unwrap_or_else(|p| p);
        sorted.insert(pos, entering);
        out.push(sorted[half as usize]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(window: usize, boundary: Boundary) -> MedianFilterConfig {
        MedianFilterConfig { window, boundary }
    }

    // Explicit padded-window sort.
    fn oracle(values: &[f64], c: &MedianFilterConfig) -> Vec<f64> {
        let n = values.len() as isize;
        let h = (c.window / 2) as isize;
        (0..n)
            .map(|i| {
                let mut w: Vec<f64> = (i - h..=i + h)
                    .map(|j| {
                        let k = match c.boundary {
                            Boundary::Replicate => j.max(0).min(n - 1),
                            Boundary::Reflect if j < 0 => -j,
                            Boundary::Reflect if j >= n => 2 * (n - 1) - j,
                            Boundary::Reflect => j,
                        };
                        values[k as usize]
                    })
                    .collect();
                w.sort_by(|a, b| a.partial_cmp(b).unwrap());
                w[h as usize]
            })
            .collect()
    }

    #[test]
    fn constant_is_fixed_point() {
        let out = median_filter(&[5.0; 5], &cfg(3, Boundary::Replicate)).unwrap();
        assert_eq!(out, vec![5.0; 5]);
    }

    #[test]
    fn single_spike_removed() {
        let out = median_filter(&[1.0, 1.0, 9.0, 1.0, 1.0], &cfg(3, Boundary::Replicate)).unwrap();
        assert_eq!(out, vec![1.0; 5]);
    }

    #[test]
    fn window_five_example() {
        let x = [3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0];
        let c = cfg(5, Boundary::Replicate);
        let out = median_filter(&x, &c).unwrap();
        assert_eq!(out[2], 3.0);
        assert_eq!(out, oracle(&x, &c));
        assert_eq!(out, vec![3.0, 3.0, 3.0, 4.0, 4.0, 5.0, 6.0, 6.0]);
    }

    #[test]
    fn reflect_mirrors_without_repeating_edge() {
        let x = [0.0, 10.0, 20.0];
        let out = median_filter(&x, &cfg(3, Boundary::Reflect)).unwrap();
        // windows: {10,0,10}, {0,10,20}, {10,20,10}
        assert_eq!(out, vec![10.0, 10.0, 10.0]);
        let out = median_filter(&x, &cfg(5, Boundary::Reflect)).unwrap();
        assert_eq!(out, oracle(&x, &cfg(5, Boundary::Reflect)));
    }

    #[test]
    fn errors() {
        assert_eq!(
            median_filter(&[1.0, 2.0], &cfg(4, Boundary::Replicate)).unwrap_err(),
            FilterError::EvenWindow(4)
        );
        assert_eq!(
            median_filter(&[1.0, 2.0], &cfg(5, Boundary::Replicate)).unwrap_err(),
            FilterError::WindowTooLarge { window: 5, len: 2 }
        );
        assert_eq!(
            median_filter(&[], &cfg(1, Boundary::Replicate)).unwrap_err(),
            FilterError::Empty
        );
        assert!(MedianFilterConfig::new(6, Boundary::Reflect).is_err());
    }

    #[test]
    fn largest_window_on_tiny_signals() {
        for len in 1..6usize {
            let x: Vec<f64> = (0..len).map(|i| (i * 7 % 5) as f64).collect();
            let w = if (2 * len) % 2 == 0 {
                2 * len - 1
            } else {
                2 * len
            };
            for b in [Boundary::Replicate, Boundary::Reflect] {
                let c = cfg(w, b);
                assert_eq!(median_filter(&x, &c).unwrap(), oracle(&x, &c));
            }
        }
    }

    #[test]
    fn monotone_is_fixed_with_replicate() {
        let x = [0.0, 0.0, 1.0, 2.0, 2.5, 7.0, 7.0, 8.0];
        for w in [1, 3, 5, 7] {
            assert_eq!(median_filter(&x, &cfg(w, Boundary::Replicate)).unwrap(), x);
        }
    }
}
