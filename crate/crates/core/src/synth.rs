//! Seeded synthetic wind-speed records.
//!
//! Daily samples starting 1 January 2001: a 5 m/s baseline plus an annual
//! sinusoid of 2 m/s amplitude, with model-dependent noise on top.

use crate::signal::TimeSeries;
use chrono::{Datelike, NaiveDate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

pub const MAX_YEARS: u32 = 50;
pub const FIRST_YEAR: i32 = 2001;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum WindModel {
    /// Low-amplitude Gaussian noise.
    Calm,
    /// Heavy Gaussian noise plus sporadic positive gusts.
    Agitated,
    /// Calm noise plus a level shift of `magnitude` from sample `day` on.
    Step { day: usize, magnitude: f64 },
}

impl fmt::Display for WindModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Calm => f.write_str("calm"),
            Self::Agitated => f.write_str("agitated"),
            Self::Step { day, magnitude } => write!(f, "step:{day}:{magnitude}"),
        }
    }
}

impl FromStr for WindModel {
    type Err = String;

    /// `calm`, `agitated` or `step:DAY:MAG`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "calm" => Ok(Self::Calm),
            "agitated" => Ok(Self::Agitated),
            _ => {
                let mut parts = s.split(':');
                match (parts.next(), parts.next(), parts.next(), parts.next()) {
                    (Some("step"), Some(day), Some(mag), None) => {
                        let day = day.parse().map_err(|_| format!("bad step day `{day}`"))?;
                        let magnitude: f64 = mag
                            .parse()
                            .map_err(|_| format!("bad step magnitude `{mag}`"))?;
                        if !magnitude.is_finite() {
                            return Err(format!("bad step magnitude `{mag}`"));
                        }
                        Ok(Self::Step { day, magnitude })
                    }
                    _ => Err(format!(
                        "unknown model `{s}` (expected calm, agitated or step:DAY:MAG)"
                    )),
                }
            }
        }
    }
}

/// Generator constants, m/s unless noted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthParams {
    pub baseline: f64,
    pub annual_amplitude: f64,
    pub calm_sigma: f64,
    pub agitated_sigma: f64,
    /// Per-day gust probability in the agitated model.
    pub spike_probability: f64,
    pub spike_min: f64,
    pub spike_max: f64,
}

impl Default for SynthParams {
    fn default() -> Self {
        Self {
            baseline: 5.0,
            annual_amplitude: 2.0,
            calm_sigma: 0.2,
            agitated_sigma: 1.5,
            spike_probability: 0.05,
            spike_min: 3.0,
            spike_max: 8.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SynthError {
    #[error("years must be in 1..={MAX_YEARS}, got {0}")]
    InvalidYears(u32),
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
}

pub fn synth_wind(years: u32, model: WindModel, seed: u64) -> Result<TimeSeries, SynthError> {
    synth_wind_with(years, model, seed, &SynthParams::default())
}

/// Same seed and parameters always give the same series.
pub fn synth_wind_with(
    years: u32,
    model: WindModel,
    seed: u64,
    params: &SynthParams,
) -> Result<TimeSeries, SynthError> {
    if !(1..=MAX_YEARS).contains(&years) {
        return Err(SynthError::InvalidYears(years));
    }
    let sigma = match model {
        WindModel::Agitated => params.agitated_sigma,
        _ => params.calm_sigma,
    };
    let noise = Normal::new(0.0, sigma).map_err(|e| SynthError::InvalidParams(e.to_string()))?;
    if params.spike_min.is_nan() || params.spike_max.is_nan() || params.spike_min > params.spike_max
    {
        return Err(SynthError::InvalidParams("spike_min > spike_max".into()));
    }

    let start = NaiveDate::from_ymd_opt(FIRST_YEAR, 1, 1).unwrap();
    let end = NaiveDate::from_ymd_opt(FIRST_YEAR + years as i32, 1, 1).unwrap();
    let n = (end - start).num_days() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let values = start
        .iter_days()
        .take(n)
        .enumerate()
        .map(|(i, date)| {
            let phase = 2.0 * PI * (date.ordinal0() as f64) / 365.25;
            let mut v = params.baseline + params.annual_amplitude * phase.sin();
            v += noise.sample(&mut rng);
            match model {
                WindModel::Calm => {}
                WindModel::Agitated => {
                    // Draw both numbers every day so the stream stays aligned.
                    let gust: f64 = rng.random();
                    let size = rng.random_range(params.spike_min..=params.spike_max);
                    if gust < params.spike_probability {
                        v += size;
                    }
                }
                WindModel::Step { day, magnitude } => {
                    if i >= day {
                        v += magnitude;
                    }
                }
            }
            v.max(0.0)
        })
        .collect();

    Ok(
        TimeSeries::from_start(start, values, format!("synthetic {model}, seed {seed}"))
            .expect("generator output satisfies the series invariants"),
    )
}
