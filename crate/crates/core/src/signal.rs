//! Wind-speed time series: ingestion, decade-wise monthly averaging and
//! summary statistics.
//!
//! The interchange format is a two-column CSV with a `date,speed_mps`
//! header, one sample per calendar day.

use chrono::{Datelike, Duration, NaiveDate};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

pub const CSV_HEADER: &str = "date,speed_mps";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SignalError {
    #[error("missing `{CSV_HEADER}` header line")]
    MissingHeader,
    #[error("no data rows")]
    NoRecords,
    #[error("line {line}: cannot parse row `{content}`")]
    UnparsableRow { line: usize, content: String },
    #[error("negative wind speed {value} on {date}")]
    NegativeSpeed { date: NaiveDate, value: f64 },
    #[error("samples are not uniformly spaced: {prev} followed by {next}")]
    NonUniformSpacing { prev: NaiveDate, next: NaiveDate },
    #[error("non-finite sample at index {index}")]
    NonFinite { index: usize },
    #[error("timestamps and values differ in length ({timestamps} vs {values})")]
    LengthMismatch { timestamps: usize, values: usize },
    #[error("month {0} has no samples in the series")]
    MonthAbsent(u32),
    #[error("invalid month {0}")]
    InvalidMonth(u32),
    #[error("sequence too short: need at least {needed}, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("empty sequence")]
    Empty,
}

/// Uniformly sampled, non-negative wind-speed record with daily timestamps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    timestamps: Vec<NaiveDate>,
    values: Vec<f64>,
    sample_interval_days: i64,
    pub label: String,
}

impl TimeSeries {
    /// Builds a daily series, checking every invariant.
    pub fn new(
        timestamps: Vec<NaiveDate>,
        values: Vec<f64>,
        label: impl Into<String>,
    ) -> Result<Self, SignalError> {
        if timestamps.len() != values.len() {
            return Err(SignalError::LengthMismatch {
                timestamps: timestamps.len(),
                values: values.len(),
            });
        }
        if values.is_empty() {
            return Err(SignalError::NoRecords);
        }
        for (i, (&date, &v)) in timestamps.iter().zip(&values).enumerate() {
            if !v.is_finite() {
                return Err(SignalError::NonFinite { index: i });
            }
            if v < 0.0 {
                return Err(SignalError::NegativeSpeed { date, value: v });
            }
        }
        for w in timestamps.windows(2) {
            if w[1] - w[0] != Duration::days(1) {
                return Err(SignalError::NonUniformSpacing {
                    prev: w[0],
                    next: w[1],
                });
            }
        }
        Ok(Self {
            timestamps,
            values,
            sample_interval_days: 1,
            label: label.into(),
        })
    }

    /// Consecutive daily samples starting at `start`.
    pub fn from_start(
        start: NaiveDate,
        values: Vec<f64>,
        label: impl Into<String>,
    ) -> Result<Self, SignalError> {
        let timestamps = (0..values.len())
            .map(|i| start + Duration::days(i as i64))
            .collect();
        Self::new(timestamps, values, label)
    }

    pub fn timestamps(&self) -> &[NaiveDate] {
        &self.timestamps
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sample_interval(&self) -> Duration {
        Duration::days(self.sample_interval_days)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

/// Per-day-of-month mean over all years of a record.
///
/// Days with no contributing year are dropped, so `day_index` may have
/// gaps when the record starts or ends inside the month.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AveragedSeries {
    pub month: u32,
    pub day_index: Vec<u32>,
    pub values: Vec<f64>,
    pub years_used: Vec<u32>,
    /// Number of distinct years with at least one sample in the month.
    pub total_years: u32,
    pub source_span: (i32, i32),
}

impl AveragedSeries {
    /// Days averaged over fewer years than the record holds (e.g. 29 Feb).
    pub fn partial_days(&self) -> Vec<u32> {
        self.day_index
            .iter()
            .zip(&self.years_used)
            .filter(|(_, &n)| n < self.total_years)
            .map(|(&d, _)| d)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesStats {
    pub mean: f64,
    pub std_dev: f64,
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

/// Parses the `date,speed_mps` CSV format. Rows are sorted by date before
/// the uniform-spacing check, so out-of-order input is accepted.
pub fn parse_csv(text: &str) -> Result<TimeSeries, SignalError> {
    let mut lines = text.lines().enumerate();
    let header = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .map(|(_, l)| l.trim().trim_start_matches('\u{feff}'));
    if header != Some(CSV_HEADER) {
        return Err(SignalError::MissingHeader);
    }

    let mut rows = Vec::new();
    for (idx, raw) in lines {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let bad = || SignalError::UnparsableRow {
            line: idx + 1,
            content: line.to_string(),
        };
        let (date, speed) = line.split_once(',').ok_or_else(bad)?;
        let date = NaiveDate::parse_from_str(date.trim(), "%Y-%m-%d").map_err(|_| bad())?;
        let speed: f64 = speed.trim().parse().map_err(|_| bad())?;
        if !speed.is_finite() {
            return Err(bad());
        }
        if speed < 0.0 {
            return Err(SignalError::NegativeSpeed { date, value: speed });
        }
        rows.push((date, speed));
    }
    if rows.is_empty() {
        return Err(SignalError::NoRecords);
    }
    rows.sort_by_key(|&(d, _)| d);
    let (timestamps, values) = rows.into_iter().unzip();
    TimeSeries::new(timestamps, values, "")
}

/// Writes the canonical CSV. Speeds use the shortest decimal form that
/// parses back to the identical `f64`.
pub fn serialize_csv(ts: &TimeSeries) -> String {
    let mut out = String::with_capacity(ts.len() * 20 + CSV_HEADER.len() + 1);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for (d, v) in ts.timestamps.iter().zip(&ts.values) {
        out.push_str(&format!("{},{}\n", d.format("%Y-%m-%d"), v));
    }
    out
}

pub fn days_in_month(year: i32, month: u32) -> u32 {
    let (ny, nm) = if month == 12 {
        (year + 1, 1)
    } else {
        (year, month + 1)
    };
    let first_next = NaiveDate::from_ymd_opt(ny, nm, 1).expect("valid month");
    first_next.pred_opt().expect("has predecessor").day()
}

/// Averages the requested calendar month across all years in `ts`, day by
/// day. A missing day in one year only shrinks that day's `years_used`.
pub fn decade_monthly_average(ts: &TimeSeries, month: u32) -> Result<AveragedSeries, SignalError> {
    if !(1..=12).contains(&month) {
        return Err(SignalError::InvalidMonth(month));
    }
    // day -> year -> value; BTreeMaps fix the summation order so the result
    // does not depend on how the years were laid out in the input.
    let mut by_day: BTreeMap<u32, BTreeMap<i32, f64>> = BTreeMap::new();
    let mut years = std::collections::BTreeSet::new();
    for (d, &v) in ts.timestamps.iter().zip(&ts.values) {
        if d.month() == month {
            by_day.entry(d.day()).or_default().insert(d.year(), v);
            years.insert(d.year());
        }
    }
    if years.is_empty() {
        return Err(SignalError::MonthAbsent(month));
    }

    let mut out = AveragedSeries {
        month,
        day_index: Vec::new(),
        values: Vec::new(),
        years_used: Vec::new(),
        total_years: years.len() as u32,
        source_span: (*years.first().unwrap(), *years.last().unwrap()),
    };
    for (day, per_year) in by_day {
        let sum: f64 = per_year.values().sum();
        out.day_index.push(day);
        out.values.push(sum / per_year.len() as f64);
        out.years_used.push(per_year.len() as u32);
    }
    Ok(out)
}

/// RMS of first differences over the RMS of the centred signal.
///
/// Dimensionless and invariant under `x -> a*x + b` for `a > 0`. White
/// noise sits near sqrt(2); smooth signals approach 0.
pub fn agitation_index(values: &[f64]) -> Result<f64, SignalError> {
    if values.len() < 2 {
        return Err(SignalError::TooShort {
            needed: 2,
            got: values.len(),
        });
    }
    let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak > 0.0 && !(1e-150..=1e150).contains(&peak) {
        // Squares would under- or overflow; the ratio is scale-free.
        let scaled: Vec<f64> = values.iter().map(|v| v / peak).collect();
        return agitation_index(&scaled);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let centred = (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
    let diffs = (values
        .windows(2)
        .map(|w| (w[1] - w[0]).powi(2))
        .sum::<f64>()
        / (n - 1.0))
        .sqrt();
    // Differences of equal samples are exactly zero, so constant input
    // never reaches the division. No additive guard: it would break the
    // exact scale invariance.
    if diffs == 0.0 {
        return Ok(0.0);
    }
    Ok(diffs / centred)
}

/// Population statistics (divide by n).
pub fn series_stats(values: &[f64]) -> Result<SeriesStats, SignalError> {
    if values.is_empty() {
        return Err(SignalError::Empty);
    }
    let n = values.len();
    let mut mean = 0.0;
    let mut m2 = 0.0;
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    // Welford keeps the variance stable for long, offset-heavy records.
    for (i, &v) in values.iter().enumerate() {
        let delta = v - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (v - mean);
        min = min.min(v);
        max = max.max(v);
    }
    Ok(SeriesStats {
        mean: mean.clamp(min, max),
        std_dev: (m2 / n as f64).max(0.0).sqrt(),
        min,
        max,
        n,
    })
}
