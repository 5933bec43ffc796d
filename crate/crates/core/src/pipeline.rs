//! Seasonal routing of decade-averaged monthly series.
//!
//! Winter months go to the continuous wavelet transform and discontinuity
//! detection. Summer months are median-filtered and then S-transformed.
//! Months in neither set are routed by their agitation index.

use crate::filtering::{median_filter, FilterError, MedianFilterConfig};
use crate::signal::{
    agitation_index, decade_monthly_average, serialize_csv, AveragedSeries, SignalError, TimeSeries,
};
use crate::stockwell::{s_transform, StConfig, StError, StSpectrum};
use crate::wavelet::{
    cwt, default_scales, detect_discontinuities, OrthogonalFamily, Scalogram, WaveletDescriptor,
    WaveletError, DEFAULT_LEVEL, DEFAULT_OMEGA0,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Signal(#[from] SignalError),
    #[error(transparent)]
    Filter(#[from] FilterError),
    #[error(transparent)]
    Wavelet(#[from] WaveletError),
    #[error(transparent)]
    Stockwell(#[from] StError),
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl PipelineError {
    pub fn is_month_absent(&self) -> bool {
        matches!(self, Self::Signal(SignalError::MonthAbsent(_)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    WinterCWT,
    SummerST,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::WinterCWT => "WinterCWT",
            Self::SummerST => "SummerST",
        })
    }
}

/// Named wavelet used on the winter branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveletChoice {
    Haar,
    #[default]
    Db4,
    Sym8,
    Coif6,
    Morlet,
}

impl WaveletChoice {
    pub fn descriptor(self) -> Result<WaveletDescriptor, WaveletError> {
        match self {
            Self::Haar => WaveletDescriptor::haar(DEFAULT_LEVEL),
            Self::Db4 => WaveletDescriptor::daubechies4(DEFAULT_LEVEL),
            Self::Sym8 => WaveletDescriptor::orthogonal(OrthogonalFamily::Symlet, 8, DEFAULT_LEVEL),
            Self::Coif6 => {
                WaveletDescriptor::orthogonal(OrthogonalFamily::Coiflet, 6, DEFAULT_LEVEL)
            }
            Self::Morlet => WaveletDescriptor::morlet(DEFAULT_OMEGA0, DEFAULT_LEVEL),
        }
    }
}

impl FromStr for WaveletChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "haar" => Ok(Self::Haar),
            "db4" => Ok(Self::Db4),
            "sym8" => Ok(Self::Sym8),
            "coif6" => Ok(Self::Coif6),
            "morlet" => Ok(Self::Morlet),
            other => Err(format!(
                "unknown wavelet `{other}` (expected haar, db4, sym8, coif6 or morlet)"
            )),
        }
    }
}

impl fmt::Display for WaveletChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Haar => "haar",
            Self::Db4 => "db4",
            Self::Sym8 => "sym8",
            Self::Coif6 => "coif6",
            Self::Morlet => "morlet",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub winter_months: BTreeSet<u32>,
    pub summer_months: BTreeSet<u32>,
    pub winter_wavelet: WaveletChoice,
    pub filter: MedianFilterConfig,
    pub st: StConfig,
    pub agitation_threshold: f64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            winter_months: [12, 1, 2].into(),
            summer_months: [4, 5, 6].into(),
            winter_wavelet: WaveletChoice::Db4,
            filter: MedianFilterConfig::default(),
            st: StConfig::default(),
            agitation_threshold: 0.8,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<(), PipelineError> {
        if let Some(m) = self.winter_months.intersection(&self.summer_months).next() {
            return Err(PipelineError::Config(format!(
                "month {m} is in both the winter and summer sets"
            )));
        }
        if let Some(m) = self
            .winter_months
            .iter()
            .chain(&self.summer_months)
            .find(|m| !(1..=12).contains(*m))
        {
            return Err(PipelineError::Config(format!("invalid month {m}")));
        }
        if self.agitation_threshold.is_nan() || self.agitation_threshold <= 0.0 {
            return Err(PipelineError::Config(format!(
                "agitation threshold must be positive, got {}",
                self.agitation_threshold
            )));
        }
        Ok(())
    }
}

pub fn classify_month(month: u32, agitation: f64, cfg: &PipelineConfig) -> Branch {
    if cfg.winter_months.contains(&month) {
        Branch::WinterCWT
    } else if cfg.summer_months.contains(&month) || agitation > cfg.agitation_threshold {
        Branch::SummerST
    } else {
        Branch::WinterCWT
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub config: PipelineConfig,
    /// SHA-256 of the input in canonical CSV form.
    pub input_digest: String,
    pub input_label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub month: u32,
    pub branch_taken: Branch,
    pub agitation: f64,
    pub input_series: AveragedSeries,
    pub filtered_series: Option<Vec<f64>>,
    pub scalogram: Option<Scalogram>,
    pub st_spectrum: Option<StSpectrum>,
    pub discontinuities: Option<Vec<usize>>,
    pub provenance: Provenance,
}

impl AnalysisReport {
    /// Branch/product consistency.
    pub fn shape_is_valid(&self) -> bool {
        match self.branch_taken {
            Branch::WinterCWT => {
                self.scalogram.is_some()
                    && self.discontinuities.is_some()
                    && self.st_spectrum.is_none()
                    && self.filtered_series.is_none()
            }
            Branch::SummerST => {
                self.filtered_series.is_some()
                    && self.st_spectrum.is_some()
                    && self.scalogram.is_none()
            }
        }
    }
}

pub fn input_digest(ts: &TimeSeries) -> String {
    hex::encode(Sha256::digest(serialize_csv(ts).as_bytes()))
}

pub fn run_pipeline(
    ts: &TimeSeries,
    month: u32,
    cfg: &PipelineConfig,
) -> Result<AnalysisReport, PipelineError> {
    cfg.validate()?;
    let averaged = decade_monthly_average(ts, month)?;
    let agitation = agitation_index(&averaged.values)?;
    let branch = classify_month(month, agitation, cfg);

    let mut report = AnalysisReport {
        month,
        branch_taken: branch,
        agitation,
        input_series: averaged,
        filtered_series: None,
        scalogram: None,
        st_spectrum: None,
        discontinuities: None,
        provenance: Provenance {
            config: cfg.clone(),
            input_digest: input_digest(ts),
            input_label: ts.label.clone(),
        },
    };

    let values = &report.input_series.values;
    match branch {
        Branch::WinterCWT => {
            let wavelet = cfg.winter_wavelet.descriptor()?;
            let scalogram = cwt(values, &wavelet, &default_scales(values.len()))?;
            report.discontinuities = Some(detect_discontinuities(values, &wavelet)?);
            report.scalogram = Some(scalogram);
        }
        Branch::SummerST => {
            let filtered = median_filter(values, &cfg.filter)?;
            report.st_spectrum = Some(s_transform(&filtered, &cfg.st)?);
            report.filtered_series = Some(filtered);
        }
    }
    Ok(report)
}
