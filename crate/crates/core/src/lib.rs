//! Time-frequency analysis of seasonal wind-speed records.
//!
//! Daily wind speeds are averaged per calendar month across the years of a
//! record. Calm (winter) months are analysed with a continuous wavelet
//! transform and modulus-maxima discontinuity detection; agitated (summer)
//! months are median-filtered and analysed with the Stockwell transform.

pub mod cli;
pub mod filtering;
pub mod pipeline;
pub mod signal;
pub mod stockwell;
pub mod synth;
pub mod wavelet;

pub use filtering::{median_filter, Boundary, FilterError, MedianFilterConfig};
pub use pipeline::{
    classify_month, run_pipeline, AnalysisReport, Branch, PipelineConfig, PipelineError,
    WaveletChoice,
};
pub use signal::{
    agitation_index, decade_monthly_average, parse_csv, serialize_csv, series_stats,
    AveragedSeries, SeriesStats, SignalError, TimeSeries,
};
pub use stockwell::{
    inverse_s_transform, s_transform, s_transform_direct, st_magnitude, StConfig, StError,
    StSpectrum,
};
pub use synth::{synth_wind, synth_wind_with, SynthParams, WindModel};
pub use wavelet::{cwt, Scalogram, WaveletDescriptor, WaveletError, WaveletKind};
