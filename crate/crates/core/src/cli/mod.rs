//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O or data failure, 2 invalid flags or
//! configuration, 3 requested month absent from the record.

pub mod output;

use crate::filtering::{median_filter, Boundary, FilterError, MedianFilterConfig};
use crate::pipeline::{
    run_pipeline, AnalysisReport, Branch, PipelineConfig, PipelineError, WaveletChoice,
};
use crate::signal::{parse_csv, serialize_csv, SignalError, TimeSeries, CSV_HEADER};
use crate::stockwell::{s_transform, s_transform_direct, st_magnitude, StConfig, StError};
use crate::synth::{synth_wind, WindModel, MAX_YEARS};
use crate::wavelet::{cwt, default_scales, WaveletError};
use clap::{Args, Parser, Subcommand};
use output::{column, matrix_csv, pgm, write_atomic};
use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MONTH_ABSENT: i32 = 3;

pub const REPORT_FILE: &str = "report.json";
pub const SCALOGRAM_CSV: &str = "scalogram.csv";
pub const SCALOGRAM_PGM: &str = "scalogram.pgm";
pub const FILTERED_CSV: &str = "filtered.csv";
pub const ST_CSV: &str = "st_magnitude.csv";
pub const ST_PGM: &str = "st_magnitude.pgm";

#[derive(Debug, Parser)]
#[command(
    name = "windtf",
    version,
    about = "Time-frequency analysis of wind-speed records"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a seeded synthetic daily record.
    Synth(SynthArgs),
    /// Average one month over all years and run the seasonal branch.
    Analyze(AnalyzeArgs),
    /// S-transform magnitude of a series.
    St(StArgs),
    /// Continuous wavelet transform of a series.
    Cwt(CwtArgs),
    /// Sliding-window median filter.
    Medfilt(MedfiltArgs),
}

#[derive(Debug, Args)]
struct SynthArgs {
    /// Number of calendar years from 2001.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=MAX_YEARS as i64))]
    years: u32,
    /// calm, agitated or step:DAY:MAG
    #[arg(long)]
    model: WindModel,
    #[arg(long)]
    seed: u64,
    /// Output CSV (date,speed_mps).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Daily record in date,speed_mps CSV form.
    #[arg(long = "in")]
    input: PathBuf,
    /// Calendar month to average over all years (1-12).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=12))]
    month: u32,
    /// Winter-branch wavelet: haar, db4, sym8, coif6 or morlet.
    #[arg(long, default_value_t = WaveletChoice::Db4)]
    wavelet: WaveletChoice,
    /// Odd median window for the summer branch.
    #[arg(long, default_value_t = 5)]
    window: usize,
    /// Median boundary policy: replicate or reflect.
    #[arg(long, default_value_t = Boundary::Replicate)]
    boundary: Boundary,
    /// S-transform Gaussian width factor, 0.2 to 5.
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// Comma-separated winter month numbers.
    #[arg(long, value_delimiter = ',', default_values_t = [12u32, 1, 2])]
    winter_months: Vec<u32>,
    /// Comma-separated summer month numbers.
    #[arg(long, value_delimiter = ',', default_values_t = [4u32, 5, 6])]
    summer_months: Vec<u32>,
    /// Agitation above which other months take the summer branch.
    #[arg(long, default_value_t = 0.8)]
    threshold: f64,
    /// Directory for report.json and the branch's matrices and heatmaps.
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Debug, Args)]
struct StArgs {
    /// Dated CSV or a single numeric column.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// Magnitude matrix CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Magnitude heatmap (binary PGM).
    #[arg(long)]
    heatmap: Option<PathBuf>,
    /// Compare against the direct evaluation and print the largest deviation.
    #[arg(long)]
    verify: bool,
}

#[derive(Debug, Args)]
struct CwtArgs {
    /// Dated CSV or a single numeric column.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = WaveletChoice::Db4)]
    wavelet: WaveletChoice,
    /// Comma-separated scales; defaults to 8 voices per octave from 2.
    #[arg(long, value_delimiter = ',')]
    scales: Option<Vec<f64>>,
    /// Coefficient matrix CSV (signed for real wavelets, modulus for Morlet).
    #[arg(long)]
    out: PathBuf,
    /// Coefficient heatmap (binary PGM).
    #[arg(long)]
    heatmap: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MedfiltArgs {
    /// Dated CSV or a single numeric column.
    #[arg(long = "in")]
    input: PathBuf,
    /// Odd window length.
    #[arg(long, default_value_t = 5)]
    window: usize,
    /// replicate or reflect.
    #[arg(long, default_value_t = Boundary::Replicate)]
    boundary: Boundary,
    /// Filtered series, in the same form as the input.
    #[arg(long)]
    out: PathBuf,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl fmt::Display) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    fn failure(message: impl fmt::Display) -> Self {
        Self {
            code: EXIT_FAILURE,
            message: message.to_string(),
        }
    }

    fn io(path: &Path, err: std::io::Error) -> Self {
        Self::failure(format!("{}: {err}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        let code = match &e {
            PipelineError::Signal(SignalError::MonthAbsent(_)) => EXIT_MONTH_ABSENT,
            PipelineError::Config(_) | PipelineError::Signal(SignalError::InvalidMonth(_)) => {
                EXIT_USAGE
            }
            PipelineError::Filter(f) => return f.clone().into(),
            PipelineError::Stockwell(s) => return s.clone().into(),
            PipelineError::Wavelet(w) => return w.clone().into(),
            PipelineError::Signal(_) => EXIT_FAILURE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<FilterError> for CliError {
    fn from(e: FilterError) -> Self {
        match e {
            FilterError::Empty => Self::failure(e),
            FilterError::EvenWindow(_) | FilterError::WindowTooLarge { .. } => Self::usage(e),
        }
    }
}

impl From<StError> for CliError {
    fn from(e: StError) -> Self {
        match e {
            StError::InvalidGamma(_) | StError::OracleSizeExceeded(_) => Self::usage(e),
            _ => Self::failure(e),
        }
    }
}

impl From<WaveletError> for CliError {
    fn from(e: WaveletError) -> Self {
        match e {
            WaveletError::ScaleOutOfRange { .. } | WaveletError::NoScales => Self::usage(e),
            _ => Self::failure(e),
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code. Errors go to standard error.
pub fn run_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}

pub fn run() -> i32 {
    run_with_args(std::env::args_os())
}

fn dispatch(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Synth(a) => cmd_synth(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::St(a) => cmd_st(a),
        Command::Cwt(a) => cmd_cwt(a),
        Command::Medfilt(a) => cmd_medfilt(a),
    }
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    write_atomic(path, bytes).map_err(|e| CliError::io(path, e))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Input accepted by the stage commands: either the dated CSV or a bare
/// column of numbers (an optional non-numeric first line is a header).
enum SeriesInput {
    Dated(TimeSeries),
    Column(Vec<f64>),
}

impl SeriesInput {
    fn values(&self) -> &[f64] {
        match self {
            Self::Dated(ts) => ts.values(),
            Self::Column(v) => v,
        }
    }
}

fn load_series(path: &Path) -> Result<SeriesInput, CliError> {
    let text = read(path)?;
    let context = |e: &dyn fmt::Display| CliError::failure(format!("{}: {e}", path.display()));
    let first = text.lines().map(str::trim).find(|l| !l.is_empty());
    if first.map(|l| l.trim_start_matches('\u{feff}')) == Some(CSV_HEADER) {
        return parse_csv(&text)
            .map(SeriesInput::Dated)
            .map_err(|e| context(&e));
    }

    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim().trim_start_matches('\u{feff}');
        if line.is_empty() {
            continue;
        }
        match line.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            Ok(_) => return Err(context(&format!("line {}: non-finite value", i + 1))),
            // a leading label line is allowed
            Err(_) if values.is_empty() && i == first_line_index(&text) => {}
            Err(_) => return Err(context(&format!("line {}: cannot parse `{line}`", i + 1))),
        }
    }
    if values.is_empty() {
        return Err(context(&"no data rows"));
    }
    Ok(SeriesInput::Column(values))
}

fn first_line_index(text: &str) -> usize {
    text.lines().position(|l| !l.trim().is_empty()).unwrap_or(0)
}

fn load_dated(path: &Path) -> Result<TimeSeries, CliError> {
    let text = read(path)?;
    let mut ts =
        parse_csv(&text).map_err(|e| CliError::failure(format!("{}: {e}", path.display())))?;
    ts.label = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(ts)
}

fn cmd_synth(a: SynthArgs) -> Result<(), CliError> {
    let ts = synth_wind(a.years, a.model, a.seed).map_err(CliError::usage)?;
    write(&a.out, serialize_csv(&ts).as_bytes())
}

fn analyze_config(a: &AnalyzeArgs) -> Result<PipelineConfig, CliError> {
    let cfg = PipelineConfig {
        winter_months: a.winter_months.iter().copied().collect(),
        summer_months: a.summer_months.iter().copied().collect(),
        winter_wavelet: a.wavelet,
        filter: MedianFilterConfig::new(a.window, a.boundary)?,
        st: StConfig::new(a.gamma)?,
        agitation_threshold: a.threshold,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<(), CliError> {
    let cfg = analyze_config(&a)?;
    let ts = load_dated(&a.input)?;
    let report = run_pipeline(&ts, a.month, &cfg)?;

    fs::create_dir_all(&a.out_dir).map_err(|e| CliError::io(&a.out_dir, e))?;
    write_bundle(&report, &a.out_dir)?;
    println!("branch: {}", report.branch_taken);
    println!("agitation: {}", report.agitation);
    if let Some(d) = &report.discontinuities {
        let days: Vec<String> = d
            .iter()
            .map(|&i| report.input_series.day_index[i].to_string())
            .collect();
        println!("discontinuities (day of month): [{}]", days.join(", "));
    }
    Ok(())
}

fn write_bundle(report: &AnalysisReport, dir: &Path) -> Result<(), CliError> {
    let mut json = serde_json::to_string_pretty(report).map_err(CliError::failure)?;
    json.push('\n');
    write(&dir.join(REPORT_FILE), json.as_bytes())?;

    match report.branch_taken {
        Branch::WinterCWT => {
            let sc = report
                .scalogram
                .as_ref()
                .expect("winter report has a scalogram");
            write(
                &dir.join(SCALOGRAM_CSV),
                matrix_csv("scale", &sc.scales, &sc.coefficients).as_bytes(),
            )?;
            write(&dir.join(SCALOGRAM_PGM), &pgm(&sc.coefficients))?;
        }
        Branch::SummerST => {
            let filtered = report
                .filtered_series
                .as_ref()
                .expect("summer report is filtered");
            let mut text = String::from("day,speed_mps\n");
            for (d, v) in report.input_series.day_index.iter().zip(filtered) {
                text.push_str(&format!("{d},{v}\n"));
            }
            write(&dir.join(FILTERED_CSV), text.as_bytes())?;

            let spec = report
                .st_spectrum
                .as_ref()
                .expect("summer report has a spectrum");
            let mag = st_magnitude(spec);
            write(
                &dir.join(ST_CSV),
                matrix_csv("frequency", &spec.frequencies(), &mag).as_bytes(),
            )?;
            write(&dir.join(ST_PGM), &pgm(&mag))?;
        }
    }
    Ok(())
}

fn cmd_st(a: StArgs) -> Result<(), CliError> {
    let cfg = StConfig::new(a.gamma)?;
    let input = load_series(&a.input)?;
    let values = input.values();
    let spec = s_transform(values, &cfg)?;

    if a.verify {
        let direct = s_transform_direct(values, &cfg)?;
        let dev = spec
            .coefficients
            .iter()
            .flatten()
            .zip(direct.coefficients.iter().flatten())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        println!("max deviation: {dev:e}");
    }

    let mag = st_magnitude(&spec);
    if let Some(out) = &a.out {
        write(
            out,
            matrix_csv("frequency", &spec.frequencies(), &mag).as_bytes(),
        )?;
    }
    if let Some(path) = &a.heatmap {
        write(path, &pgm(&mag))?;
    }
    Ok(())
}

fn cmd_cwt(a: CwtArgs) -> Result<(), CliError> {
    let input = load_series(&a.input)?;
    let values = input.values();
    let wavelet = a.wavelet.descriptor()?;
    let scales = a
        .scales
        .clone()
        .unwrap_or_else(|| default_scales(values.len()));
    let sc = cwt(values, &wavelet, &scales)?;
    write(
        &a.out,
        matrix_csv("scale", &sc.scales, &sc.coefficients).as_bytes(),
    )?;
    if let Some(path) = &a.heatmap {
        write(path, &pgm(&sc.coefficients))?;
    }
    Ok(())
}

fn cmd_medfilt(a: MedfiltArgs) -> Result<(), CliError> {
    let cfg = MedianFilterConfig::new(a.window, a.boundary)?;
    let input = load_series(&a.input)?;
    let filtered = median_filter(input.values(), &cfg)?;
    let text = match &input {
        SeriesInput::Dated(ts) => {
            let out = TimeSeries::new(ts.timestamps().to_vec(), filtered, ts.label.clone())
                .map_err(CliError::failure)?;
            serialize_csv(&out)
        }
        SeriesInput::Column(_) => column(&filtered),
    };
    write(&a.out, text.as_bytes())
}
