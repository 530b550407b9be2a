use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use gstt::fractional::{compare_experiment, ComparisonRow};
use gstt::grey::{ago, fit_with, predict, Background, SeriesSample};
use gstt::TimeScale;

use crate::error::CliError;
use crate::input::{default_lattice, parse_csv, snap_to};
use crate::svg::comparison_chart;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    Fit,
    Forecast,
    Integrate,
    FracCompare,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub subcommand: Subcommand,
    pub input_path: Option<PathBuf>,
    pub timescale_spec: Option<String>,
    pub background: Background,
    pub orders: Vec<f64>,
    pub dt: f64,
    pub t_max: f64,
    pub horizon: usize,
    pub output_path: Option<PathBuf>,
    /// Where to write the SVG chart for `frac-compare`; none means no chart.
    pub svg_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            subcommand: Subcommand::Fit,
            input_path: None,
            timescale_spec: None,
            background: Background::default(),
            orders: vec![0.4, 0.3],
            dt: 1.0,
            t_max: 15.0,
            horizon: 0,
            output_path: None,
            svg_path: None,
        }
    }
}

/// A file to be written once every output of a command has been computed.
struct Artifact {
    path: PathBuf,
    contents: String,
}

/// Runs one command. Returns what should go to standard output; files are
/// written only after all results are computed, each through a temporary
/// file in the destination directory, so a failing run leaves none behind.
pub fn run(config: &RunConfig) -> Result<String, CliError> {
    let (stdout, artifacts) = match config.subcommand {
        Subcommand::Fit => (fit_report(config)?, Vec::new()),
        Subcommand::Forecast => route(config, forecast_csv(config)?),
        Subcommand::Integrate => route(config, integrate_csv(config)?),
        Subcommand::FracCompare => {
            let rows = frac_rows(config)?;
            let (stdout, mut artifacts) = route(config, comparison_csv(&rows));
            if let Some(path) = &config.svg_path {
                artifacts.push(Artifact {
                    path: path.clone(),
                    contents: comparison_chart(&rows),
                });
            }
            (stdout, artifacts)
        }
    };
    write_all(&artifacts)?;
    Ok(stdout)
}

fn route(config: &RunConfig, csv: String) -> (String, Vec<Artifact>) {
    match &config.output_path {
        Some(path) => (
            String::new(),
            vec![Artifact {
                path: path.clone(),
                contents: csv,
            }],
        ),
        None => (csv, Vec::new()),
    }
}

fn write_all(artifacts: &[Artifact]) -> Result<(), CliError> {
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CliError::Io { path, source }
    };
    let mut staged = Vec::with_capacity(artifacts.len());
    for art in artifacts {
        let dir = match art.path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(&art.path))?;
        tmp.write_all(art.contents.as_bytes()).map_err(io_err(&art.path))?;
        staged.push((tmp, &art.path));
    }
    for (tmp, path) in staged {
        tmp.persist(path).map_err(|e| CliError::Io {
            path: path.clone(),
            source: e.error,
        })?;
    }
    Ok(())
}

fn load(config: &RunConfig, extra_lattice: usize) -> Result<(Vec<SeriesSample>, TimeScale), CliError> {
    let path = config
        .input_path
        .as_deref()
        .ok_or_else(|| CliError::Usage("--input is required".into()))?;
    let raw = parse_csv(path)?;
    let ts = match &config.timescale_spec {
        Some(spec) => spec.parse::<TimeScale>()?,
        None => default_lattice(&raw, extra_lattice)?,
    };
    Ok((snap_to(&raw, &ts)?, ts))
}

fn fit_report(config: &RunConfig) -> Result<String, CliError> {
    let (samples, ts) = load(config, 0)?;
    let params = fit_with(&samples, &ts, config.background)?;
    let report = predict(&params, &ts, &samples, &[])?;
    let metrics = report.metrics.ok_or(gstt::Error::EmptyInput)?;
    let mut out = String::new();
    let _ = writeln!(out, "a={}", params.a);
    let _ = writeln!(out, "b={}", params.b);
    let _ = writeln!(out, "residual_norm={}", params.residual_norm);
    let _ = writeln!(out, "mape={}", metrics.mape);
    let _ = writeln!(out, "rmse={}", metrics.rmse);
    Ok(out)
}

/// Forecast times continue the spacing of the last two samples.
fn horizon_times(samples: &[SeriesSample], ts: &TimeScale, horizon: usize) -> Result<Vec<f64>, CliError> {
    if horizon == 0 {
        return Ok(Vec::new());
    }
    let n = samples.len();
    let last = samples[n - 1].t;
    let step = if n >= 2 { last - samples[n - 2].t } else { 1.0 };
    (1..=horizon)
        .map(|k| Ok(ts.snap(last + k as f64 * step)?))
        .collect()
}

fn forecast_csv(config: &RunConfig) -> Result<String, CliError> {
    let (samples, ts) = load(config, config.horizon)?;
    let params = fit_with(&samples, &ts, config.background)?;
    let horizon = horizon_times(&samples, &ts, config.horizon)?;
    let report = predict(&params, &ts, &samples, &horizon)?;
    let mut out = String::from("t,x_hat\n");
    for s in report.fitted.iter().chain(&report.predicted) {
        let _ = writeln!(out, "{},{}", s.t, s.x);
    }
    Ok(out)
}

fn integrate_csv(config: &RunConfig) -> Result<String, CliError> {
    let (samples, ts) = load(config, 0)?;
    let acc = ago(&samples, &ts)?;
    let mut out = String::from("t,y\n");
    for s in acc.samples() {
        let _ = writeln!(out, "{},{}", s.t, s.x);
    }
    Ok(out)
}

fn frac_rows(config: &RunConfig) -> Result<Vec<ComparisonRow>, CliError> {
    if config.orders.iter().any(|&r| !(r > 0.0)) {
        return Err(gstt::Error::Domain("fractional orders must be positive".into()).into());
    }
    Ok(compare_experiment(&config.orders, config.t_max, config.dt)?)
}

pub fn comparison_csv(rows: &[ComparisonRow]) -> String {
    let mut out = String::from("order,t,analytic,rl_numeric,fago\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{},{}", r.order, r.t, r.analytic, r.rl_numeric, r.fago);
    }
    out
}
