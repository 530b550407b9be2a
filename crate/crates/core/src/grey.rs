//! GM(1,1) on a time scale: accumulation, least-squares estimation of the
//! dynamic equation `y^Delta + a y = b`, closed-form response through the
//! time-scale exponential, and restoration of the original series.
//!
//! Accumulation follows the classical grey convention on every scale:
//! `y(t0) = x(t0)`, a scattered step into `t` adds `nu(t) x(t)` (so on the
//! integers `y(t) = x(t0) + sum_{t0 < tau <= t} x(tau)`), and dense stretches
//! add the trapezoid integral of `x`. The sample sitting at `t0` or at a
//! left-scattered point is consumed by the anchor or the jump, so the dense
//! integrand starts from its right limit there.

use crate::error::{Error, Result};
use crate::exponential::{ts_exponential, REGRESSIVITY_TOL};
use crate::function::TsFunction;
use crate::timescale::TimeScale;

/// Minimum number of samples accepted by [`fit`].
pub const MIN_FIT_SAMPLES: usize = 4;

/// `|a|` below this selects the linear (a = 0) response.
pub const DEGENERATE_A: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSample {
    pub t: f64,
    pub x: f64,
}

impl SeriesSample {
    pub fn new(t: f64, x: f64) -> Self {
        Self { t, x }
    }
}

/// Background value paired with `y^Delta` in the regression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Background {
    /// `z(t) = y(t)`: the left side of the dynamic equation itself. Data
    /// generated by the model is recovered exactly on scattered points.
    #[default]
    Point,
    /// `z(t) = (y(t) + y(sigma(t))) / 2` at right-scattered points, `y(t)`
    /// at right-dense points. On the integers this is the textbook GM(1,1)
    /// estimator.
    Trapezoid,
}

/// Accumulated series on the sampled stretch of a time scale.
#[derive(Debug, Clone, PartialEq)]
pub struct AgoSeries {
    x: TsFunction,
    y: TsFunction,
}

impl AgoSeries {
    pub fn domain(&self) -> &TimeScale {
        self.y.domain()
    }

    pub fn times(&self) -> &[f64] {
        self.y.times()
    }

    pub fn values(&self) -> &[f64] {
        self.y.values()
    }

    pub fn t0(&self) -> f64 {
        self.y.times()[0]
    }

    pub fn y0(&self) -> f64 {
        self.y.values()[0]
    }

    /// The original series the accumulation was built from.
    pub fn original(&self) -> &TsFunction {
        &self.x
    }

    pub fn accumulated(&self) -> &TsFunction {
        &self.y
    }

    pub fn samples(&self) -> Vec<SeriesSample> {
        self.times()
            .iter()
            .zip(self.values())
            .map(|(&t, &y)| SeriesSample::new(t, y))
            .collect()
    }

    fn starts_interval(&self, j: usize) -> bool {
        self.y.span_of(j).0 == j
    }

    fn ends_interval(&self, j: usize) -> bool {
        self.y.span_of(j).1 == j + 1
    }

    /// Rate of the continuous part of the accumulation just after node `j`.
    fn integrand_after(&self, j: usize) -> f64 {
        if self.starts_interval(j) {
            self.x.right_limit(j)
        } else {
            self.x.values()[j]
        }
    }

    /// `y^Delta` at node `j`, which must lie in `T^kappa`: the difference
    /// quotient at right-scattered nodes, the accumulated integrand
    /// otherwise.
    pub fn delta_rate(&self, j: usize) -> Result<f64> {
        let (ts, ys) = (self.times(), self.values());
        let last = ts.len() - 1;
        if j < last && self.ends_interval(j) {
            return Ok((ys[j + 1] - ys[j]) / (ts[j + 1] - ts[j]));
        }
        if j == last {
            if self.starts_interval(j) && last > 0 {
                return Err(Error::Membership(ts[j]));
            }
            return Ok(self.x.values()[j]);
        }
        Ok(self.integrand_after(j))
    }

    /// Node indices lying in `T^kappa`.
    fn kappa_nodes(&self) -> std::ops::Range<usize> {
        let n = self.times().len();
        let drop_last = n > 1 && self.starts_interval(n - 1);
        0..if drop_last { n - 1 } else { n }
    }
}

fn check_series(x: &[SeriesSample], ts: &TimeScale) -> Result<Vec<(f64, f64)>> {
    let mut nodes = Vec::with_capacity(x.len());
    for s in x {
        let t = ts.snap(s.t)?;
        if let Some(&(prev, _)) = nodes.last() {
            if t <= prev {
                return Err(Error::NonMonotoneTime(t));
            }
        }
        nodes.push((t, s.x));
    }
    Ok(nodes)
}

/// Accumulation anchored at `y(t0) = x(t0)`.
pub fn ago(x: &[SeriesSample], ts: &TimeScale) -> Result<AgoSeries> {
    let y0 = x.first().ok_or(Error::TooFewSamples { needed: 2, got: 0 })?.x;
    ago_with_anchor(x, ts, y0)
}

/// Accumulation with an explicit anchor value `y(t0)`.
///
/// The samples must cover every scattered point of the time scale between
/// the first and last sample time.
pub fn ago_with_anchor(x: &[SeriesSample], ts: &TimeScale, y0: f64) -> Result<AgoSeries> {
    if x.len() < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: x.len() });
    }
    let nodes = check_series(x, ts)?;
    let domain = ts.restrict(nodes[0].0, nodes[nodes.len() - 1].0)?;
    let xf = TsFunction::from_nodes(&domain, nodes)?;
    let mut acc = AgoSeries {
        y: xf.clone(),
        x: xf,
    };
    let ts = acc.x.times().to_vec();
    let xs = acc.x.values();
    let mut y = Vec::with_capacity(ts.len());
    y.push(y0);
    for j in 1..ts.len() {
        let h = ts[j] - ts[j - 1];
        let step = if acc.starts_interval(j) {
            h * xs[j]
        } else {
            0.5 * h * (acc.integrand_after(j - 1) + xs[j])
        };
        y.push(y[j - 1] + step);
    }
    acc.y = acc.y.with_values(y)?;
    Ok(acc)
}

/// Inverse accumulation: `x(t0) = y(t0)`, the backward difference quotient
/// at left-scattered points, and a finite-difference derivative of `y`
/// at left-dense points.
pub fn iago(acc: &AgoSeries) -> Result<Vec<SeriesSample>> {
    let (ts, ys) = (acc.times(), acc.values());
    let mut out = Vec::with_capacity(ts.len());
    out.push(SeriesSample::new(ts[0], ys[0]));
    for j in 1..ts.len() {
        let x = if acc.starts_interval(j) {
            (ys[j] - ys[j - 1]) / (ts[j] - ts[j - 1])
        } else {
            acc.y.dense_derivative(j)?
        };
        out.push(SeriesSample::new(ts[j], x));
    }
    Ok(out)
}

/// Fitted coefficients of `y^Delta + a y = b` with the initial condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreyParams {
    /// Development coefficient.
    pub a: f64,
    /// Grey input.
    pub b: f64,
    pub y0: f64,
    pub t0: f64,
    /// Euclidean norm of the regression residuals.
    pub residual_norm: f64,
    pub background: Background,
}

impl GreyParams {
    pub fn new(a: f64, b: f64, y0: f64, t0: f64) -> Self {
        Self {
            a,
            b,
            y0,
            t0,
            residual_norm: 0.0,
            background: Background::default(),
        }
    }

    /// `|a|` is below [`DEGENERATE_A`]; the response is linear.
    pub fn is_degenerate(&self) -> bool {
        self.a.abs() < DEGENERATE_A
    }

    /// Accumulated response `y(t) = e_{-a}(t, t0) (y0 - b/a) + b/a`, or
    /// `y0 + b (t - t0)` when `a` vanishes.
    pub fn y_hat(&self, ts: &TimeScale, t: f64) -> Result<f64> {
        let t = ts.snap(t)?;
        if self.is_degenerate() {
            return Ok(self.y0 + self.b * (t - self.t0));
        }
        let steady = self.b / self.a;
        Ok(ts_exponential(-self.a, ts, t, self.t0)? * (self.y0 - steady) + steady)
    }

    /// Restored original series: `y0` at `t0`, the backward difference of
    /// the response at left-scattered points, its derivative elsewhere.
    pub fn x_hat(&self, ts: &TimeScale, t: f64) -> Result<f64> {
        let t = ts.snap(t)?;
        if t == ts.snap(self.t0)? {
            return Ok(self.y0);
        }
        let nu = ts.nu(t)?;
        if nu > 0.0 {
            let prev = ts.rho(t)?;
            return Ok((self.y_hat(ts, t)? - self.y_hat(ts, prev)?) / nu);
        }
        if self.is_degenerate() {
            return Ok(self.b);
        }
        let steady = self.b / self.a;
        Ok(-self.a * (self.y0 - steady) * ts_exponential(-self.a, ts, t, self.t0)?)
    }

    /// Series generated by the model at the given times.
    pub fn series(&self, ts: &TimeScale, times: &[f64]) -> Result<Vec<SeriesSample>> {
        times
            .iter()
            .map(|&t| Ok(SeriesSample::new(ts.snap(t)?, self.x_hat(ts, t)?)))
            .collect()
    }
}

/// Fits with the default [`Background::Point`].
pub fn fit(x: &[SeriesSample], ts: &TimeScale) -> Result<GreyParams> {
    fit_with(x, ts, Background::default())
}

/// Ordinary least squares for `y^Delta(t_k) = b - a z(t_k)` over the sample
/// nodes in `T^kappa`.
pub fn fit_with(x: &[SeriesSample], ts: &TimeScale, background: Background) -> Result<GreyParams> {
    if x.len() < MIN_FIT_SAMPLES {
        return Err(Error::TooFewSamples {
            needed: MIN_FIT_SAMPLES,
            got: x.len(),
        });
    }
    let acc = ago(x, ts)?;
    let ys = acc.values();
    let mut rows = Vec::new();
    for j in acc.kappa_nodes() {
        let rate = acc.delta_rate(j)?;
        let z = match background {
            Background::Trapezoid if j + 1 < ys.len() && acc.ends_interval(j) => 0.5 * (ys[j] + ys[j + 1]),
            _ => ys[j],
        };
        rows.push((z, rate));
    }
    let n = rows.len() as f64;
    let z_mean = rows.iter().map(|r| r.0).sum::<f64>() / n;
    let d_mean = rows.iter().map(|r| r.1).sum::<f64>() / n;
    let szz: f64 = rows.iter().map(|r| (r.0 - z_mean).powi(2)).sum();
    let szd: f64 = rows.iter().map(|r| (r.0 - z_mean) * (r.1 - d_mean)).sum();
    let scale: f64 = rows.iter().map(|r| r.0 * r.0).sum();
    if rows.len() < 2 || !(szz > 1e-24 * scale.max(f64::MIN_POSITIVE)) {
        return Err(Error::SingularDesign);
    }
    let a = -szd / szz;
    let b = d_mean + a * z_mean;
    let residual_norm = rows
        .iter()
        .map(|(z, d)| (d + a * z - b).powi(2))
        .sum::<f64>()
        .sqrt();
    for (tau, mu) in acc.domain().right_scattered_between(acc.t0(), acc.domain().max()) {
        if (1.0 - a * mu).abs() <= REGRESSIVITY_TOL {
            return Err(Error::Regressivity { p: -a, t: tau });
        }
    }
    Ok(GreyParams {
        a,
        b,
        y0: acc.y0(),
        t0: acc.t0(),
        residual_norm,
        background,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    /// Mean absolute percentage error over nonzero actuals, in percent.
    pub mape: f64,
    pub rmse: f64,
}

/// Fitted and out-of-sample restored values with in-sample error metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct ForecastReport {
    pub fitted: Vec<SeriesSample>,
    pub predicted: Vec<SeriesSample>,
    /// `None` when no observations were supplied.
    pub metrics: Option<Metrics>,
}

/// MAPE (over nonzero actuals) and RMSE of `fitted` against `actual`.
pub fn metrics(actual: &[SeriesSample], fitted: &[SeriesSample]) -> Result<Metrics> {
    if actual.len() != fitted.len() {
        return Err(Error::Alignment(format!(
            "{} actual values against {} fitted values",
            actual.len(),
            fitted.len()
        )));
    }
    if actual.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sq = 0.0;
    let mut pct = 0.0;
    let mut nonzero = 0usize;
    for (a, f) in actual.iter().zip(fitted) {
        if (a.t - f.t).abs() > crate::timescale::MEMBERSHIP_TOL {
            return Err(Error::Alignment(format!("time {} does not match {}", a.t, f.t)));
        }
        let err = f.x - a.x;
        sq += err * err;
        if a.x != 0.0 {
            pct += (err / a.x).abs();
            nonzero += 1;
        }
    }
    if nonzero == 0 {
        return Err(Error::AllZeroActuals);
    }
    Ok(Metrics {
        mape: 100.0 * pct / nonzero as f64,
        rmse: (sq / actual.len() as f64).sqrt(),
    })
}

/// Restored values at the observed times (with metrics against them) and
/// at the horizon times, all on `ts_ext`.
pub fn predict(
    params: &GreyParams,
    ts_ext: &TimeScale,
    observed: &[SeriesSample],
    horizon_times: &[f64],
) -> Result<ForecastReport> {
    let times: Vec<f64> = observed.iter().map(|s| s.t).collect();
    let fitted = params.series(ts_ext, &times)?;
    let predicted = params.series(ts_ext, horizon_times)?;
    let metrics = if observed.is_empty() {
        None
    } else {
        Some(metrics(observed, &fitted)?)
    };
    Ok(ForecastReport {
        fitted,
        predicted,
        metrics,
    })
}
