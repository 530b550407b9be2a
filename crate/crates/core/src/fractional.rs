//! Riemann–Liouville fractional integration on a uniform grid and the
//! fractional accumulation operator.
//!
//! Samples are taken at `t_k = k * dt` for `k = 1..=n` and integration
//! starts at 0. Both discrete operators are lower-triangular Toeplitz
//! convolutions; [`FracMatrix`] stores the convolution as an upper-triangular
//! matrix acting on row vectors, `out = f^T M`.

use crate::error::{Error, Result};
use crate::gamma::gamma;

/// Fractional order `r > 0` together with the grid step `dt > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOrder {
    r: f64,
    dt: f64,
}

impl FracOrder {
    pub fn new(r: f64, dt: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!("fractional order {r} must be positive")));
        }
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::Domain(format!("grid step {dt} must be positive")));
        }
        Ok(Self { r, dt })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// The `dt^r` prefactor of the discrete integral.
    pub fn scale(&self) -> f64 {
        self.dt.powf(self.r)
    }
}

/// Convolution weights indexed by lag `m = 0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct FracWeights(Vec<f64>);

impl FracWeights {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `out[j] = scale * sum_{k <= j} w[j - k] f[k]`
    pub fn convolve(&self, f: &[f64], scale: f64) -> Vec<f64> {
        let w = &self.0;
        (0..f.len())
            .map(|j| scale * (0..=j).map(|k| w[j - k] * f[k]).sum::<f64>())
            .collect()
    }
}

fn check_order(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("fractional order {r} must be positive")))
    }
}

/// Exact Riemann–Liouville integral of order `r` of `coeff * t^p`, from 0:
/// `coeff * Gamma(p + 1) / Gamma(p + 1 + r) * t^(p + r)`.
pub fn rl_analytic_power(coeff: f64, p: f64, r: f64, t: f64) -> Result<f64> {
    check_order(r)?;
    if p < 0.0 || t < 0.0 {
        return Err(Error::Domain(format!("power {p} and time {t} must be non-negative")));
    }
    if coeff == 0.0 {
        return Ok(0.0);
    }
    Ok(coeff * gamma(p + 1.0) / gamma(p + 1.0 + r) * t.powf(p + r))
}

/// Weights `((m + 1)^r - m^r) / Gamma(r + 1)` of the piecewise-constant
/// Riemann–Liouville rule. The `dt^r` factor is applied separately.
pub fn frac_weights(n: usize, r: f64) -> Result<FracWeights> {
    check_order(r)?;
    let norm = gamma(r + 1.0);
    Ok(FracWeights(
        (0..n)
            .map(|m| {
                let m = m as f64;
                ((m + 1.0).powf(r) - m.powf(r)) / norm
            })
            .collect(),
    ))
}

/// Discrete Riemann–Liouville integral of samples `f[k] = f(t_{k+1})`:
/// `out[j] = dt^r * sum_{k <= j} w[j - k] f[k]` for every truncation `j`.
pub fn rl_numeric(f: &[f64], order: FracOrder) -> Result<Vec<f64>> {
    if f.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(frac_weights(f.len(), order.r())?.convolve(f, order.scale()))
}

/// Fractional accumulation coefficients
/// `Gamma(r + m) / (Gamma(r) Gamma(m + 1))`, generated by the ratio
/// recurrence `c[m] = c[m - 1] (r + m - 1) / m` so large lags do not
/// overflow.
pub fn fago_weights(n: usize, r: f64) -> Result<FracWeights> {
    check_order(r)?;
    let mut w = Vec::with_capacity(n);
    let mut c = 1.0;
    for m in 0..n {
        if m > 0 {
            c *= (r + m as f64 - 1.0) / m as f64;
        }
        w.push(c);
    }
    Ok(FracWeights(w))
}

/// Fractional accumulation of order `r` (no grid scaling).
pub fn fago(f: &[f64], r: f64) -> Result<Vec<f64>> {
    if f.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(fago_weights(f.len(), r)?.convolve(f, 1.0))
}

/// Dense square matrix used for the triangular fractional operators.
/// Acts on row vectors: `apply(f)[j] = sum_k f[k] M[k][j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FracMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl FracMatrix {
    /// Upper-triangular Toeplitz matrix `M[k][j] = w[j - k] dt^r` for `j >= k`.
    pub fn build(n: usize, order: FracOrder) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("matrix dimension must be at least 1".into()));
        }
        let w = frac_weights(n, order.r())?;
        let scale = order.scale();
        let mut entries = vec![0.0; n * n];
        for k in 0..n {
            for j in k..n {
                entries[k * n + j] = w.as_slice()[j - k] * scale;
            }
        }
        Ok(Self { n, entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1.0;
        }
        Self { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.n + col]
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == 0.0))
    }

    /// Row-vector product `f^T M`.
    pub fn apply(&self, f: &[f64]) -> Result<Vec<f64>> {
        if f.len() != self.n {
            return Err(Error::Alignment(format!(
                "vector of length {} against matrix of dimension {}",
                f.len(),
                self.n
            )));
        }
        Ok((0..self.n)
            .map(|j| (0..self.n).map(|k| f[k] * self.get(k, j)).sum())
            .collect())
    }

    pub fn multiply(&self, other: &FracMatrix) -> Result<FracMatrix> {
        if other.n != self.n {
            return Err(Error::Alignment("matrix dimensions differ".into()));
        }
        let n = self.n;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        Ok(FracMatrix { n, entries })
    }

    /// Inverse of an upper-triangular matrix by column-wise back substitution.
    pub fn invert(&self) -> Result<FracMatrix> {
        if !self.is_upper_triangular() {
            return Err(Error::Domain("matrix is not upper triangular".into()));
        }
        let n = self.n;
        if (0..n).any(|i| self.get(i, i) == 0.0) {
            return Err(Error::Domain("matrix is singular".into()));
        }
        let mut inv = vec![0.0; n * n];
        for j in 0..n {
            inv[j * n + j] = 1.0 / self.get(j, j);
            for i in (0..j).rev() {
                let s: f64 = (i + 1..=j).map(|k| self.get(i, k) * inv[k * n + j]).sum();
                inv[i * n + j] = -s / self.get(i, i);
            }
        }
        Ok(FracMatrix { n, entries: inv })
    }

    /// Solves `f^T M = g^T` for `f` by forward substitution, without forming
    /// the inverse.
    pub fn restore(&self, g: &[f64]) -> Result<Vec<f64>> {
        if g.len() != self.n {
            return Err(Error::Alignment("vector length differs from matrix dimension".into()));
        }
        let mut f = Vec::with_capacity(self.n);
        for j in 0..self.n {
            let s: f64 = (0..j).map(|k| f[k] * self.get(k, j)).sum();
            f.push((g[j] - s) / self.get(j, j));
        }
        Ok(f)
    }

    /// `max_{i,j} |M[i][j] - other[i][j]|`
    pub fn max_abs_diff(&self, other: &FracMatrix) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// One line of the analytic-versus-numeric comparison for `f(t) = t^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub order: f64,
    pub t: f64,
    pub analytic: f64,
    pub rl_numeric: f64,
    pub fago: f64,
}

impl ComparisonRow {
    pub fn rl_relative_error(&self) -> f64 {
        ((self.rl_numeric - self.analytic) / self.analytic).abs()
    }

    pub fn fago_relative_error(&self) -> f64 {
        ((self.fago - self.analytic) / self.analytic).abs()
    }
}

/// Fractional integrals of `t^2` on the grid `t_k = k dt`, `k = 1..=t_max/dt`,
/// for each order: exact, piecewise-constant Riemann–Liouville, and
/// fractional accumulation (scaled by `dt^r`).
pub fn compare_experiment(orders: &[f64], t_max: f64, dt: f64) -> Result<Vec<ComparisonRow>> {
    if orders.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !(dt > 0.0) || !(t_max >= dt) {
        return Err(Error::Domain(format!("need 0 < dt <= t_max, got dt = {dt}, t_max = {t_max}")));
    }
    let steps = (t_max / dt).round();
    if (steps * dt - t_max).abs() > 1e-9 {
        return Err(Error::Domain(format!("t_max = {t_max} is not a multiple of dt = {dt}")));
    }
    let times: Vec<f64> = (1..=steps as usize).map(|k| k as f64 * dt).collect();
    let samples: Vec<f64> = times.iter().map(|t| t * t).collect();
    let mut rows = Vec::with_capacity(orders.len() * times.len());
    for &r in orders {
        let order = FracOrder::new(r, dt)?;
        let rl = rl_numeric(&samples, order)?;
        let acc: Vec<f64> = fago(&samples, r)?.into_iter().map(|v| v * order.scale()).collect();
        for (k, &t) in times.iter().enumerate() {
            rows.push(ComparisonRow {
                order: r,
                t,
                analytic: rl_analytic_power(1.0, 2.0, r, t)?,
                rl_numeric: rl[k],
                fago: acc[k],
            });
        }
    }
    Ok(rows)
}

/// Largest relative error of the Riemann–Liouville column over rows with
/// `t >= t_from`.
pub fn max_rl_relative_error(rows: &[ComparisonRow], t_from: f64) -> f64 {
    rows.iter()
        .filter(|row| row.t >= t_from - 1e-12)
        .map(ComparisonRow::rl_relative_error)
        .fold(0.0, f64::max)
}
