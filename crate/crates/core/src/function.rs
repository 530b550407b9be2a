//! Functions on a time scale, stored as samples on a computation grid.

use crate::error::{Error, Result};
use crate::timescale::{TimeScale, MEMBERSHIP_TOL};

/// Default number of quadrature nodes placed on each dense interval.
pub const DEFAULT_NODES_PER_DENSE_INTERVAL: usize = 128;

/// A real function on a [`TimeScale`], known at a strictly increasing set of
/// nodes. Every interval endpoint (hence every scattered point) is a node;
/// dense intervals additionally carry interior quadrature nodes.
///
/// The function is assumed rd-continuous; this cannot be verified from
/// samples.
#[derive(Debug, Clone, PartialEq)]
pub struct TsFunction {
    domain: TimeScale,
    times: Vec<f64>,
    values: Vec<f64>,
    nodes_per_dense_interval: usize,
    // node index range `[start, end)` of each interval of `domain`
    spans: Vec<(usize, usize)>,
}

impl TsFunction {
    /// Samples `f` on `domain` with `nodes_per_dense_interval` equispaced
    /// nodes (endpoints included) on every dense interval.
    pub fn sample(
        domain: &TimeScale,
        nodes_per_dense_interval: usize,
        f: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        let mut nodes = Vec::new();
        for iv in domain.intervals() {
            if iv.is_point() {
                nodes.push((iv.left, f(iv.left)));
                continue;
            }
            if nodes_per_dense_interval < 2 {
                return Err(Error::InsufficientNodes {
                    left: iv.left,
                    right: iv.right,
                });
            }
            let last = nodes_per_dense_interval - 1;
            for k in 0..=last {
                let t = if k == last {
                    iv.right
                } else {
                    iv.left + iv.length() * (k as f64 / last as f64)
                };
                nodes.push((t, f(t)));
            }
        }
        let mut out = Self::from_nodes(domain, nodes)?;
        out.nodes_per_dense_interval = nodes_per_dense_interval;
        Ok(out)
    }

    /// Builds a function from explicit `(t, value)` nodes. Times are snapped
    /// onto the domain and must be strictly increasing; every interval
    /// endpoint must be present.
    pub fn from_nodes(domain: &TimeScale, nodes: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut times = Vec::new();
        let mut values = Vec::new();
        for (t, v) in nodes {
            let t = domain.snap(t)?;
            if let Some(&prev) = times.last() {
                if t <= prev {
                    return Err(Error::NonMonotoneTime(t));
                }
            }
            times.push(t);
            values.push(v);
        }
        if times.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut spans = Vec::with_capacity(domain.intervals().len());
        let mut min_dense = usize::MAX;
        for iv in domain.intervals() {
            let start = times.partition_point(|&t| t < iv.left);
            let end = times.partition_point(|&t| t <= iv.right);
            if start == end || times[start] != iv.left {
                return Err(Error::MissingScatteredSample(iv.left));
            }
            if times[end - 1] != iv.right {
                return Err(Error::MissingScatteredSample(iv.right));
            }
            if !iv.is_point() {
                min_dense = min_dense.min(end - start);
            }
            spans.push((start, end));
        }
        Ok(Self {
            domain: domain.clone(),
            times,
            values,
            nodes_per_dense_interval: if min_dense == usize::MAX { 1 } else { min_dense },
            spans,
        })
    }

    pub fn domain(&self) -> &TimeScale {
        &self.domain
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn nodes_per_dense_interval(&self) -> usize {
        self.nodes_per_dense_interval
    }

    /// Same grid, new values.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.times.len() {
            return Err(Error::Alignment(format!(
                "expected {} values, got {}",
                self.times.len(),
                values.len()
            )));
        }
        Ok(Self {
            values,
            ..self.clone()
        })
    }

    /// Node index of `t`, or `NotANode`.
    pub fn node_index(&self, t: f64) -> Result<usize> {
        let t = self.domain.snap(t)?;
        let idx = self.times.partition_point(|&s| s < t - MEMBERSHIP_TOL);
        match self.times.get(idx) {
            Some(&s) if (s - t).abs() <= MEMBERSHIP_TOL => Ok(idx),
            _ => Err(Error::NotANode(t)),
        }
    }

    /// Index range of the nodes on the interval holding node `idx`.
    pub fn span_of(&self, idx: usize) -> (usize, usize) {
        let k = self.spans.partition_point(|&(_, end)| end <= idx);
        self.spans[k]
    }

    /// Value at a member of the domain, interpolating linearly between
    /// nodes inside dense intervals.
    pub fn value_at(&self, t: f64) -> Result<f64> {
        let t = self.domain.snap(t)?;
        let iv = self.domain.locate(t)?;
        let (start, end) = self.spans[iv];
        let k = start + self.times[start..end].partition_point(|&s| s < t);
        if k < end && self.times[k] == t {
            return Ok(self.values[k]);
        }
        let (t0, t1) = (self.times[k - 1], self.times[k]);
        let w = (t - t0) / (t1 - t0);
        Ok(self.values[k - 1] * (1.0 - w) + self.values[k] * w)
    }

    /// Limit from the right at node `idx`, extrapolated from the following
    /// nodes of the same dense interval (quadratic when three are available).
    ///
    /// Used where the sample at `idx` belongs to a jump and the continuous
    /// part of the function starts just after it.
    pub fn right_limit(&self, idx: usize) -> f64 {
        let (_, end) = self.span_of(idx);
        let ahead: Vec<usize> = (idx + 1..end).take(3).collect();
        self.extrapolate(idx, &ahead)
    }

    /// Limit from the left at node `idx`, extrapolated from the preceding
    /// nodes of the same dense interval.
    pub fn left_limit(&self, idx: usize) -> f64 {
        let (start, _) = self.span_of(idx);
        let behind: Vec<usize> = (start..idx).rev().take(3).collect();
        self.extrapolate(idx, &behind)
    }

    /// Polynomial extrapolation to node `idx`, kept on the sign of the
    /// nodes it is built from so nonnegative data has a nonnegative limit.
    fn extrapolate(&self, idx: usize, from: &[usize]) -> f64 {
        let raw = self.extrapolate_raw(idx, from);
        let fs = &self.values;
        if from.iter().all(|&k| fs[k] >= 0.0) {
            raw.max(0.0)
        } else if from.iter().all(|&k| fs[k] <= 0.0) {
            raw.min(0.0)
        } else {
            raw
        }
    }

    fn extrapolate_raw(&self, idx: usize, from: &[usize]) -> f64 {
        let t = self.times[idx];
        let (ts, fs) = (&self.times, &self.values);
        match *from {
            [] => fs[idx],
            [a] => fs[a],
            [a, b] => fs[a] + (fs[b] - fs[a]) * (t - ts[a]) / (ts[b] - ts[a]),
            [a, b, c, ..] => {
                let la = (t - ts[b]) * (t - ts[c]) / ((ts[a] - ts[b]) * (ts[a] - ts[c]));
                let lb = (t - ts[a]) * (t - ts[c]) / ((ts[b] - ts[a]) * (ts[b] - ts[c]));
                let lc = (t - ts[a]) * (t - ts[b]) / ((ts[c] - ts[a]) * (ts[c] - ts[b]));
                fs[a] * la + fs[b] * lb + fs[c] * lc
            }
        }
    }

    /// Delta derivative at node `t`, which must lie in `T^kappa`.
    ///
    /// Exact difference quotient at right-scattered points. At right-dense
    /// points a second-order finite difference over the neighboring nodes of
    /// the same interval: central inside, one-sided at the ends.
    pub fn delta_derivative(&self, t: f64) -> Result<f64> {
        if !self.domain.kappa().contains(t) {
            return Err(Error::Membership(t));
        }
        let j = self.node_index(t)?;
        let mu = self.domain.mu(self.times[j])?;
        if mu > 0.0 {
            // the forward jump lands on the first node of the next interval
            return Ok((self.values[j + 1] - self.values[j]) / mu);
        }
        self.dense_derivative(j)
    }

    /// Second-order finite-difference derivative at node `j` using only the
    /// nodes of its own interval: central inside, one-sided at either end.
    pub fn dense_derivative(&self, j: usize) -> Result<f64> {
        let (start, end) = self.span_of(j);
        let count = end - start;
        if count < 2 {
            let iv = self.domain.intervals()[self.domain.locate(self.times[j])?];
            return Err(Error::InsufficientNodes {
                left: iv.left,
                right: iv.right,
            });
        }
        let (ts, fs) = (&self.times, &self.values);
        if j > start && j + 1 < end {
            let h1 = ts[j] - ts[j - 1];
            let h2 = ts[j + 1] - ts[j];
            return Ok(-h2 / (h1 * (h1 + h2)) * fs[j - 1]
                + (h2 - h1) / (h1 * h2) * fs[j]
                + h1 / (h2 * (h1 + h2)) * fs[j + 1]);
        }
        if count == 2 {
            return Ok((fs[start + 1] - fs[start]) / (ts[start + 1] - ts[start]));
        }
        if j == start {
            let h1 = ts[j + 1] - ts[j];
            let h2 = ts[j + 2] - ts[j + 1];
            Ok(-(2.0 * h1 + h2) / (h1 * (h1 + h2)) * fs[j]
                + (h1 + h2) / (h1 * h2) * fs[j + 1]
                - h1 / (h2 * (h1 + h2)) * fs[j + 2])
        } else {
            let h1 = ts[j] - ts[j - 1];
            let h2 = ts[j - 1] - ts[j - 2];
            Ok((2.0 * h1 + h2) / (h1 * (h1 + h2)) * fs[j]
                - (h1 + h2) / (h1 * h2) * fs[j - 1]
                + h1 / (h2 * (h1 + h2)) * fs[j - 2])
        }
    }

    /// Delta integral over `[a, b]`: `mu(t) * f(t)` summed over right-scattered
    /// `t` in `[a, b)` plus composite trapezoid quadrature over dense parts.
    ///
    /// At a right-scattered endpoint of a dense interval the sample is the
    /// jump value; the quadrature uses the left limit there instead, which
    /// an rd-continuous function is allowed to have different.
    pub fn delta_integral(&self, a: f64, b: f64) -> Result<f64> {
        let a = self.domain.snap(a)?;
        let b = self.domain.snap(b)?;
        if a > b {
            return Err(Error::Order { lower: a, upper: b });
        }
        let mut total = 0.0;
        for (iv, &(start, end)) in self.domain.intervals().iter().zip(&self.spans) {
            if iv.is_point() {
                continue;
            }
            let lo = a.max(iv.left);
            let hi = b.min(iv.right);
            if hi <= lo {
                continue;
            }
            let closes_at_jump = hi == iv.right && iv.right < self.domain.max();
            total += self.trapezoid(start, end, lo, hi, closes_at_jump)?;
        }
        for (tau, mu) in self.domain.right_scattered_between(a, b) {
            total += mu * self.values[self.node_index(tau)?];
        }
        Ok(total)
    }

    fn trapezoid(&self, start: usize, end: usize, lo: f64, hi: f64, closes_at_jump: bool) -> Result<f64> {
        let ts = &self.times[start..end];
        let first = start + ts.partition_point(|&s| s <= lo);
        let last = start + ts.partition_point(|&s| s < hi);
        let mut prev_t = lo;
        let mut prev_f = self.value_at(lo)?;
        let mut sum = 0.0;
        for k in first..last {
            sum += 0.5 * (self.times[k] - prev_t) * (prev_f + self.values[k]);
            prev_t = self.times[k];
            prev_f = self.values[k];
        }
        let hi_f = if closes_at_jump {
            self.left_limit(end - 1)
        } else {
            self.value_at(hi)?
        };
        sum += 0.5 * (hi - prev_t) * (prev_f + hi_f);
        Ok(sum)
    }
}
