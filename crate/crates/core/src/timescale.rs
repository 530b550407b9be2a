//! Time scales represented as finite unions of disjoint closed intervals.
//!
//! An isolated point is a degenerate interval `[p, p]`. Every operator here is
//! exact in interval arithmetic; membership is tested with an absolute
//! tolerance of [`MEMBERSHIP_TOL`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Absolute tolerance used when deciding whether a real number lies on a
/// time scale, and when snapping it onto an interval endpoint.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub left: f64,
    pub right: f64,
}

impl Interval {
    pub fn is_point(&self) -> bool {
        self.left == self.right
    }

    pub fn length(&self) -> f64 {
        self.right - self.left
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RightKind {
    Dense,
    Scattered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeftKind {
    Dense,
    Scattered,
}

/// Local structure of a time scale at one of its points.
///
/// With the conventions `sigma(max) = max` and `rho(min) = min` the maximum
/// is right-dense and the minimum is left-dense.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointClass {
    pub right: RightKind,
    pub left: LeftKind,
    pub is_min: bool,
    pub is_max: bool,
}

impl PointClass {
    pub fn is_right_scattered(&self) -> bool {
        self.right == RightKind::Scattered
    }

    pub fn is_left_scattered(&self) -> bool {
        self.left == LeftKind::Scattered
    }
}

/// A nonempty closed subset of the reals made of finitely many intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeScale {
    intervals: Vec<Interval>,
}

impl TimeScale {
    /// Builds a time scale from `(left, right)` pairs, which must be finite,
    /// ordered, and pairwise disjoint.
    pub fn new(intervals: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let intervals: Vec<Interval> = intervals
            .into_iter()
            .map(|(left, right)| Interval { left, right })
            .collect();
        if intervals.is_empty() {
            return Err(Error::InvalidTimeScale("no intervals".into()));
        }
        for iv in &intervals {
            if !iv.left.is_finite() || !iv.right.is_finite() {
                return Err(Error::InvalidTimeScale(format!(
                    "non-finite bound in [{}, {}]",
                    iv.left, iv.right
                )));
            }
            if iv.left > iv.right {
                return Err(Error::InvalidTimeScale(format!(
                    "left bound exceeds right bound in [{}, {}]",
                    iv.left, iv.right
                )));
            }
        }
        for pair in intervals.windows(2) {
            if pair[0].right >= pair[1].left {
                return Err(Error::InvalidTimeScale(format!(
                    "intervals [{}, {}] and [{}, {}] overlap or are out of order",
                    pair[0].left, pair[0].right, pair[1].left, pair[1].right
                )));
            }
        }
        Ok(Self { intervals })
    }

    pub fn interval(left: f64, right: f64) -> Result<Self> {
        Self::new([(left, right)])
    }

    /// A purely discrete time scale made of the given isolated points.
    pub fn points(points: &[f64]) -> Result<Self> {
        Self::new(points.iter().map(|&p| (p, p)))
    }

    /// The lattice `{start + k * step : k = 0..count}`.
    pub fn lattice(start: f64, step: f64, count: usize) -> Result<Self> {
        if !(step > 0.0) {
            return Err(Error::InvalidTimeScale(format!("lattice step {step} must be positive")));
        }
        let pts: Vec<f64> = (0..count).map(|k| start + k as f64 * step).collect();
        Self::points(&pts)
    }

    /// The integers `lo..=hi`.
    pub fn integers(lo: i64, hi: i64) -> Result<Self> {
        if hi < lo {
            return Err(Error::InvalidTimeScale(format!("empty integer range {lo}..={hi}")));
        }
        Self::new((lo..=hi).map(|k| (k as f64, k as f64)))
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn min(&self) -> f64 {
        self.intervals[0].left
    }

    pub fn max(&self) -> f64 {
        self.intervals[self.intervals.len() - 1].right
    }

    /// True when the scale has no dense interval.
    pub fn is_discrete(&self) -> bool {
        self.intervals.iter().all(Interval::is_point)
    }

    /// Index of the interval containing `t`.
    pub fn locate(&self, t: f64) -> Result<usize> {
        if !t.is_finite() {
            return Err(Error::Membership(t));
        }
        let idx = self
            .intervals
            .partition_point(|iv| iv.right + MEMBERSHIP_TOL < t);
        match self.intervals.get(idx) {
            Some(iv) if iv.left - MEMBERSHIP_TOL <= t => Ok(idx),
            _ => Err(Error::Membership(t)),
        }
    }

    pub fn contains(&self, t: f64) -> bool {
        self.locate(t).is_ok()
    }

    /// Maps `t` onto the scale: values within tolerance of an interval
    /// endpoint become that endpoint, interior values are returned unchanged.
    pub fn snap(&self, t: f64) -> Result<f64> {
        let iv = self.intervals[self.locate(t)?];
        if (t - iv.left).abs() <= MEMBERSHIP_TOL {
            Ok(iv.left)
        } else if (t - iv.right).abs() <= MEMBERSHIP_TOL {
            Ok(iv.right)
        } else {
            Ok(t)
        }
    }

    fn at_right_end(&self, i: usize, t: f64) -> bool {
        t >= self.intervals[i].right - MEMBERSHIP_TOL
    }

    fn at_left_end(&self, i: usize, t: f64) -> bool {
        t <= self.intervals[i].left + MEMBERSHIP_TOL
    }

    /// Forward jump operator; `sigma(max) = max`.
    pub fn sigma(&self, t: f64) -> Result<f64> {
        let i = self.locate(t)?;
        if self.at_right_end(i, t) {
            Ok(match self.intervals.get(i + 1) {
                Some(next) => next.left,
                None => self.intervals[i].right,
            })
        } else {
            Ok(t)
        }
    }

    /// Backward jump operator; `rho(min) = min`.
    pub fn rho(&self, t: f64) -> Result<f64> {
        let i = self.locate(t)?;
        if self.at_left_end(i, t) {
            Ok(if i > 0 {
                self.intervals[i - 1].right
            } else {
                self.intervals[i].left
            })
        } else {
            Ok(t)
        }
    }

    /// Forward graininess `mu(t) = sigma(t) - t`.
    pub fn mu(&self, t: f64) -> Result<f64> {
        let i = self.locate(t)?;
        if self.at_right_end(i, t) {
            Ok(match self.intervals.get(i + 1) {
                Some(next) => next.left - self.intervals[i].right,
                None => 0.0,
            })
        } else {
            Ok(0.0)
        }
    }

    /// Backward graininess `nu(t) = t - rho(t)`.
    pub fn nu(&self, t: f64) -> Result<f64> {
        let i = self.locate(t)?;
        if self.at_left_end(i, t) && i > 0 {
            Ok(self.intervals[i].left - self.intervals[i - 1].right)
        } else {
            Ok(0.0)
        }
    }

    pub fn classify(&self, t: f64) -> Result<PointClass> {
        let right = if self.mu(t)? > 0.0 {
            RightKind::Scattered
        } else {
            RightKind::Dense
        };
        let left = if self.nu(t)? > 0.0 {
            LeftKind::Scattered
        } else {
            LeftKind::Dense
        };
        let t = self.snap(t)?;
        Ok(PointClass {
            right,
            left,
            is_min: t == self.min(),
            is_max: t == self.max(),
        })
    }

    /// The set `T^kappa`: the scale without its maximum when that maximum is
    /// left-scattered.
    pub fn kappa(&self) -> TimeScale {
        let n = self.intervals.len();
        if n > 1 && self.intervals[n - 1].is_point() {
            TimeScale {
                intervals: self.intervals[..n - 1].to_vec(),
            }
        } else {
            self.clone()
        }
    }

    /// The part of the scale lying in `[a, b]`; both bounds must be members.
    pub fn restrict(&self, a: f64, b: f64) -> Result<TimeScale> {
        let a = self.snap(a)?;
        let b = self.snap(b)?;
        if a > b {
            return Err(Error::Order { lower: a, upper: b });
        }
        let intervals = self
            .intervals
            .iter()
            .filter(|iv| iv.right >= a && iv.left <= b)
            .map(|iv| Interval {
                left: iv.left.max(a),
                right: iv.right.min(b),
            })
            .collect();
        Ok(TimeScale { intervals })
    }

    /// Right-scattered points `tau` in `[a, b)` paired with `mu(tau)`.
    pub fn right_scattered_between(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.intervals.windows(2).filter_map(move |pair| {
            let tau = pair[0].right;
            (tau >= a - MEMBERSHIP_TOL && tau < b - MEMBERSHIP_TOL)
                .then(|| (tau, pair[1].left - tau))
        })
    }

    /// Lebesgue measure of the dense part of the scale inside `[a, b]`.
    pub fn dense_length(&self, a: f64, b: f64) -> f64 {
        self.intervals
            .iter()
            .filter(|iv| !iv.is_point())
            .map(|iv| (iv.right.min(b) - iv.left.max(a)).max(0.0))
            .sum()
    }
}

impl fmt::Display for TimeScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            if iv.is_point() {
                write!(f, "{}", iv.left)?;
            } else {
                write!(f, "{}..{}", iv.left, iv.right)?;
            }
        }
        Ok(())
    }
}

/// Parses `left..right` intervals and bare points separated by `;`,
/// e.g. `0..1;2..3;5`.
impl FromStr for TimeScale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_num = |tok: &str| -> Result<f64> {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidTimeScale(format!("cannot parse number {:?}", tok.trim())))
        };
        let mut parts = Vec::new();
        for piece in s.split(';') {
            let piece = piece.trim();
            if piece.is_empty() {
                return Err(Error::InvalidTimeScale(format!("empty component in {s:?}")));
            }
            match piece.split_once("..") {
                Some((l, r)) => parts.push((parse_num(l)?, parse_num(r)?)),
                None => {
                    let p = parse_num(piece)?;
                    parts.push((p, p));
                }
            }
        }
        TimeScale::new(parts)
    }
}
