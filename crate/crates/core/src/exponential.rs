//! Regressivity, the cylinder transformation and the time-scale exponential
//! for constant coefficients.

use crate::error::{Error, Result};
use crate::function::TsFunction;
use crate::timescale::TimeScale;

/// `|1 + mu * p|` at or below this is treated as zero.
pub const REGRESSIVITY_TOL: f64 = 1e-12;

/// Outcome of the regressivity test for a constant coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Regressivity {
    /// `1 + mu(t) p != 0` at every right-scattered point.
    pub delta: bool,
    /// `1 - nu(t) p != 0` at every left-scattered point of `T^kappa`.
    pub nabla: bool,
}

pub fn regressivity(p: f64, ts: &TimeScale) -> Regressivity {
    let ivs = ts.intervals();
    let delta = ivs
        .windows(2)
        .all(|w| (1.0 + (w[1].left - w[0].right) * p).abs() > REGRESSIVITY_TOL);
    let kappa = ts.kappa();
    let nabla = kappa
        .intervals()
        .windows(2)
        .all(|w| (1.0 - (w[1].left - w[0].right) * p).abs() > REGRESSIVITY_TOL);
    Regressivity { delta, nabla }
}

/// Delta-regressivity of a constant coefficient, the condition under which
/// [`ts_exponential`] exists.
pub fn is_regressive(p: f64, ts: &TimeScale) -> bool {
    regressivity(p, ts).delta
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CylinderMode {
    /// `xi_h(z) = log(1 + z h) / h`
    #[default]
    Delta,
    /// `xi_h(z) = -log(1 - z h) / h`
    Nabla,
}

/// Real branch of the cylinder transformation with graininess `h`.
///
/// In nabla mode a negative logarithm argument yields the real part of the
/// principal logarithm, `-log|1 - z h| / h`.
pub fn cylinder(h: f64, z: f64, mode: CylinderMode) -> Result<f64> {
    if h < 0.0 || !h.is_finite() {
        return Err(Error::Domain(format!("graininess {h} must be finite and non-negative")));
    }
    if h == 0.0 {
        return Ok(z);
    }
    match mode {
        CylinderMode::Delta => {
            let arg = 1.0 + z * h;
            if arg <= 0.0 {
                return Err(Error::Branch { h, z, arg });
            }
            Ok(arg.ln() / h)
        }
        CylinderMode::Nabla => {
            let arg = 1.0 - z * h;
            if arg == 0.0 {
                return Err(Error::Branch { h, z, arg });
            }
            Ok(-arg.abs().ln() / h)
        }
    }
}

/// The delta exponential `e_p(t, s)` for a constant coefficient `p`.
///
/// Evaluated in closed form as `exp(p L) * prod(1 + mu(tau) p)`, where `L` is
/// the dense length between `s` and `t` and the product runs over the
/// right-scattered `tau` in `[s, t)`. For `t < s` the reciprocal
/// `1 / e_p(s, t)` is returned.
pub fn ts_exponential(p: f64, ts: &TimeScale, t: f64, s: f64) -> Result<f64> {
    let t = ts.snap(t)?;
    let s = ts.snap(s)?;
    if t < s {
        return Ok(1.0 / ts_exponential(p, ts, s, t)?);
    }
    let mut product = 1.0;
    for (tau, mu) in ts.right_scattered_between(s, t) {
        let factor = 1.0 + mu * p;
        if factor.abs() <= REGRESSIVITY_TOL {
            return Err(Error::Regressivity { p, t: tau });
        }
        product *= factor;
    }
    let dense = ts.dense_length(s, t);
    if dense == 0.0 {
        Ok(product)
    } else {
        Ok((p * dense).exp() * product)
    }
}

/// The delta exponential evaluated from its definition,
/// `exp(integral of xi_mu(tau)(p) over [s, t])`, with the delta integral
/// taken on a grid of `nodes_per_dense_interval` nodes per dense interval.
///
/// Requires `1 + mu p > 0` at every right-scattered point in range.
pub fn ts_exponential_quadrature(
    p: f64,
    ts: &TimeScale,
    t: f64,
    s: f64,
    nodes_per_dense_interval: usize,
) -> Result<f64> {
    let t = ts.snap(t)?;
    let s = ts.snap(s)?;
    if t < s {
        return Ok(1.0 / ts_exponential_quadrature(p, ts, s, t, nodes_per_dense_interval)?);
    }
    let range = ts.restrict(s, t)?;
    let grid = TsFunction::sample(&range, nodes_per_dense_interval, |_| 0.0)?;
    let xi = grid
        .times()
        .iter()
        .map(|&tau| cylinder(range.mu(tau)?, p, CylinderMode::Delta))
        .collect::<Result<Vec<_>>>()?;
    Ok(grid.with_values(xi)?.delta_integral(s, t)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn regressivity_examples() {
        let z = TimeScale::integers(0, 10).unwrap();
        assert!(!is_regressive(-1.0, &z));
        assert!(is_regressive(-0.5, &z));
        let r = regressivity(-1.0, &z);
        assert!(r.nabla);
        assert!(!regressivity(1.0, &z).nabla);
        let unit = TimeScale::interval(0.0, 1.0).unwrap();
        for p in [-1e6, -1.0, 0.0, 3.0] {
            assert_eq!(regressivity(p, &unit), Regressivity { delta: true, nabla: true });
        }
    }

    #[test]
    fn cylinder_examples() {
        assert_eq!(cylinder(0.0, 0.7, CylinderMode::Delta).unwrap(), 0.7);
        assert_eq!(cylinder(0.0, 0.7, CylinderMode::Nabla).unwrap(), 0.7);
        // ln(0.9), evaluated independently
        assert_relative_eq!(
            cylinder(1.0, -0.1, CylinderMode::Delta).unwrap(),
            -0.105_360_515_657_826_3,
            max_relative = 1e-14
        );
        assert_eq!(cylinder(1.0, 0.0, CylinderMode::Delta).unwrap(), 0.0);
        assert_eq!(cylinder(1.0, 0.0, CylinderMode::Nabla).unwrap(), 0.0);
        assert_relative_eq!(
            cylinder(0.5, 0.4, CylinderMode::Nabla).unwrap(),
            -(0.8f64).ln() / 0.5,
            max_relative = 1e-15
        );
    }

    #[test]
    fn cylinder_branch_errors() {
        assert!(matches!(cylinder(1.0, -1.0, CylinderMode::Delta), Err(Error::Branch { .. })));
        assert!(matches!(cylinder(1.0, -2.0, CylinderMode::Delta), Err(Error::Branch { .. })));
        assert!(matches!(cylinder(1.0, 1.0, CylinderMode::Nabla), Err(Error::Branch { .. })));
        assert!(cylinder(1.0, 2.0, CylinderMode::Nabla).is_ok());
        assert!(cylinder(-1.0, 0.5, CylinderMode::Delta).is_err());
    }

    #[test]
    fn exponential_specializations() {
        let z = TimeScale::integers(0, 20).unwrap();
        for t in 0..=20 {
            assert_relative_eq!(
                ts_exponential(-0.1, &z, t as f64, 0.0).unwrap(),
                0.9f64.powi(t),
                max_relative = 1e-13
            );
        }
        let r = TimeScale::interval(0.0, 5.0).unwrap();
        assert_relative_eq!(
            ts_exponential(-0.3, &r, 4.0, 1.0).unwrap(),
            (-0.9f64).exp(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn exponential_on_gap_scale() {
        let ts: TimeScale = "0..1;2..3".parse().unwrap();
        // exp over [0,1], one jump of width 1 at t = 1, exp over [2,3]
        let oracle = 0.3f64.exp() * (1.0 + 0.3) * 0.3f64.exp();
        let e = ts_exponential(0.3, &ts, 3.0, 0.0).unwrap();
        assert_relative_eq!(e, oracle, max_relative = 1e-14);
        assert_relative_eq!(e, 2.3686, max_relative = 1e-4);
    }

    #[test]
    fn exponential_identities_and_errors() {
        let ts: TimeScale = "0..1;2..3;5".parse().unwrap();
        assert_eq!(ts_exponential(0.7, &ts, 2.5, 2.5).unwrap(), 1.0);
        assert_eq!(ts_exponential(0.0, &ts, 5.0, 0.0).unwrap(), 1.0);
        assert!(matches!(
            ts_exponential(-0.5, &ts, 5.0, 0.0),
            Err(Error::Regressivity { t, .. }) if t == 3.0
        ));
        assert_eq!(ts_exponential(0.1, &ts, 1.5, 0.0), Err(Error::Membership(1.5)));
        let back = ts_exponential(0.2, &ts, 0.5, 5.0).unwrap();
        let fwd = ts_exponential(0.2, &ts, 5.0, 0.5).unwrap();
        assert_abs_diff_eq!(back * fwd, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn quadrature_route_matches_closed_form() {
        let ts: TimeScale = "0..1;2..3;5;6.5".parse().unwrap();
        for p in [-0.4, 0.1, 0.6] {
            for (t, s) in [(6.5, 0.0), (2.5, 0.5), (5.0, 1.0)] {
                let exact = ts_exponential(p, &ts, t, s).unwrap();
                let quad = ts_exponential_quadrature(p, &ts, t, s, 32).unwrap();
                assert_relative_eq!(exact, quad, max_relative = 1e-13);
            }
        }
    }
}
