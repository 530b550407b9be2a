//! Gamma function by the Lanczos approximation (g = 7, 9 terms).

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for real arguments. Uses the reflection formula below
/// `0.5`; returns NaN at the poles `0, -1, -2, ...`. Positive integers get
/// the exact factorial.
pub fn gamma(x: f64) -> f64 {
    if x == x.floor() {
        if x <= 0.0 {
            return f64::NAN;
        }
        if x <= 171.0 {
            return (2..x as u32).fold(1.0, |acc, k| acc * k as f64);
        }
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn known_values() {
        assert_relative_eq!(gamma(0.5), PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gamma(1.5), PI.sqrt() / 2.0, max_relative = 1e-14);
        assert_relative_eq!(gamma(1.0), 1.0, max_relative = 1e-14);
        assert_relative_eq!(gamma(2.0), 1.0, max_relative = 1e-14);
        assert_relative_eq!(gamma(3.0), 2.0, max_relative = 1e-14);
        let mut fact = 1.0;
        for n in 1..30 {
            fact *= n as f64;
            assert_relative_eq!(gamma(n as f64 + 1.0), fact, max_relative = 1e-13);
        }
    }

    #[test]
    fn reflection_and_poles() {
        assert_relative_eq!(gamma(-0.5), -2.0 * PI.sqrt(), max_relative = 1e-14);
        assert!(gamma(0.0).is_nan());
        assert!(gamma(-3.0).is_nan());
    }

    #[test]
    fn matches_independent_implementation() {
        let mut x = 0.01;
        while x <= 30.0 {
            assert_relative_eq!(gamma(x), statrs::function::gamma::gamma(x), max_relative = 1e-12);
            x += 0.037;
        }
    }
}
