use gstt::fractional::{compare_experiment, fago, fago_weights, frac_weights, max_rl_relative_error, rl_numeric};
use gstt::{FracMatrix, FracOrder};
use proptest::prelude::*;
use statrs::function::gamma::gamma as oracle_gamma;

fn order() -> impl Strategy<Value = f64> {
    0.05f64..2.5
}

proptest! {
    #[test]
    fn accumulation_weights_are_gamma_ratios(r in order(), n in 1usize..60) {
        let w = fago_weights(n, r).unwrap();
        for (m, &got) in w.as_slice().iter().enumerate() {
            let want = oracle_gamma(r + m as f64) / (oracle_gamma(r) * oracle_gamma(m as f64 + 1.0));
            prop_assert!(((got - want) / want).abs() < 1e-9, "m = {m}: {got} vs {want}");
        }
    }

    #[test]
    fn accumulation_semigroup(r1 in order(), r2 in order(), f in prop::collection::vec(-10.0f64..10.0, 1..40)) {
        let twice = fago(&fago(&f, r1).unwrap(), r2).unwrap();
        let once = fago(&f, r1 + r2).unwrap();
        let scale = once.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for (p, q) in twice.iter().zip(&once) {
            prop_assert!((p - q).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn matrix_equals_sums(r in order(), dt in 0.1f64..2.0, f in prop::collection::vec(-10.0f64..10.0, 1..60)) {
        let order = FracOrder::new(r, dt).unwrap();
        let m = FracMatrix::build(f.len(), order).unwrap();
        let w = frac_weights(f.len(), r).unwrap();
        let w = w.as_slice();
        let applied = m.apply(&f).unwrap();
        prop_assert!(m.is_upper_triangular());
        for j in 0..f.len() {
            let terms: Vec<f64> = (0..=j).map(|k| w[j - k] * f[k]).collect();
            let direct = order.scale() * terms.iter().sum::<f64>();
            let size = order.scale() * terms.iter().map(|v| v.abs()).sum::<f64>();
            prop_assert!((applied[j] - direct).abs() <= 1e-14 * size.max(1.0));
        }
    }

    // beyond r = 2 the inverse grows geometrically with n
    #[test]
    fn inverse_round_trips(r in 0.05f64..2.0, n in 1usize..120, seed in prop::collection::vec(0.5f64..10.0, 8)) {
        let order = FracOrder::new(r, 1.0).unwrap();
        let m = FracMatrix::build(n, order).unwrap();
        let inv = m.invert().unwrap();
        prop_assert!(inv.multiply(&m).unwrap().max_abs_diff(&FracMatrix::identity(n)) < 1e-10);
        let f: Vec<f64> = (0..n).map(|k| seed[k % 8] * (1.0 + k as f64).sqrt()).collect();
        let back = m.restore(&rl_numeric(&f, order).unwrap()).unwrap();
        for (b, v) in back.iter().zip(&f) {
            prop_assert!(((b - v) / v).abs() < 1e-9);
        }
    }

    #[test]
    fn positive_inputs_stay_positive(r in order(), f in prop::collection::vec(0.01f64..10.0, 1..50)) {
        prop_assert!(frac_weights(f.len(), r).unwrap().as_slice().iter().all(|&w| w > 0.0));
        prop_assert!(rl_numeric(&f, FracOrder::new(r, 0.5).unwrap()).unwrap().iter().all(|&v| v > 0.0));
        prop_assert!(fago(&f, r).unwrap().iter().all(|&v| v > 0.0));
    }
}

#[test]
fn unit_order_is_the_cumulative_sum() {
    let f = [3.5, -1.25, 8.0, 0.5, 2.0];
    let cum: Vec<f64> = f.iter().scan(0.0, |s, v| { *s += v; Some(*s) }).collect();
    assert_eq!(rl_numeric(&f, FracOrder::new(1.0, 1.0).unwrap()).unwrap(), cum);
    assert_eq!(fago(&f, 1.0).unwrap(), cum);
}

#[test]
fn refinement_ladder_is_monotone() {
    for r in [0.3, 0.4, 0.7, 1.5] {
        let errs: Vec<f64> = [1.0, 0.5, 0.25, 0.125]
            .iter()
            .map(|&dt| max_rl_relative_error(&compare_experiment(&[r], 15.0, dt).unwrap(), 1.0))
            .collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "r = {r}: {errs:?}");
    }
}

#[test]
fn scalar_matrix() {
    let order = FracOrder::new(0.4, 2.0).unwrap();
    let m = FracMatrix::build(1, order).unwrap();
    let want = 2f64.powf(0.4) / oracle_gamma(1.4);
    assert!((m.get(0, 0) - want).abs() < 1e-12 * want);
    assert!((m.invert().unwrap().get(0, 0) - 1.0 / want).abs() < 1e-12 / want);
}
