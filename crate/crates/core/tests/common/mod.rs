#![allow(dead_code)]

use gstt::{SeriesSample, TimeScale};
use proptest::prelude::*;

/// Unions of up to six intervals and isolated points, left to right from 0.
pub fn scale() -> impl Strategy<Value = TimeScale> {
    prop::collection::vec((any::<bool>(), 0.5f64..2.0, 0.3f64..1.5), 1..7).prop_map(|parts| {
        let mut cursor = 0.0;
        let mut out = Vec::new();
        for (dense, len, gap) in parts {
            if dense {
                out.push((cursor, cursor + len));
                cursor += len;
            } else {
                out.push((cursor, cursor));
            }
            cursor += gap;
        }
        TimeScale::new(out).unwrap()
    })
}

/// Strictly increasing isolated points from 0.
pub fn points() -> impl Strategy<Value = TimeScale> {
    prop::collection::vec(0.1f64..3.0, 1..30).prop_map(|gaps| {
        let mut t = 0.0;
        let mut pts = vec![t];
        for g in gaps {
            t += g;
            pts.push(t);
        }
        TimeScale::points(&pts).unwrap()
    })
}

pub fn samples(times: &[f64], values: &[f64]) -> Vec<SeriesSample> {
    times.iter().zip(values).map(|(&t, &x)| SeriesSample::new(t, x)).collect()
}
