use std::path::Path;

use gstt::{SeriesSample, TimeScale};

use crate::error::CliError;

/// Reads a `t,x` CSV with header. Times must be strictly increasing.
pub fn parse_csv(path: &Path) -> Result<Vec<SeriesSample>, CliError> {
    let file = std::fs::File::open(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_reader(file, path)
}

pub fn parse_reader<R: std::io::Read>(reader: R, path: &Path) -> Result<Vec<SeriesSample>, CliError> {
    let parse_err = |line: u64, message: String| CliError::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers().map_err(|e| parse_err(1, e.to_string()))?.clone();
    if headers.len() != 2 || &headers[0] != "t" || &headers[1] != "x" {
        return Err(parse_err(1, format!("expected header `t,x`, found `{}`", headers.iter().collect::<Vec<_>>().join(","))));
    }
    let mut out: Vec<SeriesSample> = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let cell = |i: usize, name: &str| -> Result<f64, CliError> {
            let raw = &record[i];
            match raw.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(parse_err(line, format!("column `{name}`: {raw:?} is not a finite number"))),
            }
        };
        let t = cell(0, "t")?;
        let x = cell(1, "x")?;
        if let Some(prev) = out.last() {
            if t <= prev.t {
                return Err(CliError::NonMonotoneTime {
                    path: path.to_path_buf(),
                    line,
                    t,
                });
            }
        }
        out.push(SeriesSample::new(t, x));
    }
    if out.is_empty() {
        return Err(gstt::Error::EmptyInput.into());
    }
    Ok(out)
}

/// Snaps every timestamp onto `ts`; an off-scale timestamp is reported by
/// value.
pub fn snap_to(samples: &[SeriesSample], ts: &TimeScale) -> Result<Vec<SeriesSample>, CliError> {
    samples
        .iter()
        .map(|s| Ok(SeriesSample::new(ts.snap(s.t)?, s.x)))
        .collect()
}

/// Integer lattice from the first timestamp to the last plus `extra`.
pub fn default_lattice(samples: &[SeriesSample], extra: usize) -> Result<TimeScale, CliError> {
    let first = samples.first().ok_or(gstt::Error::EmptyInput)?.t;
    let last = samples[samples.len() - 1].t;
    let as_int = |t: f64| -> Result<i64, CliError> {
        let r = t.round();
        if (t - r).abs() > gstt::timescale::MEMBERSHIP_TOL {
            return Err(gstt::Error::Membership(t).into());
        }
        Ok(r as i64)
    };
    Ok(TimeScale::integers(as_int(first)?, as_int(last)? + extra as i64)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Vec<SeriesSample>, CliError> {
        parse_reader(text.as_bytes(), Path::new("mem.csv"))
    }

    #[test]
    fn two_samples() {
        let s = parse("t,x\n0,2\n1,3\n").unwrap();
        assert_eq!(s, vec![SeriesSample::new(0.0, 2.0), SeriesSample::new(1.0, 3.0)]);
    }

    #[test]
    fn bad_cell_reports_line() {
        match parse("t,x\n0,2\n1,abc\n") {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("time,x\n0,1\n"), Err(CliError::Parse { line: 1, .. })));
        assert!(matches!(parse("t,x\n0,1,2\n"), Err(CliError::Parse { .. })));
    }

    #[test]
    fn repeated_time_is_rejected() {
        match parse("t,x\n0,1\n1,1\n1,2\n") {
            Err(CliError::NonMonotoneTime { line, t, .. }) => assert_eq!((line, t), (4, 1.0)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn lattice_and_snapping() {
        let s = parse("t,x\n2,1\n3.0000000001,1\n4,1\n").unwrap();
        let ts = default_lattice(&s, 2).unwrap();
        assert_eq!(ts, TimeScale::integers(2, 6).unwrap());
        assert_eq!(snap_to(&s, &ts).unwrap()[1].t, 3.0);
        let off = parse("t,x\n0,1\n0.5,1\n").unwrap();
        assert!(matches!(
            default_lattice(&off, 0),
            Err(CliError::Model(gstt::Error::Membership(t))) if t == 0.5
        ));
    }
}
