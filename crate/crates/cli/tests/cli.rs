use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gstt::{GreyParams, TimeScale};

fn gstt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gstt")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn exact_dataset(dir: &Path) -> PathBuf {
    let ts = TimeScale::integers(0, 9).unwrap();
    let truth = GreyParams::new(0.1, 5.0, 2.0, 0.0);
    let times: Vec<f64> = (0..10).map(f64::from).collect();
    let mut text = String::from("t,x\n");
    for s in truth.series(&ts, &times).unwrap() {
        text.push_str(&format!("{},{}\n", s.t, s.x));
    }
    write(dir, "exact.csv", &text)
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn fit_prints_key_value_lines() {
    let dir = tempfile::tempdir().unwrap();
    let input = exact_dataset(dir.path());
    let text = stdout(&gstt(&["fit", "--input", input.to_str().unwrap()]));
    let keys: Vec<&str> = text.lines().map(|l| l.split('=').next().unwrap()).collect();
    assert_eq!(keys, ["a", "b", "residual_norm", "mape", "rmse"]);
}

#[test]
fn forecast_with_and_without_horizon() {
    let dir = tempfile::tempdir().unwrap();
    let input = exact_dataset(dir.path());
    let input = input.to_str().unwrap();
    let fitted = stdout(&gstt(&["forecast", "--input", input, "--horizon", "0"]));
    assert_eq!(fitted.lines().next(), Some("t,x_hat"));
    assert_eq!(fitted.lines().count(), 11);
    let out = dir.path().join("forecast.csv");
    stdout(&gstt(&["forecast", "--input", input, "--horizon", "3", "--output", out.to_str().unwrap()]));
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(written.lines().count(), 14);
    assert!(written.starts_with(&fitted));
    let truth = GreyParams::new(0.1, 5.0, 2.0, 0.0);
    let ext = TimeScale::integers(0, 12).unwrap();
    let last: f64 = written.lines().last().unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((last - truth.x_hat(&ext, 12.0).unwrap()).abs() < 1e-9);
}

#[test]
fn integrate_writes_accumulation() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "ones.csv", "t,x\n0,1\n1,1\n2,1\n3,1\n");
    let text = stdout(&gstt(&["integrate", "--input", input.to_str().unwrap()]));
    assert_eq!(text, "t,y\n0,1\n1,2\n2,3\n3,4\n");
}

#[test]
fn custom_time_scale() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "hybrid.csv", "t,x\n0,2\n1,3\n1.5,3.5\n2,4\n");
    let text = stdout(&gstt(&["integrate", "--input", input.to_str().unwrap(), "--timescale", "0;1..2"]));
    assert_eq!(text.lines().nth(2), Some("1,5"));
}

#[test]
fn frac_compare_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("cmp.csv");
    let svg = dir.path().join("cmp.svg");
    let out = gstt(&[
        "frac-compare", "--orders", "0.4,0.3", "--t-max", "15", "--dt", "1",
        "--output", csv.to_str().unwrap(), "--svg", svg.to_str().unwrap(),
    ]);
    assert!(stdout(&out).is_empty());
    let table = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(table.lines().next(), Some("order,t,analytic,rl_numeric,fago"));
    assert_eq!(table.lines().count(), 31);
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<svg"));
}

#[test]
fn help_lists_exit_codes() {
    let text = stdout(&gstt(&["--help"]));
    assert!(text.contains("Exit codes:") && text.contains("11  coefficient is not regressive"));
}

fn code(out: &Output) -> i32 {
    let line = String::from_utf8_lossy(&out.stderr);
    assert_eq!(line.trim_end().lines().count(), 1, "diagnostic: {line}");
    out.status.code().unwrap()
}

#[test]
fn errors_map_to_distinct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let path = |name, text| write(d, name, text).to_str().unwrap().to_owned();
    let fit = |input: &str, extra: &[&str]| {
        let mut args = vec!["fit", "--input", input];
        args.extend_from_slice(extra);
        code(&gstt(&args))
    };
    assert_eq!(fit(d.join("missing.csv").to_str().unwrap(), &[]), 3);
    assert_eq!(fit(&path("bad.csv", "t,x\n0,1\n1,abc\n"), &[]), 4);
    assert_eq!(fit(&path("repeat.csv", "t,x\n0,1\n1,1\n1,2\n"), &[]), 5);
    let ok = path("ok.csv", "t,x\n0,1\n1,2\n2,3\n3,5\n");
    assert_eq!(fit(&ok, &["--timescale", "3..1"]), 6);
    assert_eq!(fit(&path("off.csv", "t,x\n0,1\n0.5,2\n1,3\n2,4\n"), &[]), 7);
    assert_eq!(fit(&path("gap.csv", "t,x\n0,1\n2,2\n3,3\n4,4\n"), &["--timescale", "0;1;2;3;4"]), 8);
    assert_eq!(fit(&path("short.csv", "t,x\n0,1\n1,2\n2,3\n"), &[]), 9);
    assert_eq!(fit(&path("zeros.csv", "t,x\n0,0\n1,0\n2,0\n3,0\n"), &[]), 10);
    assert_eq!(fit(&path("reg.csv", "t,x\n0,2\n1,3\n2,0\n3,0\n4,0\n"), &[]), 11);
    assert_eq!(fit(&path("empty.csv", "t,x\n"), &[]), 15);
    assert_eq!(code(&gstt(&["frac-compare", "--orders", "-0.5"])), 12);
    assert_eq!(code(&gstt(&["frac-compare", "--dt", "0.7"])), 12);
    assert_eq!(gstt(&["fit"]).status.code(), Some(2));
}

#[test]
fn failures_leave_no_output_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("cmp.csv");
    let svg = dir.path().join("no-such-dir").join("cmp.svg");
    let out = gstt(&[
        "frac-compare", "--output", csv.to_str().unwrap(), "--svg", svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3);
    let short = write(dir.path(), "short.csv", "t,x\n0,1\n1,2\n");
    let target = dir.path().join("forecast.csv");
    let out = gstt(&["forecast", "--input", short.to_str().unwrap(), "--output", target.to_str().unwrap()]);
    assert_eq!(code(&out), 9);
    let left: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(left, vec![std::ffi::OsString::from("short.csv")]);
}
