//! End-to-end checks of the `disc-diffeo` binary: exit codes, CSV shapes,
//! determinism, and the error stream / data stream split.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_disc-diffeo"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

#[test]
fn norm_field_csv_has_header_and_origin_values() {
    let out = run(&["norm-field", "--t", "2", "--grid", "64x64", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,y,jac_norm,jac_det");
    assert_eq!(lines.len(), 1 + 64 * 64);
    let first: Vec<f64> = lines[1].split(',').map(|f| f.parse().unwrap()).collect();
    assert_eq!(first, vec![0.0, 0.0, 2.0, 4.0]);
}

#[test]
fn norm_field_of_the_identity_is_flat() {
    let out = run(&["norm-field", "--t", "1", "--grid", "8x8"]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout_str(&out).lines().skip(1) {
        let fields: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        assert_eq!(fields[2], 1.0, "jac_norm must be 1 everywhere");
        assert_eq!(fields[3], 1.0, "jac_det must be 1 everywhere");
    }
}

#[test]
fn norm_field_rejects_bad_parameters() {
    assert_eq!(run(&["norm-field", "--t", "-1"]).status.code(), Some(1));
    assert_eq!(run(&["norm-field", "--t", "0"]).status.code(), Some(1));
    assert_eq!(run(&["norm-field"]).status.code(), Some(1));
    assert_eq!(
        run(&["norm-field", "--t", "2", "--grid", "bogus"]).status.code(),
        Some(1)
    );
}

#[test]
fn metric_row_matches_the_closed_forms() {
    let out = run(&["metric", "--t", "2", "--t", "1", "--convention", "spectral"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t1,t2,sup_value,sup_jac,d_g,argmax_r_value,argmax_r_jac,convention"
    );
    let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
    let sup_value: f64 = fields[2].parse().unwrap();
    let sup_jac: f64 = fields[3].parse().unwrap();
    let d_g: f64 = fields[4].parse().unwrap();
    assert!((sup_value - 0.17157287525380996).abs() < 1e-9);
    assert!((sup_jac - 1.0).abs() < 1e-9);
    assert!((d_g - 1.1715728752538097).abs() < 1e-9);
    assert_eq!(fields[7], "spectral");
}

#[test]
fn metric_of_equal_parameters_is_zero() {
    let out = run(&["metric", "--t", "3", "--t", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    let fields: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(fields[2].parse::<f64>().unwrap(), 0.0);
    assert_eq!(fields[3].parse::<f64>().unwrap(), 0.0);
    assert_eq!(fields[4].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn metric_requires_exactly_two_parameters() {
    let out = run(&["metric", "--t", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty(), "usage error goes to stderr");
    assert!(out.stdout.is_empty(), "no data on stdout for usage errors");
}

#[test]
fn metric_supports_the_entrywise_convention() {
    let out = run(&["metric", "--t", "2", "--t", "1", "--convention", "entrywise"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    let fields: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let sup_jac: f64 = fields[3].parse().unwrap();
    // entrywise sup against the identity is the diagonal value t − 1
    assert!((sup_jac - 1.0).abs() < 1e-6, "entrywise sup {sup_jac}");
    assert_eq!(fields[7], "entrywise_max");
}

#[test]
fn converge_default_schedule_has_twenty_rows_and_a_rate_line() {
    let out = run(&["converge"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "t,sup_value,sup_jac,d_g,bound_value,bound_diag,bound_offdiag"
    );
    assert_eq!(lines.len(), 1 + 20 + 1);
    assert!(lines[21].starts_with("# rate_exponent="));

    let mut last_dg = f64::INFINITY;
    for line in &lines[1..21] {
        let fields: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        let (t, sup_value, d_g, bound_value) = (fields[0], fields[1], fields[3], fields[4]);
        assert!(sup_value <= bound_value + 1e-9, "sup_value above t − 1 at t = {t}");
        assert!(d_g < last_dg, "d_g not strictly decreasing at t = {t}");
        last_dg = d_g;
    }
}

#[test]
fn converge_single_parameter_emits_no_rate_line() {
    let out = run(&["converge", "--t", "1.5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    assert_eq!(text.lines().count(), 2);
    assert!(!text.contains("rate_exponent"));
}

#[test]
fn converge_rejects_parameters_at_or_below_one() {
    assert_eq!(run(&["converge", "--t", "0.9"]).status.code(), Some(1));
    assert_eq!(run(&["converge", "--t", "1"]).status.code(), Some(1));
}

#[test]
fn converge_is_deterministic_byte_for_byte() {
    let a = run(&["converge", "--seed", "11"]);
    let b = run(&["converge", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_passes_and_fails_with_the_right_codes() {
    let ok = run(&["verify", "--t", "2", "--seed", "42"]);
    assert_eq!(ok.status.code(), Some(0));
    let text = stdout_str(&ok);
    assert!(text.starts_with("check,passed,worst,threshold"));
    assert!(text.contains("boundary_fixed,true"));
    assert!(text.contains("jacobian_det_positive,true"));
    assert!(text.contains("inverse_round_trip,true"));
    assert!(text.contains("image_in_disc,true"));
    assert!(text.contains("specnorm2_vs_eigen_oracle,true"));
    assert!(text.trim_end().ends_with("# all_passed=true"));

    assert_eq!(run(&["verify", "--t", "1"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--t", "0"]).status.code(), Some(1));
}

#[test]
fn output_flag_writes_the_same_bytes_as_stdout() {
    let dir = std::env::temp_dir().join("disc-diffeo-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("metric.csv");
    let piped = run(&["metric", "--t", "2", "--t", "1"]);
    let filed = run(&["metric", "--t", "2", "--t", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(filed.status.code(), Some(0));
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, piped.stdout);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn unwritable_output_exits_with_io_code() {
    let out = run(&[
        "metric",
        "--t",
        "2",
        "--t",
        "1",
        "--out",
        "/nonexistent-dir/metric.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn svg_outputs_are_wellformed_enough() {
    let field = run(&["norm-field", "--t", "2", "--format", "svg"]);
    assert_eq!(field.status.code(), Some(0));
    let text = stdout_str(&field);
    assert!(text.starts_with("<svg "));
    assert!(text.trim_end().ends_with("</svg>"));
    assert!(text.contains("<rect"));

    let conv = run(&["converge", "--format", "svg"]);
    assert_eq!(conv.status.code(), Some(0));
    let text = stdout_str(&conv);
    assert!(text.starts_with("<svg "));
    assert!(text.contains("<polyline"));
    assert!(text.contains("slope ="));
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["converge", "--help"]).status.code(), Some(0));
}

#[test]
fn csv_numbers_round_trip_exactly() {
    let out = run(&["metric", "--t", "1.1", "--t", "1"]);
    let text = stdout_str(&out);
    let fields: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    // serialized with 17 significant digits; parsing is loss-free
    let d_g: f64 = fields[4].parse().unwrap();
    let sup_value: f64 = fields[2].parse().unwrap();
    let sup_jac: f64 = fields[3].parse().unwrap();
    assert_eq!(d_g, sup_value + sup_jac);
    assert!((d_g - 0.1238230365969692).abs() < 1e-9);
}
