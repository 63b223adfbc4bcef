use std::fs;
use std::process::{Command, Output};

fn qwkb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwkb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn column(line: &str, idx: usize) -> f64 {
    line.split(',').nth(idx).unwrap().parse().unwrap()
}

#[test]
fn linear_spectrum_all_methods() {
    let out = qwkb(&[
        "spectrum",
        "--potential",
        "linear",
        "--mu",
        "1",
        "--Q",
        "1",
        "--n",
        "1:3",
        "--l",
        "0",
        "--method",
        "all",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("n,l,E_wkb,E_closed,E_oracle"));
    assert!((column(lines[1], 3) - 1.4054).abs() < 1e-4);
    assert!((column(lines[1], 4) - 1.8558).abs() < 1e-4);
    for line in &lines[1..] {
        assert!((column(line, 2) - column(line, 3)).abs() < 1e-9);
    }
}

#[test]
fn published_log_closed_form() {
    let out = qwkb(&[
        "spectrum",
        "--potential",
        "log",
        "--E0",
        "1",
        "--r0",
        "1",
        "--Q",
        "1",
        "--n",
        "1:1",
        "--method",
        "closed-form",
        "--log-variant",
        "paper",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    assert!((column(row, 3) + 0.3104).abs() < 1e-4);
}

#[test]
fn log_closed_form_without_variant_prints_notice() {
    let out = qwkb(&[
        "spectrum",
        "--potential",
        "log",
        "--E0",
        "1",
        "--r0",
        "1",
        "--Q",
        "1",
        "--n",
        "1:1",
        "--method",
        "closed-form",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!out.stderr.is_empty());
    let row = stdout(&out).lines().nth(1).unwrap().to_string();
    assert!((column(&row, 3) - 0.036182471462).abs() < 1e-9);
}

#[test]
fn json_output_has_meta_and_rows() {
    let out = qwkb(&[
        "spectrum",
        "--potential",
        "cubic",
        "--nu",
        "1",
        "--Q",
        "1",
        "--n",
        "1:2",
        "--output",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert!(v["meta"].is_object());
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec![
            "spectrum",
            "--potential",
            "linear",
            "--mu",
            "1",
            "--Q",
            "1",
            "--method",
            "",
        ],
        vec![
            "spectrum",
            "--potential",
            "linear",
            "--mu",
            "1",
            "--Q",
            "1",
            "--maslov",
            "0.3",
        ],
        vec![
            "spectrum",
            "--potential",
            "linear",
            "--mu",
            "1",
            "--Q",
            "1",
            "--n",
            "3:1",
        ],
        vec![
            "spectrum",
            "--potential",
            "linear",
            "--mu",
            "1",
            "--Q",
            "1",
            "--l",
            "1",
            "--method",
            "closed-form",
        ],
        vec!["spectrum", "--potential", "bogus"],
        vec!["nonsense"],
    ] {
        let out = qwkb(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn numerical_failure_exits_two() {
    let out = qwkb(&[
        "spectrum",
        "--potential",
        "linear",
        "--mu",
        "1",
        "--Q",
        "1",
        "--l",
        "0",
        "--langer",
        "off",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn unwritable_output_fails() {
    let out = qwkb(&[
        "spectrum",
        "--potential",
        "linear",
        "--mu",
        "1",
        "--Q",
        "1",
        "--out",
        "/nonexistent/dir/out.csv",
    ]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = [
        "spectrum",
        "--potential",
        "cubic",
        "--nu",
        "2",
        "--Q",
        "1",
        "--n",
        "1:8",
        "--l",
        "1",
        "--method",
        "wkb-numeric,oracle",
    ];
    let a = qwkb(&args);
    let b = qwkb(&args);
    let c = qwkb(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn config_file_matches_flags_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(&cfg, "# linear run\npotential = linear\nmu = 1\nQ = 1\nn = 1:4\nmethod = wkb-numeric,closed-form\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let from_file = qwkb(&["spectrum", "--config", cfg]);
    let from_flags = qwkb(&[
        "spectrum",
        "--potential",
        "linear",
        "--mu",
        "1",
        "--Q",
        "1",
        "--n",
        "1:4",
        "--method",
        "wkb-numeric,closed-form",
    ]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, from_flags.stdout);

    let overridden = qwkb(&["spectrum", "--config", cfg, "--n", "1:2"]);
    assert_eq!(stdout(&overridden).lines().count(), 3);
}

#[test]
fn writes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.csv");
    let out = qwkb(&[
        "spectrum",
        "--potential",
        "linear",
        "--mu",
        "1",
        "--Q",
        "1",
        "--n",
        "1:2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 3);
}

#[test]
fn phase_wavefunction_and_field_subcommands() {
    let phase = qwkb(&[
        "phase",
        "--potential",
        "cubic",
        "--nu",
        "1",
        "--Q",
        "1",
        "--energy",
        "1",
    ]);
    assert_eq!(phase.status.code(), Some(0));
    let text = stdout(&phase);
    let row = text.lines().nth(1).unwrap();
    assert!((column(row, 3) - 1.189_790_970_16).abs() < 1e-10);
    assert!((column(row, 3) - column(row, 6)).abs() < 1e-10);

    let wf = qwkb(&[
        "wavefunction",
        "--potential",
        "linear",
        "--mu",
        "1",
        "--Q",
        "1",
        "--n",
        "2:2",
        "--points",
        "50",
    ]);
    assert_eq!(wf.status.code(), Some(0));
    assert_eq!(stdout(&wf).lines().count(), 51);

    let field = qwkb(&[
        "field",
        "--potential",
        "log",
        "--E0",
        "1",
        "--r0",
        "1",
        "--Q",
        "1",
        "--points",
        "20",
    ]);
    assert_eq!(field.status.code(), Some(0));
    assert_eq!(stdout(&field).lines().count(), 21);
}

#[test]
fn verify_passes() {
    let out = qwkb(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.lines().all(|l| !l.starts_with("FAIL")));
}
