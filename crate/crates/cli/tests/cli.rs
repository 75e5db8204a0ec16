use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const P: u128 = (1 << 61) - 1;

fn qtor(args: &[&str], out_dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtor"))
        .args(args)
        .env("QTOR_OUT_DIR", out_dir)
        .output()
        .expect("binary runs")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn pow_mod(mut b: u128, mut e: u128) -> u128 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

#[test]
fn unsupported_group_order_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = qtor(&["verify", "--n", "2"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at least 3"));
    assert!(!dir.path().join("qtor-report.json").exists());
}

#[test]
fn passing_suites_exit_zero_and_write_to_the_default_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = qtor(
        &[
            "verify",
            "--n",
            "3",
            "--w",
            "1",
            "--colors",
            "0",
            "--suites",
            "boundary,residue,grading",
            "--trunc",
            "3",
        ],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let report = read_json(&dir.path().join("qtor-report.json"));
    assert_eq!(report["passed"], Value::Bool(true));
    let names: Vec<_> = report["suites"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].clone())
        .collect();
    assert_eq!(names, ["boundary", "residue", "grading"]);
    assert_eq!(report["suites"][0]["instances"], 30);
}

#[test]
fn failing_suite_still_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sub").join("r.json");
    let out = qtor(
        &[
            "verify",
            "--n",
            "3",
            "--w",
            "1",
            "--colors",
            "0",
            "--trunc",
            "3",
            "--modes",
            "1",
            "--prime",
            "--seed",
            "42",
            "--suites",
            "currents",
            "--out",
            path.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let report = read_json(&path);
    assert_eq!(report["passed"], Value::Bool(false));
    let currents = &report["suites"][0];
    assert_eq!(currents["sign"]["currents/commutator"]["sign"], -1);
    assert!(currents["failure_count"].as_u64().unwrap() > 0);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let out = qtor(
            &[
                "verify",
                "--n",
                "4",
                "--colors",
                "0,2",
                "--trunc",
                "2",
                "--suites",
                "cross-check,structural",
                "--out",
                path.to_str().unwrap(),
            ],
            dir.path(),
        );
        assert_eq!(out.status.code(), Some(0));
        std::fs::read(path).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn config_file_values_are_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "# small run\nn = 5\ncolors = 3\nsuites = boundary\ntrunc = 2\nexact-boxes = 3\n",
    )
    .unwrap();
    let path = dir.path().join("r.json");
    let out = qtor(
        &[
            "verify",
            "--config",
            cfg.to_str().unwrap(),
            "--exact-boxes",
            "4",
            "--out",
            path.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let report = read_json(&path);
    assert_eq!(report["config"]["n"], 5);
    assert_eq!(report["config"]["colors"], serde_json::json!([3]));
    assert_eq!(report["config"]["exact_boxes"], 4);
    // partitions of 0..=4
    assert_eq!(report["suites"][0]["instances"], 12);

    std::fs::write(&cfg, "n = 3\nfoo = 1\n").unwrap();
    let out = qtor(&["verify", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dump_single_x_minus_entry() {
    let dir = tempfile::tempdir().unwrap();
    let out = qtor(
        &[
            "dump", "--kind", "x-", "--k", "0", "--w", "1", "--trunc", "0",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries = doc["matrix"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0][0], 0);
    assert_eq!(entries[0][1], 1);
    let vals: Vec<u128> = doc["point"]["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().parse().unwrap())
        .collect();
    let (q, t, x) = (vals[0], vals[1], vals[2]);
    let expected = q * t % P * pow_mod(x, P - 2) % P;
    assert_eq!(entries[0][2], expected.to_string());
}

#[test]
fn dump_edge_cases() {
    let dir = tempfile::tempdir().unwrap();
    let out = qtor(
        &["dump", "--kind", "x+", "--k", "0", "--trunc", "0"],
        dir.path(),
    );
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["matrix"]["entries"].as_array().unwrap().is_empty());

    let out = qtor(
        &["dump", "--kind", "eps", "--k", "1", "--trunc", "3"],
        dir.path(),
    );
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    for e in doc["matrix"]["entries"].as_array().unwrap() {
        assert_eq!(e[0], e[1]);
        let v = e[2].as_str().unwrap();
        assert!(v == "1" || v == (P - 1).to_string(), "{v}");
    }

    let out = qtor(&["dump", "--kind", "y+", "--k", "0"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = qtor(&["dump", "--kind", "x+", "--k", "7"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dumps_are_stable() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "dump",
        "--kind",
        "h+",
        "--k",
        "2",
        "--s",
        "-1",
        "--twisted",
        "--colors",
        "0,1",
    ];
    assert_eq!(
        qtor(&args, dir.path()).stdout,
        qtor(&args, dir.path()).stdout
    );
}

#[test]
fn enumerate_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let out = qtor(
        &[
            "enumerate",
            "--n",
            "3",
            "--boxes",
            "4",
            "--out",
            path.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(&header[..3], ["lambda", "v", "dim_t"]);
    assert_eq!(header.len(), 3 + 2 * 3);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 12);
    assert_eq!(&rows[0][0], "[[]]");
    assert_eq!(&rows[0][1], "0 0 0");
    assert_eq!(&rows[0][2], "0");
}
