use std::path::Path;
use std::process::{Command, Output};

fn quadchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadchar")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn psi_prints_count() {
    let o = quadchar(&["psi", "--x", "100", "--y", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "34\n");
}

#[test]
fn delta_max_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("out.json");
    let csv = dir.path().join("out.csv");
    let o = quadchar(&["delta-max", "--X", "10", "--x", "5", "--json", path_arg(&json), "--csv", path_arg(&csv)]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["d_star"], 13);
    assert_eq!(v["S_star"], 1);
    assert_eq!(v["X_lo"], 10);
    assert_eq!(v["X_hi"], 20);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next().unwrap(), "X_lo,X_hi,x,d_star,S_star,scanned");
    assert_eq!(text.lines().nth(1).unwrap(), "10,20,5,13,1,3");
}

#[test]
fn resonate_csv_header_and_holds() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r.csv");
    let o = quadchar(&[
        "resonate",
        "--variant",
        "short",
        "--X",
        "1e4",
        "--x",
        "50",
        "--alpha",
        "0.01",
        "--delta",
        "0.005",
        "--csv",
        path_arg(&csv),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mut rdr = csv::Reader::from_path(&csv).unwrap();
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["variant", "X", "x", "M1", "M2", "ratio", "observed_max", "holds"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][0], "short");
    assert_eq!(&rows[0][7], "true");
}

#[test]
fn resonate_json_carries_reference_shape() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let o = quadchar(&[
        "resonate",
        "--variant",
        "medium",
        "--X",
        "1e4",
        "--x",
        "3",
        "--window-lo",
        "2",
        "--window-hi",
        "13",
        "--json",
        path_arg(&json),
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["variant"], "medium");
    assert_eq!(v["squared"], true);
    assert_eq!(v["holds"], true);
    assert_eq!(v["theorem"]["theorem"], "1.2");
    assert!(v["theorem"]["predicted_shape"].as_f64().unwrap() > 0.0);
    assert_eq!(v["params"]["primes"], serde_json::json!([2, 3, 5, 7, 11, 13]));
}

#[test]
fn outputs_are_byte_identical_across_runs_and_close_across_threads() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (i, threads) in ["1", "1", "4", "8"].iter().enumerate() {
        let json = dir.path().join(format!("{i}.json"));
        let o = quadchar(&[
            "--threads",
            threads,
            "resonate",
            "--variant",
            "long",
            "--X",
            "1e4",
            "--x",
            "5",
            "--json",
            path_arg(&json),
        ]);
        assert!(o.status.success());
        outputs.push(std::fs::read(&json).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let parse = |b: &[u8]| serde_json::from_slice::<serde_json::Value>(b).unwrap();
    let base = parse(&outputs[0]);
    for other in &outputs[2..] {
        let v = parse(other);
        assert_eq!(v["observed_max"], base["observed_max"]);
        for key in ["M1", "M2", "ratio"] {
            let (a, b) = (v[key].as_f64().unwrap(), base[key].as_f64().unwrap());
            assert!((a - b).abs() <= 1e-9 * b.abs(), "{key}: {a} vs {b}");
        }
    }
}

#[test]
fn gcd_sum_set_file_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let set = dir.path().join("set.txt");
    let first = quadchar(&["gcd-sum", "--N", "200", "--emit-set", path_arg(&set)]);
    assert!(first.status.success());
    assert_eq!(std::fs::read_to_string(&set).unwrap().lines().count(), 200);
    let second = quadchar(&["gcd-sum", "--set-file", path_arg(&set)]);
    assert_eq!(stdout(&first), stdout(&second));
    let long = quadchar(&["resonate", "--variant", "long", "--X", "1e4", "--x", "10", "--set-file", path_arg(&set)]);
    assert!(long.status.success());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("never.json");
    // precondition failure writes nothing
    let o = quadchar(&[
        "resonate",
        "--variant",
        "short",
        "--X",
        "1e4",
        "--x",
        "50",
        "--alpha",
        "0.3",
        "--json",
        path_arg(&json),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!json.exists());
    assert_eq!(String::from_utf8_lossy(&o.stderr).lines().count(), 1);

    let o = quadchar(&["delta-max", "--X", "10", "--x", "5", "--hi", "11", "--json", path_arg(&json)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!json.exists());

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "6\n4\n").unwrap();
    assert_eq!(quadchar(&["gcd-sum", "--set-file", path_arg(&bad)]).status.code(), Some(2));
    assert_eq!(quadchar(&["gcd-sum", "--set-file", path_arg(&dir.path().join("missing"))]).status.code(), Some(1));
    assert_eq!(quadchar(&["--threads", "0", "psi", "--x", "10", "--y", "2"]).status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    for suite in ["arith", "resonance", "gcd"] {
        let o = quadchar(&["--threads", "4", "verify", suite]);
        assert!(o.status.success(), "{}", stdout(&o));
        assert!(stdout(&o).lines().all(|l| l.starts_with("[PASS]")));
    }
}
