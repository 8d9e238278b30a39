use std::process::Command;

use mpbc_bounds::cli::run;

fn invoke(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mpbc-bounds").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn bound_hamming_point() {
    let (code, out, _) = invoke(&["bound", "--t", "1", "--v", "7", "--M", "1", "--E", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("rhs: 8\n"), "{out}");
    assert!(out.contains("min_redundancy: 3\n"));
    assert!(out.contains("rate_upper: 0.571428571429\n"));
}

#[test]
fn bound_gap_examples() {
    let (code, out, _) = invoke(&["bound", "--t", "1", "--v", "15", "--M", "1", "--u", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("rhs: 61\n") && out.contains("min_redundancy: 6\n"), "{out}");

    let (code, out, _) = invoke(&["bound", "--t", "2", "--v", "6", "--M", "1", "--u", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("rhs: 25\n") && out.contains("min_redundancy: 5\n"), "{out}");

    let (code, out, _) = invoke(&["bound", "--t", "3", "--v", "4", "--M", "1", "--full"]);
    assert_eq!(code, 0);
    assert!(out.contains("rhs: 46\n"), "{out}");
}

#[test]
fn bound_usage_errors() {
    // conflicting capabilities
    let (code, _, err) = invoke(&["bound", "--t", "1", "--v", "7", "--M", "1", "--E", "1", "--u", "2"]);
    assert_eq!(code, 2, "{err}");
    // missing capability
    assert_eq!(invoke(&["bound", "--t", "1", "--v", "7", "--M", "1"]).0, 2);
    // violated invariants
    assert_eq!(invoke(&["bound", "--t", "1", "--v", "7", "--M", "2", "--E", "1"]).0, 2);
    let (code, _, err) = invoke(&["bound", "--t", "1", "--v", "7", "--M", "1", "--u", "7"]);
    assert_eq!(code, 2);
    assert!(err.contains("u=7"), "{err}");
}

#[test]
fn sbc_with_abramson() {
    let (code, out, _) = invoke(&["sbc", "--n", "15", "--u", "3", "--abramson"]);
    assert_eq!(code, 0);
    assert!(out.contains("rhs: 61\n") && out.contains("abramson_rhs: 61\n"));
    assert!(out.contains("abramson: EQUAL\n"));

    let (code, out, _) = invoke(&["sbc", "--n", "20", "--u", "15", "--abramson"]);
    assert_eq!(code, 0);
    assert!(out.contains("rhs: 296181\n"), "{out}");
    assert!(out.contains("abramson: DIFFERS\n"));

    assert_eq!(invoke(&["sbc", "--n", "15", "--u", "20"]).0, 2);
}

#[test]
fn sweep_csv_to_stdout() {
    let (code, out, err) = invoke(&["sweep", "--t", "1", "--v", "7", "--m", "1:1", "--sym", "1:1"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "M,symbols,rate_gap,rate_nogap,diff,redundancy_gap,redundancy_nogap\n1,1,,0.571428571429,,,3\n"
    );
    assert!(err.contains("gap bound skipped for symbols 1"), "{err}");
}

#[test]
fn sweep_edge_cell() {
    let (code, out, _) = invoke(&["sweep", "--t", "10", "--v", "100", "--m", "5:5", "--sym", "5:5"]);
    assert_eq!(code, 0);
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row.len(), 7);
    let diff: f64 = row[4].parse().unwrap();
    assert!(diff > 0.0 && diff < 0.1, "{diff}");
}

#[test]
fn sweep_file_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for (path, threads) in [(&a, "1"), (&b, "4")] {
        let (code, out, _) = invoke(&[
            "sweep", "--t", "4", "--v", "20", "--m", "1:4", "--sym", "1:20", "--format", "json",
            "--threads", threads, "-o", path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        assert!(out.starts_with("max diff "), "{out}");
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());

    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    let rows = json["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 80);
    assert_eq!(json["params"]["skipped_gap_symbols"], serde_json::json!([1, 20]));
    assert_eq!(rows[0]["M"], 1);
    assert!(rows[0]["rate_gap"].is_null());
    for r in rows {
        if let Some(d) = r["diff"].as_f64() {
            assert!(d >= -1e-9);
        }
    }
}

#[test]
fn sweep_errors() {
    assert_eq!(invoke(&["sweep", "--t", "3", "--v", "9", "--m", "1:4", "--sym", "2:3"]).0, 2);
    assert_eq!(invoke(&["sweep", "--t", "3", "--v", "9", "--m", "3:1", "--sym", "2:3"]).0, 2);
    let (code, _, err) = invoke(&[
        "sweep", "--t", "3", "--v", "9", "--m", "1:3", "--sym", "2:3", "-o",
        "/nonexistent-dir/x/out.csv",
    ]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn verify_suites() {
    let (code, out, _) = invoke(&["verify", "--suite", "combinatorics", "--max-x", "12"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS combinatorics"), "{out}");

    let (code, out, _) = invoke(&["verify", "--suite", "identities"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS identities"), "{out}");

    let (code, out, _) = invoke(&["verify", "--suite", "subblock", "--max-v", "10"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS subblock"), "{out}");
    assert!(out.contains("subblock v=10 u=9 "), "{out}");

    let (code, out, _) = invoke(&["verify", "--suite", "theorem1", "--max-v", "9"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS theorem1"));

    assert_eq!(invoke(&["verify", "--suite", "bogus"]).0, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_mpbc-bounds");
    let ok = Command::new(bin)
        .args(["bound", "--t", "1", "--v", "7", "--M", "1", "--E", "1"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("rhs: 8"));

    let bad = Command::new(bin).args(["sbc", "--n", "15"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));

    let threads = Command::new(bin)
        .env("MPBC_BOUNDS_THREADS", "zero")
        .args(["sweep", "--t", "1", "--v", "7", "--m", "1:1", "--sym", "2:3"])
        .output()
        .unwrap();
    assert_eq!(threads.status.code(), Some(2));

    let threads = Command::new(bin)
        .env("MPBC_BOUNDS_THREADS", "2")
        .args(["sweep", "--t", "1", "--v", "7", "--m", "1:1", "--sym", "2:3"])
        .output()
        .unwrap();
    assert_eq!(threads.status.code(), Some(0));
}
