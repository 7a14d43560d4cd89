use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn skein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skein")).args(args).output().expect("binary runs")
}

/// Runs without the cache and parses the JSON report.
fn report(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--no-cache"];
    full.extend_from_slice(args);
    let out = skein(&full);
    let code = out.status.code().expect("exit code");
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (code, v)
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn product_of(dir: &Path, x: &str, y: &str, at: &str) -> Vec<Value> {
    let xp = write(dir, "x.json", x);
    let yp = write(dir, "y.json", y);
    let (code, v) = report(&["skein-mul", s(&xp), s(&yp), "--at", at]);
    assert_eq!(code, 0);
    v["values"]["product"].as_array().unwrap().clone()
}

#[test]
fn skein_mul_examples() {
    let dir = TempDir::new().unwrap();
    let m = r#"{"d":1,"p":1,"q":0}"#;
    let l = r#"{"d":1,"p":0,"q":1}"#;
    let ml = product_of(dir.path(), m, l, "formal");
    let want: Value = serde_json::from_str(
        r#"[{"curve":{"d":1,"p":1,"q":-1},"coeff":{"1":"1"}},{"curve":{"d":1,"p":1,"q":1},"coeff":{"-1":"1"}}]"#,
    )
    .unwrap();
    assert_eq!(Value::Array(ml), want);

    let mm = product_of(dir.path(), m, m, "formal");
    assert_eq!(mm.len(), 1);
    assert_eq!(mm[0]["curve"], serde_json::json!({"d": 2, "p": 1, "q": 0}));
    assert_eq!(mm[0]["coeff"], serde_json::json!({"0": "1"}));

    let x = r#"[{"curve":{"d":1,"p":1,"q":1},"coeff":3},{"curve":"empty","coeff":{"laurent":{"2":"-1"}}}]"#;
    let ex = product_of(dir.path(), r#""empty""#, x, "formal");
    assert_eq!(ex.len(), 2);
    assert_eq!(ex[0]["coeff"], serde_json::json!({"2": "-1"}));
    assert_eq!(ex[1]["coeff"], serde_json::json!({"0": "3"}));

    // at A = -i: A^{-1} = i and A = -i
    let at = product_of(dir.path(), m, l, "-1/2");
    assert_eq!(at[0]["coeff"], serde_json::json!({"gaussian": ["0", "-1"]}));
    assert_eq!(at[1]["coeff"], serde_json::json!({"gaussian": ["0", "1"]}));
}

#[test]
fn skein_mul_input_errors() {
    let dir = TempDir::new().unwrap();
    let good = write(dir.path(), "good.json", r#"{"d":1,"p":1,"q":0}"#);
    let bad = write(dir.path(), "bad.json", r#"{"d":1,"p":2,"q":2}"#);
    let empty = write(dir.path(), "empty.json", "");
    let out = skein(&["--no-cache", "skein-mul", s(&bad), s(&good)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gcd"));
    let out = skein(&["--no-cache", "skein-mul", s(&empty), s(&good)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty"));
    assert_eq!(skein(&["--no-cache", "skein-mul", s(&good)]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(skein(&["--no-cache", "skein-mul", s(&missing), s(&good)]).status.code(), Some(2));
    assert_eq!(skein(&["--no-cache", "skein-mul", s(&good), s(&good), "--at", "1/0"]).status.code(), Some(2));
    assert_eq!(skein(&["--no-cache", "frobnicate"]).status.code(), Some(2));
}

#[test]
fn iso_sweep_bounds_and_fault_injection() {
    let (code, v) = report(&["iso-sweep", "--max-d", "1", "--max-pq", "1"]);
    assert_eq!(code, 0);
    assert!(v["values"]["pairs"].as_u64().unwrap() > 0);
    assert!(v["values"]["failures"].as_array().unwrap().is_empty());

    let (code, v) = report(&["iso-sweep", "--max-d", "1", "--max-pq", "1", "--corrupt-phase", "1,0:0,1"]);
    assert_eq!(code, 1);
    assert!(!v["passed"].as_bool().unwrap());
    let failures = v["values"]["failures"].as_array().unwrap();
    assert_eq!(failures.len(), 1);
    assert_eq!(failures[0]["x"], serde_json::json!({"d": 1, "p": 1, "q": 0}));
    assert_eq!(failures[0]["y"], serde_json::json!({"d": 1, "p": 0, "q": 1}));
}

#[test]
fn torus_convergence_table() {
    let (code, v) = report(&["tqft-trace", "--m", "2", "--n-max", "20", "--bound", "2", "--naive"]);
    assert_eq!(code, 0);
    let rows = v["values"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 20);
    for r in rows {
        let n = r["n"].as_f64().unwrap();
        assert!((r["trace_sum"].as_f64().unwrap() - 4.0 * (n - 1.0)).abs() < 1e-9);
    }
    let last = &rows[19];
    assert!((last["normalized"].as_f64().unwrap() - 1.9).abs() < 1e-9);
    assert!(last["error"].as_f64().unwrap() <= 2.0 / 20.0 + 1e-9);

    // a bound tighter than the exact error 2/n fails
    let (code, _) = report(&["tqft-trace", "--m", "2", "--n-max", "5", "--bound", "1.5"]);
    assert_eq!(code, 1);
}

#[test]
fn theta_naive_matches_contracted() {
    let (code, v) = report(&["tqft-trace", "--graph", "theta", "--m", "2,1,1", "--n-max", "6", "--naive"]);
    assert_eq!(code, 0);
    for r in v["values"]["rows"].as_array().unwrap() {
        assert!(r["naive_agrees"].as_bool().unwrap());
    }
}

#[test]
fn graph_file_input() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "theta.json", r#"{"vertices": [[0,1,2],[0,1,2]], "edges": 3, "circles": 0, "m": [2,2,0]}"#);
    let (code, from_file) = report(&["--samples", "50000", "tqft-limit", "--graph", s(&g)]);
    assert_eq!(code, 0);
    let (_, builtin) = report(&["--samples", "50000", "tqft-limit", "--graph", "theta", "--m", "2,2,0"]);
    assert_eq!(from_file["values"], builtin["values"]);
    let bad = write(dir.path(), "bad.json", r#"{"vertices": [[0,1,2]], "edges": 3, "circles": 0, "m": [0,0,0]}"#);
    assert_eq!(skein(&["--no-cache", "tqft-limit", "--graph", s(&bad)]).status.code(), Some(2));
}

#[test]
fn theta_volume() {
    let (code, v) = report(&["--samples", "100000", "tqft-limit", "--graph", "theta", "--m", "0,0,0"]);
    assert_eq!(code, 0);
    let volume = v["values"]["volume"].as_f64().unwrap();
    assert!((volume - 1.0 / 3.0).abs() < 1e-9);
    // 2^{g - d} vol(U_G) with g = 2, d = 3
    let tracei = v["values"]["tracei"]["value"].as_f64().unwrap();
    assert!((tracei - volume / 2.0).abs() < 1e-9);
}

#[test]
fn tqft_parse_errors() {
    assert_eq!(skein(&["--no-cache", "tqft-trace", "--graph", "nonesuch", "--m", "1"]).status.code(), Some(2));
    assert_eq!(skein(&["--no-cache", "tqft-trace", "--m", "1,1"]).status.code(), Some(2));
    assert_eq!(skein(&["--no-cache", "tqft-trace", "--m", "2", "--theta", "1/0"]).status.code(), Some(2));
    // θ_n = 1/3 + 1/(4n) never has denominator 4n
    assert_eq!(skein(&["--no-cache", "tqft-trace", "--m", "2", "--theta", "1/3"]).status.code(), Some(2));
    assert_eq!(skein(&["--no-cache", "tqft-trace", "--m", "2", "--theta", "0.5"]).status.code(), Some(2));
}

#[test]
fn pillowcase_checks() {
    let (code, v) = report(&["pillowcase-check", "--check", "commutation", "--t", "1/2"]);
    assert_eq!(code, 0);
    let c = &v["values"]["checks"][0];
    assert!(c["max_error"].as_f64().unwrap() <= 1e-9);

    let (code, v) = report(&["pillowcase-check", "--check", "trace", "--curve", "2,1,0"]);
    assert_eq!(code, 0);
    let t = &v["values"]["traces"][0];
    assert_eq!(t["exact"], serde_json::json!([2.0, 0.0]));
    assert!(t["passed"].as_bool().unwrap());

    let (code, _) = report(&["pillowcase-check", "--check", "identity", "--t", "0"]);
    assert_eq!(code, 0);

    // demanding more than float accuracy fails the check, not the run
    let (code, _) = report(&["--tol", "0", "pillowcase-check", "--check", "kauffman"]);
    assert_eq!(code, 1);
    assert_eq!(skein(&["--no-cache", "pillowcase-check", "--check", "slope", "--curve", "2,2"]).status.code(), Some(2));
}

#[test]
fn ribbon_checks() {
    let (code, v) = report(&["ribbon-check"]);
    assert_eq!(code, 0);
    let cases = v["values"]["cases"].as_array().unwrap();
    let n: Vec<u64> = cases.iter().map(|c| c["report"]["n"].as_u64().unwrap()).collect();
    assert_eq!(n, vec![1, 2, 1]);

    let (code, v) = report(&["ribbon-check", "--fuzz", "1000", "--seed", "3"]);
    assert_eq!(code, 0);
    assert!(v["values"]["failures"].as_array().unwrap().is_empty());

    let dir = TempDir::new().unwrap();
    let g = write(
        dir.path(),
        "g.json",
        r#"{"vertices": [["a","b","c","d"]], "edges": [{"pair": ["a","c"], "type": "moebius"}, {"pair": ["b","d"], "type": "handle"}]}"#,
    );
    assert_eq!(report(&["ribbon-check", "--graph", s(&g)]).0, 0);
    let bad = write(dir.path(), "bad.json", r#"{"vertices": [["a","b"]], "edges": [{"pair": ["a","z"], "type": "handle"}]}"#);
    assert_eq!(skein(&["--no-cache", "ribbon-check", "--graph", s(&bad)]).status.code(), Some(2));
}

#[test]
fn gram_probe_reports() {
    let (code, v) = report(&["gram-probe"]);
    assert_eq!(code, 0);
    let r = &v["values"]["report"];
    assert_eq!(r["labels"].as_array().unwrap().len(), 5);
    assert_eq!(r["eigenvalues"].as_array().unwrap().len(), 5);
    assert!(v["values"]["unit_trace_is_one"].as_bool().unwrap());
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["--no-cache", "--seed", "9", "--samples", "30000", "pillowcase-check", "--check", "trace", "--curve", "4,1,1"];
    let a = skein(&args);
    let mut threaded = vec!["--threads", "3"];
    threaded.extend_from_slice(&args);
    let b = skein(&threaded);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let csv = ["--no-cache", "--output", "csv", "tqft-trace", "--graph", "dumbbell", "--m", "2,0,2", "--n-max", "4"];
    let a = skein(&csv);
    assert_eq!(a.stdout, skein(&csv).stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("n,p,theta,trace_sum"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn cache_hits_skip_recomputation() {
    let dir = TempDir::new().unwrap();
    let cache = dir.path().join("cache");
    let args = ["--cache-dir", s(&cache), "--samples", "20000", "tqft-limit", "--graph", "theta", "--m", "2,0,2"];
    let first = skein(&args);
    assert!(first.status.success());
    let entries: Vec<_> = fs::read_dir(&cache).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);

    let second = skein(&args);
    assert_eq!(first.stdout, second.stdout);
    assert!(String::from_utf8_lossy(&second.stderr).contains("cache hit"));

    // a doctored entry is served as stored, which shows nothing was recomputed
    let mut entry: Value = serde_json::from_str(&fs::read_to_string(&entries[0]).unwrap()).unwrap();
    entry["record"]["values"]["volume"] = Value::from(42.0);
    fs::write(&entries[0], entry.to_string()).unwrap();
    let third: Value = serde_json::from_slice(&skein(&args).stdout).unwrap();
    assert_eq!(third["values"]["volume"], Value::from(42.0));

    let mut bypass = vec!["--no-cache"];
    bypass.extend_from_slice(&args);
    let fresh: Value = serde_json::from_slice(&skein(&bypass).stdout).unwrap();
    assert!((fresh["values"]["volume"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-9);

    // the record's hash names the file it is stored in
    let hash = third["job_hash"].as_str().unwrap();
    assert_eq!(entries[0].file_stem().unwrap().to_str().unwrap(), hash);
}
