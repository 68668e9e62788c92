use std::process::{Command, Output};

use kravchuk_cli::{EXIT_OK, EXIT_REFUTED, EXIT_USAGE};
use serde_json::Value;

fn kravchuk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kravchuk")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn golden_exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["poly", "2"], EXIT_OK),
        (&["kernel", "check", "--derivation", "k1", "x1^2 - 2*x2*x0"], EXIT_OK),
        (&["kernel", "check", "--derivation", "k2", "x1"], EXIT_REFUTED),
        (&["identity", "verify", "x1^2 - 2*x2*x0", "--expect", "a"], EXIT_OK),
        (&["identity", "verify", "x1^2 - 2*x2*x0", "--expect", "x"], EXIT_REFUTED),
        (&["identity", "verify", "x0*x1 - x1^2 + 2*x2*x0"], EXIT_OK),
        (&["conjecture", "2", "--max-n", "6"], EXIT_OK),
        (&["conjecture", "1", "--max-n", "4"], EXIT_REFUTED),
        (&["derive", "--op", "da", "5"], EXIT_OK),
        (&["discriminant-demo"], EXIT_REFUTED),
        (&["identity", "verify", "x1^-2"], EXIT_USAGE),
        (&["identity", "verify", "x1 +"], EXIT_USAGE),
        (&["identity", "verify", "y1"], EXIT_USAGE),
        (&["identity", "verify", "x"], EXIT_USAGE),
        (&["frobnicate"], EXIT_USAGE),
        (&["poly"], EXIT_USAGE),
        (&["conjecture", "4", "--max-n", "3"], EXIT_USAGE),
        (&["conjecture", "1", "--max-n", "1"], EXIT_USAGE),
        (&["derivation", "apply", "--kind", "q", "x1"], EXIT_USAGE),
        (&["intertwine", "--map", "ak1", "apply", "a*x1"], EXIT_USAGE),
        (&["cayley", "--derivation", "k1", "1"], EXIT_USAGE),
        (&["--help"], EXIT_OK),
    ];
    for (args, code) in cases {
        let o = kravchuk(args);
        assert_eq!(o.status.code(), Some(*code), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn golden_outputs() {
    assert_eq!(stdout(&kravchuk(&["poly", "2"])).trim(), "2*x^2 - 2*x*a + 1/2*a^2 - 1/2*a");
    let o = kravchuk(&["kernel", "check", "--derivation", "k1", "x1^2 - 2*x2*x0"]);
    assert_eq!(stdout(&o).trim(), "in kernel: true");
    let o = kravchuk(&["intertwine", "--map", "ak2", "apply", "x6"]);
    assert_eq!(stdout(&o).trim(), "x1 + 62*x2 + 540*x3 + 1560*x4 + 1800*x5 + 720*x6");
    let o = kravchuk(&["derivation", "apply", "--kind", "w", "x0*x2 - x1^2"]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = kravchuk(&["--format", "latex", "identity", "verify", "x1^2 - 2*x2*x0"]);
    assert_eq!(stdout(&o).lines().next(), Some("phi(x_{1}^{2} - 2\\,x_{0}x_{2}) = a"));
    let o = kravchuk(&["cayley", "--derivation", "k1", "2"]);
    assert_eq!(stdout(&o).trim(), "C_2 = -x1^2 + 2*x0*x2\nphi(C_2) = -a");
}

const RECORD_KEYS: [&str; 8] = [
    "check_id",
    "n",
    "verdict",
    "classification",
    "lhs_canonical",
    "rhs_canonical",
    "ratio_if_proportional",
    "runtime_ms",
];

fn records(args: &[&str]) -> Vec<Value> {
    let o = kravchuk(args);
    let v: Value = serde_json::from_slice(&o.stdout).expect("json array");
    v.as_array().expect("array").clone()
}

#[test]
fn conjecture_json_schema() {
    let recs = records(&["conjecture", "1", "--max-n", "8", "--format", "json"]);
    assert_eq!(recs.len(), 7);
    for (r, n) in recs.iter().zip(2..) {
        let obj = r.as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        keys.sort_unstable();
        let mut expected = RECORD_KEYS.to_vec();
        expected.sort_unstable();
        assert_eq!(keys, expected);
        assert_eq!(obj["n"], n);
        assert!(obj["check_id"].is_string());
        assert!(matches!(obj["verdict"].as_str(), Some("verified" | "refuted")));
        assert!(obj["lhs_canonical"].is_string() && obj["rhs_canonical"].is_string());
        assert!(obj["ratio_if_proportional"].is_string() || obj["ratio_if_proportional"].is_null());
        assert!(obj["runtime_ms"].is_u64());
        // odd n vanishes exactly
        if n % 2 == 1 {
            assert_eq!(obj["verdict"], "verified");
            assert_eq!(obj["lhs_canonical"], "0");
        }
    }
    // keys appear in declaration order
    let raw = stdout(&kravchuk(&["conjecture", "1", "--max-n", "2", "--format", "json"]));
    let positions: Vec<usize> = RECORD_KEYS.iter().map(|k| raw.find(&format!("\"{k}\"")).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{raw}");
}

#[test]
fn polynomial_json_schema() {
    let o = kravchuk(&["--format", "json", "poly", "1"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let expected: Value = serde_json::from_str(
        r#"[{"coeff":"-2","monomial":{"x":1}},{"coeff":"1","monomial":{"a":1}}]"#,
    )
    .unwrap();
    assert_eq!(v, expected);
}

#[test]
fn conjecture_report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c3.json");
    let o = kravchuk(&["conjecture", "3", "--max-n", "2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_REFUTED));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let recs = v.as_array().unwrap();
    assert_eq!(recs.len(), 10);
    for r in recs {
        let id = r["check_id"].as_str().unwrap();
        let expect = if id.ends_with("matrix-size") { "verified" } else { "refuted" };
        assert_eq!(r["verdict"], expect, "{id}");
    }
}
