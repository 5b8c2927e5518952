//! End-to-end tests of the `symreg` binary. JSON output is compared against
//! files in `tests/golden/` with `elapsed_ms` removed; set `SYMREG_BLESS=1`
//! to rewrite them.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_symreg"));
    c.env_remove("SYMREG_CACHE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("symreg-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

/// Parse JSON lines, drop timing, re-serialize compactly.
fn normalize(stdout: &[u8]) -> String {
    let text = std::str::from_utf8(stdout).unwrap();
    let mut out = String::new();
    for line in text.lines() {
        let mut v: Value =
            serde_json::from_str(line).unwrap_or_else(|e| panic!("not JSON: {line}: {e}"));
        let obj = v.as_object_mut().expect("records are objects");
        assert!(
            obj.remove("elapsed_ms").is_some_and(|t| t.is_number()),
            "missing elapsed_ms: {line}"
        );
        out.push_str(&serde_json::to_string(&v).unwrap());
        out.push('\n');
    }
    out
}

fn golden(name: &str, args: &[&str], want_code: i32) {
    let mut full = args.to_vec();
    full.push("--json");
    let o = run(&full);
    assert_eq!(
        code(&o),
        want_code,
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    let got = normalize(&o.stdout);
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.jsonl"));
    if std::env::var_os("SYMREG_BLESS").is_some() {
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(got, want, "{name}");
}

#[test]
fn golden_degseq() {
    golden(
        "degseq_exception",
        &["degseq-classify", "-n", "4", "2,5,2,12"],
        0,
    );
    golden(
        "degseq_matching",
        &["degseq-classify", "-n", "5", "1,2,3,4,5"],
        0,
    );
    golden(
        "degseq_unknown",
        &["degseq-classify", "-n", "5", "1,2,3,7,20"],
        2,
    );
    golden("degseq_beta", &["degseq-classify", "1,2,3,4,6"], 0);
    golden(
        "degseq_construct",
        &["degseq-construct", "-n", "4", "1,5,14,12", "--verify"],
        0,
    );
    golden(
        "degseq_construct_none",
        &["degseq-construct", "-n", "4", "1,2,5,12"],
        0,
    );
    golden(
        "degseq_verify",
        &[
            "degseq-verify",
            "--weights",
            "1,2,3,4",
            "e1",
            "e2",
            "e3",
            "e4^2",
        ],
        0,
    );
    golden(
        "degseq_verify_x",
        &["degseq-verify", "-n", "2", "x1^2", "x1*x2"],
        0,
    );
}

#[test]
fn golden_triples() {
    golden("triple_4_15_1", &["triple-classify", "4", "15", "1"], 0);
    golden("triple_8_15_1", &["triple-classify", "8", "15", "1"], 0);
    golden("triple_16_15_8", &["triple-classify", "16", "15", "8"], 0);
    golden("triple_5_6_1", &["triple-classify", "5", "6", "1"], 0);
    golden("triple_oracle_5_6_1", &["triple-oracle", "5", "6", "1"], 0);
    golden("triple_guarded", &["triple-classify", "8", "30", "2"], 2);
    golden(
        "triple_no_oracle",
        &["triple-classify", "8", "30", "2", "--no-oracle"],
        2,
    );
}

#[test]
fn golden_other() {
    golden("hilbert_trivial", &["hilbert", "-n", "4", "1,2,3,4"], 0);
    golden("hilbert_exception", &["hilbert", "-n", "4", "2,5,2,12"], 0);
    golden("hilbert_not_integral", &["hilbert", "-n", "2", "3,3"], 0);
    golden("s22_excluded", &["s22-classify", "3", "2", "2"], 0);
    golden("s22_unit_pair", &["s22-classify", "4", "1", "1"], 0);
    golden(
        "s22_construct",
        &["s22-construct", "14", "2", "3", "--verify"],
        0,
    );
    golden(
        "alt_18",
        &["alt-classify", "-n", "4", "1,2,5", "-D", "18"],
        0,
    );
    golden("alt_6", &["alt-classify", "-n", "4", "1,2,5", "-D", "6"], 0);
}

#[test]
fn text_output() {
    let o = run(&["hilbert", "-n", "4", "1,2,3,4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "1\n");
    let o = run(&["triple-classify", "4", "15", "1"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.starts_with("(4,15,1) Good"), "{s}");
    assert!(s.contains("n_notin_Gamma"), "{s}");
}

#[test]
fn input_errors_exit_one() {
    let cases: [(&[&str], &str); 6] = [
        (
            &["degseq-classify", "-n", "4", "2,x,2"],
            "malformed degree list",
        ),
        (&["degseq-classify", "-n", "4", "2,5"], "expected 4 degrees"),
        (
            &["degseq-verify", "-n", "2", "x1^2 +", "x2"],
            "polynomial 1",
        ),
        (
            &["degseq-verify", "-n", "2", "x1^2 + x2", "x2"],
            "not homogeneous",
        ),
        (
            &["alt-classify", "-n", "4", "1,2", "-D", "6"],
            "expected 3 symmetric degrees",
        ),
        (&["no-such-command"], "unrecognized subcommand"),
    ];
    for (args, msg) in cases {
        let o = run(args);
        assert_eq!(code(&o), 1, "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert!(err.contains(msg), "{args:?}: {err}");
    }
    let o = run(&["--help"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn scan_uses_cache_on_rerun() {
    let dir = scratch("rerun");
    let cache = dir.join("cache.jsonl");
    let args = [
        "triple-scan",
        "--n",
        "7",
        "--d",
        "30",
        "--a",
        "1..6",
        "--json",
    ];
    let first = bin()
        .args(args)
        .env("SYMREG_CACHE", &cache)
        .output()
        .unwrap();
    assert_eq!(
        code(&first),
        0,
        "{}",
        String::from_utf8_lossy(&first.stderr)
    );
    let summary = String::from_utf8(first.stderr.clone()).unwrap();
    assert!(summary.contains("2 oracle calls"), "{summary}");
    let second = bin()
        .args(args)
        .env("SYMREG_CACHE", &cache)
        .output()
        .unwrap();
    let summary = String::from_utf8(second.stderr.clone()).unwrap();
    assert!(
        summary.contains("0 oracle calls") && summary.contains("2 from cache"),
        "{summary}"
    );
    let statuses = |o: &Output| -> Vec<String> {
        normalize(&o.stdout)
            .lines()
            .map(|l| serde_json::from_str::<Value>(l).unwrap()["status"].to_string())
            .collect()
    };
    assert_eq!(statuses(&first), statuses(&second));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn scan_grid_has_no_disagreements() {
    let o = run(&[
        "triple-scan",
        "--n",
        "2..4",
        "--d",
        "2..6",
        "--a",
        "1..8",
        "--check",
        "--json",
    ]);
    assert_eq!(code(&o), 0);
    let summary = String::from_utf8(o.stderr).unwrap();
    assert!(
        summary.contains("120 triples") && summary.contains("0 disagreements"),
        "{summary}"
    );
    let lines: Vec<Value> = String::from_utf8(o.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 120);
    // deterministic lexicographic order
    let keys: Vec<(u64, u64, u64)> = lines
        .iter()
        .map(|v| {
            (
                v["n"].as_u64().unwrap(),
                v["d"].as_u64().unwrap(),
                v["a"].as_u64().unwrap(),
            )
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(keys, sorted);
}

#[test]
fn scan_without_oracle_reports_undecided() {
    let o = run(&[
        "triple-scan",
        "--no-oracle",
        "--n",
        "7",
        "--d",
        "30",
        "--a",
        "1..10",
        "--json",
    ]);
    assert_eq!(code(&o), 2);
    let undecided = String::from_utf8(o.stdout)
        .unwrap()
        .lines()
        .filter(|l| l.contains("\"status\":\"Undecided\""))
        .count();
    assert!(undecided > 0);
}

#[test]
fn cache_round_trip_is_byte_identical() {
    let dir = scratch("roundtrip");
    let c1 = dir.join("c1.jsonl");
    let c2 = dir.join("c2.jsonl");
    let o = bin()
        .args(["triple-scan", "--n", "2..5", "--d", "2..8", "--a", "1..6"])
        .env("SYMREG_CACHE", &c1)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let e1 = dir.join("e1.jsonl");
    assert_eq!(
        code(&run(&[
            "cache-export",
            "--cache",
            c1.to_str().unwrap(),
            "-o",
            e1.to_str().unwrap()
        ])),
        0
    );
    assert_eq!(
        code(&run(&[
            "cache-import",
            e1.to_str().unwrap(),
            "--cache",
            c2.to_str().unwrap()
        ])),
        0
    );
    let e2 = run(&["cache-export", "--cache", c2.to_str().unwrap()]);
    assert_eq!(std::fs::read(&e1).unwrap(), e2.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn cache_conflict_is_fatal() {
    let dir = scratch("conflict");
    let cache = dir.join("c.jsonl");
    let bogus = dir.join("bogus.jsonl");
    assert_eq!(
        code(&run(&[
            "triple-classify",
            "5",
            "6",
            "1",
            "--cache",
            cache.to_str().unwrap()
        ])),
        0
    );
    std::fs::write(
        &bogus,
        "{\"n\":5,\"d\":6,\"a\":1,\"status\":\"good\",\"reason\":\"oracle\"}\n",
    )
    .unwrap();
    let o = run(&[
        "cache-import",
        bogus.to_str().unwrap(),
        "--cache",
        cache.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8(o.stderr)
        .unwrap()
        .contains("conflicting verdicts"));
    std::fs::write(&bogus, "not json\n").unwrap();
    let o = run(&[
        "cache-import",
        bogus.to_str().unwrap(),
        "--cache",
        cache.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 1"));
    std::fs::remove_dir_all(&dir).unwrap();
}
