use std::path::PathBuf;
use std::process::{Command, Output};

fn latsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latsum")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn oracle_single_chain() {
    let o = latsum(&["oracle", "--p", "2", "--symbolic", "--quantity", "A"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"p\":2,\"quantity\":\"A\",\"mode\":\"symbolic\",\"value\":{\"num\":[\"-12\"],\"den\":[\"0\",\"1\",\"1\"]}}\n"
    );
    let o = latsum(&["oracle", "--p", "2", "--x", "2", "--quantity", "C"]);
    assert_eq!(stdout(&o), "{\"p\":2,\"quantity\":\"C\",\"mode\":\"fixed\",\"x\":\"2\",\"value\":\"18\"}\n");
}

#[test]
fn empty_prefix_is_zero() {
    let o = latsum(&["dp", "--pmax", "1", "--symbolic", "--quantity", "A"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["value"], serde_json::json!({"num": [], "den": ["1"]}));
}

#[test]
fn conjecture_four_to_21() {
    let o = latsum(&["verify", "conj4", "--pmax", "21"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> =
        stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 21);
    assert!(lines[..20].iter().all(|l| l["status"] == "pass"));
    assert_eq!(lines[19]["got"], "10164");
    let report = &lines[20];
    assert_eq!(report["name"], "conj4");
    assert_eq!(report["status"], "pass");
    assert!(report.get("first_fail").is_none());
    assert!(report["elapsed_ms"].is_u64());
    assert!(stderr(&o).contains("checked p <= 21"));
}

#[test]
fn other_checks_pass() {
    for args in [
        ["verify", "conj3", "--pmax", "30"],
        ["verify", "closed-b", "--pmax", "12"],
        ["verify", "closed-a", "--pmax", "20"],
        ["verify", "rec5", "--pmax", "12"],
    ] {
        let o = latsum(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        assert!(stdout(&o).lines().last().unwrap().contains("\"status\":\"pass\""));
    }
}

#[test]
fn crosscheck_symbolic() {
    let o = latsum(&["crosscheck", "--pmax", "12", "--symbolic"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 49);
    assert!(out.lines().last().unwrap().contains("\"mismatches\":0"));
}

#[test]
fn usage_errors_exit_2() {
    let cases: [&[&str]; 6] = [
        &["oracle", "--p", "2", "--x", "1/0", "--quantity", "A"],
        &["oracle", "--p", "2", "--quantity", "A"],
        &["oracle", "--p", "2", "--symbolic", "--quantity", "E"],
        &["oracle", "--p", "19", "--symbolic", "--quantity", "B"],
        &["dp", "--pmax", "6", "--x", "4", "--quantity", "B"],
        &["frobnicate"],
    ];
    for args in cases {
        let o = latsum(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!stderr(&o).is_empty());
    }
    let o = latsum(&["dp", "--pmax", "6", "--x", "4", "--quantity", "B"]);
    assert!(stderr(&o).contains("pole"));
    let o = latsum(&["oracle", "--p", "19", "--symbolic", "--quantity", "B"]);
    assert!(stderr(&o).contains("262144 chains"));
}

#[test]
fn x_equal_to_pmax_is_allowed() {
    let o = latsum(&["dp", "--pmax", "6", "--x", "6", "--quantity", "C"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().last().unwrap().ends_with("\"value\":\"294\"}"));
    // the raw form still has the removable 0/0 there
    let o = latsum(&["dp", "--pmax", "6", "--x", "6", "--quantity", "C", "--form", "raw"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["dp", "--pmax", "12", "--symbolic", "--quantity", "D"];
    let a = latsum(&args);
    let b = latsum(&args);
    let c = latsum(&["--sequential", "dp", "--pmax", "12", "--symbolic", "--quantity", "D"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);

    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("dp-d.jsonl");
    let o = latsum(&["dp", "--pmax", "12", "--symbolic", "--quantity", "D", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);
}

#[test]
fn guess_then_extend() {
    let terms: Vec<String> = (1..=20u64).map(|p| (p * (p + 1) * (p + 1)).to_string()).collect();
    let input = scratch("cubic.txt", &(terms.join("\n") + "\n"));
    let o = latsum(&["guess", "--input", input.to_str().unwrap(), "--max-order", "1", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let cand = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(cand.trim()).unwrap();
    assert_eq!(v["order"], 1);
    assert_eq!(v["coeffs"], serde_json::json!([["-4", "-4", "-1"], ["0", "1", "1"]]));
    assert!(v["window"]["first"].is_u64());

    let cand_path = scratch("cubic.json", &cand);
    let seed = scratch("cubic-seed.txt", "4\n");
    let o = latsum(&[
        "extend",
        "--candidate",
        cand_path.to_str().unwrap(),
        "--seed",
        seed.to_str().unwrap(),
        "--upto",
        "20",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().collect::<Vec<_>>(), terms);
}

#[test]
fn guess_without_fit_exits_1() {
    let terms: Vec<String> = (0..25u32).map(|n| (1u128 << (n * n / 8)).to_string()).collect();
    let input = scratch("wild.txt", &terms.join("\n"));
    let o = latsum(&["guess", "--input", input.to_str().unwrap(), "--max-order", "1", "--max-degree", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "null\n");
}

#[test]
fn bad_sequence_file() {
    let input = scratch("bad.txt", "1\n2\nthree\n");
    let o = latsum(&["guess", "--input", input.to_str().unwrap(), "--max-order", "1", "--max-degree", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.txt:3"));
}
