use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scattered")).args(args).env_remove("SCATTER_MAX_RANK").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

#[test]
fn censuses_match_golden_files() {
    for (family, lo) in [("B", 2), ("C", 2), ("D", 3)] {
        for rank in lo..=6 {
            let path = golden_dir().join(format!("{family}{rank}.json"));
            let want = std::fs::read_to_string(&path).unwrap();
            let got = stdout(&["enumerate", "--family", family, "--rank", &rank.to_string(), "--format", "json"]);
            assert_eq!(got, want, "{}", path.display());
        }
    }
}

#[test]
fn golden_records_parse_back() {
    let text = std::fs::read_to_string(golden_dir().join("C3.json")).unwrap();
    let recs: Vec<scattered_core::record::RepRecord> = serde_json::from_str(&text).unwrap();
    assert_eq!(recs.len(), 6);
    assert_eq!(serde_json::to_string_pretty(&recs).unwrap() + "\n", text);
}

#[test]
fn output_is_deterministic() {
    let args = ["enumerate", "--family", "D", "--rank", "5", "--format", "csv"];
    assert_eq!(stdout(&args), stdout(&args));
    let csv = stdout(&args);
    assert_eq!(csv.lines().count(), 10);
    assert!(csv.starts_with("chains,2lambda,lkt,spin_lkt,usmall,cert,oracle\n"));
}

#[test]
fn count_table() {
    let out = stdout(&["count", "--family", "C", "--max-rank", "6"]);
    let counts: Vec<&str> = out.lines().skip(1).map(|l| l.split_whitespace().nth(1).unwrap()).collect();
    assert_eq!(counts, ["3", "6", "12", "24", "48"]);
    let out = stdout(&["count", "--family", "D", "--max-rank", "6", "--brute", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for row in v.as_array().unwrap() {
        assert_eq!(row["count"], row["census"]);
    }
}

#[test]
fn spin_lkt_record() {
    let out = stdout(&["spin-lkt", "--chains", "A(2,2)+C[3,1]"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["spin_lkt"], serde_json::json!(["3", "2", "1"]));
    assert_eq!(v["certificate_ok"], true);
    assert_eq!(v["oracle_occurrence"], 1);
    let out = stdout(&["spin-lkt", "--chains", "A(18,12)+A(8,8)+A(6,4)+B[15,2]"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["oracle_occurrence"], "skipped");
    assert_eq!(v["spin_lkt"][0], "16");
}

#[test]
fn check_param() {
    let out = stdout(&["check-param", "--family", "C", "--rank", "3", "--lambda-l", "5/2,3/2,1/2", "--lambda-r", "5/2,3/2,1/2"]);
    assert_eq!(out, "not in Ghat^d\n");
    let out = stdout(&["check-param", "--family", "C", "--rank", "3", "--lambda-l", "1,1/2,3/2", "--lambda-r", "-1,1/2,3/2"]);
    assert!(out.starts_with("in Ghat^d: A(2,2)+C[3,1]"), "{out}");
}

#[test]
fn verify_reports() {
    let out = stdout(&["verify", "--family", "B", "--max-rank", "4", "--checks", "eqpar,usmall,oracle,vanishing,dirac"]);
    assert!(out.ends_with("11 representations, 11 passed, 0 failed\n"), "{out}");
    let out = stdout(&["verify", "--family", "C", "--max-rank", "3", "--checks", "eqpar,uniqueness", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 9);
}

#[test]
fn lr_subcommands() {
    assert_eq!(stdout(&["lr", "coeff", "--mu", "2,1", "--nu", "2,1", "--lam", "3,2,1"]), "2\n");
    assert_eq!(stdout(&["lr", "transpose", "--p", "3,1"]), "(2, 1, 1)\n");
    assert_eq!(stdout(&["lr", "eqpt", "--m", "10", "--p", "10,7,5,4,1"]), "true\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--family", "A", "--max-rank", "3"]).status.code(), Some(2));
    assert_eq!(run(&["spin-lkt", "--chains", "A(2,3)+C[3,1]"]).status.code(), Some(2));
    let capped = Command::new(env!("CARGO_BIN_EXE_scattered"))
        .args(["enumerate", "--family", "C", "--rank", "5"])
        .env("SCATTER_MAX_RANK", "4")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
}
