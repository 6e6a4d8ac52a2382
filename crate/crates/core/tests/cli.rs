use std::path::PathBuf;
use std::process::Command;

use clap::Parser;
use unitforge::cli::{run, Cli, CheckReport, ScanResult, EXIT_HYPOTHESIS, EXIT_OK};
use unitforge::freeness::Verdict;

fn run_args(args: &[&str]) -> (i32, String) {
    let cli = Cli::parse_from(std::iter::once("unitforge").chain(args.iter().copied()));
    let mut out = Vec::new();
    let code = match run(cli, &mut out) {
        Ok(c) => c,
        Err(e) => e.exit_code(),
    };
    (code, String::from_utf8(out).unwrap())
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("unitforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn group_info_summaries() {
    let (code, out) = run_args(&["group", "info", "d8"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("order 8, class 2"));
    assert!(out.contains("center: {1, r^2}"));
    let (_, out) = run_args(&["group", "info", "heis27"]);
    assert!(out.contains("order 27, class 2, exponent 3"));
    let (_, out) = run_args(&["group", "info", "c11xc5"]);
    assert!(out.contains("order 55, not nilpotent"));
}

#[test]
fn group_info_from_file() {
    let path = tmp("c3.json");
    std::fs::write(&path, r#"{"order": 3, "mul": [[0,1,2],[1,2,0],[2,0,1]], "names": ["1","a","a^2"]}"#).unwrap();
    let (code, out) = run_args(&["group", "info", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("order 3, class 1"));
    let (code, _) = run_args(&["group", "info", "no-such-group"]);
    assert_eq!(code, 1);
}

#[test]
fn scans() {
    let json = tmp("scan.json");
    let (_, out) = run_args(&["scan", "d8", "thm42", "--json", json.to_str().unwrap()]);
    assert!(out.contains("g = r, h = s"));
    let results: Vec<ScanResult> = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert!(!results.is_empty());
    let (_, out) = run_args(&["scan", "q8", "THM42"]);
    assert!(out.starts_with("q8 THM42: 0 pair(s)"));
    let (_, out) = run_args(&["scan", "heis27", "thm41"]);
    assert!(out.contains("g = g, h = h "));
    let (_, out) = run_args(&["scan", "c11xc5", "thm33"]);
    assert!(out.contains("g = g, h = h "));
}

#[test]
fn check_pipelines() {
    let json = tmp("heis.json");
    let (code, _) = run_args(&[
        "check", "heis27", "thm41", "--g", "g", "--h", "h", "--l", "1", "--t", "1", "--syllables", "8", "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let rep: CheckReport = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let verdicts: Vec<Verdict> = rep.steps.iter().map(|s| s.verdict).collect();
    assert_eq!(verdicts, vec![Verdict::CertifiedCondition, Verdict::PassedToBound]);

    let (code, out) = run_args(&["check", "d8", "thm42", "--g", "r", "--h", "s", "--k", "1", "--l", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("C_2 * C_2"));

    let (code, out) =
        run_args(&["check", "c11xc5", "thm33", "--h", "h", "--g", "g", "--bass", "2,4", "--bass", "3,4", "--len", "10"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("[CERTIFIED_CONDITION] thm33_check"));
    assert!(out.contains("[PASSED_TO_BOUND] free_monoid_oracle"));

    let (code, _) = run_args(&["check", "d16", "thm42", "--g", "r", "--h", "s"]);
    assert_eq!(code, EXIT_OK);
    let (code, _) = run_args(&["check", "heis27", "cor43", "--g", "g", "--h", "h", "--len", "5"]);
    assert_eq!(code, EXIT_OK);
    let (code, _) = run_args(&["check", "d8", "lemma31", "--g", "r", "--h", "s"]);
    assert_eq!(code, EXIT_OK);
    let (code, _) = run_args(&["check", "d8", "prop32", "--g", "r", "--h", "s"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn hypothesis_failures_exit_two() {
    assert_eq!(run_args(&["check", "q8", "thm42", "--g", "i", "--h", "j"]).0, EXIT_HYPOTHESIS);
    assert_eq!(run_args(&["check", "d8", "cor43", "--g", "r", "--h", "s"]).0, EXIT_HYPOTHESIS);
    assert_eq!(run_args(&["check", "c11xc5", "thm33", "--g", "g", "--h", "h", "--bass", "1,1", "--bass", "3,4"]).0, EXIT_HYPOTHESIS);
    assert_eq!(run_args(&["check", "c11xc5", "thm41", "--g", "g", "--h", "h"]).0, EXIT_HYPOTHESIS);
}

#[test]
fn binary_json_is_byte_stable() {
    let bin = env!("CARGO_BIN_EXE_unitforge");
    let mut outputs = Vec::new();
    for i in 0..2 {
        let path = tmp(&format!("stable{i}.json"));
        let status = Command::new(bin)
            .args(["check", "heis27", "thm41", "--g", "g", "--h", "h", "--syllables", "6", "--json"])
            .arg(&path)
            .output()
            .unwrap();
        assert_eq!(status.status.code(), Some(0));
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let status = Command::new(bin).args(["check", "q8", "thm42", "--g", "i", "--h", "j"]).output().unwrap();
    assert_eq!(status.status.code(), Some(2));
}
