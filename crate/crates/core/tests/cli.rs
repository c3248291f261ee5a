use std::process::{Command, Output};

use socdef::cli::{render, Format, Report, Verdict};

fn socdef(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_socdef")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    socdef(args).status.code().unwrap()
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(socdef(args).stdout).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["centre", "--m", "2", "--q", "rat:1,1", "--max-degree", "6", "--format", "json"]), 0);
    assert_eq!(code(&["structure", "--m", "1", "--q", "rat:-1", "--max-degree", "12"]), 0);
    assert_eq!(code(&["centre", "--m", "2", "--q", "rat:0,1"]), 2);
    assert_eq!(code(&["centre", "--m", "2", "--q", "rat:1"]), 2);
    assert_eq!(code(&["centre", "--m", "2", "--q", "cyclo:x:1,1"]), 2);
    assert_eq!(code(&["centre", "--m", "2", "--frobnicate"]), 2);
    assert_eq!(code(&["mystery", "--m", "2"]), 2);
    assert_eq!(code(&["centre"]), 2);
    assert_eq!(code(&["deform", "--m", "2", "--t", "1/0"]), 2);
    assert_eq!(code(&["--help"]), 0);
    // Lambda(1) is not self-injective
    assert_eq!(code(&["frobenius", "--m", "2", "--t", "1", "--b1", "1"]), 1);
    // the relation with the printed scalar fails in this branch
    assert_eq!(code(&["structure", "--m", "3", "--q", "rat:2,-1,1/2"]), 1);
}

#[test]
fn spec_examples() {
    let out = stdout(&["centre", "--m", "2", "--q", "rat:1,1", "--max-degree", "6", "--format", "json"]);
    let r: Report = serde_json::from_str(&out).unwrap();
    let dims: Vec<usize> = r.dims.iter().map(|d| d.solver_dim).collect();
    assert_eq!(dims, vec![1, 0, 3, 0, 5, 0, 7]);

    let out = stdout(&["structure", "--m", "1", "--q", "rat:-1", "--max-degree", "12"]);
    assert!(out.contains("\nrelation: w^2 = x*y PASS\n"), "{out}");
    assert!(out.contains("\nstructure-theorem: PASS (N=12)\n"), "{out}");
}

#[test]
fn golden_outputs() {
    let cases: [(&[&str], &str); 4] = [
        (
            &["structure", "--m", "1", "--q", "rat:-1", "--max-degree", "12"],
            include_str!("golden/structure_m1_qm1.txt"),
        ),
        (
            &["centre", "--m", "2", "--q", "rat:1,1", "--max-degree", "6", "--format", "json"],
            include_str!("golden/centre_m2_json.json"),
        ),
        (
            &["centre", "--m", "2", "--q", "rat:1,1", "--max-degree", "12", "--format", "csv"],
            include_str!("golden/centre_m2.csv"),
        ),
        (&["deform", "--m", "4"], include_str!("golden/deform_m4.txt")),
    ];
    for (args, want) in cases {
        assert_eq!(stdout(args), want, "{args:?}");
    }
}

#[test]
fn deterministic_and_round_trips() {
    let args = ["report", "--m", "2", "--q", "cyclo:4:1,0", "--seed", "7", "--format", "json"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let r: Report = serde_json::from_str(&a).unwrap();
    assert_eq!(render(&r, Format::Json), a);
    assert!(r.timing.is_empty());
    assert_eq!(r.instance.seed, 7);
    assert!(r.checks.iter().all(|c| c.verdict == Verdict::Pass), "{a}");
}

#[test]
fn timing_and_output_file() {
    let dir = std::env::temp_dir().join(format!("socdef-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let p = path.to_str().unwrap();
    assert_eq!(code(&["centre", "--m", "1", "--timing", "--format", "json", "--output", p]), 0);
    let r: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(r.timing.contains_key("centre"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn csv_header() {
    let out = stdout(&["centre", "--m", "3", "--q", "generic", "--max-degree", "4", "--format", "csv"]);
    assert_eq!(out, "n,solver_dim,hilbert_dim\n0,1,1\n1,0,0\n2,0,0\n3,0,0\n4,0,0\n");
}

#[test]
fn skipped_checks_do_not_fail() {
    let out = socdef(&["structure", "--m", "2", "--q", "generic", "--max-degree", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("relation: SKIPPED(zeta is not a root of unity)"));
}
