use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn tietze(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tietze")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn simplify_writes_output_and_stats() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "in.txt", "gens 3\nrelw abAB\nrelw aac\nrelw bc\n");
    let (out, stats) = (dir.path().join("out.txt"), dir.path().join("stats.json"));
    let res = tietze(&["simplify", &input, "-o", path_str(&out), "--stats", path_str(&stats), "--skip", "flags"]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let simplified: tietze::Presentation = fs::read_to_string(&out).unwrap().parse().unwrap();
    assert!(simplified.total_length() <= 9);
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&stats).unwrap()).unwrap();
    let considered = json["pairs_considered"].as_u64().unwrap();
    let performed = json["searches_performed"].as_u64().unwrap();
    assert_eq!(considered, performed + json["searches_skipped"].as_u64().unwrap());
    assert!(json["counters"]["bloom_false_hits"].is_u64());
}

#[test]
fn usage_and_io_errors() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "in.txt", "gens 2\nrelw aa\n");
    assert_eq!(code(&tietze(&["simplify", &input, "--match", "brute", "--bloom-bits", "4"])), 2);
    assert_eq!(code(&tietze(&["simplify", &input, "--match", "brute", "--automata", "one"])), 2);
    assert_eq!(code(&tietze(&["simplify", &input, "--bloom-bits", "5"])), 2);
    assert_eq!(code(&tietze(&["simplify", &input, "--growth-limit", "0.5"])), 2);
    assert_eq!(code(&tietze(&["frobnicate"])), 2);
    assert_eq!(code(&tietze(&["simplify", "/nonexistent/presentation"])), 1);
    let bad = write(&dir, "bad.txt", "gens 2\nrelw az\n");
    assert_eq!(code(&tietze(&["simplify", &bad])), 1);
}

#[test]
fn gen_is_deterministic() {
    let args = ["gen", "--gens", "3", "--rels", "10", "--maxlen", "12", "--seed", "9"];
    let (a, b) = (tietze(&args), tietze(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let other = tietze(&["gen", "--gens", "3", "--rels", "10", "--maxlen", "12", "--seed", "10"]);
    assert_ne!(a.stdout, other.stdout);
    let p: tietze::Presentation = String::from_utf8(a.stdout).unwrap().parse().unwrap();
    assert_eq!((p.gens(), p.num_relators()), (3, 10));
    let long = tietze(&["gen", "--gens", "4", "--rels", "6", "--maxlen", "100", "--profile", "small-alphabet-long"]);
    assert_eq!(code(&long), 0);
    assert_eq!(code(&tietze(&["gen", "--gens", "1", "--rels", "3", "--maxlen", "100", "--profile", "small-alphabet-long"])), 2);
}

#[test]
fn verify_compares_abelian_invariants() {
    let dir = TempDir::new().unwrap();
    let z2 = write(&dir, "z2.txt", "gens 1\nrelw aa\n");
    let z3 = write(&dir, "z3.txt", "gens 1\nrelw aaa\n");
    let z2b = write(&dir, "z2b.txt", "gens 2\nrelw aa\nrelw b\n");
    let same = tietze(&["verify", &z2, &z2b]);
    assert_eq!(code(&same), 0);
    assert!(String::from_utf8_lossy(&same.stdout).contains("torsion [2], free rank 0"));
    assert_eq!(code(&tietze(&["verify", &z2, &z3])), 3);
}

#[test]
fn simplified_output_verifies_against_input() {
    let dir = TempDir::new().unwrap();
    let gen = tietze(&["gen", "--gens", "4", "--rels", "8", "--maxlen", "10", "--seed", "3"]);
    let input = write(&dir, "in.txt", &String::from_utf8(gen.stdout).unwrap());
    let out = dir.path().join("out.txt");
    assert_eq!(code(&tietze(&["simplify", &input, "-o", path_str(&out), "--match", "automaton", "--automata", "one"])), 0);
    assert_eq!(code(&tietze(&["verify", &input, path_str(&out)])), 0);
}

#[test]
fn bench_reports_every_configuration() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "in.txt", "gens 3\nrelw abAB\nrelw acAC\nrelw bcBC\nrelw abcabc\n");
    let stats = dir.path().join("bench.json");
    let res = tietze(&["bench", &input, "--all-skip", "--match", "kr-hash", "--stats", path_str(&stats)]);
    assert!([0, 3].contains(&code(&res)));
    let table = String::from_utf8_lossy(&res.stdout);
    for policy in ["all-pairs", "flags", "ts-sorted", "ts-unsorted"] {
        assert!(table.contains(policy), "{table}");
    }
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&stats).unwrap()).unwrap();
    assert_eq!(json["reports"].as_array().unwrap().len(), 4);
    let violations = json["violations"].as_array().unwrap().len();
    assert_eq!(code(&res), if violations == 0 { 0 } else { 3 });
}
