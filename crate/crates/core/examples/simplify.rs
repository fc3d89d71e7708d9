//! Simplifies a presentation file (or a built-in one) and prints the
//! result and a JSON stats report.
//!
//! cargo run --example simplify -- path/to/presentation

use std::env;
use std::fs;

use tietze::engine::{simplify, EngineConfig, EngineStats};
use tietze::report::StatsReport;
use tietze::Presentation;

const BUILTIN: &str = "gens 3
relw abcab
relw aabcabcc
relw cabcabA
relw bcaBCA
";

fn main() {
    let text = match env::args().nth(1) {
        Some(path) => fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}")),
        None => BUILTIN.to_string(),
    };
    let mut p: Presentation = text.parse().expect("valid presentation");
    let cfg = EngineConfig { trace: true, ..EngineConfig::default() };
    let stats = simplify(&mut p, &cfg).unwrap();
    print!("{}", p.to_text());
    if let Some(t) = &stats.trace {
        for r in t.replacements.iter().take(5) {
            println!("# {r:?}");
        }
    }
    let report = StatsReport::new(&cfg, EngineStats { trace: None, ..stats });
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}
