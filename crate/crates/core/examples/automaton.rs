//! Longest-substring automata, and the build count of the two modes.

use tietze::engine::{simplify, EngineConfig};
use tietze::generate::{generate, GenParams, Profile};
use tietze::matching::{build_ls_automaton, AutomatonMode, MatchStrategy};
use tietze::Word;

fn main() {
    let pattern: Word = "abcab".parse().unwrap();
    let a = build_ls_automaton(&pattern);
    let text: Word = "cabcaab".parse().unwrap();
    println!("{} states over {} symbols", a.num_states(), a.alphabet_size());
    println!("longest pattern substring ending at each position of {text}: {:?}", a.scan(text.symbols()));

    let input = generate(&GenParams { gens: 3, rels: 12, maxlen: 40, seed: 1, profile: Profile::SmallAlphabetLong }).unwrap();
    for mode in [AutomatonMode::TwoAutomata, AutomatonMode::OneAutomaton] {
        let cfg = EngineConfig { match_strategy: MatchStrategy::Automaton(mode), ..EngineConfig::default() };
        let mut p = input.clone();
        let st = simplify(&mut p, &cfg).unwrap();
        println!("{:<14} automata built {:>4}, searches {:>5}, final length {}", cfg.match_strategy.name(), st.counters.automata_built, st.searches_performed, st.total_length_after);
    }
}
