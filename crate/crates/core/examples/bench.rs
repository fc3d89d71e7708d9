//! Every strategy under every skip policy on one input, with the
//! dominance check across policies.

use tietze::engine::EngineConfig;
use tietze::generate::{generate, GenParams, Profile};
use tietze::matching::MatchStrategy;
use tietze::report::bench;
use tietze::skip::SkipPolicy;

fn main() {
    let input = generate(&GenParams { gens: 3, rels: 12, maxlen: 40, seed: 1, profile: Profile::SmallAlphabetLong }).unwrap();
    let summary = bench(&input, &EngineConfig::default(), &MatchStrategy::all(), &SkipPolicy::all()).unwrap();
    print!("{}", summary.table());
    println!("dominance holds: {}", summary.dominance_holds());
}
