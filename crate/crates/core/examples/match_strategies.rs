//! One pattern/text pair searched by every match strategy.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tietze::matching::{exhaustive_oracle, FingerprintParams, MatchStrategy, Matcher};
use tietze::{Involutions, RelatorId, RelatorRecord, Word};

fn record(id: u64, w: &str) -> RelatorRecord {
    RelatorRecord { id: RelatorId(id), word: w.parse().unwrap(), tp: -1, ts: 0, version: 0 }
}

fn main() {
    let inv = Involutions::new();
    let (pattern, text) = (record(1, "abcabC"), record(2, "ccBACBAbbaac"));
    let expected = exhaustive_oracle(&pattern.word, &text.word, &inv);
    println!("oracle: {expected:?}");
    let params = FingerprintParams::random(&mut ChaCha8Rng::seed_from_u64(1));
    for strategy in MatchStrategy::all() {
        let mut m = Matcher::new(strategy, params, 16);
        match m.find(&pattern, &text, &inv) {
            Some(found) => {
                found.validate(&pattern.word, &text.word, &inv).expect("valid match");
                let (u, v, w) = (found.u(&pattern.word, &inv), found.v(&pattern.word, &inv), found.w(&text.word));
                let replaced: Word = inv.reduce(&w.concat(&inv.invert(&u)));
                println!("{:<18} u={u} v={v} w={w}: text becomes {replaced}  {:?}", strategy.name(), m.counters());
            }
            None => println!("{:<18} no useful match", strategy.name()),
        }
    }
}
