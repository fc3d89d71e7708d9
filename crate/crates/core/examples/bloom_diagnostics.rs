//! Where false matches come from: Bloom filter collisions against exact
//! fingerprint lookups, on long relators over four generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tietze::engine::{simplify, EngineConfig};
use tietze::generate::{generate, GenParams, Profile};
use tietze::matching::{Backing, BloomFilter, MatchStrategy};
use tietze::skip::SkipPolicy;

fn main() {
    let input = generate(&GenParams { gens: 4, rels: 16, maxlen: 600, seed: 606, profile: Profile::SmallAlphabetLong }).unwrap();
    for backing in [Backing::Bloom3, Backing::Bloom4, Backing::Exact] {
        let cfg = EngineConfig {
            match_strategy: MatchStrategy::KarpRabin(backing),
            skip_policy: SkipPolicy::TsSorted,
            bloom_log2: 10,
            long_elim: false,
            ..EngineConfig::default()
        };
        let mut p = input.clone();
        let c = simplify(&mut p, &cfg).unwrap().counters;
        println!(
            "{:<10} windows {:>8} filter hits {:>7} bloom false {:>7} fingerprint matches {:>3} (false {})",
            cfg.match_strategy.name(),
            c.windows_scanned,
            c.filter_hits,
            c.bloom_false_hits,
            c.fingerprint_matches,
            c.fingerprint_false_matches
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut b = BloomFilter::new(3, 16).unwrap();
    for _ in 0..6554 {
        b.insert(rng.gen());
    }
    println!("fill {:?}, estimated false-positive rate {:.5}", b.fill_ratios(), b.expected_false_positive_rate(6554));
}
