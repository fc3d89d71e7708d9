//! Replacement passes to quiescence under each skip policy, with every
//! performed search checked against the necessary-search oracle.

use tietze::engine::{EngineConfig, ReplacementSearcher};
use tietze::generate::{generate, GenParams, Profile};
use tietze::matching::MatchStrategy;
use tietze::skip::{necessary_set_oracle, pending_pairs, performed_set, PassContext, SkipPolicy};

fn main() {
    let mut input = generate(&GenParams { gens: 4, rels: 60, maxlen: 20, seed: 11, profile: Profile::Generic }).unwrap();
    input.sort_rel();
    let cfg = EngineConfig { match_strategy: MatchStrategy::Brute, ..EngineConfig::default() };
    println!("{:<12} {:>7} {:>10} {:>10} {:>11} {:>6}", "policy", "passes", "considered", "searched", "unnecessary", "stale");
    for policy in SkipPolicy::all() {
        let mut p = input.clone();
        let mut ctx = PassContext::new(policy);
        ctx.register_all(&p);
        let mut searcher = ReplacementSearcher::new(&cfg);
        let mut events = Vec::new();
        loop {
            let out = ctx.run_pass(&mut p, &mut searcher).unwrap();
            let changed = out.changed;
            events.extend(out.events);
            if !changed {
                break;
            }
        }
        let necessary = necessary_set_oracle(&events, ctx.change_log());
        let performed = performed_set(&events);
        println!(
            "{:<12} {:>7} {:>10} {:>10} {:>11} {:>6}",
            policy.name(),
            ctx.passes_run(),
            events.len(),
            performed.len(),
            performed.difference(&necessary).count(),
            pending_pairs(&p, &events, ctx.change_log()).len()
        );
    }
}
