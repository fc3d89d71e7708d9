//! JSON run reports and multi-configuration comparisons.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::engine::{simplify, EngineConfig, EngineError, EngineStats};
use crate::matching::MatchStrategy;
use crate::presentation::Presentation;
use crate::skip::SkipPolicy;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub tool_version: String,
    pub label: String,
    pub config: EngineConfig,
    #[serde(flatten)]
    pub stats: EngineStats,
}

impl StatsReport {
    pub fn new(config: &EngineConfig, stats: EngineStats) -> Self {
        StatsReport {
            tool_version: TOOL_VERSION.to_string(),
            label: format!("{}/{}", config.match_strategy.name(), config.skip_policy.name()),
            config: config.clone(),
            stats,
        }
    }
}

/// One skip-policy ordering that failed on a bench run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceViolation {
    pub strategy: String,
    pub larger: String,
    pub smaller: String,
    pub larger_searches: u64,
    pub smaller_searches: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchSummary {
    pub reports: Vec<StatsReport>,
    pub violations: Vec<DominanceViolation>,
}

impl BenchSummary {
    pub fn dominance_holds(&self) -> bool {
        self.violations.is_empty()
    }

    /// Aligned text table of the headline counters.
    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<28} {:>8} {:>10} {:>10} {:>8} {:>10} {:>10} {:>8} {:>10}",
            "configuration", "passes", "considered", "searches", "success", "fp_match", "bloom_fp", "length", "ms"
        );
        for r in &self.reports {
            let st = &r.stats;
            let _ = writeln!(
                s,
                "{:<28} {:>8} {:>10} {:>10} {:>8} {:>10} {:>10} {:>8} {:>10.1}",
                r.label,
                st.passes,
                st.pairs_considered,
                st.searches_performed,
                st.searches_successful,
                st.counters.fingerprint_matches,
                st.counters.bloom_false_hits,
                st.total_length_after,
                st.timings.total_ms
            );
        }
        for v in &self.violations {
            let _ = writeln!(
                s,
                "DOMINANCE VIOLATION [{}]: {} ({}) < {} ({})",
                v.strategy, v.larger, v.larger_searches, v.smaller, v.smaller_searches
            );
        }
        s
    }
}

/// Expected ordering: all-pairs >= flags >= each timestamp policy.
pub fn dominance_violations(reports: &[StatsReport]) -> Vec<DominanceViolation> {
    let order = [
        (SkipPolicy::AllPairs, SkipPolicy::ChangeFlags),
        (SkipPolicy::ChangeFlags, SkipPolicy::TsSorted),
        (SkipPolicy::ChangeFlags, SkipPolicy::TsUnsorted),
        (SkipPolicy::AllPairs, SkipPolicy::TsSorted),
        (SkipPolicy::AllPairs, SkipPolicy::TsUnsorted),
    ];
    let mut out = Vec::new();
    for a in reports {
        for b in reports {
            if a.config.match_strategy != b.config.match_strategy {
                continue;
            }
            let expected = order.contains(&(a.config.skip_policy, b.config.skip_policy));
            if expected && a.stats.searches_performed < b.stats.searches_performed {
                out.push(DominanceViolation {
                    strategy: a.config.match_strategy.name(),
                    larger: a.config.skip_policy.name().into(),
                    smaller: b.config.skip_policy.name().into(),
                    larger_searches: a.stats.searches_performed,
                    smaller_searches: b.stats.searches_performed,
                });
            }
        }
    }
    out
}

/// Runs `input` under every combination of the given strategies and
/// policies, with `base` supplying the remaining knobs.
pub fn bench(
    input: &Presentation,
    base: &EngineConfig,
    strategies: &[MatchStrategy],
    policies: &[SkipPolicy],
) -> Result<BenchSummary, EngineError> {
    let mut reports = Vec::new();
    for &match_strategy in strategies {
        for &skip_policy in policies {
            let cfg = EngineConfig { match_strategy, skip_policy, ..base.clone() };
            let mut p = input.clone();
            let stats = simplify(&mut p, &cfg)?;
            reports.push(StatsReport::new(&cfg, stats));
        }
    }
    let violations = dominance_violations(&reports);
    Ok(BenchSummary { reports, violations })
}
