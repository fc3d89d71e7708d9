//! Match-level strategies for `ComStr(R_p, R_t)`: does a rotation `u·v` of
//! the pattern (or of its inverse) share a suffix `v` with a rotation `w·v`
//! of the text, with `|v| > |u|`?
//!
//! Every strategy takes the pattern and text words plus the involution set
//! (involutory generators are their own inverses) and agrees with
//! [`exhaustive_oracle`] on success or failure.

mod automaton;
mod bloom;
mod brute;
mod fingerprint;
mod karp_rabin;
mod oracle;
mod signature;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::{RelatorId, RelatorRecord};
use crate::words::{useful_threshold, Involutions, Symbol, Word};

pub use automaton::{automaton_search, build_ls_automaton, AutomatonIndex, AutomatonMode, LsAutomaton, StateId};
pub use bloom::{BloomError, BloomFilter};
pub use brute::{anchor_positions, brute_search};
pub use fingerprint::{fp_init, fp_init_codes, fp_roll, fp_sweep, Fingerprint, FingerprintError, FingerprintParams, WindowHasher};
pub use karp_rabin::{build_pattern_index, kr_search, Backing, PatternIndex};
pub use oracle::exhaustive_oracle;
pub use signature::{compute_signature, signature_skip, Signature};

/// A witnessed useful common substring.
///
/// The pattern equivalent is `rotate_right(P, pattern_rot)` where `P` is the
/// pattern or, if `inverted`, its inverse; it splits as `u·v`. The text
/// rotation `rotate_right(R_t, text_rot)` splits as `w·v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Match {
    pub inverted: bool,
    pub pattern_rot: usize,
    pub text_rot: usize,
    pub u_len: usize,
    pub v_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchError {
    #[error("match lengths inconsistent: u={u_len} v={v_len} pattern={l_p} text={l_t}")]
    Lengths { u_len: usize, v_len: usize, l_p: usize, l_t: usize },
    #[error("common segment of length {v_len} below useful threshold {threshold}")]
    NotUseful { v_len: usize, threshold: usize },
    #[error("pattern and text segments differ")]
    SegmentMismatch,
}

impl Match {
    fn orientation(&self, pattern: &Word, inv: &Involutions) -> Word {
        if self.inverted {
            inv.invert(pattern)
        } else {
            pattern.clone()
        }
    }

    /// The pattern equivalent `u·v`.
    pub fn pattern_equivalent(&self, pattern: &Word, inv: &Involutions) -> Word {
        self.orientation(pattern, inv).rotate_right(self.pattern_rot)
    }

    /// The text rotation `w·v`.
    pub fn text_rotation(&self, text: &Word) -> Word {
        text.rotate_right(self.text_rot)
    }

    pub fn u(&self, pattern: &Word, inv: &Involutions) -> Word {
        Word::new(self.pattern_equivalent(pattern, inv).symbols()[..self.u_len].to_vec())
    }

    pub fn v(&self, pattern: &Word, inv: &Involutions) -> Word {
        Word::new(self.pattern_equivalent(pattern, inv).symbols()[self.u_len..].to_vec())
    }

    pub fn w(&self, text: &Word) -> Word {
        let rot = self.text_rotation(text);
        Word::new(rot.symbols()[..text.len() - self.v_len].to_vec())
    }

    pub fn validate(&self, pattern: &Word, text: &Word, inv: &Involutions) -> Result<(), MatchError> {
        let (l_p, l_t) = (pattern.len(), text.len());
        if l_p == 0 || self.u_len + self.v_len != l_p || self.v_len <= self.u_len || self.v_len > l_t {
            return Err(MatchError::Lengths { u_len: self.u_len, v_len: self.v_len, l_p, l_t });
        }
        let threshold = useful_threshold(l_p).expect("nonempty");
        if self.v_len < threshold {
            return Err(MatchError::NotUseful { v_len: self.v_len, threshold });
        }
        let pv = self.v(pattern, inv);
        let rot = self.text_rotation(text);
        if pv.symbols() != &rot.symbols()[l_t - self.v_len..] {
            return Err(MatchError::SegmentMismatch);
        }
        Ok(())
    }
}

/// Diagnostic counters for one or more searches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCounters {
    pub windows_scanned: u64,
    pub filter_hits: u64,
    pub fingerprint_matches: u64,
    pub fingerprint_false_matches: u64,
    pub bloom_false_hits: u64,
    pub confirmations: u64,
    pub successes: u64,
    pub signature_skips: u64,
    pub automata_built: u64,
    pub pattern_indexes_built: u64,
}

impl SearchCounters {
    pub fn merge(&mut self, other: &SearchCounters) {
        self.windows_scanned += other.windows_scanned;
        self.filter_hits += other.filter_hits;
        self.fingerprint_matches += other.fingerprint_matches;
        self.fingerprint_false_matches += other.fingerprint_false_matches;
        self.bloom_false_hits += other.bloom_false_hits;
        self.confirmations += other.confirmations;
        self.successes += other.successes;
        self.signature_skips += other.signature_skips;
        self.automata_built += other.automata_built;
        self.pattern_indexes_built += other.pattern_indexes_built;
    }

    pub fn is_consistent(&self) -> bool {
        self.filter_hits == self.fingerprint_matches + self.bloom_false_hits
            && self.fingerprint_false_matches <= self.fingerprint_matches
    }
}

/// A common segment `orient[pattern_start..+len] == text[text_start..+len]`,
/// both read circularly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Alignment {
    pub inverted: bool,
    pub pattern_start: usize,
    pub text_start: usize,
    pub len: usize,
}

impl Alignment {
    pub fn into_match(self, l_p: usize, l_t: usize) -> Match {
        debug_assert!(self.len <= l_p && l_p <= l_t);
        Match {
            inverted: self.inverted,
            pattern_rot: (2 * l_p - self.len - self.pattern_start % l_p) % l_p,
            text_rot: (2 * l_t - self.len - self.text_start % l_t) % l_t,
            u_len: l_p - self.len,
            v_len: self.len,
        }
    }
}

/// Grows a known common segment backwards, then forwards, circularly, up to
/// the pattern length.
pub(crate) fn extend_alignment(
    orient: &[Symbol],
    text: &[Symbol],
    inverted: bool,
    mut ps: usize,
    mut ts: usize,
    mut len: usize,
) -> Alignment {
    let (l_p, l_t) = (orient.len(), text.len());
    while len < l_p && orient[(ps + l_p - 1) % l_p] == text[(ts + l_t - 1) % l_t] {
        ps = (ps + l_p - 1) % l_p;
        ts = (ts + l_t - 1) % l_t;
        len += 1;
    }
    while len < l_p && orient[(ps + len) % l_p] == text[(ts + len) % l_t] {
        len += 1;
    }
    Alignment { inverted, pattern_start: ps % l_p, text_start: ts % l_t, len }
}

pub(crate) fn circular_eq(a: &[Symbol], a_start: usize, b: &[Symbol], b_start: usize, len: usize) -> bool {
    (0..len).all(|k| a[(a_start + k) % a.len()] == b[(b_start + k) % b.len()])
}

/// Match-level strategy selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchStrategy {
    Exhaustive,
    Brute,
    /// Signature pre-filter in front of brute force.
    Signature,
    KarpRabin(Backing),
    Automaton(AutomatonMode),
}

impl MatchStrategy {
    pub fn name(&self) -> String {
        match self {
            MatchStrategy::Exhaustive => "exhaustive".into(),
            MatchStrategy::Brute => "brute".into(),
            MatchStrategy::Signature => "signature".into(),
            MatchStrategy::KarpRabin(Backing::Exact) => "kr-hash".into(),
            MatchStrategy::KarpRabin(Backing::Bloom3) => "kr-bloom3".into(),
            MatchStrategy::KarpRabin(Backing::Bloom4) => "kr-bloom4".into(),
            MatchStrategy::Automaton(AutomatonMode::TwoAutomata) => "automaton-two".into(),
            MatchStrategy::Automaton(AutomatonMode::OneAutomaton) => "automaton-one".into(),
        }
    }

    /// Every strategy that the engine can run.
    pub fn all() -> Vec<MatchStrategy> {
        vec![
            MatchStrategy::Brute,
            MatchStrategy::Signature,
            MatchStrategy::KarpRabin(Backing::Exact),
            MatchStrategy::KarpRabin(Backing::Bloom3),
            MatchStrategy::KarpRabin(Backing::Bloom4),
            MatchStrategy::Automaton(AutomatonMode::TwoAutomata),
            MatchStrategy::Automaton(AutomatonMode::OneAutomaton),
        ]
    }
}

enum PatternState {
    None,
    Kr(PatternIndex),
    Automaton(AutomatonIndex),
}

struct CachedPattern {
    id: RelatorId,
    version: u64,
    state: PatternState,
}

/// Runs one strategy over many relator pairs, caching per-pattern indexes
/// (fingerprint tables, automata) and per-relator signatures.
///
/// The pattern cache holds a single entry: the skip-level loops keep one
/// pattern fixed for a whole inner loop, so the index is built once per
/// pattern iteration, on its first performed search.
pub struct Matcher {
    strategy: MatchStrategy,
    params: FingerprintParams,
    bloom_log2: u32,
    counters: SearchCounters,
    involutions: Involutions,
    pattern: Option<CachedPattern>,
    signatures: HashMap<RelatorId, (u64, Signature)>,
}

impl Matcher {
    pub fn new(strategy: MatchStrategy, params: FingerprintParams, bloom_log2: u32) -> Self {
        Matcher {
            strategy,
            params,
            bloom_log2,
            counters: SearchCounters::default(),
            involutions: Involutions::new(),
            pattern: None,
            signatures: HashMap::new(),
        }
    }

    pub fn strategy(&self) -> MatchStrategy {
        self.strategy
    }

    pub fn counters(&self) -> &SearchCounters {
        &self.counters
    }

    fn signature(&mut self, r: &RelatorRecord) -> Signature {
        if let Some(&(version, sig)) = self.signatures.get(&r.id) {
            if version == r.version {
                return sig;
            }
        }
        let sig = compute_signature(&r.word, &self.involutions);
        self.signatures.insert(r.id, (r.version, sig));
        sig
    }

    fn pattern_state(&mut self, pattern: &RelatorRecord) -> &PatternState {
        let fresh = match &self.pattern {
            Some(c) => c.id != pattern.id || c.version != pattern.version,
            None => true,
        };
        if fresh {
            let state = match self.strategy {
                MatchStrategy::KarpRabin(backing) => {
                    self.counters.pattern_indexes_built += 1;
                    PatternState::Kr(
                        build_pattern_index(&pattern.word, &self.involutions, backing, self.params, self.bloom_log2)
                            .expect("bloom geometry validated by config"),
                    )
                }
                MatchStrategy::Automaton(mode) => PatternState::Automaton(AutomatonIndex::build(
                    &pattern.word,
                    &self.involutions,
                    mode,
                    &mut self.counters,
                )),
                _ => PatternState::None,
            };
            self.pattern = Some(CachedPattern { id: pattern.id, version: pattern.version, state });
        }
        &self.pattern.as_ref().expect("just filled").state
    }

    /// `ComStr(pattern, text)`; requires `|pattern| <= |text|`.
    pub fn find(&mut self, pattern: &RelatorRecord, text: &RelatorRecord, inv: &Involutions) -> Option<Match> {
        debug_assert!(pattern.len() <= text.len());
        if *inv != self.involutions {
            self.involutions = inv.clone();
            self.pattern = None;
            self.signatures.clear();
        }
        let found = match self.strategy {
            MatchStrategy::Exhaustive => exhaustive_oracle(&pattern.word, &text.word, inv),
            MatchStrategy::Brute => brute_search(&pattern.word, &text.word, inv),
            MatchStrategy::Signature => {
                let threshold = useful_threshold(pattern.len()).expect("nonempty pattern");
                let (sp, st) = (self.signature(pattern), self.signature(text));
                if signature_skip(sp, st, threshold) {
                    self.counters.signature_skips += 1;
                    None
                } else {
                    brute_search(&pattern.word, &text.word, inv)
                }
            }
            MatchStrategy::KarpRabin(_) => {
                let mut counters = SearchCounters::default();
                let found = match self.pattern_state(pattern) {
                    PatternState::Kr(idx) => kr_search(idx, &text.word, &mut counters),
                    _ => unreachable!("karp-rabin strategy has a fingerprint index"),
                };
                self.counters.merge(&counters);
                return found;
            }
            MatchStrategy::Automaton(_) => {
                let mut counters = SearchCounters::default();
                let found = match self.pattern_state(pattern) {
                    PatternState::Automaton(idx) => idx.search(&text.word, inv, &mut counters),
                    _ => unreachable!("automaton strategy has an automaton index"),
                };
                self.counters.merge(&counters);
                return found;
            }
        };
        if found.is_some() {
            self.counters.successes += 1;
        }
        found
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn alignment_to_match_round_trip() {
        // "abc" vs "dab": v = "ab" at pattern 0, text 1.
        let m = Alignment { inverted: false, pattern_start: 0, text_start: 1, len: 2 }.into_match(3, 3);
        let inv = Involutions::new();
        assert_eq!(m.pattern_equivalent(&w("abc"), &inv), w("cab"));
        assert_eq!(m.u(&w("abc"), &inv), w("c"));
        assert_eq!(m.v(&w("abc"), &inv), w("ab"));
        assert_eq!(m.w(&w("dab")), w("d"));
        assert!(m.validate(&w("abc"), &w("dab"), &inv).is_ok());
    }

    #[test]
    fn validation_rejects_bad_matches() {
        let inv = Involutions::new();
        let bad_len = Match { inverted: false, pattern_rot: 0, text_rot: 0, u_len: 2, v_len: 2 };
        assert!(matches!(bad_len.validate(&w("abc"), &w("dab"), &inv), Err(MatchError::Lengths { .. })));
        let mismatch = Match { inverted: false, pattern_rot: 0, text_rot: 0, u_len: 1, v_len: 2 };
        assert_eq!(mismatch.validate(&w("abc"), &w("dab"), &inv), Err(MatchError::SegmentMismatch));
    }

    #[test]
    fn extension_stops_at_pattern_length() {
        let p = w("abab");
        let t = w("abababab");
        let a = extend_alignment(p.symbols(), t.symbols(), false, 0, 0, 1);
        assert_eq!(a.len, 4);
    }

    #[test]
    fn counters_merge() {
        let mut a = SearchCounters { filter_hits: 3, fingerprint_matches: 1, bloom_false_hits: 2, ..Default::default() };
        a.merge(&a.clone());
        assert_eq!(a.filter_hits, 6);
        assert!(a.is_consistent());
    }
}
