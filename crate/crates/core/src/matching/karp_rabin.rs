//! Karp-Rabin matching: fingerprints of every minimal possibly-useful
//! pattern window, kept in a Bloom filter or an exact hash table.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::words::{useful_threshold, Involutions, Symbol, Word};

use super::bloom::{BloomError, BloomFilter};
use super::fingerprint::{FingerprintParams, WindowHasher};
use super::{circular_eq, extend_alignment, Match, SearchCounters};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backing {
    Bloom3,
    Bloom4,
    Exact,
}

#[derive(Clone, Copy, Debug)]
struct PatternWindow {
    fp: u64,
    inverted: bool,
    offset: usize,
}

#[derive(Clone, Debug)]
enum Store {
    Bloom(BloomFilter),
    Exact(HashMap<u64, Vec<usize>>),
}

/// Per-pattern search state.
#[derive(Clone, Debug)]
pub struct PatternIndex {
    threshold: usize,
    hasher: WindowHasher,
    orients: [Vec<Symbol>; 2],
    windows: Vec<PatternWindow>,
    store: Store,
}

impl PatternIndex {
    pub fn threshold(&self) -> usize {
        self.threshold
    }

    /// Number of window fingerprints inserted (always `2 * l_p`).
    pub fn inserted_windows(&self) -> usize {
        self.windows.len()
    }

    /// Distinct fingerprint values among the inserted windows.
    pub fn distinct_fingerprints(&self) -> usize {
        let mut v: Vec<u64> = self.windows.iter().map(|w| w.fp).collect();
        v.sort_unstable();
        v.dedup();
        v.len()
    }

    pub fn pattern_len(&self) -> usize {
        self.orients[0].len()
    }

    pub fn bloom(&self) -> Option<&BloomFilter> {
        match &self.store {
            Store::Bloom(b) => Some(b),
            Store::Exact(_) => None,
        }
    }
}

fn codes(symbols: &[Symbol]) -> Vec<u64> {
    symbols.iter().map(|s| s.code()).collect()
}

pub fn build_pattern_index(
    pattern: &Word,
    inv: &Involutions,
    backing: Backing,
    params: FingerprintParams,
    bloom_log2: u32,
) -> Result<PatternIndex, BloomError> {
    let l_p = pattern.len();
    assert!(l_p >= 1, "pattern must be nonempty");
    let m = useful_threshold(l_p).expect("nonempty");
    let hasher = WindowHasher::new(params, m);
    let orients = [pattern.symbols().to_vec(), inv.invert(pattern).into_symbols()];
    let mut windows = Vec::with_capacity(2 * l_p);
    for (o, sym) in orients.iter().enumerate() {
        let ext = Word::new(sym.clone()).extend_front(m - 1).expect("m - 1 <= l_p");
        let fps = hasher.sweep(&codes(ext.symbols()));
        debug_assert_eq!(fps.len(), l_p);
        windows.extend(fps.into_iter().enumerate().map(|(offset, fp)| PatternWindow { fp, inverted: o == 1, offset }));
    }
    let store = match backing {
        Backing::Exact => {
            let mut map: HashMap<u64, Vec<usize>> = HashMap::with_capacity(windows.len());
            for (i, w) in windows.iter().enumerate() {
                map.entry(w.fp).or_default().push(i);
            }
            Store::Exact(map)
        }
        Backing::Bloom3 | Backing::Bloom4 => {
            let k = if backing == Backing::Bloom3 { 3 } else { 4 };
            let mut bloom = BloomFilter::new(k, bloom_log2)?;
            for w in &windows {
                bloom.insert(w.fp);
            }
            Store::Bloom(bloom)
        }
    };
    Ok(PatternIndex { threshold: m, hasher, orients, windows, store })
}

/// Rolls a threshold-length fingerprint across the extended text and confirms
/// each filter hit symbol by symbol. The first confirmed window is extended
/// to a maximal match.
pub fn kr_search(idx: &PatternIndex, text: &Word, counters: &mut SearchCounters) -> Option<Match> {
    let (l_p, l_t) = (idx.pattern_len(), text.len());
    if l_p > l_t {
        return None;
    }
    let m = idx.threshold;
    let ts = text.symbols();
    let ext = text.extend_front(m - 1).expect("m - 1 < l_t");
    let fps = idx.hasher.sweep(&codes(ext.symbols()));
    let mut scratch = Vec::new();
    for (j, &fp) in fps.iter().enumerate() {
        counters.windows_scanned += 1;
        let candidates: &[usize] = match &idx.store {
            Store::Exact(map) => match map.get(&fp) {
                Some(c) => {
                    counters.filter_hits += 1;
                    c
                }
                None => continue,
            },
            Store::Bloom(bloom) => {
                if !bloom.query(fp) {
                    continue;
                }
                counters.filter_hits += 1;
                // Bloom hits carry no pointer back to the pattern; scan the
                // stored windows linearly.
                scratch.clear();
                scratch.extend(idx.windows.iter().enumerate().filter(|(_, w)| w.fp == fp).map(|(i, _)| i));
                if scratch.is_empty() {
                    counters.bloom_false_hits += 1;
                    continue;
                }
                &scratch
            }
        };
        counters.fingerprint_matches += 1;
        let mut confirmed = None;
        for &c in candidates {
            counters.confirmations += 1;
            let w = idx.windows[c];
            let orient = &idx.orients[w.inverted as usize];
            if circular_eq(orient, w.offset, ts, j, m) {
                confirmed = Some(w);
                break;
            }
        }
        match confirmed {
            Some(w) => {
                counters.successes += 1;
                let orient = &idx.orients[w.inverted as usize];
                return Some(extend_alignment(orient, ts, w.inverted, w.offset, j, m).into_match(l_p, l_t));
            }
            None => counters.fingerprint_false_matches += 1,
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::exhaustive_oracle;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn params() -> FingerprintParams {
        FingerprintParams::new(1_234_567, super::super::fingerprint::MERSENNE_61)
    }

    #[test]
    fn window_counts() {
        let inv = Involutions::new();
        for backing in [Backing::Exact, Backing::Bloom3, Backing::Bloom4] {
            assert_eq!(build_pattern_index(&w("abc"), &inv, backing, params(), 16).unwrap().inserted_windows(), 6);
            let one = build_pattern_index(&w("a"), &inv, backing, params(), 16).unwrap();
            assert_eq!((one.threshold(), one.inserted_windows()), (1, 2));
        }
        // A proper power repeats its windows: abab has two per orientation.
        let idx = build_pattern_index(&w("abab"), &inv, Backing::Exact, params(), 16).unwrap();
        assert_eq!(idx.inserted_windows(), 8);
        assert_eq!(idx.distinct_fingerprints(), 4);
    }

    #[test]
    fn exact_search_example() {
        let inv = Involutions::new();
        let idx = build_pattern_index(&w("abc"), &inv, Backing::Exact, params(), 16).unwrap();
        let mut c = SearchCounters::default();
        let m = kr_search(&idx, &w("dab"), &mut c).unwrap();
        assert_eq!(m.v(&w("abc"), &inv), w("ab"));
        assert!(c.fingerprint_matches >= 1);
        assert_eq!(c.fingerprint_false_matches, 0);
        assert!(c.is_consistent());
    }

    #[test]
    fn disjoint_alphabet_finds_nothing() {
        let inv = Involutions::new();
        for backing in [Backing::Exact, Backing::Bloom3] {
            let idx = build_pattern_index(&w("ab"), &inv, backing, params(), 16).unwrap();
            let mut c = SearchCounters::default();
            assert_eq!(kr_search(&idx, &w("cdcd"), &mut c), None);
            assert_eq!(c.fingerprint_matches, 0);
            assert_eq!(c.filter_hits, c.bloom_false_hits);
        }
    }

    #[test]
    fn backings_agree_with_oracle_on_examples() {
        let inv = Involutions::new();
        let cases = [("abc", "dab"), ("abab", "cbabd"), ("abc", "dBA"), ("aB", "cd"), ("abcd", "xyzabcw")];
        for (p, t) in cases {
            let expect = exhaustive_oracle(&w(p), &w(t), &inv).is_some();
            for backing in [Backing::Exact, Backing::Bloom3, Backing::Bloom4] {
                let idx = build_pattern_index(&w(p), &inv, backing, params(), 10).unwrap();
                let mut c = SearchCounters::default();
                let got = kr_search(&idx, &w(t), &mut c);
                assert_eq!(got.is_some(), expect, "{p} vs {t} with {backing:?}");
                if let Some(m) = got {
                    m.validate(&w(p), &w(t), &inv).unwrap();
                }
            }
        }
    }
}
