//! Longest-substring automaton.
//!
//! A suffix automaton of the pattern, completed into dense `next_state` and
//! `next_length` tables over the pattern's own alphabet. Scanning a text, the
//! running length after each symbol is the length of the longest pattern
//! substring ending there. Symbols absent from the pattern reset to the
//! initial state with length 0.

use serde::{Deserialize, Serialize};

use crate::words::{useful_threshold, Involutions, Symbol, Word};

use super::{circular_eq, extend_alignment, Match, SearchCounters};

pub type StateId = u32;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AutomatonMode {
    /// One automaton for the extended pattern, one for its extended inverse.
    TwoAutomata,
    /// Only the pattern automaton, run over the text and its inverse.
    OneAutomaton,
}

#[derive(Clone, Debug)]
pub struct LsAutomaton {
    /// Column per symbol code, `NONE` when the symbol is absent.
    column: Vec<u32>,
    columns: usize,
    next_state: Vec<u32>,
    next_length: Vec<u32>,
    /// Length of the longest string in each state.
    longest: Vec<u32>,
    /// End position in the pattern of the first occurrence of each state.
    first_end: Vec<u32>,
}

struct Builder {
    len: Vec<u32>,
    link: Vec<u32>,
    first_end: Vec<u32>,
    trans: Vec<Vec<u32>>,
}

impl Builder {
    fn new(columns: usize) -> Self {
        Builder { len: vec![0], link: vec![NONE], first_end: vec![0], trans: vec![vec![NONE; columns]] }
    }

    fn add_state(&mut self, len: u32, first_end: u32, trans: Vec<u32>) -> u32 {
        self.len.push(len);
        self.link.push(NONE);
        self.first_end.push(first_end);
        self.trans.push(trans);
        (self.len.len() - 1) as u32
    }

    fn extend(&mut self, last: u32, c: usize, pos: u32) -> u32 {
        let columns = self.trans[0].len();
        let cur = self.add_state(self.len[last as usize] + 1, pos, vec![NONE; columns]);
        let mut p = last;
        while p != NONE && self.trans[p as usize][c] == NONE {
            self.trans[p as usize][c] = cur;
            p = self.link[p as usize];
        }
        if p == NONE {
            self.link[cur as usize] = 0;
            return cur;
        }
        let q = self.trans[p as usize][c];
        if self.len[p as usize] + 1 == self.len[q as usize] {
            self.link[cur as usize] = q;
            return cur;
        }
        let clone = self.add_state(self.len[p as usize] + 1, self.first_end[q as usize], self.trans[q as usize].clone());
        self.link[clone as usize] = self.link[q as usize];
        while p != NONE && self.trans[p as usize][c] == q {
            self.trans[p as usize][c] = clone;
            p = self.link[p as usize];
        }
        self.link[q as usize] = clone;
        self.link[cur as usize] = clone;
        cur
    }
}

pub fn build_ls_automaton(pattern: &Word) -> LsAutomaton {
    assert!(!pattern.is_empty(), "automaton needs a nonempty pattern");
    let max_code = pattern.symbols().iter().map(|s| s.code()).max().unwrap_or(0) as usize;
    let mut column = vec![NONE; max_code + 1];
    let mut columns = 0usize;
    for s in pattern.symbols() {
        let c = s.code() as usize;
        if column[c] == NONE {
            column[c] = columns as u32;
            columns += 1;
        }
    }
    let mut b = Builder::new(columns);
    let mut last = 0;
    for (pos, s) in pattern.symbols().iter().enumerate() {
        last = b.extend(last, column[s.code() as usize] as usize, pos as u32);
    }

    // Complete the tables along suffix links, shortest states first so the
    // link target is always finished.
    let n = b.len.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&s| b.len[s]);
    let mut next_state = vec![NONE; n * columns];
    let mut next_length = vec![0u32; n * columns];
    for &s in &order {
        for c in 0..columns {
            let idx = s * columns + c;
            let direct = b.trans[s][c];
            if direct != NONE {
                next_state[idx] = direct;
                next_length[idx] = b.len[s] + 1;
            } else if s != 0 {
                let l = b.link[s] as usize * columns + c;
                next_state[idx] = next_state[l];
                next_length[idx] = next_length[l];
            }
        }
    }
    LsAutomaton { column, columns, next_state, next_length, longest: b.len, first_end: b.first_end }
}

impl LsAutomaton {
    pub fn initial(&self) -> StateId {
        0
    }

    pub fn num_states(&self) -> usize {
        self.longest.len()
    }

    /// Entries in each of the two transition tables.
    pub fn table_size(&self) -> usize {
        self.next_state.len()
    }

    pub fn alphabet_size(&self) -> usize {
        self.columns
    }

    /// Follows one symbol: `len' = min(len + 1, next_length)`, or back to the
    /// initial state with length 0.
    #[inline]
    pub fn step(&self, state: StateId, len: usize, s: Symbol) -> (StateId, usize) {
        let code = s.code() as usize;
        let col = match self.column.get(code) {
            Some(&c) if c != NONE => c as usize,
            _ => return (0, 0),
        };
        let idx = state as usize * self.columns + col;
        match self.next_state[idx] {
            NONE => (0, 0),
            t => (t, (len + 1).min(self.next_length[idx] as usize)),
        }
    }

    /// Running longest-match length after each text symbol.
    pub fn scan(&self, text: &[Symbol]) -> Vec<usize> {
        let (mut st, mut len) = (self.initial(), 0);
        text.iter()
            .map(|&s| {
                (st, len) = self.step(st, len, s);
                len
            })
            .collect()
    }

    pub fn first_end(&self, state: StateId) -> usize {
        self.first_end[state as usize] as usize
    }
}

/// The automata for one pattern.
#[derive(Clone, Debug)]
pub struct AutomatonIndex {
    mode: AutomatonMode,
    threshold: usize,
    orients: [Vec<Symbol>; 2],
    forward: LsAutomaton,
    inverse: Option<LsAutomaton>,
}

/// Smallest text offset `s` whose length-`m` circular window reaches `m` in
/// the scan, reading `ext` (the text extended by `m - 1`).
fn first_window(a: &LsAutomaton, ext: &[Symbol], m: usize, counters: &mut SearchCounters) -> Option<usize> {
    let (mut st, mut len) = (a.initial(), 0);
    for (e, &s) in ext.iter().enumerate() {
        counters.windows_scanned += 1;
        (st, len) = a.step(st, len, s);
        if len >= m {
            return Some(e + 1 - m);
        }
    }
    None
}

impl AutomatonIndex {
    pub fn build(pattern: &Word, inv: &Involutions, mode: AutomatonMode, counters: &mut SearchCounters) -> Self {
        let l_p = pattern.len();
        let threshold = useful_threshold(l_p).expect("nonempty pattern");
        let h = l_p / 2;
        let inverse_word = inv.invert(pattern);
        let forward = build_ls_automaton(&pattern.extend_front(h).expect("h <= l_p"));
        counters.automata_built += 1;
        let inverse = match mode {
            AutomatonMode::TwoAutomata => {
                counters.automata_built += 1;
                Some(build_ls_automaton(&inverse_word.extend_front(h).expect("h <= l_p")))
            }
            AutomatonMode::OneAutomaton => None,
        };
        AutomatonIndex { mode, threshold, orients: [pattern.symbols().to_vec(), inverse_word.into_symbols()], forward, inverse }
    }

    pub fn mode(&self) -> AutomatonMode {
        self.mode
    }

    /// Both modes report the same match: the first text window (in text
    /// order) matching the pattern, else the first matching its inverse,
    /// aligned at the least pattern offset and then extended.
    pub fn search(&self, text: &Word, inv: &Involutions, counters: &mut SearchCounters) -> Option<Match> {
        let l_p = self.orients[0].len();
        let l_t = text.len();
        if l_p > l_t {
            return None;
        }
        let m = self.threshold;
        let h = m - 1;
        let ts = text.symbols();
        let ext = text.extend_front(h).expect("h < l_t");

        let hit = if let Some(s) = first_window(&self.forward, ext.symbols(), m, counters) {
            Some((0usize, s))
        } else {
            match &self.inverse {
                Some(a) => first_window(a, ext.symbols(), m, counters).map(|s| (1, s)),
                None => {
                    // Windows of inv(T) matching P are inverses of windows
                    // of T matching inv(P); the scan order is reversed, so
                    // collect and take the least text offset.
                    let inv_ext = inv.invert(text).extend_front(h).expect("h < l_t");
                    let (mut st, mut len) = (self.forward.initial(), 0);
                    let mut best: Option<usize> = None;
                    for (e, &s) in inv_ext.symbols().iter().enumerate() {
                        counters.windows_scanned += 1;
                        (st, len) = self.forward.step(st, len, s);
                        if len >= m {
                            let s_inv = e + 1 - m;
                            let s = (2 * l_t - s_inv - m) % l_t;
                            best = Some(best.map_or(s, |b| b.min(s)));
                        }
                    }
                    best.map(|s| (1, s))
                }
            }
        };
        let (o, s) = hit?;
        let orient = &self.orients[o];
        let a = (0..l_p).find(|&a| circular_eq(orient, a, ts, s, m)).expect("scan hit is a real window");
        counters.successes += 1;
        Some(extend_alignment(orient, ts, o == 1, a, s, m).into_match(l_p, l_t))
    }
}

/// Builds the automata for `pattern` and runs one search.
pub fn automaton_search(
    pattern: &Word,
    text: &Word,
    inv: &Involutions,
    mode: AutomatonMode,
    counters: &mut SearchCounters,
) -> Option<Match> {
    if pattern.is_empty() || pattern.len() > text.len() {
        return None;
    }
    AutomatonIndex::build(pattern, inv, mode, counters).search(text, inv, counters)
}
