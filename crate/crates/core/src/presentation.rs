//! Presentations `<g_1, ..., g_d | R_1, ..., R_q>` and their text format.
//!
//! ```text
//! # comment
//! gens 2
//! rel 1 2 -1 -2
//! relw abAB
//! ```
//!
//! `gens` must be the first non-comment line. `rel` lists signed generator
//! indices; `relw` uses letters (`a` = 1, `A` = its inverse) and is only
//! accepted when `d <= 26`. Serialization always writes the numeric form.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::words::{Involutions, Symbol, Word};

/// Stable identity of a relator. Edits keep it, deletion retires it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct RelatorId(pub u64);

impl fmt::Display for RelatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}", self.0)
    }
}

/// A relator together with its skip-level timestamps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorRecord {
    pub id: RelatorId,
    pub word: Word,
    /// Last time used as a pattern.
    pub tp: i64,
    /// Last time changed by a replacement.
    pub ts: i64,
    /// Bumped on every edit; lets searchers cache per-word data.
    pub version: u64,
}

impl RelatorRecord {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Replaces the word in place, keeping the id.
    pub fn set_word(&mut self, word: Word) {
        self.word = word;
        self.version += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: generator index out of range ({value} with {gens} generators)")]
    OutOfRange { line: usize, value: i64, gens: usize },
    #[error("line {line}: letter form requires at most 26 generators, have {gens}")]
    LettersUnavailable { line: usize, gens: usize },
    #[error("missing `gens` line")]
    MissingGens,
}

/// Relators changed or deleted by an in-place operation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Edits {
    pub changed: Vec<RelatorId>,
    pub removed: Vec<RelatorId>,
}

impl Edits {
    pub fn is_empty(&self) -> bool {
        self.changed.is_empty() && self.removed.is_empty()
    }

    pub fn merge(&mut self, other: Edits) {
        for id in other.changed {
            if !self.changed.contains(&id) {
                self.changed.push(id);
            }
        }
        self.removed.extend(other.removed);
        self.changed.retain(|id| !self.removed.contains(id));
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    gens: usize,
    pub involutions: Involutions,
    pub rel: Vec<RelatorRecord>,
    next_id: u64,
}

impl Presentation {
    pub fn new(gens: usize) -> Self {
        Presentation { gens, involutions: Involutions::new(), rel: Vec::new(), next_id: 0 }
    }

    /// Builds a presentation from raw relator words, reducing and
    /// normalizing involutions as the parser does.
    pub fn from_words(gens: usize, words: impl IntoIterator<Item = Word>) -> Self {
        let mut p = Presentation::new(gens);
        for w in words {
            assert!(
                w.symbols().iter().all(|s| s.generator_index() as usize <= gens),
                "relator {w} mentions a generator beyond {gens}"
            );
            p.push_relator(w);
        }
        p.normalize_involutions();
        p
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn num_relators(&self) -> usize {
        self.rel.len()
    }

    pub fn fresh_id(&mut self) -> RelatorId {
        let id = RelatorId(self.next_id);
        self.next_id += 1;
        id
    }

    /// Reduces `word` and appends it unless it is trivial.
    pub fn push_relator(&mut self, word: Word) -> Option<RelatorId> {
        let word = self.involutions.reduce(&word.free_reduce().cyclic_reduce());
        if word.is_empty() {
            return None;
        }
        let id = self.fresh_id();
        self.rel.push(RelatorRecord { id, word, tp: -1, ts: 0, version: 0 });
        Some(id)
    }

    pub fn relator(&self, id: RelatorId) -> Option<&RelatorRecord> {
        self.rel.iter().find(|r| r.id == id)
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.rel.iter().map(|r| &r.word)
    }

    pub fn total_length(&self) -> usize {
        self.rel.iter().map(|r| r.len()).sum()
    }

    /// Stable sort by ascending length.
    pub fn sort_rel(&mut self) {
        self.rel.sort_by_key(|r| r.len());
    }

    pub fn is_sorted(&self) -> bool {
        self.rel.windows(2).all(|w| w[0].len() <= w[1].len())
    }

    /// Detects `gg` relators (up to equivalence), records those generators as
    /// involutions and rewrites `g^-1` to `g` everywhere. Runs to fixpoint.
    pub fn normalize_involutions(&mut self) -> Edits {
        let mut edits = Edits::default();
        loop {
            let mut found = false;
            for r in &self.rel {
                let s = r.word.symbols();
                if s.len() == 2 && s[0] == s[1] && self.involutions.insert(s[0].generator_index()) {
                    found = true;
                }
            }
            let mut changed = false;
            for r in &mut self.rel {
                let reduced = self.involutions.reduce(&r.word);
                if reduced != r.word {
                    r.set_word(reduced);
                    if !edits.changed.contains(&r.id) {
                        edits.changed.push(r.id);
                    }
                    changed = true;
                }
            }
            changed |= self.drop_empty(&mut edits);
            if !found && !changed {
                break;
            }
        }
        edits
    }

    /// Removes trivial relators, recording their ids.
    pub fn drop_empty(&mut self, edits: &mut Edits) -> bool {
        let before = self.rel.len();
        self.rel.retain(|r| {
            if r.is_empty() {
                edits.removed.push(r.id);
                false
            } else {
                true
            }
        });
        edits.changed.retain(|id| !edits.removed.contains(id));
        before != self.rel.len()
    }

    /// Removes later relators whose canonical form repeats an earlier one.
    pub fn remove_duplicates(&mut self) -> Vec<RelatorId> {
        let mut seen = HashSet::new();
        let mut removed = Vec::new();
        let inv = self.involutions.clone();
        self.rel.retain(|r| {
            if seen.insert(inv.canonical_rep(&r.word)) {
                true
            } else {
                removed.push(r.id);
                false
            }
        });
        removed
    }

    /// Drops generator `g`, renumbering higher generators in every relator.
    /// Relators must no longer mention `g`.
    pub(crate) fn remove_generator(&mut self, g: u32) {
        for r in &mut self.rel {
            debug_assert!(r.word.symbols().iter().all(|s| s.generator_index() != g));
            let renamed: Vec<Symbol> = r
                .word
                .symbols()
                .iter()
                .map(|&s| {
                    let j = s.generator_index();
                    if j > g {
                        let t = Symbol::generator(j - 1);
                        if s.is_inverse() {
                            t.inverse()
                        } else {
                            t
                        }
                    } else {
                        s
                    }
                })
                .collect();
            r.set_word(Word::new(renamed));
        }
        self.involutions.remove_generator(g);
        self.gens -= 1;
    }

    /// Multiset of canonical relator forms, for comparing results up to
    /// relator equivalence and order.
    pub fn canonical_multiset(&self) -> Vec<Word> {
        let mut v: Vec<Word> = self.rel.iter().map(|r| self.involutions.canonical_rep(&r.word)).collect();
        v.sort();
        v
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens {}", self.gens)?;
        for r in &self.rel {
            let parts: Vec<String> = r.word.values().iter().map(|v| v.to_string()).collect();
            writeln!(f, "rel {}", parts.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Presentation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_presentation(s)
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut pres: Option<Presentation> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        let keyword = parts.next().unwrap_or_default();
        match (keyword, pres.as_mut()) {
            ("gens", None) => {
                let d = parts
                    .next()
                    .and_then(|x| x.parse::<usize>().ok())
                    .ok_or_else(|| syntax(line, "`gens` needs a generator count"))?;
                if parts.next().is_some() {
                    return Err(syntax(line, "trailing tokens after `gens`"));
                }
                pres = Some(Presentation::new(d));
            }
            ("gens", Some(_)) => return Err(syntax(line, "duplicate `gens` line")),
            (_, None) => return Err(syntax(line, "`gens` must come first")),
            ("rel", Some(p)) => {
                let mut symbols = Vec::new();
                for tok in parts {
                    let value: i64 =
                        tok.parse().map_err(|_| syntax(line, &format!("bad symbol {tok:?}")))?;
                    if value == 0 || value.unsigned_abs() as usize > p.gens {
                        return Err(ParseError::OutOfRange { line, value, gens: p.gens });
                    }
                    symbols.push(Symbol::new(value as i32).expect("nonzero"));
                }
                p.push_relator(Word::new(symbols));
            }
            ("relw", Some(p)) => {
                if p.gens > 26 {
                    return Err(ParseError::LettersUnavailable { line, gens: p.gens });
                }
                let letters: String = parts.collect();
                let mut symbols = Vec::new();
                for c in letters.chars() {
                    let s = Symbol::from_letter(c)
                        .map_err(|_| syntax(line, &format!("letter {c:?} outside a..z, A..Z")))?;
                    if s.generator_index() as usize > p.gens {
                        return Err(ParseError::OutOfRange {
                            line,
                            value: i64::from(s.value()),
                            gens: p.gens,
                        });
                    }
                    symbols.push(s);
                }
                p.push_relator(Word::new(symbols));
            }
            (other, Some(_)) => return Err(syntax(line, &format!("unknown keyword {other:?}"))),
        }
    }
    let mut p = pres.ok_or(ParseError::MissingGens)?;
    p.normalize_involutions();
    Ok(p)
}

fn syntax(line: usize, message: &str) -> ParseError {
    ParseError::Syntax { line, message: message.to_string() }
}
