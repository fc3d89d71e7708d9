//! Words over a signed generator alphabet.
//!
//! A [`Symbol`] is a nonzero signed index: `+j` is generator `g_j`, `-j` its
//! inverse. Words are stored linearly. Relators are cyclic, and circularity is
//! handled by [`Word::extend_front`] or by modular indexing, never by a
//! separate cyclic container.
//!
//! In letter notation `a..z` are generators 1..26 and `A..Z` their inverses.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("symbol value must be nonzero")]
    ZeroSymbol,
    #[error("invalid letter {0:?}")]
    BadLetter(char),
    #[error("extension by {k} exceeds word length {len}")]
    ExtensionTooLong { k: usize, len: usize },
    #[error("empty pattern has no useful substring")]
    EmptyPattern,
}

/// A generator or the inverse of a generator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(i32);

impl Symbol {
    pub fn new(value: i32) -> Result<Self, WordError> {
        if value == 0 {
            Err(WordError::ZeroSymbol)
        } else {
            Ok(Symbol(value))
        }
    }

    /// Generator `g_index` (1-based).
    pub fn generator(index: u32) -> Self {
        assert!(index >= 1, "generator indices start at 1");
        Symbol(index as i32)
    }

    pub fn value(self) -> i32 {
        self.0
    }

    /// The 1-based generator index, ignoring sign.
    pub fn generator_index(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Self {
        Symbol(-self.0)
    }

    /// Dense fingerprint code: `g_j -> 2j`, `g_j^-1 -> 2j + 1`.
    pub fn code(self) -> u64 {
        let j = u64::from(self.generator_index());
        if self.0 > 0 {
            2 * j
        } else {
            2 * j + 1
        }
    }

    pub fn from_letter(c: char) -> Result<Self, WordError> {
        match c {
            'a'..='z' => Ok(Symbol((c as u8 - b'a') as i32 + 1)),
            'A'..='Z' => Ok(Symbol(-((c as u8 - b'A') as i32 + 1))),
            _ => Err(WordError::BadLetter(c)),
        }
    }

    pub fn to_letter(self) -> Option<char> {
        let j = self.generator_index();
        if j > 26 {
            return None;
        }
        let base = if self.0 > 0 { b'a' } else { b'A' };
        Some((base + (j - 1) as u8) as char)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_letter() {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "{}", self.0),
        }
    }
}

/// A finite sequence of symbols.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_values(values: &[i32]) -> Result<Self, WordError> {
        values.iter().map(|&v| Symbol::new(v)).collect::<Result<Vec<_>, _>>().map(Word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn values(&self) -> Vec<i32> {
        self.0.iter().map(|s| s.value()).collect()
    }

    /// Symbol at circular position `i`.
    pub fn at(&self, i: usize) -> Symbol {
        self.0[i % self.0.len()]
    }

    /// Formal inverse: reversed, each symbol inverted.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|s| s.inverse()).collect())
    }

    /// Moves the last `i mod len` symbols to the front.
    pub fn rotate_right(&self, i: usize) -> Word {
        if self.0.is_empty() {
            return Word::empty();
        }
        let mut v = self.0.clone();
        v.rotate_right(i % self.0.len());
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn free_reduce(&self) -> Word {
        Word(reduce_with(&self.0, |s| s.inverse()))
    }

    /// Cancels mutually inverse end symbols until none remain. Expects a
    /// freely reduced word.
    pub fn cyclic_reduce(&self) -> Word {
        Word(cyclic_trim(&self.0, |s| s.inverse()).to_vec())
    }

    /// The word followed by its first `k` symbols.
    pub fn extend_front(&self, k: usize) -> Result<Word, WordError> {
        if k > self.len() {
            return Err(WordError::ExtensionTooLong { k, len: self.len() });
        }
        let mut v = self.0.clone();
        v.extend_from_slice(&self.0[..k]);
        Ok(Word(v))
    }

    /// Smallest `p` such that the word is its length-`p` prefix repeated.
    pub fn smallest_period(&self) -> usize {
        let n = self.len();
        if n == 0 {
            return 0;
        }
        // Prefix function: n - border is the smallest period of the linear
        // word; it is a full-power period only when it divides n.
        let mut border = vec![0usize; n];
        for i in 1..n {
            let mut k = border[i - 1];
            while k > 0 && self.0[i] != self.0[k] {
                k = border[k - 1];
            }
            if self.0[i] == self.0[k] {
                k += 1;
            }
            border[i] = k;
        }
        let p = n - border[n - 1];
        if n % p == 0 {
            p
        } else {
            n
        }
    }

    /// Least word among all rotations of the word and of its inverse.
    pub fn canonical_rep(&self) -> Word {
        canonical_with(self, &self.inverse())
    }

    /// Letter form when every generator index is at most 26.
    pub fn to_letters(&self) -> Option<String> {
        self.0.iter().map(|s| s.to_letter()).collect()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_letters() {
            Some(s) => f.write_str(&s),
            None => {
                let parts: Vec<String> = self.0.iter().map(|s| s.value().to_string()).collect();
                f.write_str(&parts.join(" "))
            }
        }
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars().map(Symbol::from_letter).collect::<Result<Vec<_>, _>>().map(Word)
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

/// Minimum useful common substring length for a pattern of length `l_p`:
/// `ceil((l_p + 1) / 2)`.
pub fn useful_threshold(l_p: usize) -> Result<usize, WordError> {
    if l_p == 0 {
        return Err(WordError::EmptyPattern);
    }
    Ok(l_p / 2 + 1)
}

fn reduce_with(symbols: &[Symbol], inverse: impl Fn(Symbol) -> Symbol) -> Vec<Symbol> {
    let mut out: Vec<Symbol> = Vec::with_capacity(symbols.len());
    for &s in symbols {
        match out.last() {
            Some(&top) if top == inverse(s) => {
                out.pop();
            }
            _ => out.push(s),
        }
    }
    out
}

fn cyclic_trim(symbols: &[Symbol], inverse: impl Fn(Symbol) -> Symbol) -> &[Symbol] {
    let (mut lo, mut hi) = (0, symbols.len());
    while hi - lo >= 2 && symbols[hi - 1] == inverse(symbols[lo]) {
        lo += 1;
        hi -= 1;
    }
    &symbols[lo..hi]
}

fn canonical_with(w: &Word, inv: &Word) -> Word {
    if w.is_empty() {
        return Word::empty();
    }
    let n = w.len();
    let mut best: Option<Vec<Symbol>> = None;
    for base in [w, inv] {
        for i in 0..n {
            let cand: Vec<Symbol> = (0..n).map(|k| base.0[(k + i) % n]).collect();
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    Word(best.unwrap_or_default())
}

/// Generators known to be involutions (`g^2 = 1`).
///
/// For an involutory generator the symbol `g` is its own inverse. Words are
/// normalized so that such generators only ever appear with positive sign;
/// every inversion and reduction goes through this type so that the
/// normalization is preserved.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Involutions(BTreeSet<u32>);

impl Involutions {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_generators(gens: impl IntoIterator<Item = u32>) -> Self {
        Involutions(gens.into_iter().collect())
    }

    pub fn contains(&self, generator: u32) -> bool {
        self.0.contains(&generator)
    }

    pub fn insert(&mut self, generator: u32) -> bool {
        self.0.insert(generator)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    /// Drops generator `g` and renumbers higher generators down by one.
    pub fn remove_generator(&mut self, g: u32) {
        self.0 = self.0.iter().filter(|&&x| x != g).map(|&x| if x > g { x - 1 } else { x }).collect();
    }

    pub fn normalize_symbol(&self, s: Symbol) -> Symbol {
        if s.is_inverse() && self.contains(s.generator_index()) {
            s.inverse()
        } else {
            s
        }
    }

    pub fn inverse_symbol(&self, s: Symbol) -> Symbol {
        if self.contains(s.generator_index()) {
            self.normalize_symbol(s)
        } else {
            s.inverse()
        }
    }

    pub fn invert(&self, w: &Word) -> Word {
        Word(w.0.iter().rev().map(|&s| self.inverse_symbol(s)).collect())
    }

    /// Rewrites involutory inverses to the generator itself.
    pub fn normalize(&self, w: &Word) -> Word {
        Word(w.0.iter().map(|&s| self.normalize_symbol(s)).collect())
    }

    /// Normalizes, then freely and cyclically reduces with `gg = 1` for
    /// involutions. The defining relator `gg` of an involution is left alone.
    pub fn reduce(&self, w: &Word) -> Word {
        let n = self.normalize(w);
        if self.is_defining_square(&n) {
            return n;
        }
        let free = reduce_with(&n.0, |s| self.inverse_symbol(s));
        Word(cyclic_trim(&free, |s| self.inverse_symbol(s)).to_vec())
    }

    pub fn canonical_rep(&self, w: &Word) -> Word {
        canonical_with(w, &self.invert(w))
    }

    /// `gg` for an involutory `g`.
    pub fn is_defining_square(&self, w: &Word) -> bool {
        w.len() == 2 && w.0[0] == w.0[1] && !w.0[0].is_inverse() && self.contains(w.0[0].generator_index())
    }
}
