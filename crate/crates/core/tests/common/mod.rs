//! Generators and fakes shared by the integration tests.
#![allow(dead_code)]

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tietze::generate::random_reduced_word;
use tietze::skip::{PassContext, Searcher};
use tietze::{Involutions, Presentation, RelatorRecord, Symbol, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Deterministic stand-in for `ComStr`: a pure function of the two words
/// that changes the text in roughly `percent`% of searches, never making
/// it longer and occasionally emptying it.
pub struct ScriptedSearcher {
    pub seed: u64,
    pub percent: u64,
    pub gens: usize,
}

impl Searcher for ScriptedSearcher {
    fn com_str(&mut self, pattern: &RelatorRecord, text: &RelatorRecord, _: &Involutions) -> Option<Word> {
        let mut h = DefaultHasher::new();
        (self.seed, pattern.word.values(), text.word.values()).hash(&mut h);
        let h = h.finish();
        if h % 100 >= self.percent {
            return None;
        }
        let mut r = rng(h);
        if r.gen_ratio(1, 15) {
            return Some(Word::empty());
        }
        let len = text.len().saturating_sub(r.gen_range(0..=2)).max(1);
        Some(random_reduced_word(&mut r, self.gens, len))
    }
}

/// Outside-the-pass edits: rewrite, delete or add relators, then re-sort.
pub fn external_edits(p: &mut Presentation, ctx: &mut PassContext, r: &mut ChaCha8Rng, maxlen: usize) {
    let d = p.gens();
    for _ in 0..r.gen_range(0..=2) {
        match r.gen_range(0..3) {
            0 if !p.rel.is_empty() => {
                let i = r.gen_range(0..p.rel.len());
                let len = r.gen_range(1..=maxlen);
                p.rel[i].set_word(random_reduced_word(r, d, len));
                ctx.note_changed(&mut p.rel[i]);
            }
            1 if p.rel.len() > 1 => {
                let i = r.gen_range(0..p.rel.len());
                p.rel.remove(i);
            }
            _ => {
                let len = r.gen_range(1..=maxlen);
                if let Some(id) = p.push_relator(random_reduced_word(r, d, len)) {
                    let i = p.rel.iter().position(|x| x.id == id).unwrap();
                    ctx.note_changed(&mut p.rel[i]);
                }
            }
        }
    }
    p.sort_rel();
}

/// Random presentation of `q` relators of length `1..=maxlen`, without
/// involution normalization (so that nothing is rewritten behind the
/// skip-level test's back).
pub fn raw_presentation(r: &mut ChaCha8Rng, d: usize, q: usize, maxlen: usize) -> Presentation {
    let mut p = Presentation::new(d);
    for _ in 0..q {
        let len = r.gen_range(1..=maxlen);
        p.push_relator(random_reduced_word(r, d, len));
    }
    p.sort_rel();
    p
}

/// Random presentation where relators share planted segments, so that
/// replacement passes have work to do.
pub fn planted_presentation(r: &mut ChaCha8Rng, d: usize, q: usize, maxlen: usize) -> Presentation {
    let pool: Vec<Word> = (0..3).map(|_| {
        let len = r.gen_range(2..=maxlen.max(2) * 2 / 3 + 1);
        random_reduced_word(r, d, len)
    }).collect();
    let mut words = Vec::new();
    for _ in 0..q {
        let target = r.gen_range(1..=maxlen);
        let mut v: Vec<Symbol> = Vec::new();
        while v.len() < target {
            if r.gen_bool(0.5) {
                let seg = &pool[r.gen_range(0..pool.len())];
                let seg = if r.gen_bool(0.3) { seg.inverse() } else { seg.clone() };
                v.extend_from_slice(seg.symbols());
            } else {
                let len = r.gen_range(1..=3);
                v.extend_from_slice(random_reduced_word(r, d, len).symbols());
            }
        }
        v.truncate(target);
        words.push(Word::new(v));
    }
    Presentation::from_words(d, words)
}

/// A random pattern/text pair with `l_p <= l_t <= 20`. About half carry a
/// planted copy of part of an equivalent of the pattern.
pub fn random_pair(r: &mut ChaCha8Rng) -> (Word, Word, Involutions) {
    loop {
        let d = r.gen_range(1..=6);
        let inv = if r.gen_ratio(1, 4) {
            Involutions::from_generators((1..=d as u32).filter(|_| r.gen_bool(0.4)))
        } else {
            Involutions::new()
        };
        let lp = r.gen_range(1..=20);
        let lt = r.gen_range(lp..=20);
        let p = inv.reduce(&random_reduced_word(r, d, lp));
        let t = if r.gen_bool(0.5) && !p.is_empty() {
            let base = if r.gen_bool(0.5) { inv.invert(&p) } else { p.clone() };
            let k = r.gen_range(1..=base.len());
            let rot = base.rotate_right(r.gen_range(0..base.len()));
            let seg = &rot.symbols()[..k];
            let mut v = random_reduced_word(r, d, lt.saturating_sub(k).max(1)).into_symbols();
            let at = r.gen_range(0..=v.len());
            v.splice(at..at, seg.iter().copied());
            inv.reduce(&Word::new(v).free_reduce().cyclic_reduce())
        } else {
            inv.reduce(&random_reduced_word(r, d, lt))
        };
        if !p.is_empty() && p.len() <= t.len() && t.len() <= 20 {
            return (p, t, inv);
        }
    }
}

pub fn record(id: u64, word: Word) -> RelatorRecord {
    RelatorRecord { id: tietze::RelatorId(id), word, tp: -1, ts: 0, version: 0 }
}

/// All commutators of `d` generators plus `q` products of two or three
/// conjugated commutators. No generator can be solved for, so a full
/// simplification keeps replacing for many passes instead of collapsing.
pub fn commutator_consequences(r: &mut ChaCha8Rng, d: usize, q: usize, conj: usize) -> Presentation {
    let mut base = Vec::new();
    for i in 1..=d as u32 {
        for j in i + 1..=d as u32 {
            let (a, b) = (Symbol::generator(i), Symbol::generator(j));
            base.push(Word::new(vec![a, b, a.inverse(), b.inverse()]));
        }
    }
    let mut words = base.clone();
    for _ in 0..q {
        let mut v: Vec<Symbol> = Vec::new();
        for _ in 0..r.gen_range(2..=3) {
            let len = r.gen_range(1..=conj);
            let c = random_reduced_word(r, d, len);
            let b = &base[r.gen_range(0..base.len())];
            let b = if r.gen_bool(0.5) { b.inverse() } else { b.clone() };
            v.extend_from_slice(c.symbols());
            v.extend_from_slice(b.symbols());
            v.extend_from_slice(c.inverse().symbols());
        }
        words.push(Word::new(v).free_reduce().cyclic_reduce());
    }
    Presentation::from_words(d, words)
}
