//! Seeded random presentations.
//!
//! `Generic` draws cyclically reduced relators of uniform length in
//! `1..=maxlen`. `SmallAlphabetLong` draws relators of length at least
//! `0.85 * maxlen` and plants copies of a few shared segments (longer than
//! half a relator) so that useful common substrings, and hence genuine
//! fingerprint matches, exist next to a flood of Bloom filter collisions.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::Presentation;
use crate::words::{Symbol, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    Generic,
    SmallAlphabetLong,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("relators requested over zero generators")]
    NoGenerators,
    #[error("maximum relator length must be positive")]
    ZeroLength,
    #[error("small-alphabet-long profile needs maxlen >= 8, got {0}")]
    TooShortForProfile(usize),
    #[error("small-alphabet-long profile needs at least 2 generators")]
    AlphabetTooSmall,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    pub gens: usize,
    pub rels: usize,
    pub maxlen: usize,
    pub seed: u64,
    pub profile: Profile,
}

fn random_symbol<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Symbol {
    let g = Symbol::generator(rng.gen_range(1..=d as u32));
    if rng.gen_bool(0.5) {
        g.inverse()
    } else {
        g
    }
}

/// A symbol avoiding every symbol in `forbidden`.
fn symbol_avoiding<R: Rng + ?Sized>(rng: &mut R, d: usize, forbidden: &[Symbol]) -> Symbol {
    let pool: Vec<Symbol> = (1..=d as u32)
        .flat_map(|g| [Symbol::generator(g), Symbol::generator(g).inverse()])
        .filter(|s| !forbidden.contains(s))
        .collect();
    *pool.choose(rng).expect("at least one symbol remains")
}

/// Appends random symbols to reach `len`, keeping the word freely and
/// cyclically reduced.
fn fill_reduced<R: Rng + ?Sized>(rng: &mut R, d: usize, out: &mut Vec<Symbol>, len: usize) {
    while out.len() < len {
        let mut forbidden = Vec::with_capacity(2);
        if let Some(&last) = out.last() {
            forbidden.push(last.inverse());
        }
        if out.len() + 1 == len && len > 1 {
            forbidden.push(out[0].inverse());
        }
        let s = if d == 1 {
            // Powers of one generator: keep the sign of the first symbol.
            out.first().copied().unwrap_or_else(|| random_symbol(rng, 1))
        } else {
            symbol_avoiding(rng, d, &forbidden)
        };
        out.push(s);
    }
}

/// A cyclically reduced word of exactly `len` symbols over `d` generators.
pub fn random_reduced_word<R: Rng + ?Sized>(rng: &mut R, d: usize, len: usize) -> Word {
    let mut v = Vec::with_capacity(len);
    fill_reduced(rng, d, &mut v, len);
    Word::new(v)
}

/// A presentation with `q` relators of uniform length in `1..=maxlen`.
pub fn random_presentation<R: Rng + ?Sized>(rng: &mut R, d: usize, q: usize, maxlen: usize) -> Presentation {
    let words: Vec<Word> = (0..q).map(|_| {
        let len = rng.gen_range(1..=maxlen);
        random_reduced_word(rng, d, len)
    }).collect();
    Presentation::from_words(d, words)
}

fn planted_word<R: Rng + ?Sized>(rng: &mut R, d: usize, len: usize, segment: &[Symbol]) -> Word {
    // Room for a bridge symbol and at least one trailing symbol.
    let start = rng.gen_range(0..=len - segment.len() - 2);
    let mut v = Vec::with_capacity(len);
    fill_reduced(rng, d, &mut v, start);
    if v.last().is_some_and(|&l| l == segment[0].inverse()) {
        let bridge = symbol_avoiding(rng, d, &[v[v.len() - 1].inverse(), segment[0].inverse()]);
        v.push(bridge);
    }
    v.extend_from_slice(segment);
    fill_reduced(rng, d, &mut v, len);
    Word::new(v)
}

pub fn generate(params: &GenParams) -> Result<Presentation, GenError> {
    let GenParams { gens: d, rels: q, maxlen, seed, profile } = *params;
    if q == 0 {
        return Ok(Presentation::new(d));
    }
    if d == 0 {
        return Err(GenError::NoGenerators);
    }
    if maxlen == 0 {
        return Err(GenError::ZeroLength);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match profile {
        Profile::Generic => Ok(random_presentation(&mut rng, d, q, maxlen)),
        Profile::SmallAlphabetLong => {
            if maxlen < 8 {
                return Err(GenError::TooShortForProfile(maxlen));
            }
            if d < 2 {
                return Err(GenError::AlphabetTooSmall);
            }
            let min_len = (maxlen * 17).div_ceil(20);
            let seg_len = (maxlen * 3).div_ceil(5);
            let pool: Vec<Word> = (0..q.div_ceil(4)).map(|_| random_reduced_word(&mut rng, d, seg_len)).collect();
            let words: Vec<Word> = (0..q)
                .map(|_| {
                    let len = rng.gen_range(min_len..=maxlen);
                    if rng.gen_bool(0.5) && len >= seg_len + 2 {
                        let seg = pool.choose(&mut rng).expect("nonempty pool");
                        planted_word(&mut rng, d, len, seg.symbols())
                    } else {
                        random_reduced_word(&mut rng, d, len)
                    }
                })
                .collect();
            Ok(Presentation::from_words(d, words))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_cyclically_reduced(w: &Word) -> bool {
        w.free_reduce().cyclic_reduce() == *w
    }

    #[test]
    fn words_are_reduced_with_exact_length() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..2000 {
            let d = rng.gen_range(1..=5);
            let len = rng.gen_range(1..=30);
            let w = random_reduced_word(&mut rng, d, len);
            assert_eq!(w.len(), len);
            assert!(is_cyclically_reduced(&w), "{w}");
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let params = GenParams { gens: 3, rels: 8, maxlen: 12, seed: 5, profile: Profile::Generic };
        assert_eq!(generate(&params).unwrap(), generate(&params).unwrap());
        let other = GenParams { seed: 6, ..params };
        assert_ne!(generate(&params).unwrap(), generate(&other).unwrap());
    }

    #[test]
    fn no_relators_is_valid() {
        let p = generate(&GenParams { gens: 2, rels: 0, maxlen: 5, seed: 1, profile: Profile::Generic }).unwrap();
        assert_eq!((p.gens(), p.num_relators()), (2, 0));
    }

    #[test]
    fn small_alphabet_long_contract() {
        let params = GenParams { gens: 4, rels: 12, maxlen: 600, seed: 2, profile: Profile::SmallAlphabetLong };
        let p = generate(&params).unwrap();
        assert_eq!(p.gens(), 4);
        assert!(p.rel.iter().all(|r| (510..=600).contains(&r.len())), "lengths near maxlen");
        assert!(p.words().all(is_cyclically_reduced));
    }

    #[test]
    fn invalid_parameters() {
        let base = GenParams { gens: 0, rels: 3, maxlen: 5, seed: 1, profile: Profile::Generic };
        assert_eq!(generate(&base), Err(GenError::NoGenerators));
        assert_eq!(generate(&GenParams { gens: 2, maxlen: 0, ..base }), Err(GenError::ZeroLength));
        let short = GenParams { gens: 2, maxlen: 5, profile: Profile::SmallAlphabetLong, ..base };
        assert!(generate(&short).is_err());
    }
}
