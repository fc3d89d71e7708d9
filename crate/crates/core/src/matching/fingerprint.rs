//! Karp-Rabin polynomial fingerprints over symbol codes.

use rand::Rng;
use thiserror::Error;

use crate::words::Word;

/// `2^61 - 1`.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FingerprintError {
    #[error("empty fingerprint window")]
    EmptyWindow,
    #[error("window [{start}, {start}+{len}) outside word of length {word_len}")]
    OutOfBounds { start: usize, len: usize, word_len: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FingerprintParams {
    pub base: u64,
    pub modulus: u64,
}

impl FingerprintParams {
    pub fn new(base: u64, modulus: u64) -> Self {
        assert!(modulus >= 2 && base < modulus);
        FingerprintParams { base, modulus }
    }

    /// Base drawn uniformly from `[2, 2^61 - 3]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        FingerprintParams { base: rng.gen_range(2..=MERSENNE_61 - 2), modulus: MERSENNE_61 }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn pow(&self, mut e: u64) -> u64 {
        let (mut acc, mut b) = (1 % self.modulus, self.base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }
}

/// Fingerprint of one window of length `window`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub value: u64,
    pub window: usize,
}

/// Horner evaluation of `codes[start..start + m]`.
pub fn fp_init_codes(codes: &[u64], start: usize, m: usize, params: FingerprintParams) -> Result<Fingerprint, FingerprintError> {
    if m == 0 {
        return Err(FingerprintError::EmptyWindow);
    }
    if start + m > codes.len() {
        return Err(FingerprintError::OutOfBounds { start, len: m, word_len: codes.len() });
    }
    let value = codes[start..start + m]
        .iter()
        .fold(0u64, |acc, &c| (params.mul(acc, params.base) + c % params.modulus) % params.modulus);
    Ok(Fingerprint { value, window: m })
}

pub fn fp_init(word: &Word, start: usize, m: usize, params: FingerprintParams) -> Result<Fingerprint, FingerprintError> {
    let codes: Vec<u64> = word.symbols().iter().map(|s| s.code()).collect();
    fp_init_codes(&codes, start, m, params)
}

/// Slides the window one symbol to the right.
pub fn fp_roll(f: Fingerprint, out_code: u64, in_code: u64, params: FingerprintParams) -> Fingerprint {
    Fingerprint { value: WindowHasher::new(params, f.window).roll(f.value, out_code, in_code), window: f.window }
}

/// Rolling hasher with the leading power `b^(m-1)` precomputed.
#[derive(Clone, Copy, Debug)]
pub struct WindowHasher {
    params: FingerprintParams,
    window: usize,
    lead: u64,
}

impl WindowHasher {
    pub fn new(params: FingerprintParams, window: usize) -> Self {
        WindowHasher { params, window, lead: params.pow(window.saturating_sub(1) as u64) }
    }

    pub fn window(&self) -> usize {
        self.window
    }

    #[inline]
    pub fn roll(&self, value: u64, out_code: u64, in_code: u64) -> u64 {
        let q = self.params.modulus;
        let drop = self.params.mul(out_code % q, self.lead);
        let kept = (value + q - drop) % q;
        (self.params.mul(kept, self.params.base) + in_code % q) % q
    }

    /// Fingerprints of every length-`window` window of `codes`, in order.
    pub fn sweep(&self, codes: &[u64]) -> Vec<u64> {
        if self.window == 0 || codes.len() < self.window {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(codes.len() - self.window + 1);
        let mut v = fp_init_codes(codes, 0, self.window, self.params).expect("in bounds").value;
        out.push(v);
        for i in self.window..codes.len() {
            v = self.roll(v, codes[i - self.window], codes[i]);
            out.push(v);
        }
        out
    }
}

pub fn fp_sweep(codes: &[u64], m: usize, params: FingerprintParams) -> Vec<u64> {
    WindowHasher::new(params, m).sweep(codes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const SMALL: FingerprintParams = FingerprintParams { base: 4, modulus: 101 };

    #[test]
    fn init_examples() {
        assert_eq!(fp_init_codes(&[1, 2, 3], 0, 3, SMALL).unwrap().value, 27);
        assert_eq!(fp_init_codes(&[0], 0, 1, SMALL).unwrap().value, 0);
        assert_eq!(fp_init_codes(&[1, 2], 0, 0, SMALL), Err(FingerprintError::EmptyWindow));
        assert!(matches!(fp_init_codes(&[1, 2], 1, 2, SMALL), Err(FingerprintError::OutOfBounds { .. })));
    }

    #[test]
    fn roll_examples() {
        let f = fp_init_codes(&[1, 2, 3], 0, 3, SMALL).unwrap();
        assert_eq!(fp_roll(f, 1, 4, SMALL).value, 48);
        let c = fp_init_codes(&[5, 5, 5], 0, 3, SMALL).unwrap();
        assert_eq!(fp_roll(c, 5, 5, SMALL), c);
    }

    #[test]
    fn sweep_matches_direct_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let params = FingerprintParams::random(&mut rng);
        for _ in 0..200 {
            let n = rng.gen_range(1..40);
            let codes: Vec<u64> = (0..n).map(|_| rng.gen_range(2..20)).collect();
            let m = rng.gen_range(1..=n);
            let swept = fp_sweep(&codes, m, params);
            assert_eq!(swept.len(), n - m + 1);
            for (i, &v) in swept.iter().enumerate() {
                assert_eq!(v, fp_init_codes(&codes, i, m, params).unwrap().value);
            }
        }
    }
}
