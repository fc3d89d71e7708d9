use thiserror::Error;

/// Odd multipliers, one per bit-table.
const MULTIPLIERS: [u64; 4] = [
    0x9E37_79B9_7F4A_7C15,
    0xC2B2_AE3D_27D4_EB4F,
    0x1656_67B1_9E37_79F9,
    0xD6E8_FEB8_6659_FD93,
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BloomError {
    #[error("bits per fingerprint must be 3 or 4, got {0}")]
    Bits(usize),
    #[error("table size 2^{0} outside supported range 2^6..=2^30")]
    Size(u32),
}

/// `k` separate bit-tables of `2^log2_size` bits; each fingerprint sets one
/// bit per table, addressed by multiplicative hashing.
#[derive(Clone, Debug)]
pub struct BloomFilter {
    log2_size: u32,
    tables: Vec<Vec<u64>>,
}

impl BloomFilter {
    pub fn new(bits_per_key: usize, log2_size: u32) -> Result<Self, BloomError> {
        if !(3..=4).contains(&bits_per_key) {
            return Err(BloomError::Bits(bits_per_key));
        }
        if !(6..=30).contains(&log2_size) {
            return Err(BloomError::Size(log2_size));
        }
        let words = 1usize << (log2_size - 6);
        Ok(BloomFilter { log2_size, tables: vec![vec![0u64; words]; bits_per_key] })
    }

    pub fn bits_per_key(&self) -> usize {
        self.tables.len()
    }

    pub fn log2_size(&self) -> u32 {
        self.log2_size
    }

    #[inline]
    fn address(&self, table: usize, f: u64) -> usize {
        (f.wrapping_mul(MULTIPLIERS[table]) >> (64 - self.log2_size)) as usize
    }

    pub fn insert(&mut self, f: u64) {
        for t in 0..self.tables.len() {
            let a = self.address(t, f);
            self.tables[t][a >> 6] |= 1 << (a & 63);
        }
    }

    pub fn query(&self, f: u64) -> bool {
        (0..self.tables.len()).all(|t| {
            let a = self.address(t, f);
            self.tables[t][a >> 6] & (1 << (a & 63)) != 0
        })
    }

    /// Fraction of set bits in each table.
    pub fn fill_ratios(&self) -> Vec<f64> {
        let size = (1u64 << self.log2_size) as f64;
        self.tables
            .iter()
            .map(|t| t.iter().map(|w| w.count_ones() as f64).sum::<f64>() / size)
            .collect()
    }

    /// `(1 - e^(-n / 2^w))^k` for `n` inserted keys.
    pub fn expected_false_positive_rate(&self, n: usize) -> f64 {
        let load = n as f64 / (1u64 << self.log2_size) as f64;
        (1.0 - (-load).exp()).powi(self.tables.len() as i32)
    }
}
