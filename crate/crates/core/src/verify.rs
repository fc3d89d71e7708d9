//! Abelian invariants: exponent-sum matrix and Smith normal form.
//!
//! Tietze moves preserve the group, hence its abelianization, so equal
//! invariants are a necessary condition for a simplification to be correct.
//! They do not prove isomorphism.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::presentation::Presentation;

/// Dense integer matrix, one row per relator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn from_rows<I: Into<BigInt> + Copy>(rows: &[Vec<I>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &x) in r.iter().enumerate() {
                m[(i, j)] = x.into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= f * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * f;
            self[(dst, j)] -= v;
        }
    }

    fn sub_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * f;
            self[(i, dst)] -= v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Entry `(i, j)` is the exponent sum of generator `j` in relator `i`.
pub fn exponent_matrix(p: &Presentation) -> IntMatrix {
    let d = p.gens();
    let mut m = IntMatrix::zeros(p.rel.len(), d);
    for (i, r) in p.rel.iter().enumerate() {
        for s in r.word.symbols() {
            let j = s.generator_index() as usize - 1;
            if s.is_inverse() {
                m[(i, j)] -= 1;
            } else {
                m[(i, j)] += 1;
            }
        }
    }
    m
}

/// Nonzero elementary divisors `d_1 | d_2 | ...`, all positive.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        // Smallest nonzero entry of the remaining block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[(i, j)].is_zero() && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap_rows(t, bi);
        a.swap_cols(t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                a.sub_row(i, t, &q);
                if !a[(i, t)].is_zero() {
                    dirty = true;
                    if a[(i, t)].abs() < a[(t, t)].abs() {
                        a.swap_rows(t, i);
                    }
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                a.sub_col(j, t, &q);
                if !a[(t, j)].is_zero() {
                    dirty = true;
                    if a[(t, j)].abs() < a[(t, t)].abs() {
                        a.swap_cols(t, j);
                    }
                }
            }
            if dirty {
                continue;
            }
            // Row and column clear; enforce divisibility of the rest.
            let pivot = a[(t, t)].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    a.sub_row(t, i, &minus_one);
                }
                None => break,
            }
        }
        out.push(a[(t, t)].abs());
    }
    out
}

/// Abelianization `Z^free_rank + Z/t_1 + ... + Z/t_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.torsion.iter().map(|x| x.to_string()).collect();
        write!(f, "torsion [{}], free rank {}", t.join(", "), self.free_rank)
    }
}

pub fn abelian_invariants(p: &Presentation) -> AbelianInvariants {
    let divisors = smith_normal_form(&exponent_matrix(p));
    let free_rank = p.gens() - divisors.len();
    AbelianInvariants { torsion: divisors.into_iter().filter(|x| !x.is_one()).collect(), free_rank }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Word;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pres(d: usize, rels: &[&str]) -> Presentation {
        Presentation::from_words(d, rels.iter().map(|s| s.parse::<Word>().unwrap()))
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn exponent_rows() {
        assert_eq!(exponent_matrix(&pres(2, &["abAB"])).row(0), &ints(&[0, 0])[..]);
        assert_eq!(exponent_matrix(&pres(2, &["aab"])).row(0), &ints(&[2, 1])[..]);
        let empty = exponent_matrix(&pres(3, &[]));
        assert_eq!((empty.rows(), empty.cols()), (0, 3));
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]])), ints(&[1, 6]));
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![1, 0], vec![0, 0]])), ints(&[1]));
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![0]])), ints(&[]));
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])), ints(&[2, 6, 12]));
    }

    #[test]
    fn invariant_examples() {
        let z2 = abelian_invariants(&pres(1, &["aa"]));
        assert_eq!((z2.torsion, z2.free_rank), (ints(&[2]), 0));
        let z_sq = abelian_invariants(&pres(2, &["abAB"]));
        assert_eq!((z_sq.torsion, z_sq.free_rank), (ints(&[]), 2));
        let trivial = abelian_invariants(&pres(1, &["a"]));
        assert_eq!((trivial.torsion, trivial.free_rank), (ints(&[]), 0));
    }

    #[test]
    fn equal_invariants_do_not_imply_isomorphism() {
        // Trivial group and the perfect binary icosahedral group <a,b | a^3 = b^5 = (ab)^2>
        // both have trivial abelianization.
        let trivial = abelian_invariants(&pres(2, &["a", "b"]));
        let perfect = abelian_invariants(&pres(2, &["aaaBBBBB", "ababBBBBB"]));
        assert_eq!(trivial, perfect);
    }

    /// Bareiss fraction-free determinant.
    fn det(mut a: Vec<Vec<BigInt>>) -> BigInt {
        let n = a.len();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect()).collect()
    }

    /// Elementary divisors as ratios of determinantal divisors (gcd of all
    /// k by k minors).
    fn divisors_by_minors(m: &IntMatrix) -> Vec<BigInt> {
        let mut out = Vec::new();
        let mut prev = BigInt::one();
        for k in 1..=m.rows().min(m.cols()) {
            let mut g = BigInt::zero();
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    let sub = rs.iter().map(|&i| cs.iter().map(|&j| m[(i, j)].clone()).collect()).collect();
                    g = g.gcd(&det(sub));
                }
            }
            if g.is_zero() {
                break;
            }
            out.push(&g / &prev);
            prev = g;
        }
        out
    }

    #[test]
    fn snf_agrees_with_minors_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..300 {
            let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
            let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
            let m = IntMatrix::from_rows(&rows);
            let d = smith_normal_form(&m);
            for w in d.windows(2) {
                assert!(w[1].is_multiple_of(&w[0]), "{d:?}");
            }
            assert_eq!(d, divisors_by_minors(&m), "{rows:?}");
        }
    }
}
