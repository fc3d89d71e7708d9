use crate::words::{useful_threshold, Involutions, Word};

use super::Match;

/// Tries every rotation of the pattern and of its inverse against every
/// rotation of the text and returns a longest common suffix, if it is useful.
///
/// Quadratic in the number of alignments and linear in the overlap; this is
/// the reference every other strategy is checked against.
pub fn exhaustive_oracle(pattern: &Word, text: &Word, inv: &Involutions) -> Option<Match> {
    let (l_p, l_t) = (pattern.len(), text.len());
    if l_p == 0 || l_p > l_t {
        return None;
    }
    let threshold = useful_threshold(l_p).ok()?;
    let text_rots: Vec<Word> = (0..l_t).map(|j| text.rotate_right(j)).collect();
    let mut best: Option<Match> = None;
    for (inverted, base) in [(false, pattern.clone()), (true, inv.invert(pattern))] {
        for i in 0..l_p {
            let pr = base.rotate_right(i);
            let ps = pr.symbols();
            for (j, tr) in text_rots.iter().enumerate() {
                let ts = tr.symbols();
                let common = (1..=l_p).take_while(|&k| ps[l_p - k] == ts[l_t - k]).count();
                if common >= threshold && best.map_or(true, |b| common > b.v_len) {
                    best = Some(Match { inverted, pattern_rot: i, text_rot: j, u_len: l_p - common, v_len: common });
                }
            }
        }
    }
    best
}
