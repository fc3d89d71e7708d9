use crate::words::{useful_threshold, Involutions, Word};

use super::{extend_alignment, Match};

/// Pattern positions any useful substring must cover.
///
/// A circular window longer than half the pattern covers position 0 or
/// position `l_p / 2`. For a proper power every such window also spans a full
/// period, so position 0 alone suffices.
pub fn anchor_positions(pattern: &Word) -> Vec<usize> {
    let l_p = pattern.len();
    let half = l_p / 2;
    if half == 0 || pattern.smallest_period() < l_p {
        vec![0]
    } else {
        vec![0, half]
    }
}

/// Anchored brute force: scan the text circularly for the anchor symbols
/// (and their inverses, in the inverted pattern), extending each hit in both
/// directions until it is useful.
pub fn brute_search(pattern: &Word, text: &Word, inv: &Involutions) -> Option<Match> {
    let (l_p, l_t) = (pattern.len(), text.len());
    if l_p == 0 || l_p > l_t {
        return None;
    }
    let threshold = useful_threshold(l_p).ok()?;
    let inverse = inv.invert(pattern);
    let orients = [pattern.symbols(), inverse.symbols()];
    // (symbol, orientation, position) triples; inverted positions mirror.
    let mut anchors = Vec::with_capacity(4);
    for a in anchor_positions(pattern) {
        anchors.push((orients[0][a], 0usize, a));
        anchors.push((orients[1][l_p - 1 - a], 1usize, l_p - 1 - a));
    }
    let ts = text.symbols();
    for (j, &sym) in ts.iter().enumerate() {
        for &(anchor, o, pos) in &anchors {
            if anchor != sym {
                continue;
            }
            let al = extend_alignment(orients[o], ts, o == 1, pos, j, 1);
            if al.len >= threshold {
                return Some(al.into_match(l_p, l_t));
            }
        }
    }
    None
}
