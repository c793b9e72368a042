//! Relator pieces, chains and rings.
//!
//! A piece on a side is a maximal subword lying along the relator cycle of that
//! side. Consecutive pieces whose junction turn is the link turn form a chain.
//! Replacing every piece of a chain by its inverse complement and freely
//! reducing telescopes one letter at each junction, so with piece value
//! `v = |s| − (2g − 1)` a chain changes length by `2 − 2Σv` and a closed ring
//! (the whole cyclic word) by `−2Σv`. Chains with `Σv ≥ 2`, rings with
//! `Σv ≥ 1` and single pieces longer than 2g shorten; chains with `Σv = 1` and
//! rings with `Σv = 0` are the length-preserving moves.

use super::presentation::{Presentation, Side};
use super::word::{cyclic_free_reduce_letters, free_reduce_letters, rotated, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Piece {
    pub start: usize,
    pub len: usize,
}

fn value(p: &Presentation, len: usize) -> i64 {
    len as i64 - (2 * p.genus() as i64 - 1)
}

/// Pieces of a linear word on `side`, grouped into linked regions.
fn linear_regions(p: &Presentation, side: Side, w: &[Letter]) -> Vec<Vec<Piece>> {
    let run = p.run_turn(side);
    let link = p.link_turn(side);
    let mut regions = Vec::new();
    if w.is_empty() {
        return regions;
    }
    let mut region = Vec::new();
    let mut start = 0;
    for t in 0..w.len() - 1 {
        let tau = p.turn(w[t], w[t + 1]);
        if tau == run {
            continue;
        }
        region.push(Piece {
            start,
            len: t + 1 - start,
        });
        start = t + 1;
        if tau != link {
            regions.push(std::mem::take(&mut region));
        }
    }
    region.push(Piece {
        start,
        len: w.len() - start,
    });
    regions.push(region);
    regions
}

/// Piece structure of a cyclic word on one side.
pub(crate) enum CyclicPieces {
    /// The word is a rotation of a power of the relator cycle.
    RelatorPower,
    /// `word` is a rotation of the input that begins right after a non-chain
    /// turn; `regions` index its pieces linearly.
    Broken {
        word: Vec<Letter>,
        regions: Vec<Vec<Piece>>,
    },
    /// Every turn is a run or link turn: the pieces close up into a ring.
    Ring { word: Vec<Letter>, pieces: Vec<Piece> },
}

pub(crate) fn cyclic_pieces(p: &Presentation, side: Side, w: &[Letter]) -> CyclicPieces {
    let n = w.len();
    let run = p.run_turn(side);
    let link = p.link_turn(side);
    let turn = |t: usize| p.turn(w[t], w[(t + 1) % n]);
    if let Some(t0) = (0..n).find(|&t| {
        let tau = turn(t);
        tau != run && tau != link
    }) {
        let word = rotated(w, (t0 + 1) % n);
        let regions = linear_regions(p, side, &word);
        return CyclicPieces::Broken { word, regions };
    }
    match (0..n).find(|&t| turn(t) == link) {
        None => CyclicPieces::RelatorPower,
        Some(t0) => {
            let word = rotated(w, (t0 + 1) % n);
            let mut regions = linear_regions(p, side, &word);
            debug_assert_eq!(regions.len(), 1);
            CyclicPieces::Ring {
                word,
                pieces: regions.pop().unwrap(),
            }
        }
    }
}

/// Concatenated inverse complements of consecutive pieces, not yet reduced.
fn replacement(p: &Presentation, side: Side, w: &[Letter], pieces: &[Piece]) -> Vec<Letter> {
    let n = w.len();
    let mut out = Vec::new();
    let mut buf = Vec::new();
    for pc in pieces {
        buf.clear();
        buf.extend((0..pc.len).map(|k| w[(pc.start + k) % n]));
        p.inverse_complement(side, &buf, &mut out);
    }
    out
}

/// Cyclic word obtained by replacing the consecutive pieces `pieces` (in cyclic
/// order) and cyclically reducing. Pieces longer than the relator are handled
/// by the caller.
fn replace_cyclic(p: &Presentation, side: Side, w: &[Letter], pieces: &[Piece]) -> Vec<Letter> {
    let n = w.len();
    let covered: usize = pieces.iter().map(|pc| pc.len).sum();
    let last = pieces.last().unwrap();
    let end = (last.start + last.len) % n;
    let mut out = replacement(p, side, w, pieces);
    out.extend((0..n - covered).map(|k| w[(end + k) % n]));
    cyclic_free_reduce_letters(&out)
}

fn replace_linear(p: &Presentation, side: Side, w: &[Letter], pieces: &[Piece]) -> Vec<Letter> {
    let first = pieces[0].start;
    let last = pieces.last().unwrap();
    let end = last.start + last.len;
    let mut out = w[..first].to_vec();
    out.extend(replacement(p, side, w, pieces));
    out.extend_from_slice(&w[end..]);
    free_reduce_letters(&out)
}

/// Removes one full relator from a piece at least 4g long.
fn drop_relator(p: &Presentation, w: &[Letter], pc: Piece, cyclic: bool) -> Vec<Letter> {
    let n = w.len();
    let r = p.alphabet_size();
    let out: Vec<Letter> = if cyclic {
        (0..n - r).map(|k| w[(pc.start + r + k) % n]).collect()
    } else {
        let mut v = w[..pc.start].to_vec();
        v.extend_from_slice(&w[pc.start + r..]);
        v
    };
    if cyclic {
        cyclic_free_reduce_letters(&out)
    } else {
        free_reduce_letters(&out)
    }
}

fn over_half(p: &Presentation, pc: &Piece) -> bool {
    pc.len > 2 * p.genus()
}

/// First contiguous range of a linear region with `Σv ≥ threshold`.
fn find_range(p: &Presentation, region: &[Piece], threshold: i64) -> Option<(usize, usize)> {
    for i in 0..region.len() {
        let mut s = 0;
        for j in i..region.len() {
            s += value(p, region[j].len);
            if s >= threshold {
                return Some((i, j));
            }
        }
    }
    None
}

/// One shortening step on a linear word (a Dehn piece or a chain), if any.
pub(crate) fn shorten_linear_once(p: &Presentation, w: &[Letter]) -> Option<Vec<Letter>> {
    for side in Side::BOTH {
        let regions = linear_regions(p, side, w);
        for region in &regions {
            if let Some(pc) = region.iter().find(|pc| over_half(p, pc)) {
                if pc.len >= p.alphabet_size() {
                    return Some(drop_relator(p, w, *pc, false));
                }
                return Some(replace_linear(p, side, w, std::slice::from_ref(pc)));
            }
        }
        for region in &regions {
            if let Some((i, j)) = find_range(p, region, 2) {
                return Some(replace_linear(p, side, w, &region[i..=j]));
            }
        }
    }
    None
}

/// Pieces `i, i+1, ..., i+len-1` of a ring, cyclically.
fn ring_slice(pieces: &[Piece], i: usize, len: usize) -> Vec<Piece> {
    (0..len).map(|k| pieces[(i + k) % pieces.len()]).collect()
}

/// One shortening step on a cyclically reduced word, if any. The result is
/// cyclically reduced but not rotation-normalized.
pub(crate) fn shorten_cyclic_once(p: &Presentation, w: &[Letter]) -> Option<Vec<Letter>> {
    for side in Side::BOTH {
        match cyclic_pieces(p, side, w) {
            CyclicPieces::RelatorPower => return Some(Vec::new()),
            CyclicPieces::Broken { word, regions } => {
                for region in &regions {
                    if let Some(pc) = region.iter().find(|pc| over_half(p, pc)) {
                        if pc.len >= p.alphabet_size() {
                            return Some(drop_relator(p, &word, *pc, true));
                        }
                        return Some(replace_cyclic(p, side, &word, std::slice::from_ref(pc)));
                    }
                }
                for region in &regions {
                    if let Some((i, j)) = find_range(p, region, 2) {
                        return Some(replace_cyclic(p, side, &word, &region[i..=j]));
                    }
                }
            }
            CyclicPieces::Ring { word, pieces } => {
                if let Some(pc) = pieces.iter().find(|pc| over_half(p, pc)) {
                    if pc.len >= p.alphabet_size() {
                        return Some(drop_relator(p, &word, *pc, true));
                    }
                    return Some(replace_cyclic(p, side, &word, std::slice::from_ref(pc)));
                }
                let k = pieces.len();
                let total: i64 = pieces.iter().map(|pc| value(p, pc.len)).sum();
                if total >= 1 {
                    let out = cyclic_free_reduce_letters(&replacement(p, side, &word, &pieces));
                    return Some(out);
                }
                for i in 0..k {
                    let mut s = 0;
                    for len in 1..k {
                        s += value(p, pieces[(i + len - 1) % k].len);
                        if s >= 2 {
                            return Some(replace_cyclic(
                                p,
                                side,
                                &word,
                                &ring_slice(&pieces, i, len),
                            ));
                        }
                    }
                }
            }
        }
    }
    None
}

/// All words reachable by one length-preserving move. The input must be
/// cyclically reduced with no shortening move available.
pub(crate) fn preserving_moves(p: &Presentation, w: &[Letter], out: &mut Vec<Vec<Letter>>) {
    let n = w.len();
    let mut push = |v: Vec<Letter>| {
        if v.len() == n {
            out.push(v);
        } else {
            debug_assert!(v.len() > n, "preserving move shortened a minimal word");
        }
    };
    for side in Side::BOTH {
        match cyclic_pieces(p, side, w) {
            CyclicPieces::RelatorPower => {}
            CyclicPieces::Broken { word, regions } => {
                for region in &regions {
                    for i in 0..region.len() {
                        let mut s = 0;
                        for j in i..region.len() {
                            s += value(p, region[j].len);
                            if s == 1 {
                                push(replace_cyclic(p, side, &word, &region[i..=j]));
                            }
                        }
                    }
                }
            }
            CyclicPieces::Ring { word, pieces } => {
                let k = pieces.len();
                let total: i64 = pieces.iter().map(|pc| value(p, pc.len)).sum();
                if total == 0 {
                    push(cyclic_free_reduce_letters(&replacement(
                        p, side, &word, &pieces,
                    )));
                }
                for i in 0..k {
                    let mut s = 0;
                    for len in 1..k {
                        s += value(p, pieces[(i + len - 1) % k].len);
                        if s == 1 {
                            push(replace_cyclic(p, side, &word, &ring_slice(&pieces, i, len)));
                        }
                    }
                }
            }
        }
    }
}

/// True when the closure under length-preserving moves may be nontrivial: some
/// piece has exactly 2g letters or the word is a ring on some side.
pub(crate) fn may_have_moves(p: &Presentation, w: &[Letter]) -> bool {
    let n = w.len();
    let half = 2 * p.genus();
    for side in Side::BOTH {
        let run = p.run_turn(side);
        let link = p.link_turn(side);
        let mut all_chain = true;
        let mut run_len = 0usize;
        // Two passes around the cycle catch runs crossing the wraparound.
        for t in 0..2 * n {
            let tau = p.turn(w[t % n], w[(t + 1) % n]);
            if tau == run {
                run_len += 1;
                if run_len + 1 == half {
                    let next = p.turn(w[(t + 1) % n], w[(t + 2) % n]);
                    if next != run {
                        return true;
                    }
                }
            } else {
                run_len = 0;
                if t < n && tau != link {
                    all_chain = false;
                }
            }
        }
        if all_chain {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface_group::word::parse_letters;

    #[test]
    fn chain_example_shortens() {
        let p = Presentation::new(2).unwrap();
        // a b A B d a b A with a=a1 b=b1 d=b2 is Dehn-reduced but not geodesic.
        let w = parse_letters("a1b1A1B1B2a1b1A1").unwrap();
        let s = shorten_linear_once(&p, &w).unwrap();
        assert_eq!(s.len(), 6);
    }

    #[test]
    fn relator_power_is_trivial() {
        let p = Presentation::new(2).unwrap();
        let w = parse_letters("a1b1A1B1a2b2A2B2").unwrap();
        assert_eq!(shorten_cyclic_once(&p, &w), Some(vec![]));
    }
}
