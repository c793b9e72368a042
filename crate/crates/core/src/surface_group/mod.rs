//! Combinatorics of the genus-g surface group ⟨a1,b1,…,ag,bg | [a1,b1]⋯[ag,bg]⟩.

mod homology;
mod moves;
mod presentation;
mod word;

use std::collections::{HashSet, VecDeque};

pub use homology::{abelianize, eval_character, HomologyVector, NormKind};
pub use presentation::{Presentation, Side};
pub use word::{
    cyclic_free_reduce_letters, free_reduce_letters, inverse_letters, least_rotation,
    parse_letters, CyclicWord, Letter, Word,
};

pub(crate) use moves::{may_have_moves, shorten_cyclic_once};

pub fn free_reduce(w: &[Letter]) -> Word {
    Word::new(w)
}

/// Dehn's algorithm in its textbook form: repeatedly replace a subword that is
/// more than half of a rotation of R or R⁻¹ by the inverse of the complement.
///
/// This solves the word problem (the result is empty iff `w` is trivial) but
/// does not always produce a geodesic. It matches subwords against the
/// rotations directly and shares no code with [`dehn_reduce`].
pub fn dehn_shorten(p: &Presentation, w: &[Letter]) -> Word {
    let r = p.relator();
    let n = r.len();
    let half = n / 2;
    let inv = inverse_letters(r);
    let mut cur = free_reduce_letters(w);
    'outer: loop {
        for i in 0..cur.len() {
            for cyc in [r, inv.as_slice()] {
                for rot in 0..n {
                    let mut m = 0;
                    while i + m < cur.len() && m < n && cur[i + m] == cyc[(rot + m) % n] {
                        m += 1;
                    }
                    if m > half {
                        let mut next = cur[..i].to_vec();
                        next.extend((m..n).rev().map(|k| cyc[(rot + k) % n].inverse()));
                        next.extend_from_slice(&cur[i + m..]);
                        cur = free_reduce_letters(&next);
                        continue 'outer;
                    }
                }
            }
        }
        return Word::new(&cur);
    }
}

/// Word problem by Dehn's algorithm.
pub fn is_identity(p: &Presentation, w: &[Letter]) -> bool {
    dehn_shorten(p, w).is_empty()
}

/// Geodesic normal reduction.
///
/// Removes every subword longer than half a relator and, beyond Dehn's
/// algorithm, every chain of half-relator pieces that can be shortened. The
/// result is a geodesic word for the same group element.
pub fn dehn_reduce(p: &Presentation, w: &[Letter]) -> Word {
    let mut cur = free_reduce_letters(w);
    while let Some(next) = moves::shorten_linear_once(p, &cur) {
        debug_assert!(next.len() < cur.len());
        cur = next;
    }
    Word::new(&cur)
}

/// Shortest cyclic word in the conjugacy class of `w`, in least rotation (but
/// not yet the class representative, see [`canonicalize`]).
pub fn cyclic_reduce(p: &Presentation, w: &[Letter]) -> CyclicWord {
    CyclicWord::new(&minimize_cyclic(p, w))
}

fn minimize_cyclic(p: &Presentation, w: &[Letter]) -> Vec<Letter> {
    let mut cur = cyclic_free_reduce_letters(w);
    while !cur.is_empty() {
        match moves::shorten_cyclic_once(p, &cur) {
            Some(next) => {
                debug_assert!(next.len() < cur.len());
                cur = next;
            }
            None => break,
        }
    }
    cur
}

/// Conjugacy class representative: the shortlex-least rotation over the
/// closure of the minimal cyclic words of the class under length-preserving
/// chain and ring moves. Two words are conjugate iff their canonical forms are
/// identical.
pub fn canonicalize(p: &Presentation, c: &CyclicWord) -> CyclicWord {
    let w = minimize_cyclic(p, c.letters());
    let start = CyclicWord::new(&w);
    if start.is_empty() || !may_have_moves(p, start.letters()) {
        return start;
    }
    closure_min(p, start)
}

/// Whether a minimal, least-rotated cyclic word is its class representative.
pub(crate) fn is_canonical_minimal(p: &Presentation, c: &[Letter]) -> bool {
    if !may_have_moves(p, c) {
        return true;
    }
    closure_min(p, CyclicWord::from_normalized(c.to_vec())).letters() == c
}

fn closure_min(p: &Presentation, start: CyclicWord) -> CyclicWord {
    let mut seen: HashSet<CyclicWord> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut best = start.clone();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut out = Vec::new();
    while let Some(cur) = queue.pop_front() {
        out.clear();
        moves::preserving_moves(p, cur.letters(), &mut out);
        for v in out.drain(..) {
            let next = CyclicWord::new(&v);
            if seen.insert(next.clone()) {
                if next < best {
                    best = next.clone();
                }
                queue.push_back(next);
            }
        }
    }
    best
}

/// Root and multiplicity of a canonical cyclic word: `c = r^m` with `r` not a
/// proper power.
pub fn primitive_root(c: &CyclicWord) -> (CyclicWord, usize) {
    let w = c.letters();
    let n = w.len();
    for period in 1..=n / 2 {
        if n.is_multiple_of(period) && (period..n).all(|i| w[i] == w[i - period]) {
            return (
                CyclicWord::from_normalized(w[..period].to_vec()),
                n / period,
            );
        }
    }
    (c.clone(), 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<Letter> {
        parse_letters(s).unwrap()
    }

    #[test]
    fn dehn_examples() {
        let p = Presentation::new(2).unwrap();
        assert_eq!(dehn_reduce(&p, &w("a1b1A1B1a2")).to_string(), "b2a2B2");
        assert_eq!(dehn_shorten(&p, &w("a1b1A1B1a2")).to_string(), "b2a2B2");
        assert!(dehn_reduce(&p, p.relator()).is_empty());
        assert_eq!(dehn_reduce(&p, &w("a1")).to_string(), "a1");
    }

    #[test]
    fn cyclic_reduce_examples() {
        let p = Presentation::new(2).unwrap();
        assert_eq!(cyclic_reduce(&p, &w("a1b2A1")).to_string(), "b2");
        assert_eq!(cyclic_reduce(&p, &w("b1a1")).to_string(), "a1b1");
        // Five relator letters across the wraparound of a length-9 word.
        let c = cyclic_reduce(&p, &w("A1B1a2b2a2a2a2a1b1"));
        assert!(c.len() < 9);
    }

    #[test]
    fn canonical_examples() {
        let p = Presentation::new(2).unwrap();
        let c: CyclicWord = "b1a1".parse().unwrap();
        assert_eq!(canonicalize(&p, &c).to_string(), "a1b1");
        // Half relator a1b1A1B1 against its complement form b2a2B2A2 in context.
        let u: CyclicWord = "a1b1A1B1a1a1".parse().unwrap();
        let v: CyclicWord = "b2a2B2A2a1a1".parse().unwrap();
        assert_eq!(canonicalize(&p, &u), canonicalize(&p, &v));
    }

    #[test]
    fn primitive_root_examples() {
        let c: CyclicWord = "a1b1a1b1".parse().unwrap();
        let (r, m) = primitive_root(&c);
        assert_eq!((r.to_string().as_str(), m), ("a1b1", 2));
        let c: CyclicWord = "a1".parse().unwrap();
        assert_eq!(primitive_root(&c).1, 1);
    }
}
