#![allow(dead_code)]

use std::collections::HashMap;

use geodesic_census::hyperbolic::{Mat2, Representation};
use geodesic_census::surface_group::{Letter, Presentation};

/// Sign-normalized matrix entries rounded to 1e-12. Distinct elements of a
/// word ball of small radius differ by far more than that, and 128-bit
/// products agree with the exact values to ~1e-30.
pub type ElementKey = [i64; 4];

pub fn element_key(m: &Mat2) -> ElementKey {
    let f = m.to_f64();
    let first = f.iter().copied().find(|x| x.abs() > 1e-9).unwrap();
    let s = first.signum();
    f.map(|x| (s * x * 1e12).round() as i64)
}

/// Breadth-first ball in the Cayley graph: element → word distance.
pub fn cayley_ball(rep: &Representation, radius: usize) -> HashMap<ElementKey, usize> {
    let letters: Vec<Letter> = rep.presentation().alphabet().collect();
    let mut dist = HashMap::new();
    let id = Mat2::identity(rep.precision());
    dist.insert(element_key(&id), 0);
    let mut frontier = vec![id];
    for d in 1..=radius {
        let mut next = Vec::new();
        for m in &frontier {
            for &l in &letters {
                let n = m.mul(rep.image(l));
                let k = element_key(&n);
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(k) {
                    e.insert(d);
                    next.push(n);
                }
            }
        }
        frontier = next;
    }
    dist
}

/// Every freely reduced word of length exactly `n`.
pub fn reduced_words(p: &Presentation, n: usize) -> Vec<Vec<Letter>> {
    let letters: Vec<Letter> = p.alphabet().collect();
    let mut words: Vec<Vec<Letter>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(words.len() * (letters.len() - 1));
        for w in &words {
            for &l in &letters {
                if w.last() != Some(&l.inverse()) {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        words = next;
    }
    words
}

/// Cyclically reduced words of length `1..=max_len` in least rotation, i.e.
/// necklaces of the free group.
pub fn free_necklaces(p: &Presentation, max_len: usize) -> Vec<Vec<Letter>> {
    use geodesic_census::surface_group::least_rotation;
    let mut out = Vec::new();
    for n in 1..=max_len {
        for w in reduced_words(p, n) {
            if w[0] != w[n - 1].inverse() && least_rotation(&w) == 0 {
                out.push(w);
            }
        }
    }
    out
}

/// All rotations of `u`.
pub fn rotations(u: &[Letter]) -> impl Iterator<Item = Vec<Letter>> + '_ {
    (0..u.len().max(1)).map(move |r| {
        let mut v = u[r.min(u.len())..].to_vec();
        v.extend_from_slice(&u[..r.min(u.len())]);
        v
    })
}

/// Conjugacy via the brute-force oracle, allowing any rotation of `u` (a
/// rotation is itself a conjugation).
pub fn oracle_conjugate(rep: &Representation, u: &[Letter], v: &[Letter], radius: usize) -> bool {
    rotations(u).any(|r| geodesic_census::census::brute_conjugacy_oracle(&r, v, rep, radius))
}

/// Groups indices by exact homology and by |trace| agreeing to 1e-9
/// relative. Both are conjugacy invariants, so conjugate words always share a
/// group.
pub fn invariant_buckets(rep: &Representation, words: &[Vec<Letter>]) -> Vec<Vec<usize>> {
    use geodesic_census::surface_group::abelianize;
    let g = rep.genus();
    let mut keyed: Vec<(Vec<i32>, f64, usize)> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (abelianize(g, w).0, rep.trace_f64(w).abs(), i))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.partial_cmp(&b.1).unwrap()));
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut prev: Option<(Vec<i32>, f64)> = None;
    for (h, t, i) in keyed {
        let same = prev
            .as_ref()
            .is_some_and(|(ph, pt)| *ph == h && (t - pt).abs() <= 1e-9 * t.max(1.0));
        if same {
            out.last_mut().unwrap().push(i);
        } else {
            out.push(vec![i]);
        }
        prev = Some((h, t));
    }
    out
}
