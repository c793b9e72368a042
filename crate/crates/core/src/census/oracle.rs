use crate::hyperbolic::Representation;
use crate::surface_group::{abelianize, free_reduce_letters, inverse_letters, is_identity, Letter};

/// Searches conjugators `g` with `|g| ≤ radius` such that `g u g⁻¹ = v`, testing
/// each candidate with the textbook Dehn algorithm. Homology and trace are
/// conjugacy invariants and are used only to reject early.
pub fn brute_conjugacy_oracle(
    u: &[Letter],
    v: &[Letter],
    rep: &Representation,
    radius: usize,
) -> bool {
    let p = rep.presentation();
    let g = p.genus();
    if abelianize(g, u) != abelianize(g, v) {
        return false;
    }
    let (tu, tv) = (rep.trace_f64(u).abs(), rep.trace_f64(v).abs());
    if (tu - tv).abs() > 1e-6 * tu.max(tv).max(1.0) {
        return false;
    }
    let v_inv = inverse_letters(v);
    let letters: Vec<Letter> = p.alphabet().collect();
    let mut conj = Vec::with_capacity(2 * radius);
    search(p, u, &v_inv, &letters, radius, &mut conj, &mut Vec::new())
}

fn search(
    p: &crate::surface_group::Presentation,
    u: &[Letter],
    v_inv: &[Letter],
    letters: &[Letter],
    depth_left: usize,
    g: &mut Vec<Letter>,
    buf: &mut Vec<Letter>,
) -> bool {
    buf.clear();
    buf.extend_from_slice(g);
    buf.extend_from_slice(u);
    buf.extend(g.iter().rev().map(|l| l.inverse()));
    buf.extend_from_slice(v_inv);
    if is_identity(p, &free_reduce_letters(buf)) {
        return true;
    }
    if depth_left == 0 {
        return false;
    }
    for &l in letters {
        if g.last() == Some(&l.inverse()) {
            continue;
        }
        g.push(l);
        let found = search(p, u, v_inv, letters, depth_left - 1, g, buf);
        g.pop();
        if found {
            return true;
        }
    }
    false
}
