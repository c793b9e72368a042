//! Reduction against breadth-first distances in the Cayley graph of the Bolza
//! group, which is faithful, so matrices identify elements.

mod common;

use common::{cayley_ball, element_key, reduced_words};
use geodesic_census::hyperbolic::Representation;
use geodesic_census::surface_group::{dehn_reduce, dehn_shorten, parse_letters};

#[test]
fn dehn_reduce_is_geodesic_up_to_length_7() {
    let rep = Representation::bolza(128).unwrap();
    let p = rep.presentation();
    let radius = 7;
    let ball = cayley_ball(&rep, radius);
    let mut checked = 0usize;
    for n in 1..=radius {
        for w in reduced_words(p, n) {
            let key = element_key(&rep.word_to_matrix(&w).unwrap());
            let d = ball[&key];
            let r = dehn_reduce(p, &w);
            assert_eq!(r.len(), d, "dehn_reduce({w:?}) = {r} is not geodesic");
            assert_eq!(element_key(&rep.word_to_matrix(r.letters()).unwrap()), key);
            let s = dehn_shorten(p, &w);
            assert_eq!(s.is_empty(), d == 0);
            checked += 1;
        }
    }
    assert!(checked > 900_000);
}

#[test]
fn textbook_dehn_misses_half_relator_chains() {
    let rep = Representation::bolza(128).unwrap();
    let p = rep.presentation();
    let w = parse_letters("a1b1A1B1B2a1b1A1").unwrap();
    assert_eq!(dehn_shorten(p, &w).len(), 8);
    let r = dehn_reduce(p, &w);
    assert_eq!(r.len(), 6);
    let a = element_key(&rep.word_to_matrix(&w).unwrap());
    let b = element_key(&rep.word_to_matrix(r.letters()).unwrap());
    assert_eq!(a, b);
    // Length 6 is optimal: nothing in the radius-5 ball matches.
    assert!(!cayley_ball(&rep, 5).contains_key(&a));
}
