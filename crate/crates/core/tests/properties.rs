use geodesic_census::census::{enumerate, enumerate_shard, merge};
use geodesic_census::counting::{pairwise_sum, Counter, PairQuery, WeightKind};
use geodesic_census::hyperbolic::{length_of, Representation};
use geodesic_census::surface_group::{
    abelianize, canonicalize, dehn_reduce, free_reduce_letters, primitive_root, CyclicWord,
    HomologyVector, Letter, Presentation,
};
use proptest::prelude::*;
use std::sync::OnceLock;

fn rep() -> &'static Representation {
    static REP: OnceLock<Representation> = OnceLock::new();
    REP.get_or_init(|| Representation::bolza(128).unwrap())
}

fn p() -> &'static Presentation {
    rep().presentation()
}

fn word(max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(0u8..8, 1..=max)
        .prop_map(|codes| free_reduce_letters(&codes.into_iter().map(Letter::from_code).collect::<Vec<_>>()))
}

fn nontrivial_cyclic(max: usize) -> impl Strategy<Value = CyclicWord> {
    word(max)
        .prop_map(|w| canonicalize(p(), &CyclicWord::new(&w)))
        .prop_filter("trivial class", |c| !c.is_empty())
}

fn trace_abs(w: &[Letter]) -> f64 {
    rep().trace_f64(w).abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn canonicalize_idempotent_and_rotation_invariant(w in word(14), r in 0usize..14) {
        let c = canonicalize(p(), &CyclicWord::new(&w));
        prop_assert_eq!(&canonicalize(p(), &c), &c);
        if !w.is_empty() {
            let r = r % w.len();
            let mut rot = w[r..].to_vec();
            rot.extend_from_slice(&w[..r]);
            prop_assert_eq!(&canonicalize(p(), &CyclicWord::new(&rot)), &c);
        }
    }

    #[test]
    fn canonicalize_respects_conjugation(w in word(10), g in word(4)) {
        let mut conj = g.clone();
        conj.extend_from_slice(&w);
        conj.extend(g.iter().rev().map(|l| l.inverse()));
        let conj = free_reduce_letters(&conj);
        prop_assert_eq!(
            canonicalize(p(), &CyclicWord::new(&conj)),
            canonicalize(p(), &CyclicWord::new(&w))
        );
    }

    #[test]
    fn canonical_form_keeps_invariants(w in word(12)) {
        let c = canonicalize(p(), &CyclicWord::new(&w));
        prop_assert_eq!(abelianize(2, c.letters()), abelianize(2, &w));
        let (a, b) = (trace_abs(&w), trace_abs(c.letters()));
        prop_assert!((a - b).abs() <= 1e-9 * a.max(1.0), "{} vs {}", a, b);
        prop_assert!(c.len() <= w.len());
    }

    #[test]
    fn dehn_reduce_keeps_element(w in word(16)) {
        let r = dehn_reduce(p(), &w);
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(&dehn_reduce(p(), r.letters()), &r);
        let (m1, m2) = (rep().word_to_matrix(&w).unwrap().to_f64(), rep().word_to_matrix(r.letters()).unwrap().to_f64());
        let scale = m1.iter().fold(1f64, |a, x| a.max(x.abs()));
        for i in 0..4 {
            prop_assert!((m1[i] - m2[i]).abs() <= 1e-9 * scale);
        }
    }

    #[test]
    fn powers_are_detected(c in nontrivial_cyclic(6), m in 1usize..4) {
        let (root, k) = primitive_root(&c);
        let power = canonicalize(p(), &c.pow(m));
        let (proot, pk) = primitive_root(&power);
        prop_assert_eq!(pk, k * m);
        prop_assert_eq!(proot, root);
        let l = length_of(&rep().word_to_matrix(c.letters()).unwrap()).unwrap().length.to_f64();
        let lm = length_of(&rep().word_to_matrix(power.letters()).unwrap()).unwrap().length.to_f64();
        prop_assert!((lm - m as f64 * l).abs() <= 1e-12 * lm);
    }

    #[test]
    fn homology_text_round_trip(v in prop::collection::vec(-50i32..50, 4)) {
        let h = HomologyVector(v);
        prop_assert_eq!(HomologyVector::parse_for_genus(&h.to_string(), 2).unwrap(), h);
    }

    #[test]
    fn pairwise_sum_is_accurate(v in prop::collection::vec(0.0f64..1e6, 0..200)) {
        let naive: f64 = v.iter().sum();
        prop_assert!((pairwise_sum(&v) - naive).abs() <= 1e-9 * naive.max(1.0));
    }
}

fn small_census() -> &'static geodesic_census::census::Census {
    static C: OnceLock<geodesic_census::census::Census> = OnceLock::new();
    C.get_or_init(|| enumerate(rep(), 5).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counters_are_monotone(l in 3.0f64..6.5, dl in 0.0f64..1.0, b in prop::collection::vec(-1i32..=1, 4)) {
        let k = Counter::new(small_census());
        let (x, y) = (l.exp(), (l + dl).exp());
        let beta = HomologyVector(b);
        prop_assert!(k.pi(x) <= k.pi(y));
        prop_assert!(k.pi_beta(&beta, x) <= k.pi_beta(&beta, y));
        prop_assert!(k.r_beta(&beta, x) <= k.r_beta(&beta, y));
        let qx = PairQuery::symmetric(beta.clone(), x).unwrap();
        let qy = PairQuery::symmetric(beta.clone(), y).unwrap();
        prop_assert!(k.pair_count(&qx) <= k.pair_count(&qy));
        prop_assert!(k.r2_beta(&qx) <= k.r2_beta(&qy));
        prop_assert!(k.p2_beta(&qx) <= k.p2_beta(&qy));
        let h = k.histogram(x, WeightKind::Unit);
        prop_assert_eq!(h.total() as u64, k.pi(x));
    }

    #[test]
    fn merge_is_a_semilattice(s in 2usize..6, i in 0usize..6, j in 0usize..6, l in 0usize..6) {
        let shard = |t: usize| enumerate_shard(rep(), 3, t % s, s, 0.0).unwrap();
        let (a, b, c) = (shard(i), shard(j), shard(l));
        prop_assert_eq!(merge(&a, &b).unwrap(), merge(&b, &a).unwrap());
        prop_assert_eq!(merge(&a, &a).unwrap(), a.clone());
        prop_assert_eq!(
            merge(&merge(&a, &b).unwrap(), &c).unwrap(),
            merge(&a, &merge(&b, &c).unwrap()).unwrap()
        );
    }
}
