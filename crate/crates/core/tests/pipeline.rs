use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use untangle::corpus;
use untangle::onevertex::make_one_vertex;
use untangle::oracle::census;
use untangle::pipeline::{recognize, simplify, RecognizeOptions};
use untangle::tri::BoundaryKind;

#[test]
fn one_vertex_conversion_on_multi_vertex_entries() {
    for e in corpus::builtin().unwrap().into_iter().filter(|e| e.vertices > 1) {
        let r = make_one_vertex(&e.triangulation).unwrap();
        assert!(r.triangulation.is_one_vertex().unwrap(), "{}", e.name);
        assert!(r.triangulation.size() <= e.n, "{}", e.name);
        assert!(r.iterations >= 1 && r.iterations <= e.n, "{}", e.name);
        assert_eq!(r.triangulation.boundary_kind().unwrap(), BoundaryKind::TorusBoundary, "{}", e.name);
    }
}

#[test]
fn simplify_is_idempotent_and_keeps_verdicts() {
    let simplified = RecognizeOptions { simplify: true, ..RecognizeOptions::default() };
    for e in corpus::builtin().unwrap() {
        let s = simplify(&e.triangulation);
        assert!(s.size() <= e.n, "{}", e.name);
        assert_eq!(simplify(&s), s, "{}", e.name);
        assert_eq!(s.count_vertices().unwrap(), e.vertices, "{}", e.name);
        assert_eq!(s.boundary_kind().unwrap(), e.triangulation.boundary_kind().unwrap(), "{}", e.name);
        assert_eq!(recognize(&e.triangulation, &simplified).unwrap().answer, e.expected, "{}", e.name);
    }
}

#[test]
fn recognize_is_deterministic() {
    for e in corpus::builtin().unwrap().into_iter().filter(|e| e.n <= 6) {
        let a = recognize(&e.triangulation, &RecognizeOptions::default()).unwrap();
        let b = recognize(&e.triangulation, &RecognizeOptions::default()).unwrap();
        assert_eq!(a.answer, b.answer);
        assert_eq!(a.certificate, b.certificate);
        let nodes = |v: &untangle::pipeline::Verdict| v.trace.iter().map(|i| i.stats.nodes).collect::<Vec<_>>();
        assert_eq!(nodes(&a), nodes(&b), "{}", e.name);
    }
}

#[test]
fn relabelling_keeps_the_verdict() {
    for e in corpus::builtin().unwrap().into_iter().filter(|e| e.n <= 6) {
        let order: Vec<usize> = (0..e.n).rev().collect();
        let v = recognize(&e.triangulation.relabel(&order), &RecognizeOptions::default()).unwrap();
        assert_eq!(v.answer, e.expected, "{}", e.name);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn simplify_never_changes_the_verdict_on_small_triangulations(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some(t) = census::random_member(3, &mut rng, 500) {
            // Random members need not be knot complements; compare whatever
            // the pipeline concludes, including failures.
            let plain = recognize(&t, &RecognizeOptions::default()).map(|v| v.answer);
            let simp = recognize(&t, &RecognizeOptions { simplify: true, ..RecognizeOptions::default() }).map(|v| v.answer);
            if let (Ok(a), Ok(b)) = (&plain, &simp) {
                prop_assert_eq!(a, b);
            }
            let s = simplify(&t);
            prop_assert!(s.size() <= t.size());
            prop_assert_eq!(s.count_vertices().unwrap(), 1);
        }
    }
}
