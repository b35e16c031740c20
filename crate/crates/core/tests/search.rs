use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use untangle::corpus;
use untangle::crush::{crush, extract_complement, paths_agree, Extracted};
use untangle::normal::{euler_functional, is_admissible, matching_equations, reconstruct_components};
use untangle::oracle::census;
use untangle::search::{find_admissible_positive_observed, find_surface, NodeVisit, SearchOptions, SearchStats};
use untangle::tri::Triangulation;

fn one_vertex_inputs() -> Vec<(String, Triangulation)> {
    let mut v: Vec<_> = corpus::builtin()
        .unwrap()
        .into_iter()
        .filter(|e| e.vertices == 1 && e.n <= 6)
        .map(|e| (e.name, e.triangulation))
        .collect();
    v.extend(census::census(2).into_iter().enumerate().map(|(i, t)| (format!("census-2-{i}"), t)));
    v
}

#[test]
fn marks_on_every_node_match_the_path() {
    for (name, t) in one_vertex_inputs() {
        let a = matching_equations(&t).unwrap();
        let chi = euler_functional(&t).unwrap();
        let mut visits = 0u64;
        let mut bad = Vec::new();
        let mut obs = |v: &NodeVisit| {
            visits += 1;
            let mut replay = v.system.clone();
            replay.truncate(0);
            for &(var, m) in v.path {
                replay.push_mark(var, m);
            }
            if replay.marks() != v.system.marks() || v.system.depth() != v.path.len() {
                bad.push(v.path.len());
            }
        };
        let mut stats = SearchStats::default();
        find_admissible_positive_observed(t.size(), &a, &chi, &SearchOptions::default(), &mut stats, Some(&mut obs));
        assert!(bad.is_empty(), "{name}: stale marks at depths {bad:?}");
        assert_eq!(visits, stats.nodes, "{name}");
    }
}

#[test]
fn search_is_deterministic() {
    for (name, t) in one_vertex_inputs() {
        let a = find_surface(&t, &SearchOptions::default()).unwrap();
        let b = find_surface(&t, &SearchOptions::default()).unwrap();
        assert_eq!(a.surface, b.surface, "{name}");
        let strip = |mut s: SearchStats| {
            s.time = Default::default();
            s
        };
        assert_eq!(strip(a.stats), strip(b.stats), "{name}");
    }
}

#[test]
fn nontrivial_knots_without_quad_branching_visit_8n_plus_1_nodes() {
    for e in corpus::builtin().unwrap().into_iter().filter(|e| e.vertices == 1) {
        let r = find_surface(&e.triangulation, &SearchOptions::default()).unwrap();
        if r.surface.is_none() && r.stats.quad_branches == 0 {
            assert_eq!(r.stats.nodes as usize, 8 * e.n + 1, "{}", e.name);
        }
    }
}

fn check_surface_and_crush(t: &Triangulation) {
    let Some(s) = find_surface(t, &SearchOptions::default()).unwrap().surface else { return };
    let a = matching_equations(t).unwrap();
    assert!(is_admissible(&s, &a));
    assert!(s.is_integral() && s.has_zero_triangle());
    let comps = reconstruct_components(t, &s).unwrap();
    assert_eq!(comps.len(), 1);
    assert!(comps[0].euler >= 1);
    let cr = crush(t, &s).unwrap();
    let n = t.size();
    assert!(cr.triangulation.size() < n);
    assert!(cr.steps <= 2 * n + 4 * cr.origin.len());
    assert!(paths_agree(t, &s, &cr).unwrap());
    if let Extracted::Reduced { triangulation, origin } = extract_complement(&cr).unwrap() {
        assert_eq!(triangulation.size(), origin.len());
        assert!(triangulation.size() < n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn surfaces_found_are_connected_positive_and_crush_cleanly(seed in any::<u64>(), n in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some(t) = census::random_member(n, &mut rng, 500) {
            check_surface_and_crush(&t);
        }
    }
}
