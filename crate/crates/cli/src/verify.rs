//! Oracle suites behind `untangle verify`.

use std::time::Instant;

use anyhow::{ensure, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use untangle::corpus::{self, CorpusEntry};
use untangle::lp::{feasible, Solver, SolverOptions};
use untangle::normal::{euler_functional, reconstruct_components, vertex_link_vector};
use untangle::oracle::{brute_force_feasible, census, check_topology, cycling_instance, random_system};
use untangle::pipeline::{recognize, RecognizeOptions};
use untangle::search::SearchOptions;
use untangle::Rational;

pub struct Outcome {
    pub name: &'static str,
    pub result: Result<String>,
}

/// Runs every suite; `quick` keeps to the sub-second subset.
pub fn run(quick: bool) -> Vec<Outcome> {
    let corpus = corpus::load();
    let mut out = vec![Outcome { name: "corpus", result: corpus.as_ref().map(|c| format!("{} entries", c.len())).map_err(|e| anyhow::anyhow!("{e}")) }];
    let Ok(corpus) = corpus else { return out };
    let suites: [(&'static str, &dyn Fn() -> Result<String>); 5] = [
        ("lp-differential", &|| lp_differential(if quick { 200 } else { 1000 })),
        ("cycling", &cycling),
        ("euler", &|| euler(&corpus, quick)),
        ("extreme-rays", &|| rays(&corpus, quick)),
        ("verdicts", &|| verdicts(&corpus, quick)),
    ];
    for (name, suite) in suites {
        out.push(Outcome { name, result: suite() });
    }
    out
}

fn lp_differential(count: usize) -> Result<String> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..count {
        let vars = rng.gen_range(1..=12);
        let rows = rng.gen_range(1..=vars.min(7));
        let sys = random_system(&mut rng, vars, rows);
        let got = feasible(&sys);
        ensure!(got.feasible == brute_force_feasible(&sys)?, "system {i} disagrees:\n{}", sys.dump());
        if let Some(w) = &got.witness {
            ensure!(sys.is_satisfied_by(w), "system {i}: witness fails");
        }
    }
    Ok(format!("{count} systems agree in {:.2?}", start.elapsed()))
}

fn cycling() -> Result<String> {
    let r = Solver::new(cycling_instance(), SolverOptions::default()).feasible();
    ensure!(r.cycle_detected && !r.pivot_limit_hit, "cycle not detected");
    ensure!(!r.feasible, "cycling instance reported feasible");
    Ok(format!("cycle detected, Bland fallback finished after {} pivots", r.pivots))
}

fn one_vertex(corpus: &[CorpusEntry]) -> Vec<&CorpusEntry> {
    corpus.iter().filter(|e| e.vertices == 1).collect()
}

fn euler(corpus: &[CorpusEntry], quick: bool) -> Result<String> {
    let one = Rational::from_integer(1.into());
    let mut certs = 0;
    for e in corpus {
        let chi = euler_functional(&e.triangulation)?;
        let (lo, hi) = chi.range().unwrap_or((0, 0));
        ensure!(lo >= -3 && hi <= 5, "{}: coefficients span [{lo}, {hi}]", e.name);
    }
    for e in one_vertex(corpus) {
        let link = vertex_link_vector(&e.triangulation)?;
        let comps = reconstruct_components(&e.triangulation, &link)?;
        let direct: i64 = comps.iter().map(|c| c.euler).sum();
        let via = euler_functional(&e.triangulation)?.eval(&link);
        ensure!(via == Rational::from_integer(direct.into()), "{}: vertex link χ {via} vs {direct}", e.name);
    }
    for e in corpus.iter().filter(|e| !quick || e.n <= 4) {
        let v = recognize(&e.triangulation, &RecognizeOptions::default())?;
        if let Some(c) = v.certificate {
            let comps = reconstruct_components(&c.triangulation, &c.disc)?;
            ensure!(comps.len() == 1, "{}: certificate has {} components", e.name, comps.len());
            let via = euler_functional(&c.triangulation)?.eval(&c.disc);
            ensure!(via == one && comps[0].euler == 1, "{}: certificate χ {via} vs {}", e.name, comps[0].euler);
            certs += 1;
        }
    }
    Ok(format!("coefficients in [-3, 5]; {certs} certificates and all vertex links match"))
}

fn rays(corpus: &[CorpusEntry], quick: bool) -> Result<String> {
    let opts = SearchOptions::default();
    let mut inputs: Vec<(String, untangle::tri::Triangulation)> = Vec::new();
    for e in one_vertex(corpus).into_iter().filter(|e| e.n <= 3) {
        inputs.push((e.name.clone(), e.triangulation.clone()));
    }
    let sizes: &[usize] = if quick { &[1] } else { &[1, 2] };
    for &n in sizes {
        for (i, t) in census::census(n).into_iter().enumerate() {
            inputs.push((format!("census-{n}-{i}"), t));
        }
    }
    if !quick {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for i in 0..30 {
            if let Some(t) = census::random_member(3, &mut rng, 1000) {
                inputs.push((format!("random-3-{i}"), t));
            }
        }
    }
    let mut none = 0;
    for (name, t) in &inputs {
        let c = check_topology(t, &opts)?;
        ensure!(c.agrees(), "{name}: search and extreme rays disagree ({c:?})");
        none += usize::from(!c.search_found);
    }
    Ok(format!("{} triangulations agree ({none} with no surface)", inputs.len()))
}

fn verdicts(corpus: &[CorpusEntry], quick: bool) -> Result<String> {
    let mut checked = 0;
    for e in corpus.iter().filter(|e| !quick || e.n <= 4) {
        let v = recognize(&e.triangulation, &RecognizeOptions::default())?;
        ensure!(v.answer == e.expected, "{}: got {}, expected {}", e.name, v.answer, e.expected);
        checked += 1;
    }
    Ok(format!("{checked} entries match the manifest"))
}
