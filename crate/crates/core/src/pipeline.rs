//! End-to-end unknot recognition on a knot-complement triangulation.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::crush::{crush, extract_complement, Extracted};
use crate::error::{Error, Result};
use crate::normal::{euler_functional, is_boundary_nontrivial, NormalVector};
use crate::onevertex::make_one_vertex;
use crate::search::{find_surface, SearchOptions, SearchStats};
use crate::tri::Triangulation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Answer {
    Trivial,
    NonTrivial,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Trivial => "Trivial",
            Answer::NonTrivial => "NonTrivial",
        })
    }
}

impl FromStr for Answer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Trivial" => Ok(Answer::Trivial),
            "NonTrivial" => Ok(Answer::NonTrivial),
            _ => Err(Error::Corpus(format!("unknown verdict {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    /// The search found nothing: the knot is non-trivial.
    NoSurface,
    /// A disc with essential boundary: the knot is trivial.
    NontrivialDisc,
    /// A sphere, or a disc with inessential boundary, was crushed away.
    Crushed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iteration {
    /// Size of the one-vertex triangulation searched.
    pub n: usize,
    /// Crushing rounds the one-vertex conversion needed first.
    pub onevertex_rounds: usize,
    pub stats: SearchStats,
    pub action: Action,
    /// For crushes: the size of the extracted complement (0 if none).
    pub reduced_to: Option<usize>,
}

/// A disc with essential boundary, and the triangulation it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub triangulation: Triangulation,
    pub disc: NormalVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub answer: Answer,
    pub trace: Vec<Iteration>,
    pub certificate: Option<Certificate>,
    pub time: Duration,
}

impl Verdict {
    /// Search statistics summed over all iterations.
    pub fn total_stats(&self) -> SearchStats {
        let mut total = SearchStats::default();
        for it in &self.trace {
            total.absorb(&it.stats);
        }
        total
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RecognizeOptions {
    pub search: SearchOptions,
    /// Run the greedy local-move simplification on the input and again on
    /// each one-vertex triangulation before it is searched.
    pub simplify: bool,
}

/// Decides whether the knot whose complement `tri` triangulates is trivial.
pub fn recognize(tri: &Triangulation, opts: &RecognizeOptions) -> Result<Verdict> {
    let start = Instant::now();
    tri.validate()?;
    let tidy = |t: &Triangulation| if opts.simplify { simplify(t) } else { t.clone() };
    let mut cur = tidy(tri);
    let limit = cur.size().max(1);
    let mut trace = Vec::new();
    let finish = |answer, trace, certificate| Ok(Verdict { answer, trace, certificate, time: start.elapsed() });
    while trace.len() < limit {
        // If a conversion crush already shows the knot is trivial, this
        // yields the solid torus, whose meridian disc the search then finds.
        let ov = make_one_vertex(&cur)?;
        cur = tidy(&ov.triangulation);
        let found = find_surface(&cur, &opts.search)?;
        let mut it = Iteration {
            n: cur.size(),
            onevertex_rounds: ov.iterations,
            stats: found.stats,
            action: Action::NoSurface,
            reduced_to: None,
        };
        let Some(s) = found.surface else {
            trace.push(it);
            return finish(Answer::NonTrivial, trace, None);
        };
        let chi = euler_functional(&cur)?.eval(&s);
        if chi == crate::Rational::from_integer(1.into()) && is_boundary_nontrivial(&s, &cur)? {
            it.action = Action::NontrivialDisc;
            trace.push(it);
            let cert = Certificate { triangulation: cur, disc: s };
            return finish(Answer::Trivial, trace, Some(cert));
        }
        it.action = Action::Crushed;
        let crushed = crush(&cur, &s)?;
        match extract_complement(&crushed)? {
            Extracted::Reduced { triangulation, .. } => {
                if triangulation.size() >= cur.size() {
                    return Err(Error::Crush("crushing did not shrink the triangulation".into()));
                }
                it.reduced_to = Some(triangulation.size());
                trace.push(it);
                cur = triangulation;
            }
            Extracted::KnotIsTrivial => {
                it.reduced_to = Some(0);
                trace.push(it);
                return finish(Answer::Trivial, trace, None);
            }
        }
    }
    Err(Error::Crush(format!("no verdict after {limit} iterations")))
}

/// Greedy 3-2 moves and 2-0 edge moves until none applies. The result
/// triangulates the same manifold and is never larger.
pub fn simplify(tri: &Triangulation) -> Triangulation {
    let mut cur = tri.clone();
    'outer: loop {
        for t in 0..cur.size() {
            for e in 0..6 {
                if let Some(next) = cur.three_two(t, e).or_else(|| cur.two_zero_edge(t, e)) {
                    cur = next;
                    continue 'outer;
                }
            }
        }
        return cur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solid_torus_is_trivial() {
        let v = recognize(&Triangulation::solid_torus(), &RecognizeOptions::default()).unwrap();
        assert_eq!(v.answer, Answer::Trivial);
        assert_eq!(v.trace.len(), 1);
        assert_eq!(v.trace[0].action, Action::NontrivialDisc);
        assert!(v.certificate.is_some());
    }

    #[test]
    fn answer_round_trip() {
        for a in [Answer::Trivial, Answer::NonTrivial] {
            assert_eq!(a.to_string().parse::<Answer>().unwrap(), a);
        }
        assert!("maybe".parse::<Answer>().is_err());
    }
}
