//! Branch-and-bound search for a connected normal surface of positive Euler
//! characteristic that is not the vertex link.
//!
//! Step 1 walks a depth-first tree: a balanced binary tree over the `4n + 1`
//! choices of "first zero triangle coordinate" (the last choice, no zero at
//! all, is the vertex-link region and never expands), followed by three-way
//! quad decisions per tetrahedron. Every entered node is tested for LP
//! feasibility and pruned if infeasible. Step 2 shrinks the support of the
//! point found, and step 3 scales it to a primitive integer vector.

use std::time::{Duration, Instant};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lp::{ConstraintSystem, FeasibilityResult, Mark, Solver, SolverOptions};
use crate::normal::{
    coord, is_admissible, triangle_var, EulerFunctional, MatchingSystem, NormalVector,
};
use crate::tri::Triangulation;
use crate::Rational;

/// One of the three merged quadrilateral branches for a tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadChoice {
    /// First quad type unrestricted, the other two zero.
    AStar,
    /// Second quad type at least one, the other two zero.
    C,
    /// Third quad type at least one, the other two zero.
    D,
}

impl QuadChoice {
    pub const ALL: [QuadChoice; 3] = [QuadChoice::AStar, QuadChoice::C, QuadChoice::D];

    /// The marks this branch adds for tetrahedron `tet`.
    pub fn marks(self, tet: usize) -> Vec<(usize, Mark)> {
        let q = |k: usize| coord(tet, 4 + k);
        match self {
            QuadChoice::AStar => vec![(q(1), Mark::Fixed0), (q(2), Mark::Fixed0)],
            QuadChoice::C => vec![(q(1), Mark::AtLeast1), (q(0), Mark::Fixed0), (q(2), Mark::Fixed0)],
            QuadChoice::D => vec![(q(2), Mark::AtLeast1), (q(0), Mark::Fixed0), (q(1), Mark::Fixed0)],
        }
    }
}

/// The decisions on the current root-to-node path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchState {
    /// Index (into the `4n` triangle coordinates) of the first zero one.
    pub triangle: Option<usize>,
    pub quads: Vec<(usize, QuadChoice)>,
    /// Tetrahedra without a quad decision, ascending.
    pub undecided: Vec<usize>,
}

impl BranchState {
    fn new(n: usize) -> Self {
        BranchState { triangle: None, quads: Vec::new(), undecided: (0..n).collect() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Entered nodes: every node of the binary triangle tree on the path
    /// of the descent, plus every quad-branch child entered.
    pub nodes: u64,
    pub feas_tests: u64,
    pub pivots: u64,
    pub promotions: u64,
    /// Quad decisions made (tetrahedra branched on).
    pub quad_branches: u64,
    /// Feasibility tests made while probing for the greedy quad order.
    pub probes: u64,
    pub cycles_detected: u64,
    pub time: Duration,
}

impl SearchStats {
    /// Adds another run's counters (time included).
    pub fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.feas_tests += other.feas_tests;
        self.pivots += other.pivots;
        self.promotions += other.promotions;
        self.quad_branches += other.quad_branches;
        self.probes += other.probes;
        self.cycles_detected += other.cycles_detected;
        self.time += other.time;
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    pub solver: SolverOptions,
}

/// What an observer sees on entering a node.
#[derive(Debug)]
pub struct NodeVisit<'a> {
    pub system: &'a ConstraintSystem,
    /// The marks added along the path from the root, in order.
    pub path: &'a [(usize, Mark)],
    pub state: &'a BranchState,
    pub feasible: bool,
}

/// Result of [`order_quad_branches`]: the tetrahedron to branch on next and,
/// when probing was needed, the feasibility of each child.
#[derive(Clone, Debug)]
pub struct QuadOrder {
    pub tet: usize,
    pub probed: Option<[FeasibilityResult; 3]>,
}

struct Search<'a> {
    n: usize,
    solver: Solver,
    state: BranchState,
    path: Vec<(usize, Mark)>,
    stats: SearchStats,
    observer: Option<&'a mut dyn FnMut(&NodeVisit)>,
}

impl Search<'_> {
    fn push(&mut self, marks: &[(usize, Mark)]) {
        for &(v, m) in marks {
            self.solver.push_mark(v, m);
            self.path.push((v, m));
        }
    }

    fn truncate(&mut self, depth: usize) {
        self.solver.truncate(depth);
        self.path.truncate(depth);
    }

    fn test(&mut self) -> FeasibilityResult {
        let r = self.solver.feasible();
        record(&mut self.stats, &r);
        r
    }

    fn enter(&mut self, feasible: bool) {
        self.stats.nodes += 1;
        if let Some(obs) = self.observer.as_mut() {
            obs(&NodeVisit { system: self.solver.system(), path: &self.path, state: &self.state, feasible });
        }
    }

    /// Node `[lo, hi]` of the triangle tree: the first zero triangle
    /// coordinate is one of `lo..=hi` (or none, for the final choice `4n`).
    /// `known` carries the parent's result when the constraints are unchanged.
    fn triangle_node(&mut self, lo: usize, hi: usize, known: Option<FeasibilityResult>) -> Option<Vec<Rational>> {
        let last = 4 * self.n;
        if lo == hi && lo == last {
            // No triangle coordinate is zero: only the vertex link lives
            // here, so the leaf is tested but never expanded.
            let r = self.test();
            self.enter(r.feasible);
            return None;
        }
        let depth = self.path.len();
        if lo == hi {
            self.push(&[(triangle_var(lo), Mark::Fixed0)]);
        }
        let r = match known {
            Some(r) if lo != hi => r,
            _ => self.test(),
        };
        self.enter(r.feasible);
        let found = if !r.feasible {
            None
        } else if lo == hi {
            self.state.triangle = Some(lo);
            let found = self.quad_level(Some(lo / 4), r);
            self.state.triangle = None;
            found
        } else {
            let mid = (lo + hi) / 2;
            self.triangle_node(lo, mid, Some(r)).or_else(|| {
                let d = self.path.len();
                let marks: Vec<(usize, Mark)> = (lo..=mid).map(|i| (triangle_var(i), Mark::AtLeast1)).collect();
                self.push(&marks);
                let found = self.triangle_node(mid + 1, hi, None);
                self.truncate(d);
                found
            })
        };
        self.truncate(depth);
        found
    }

    /// Branches on quads below a feasible node whose result is `here`.
    fn quad_level(&mut self, forced: Option<usize>, here: FeasibilityResult) -> Option<Vec<Rational>> {
        if self.state.undecided.is_empty() {
            let w = here.witness.expect("feasible result carries a witness");
            return Some(w[..7 * self.n].to_vec());
        }
        let order = match forced {
            Some(tet) => QuadOrder { tet, probed: None },
            None => self.order(),
        };
        self.stats.quad_branches += 1;
        let tet = order.tet;
        let slot = self.state.undecided.iter().position(|&t| t == tet).expect("tetrahedron is undecided");
        self.state.undecided.remove(slot);
        let depth = self.path.len();
        let mut found = None;
        for (i, choice) in QuadChoice::ALL.into_iter().enumerate() {
            let known = order.probed.as_ref().map(|p| p[i].clone());
            if matches!(&known, Some(r) if !r.feasible) {
                continue;
            }
            self.push(&choice.marks(tet));
            self.state.quads.push((tet, choice));
            let r = match known {
                Some(r) => r,
                None => self.test(),
            };
            self.enter(r.feasible);
            if r.feasible {
                found = self.quad_level(None, r);
            }
            self.state.quads.pop();
            self.truncate(depth);
            if found.is_some() {
                break;
            }
        }
        self.state.undecided.insert(slot, tet);
        found
    }

    fn order(&mut self) -> QuadOrder {
        let before = self.stats.feas_tests;
        let order = order_quad_branches(&self.state, &mut self.solver, &mut self.stats);
        self.stats.probes += self.stats.feas_tests - before;
        order
    }
}

fn record(stats: &mut SearchStats, r: &FeasibilityResult) {
    stats.feas_tests += 1;
    stats.pivots += r.pivots;
    stats.promotions += r.promotions;
    stats.cycles_detected += u64::from(r.cycle_detected);
}

/// Greedy quad ordering: probe the three children of every undecided
/// tetrahedron and pick the one with the fewest feasible children, ties to
/// the lowest index. A tetrahedron with no feasible child ends the probing
/// at once. The solver's marks are restored before returning.
pub fn order_quad_branches(state: &BranchState, solver: &mut Solver, stats: &mut SearchStats) -> QuadOrder {
    let mut best: Option<(usize, usize, [FeasibilityResult; 3])> = None;
    for &tet in &state.undecided {
        let results: [FeasibilityResult; 3] = QuadChoice::ALL.map(|choice| {
            let depth = solver.system().depth();
            for (v, m) in choice.marks(tet) {
                solver.push_mark(v, m);
            }
            let r = solver.feasible();
            record(stats, &r);
            solver.truncate(depth);
            r
        });
        let count = results.iter().filter(|r| r.feasible).count();
        if best.as_ref().is_none_or(|b| count < b.1) {
            best = Some((tet, count, results));
        }
        if count == 0 {
            break;
        }
    }
    let (tet, _, results) = best.expect("at least one undecided tetrahedron");
    QuadOrder { tet, probed: Some(results) }
}

/// Step 1: an admissible `p` with `χ(p) ≥ 1` and some triangle coordinate
/// zero, or `None` if there is none.
pub fn find_admissible_positive(
    n: usize,
    a: &MatchingSystem,
    chi: &EulerFunctional,
    opts: &SearchOptions,
    stats: &mut SearchStats,
) -> Option<Vec<Rational>> {
    find_admissible_positive_observed(n, a, chi, opts, stats, None)
}

/// As [`find_admissible_positive`], calling `observer` on every entered node.
pub fn find_admissible_positive_observed(
    n: usize,
    a: &MatchingSystem,
    chi: &EulerFunctional,
    opts: &SearchOptions,
    stats: &mut SearchStats,
    observer: Option<&mut dyn FnMut(&NodeVisit)>,
) -> Option<Vec<Rational>> {
    let start = Instant::now();
    let sys = ConstraintSystem::surface_system(a, chi);
    let mut search =
        Search { n, solver: Solver::new(sys, opts.solver), state: BranchState::new(n), path: Vec::new(), stats: SearchStats::default(), observer };
    let found = search.triangle_node(0, 4 * n, None);
    search.stats.time = start.elapsed();
    stats.absorb(&search.stats);
    found
}

/// Step 2: starting from the zero set of `p`, greedily zero further
/// coordinates in increasing index order while the system stays feasible.
/// Returns a solution of the final system (first `7n` coordinates).
pub fn refine_support(
    p: &[Rational],
    a: &MatchingSystem,
    chi: &EulerFunctional,
    opts: &SearchOptions,
    stats: &mut SearchStats,
) -> Vec<Rational> {
    let start = Instant::now();
    let vars = a.vars;
    let mut solver = Solver::new(ConstraintSystem::surface_system(a, chi), opts.solver);
    for (i, x) in p.iter().enumerate() {
        if x.is_zero() {
            solver.push_mark(i, Mark::Fixed0);
        }
    }
    let mut q = p.to_vec();
    for (i, x) in p.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        solver.push_mark(i, Mark::Fixed0);
        let r = solver.feasible();
        record(stats, &r);
        match r.witness {
            Some(w) if r.feasible => q = w[..vars].to_vec(),
            _ => solver.pop_mark().expect("mark was just pushed"),
        }
    }
    stats.time += start.elapsed();
    q
}

/// Step 3: the smallest positive integer multiple of `q`.
pub fn extract_surface(q: &[Rational]) -> Result<NormalVector> {
    NormalVector::new(q.to_vec())?.scale_to_primitive()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    /// The connected, non-vertex-linking surface with `χ ≥ 1`, if any.
    pub surface: Option<NormalVector>,
    pub stats: SearchStats,
}

/// Runs all three steps on a one-vertex triangulation.
pub fn find_surface(tri: &Triangulation, opts: &SearchOptions) -> Result<SearchResult> {
    let skel = tri.skeleton()?;
    if skel.vertices.len() != 1 {
        return Err(Error::NotOneVertex(skel.vertices.len()));
    }
    let a = MatchingSystem::build(tri, &skel);
    let chi = EulerFunctional::build(&skel);
    let mut stats = SearchStats::default();
    let Some(p) = find_admissible_positive(tri.size(), &a, &chi, opts, &mut stats) else {
        return Ok(SearchResult { surface: None, stats });
    };
    let q = refine_support(&p, &a, &chi, opts, &mut stats);
    let s = extract_surface(&q)?;
    debug_assert!(is_admissible(&s, &a), "extracted surface is not admissible");
    debug_assert!(chi.eval(&s) >= Rational::from_integer(1.into()), "extracted surface has χ < 1");
    debug_assert!(s.has_zero_triangle(), "extracted surface is the vertex link");
    Ok(SearchResult { surface: Some(s), stats })
}

/// Nodes in the complete search tree for `n` tetrahedra: the binary triangle
/// tree plus a full ternary quad tree below each of its `4n` useful leaves.
pub fn full_tree_nodes(n: u32) -> u128 {
    let quad_subtree: u128 = (1..=n).map(|k| 3u128.pow(k)).sum();
    (8 * u128::from(n) + 1) + 4 * u128::from(n) * quad_subtree
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal::{matching_equations, euler_functional};

    #[test]
    fn solid_torus_has_a_disc() {
        let t = Triangulation::solid_torus();
        let r = find_surface(&t, &SearchOptions::default()).unwrap();
        let s = r.surface.expect("the meridian disc");
        let chi = euler_functional(&t).unwrap();
        assert_eq!(chi.eval(&s), Rational::from_integer(1.into()));
        assert!(crate::normal::is_boundary_nontrivial(&s, &t).unwrap());
        assert!(r.stats.nodes >= 1);
    }

    #[test]
    fn quad_choice_marks() {
        assert_eq!(QuadChoice::AStar.marks(1), vec![(12, Mark::Fixed0), (13, Mark::Fixed0)]);
        assert_eq!(QuadChoice::D.marks(0)[0], (6, Mark::AtLeast1));
    }

    #[test]
    fn forced_first_decision_is_the_triangle_tetrahedron() {
        // Observe the first quad-branch node entered after each triangle leaf.
        let t = Triangulation::solid_torus();
        let a = matching_equations(&t).unwrap();
        let chi = euler_functional(&t).unwrap();
        let mut firsts = Vec::new();
        let mut obs = |v: &NodeVisit| {
            if v.state.quads.len() == 1 {
                firsts.push((v.state.triangle.unwrap() / 4, v.state.quads[0].0));
            }
        };
        let mut stats = SearchStats::default();
        find_admissible_positive_observed(t.size(), &a, &chi, &SearchOptions::default(), &mut stats, Some(&mut obs));
        assert!(!firsts.is_empty());
        assert!(firsts.iter().all(|(a, b)| a == b));
    }

    #[test]
    fn tree_size_formula() {
        assert_eq!(full_tree_nodes(1), 9 + 4 * 3);
        assert_eq!(full_tree_nodes(2), 17 + 8 * 12);
    }
}
