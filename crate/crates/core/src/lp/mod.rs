//! Exact feasibility testing for `{A x = b, x >= 0}` with per-variable marks.

mod scalar;
mod solver;

use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::normal::{EulerFunctional, MatchingSystem};
use crate::Rational;

pub use scalar::{Scalar, SmallRat};
pub use solver::{PivotRule, Solver, SolverOptions};

/// Domain restriction on a single variable, on top of `x >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Mark {
    #[default]
    Free,
    Fixed0,
    AtLeast1,
    /// Both `x = 0` and `x >= 1`: the domain is empty.
    Empty,
}

impl Mark {
    fn combine(self, other: Mark) -> Mark {
        use Mark::*;
        match (self, other) {
            (Free, m) | (m, Free) => m,
            (a, b) if a == b => a,
            _ => Empty,
        }
    }
}

/// A sparse equality row `Σ coef·x = rhs` with integer data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Row {
    pub entries: Vec<(usize, i64)>,
    pub rhs: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    vars: usize,
    rows: Vec<Row>,
    marks: Vec<Mark>,
    stack: Vec<(usize, Mark)>,
    chi_row: Option<usize>,
}

impl ConstraintSystem {
    pub fn new(vars: usize) -> Self {
        ConstraintSystem { vars, rows: Vec::new(), marks: vec![Mark::Free; vars], stack: Vec::new(), chi_row: None }
    }

    /// `{x >= 0, A x = 0, χ(x) >= 1}`; the χ inequality becomes the row
    /// `χ(x) − s = 1` with a slack variable `s` placed last.
    pub fn surface_system(a: &MatchingSystem, chi: &EulerFunctional) -> Self {
        let mut sys = ConstraintSystem::new(a.vars + 1);
        for r in &a.rows {
            let entries: Vec<(usize, i64)> = r.sparse().into_iter().collect();
            if !entries.is_empty() {
                sys.add_row(entries, 0);
            }
        }
        let mut entries: Vec<(usize, i64)> =
            chi.coeffs.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (i, *c)).collect();
        entries.push((a.vars, -1));
        sys.chi_row = Some(sys.rows.len());
        sys.add_row(entries, 1);
        sys
    }

    /// Adds a row; duplicate variable entries are merged and zeros dropped.
    pub fn add_row(&mut self, mut entries: Vec<(usize, i64)>, rhs: i64) {
        entries.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(usize, i64)> = Vec::with_capacity(entries.len());
        for (v, c) in entries {
            assert!(v < self.vars, "variable {v} out of range");
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += c,
                _ => merged.push((v, c)),
            }
        }
        merged.retain(|e| e.1 != 0);
        self.rows.push(Row { entries: merged, rhs });
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn chi_row(&self) -> Option<usize> {
        self.chi_row
    }

    pub fn marks(&self) -> &[Mark] {
        &self.marks
    }

    pub fn mark(&self, var: usize) -> Mark {
        self.marks[var]
    }

    pub fn depth(&self) -> usize {
        self.stack.len()
    }

    pub fn push_mark(&mut self, var: usize, mark: Mark) {
        let prev = self.marks[var];
        self.stack.push((var, prev));
        self.marks[var] = prev.combine(mark);
    }

    pub fn pop_mark(&mut self) -> Result<()> {
        let (var, prev) = self.stack.pop().ok_or(Error::EmptyMarkStack)?;
        self.marks[var] = prev;
        Ok(())
    }

    /// Pops back to a previously observed stack depth.
    pub fn truncate(&mut self, depth: usize) {
        while self.stack.len() > depth {
            self.pop_mark().expect("non-empty");
        }
    }

    /// Exact check that `x` satisfies every row, sign constraint and mark.
    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        if x.len() != self.vars {
            return false;
        }
        let one = Rational::from_integer(1.into());
        let marks_ok = x.iter().zip(&self.marks).all(|(v, m)| {
            !v.is_negative()
                && match m {
                    Mark::Free => true,
                    Mark::Fixed0 => v.is_zero(),
                    Mark::AtLeast1 => *v >= one,
                    Mark::Empty => false,
                }
        });
        marks_ok
            && self.rows.iter().all(|r| {
                let lhs: Rational =
                    r.entries.iter().map(|&(v, c)| &x[v] * Rational::from_integer(c.into())).sum();
                lhs == Rational::from_integer(r.rhs.into())
            })
    }

    /// Deterministic text form: rows sorted, marks by variable.
    pub fn dump(&self) -> String {
        let mut rows: Vec<String> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut s = String::new();
                for &(v, c) in &r.entries {
                    let _ = write!(s, "{c:+}*x{v} ");
                }
                let tag = if Some(i) == self.chi_row { " [chi]" } else { "" };
                let _ = write!(s, "= {}{tag}", Rational::from_integer(r.rhs.into()));
                s
            })
            .collect();
        rows.sort();
        let mut out = format!("vars {}\nrows {}\n", self.vars, rows.len());
        for r in rows {
            out.push_str(&r);
            out.push('\n');
        }
        for (v, m) in self.marks.iter().enumerate() {
            let m = match m {
                Mark::Free => continue,
                Mark::Fixed0 => "= 0",
                Mark::AtLeast1 => ">= 1",
                Mark::Empty => "empty",
            };
            let _ = writeln!(out, "x{v} {m}");
        }
        let _ = writeln!(out, "depth {}", self.stack.len());
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FeasibilityResult {
    pub feasible: bool,
    pub witness: Option<Vec<Rational>>,
    pub pivots: u64,
    /// Times the tableau moved from the `i64` fast path to big rationals.
    pub promotions: u64,
    /// Whether the call finished in big-rational mode.
    pub exact_mode: bool,
    pub cycle_detected: bool,
    /// The configured pivot limit stopped the call before a decision.
    pub pivot_limit_hit: bool,
}

/// One-shot feasibility test with default options.
pub fn feasible(sys: &ConstraintSystem) -> FeasibilityResult {
    Solver::new(sys.clone(), SolverOptions::default()).feasible()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contradictory_marks_are_infeasible() {
        let mut sys = ConstraintSystem::new(2);
        sys.push_mark(1, Mark::Fixed0);
        sys.push_mark(1, Mark::AtLeast1);
        assert_eq!(sys.mark(1), Mark::Empty);
        assert!(!feasible(&sys).feasible);
        sys.pop_mark().unwrap();
        assert!(feasible(&sys).feasible);
    }

    #[test]
    fn empty_system_is_feasible() {
        let r = feasible(&ConstraintSystem::new(0));
        assert!(r.feasible);
        assert_eq!(r.witness, Some(vec![]));
    }

    #[test]
    fn push_pop_restores_dump() {
        let mut sys = ConstraintSystem::new(3);
        sys.add_row(vec![(0, 1), (1, -1), (0, 2)], 0);
        let before = sys.dump();
        sys.push_mark(0, Mark::Fixed0);
        sys.push_mark(2, Mark::AtLeast1);
        assert_ne!(sys.dump(), before);
        sys.pop_mark().unwrap();
        sys.pop_mark().unwrap();
        assert_eq!(sys.dump(), before);
        assert_eq!(sys.pop_mark(), Err(Error::EmptyMarkStack));
    }

    #[test]
    fn small_systems() {
        // x1 + x2 = 0 with x1 >= 1: infeasible.
        let mut sys = ConstraintSystem::new(2);
        sys.add_row(vec![(0, 1), (1, 1)], 0);
        sys.push_mark(0, Mark::AtLeast1);
        assert!(!feasible(&sys).feasible);
        // x1 − x2 = 0 with x1 >= 1: feasible.
        let mut sys = ConstraintSystem::new(2);
        sys.add_row(vec![(0, 1), (1, -1)], 0);
        sys.push_mark(0, Mark::AtLeast1);
        let r = feasible(&sys);
        assert!(r.feasible);
        assert!(sys.is_satisfied_by(r.witness.as_ref().unwrap()));
    }

    #[test]
    fn at_least_one_flips_feasibility() {
        // x0 + x1 = 1: feasible, but not with both at least one.
        let mut sys = ConstraintSystem::new(2);
        sys.add_row(vec![(0, 1), (1, 1)], 1);
        assert!(feasible(&sys).feasible);
        sys.push_mark(0, Mark::AtLeast1);
        assert!(feasible(&sys).feasible);
        sys.push_mark(1, Mark::AtLeast1);
        assert!(!feasible(&sys).feasible);
    }

    #[test]
    fn dump_is_deterministic() {
        let mut sys = ConstraintSystem::new(2);
        sys.add_row(vec![(1, 2)], 3);
        sys.add_row(vec![(0, -1)], 0);
        sys.push_mark(1, Mark::Fixed0);
        assert_eq!(sys.dump(), "vars 2\nrows 2\n+2*x1 = 3\n-1*x0 = 0\nx1 = 0\ndepth 1\n");
    }
}
