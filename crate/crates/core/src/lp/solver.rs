//! Revised dual simplex for pure feasibility.
//!
//! With a zero objective every basis is dual feasible, so the solver keeps
//! its basis between calls and simply restarts from it after marks change.
//! Marks are folded in as column removals (`Fixed0`) and bound shifts
//! (`AtLeast1`: `x = 1 + x'`). The explicit basis inverse lives in `i64`
//! rationals while they fit, and is rebuilt exactly from the committed basis
//! whenever an operation would overflow.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_traits::{One, Zero};

use super::scalar::{Scalar, SmallRat};
use super::{ConstraintSystem, FeasibilityResult, Mark};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// Leave on the most negative basic value, ties to the lowest variable.
    #[default]
    Dantzig,
    /// Leave on the lowest-indexed negative basic variable.
    Bland,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    /// Skip the `i64` fast path entirely.
    pub force_exact: bool,
    pub rule: PivotRule,
    /// Brent cycle detection with a switch to Bland's rule. Only turned off
    /// to demonstrate cycling.
    pub detect_cycles: bool,
    /// Abandon a call after this many pivots (only meaningful when cycle
    /// detection is off).
    pub pivot_limit: Option<u64>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { force_exact: false, rule: PivotRule::Dantzig, detect_cycles: true, pivot_limit: None }
    }
}

struct Overflow;

type Fallible<T> = Result<T, Overflow>;

fn ok<T>(v: Option<T>) -> Fallible<T> {
    v.ok_or(Overflow)
}

enum Inverse {
    Small(Vec<Vec<SmallRat>>),
    Big(Vec<Vec<Rational>>),
}

#[derive(Default)]
struct Brent {
    saved: Option<(u64, Vec<usize>)>,
    power: u64,
    lam: u64,
}

impl Brent {
    fn start(&mut self, basis: &[usize]) {
        self.saved = Some(basis_key(basis));
        self.power = 1;
        self.lam = 0;
    }

    /// Records the next basis; true if it repeats an earlier one.
    fn step(&mut self, basis: &[usize]) -> bool {
        let cur = basis_key(basis);
        if self.saved.as_ref() == Some(&cur) {
            return true;
        }
        self.lam += 1;
        if self.lam == self.power {
            self.saved = Some(cur);
            self.power *= 2;
            self.lam = 0;
        }
        false
    }
}

fn basis_key(basis: &[usize]) -> (u64, Vec<usize>) {
    let mut set = basis.to_vec();
    set.sort_unstable();
    let mut h = DefaultHasher::new();
    set.hash(&mut h);
    (h.finish(), set)
}

#[derive(Default)]
struct Call {
    rule: PivotRule,
    brent: Brent,
    pivots: u64,
    promotions: u64,
    cycle_detected: bool,
    limit_hit: bool,
    main_loop: bool,
}

enum Outcome {
    Feasible(Vec<Rational>),
    Infeasible,
}

/// A stateful, incremental feasibility solver over one constraint system.
pub struct Solver {
    sys: ConstraintSystem,
    opts: SolverOptions,
    consistent: bool,
    /// Per variable: `(row position, coefficient)` over the independent rows.
    cols: Vec<Vec<(usize, i64)>>,
    rhs: Vec<i64>,
    basis: Vec<usize>,
    position: Vec<Option<usize>>,
    inverse: Inverse,
    total_pivots: u64,
    total_promotions: u64,
    calls: u64,
}

impl Solver {
    pub fn new(sys: ConstraintSystem, opts: SolverOptions) -> Self {
        let (kept, pivots, consistent) = independent_rows(&sys);
        let mut cols = vec![Vec::new(); sys.vars()];
        let mut rhs = Vec::with_capacity(kept.len());
        for (pos, &r) in kept.iter().enumerate() {
            let row = &sys.rows()[r];
            for &(v, c) in &row.entries {
                cols[v].push((pos, c));
            }
            rhs.push(row.rhs);
        }
        let mut position = vec![None; sys.vars()];
        for (pos, &v) in pivots.iter().enumerate() {
            position[v] = Some(pos);
        }
        let mut solver = Solver {
            sys,
            opts,
            consistent,
            cols,
            rhs,
            basis: pivots,
            position,
            inverse: Inverse::Big(Vec::new()),
            total_pivots: 0,
            total_promotions: 0,
            calls: 0,
        };
        solver.inverse = Inverse::Big(solver.exact_inverse());
        solver.try_demote();
        solver
    }

    pub fn system(&self) -> &ConstraintSystem {
        &self.sys
    }

    pub fn push_mark(&mut self, var: usize, mark: Mark) {
        self.sys.push_mark(var, mark);
    }

    pub fn pop_mark(&mut self) -> crate::Result<()> {
        self.sys.pop_mark()
    }

    pub fn truncate(&mut self, depth: usize) {
        self.sys.truncate(depth);
    }

    pub fn total_pivots(&self) -> u64 {
        self.total_pivots
    }

    pub fn total_promotions(&self) -> u64 {
        self.total_promotions
    }

    pub fn calls(&self) -> u64 {
        self.calls
    }

    /// Decides feasibility of the system under its current marks.
    pub fn feasible(&mut self) -> FeasibilityResult {
        self.calls += 1;
        let mut call = Call { rule: self.opts.rule, ..Call::default() };
        let outcome = if !self.consistent || self.sys.marks().contains(&Mark::Empty) {
            Outcome::Infeasible
        } else {
            self.try_demote();
            loop {
                let r = match &mut self.inverse {
                    Inverse::Small(_) => self.run_small(&mut call),
                    Inverse::Big(_) => self.run_big(&mut call),
                };
                match r {
                    Ok(outcome) => break outcome,
                    Err(Overflow) => {
                        call.promotions += 1;
                        self.inverse = Inverse::Big(self.exact_inverse());
                    }
                }
            }
        };
        self.total_pivots += call.pivots;
        self.total_promotions += call.promotions;
        let (feasible, witness) = match outcome {
            Outcome::Feasible(w) => {
                debug_assert!(self.sys.is_satisfied_by(&w), "witness fails the system");
                (true, Some(w))
            }
            Outcome::Infeasible => (false, None),
        };
        FeasibilityResult {
            feasible,
            witness,
            pivots: call.pivots,
            promotions: call.promotions,
            exact_mode: matches!(self.inverse, Inverse::Big(_)),
            cycle_detected: call.cycle_detected,
            pivot_limit_hit: false,
        }
        .with_limit(call.limit_hit)
    }

    fn run_small(&mut self, call: &mut Call) -> Fallible<Outcome> {
        let Inverse::Small(mut inv) = std::mem::replace(&mut self.inverse, Inverse::Big(Vec::new())) else {
            unreachable!()
        };
        let r = self.run(&mut inv, call);
        self.inverse = Inverse::Small(inv);
        r
    }

    fn run_big(&mut self, call: &mut Call) -> Fallible<Outcome> {
        let Inverse::Big(mut inv) = std::mem::replace(&mut self.inverse, Inverse::Big(Vec::new())) else {
            unreachable!()
        };
        let r = self.run(&mut inv, call);
        self.inverse = Inverse::Big(inv);
        r
    }

    fn try_demote(&mut self) {
        if self.opts.force_exact {
            return;
        }
        if let Inverse::Big(big) = &self.inverse {
            let small: Option<Vec<Vec<SmallRat>>> =
                big.iter().map(|row| row.iter().map(SmallRat::from_big).collect()).collect();
            if let Some(small) = small {
                self.inverse = Inverse::Small(small);
            }
        }
    }

    /// Basis inverse recomputed from scratch for the current basis.
    fn exact_inverse(&self) -> Vec<Vec<Rational>> {
        let m = self.basis.len();
        let mut b = vec![vec![Rational::zero(); m]; m];
        for (k, &v) in self.basis.iter().enumerate() {
            for &(pos, c) in &self.cols[v] {
                b[pos][k] = Rational::from_integer(c.into());
            }
        }
        invert(b).expect("basis matrix is invertible")
    }

    fn allowed(&self, v: usize) -> bool {
        !matches!(self.sys.mark(v), Mark::Fixed0 | Mark::Empty)
    }

    fn run<S: Scalar>(&mut self, inv: &mut [Vec<S>], call: &mut Call) -> Fallible<Outcome> {
        let m = self.basis.len();
        // Right-hand side after shifting out the AtLeast1 variables.
        let mut shifted = self.rhs.clone();
        for (v, col) in self.cols.iter().enumerate() {
            if self.sys.mark(v) == Mark::AtLeast1 {
                for &(pos, c) in col {
                    shifted[pos] -= c;
                }
            }
        }
        let mut beta = Vec::with_capacity(m);
        for row in inv.iter() {
            let mut acc = S::nil();
            for (x, &b) in row.iter().zip(&shifted) {
                if b != 0 && !x.is_nil() {
                    acc = ok(acc.checked_add(&ok(x.checked_mul_int(b))?))?;
                }
            }
            beta.push(acc);
        }

        if !call.main_loop {
            // Drive Fixed0 variables out of the basis where possible.
            for r in 0..m {
                if self.allowed(self.basis[r]) {
                    continue;
                }
                let mut entering = None;
                for j in 0..self.sys.vars() {
                    if self.position[j].is_none() && self.allowed(j) && !self.alpha(inv, r, j)?.is_nil() {
                        entering = Some(j);
                        break;
                    }
                }
                if let Some(j) = entering {
                    self.pivot(inv, &mut beta, r, j, call)?;
                }
            }
            // A Fixed0 variable stuck in the basis must already be zero.
            for r in 0..m {
                if !self.allowed(self.basis[r]) && !beta[r].is_nil() {
                    return Ok(Outcome::Infeasible);
                }
            }
            call.main_loop = true;
            call.brent.start(&self.basis);
        }

        loop {
            let mut leave: Option<usize> = None;
            for r in 0..m {
                if !beta[r].is_neg() {
                    continue;
                }
                leave = match leave {
                    None => Some(r),
                    Some(best) => {
                        let better = match call.rule {
                            PivotRule::Dantzig => match beta[r].cmp_exact(&beta[best]) {
                                std::cmp::Ordering::Less => true,
                                std::cmp::Ordering::Equal => self.basis[r] < self.basis[best],
                                std::cmp::Ordering::Greater => false,
                            },
                            PivotRule::Bland => self.basis[r] < self.basis[best],
                        };
                        Some(if better { r } else { best })
                    }
                };
            }
            let Some(r) = leave else {
                let mut x = vec![Rational::zero(); self.sys.vars()];
                for (v, xv) in x.iter_mut().enumerate() {
                    if self.sys.mark(v) == Mark::AtLeast1 {
                        *xv = Rational::one();
                    }
                }
                for (r, &v) in self.basis.iter().enumerate() {
                    x[v] += beta[r].to_big();
                }
                return Ok(Outcome::Feasible(x));
            };

            let mut entering = None;
            for j in 0..self.sys.vars() {
                if self.position[j].is_none() && self.allowed(j) && self.alpha(inv, r, j)?.is_neg() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else {
                return Ok(Outcome::Infeasible);
            };
            self.pivot(inv, &mut beta, r, j, call)?;

            if let Some(limit) = self.opts.pivot_limit {
                if call.pivots >= limit {
                    call.limit_hit = true;
                    return Ok(Outcome::Infeasible);
                }
            }
        }
    }

    /// Entry `(r, j)` of `B⁻¹ A`.
    fn alpha<S: Scalar>(&self, inv: &[Vec<S>], r: usize, j: usize) -> Fallible<S> {
        let mut acc = S::nil();
        for &(pos, c) in &self.cols[j] {
            let x = &inv[r][pos];
            if !x.is_nil() {
                acc = ok(acc.checked_add(&ok(x.checked_mul_int(c))?))?;
            }
        }
        Ok(acc)
    }

    fn pivot<S: Scalar>(
        &mut self,
        inv: &mut [Vec<S>],
        beta: &mut [S],
        r: usize,
        j: usize,
        call: &mut Call,
    ) -> Fallible<()> {
        let m = self.basis.len();
        let mut d = Vec::with_capacity(m);
        for i in 0..m {
            d.push(self.alpha(inv, i, j)?);
        }

        // Commit the basis change before the arithmetic: if the update
        // overflows, the inverse is rebuilt exactly from this basis.
        let leaving = self.basis[r];
        self.basis[r] = j;
        self.position[leaving] = None;
        self.position[j] = Some(r);
        call.pivots += 1;
        if call.main_loop && call.rule == PivotRule::Dantzig && self.opts.detect_cycles && call.brent.step(&self.basis) {
            call.cycle_detected = true;
            call.rule = PivotRule::Bland;
        }

        let piv = d[r].clone();
        let theta = ok(beta[r].checked_div(&piv))?;
        let pivot_row: Vec<S> = inv[r].iter().map(|x| ok(x.checked_div(&piv))).collect::<Fallible<_>>()?;
        for i in 0..m {
            if i == r || d[i].is_nil() {
                continue;
            }
            beta[i] = ok(beta[i].checked_sub(&ok(d[i].checked_mul(&theta))?))?;
            for (x, p) in inv[i].iter_mut().zip(&pivot_row) {
                if !p.is_nil() {
                    *x = ok(x.checked_sub(&ok(d[i].checked_mul(p))?))?;
                }
            }
        }
        beta[r] = theta;
        inv[r].clone_from_slice(&pivot_row);
        Ok(())
    }
}

impl FeasibilityResult {
    fn with_limit(mut self, hit: bool) -> Self {
        if hit {
            self.feasible = false;
            self.witness = None;
        }
        self.pivot_limit_hit = hit;
        self
    }
}

/// Picks a maximal independent subset of rows by exact elimination. Returns
/// the kept row indices, one pivot variable per kept row (forming an
/// invertible basis), and whether the dropped rows are consistent.
fn independent_rows(sys: &ConstraintSystem) -> (Vec<usize>, Vec<usize>, bool) {
    let vars = sys.vars();
    let mut reduced: Vec<(Vec<Rational>, usize)> = Vec::new();
    let mut kept = Vec::new();
    let mut pivots = Vec::new();
    let mut consistent = true;
    for (r, row) in sys.rows().iter().enumerate() {
        let mut dense = vec![Rational::zero(); vars + 1];
        for &(v, c) in &row.entries {
            dense[v] = Rational::from_integer(c.into());
        }
        dense[vars] = Rational::from_integer(row.rhs.into());
        for (prev, p) in &reduced {
            if dense[*p].is_nil() {
                continue;
            }
            let f = &dense[*p] / &prev[*p];
            for (x, y) in dense.iter_mut().zip(prev) {
                if !y.is_nil() {
                    *x -= &f * y;
                }
            }
        }
        match dense[..vars].iter().position(|x| !x.is_nil()) {
            Some(p) => {
                kept.push(r);
                pivots.push(p);
                reduced.push((dense, p));
            }
            None => consistent &= dense[vars].is_nil(),
        }
    }
    (kept, pivots, consistent)
}

/// Gauss-Jordan inverse of a square matrix, `None` if singular.
fn invert(mut a: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let m = a.len();
    let mut inv: Vec<Vec<Rational>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    for col in 0..m {
        let p = (col..m).find(|&r| !a[r][col].is_nil())?;
        a.swap(col, p);
        inv.swap(col, p);
        let f = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &f;
        }
        for x in inv[col].iter_mut() {
            *x /= &f;
        }
        for r in 0..m {
            if r == col || a[r][col].is_nil() {
                continue;
            }
            let g = a[r][col].clone();
            let (pa, pi) = (a[col].clone(), inv[col].clone());
            for (x, y) in a[r].iter_mut().zip(&pa) {
                if !y.is_nil() {
                    *x -= &g * y;
                }
            }
            for (x, y) in inv[r].iter_mut().zip(&pi) {
                if !y.is_nil() {
                    *x -= &g * y;
                }
            }
        }
    }
    Some(inv)
}
