//! Brute-force feasibility by basic-solution enumeration, and random small
//! systems for differential testing.
//!
//! A system `{A x = b, x >= 0}` is feasible iff some set of linearly
//! independent columns solves `A_S y = b` with `y >= 0`. This walks those
//! sets depth-first, pruning at the first dependent column, with its own
//! integer Gauss-Jordan elimination.

use num_integer::Integer;
use rand::Rng;

use crate::error::{Error, Result};
use crate::lp::{ConstraintSystem, Mark};

pub const MAX_ORACLE_VARS: usize = 12;

enum Solve {
    Dependent,
    Inconsistent,
    Unique { nonnegative: bool },
}

/// Integer Gauss-Jordan on `[A_S | b]`, each row kept primitive.
fn solve_columns(cols: &[&[i128]], b: &[i128]) -> Result<Solve> {
    let m = b.len();
    let k = cols.len();
    let mut rows: Vec<Vec<i128>> = (0..m)
        .map(|i| {
            let mut r: Vec<i128> = cols.iter().map(|c| c[i]).collect();
            r.push(b[i]);
            r
        })
        .collect();
    let overflow = || Error::OracleTooLarge(k);
    let mut rank = 0;
    for c in 0..k {
        let Some(p) = (rank..m).find(|&r| rows[r][c] != 0) else {
            return Ok(Solve::Dependent);
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        let piv = pivot_row[c];
        for (j, row) in rows.iter_mut().enumerate() {
            if j == rank || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = x
                    .checked_mul(piv)
                    .and_then(|a| y.checked_mul(f).and_then(|b| a.checked_sub(b)))
                    .ok_or_else(overflow)?;
            }
            let g = row.iter().fold(0i128, |g, &x| g.gcd(&x));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    if rows[rank..].iter().any(|r| r[k] != 0) {
        return Ok(Solve::Inconsistent);
    }
    // Row i now reads rows[i][i] * y_i = rows[i][k].
    let nonnegative = (0..k).all(|i| rows[i][k] == 0 || (rows[i][k] > 0) == (rows[i][i] > 0));
    Ok(Solve::Unique { nonnegative })
}

/// Decides feasibility by exhaustive enumeration of basic solutions.
pub fn brute_force_feasible(sys: &ConstraintSystem) -> Result<bool> {
    let n = sys.vars();
    if n > MAX_ORACLE_VARS {
        return Err(Error::OracleTooLarge(n));
    }
    if sys.marks().contains(&Mark::Empty) {
        return Ok(false);
    }
    let m = sys.rows().len();
    let mut dense = vec![vec![0i128; m]; n];
    let mut b: Vec<i128> = sys.rows().iter().map(|r| i128::from(r.rhs)).collect();
    for (i, row) in sys.rows().iter().enumerate() {
        for &(v, c) in &row.entries {
            dense[v][i] = i128::from(c);
        }
    }
    for v in 0..n {
        if sys.mark(v) == Mark::AtLeast1 {
            for i in 0..m {
                b[i] -= dense[v][i];
            }
        }
    }
    let allowed: Vec<usize> = (0..n).filter(|&v| sys.mark(v) != Mark::Fixed0).collect();
    let mut chosen = Vec::new();
    search(&dense, &b, &allowed, 0, &mut chosen)
}

fn search(dense: &[Vec<i128>], b: &[i128], allowed: &[usize], from: usize, chosen: &mut Vec<usize>) -> Result<bool> {
    let cols: Vec<&[i128]> = chosen.iter().map(|&v| dense[v].as_slice()).collect();
    match solve_columns(&cols, b)? {
        Solve::Dependent => return Ok(false),
        Solve::Unique { nonnegative: true } => return Ok(true),
        _ => {}
    }
    if chosen.len() == b.len() {
        return Ok(false);
    }
    for i in from..allowed.len() {
        chosen.push(allowed[i]);
        let found = search(dense, b, allowed, i + 1, chosen)?;
        chosen.pop();
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A random system with `vars` variables and `rows` rows, coefficients in
/// `-3..=3`, and random marks. Roughly half are built around a planted
/// non-negative solution so both outcomes are well represented.
pub fn random_system<R: Rng>(rng: &mut R, vars: usize, rows: usize) -> ConstraintSystem {
    let mut sys = ConstraintSystem::new(vars);
    let marks: Vec<Mark> = (0..vars)
        .map(|_| match rng.gen_range(0..10) {
            0 | 1 => Mark::Fixed0,
            2 | 3 => Mark::AtLeast1,
            _ => Mark::Free,
        })
        .collect();
    let planted: Option<Vec<i64>> = rng.gen_bool(0.5).then(|| {
        marks
            .iter()
            .map(|m| match m {
                Mark::Fixed0 => 0,
                Mark::AtLeast1 => rng.gen_range(1..=3),
                _ => rng.gen_range(0..=3),
            })
            .collect()
    });
    for _ in 0..rows {
        let mut entries = Vec::new();
        for v in 0..vars {
            if rng.gen_bool(0.6) {
                entries.push((v, rng.gen_range(-3..=3)));
            }
        }
        let rhs = match &planted {
            Some(x) => entries.iter().map(|&(v, c): &(usize, i64)| c * x[v]).sum(),
            None => rng.gen_range(-3..=3),
        };
        sys.add_row(entries, rhs);
    }
    for (v, m) in marks.into_iter().enumerate() {
        if m != Mark::Free {
            sys.push_mark(v, m);
        }
    }
    sys
}

/// An infeasible system on which the default pivoting (most negative basic
/// value leaves, lowest eligible column enters) revisits a basis forever.
/// Found by random search with cycle detection off.
pub fn cycling_instance() -> ConstraintSystem {
    let rows: [(&[(usize, i64)], i64); 6] = [
        (&[(0, -4), (2, 3), (3, -3), (4, -1), (6, 2), (7, 2)], 1),
        (&[(2, -3), (4, 1), (5, -1), (7, 4), (8, -4)], 0),
        (&[(0, 4), (1, 2), (3, 4), (6, 1), (9, -3)], 0),
        (&[(1, 2), (2, -1), (3, -3), (4, 1), (5, 3), (7, -1), (9, 1)], 0),
        (&[(0, -3), (1, -3), (2, -2), (3, -2), (4, -4), (8, -1), (9, -1)], 0),
        (&[(1, -2), (3, 4), (5, 3), (7, 1), (8, -3), (9, 3)], 0),
    ];
    let mut sys = ConstraintSystem::new(10);
    for (entries, rhs) in rows {
        sys.add_row(entries.to_vec(), rhs);
    }
    sys
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn handcrafted() {
        let mut sys = ConstraintSystem::new(2);
        sys.add_row(vec![(0, 1), (1, 1)], 0);
        sys.push_mark(0, Mark::AtLeast1);
        assert!(!brute_force_feasible(&sys).unwrap());

        let mut sys = ConstraintSystem::new(2);
        sys.add_row(vec![(0, 1), (1, -1)], 0);
        sys.push_mark(0, Mark::AtLeast1);
        assert!(brute_force_feasible(&sys).unwrap());

        let mut sys = ConstraintSystem::new(3);
        sys.add_row(vec![(0, 2), (1, 3)], 1);
        assert!(brute_force_feasible(&sys).unwrap());
        sys.push_mark(0, Mark::Fixed0);
        assert!(brute_force_feasible(&sys).unwrap());
        sys.push_mark(1, Mark::Fixed0);
        assert!(!brute_force_feasible(&sys).unwrap());
    }

    #[test]
    fn size_guard() {
        assert!(matches!(
            brute_force_feasible(&ConstraintSystem::new(MAX_ORACLE_VARS + 1)),
            Err(Error::OracleTooLarge(_))
        ));
    }

    #[test]
    fn cycling_instance_cycles_without_detection() {
        use crate::lp::{Solver, SolverOptions};
        let sys = cycling_instance();
        assert!(!brute_force_feasible(&sys).unwrap());
        let off = SolverOptions { detect_cycles: false, pivot_limit: Some(10_000), ..SolverOptions::default() };
        assert!(Solver::new(sys.clone(), off).feasible().pivot_limit_hit);
        let r = Solver::new(sys, SolverOptions::default()).feasible();
        assert!(r.cycle_detected && !r.feasible && !r.pivot_limit_hit);
    }
}
