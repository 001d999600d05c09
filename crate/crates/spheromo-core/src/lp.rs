//! Exact linear programming over the rationals.
//!
//! Two-phase primal simplex on a dense tableau with Bland's pivoting rule,
//! which guarantees termination.  Problem sizes here are tiny (dozens of
//! rows), so the dense representation is the right trade-off.

use crate::num::Rat;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rel: Rel,
    pub rhs: Rat,
}

impl Constraint {
    pub fn le(coeffs: Vec<Rat>, rhs: Rat) -> Constraint {
        Constraint { coeffs, rel: Rel::Le, rhs }
    }

    pub fn ge(coeffs: Vec<Rat>, rhs: Rat) -> Constraint {
        Constraint { coeffs, rel: Rel::Ge, rhs }
    }

    pub fn eq(coeffs: Vec<Rat>, rhs: Rat) -> Constraint {
        Constraint { coeffs, rel: Rel::Eq, rhs }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    /// Optimal objective value and an optimal point.
    Optimal(Rat, Vec<Rat>),
}

/// Maximize `objective . x` subject to `constraints`.  `nonneg[i]` marks
/// variable `i` as constrained to `x_i >= 0`; other variables are free.
pub fn maximize(objective: &[Rat], constraints: &[Constraint], nonneg: &[bool]) -> LpOutcome {
    let nvars = objective.len();
    debug_assert_eq!(nonneg.len(), nvars);
    debug_assert!(constraints.iter().all(|c| c.coeffs.len() == nvars));

    // Column layout: each free variable splits into a (+) and a (-) column.
    let mut plus_col = vec![0usize; nvars];
    let mut minus_col = vec![None; nvars];
    let mut ncols = 0usize;
    for i in 0..nvars {
        plus_col[i] = ncols;
        ncols += 1;
        if !nonneg[i] {
            minus_col[i] = Some(ncols);
            ncols += 1;
        }
    }
    let split_cols = ncols;

    let expand = |coeffs: &[Rat]| -> Vec<Rat> {
        let mut row = vec![Rat::zero(); split_cols];
        for (i, c) in coeffs.iter().enumerate() {
            row[plus_col[i]] = c.clone();
            if let Some(m) = minus_col[i] {
                row[m] = -c.clone();
            }
        }
        row
    };

    // Rows in `a x (+ slack) = b` form, slacks appended after split columns.
    let nslack = constraints
        .iter()
        .filter(|c| c.rel != Rel::Eq)
        .count();
    ncols += nslack;
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(constraints.len());
    let mut rhs: Vec<Rat> = Vec::with_capacity(constraints.len());
    let mut slack_at = split_cols;
    for c in constraints {
        let mut row = expand(&c.coeffs);
        row.resize(ncols, Rat::zero());
        match c.rel {
            Rel::Le => {
                row[slack_at] = Rat::one();
                slack_at += 1;
            }
            Rel::Ge => {
                row[slack_at] = -Rat::one();
                slack_at += 1;
            }
            Rel::Eq => {}
        }
        let mut b = c.rhs.clone();
        if b.is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            b = -b;
        }
        rows.push(row);
        rhs.push(b);
    }

    // Phase 1: artificial basis, minimize the artificial total.
    let m = rows.len();
    let art_base = ncols;
    for (r, row) in rows.iter_mut().enumerate() {
        row.resize(ncols + m, Rat::zero());
        row[art_base + r] = Rat::one();
    }
    let total_cols = ncols + m;
    let mut basis: Vec<usize> = (0..m).map(|r| art_base + r).collect();
    let mut obj = vec![Rat::zero(); total_cols + 1];
    for c in art_base..total_cols {
        obj[c] = Rat::one();
    }
    for r in 0..m {
        price_out(&mut obj, &rows[r], &rhs[r]);
    }
    run_simplex(&mut rows, &mut rhs, &mut basis, &mut obj, total_cols);
    if !obj[total_cols].is_zero() {
        return LpOutcome::Infeasible;
    }

    // Drive out any artificial still basic at zero; drop redundant rows.
    let mut keep = vec![true; m];
    for r in 0..m {
        if basis[r] < art_base {
            continue;
        }
        if let Some(j) = (0..ncols).find(|&j| !rows[r][j].is_zero()) {
            pivot_full(&mut rows, &mut rhs, &mut basis, &mut obj, r, j);
        } else {
            keep[r] = false;
        }
    }
    retain_by_mask(&mut rows, &keep);
    retain_by_mask(&mut rhs, &keep);
    retain_by_mask(&mut basis, &keep);
    for row in rows.iter_mut() {
        row.truncate(ncols);
    }

    // Phase 2: real objective over the retained columns.
    let mut obj = vec![Rat::zero(); ncols + 1];
    let c_expanded = expand(objective);
    for (j, c) in c_expanded.iter().enumerate() {
        obj[j] = -c.clone();
    }
    for r in 0..rows.len() {
        if !obj[basis[r]].is_zero() {
            let f = obj[basis[r]].clone();
            for j in 0..ncols {
                let t = &rows[r][j] * &f;
                obj[j] -= t;
            }
            let t = &rhs[r] * &f;
            obj[ncols] -= t;
        }
    }
    if !run_simplex(&mut rows, &mut rhs, &mut basis, &mut obj, ncols) {
        return LpOutcome::Unbounded;
    }

    let mut col_value = vec![Rat::zero(); ncols];
    for (r, &b) in basis.iter().enumerate() {
        col_value[b] = rhs[r].clone();
    }
    let point: Vec<Rat> = (0..nvars)
        .map(|i| {
            let mut v = col_value[plus_col[i]].clone();
            if let Some(mc) = minus_col[i] {
                v -= &col_value[mc];
            }
            v
        })
        .collect();
    LpOutcome::Optimal(obj[ncols].clone(), point)
}

/// A feasible point, if one exists.
pub fn feasible_point(constraints: &[Constraint], nonneg: &[bool]) -> Option<Vec<Rat>> {
    let zeros = vec![Rat::zero(); nonneg.len()];
    match maximize(&zeros, constraints, nonneg) {
        LpOutcome::Optimal(_, p) => Some(p),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
    }
}

/// Subtract `row` (scaled by its basic cost, already 1 in phase 1) from the
/// objective so the basic column gets reduced cost zero.
fn price_out(obj: &mut [Rat], row: &[Rat], rhs: &Rat) {
    let n = row.len();
    for j in 0..n {
        let t = row[j].clone();
        obj[j] -= t;
    }
    let last = obj.len() - 1;
    obj[last] -= rhs;
}

/// Bland's rule simplex.  Returns false on unboundedness.  Only columns
/// `< active_cols` are eligible to enter.
fn run_simplex(
    rows: &mut [Vec<Rat>],
    rhs: &mut [Rat],
    basis: &mut [usize],
    obj: &mut [Rat],
    active_cols: usize,
) -> bool {
    loop {
        let Some(enter) = (0..active_cols).find(|&j| obj[j].is_negative()) else {
            return true;
        };
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for r in 0..rows.len() {
            if !rows[r][enter].is_positive() {
                continue;
            }
            let ratio = &rhs[r] / &rows[r][enter];
            let better = match &best {
                None => true,
                Some(b) => {
                    ratio < *b
                        || (ratio == *b
                            && basis[r] < basis[leave.expect("leave set with best")])
                }
            };
            if better {
                best = Some(ratio);
                leave = Some(r);
            }
        }
        let Some(r) = leave else {
            return false;
        };
        pivot_full(rows, rhs, basis, obj, r, enter);
    }
}

fn pivot_full(
    rows: &mut [Vec<Rat>],
    rhs: &mut [Rat],
    basis: &mut [usize],
    obj: &mut [Rat],
    r: usize,
    c: usize,
) {
    let inv = rows[r][c].clone();
    for x in rows[r].iter_mut() {
        *x /= &inv;
    }
    rhs[r] /= &inv;
    let ncols = rows[r].len();
    for i in 0..rows.len() {
        if i == r || rows[i][c].is_zero() {
            continue;
        }
        let f = rows[i][c].clone();
        for j in 0..ncols {
            let t = &rows[r][j] * &f;
            rows[i][j] -= t;
        }
        let t = &rhs[r] * &f;
        rhs[i] -= t;
    }
    if !obj[c].is_zero() {
        let f = obj[c].clone();
        for j in 0..ncols {
            let t = &rows[r][j] * &f;
            obj[j] -= t;
        }
        let t = &rhs[r] * &f;
        obj[ncols] -= t;
    }
    basis[r] = c;
}

fn retain_by_mask<T>(v: &mut Vec<T>, keep: &[bool]) {
    let mut i = 0;
    v.retain(|_| {
        let k = keep[i];
        i += 1;
        k
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat_int, vec_rat};

    fn assert_optimal(out: LpOutcome, value: i64) -> Vec<Rat> {
        match out {
            LpOutcome::Optimal(v, p) => {
                assert_eq!(v, rat_int(value));
                p
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn box_maximum() {
        let cons = vec![
            Constraint::le(vec_rat(&[1, 0]), rat_int(1)),
            Constraint::le(vec_rat(&[0, 1]), rat_int(2)),
        ];
        let p = assert_optimal(maximize(&vec_rat(&[1, 1]), &cons, &[true, true]), 3);
        assert_eq!(p, vec_rat(&[1, 2]));
    }

    #[test]
    fn free_variable_two_sided() {
        let cons = vec![
            Constraint::le(vec_rat(&[1]), rat_int(5)),
            Constraint::ge(vec_rat(&[1]), rat_int(-10)),
        ];
        let p = assert_optimal(maximize(&vec_rat(&[1]), &cons, &[false]), 5);
        assert_eq!(p, vec_rat(&[5]));
        let q = assert_optimal(maximize(&vec_rat(&[-1]), &cons, &[false]), 10);
        assert_eq!(q, vec_rat(&[-10]));
    }

    #[test]
    fn detects_infeasibility() {
        let cons = vec![
            Constraint::le(vec_rat(&[1]), rat_int(0)),
            Constraint::ge(vec_rat(&[1]), rat_int(1)),
        ];
        assert_eq!(maximize(&vec_rat(&[1]), &cons, &[false]), LpOutcome::Infeasible);
        assert!(feasible_point(&cons, &[false]).is_none());
    }

    #[test]
    fn detects_unboundedness() {
        assert_eq!(maximize(&vec_rat(&[1]), &[], &[false]), LpOutcome::Unbounded);
        let cons = vec![Constraint::ge(vec_rat(&[1, -1]), rat_int(0))];
        assert_eq!(
            maximize(&vec_rat(&[1, 0]), &cons, &[true, true]),
            LpOutcome::Unbounded
        );
    }

    #[test]
    fn equality_rows_and_redundancy() {
        let cons = vec![
            Constraint::eq(vec_rat(&[1, 1]), rat_int(1)),
            Constraint::eq(vec_rat(&[1, 1]), rat_int(1)),
        ];
        let p = assert_optimal(maximize(&vec_rat(&[1, 0]), &cons, &[true, true]), 1);
        assert_eq!(p, vec_rat(&[1, 0]));
    }

    #[test]
    fn negative_rhs_normalization() {
        // -x <= -3 with x <= 4: feasible band [3, 4].
        let cons = vec![
            Constraint::le(vec_rat(&[-1]), rat_int(-3)),
            Constraint::le(vec_rat(&[1]), rat_int(4)),
        ];
        let p = assert_optimal(maximize(&vec_rat(&[-1]), &cons, &[true]), -3);
        assert_eq!(p, vec_rat(&[3]));
    }

    #[test]
    fn simplex_distribution_point() {
        // Barycentric feasibility: t0+t1+t2 = 1, t >= 0, plus a pin t0 = 1/2.
        let cons = vec![
            Constraint::eq(vec_rat(&[1, 1, 1]), rat_int(1)),
            Constraint::eq(vec_rat(&[2, 0, 0]), rat_int(1)),
        ];
        let p = feasible_point(&cons, &[true, true, true]).unwrap();
        assert_eq!(&p[0] + &p[1] + &p[2], rat_int(1));
        assert_eq!(p[0], crate::num::rat(1, 2));
    }
}
