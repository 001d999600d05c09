//! Exact dense linear algebra over the rationals, plus sublattices of `Z^n`.
//!
//! Matrices are row-major `Vec<Vec<Rat>>`.  Sizes stay small (ranks up to
//! eight or so), so plain fraction-free-less Gaussian elimination over
//! `BigRational` is both simple and fast enough.

use crate::num::{int_to_rat_vec, is_primitive_int_coords, Int, Rat};
use crate::{CoreError, CoreResult};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row, in order.
pub fn rref(m: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(m: &[Vec<Rat>]) -> usize {
    let mut c = m.to_vec();
    rref(&mut c).len()
}

/// Solve `x * basis = target` for `x` (coordinates of `target` in the row
/// span of `basis`).  Requires the rows of `basis` to be linearly
/// independent; returns `None` when `target` is outside the span.
pub fn row_coordinates(basis: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let k = basis.len();
    if k == 0 {
        return if target.iter().all(Rat::is_zero) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let n = basis[0].len();
    debug_assert_eq!(target.len(), n);
    // Augmented system over the transpose: columns are basis rows.
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|j| {
            let mut row: Vec<Rat> = basis.iter().map(|b| b[j].clone()).collect();
            row.push(target[j].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    // Inconsistent iff some pivot lands in the augmented column.
    if pivots.iter().any(|&c| c == k) {
        return None;
    }
    debug_assert_eq!(pivots.len(), k, "basis rows must be independent");
    let mut x = vec![Rat::zero(); k];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = aug[row][k].clone();
    }
    Some(x)
}

/// Like [`kernel`], but an empty row set yields the standard basis of the
/// full `cols`-dimensional space instead of an empty answer.
pub fn kernel_or_full(m: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    if m.is_empty() {
        let mut basis = Vec::with_capacity(cols);
        for i in 0..cols {
            let mut v = vec![Rat::zero(); cols];
            v[i] = Rat::one();
            basis.push(v);
        }
        return basis;
    }
    kernel(m)
}

/// Basis of the right kernel `{x : m * x = 0}`.
pub fn kernel(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if m.is_empty() {
        return Vec::new(); // caller handles the "everything" case
    }
    let cols = m[0].len();
    let mut c = m.to_vec();
    let pivots = rref(&mut c);
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; cols];
        for &p in &pivots {
            s[p] = true;
        }
        s
    };
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -c[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Determinant of a square rational matrix.
pub fn det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    if n == 0 {
        return Rat::one();
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut a = m.to_vec();
    let mut sign = Rat::one();
    let mut acc = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            sign = -sign;
        }
        acc *= &a[c][c];
        let inv = a[c][c].clone();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &inv;
            for j in c..n {
                let t = &a[c][j] * &f;
                a[i][j] -= t;
            }
        }
    }
    acc * sign
}

pub fn det_int(m: &[Vec<Int>]) -> Int {
    let rows: Vec<Vec<Rat>> = m.iter().map(|r| int_to_rat_vec(r)).collect();
    let d = det(&rows);
    debug_assert!(d.is_integer());
    d.to_integer()
}

/// Affine rank of a point set: the rank of the differences to the first
/// point.  A single point has affine rank 0.
pub fn affine_rank(points: &[Vec<Rat>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| crate::num::sub_vec(p, base))
        .collect();
    rank(&diffs)
}

/// A full-rank-by-construction sublattice of `Z^n`, described by an ordered
/// basis.  Coordinates of members are taken with respect to that basis, so
/// functionals on the lattice are vectors in the dual basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    basis: Vec<Vec<Int>>,
    ambient: usize,
}

impl Lattice {
    /// `basis` rows must be linearly independent integer vectors (an empty
    /// list gives the rank-0 lattice).
    pub fn new(basis: Vec<Vec<Int>>, ambient: usize) -> CoreResult<Lattice> {
        for b in &basis {
            if b.len() != ambient {
                return Err(CoreError::InvalidInput(format!(
                    "lattice basis row has length {} instead of {ambient}",
                    b.len()
                )));
            }
        }
        let rows: Vec<Vec<Rat>> = basis.iter().map(|r| int_to_rat_vec(r)).collect();
        if rank(&rows) != basis.len() {
            return Err(CoreError::InvalidInput(
                "lattice basis rows are linearly dependent".into(),
            ));
        }
        Ok(Lattice { basis, ambient })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Int>] {
        &self.basis
    }

    pub fn basis_rat(&self) -> Vec<Vec<Rat>> {
        self.basis.iter().map(|r| int_to_rat_vec(r)).collect()
    }

    /// Rational coordinates of `v` in the basis, or `None` if `v` is outside
    /// the rational span.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        row_coordinates(&self.basis_rat(), v)
    }

    /// Ambient vector with the given basis coordinates.
    pub fn from_coordinates(&self, coords: &[Rat]) -> Vec<Rat> {
        debug_assert_eq!(coords.len(), self.rank());
        let mut out = vec![Rat::zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(row) {
                *o += c * Rat::from_integer(x.clone());
            }
        }
        out
    }

    /// Membership: integral coordinates in the basis.
    pub fn contains(&self, v: &[Rat]) -> bool {
        match self.coordinates(v) {
            Some(c) => c.iter().all(Rat::is_integer),
            None => false,
        }
    }

    /// Primitive member: integral coordinates with gcd 1.
    pub fn is_primitive(&self, v: &[Rat]) -> bool {
        match self.coordinates(v) {
            Some(c) => is_primitive_int_coords(&c),
            None => false,
        }
    }
}

/// Row-style Hermite normal form (nonnegative pivots, entries above a pivot
/// reduced); returns the nonzero rows.  Used for canonical lattice equality.
pub fn hnf(rows: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut m: Vec<Vec<Int>> = rows.to_vec();
    if m.is_empty() {
        return m;
    }
    let cols = m[0].len();
    let mut r = 0usize;
    for c in 0..cols {
        // Euclid over column c, rows r.., until one nonzero entry remains.
        loop {
            let mut nonzero: Vec<usize> = (r..m.len()).filter(|&i| !m[i][c].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            if nonzero.len() == 1 {
                let i = nonzero[0];
                m.swap(r, i);
                break;
            }
            nonzero.sort_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()));
            let small = nonzero[0];
            for &i in &nonzero[1..] {
                let q = &m[i][c] / &m[small][c]; // truncated division is fine here
                if !q.is_zero() {
                    for j in 0..cols {
                        let t = &m[small][j] * &q;
                        m[i][j] -= t;
                    }
                }
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            let pivot = m[r][c].clone();
            for i in 0..r {
                let q = m[i][c].div_floor(&pivot);
                if !q.is_zero() {
                    for j in 0..cols {
                        let t = &m[r][j] * &q;
                        m[i][j] -= t;
                    }
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m
}
