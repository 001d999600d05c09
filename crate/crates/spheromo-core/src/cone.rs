//! Polyhedral cones over the rationals: membership, pointedness, extremal
//! generators, dual rays, and relative-interior queries.
//!
//! Cones are given by finite generator lists.  All queries reduce to exact
//! linear programs or small rank computations, so results are never
//! approximate.

use crate::lp::{feasible_point, Constraint};
use crate::matrix;
use crate::num::{combinations, dot, int_to_rat_vec, primitive_vector, Rat};
use crate::{CoreError, CoreResult};
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    dim: usize,
    generators: Vec<Vec<Rat>>,
}

impl Cone {
    /// Zero generators are dropped; they add nothing to the cone.
    pub fn new(dim: usize, generators: Vec<Vec<Rat>>) -> Cone {
        let generators: Vec<Vec<Rat>> = generators
            .into_iter()
            .inspect(|g| debug_assert_eq!(g.len(), dim))
            .filter(|g| !crate::num::is_zero_vec(g))
            .collect();
        Cone { dim, generators }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<Rat>] {
        &self.generators
    }

    pub fn span_rank(&self) -> usize {
        matrix::rank(&self.generators)
    }

    /// Membership `v in cone(generators)` as an exact feasibility problem.
    pub fn contains(&self, v: &[Rat]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        if self.generators.is_empty() {
            return v.iter().all(Rat::is_zero);
        }
        let k = self.generators.len();
        let cons: Vec<Constraint> = (0..self.dim)
            .map(|c| {
                let row: Vec<Rat> = self.generators.iter().map(|g| g[c].clone()).collect();
                Constraint::eq(row, v[c].clone())
            })
            .collect();
        feasible_point(&cons, &vec![true; k]).is_some()
    }

    /// A cone is pointed when it contains no line: no nontrivial nonnegative
    /// combination of generators vanishes.
    pub fn is_pointed(&self) -> bool {
        if self.generators.is_empty() {
            return true;
        }
        let k = self.generators.len();
        let mut cons: Vec<Constraint> = (0..self.dim)
            .map(|c| {
                let row: Vec<Rat> = self.generators.iter().map(|g| g[c].clone()).collect();
                Constraint::eq(row, Rat::zero())
            })
            .collect();
        cons.push(Constraint::eq(vec![Rat::one(); k], Rat::one()));
        feasible_point(&cons, &vec![true; k]).is_none()
    }

    /// Indices of generators that are extremal: not expressible inside the
    /// cone of the remaining generators.  Parallel duplicates keep only the
    /// first occurrence.
    pub fn extremal_generator_indices(&self) -> Vec<usize> {
        let primitive: Vec<Vec<Rat>> = self
            .generators
            .iter()
            .map(|g| int_to_rat_vec(&primitive_vector(g)))
            .collect();
        let mut out = Vec::new();
        for i in 0..self.generators.len() {
            if primitive[..i].contains(&primitive[i]) {
                continue;
            }
            let others: Vec<Vec<Rat>> = (0..self.generators.len())
                .filter(|&j| primitive[j] != primitive[i])
                .map(|j| self.generators[j].clone())
                .collect();
            let sub = Cone::new(self.dim, others);
            if !sub.contains(&self.generators[i]) {
                out.push(i);
            }
        }
        out
    }

    /// Primitive generators of the extremal rays of the dual cone
    /// `{ y : <y, g> >= 0 for all generators g }`, sorted.  Requires the
    /// cone to span the ambient space, so that the dual is pointed.
    pub fn dual_rays(&self) -> CoreResult<Vec<Vec<Rat>>> {
        if self.span_rank() != self.dim {
            return Err(CoreError::InvalidInput(
                "dual rays need a full-dimensional cone".into(),
            ));
        }
        let mut rays: BTreeSet<Vec<Rat>> = BTreeSet::new();
        let mut consider = |y: Vec<Rat>| {
            if crate::num::is_zero_vec(&y) {
                return;
            }
            for cand in [y.clone(), y.iter().map(|x| -x.clone()).collect()] {
                if self
                    .generators
                    .iter()
                    .all(|g| !dot(&cand, g).is_negative())
                {
                    rays.insert(int_to_rat_vec(&primitive_vector(&cand)));
                }
            }
        };
        if self.dim == 1 {
            consider(vec![Rat::one()]);
        } else {
            for subset in combinations(self.generators.len(), self.dim - 1) {
                let rows: Vec<Vec<Rat>> = subset
                    .iter()
                    .map(|&i| self.generators[i].clone())
                    .collect();
                if matrix::rank(&rows) != self.dim - 1 {
                    continue;
                }
                let kernel = matrix::kernel(&rows);
                debug_assert_eq!(kernel.len(), 1);
                consider(kernel.into_iter().next().unwrap());
            }
        }
        Ok(rays.into_iter().collect())
    }

    /// Does the relative interior meet the region `{ x : <x, h> <= 0 }` for
    /// all rows `h`?  Points of the relative interior are exactly the
    /// strictly positive combinations of all generators.
    pub fn relint_meets(&self, halfspaces: &[Vec<Rat>]) -> bool {
        let k = self.generators.len();
        if k == 0 {
            return true; // relint of the origin cone is the origin
        }
        let mut cons: Vec<Constraint> = Vec::new();
        for i in 0..k {
            let mut row = vec![Rat::zero(); k];
            row[i] = Rat::one();
            cons.push(Constraint::ge(row, Rat::one()));
        }
        for h in halfspaces {
            let row: Vec<Rat> = self.generators.iter().map(|g| dot(g, h)).collect();
            cons.push(Constraint::le(row, Rat::zero()));
        }
        feasible_point(&cons, &vec![true; k]).is_some()
    }
}
