//! Rational convex polytopes presented by their vertices.
//!
//! A polytope is tied to a reference sublattice: vertex differences must lie
//! in the rational span of the lattice, and the polytope dimension must
//! equal the lattice rank, so every facet has a unique primitive inward
//! normal in the dual of the lattice.  Points are kept both in ambient
//! coordinates and in lattice coordinates relative to the first vertex.

use crate::matrix::{self, Lattice};
use crate::num::{
    combinations, dot, int_to_rat_vec, primitive_vector, sub_vec, vec_to_string, Rat,
};
use crate::{CoreError, CoreResult};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use num_traits::{Signed, Zero};

/// A facet with inward affine form `<normal, x> + offset >= 0` in lattice
/// coordinates relative to the base vertex.  The normal is primitive and
/// integral in the dual basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<Rat>,
    pub offset: Rat,
    pub vertex_indices: Vec<usize>,
}

/// A nonempty face, described by its vertex set and the facets containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub vertex_indices: Vec<usize>,
    pub tight_facets: Vec<usize>,
    pub dim: usize,
}

#[derive(Debug, Clone)]
pub struct Polytope {
    lattice: Lattice,
    vertices_ambient: Vec<Vec<Rat>>,
    vertices_xi: Vec<Vec<Rat>>,
    dim: usize,
    facets: Vec<Facet>,
    faces: Vec<Face>,
}

impl Polytope {
    /// Every listed point must be a vertex of the hull, pairwise distinct,
    /// with differences inside the rational span of the lattice, and the
    /// hull must have dimension equal to the lattice rank.
    pub fn new(lattice: Lattice, vertices_ambient: Vec<Vec<Rat>>) -> CoreResult<Polytope> {
        if vertices_ambient.is_empty() {
            return Err(CoreError::InvalidInput("polytope needs vertices".into()));
        }
        for v in &vertices_ambient {
            if v.len() != lattice.ambient_dim() {
                return Err(CoreError::InvalidInput(format!(
                    "vertex has length {} instead of {}",
                    v.len(),
                    lattice.ambient_dim()
                )));
            }
        }
        for (i, v) in vertices_ambient.iter().enumerate() {
            if vertices_ambient[..i].contains(v) {
                return Err(CoreError::InvalidInput(format!(
                    "duplicate vertex {}",
                    vec_to_string(v)
                )));
            }
        }
        let base = vertices_ambient[0].clone();
        let mut vertices_xi = Vec::with_capacity(vertices_ambient.len());
        for v in &vertices_ambient {
            match lattice.coordinates(&sub_vec(v, &base)) {
                Some(c) => vertices_xi.push(c),
                None => {
                    return Err(CoreError::InvalidInput(format!(
                        "vertex {} differs from the base vertex outside the lattice span",
                        vec_to_string(v)
                    )))
                }
            }
        }
        let r = lattice.rank();
        let dim = matrix::rank(&vertices_xi);
        if dim != r {
            return Err(CoreError::InvalidInput(format!(
                "polytope dimension {dim} must equal the lattice rank {r}"
            )));
        }
        let facets = enumerate_facets(&vertices_xi, r)?;
        for (i, _) in vertices_xi.iter().enumerate() {
            let tight: Vec<Vec<Rat>> = facets
                .iter()
                .filter(|f| f.vertex_indices.contains(&i))
                .map(|f| f.normal.clone())
                .collect();
            if matrix::rank(&tight) != r {
                return Err(CoreError::InvalidInput(format!(
                    "listed point {} is not a vertex of the hull",
                    vec_to_string(&vertices_ambient[i])
                )));
            }
        }
        let faces = enumerate_faces(&vertices_xi, &facets);
        Ok(Polytope {
            lattice,
            vertices_ambient,
            vertices_xi,
            dim,
            facets,
            faces,
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base_vertex_ambient(&self) -> &[Rat] {
        &self.vertices_ambient[0]
    }

    pub fn vertices_ambient(&self) -> &[Vec<Rat>] {
        &self.vertices_ambient
    }

    pub fn vertices_xi(&self) -> &[Vec<Rat>] {
        &self.vertices_xi
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Lattice coordinates of an ambient point relative to the base vertex,
    /// if it lies in the affine span.
    pub fn to_xi(&self, ambient: &[Rat]) -> Option<Vec<Rat>> {
        self.lattice.coordinates(&sub_vec(ambient, self.base_vertex_ambient()))
    }

    /// Inward affine form of facet `f` at a point in lattice coordinates.
    pub fn facet_value(&self, f: usize, xi: &[Rat]) -> Rat {
        dot(&self.facets[f].normal, xi) + &self.facets[f].offset
    }

    pub fn contains_xi(&self, xi: &[Rat]) -> bool {
        (0..self.facets.len()).all(|f| !self.facet_value(f, xi).is_negative())
    }

    /// Facet indices whose affine form vanishes at the point.
    pub fn tight_facets_at(&self, xi: &[Rat]) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&f| self.facet_value(f, xi).is_zero())
            .collect()
    }
}

fn enumerate_facets(vertices_xi: &[Vec<Rat>], r: usize) -> CoreResult<Vec<Facet>> {
    if r == 0 {
        return Ok(Vec::new());
    }
    let n = vertices_xi.len();
    let mut found: BTreeMap<(Vec<Rat>, Rat), ()> = BTreeMap::new();
    for subset in combinations(n, r) {
        let base = &vertices_xi[subset[0]];
        let diffs: Vec<Vec<Rat>> = subset[1..]
            .iter()
            .map(|&i| sub_vec(&vertices_xi[i], base))
            .collect();
        if matrix::rank(&diffs) != r - 1 {
            continue;
        }
        let kernel = matrix::kernel_or_full(&diffs, r);
        if kernel.len() != 1 {
            continue;
        }
        let mut normal = kernel.into_iter().next().unwrap();
        let level = dot(&normal, base);
        let mut side = 0i8;
        let mut supporting = true;
        for v in vertices_xi {
            let val = dot(&normal, v) - &level;
            if val.is_zero() {
                continue;
            }
            let s = if val.is_positive() { 1 } else { -1 };
            if side == 0 {
                side = s;
            } else if side != s {
                supporting = false;
                break;
            }
        }
        if !supporting || side == 0 {
            continue;
        }
        if side < 0 {
            for x in normal.iter_mut() {
                *x = -x.clone();
            }
        }
        let normal = int_to_rat_vec(&primitive_vector(&normal));
        let offset = -dot(&normal, base);
        found.insert((normal, offset), ());
    }
    let mut facets = Vec::new();
    for (normal, offset) in found.into_keys() {
        let vertex_indices: Vec<usize> = vertices_xi
            .iter()
            .enumerate()
            .filter(|(_, v)| (dot(&normal, v) + &offset).is_zero())
            .map(|(i, _)| i)
            .collect();
        facets.push(Facet { normal, offset, vertex_indices });
    }
    if facets.is_empty() {
        return Err(CoreError::InvalidInput(
            "no supporting hyperplanes found; vertex data is degenerate".into(),
        ));
    }
    Ok(facets)
}

/// All nonempty faces as intersections of facet vertex sets, sorted by
/// decreasing dimension and then by vertex set.
fn enumerate_faces(vertices_xi: &[Vec<Rat>], facets: &[Facet]) -> Vec<Face> {
    let full: BTreeSet<usize> = (0..vertices_xi.len()).collect();
    let mut sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    sets.insert(full);
    loop {
        let mut added = false;
        let snapshot: Vec<BTreeSet<usize>> = sets.iter().cloned().collect();
        for s in &snapshot {
            for f in facets {
                let cut: BTreeSet<usize> = s
                    .iter()
                    .copied()
                    .filter(|i| f.vertex_indices.contains(i))
                    .collect();
                if !cut.is_empty() && !sets.contains(&cut) {
                    sets.insert(cut);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    let mut faces: Vec<Face> = sets
        .into_iter()
        .map(|s| {
            let vertex_indices: Vec<usize> = s.iter().copied().collect();
            let tight_facets: Vec<usize> = facets
                .iter()
                .enumerate()
                .filter(|(_, f)| vertex_indices.iter().all(|i| f.vertex_indices.contains(i)))
                .map(|(k, _)| k)
                .collect();
            let pts: Vec<Vec<Rat>> = vertex_indices
                .iter()
                .map(|&i| vertices_xi[i].clone())
                .collect();
            let dim = matrix::affine_rank(&pts);
            Face { vertex_indices, tight_facets, dim }
        })
        .collect();
    faces.sort_by(|a, b| {
        b.dim
            .cmp(&a.dim)
            .then_with(|| a.vertex_indices.cmp(&b.vertex_indices))
    });
    faces
}
