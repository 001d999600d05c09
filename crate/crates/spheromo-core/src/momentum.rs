//! Compatibility and admissibility of spherical roots for a weight lattice
//! with a momentum polytope, and independently for the weight monoid of the
//! cone over the polytope.
//!
//! The two routes answer the same realizability question and are kept
//! separate on purpose: [`PairContext`] works with facet normals of `Q`,
//! [`MonoidContext`] with ray generators of the dual of the cone over
//! `Q x {1}`.  Cross-checking one against the other is part of the test
//! suite, so neither may call into the other.

use crate::cone::Cone;
use crate::matrix::{self, Lattice};
use crate::num::{
    dot, int_to_rat_vec, primitive_vector, rat_int, rat_to_string, scale_vec, sub_vec,
    vec_to_string, Int, Rat,
};
use crate::polykernel::Polytope;
use crate::rootsys::{spherical_root_catalog, CatalogEntry, RootSystem, RowTag};
use crate::tables::AxiomSTable;
use crate::verdict::{Certificate, Verdict};
use crate::{CoreError, CoreResult};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

/// Index of the simple root when the entry is a single simple root itself
/// (coefficient one), `None` for every other catalog shape.
pub fn simple_index(entry: &CatalogEntry) -> Option<usize> {
    if entry.tag == RowTag::AChain && entry.support.len() == 1 && entry.coeffs[entry.support[0]].is_one()
    {
        Some(entry.support[0])
    } else {
        None
    }
}

/// Index of the simple root `alpha` when the entry is `2 alpha`.
pub fn doubled_simple_index(entry: &CatalogEntry) -> Option<usize> {
    if entry.tag == RowTag::A1Double {
        Some(entry.support[0])
    } else {
        None
    }
}

fn pad_weight(weight: &[Rat], target_len: usize) -> Vec<Rat> {
    let mut out = weight.to_vec();
    while out.len() < target_len {
        out.push(Rat::zero());
    }
    out
}

/// Simple roots whose coroot vanishes on every row of `weight_rows`.
fn perp_of(rs: &RootSystem, weight_rows: &[Vec<Rat>]) -> Vec<usize> {
    (0..rs.rank())
        .filter(|&i| weight_rows.iter().all(|v| rs.pair_simple(i, v).is_zero()))
        .collect()
}

fn weight_parts(lattice: &Lattice, ambient: usize) -> Vec<Vec<Rat>> {
    lattice
        .basis()
        .iter()
        .map(|b| int_to_rat_vec(&b[..ambient]))
        .collect()
}

/// Compatibility of a spherical root with a sublattice: membership and
/// primitivity, the permitted-parabolic condition, the balanced-pairing rule
/// for orthogonal `A1 x A1` roots, and the even-pairing rule for doubled
/// simple roots.  `lattice` may live in the weight space itself or in the
/// weight space extended by one degree coordinate; the root is padded with
/// zeros accordingly.
pub fn lattice_compatible(
    rs: &RootSystem,
    axiom_s: &AxiomSTable,
    entry: &CatalogEntry,
    lattice: &Lattice,
    s_perp_lattice: &[usize],
) -> Verdict {
    let padded = pad_weight(&entry.weight, lattice.ambient_dim());
    if !lattice.contains(&padded) {
        return Verdict::fail(
            Certificate::new("lattice/membership", "the root is not a lattice element")
                .with("sigma", entry.name.clone())
                .with("weight", vec_to_string(&entry.weight)),
        );
    }
    if !lattice.is_primitive(&padded) {
        return Verdict::fail(
            Certificate::new("lattice/primitive", "the root is an imprimitive lattice element")
                .with("sigma", entry.name.clone())
                .with("weight", vec_to_string(&entry.weight)),
        );
    }
    let axiom = axiom_s.check_pair(rs, entry, s_perp_lattice);
    if !axiom.is_pass() {
        return axiom;
    }
    let weights = weight_parts(lattice, rs.ambient_dim());
    if entry.tag == RowTag::A1A1Sum || entry.tag == RowTag::A1A1Half {
        let (a, b) = (entry.support[0], entry.support[1]);
        for (row, w) in weights.iter().enumerate() {
            let pa = rs.pair_simple(a, w);
            let pb = rs.pair_simple(b, w);
            if pa != pb {
                return Verdict::fail(
                    Certificate::new(
                        "lattice/a1a1-pairing",
                        "the two orthogonal coroots disagree on a lattice basis vector",
                    )
                    .with("sigma", entry.name.clone())
                    .with("basis-row", format!("{row}"))
                    .with("alpha-pairing", rat_to_string(&pa))
                    .with("beta-pairing", rat_to_string(&pb)),
                );
            }
        }
    }
    if let Some(a) = doubled_simple_index(entry) {
        for (row, w) in weights.iter().enumerate() {
            let p = rs.pair_simple(a, w);
            if !(p.clone() / rat_int(2)).is_integer() {
                return Verdict::fail(
                    Certificate::new(
                        "lattice/double-even",
                        "the halved coroot takes a non-integer value on a lattice basis vector",
                    )
                    .with("sigma", entry.name.clone())
                    .with("basis-row", format!("{row}"))
                    .with("pairing", rat_to_string(&p)),
                );
            }
        }
    }
    Verdict::pass()
}

/// The two functionals attached to a compatible simple spherical root: the
/// normal of its distinguished facet and the coroot restriction minus it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaPair {
    pub facet: usize,
    pub plus: Vec<Rat>,
    pub minus: Vec<Rat>,
}

impl AlphaPair {
    pub fn functionals(&self) -> [&Vec<Rat>; 2] {
        [&self.plus, &self.minus]
    }
}

/// Polytope-side decision context for one `(root system, lattice, polytope)`
/// triple.  All catalog roots, coroot restrictions and vanishing sets are
/// computed once up front.
pub struct PairContext<'a> {
    rs: &'a RootSystem,
    poly: &'a Polytope,
    axiom_s: &'a AxiomSTable,
    catalog: Vec<CatalogEntry>,
    s_perp_xi: Vec<usize>,
    s_perp_q: Vec<usize>,
    coroot_xi: Vec<Vec<Rat>>,
    w_ambient: Vec<Rat>,
}

impl<'a> PairContext<'a> {
    pub fn new(
        rs: &'a RootSystem,
        poly: &'a Polytope,
        axiom_s: &'a AxiomSTable,
    ) -> CoreResult<PairContext<'a>> {
        if poly.lattice().ambient_dim() != rs.ambient_dim() {
            return Err(CoreError::InvalidInput(format!(
                "polytope lives in dimension {} but the root system needs {}",
                poly.lattice().ambient_dim(),
                rs.ambient_dim()
            )));
        }
        let catalog = spherical_root_catalog(rs);
        let basis_rows = weight_parts(poly.lattice(), rs.ambient_dim());
        let s_perp_xi = perp_of(rs, &basis_rows);
        let s_perp_q = perp_of(rs, poly.vertices_ambient());
        let coroot_xi: Vec<Vec<Rat>> = (0..rs.rank())
            .map(|i| basis_rows.iter().map(|b| rs.pair_simple(i, b)).collect())
            .collect();
        let all: Vec<usize> = (0..rs.rank()).collect();
        let w_ambient = sub_vec(&rs.two_rho(&all), &rs.two_rho(&s_perp_q));
        Ok(PairContext {
            rs,
            poly,
            axiom_s,
            catalog,
            s_perp_xi,
            s_perp_q,
            coroot_xi,
            w_ambient,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        self.rs
    }

    pub fn polytope(&self) -> &Polytope {
        self.poly
    }

    pub fn catalog(&self) -> &[CatalogEntry] {
        &self.catalog
    }

    pub fn s_perp_q(&self) -> &[usize] {
        &self.s_perp_q
    }

    pub fn s_perp_lattice(&self) -> &[usize] {
        &self.s_perp_xi
    }

    /// Restriction of the `i`-th coroot to the lattice, as a functional in
    /// dual-basis coordinates.
    pub fn coroot_on_lattice(&self, i: usize) -> &[Rat] {
        &self.coroot_xi[i]
    }

    /// Ambient weight of the anticanonical section: twice the sum of the
    /// positive roots not supported on the vanishing set of `Q`.
    pub fn anticanonical_weight(&self) -> &[Rat] {
        &self.w_ambient
    }

    /// Lattice coordinates of the root vector, if it lies in the lattice
    /// span.
    pub fn sigma_xi(&self, entry: &CatalogEntry) -> Option<Vec<Rat>> {
        self.poly.lattice().coordinates(&entry.weight)
    }

    fn sigma_coords(&self, sigma: &[&CatalogEntry]) -> Vec<Vec<Rat>> {
        sigma
            .iter()
            .map(|e| {
                self.sigma_xi(e)
                    .expect("spherical roots must lie in the lattice span here")
            })
            .collect()
    }

    /// Compatibility of a single root with the lattice and the polytope.
    pub fn q_compatible(&self, entry: &CatalogEntry) -> Verdict {
        let lat = lattice_compatible(self.rs, self.axiom_s, entry, self.poly.lattice(), &self.s_perp_xi);
        if !lat.is_pass() {
            return lat;
        }
        let axiom = self.axiom_s.check_pair(self.rs, entry, &self.s_perp_q);
        if !axiom.is_pass() {
            return axiom;
        }
        let sx = match self.sigma_xi(entry) {
            Some(sx) => sx,
            None => unreachable!("membership was checked above"),
        };
        if let Some(a) = simple_index(entry) {
            if let Err(cert) = self.simple_facet(a, &sx, entry) {
                return Verdict::fail(cert);
            }
        } else {
            for (f, facet) in self.poly.facets().iter().enumerate() {
                if !dot(&facet.normal, &sx).is_positive() {
                    continue;
                }
                let wall = (0..self.rs.rank()).any(|a| {
                    !self.s_perp_q.contains(&a)
                        && facet.vertex_indices.iter().all(|&u| {
                            self.rs
                                .pair_simple(a, &self.poly.vertices_ambient()[u])
                                .is_zero()
                        })
                });
                if !wall {
                    return Verdict::fail(
                        Certificate::new(
                            "qcomp/facet-wall",
                            "a facet positive on the root carries no vanishing active coroot",
                        )
                        .with("sigma", entry.name.clone())
                        .with("facet-index", format!("{f}"))
                        .with("facet-normal", vec_to_string(&facet.normal))
                        .with("pairing", rat_to_string(&dot(&facet.normal, &sx))),
                    );
                }
            }
        }
        if entry.tag == RowTag::A1A1Sum || entry.tag == RowTag::A1A1Half {
            let (a, b) = (entry.support[0], entry.support[1]);
            for (i, v) in self.poly.vertices_ambient().iter().enumerate() {
                let pa = self.rs.pair_simple(a, v);
                let pb = self.rs.pair_simple(b, v);
                if pa != pb {
                    return Verdict::fail(
                        Certificate::new(
                            "qcomp/a1a1-balance",
                            "the two orthogonal coroots disagree on a vertex of the polytope",
                        )
                        .with("sigma", entry.name.clone())
                        .with("vertex", vec_to_string(v))
                        .with("vertex-index", format!("{i}"))
                        .with("alpha-pairing", rat_to_string(&pa))
                        .with("beta-pairing", rat_to_string(&pb)),
                    );
                }
            }
        }
        Verdict::pass()
    }

    /// First facet pairing to one with `alpha` such that every other facet
    /// positive on `alpha` lies on the reflected hyperplane.
    fn simple_facet(&self, a: usize, sx: &[Rat], entry: &CatalogEntry) -> Result<usize, Certificate> {
        let positives: Vec<usize> = (0..self.poly.facets().len())
            .filter(|&f| dot(&self.poly.facets()[f].normal, sx).is_positive())
            .collect();
        if positives.is_empty() {
            return Err(Certificate::new(
                "qcomp/simple-facet",
                "no facet normal is positive on the simple root",
            )
            .with("sigma", entry.name.clone()));
        }
        let alpha_ambient = self.rs.simple_root(a);
        'candidates: for &f in &positives {
            if dot(&self.poly.facets()[f].normal, sx) != Rat::one() {
                continue;
            }
            for &g in &positives {
                if g == f {
                    continue;
                }
                // H_g must be the alpha-reflection of H_f: the reflected
                // vertices of facet f have to satisfy g's affine form.
                for &u in &self.poly.facets()[f].vertex_indices {
                    let vertex = &self.poly.vertices_ambient()[u];
                    let pairing = self.rs.pair_simple(a, vertex);
                    let reflected = sub_vec(vertex, &scale_vec(&pairing, alpha_ambient));
                    let rxi = self
                        .poly
                        .to_xi(&reflected)
                        .expect("reflection along a lattice root stays in the affine span");
                    if !self.poly.facet_value(g, &rxi).is_zero() {
                        continue 'candidates;
                    }
                }
            }
            return Ok(f);
        }
        let mut cert = Certificate::new(
            "qcomp/simple-facet",
            "no facet pairs to one with the root while mirroring the other positive facets",
        )
        .with("sigma", entry.name.clone());
        for &f in &positives {
            cert = cert.with(
                format!("facet-{f}"),
                format!(
                    "{} pairing {}",
                    vec_to_string(&self.poly.facets()[f].normal),
                    rat_to_string(&dot(&self.poly.facets()[f].normal, sx))
                ),
            );
        }
        Err(cert)
    }

    /// The distinguished functional pair of a simple root, when it is
    /// compatible with the polytope.
    pub fn alpha_pair(&self, entry: &CatalogEntry) -> Option<AlphaPair> {
        let a = simple_index(entry)?;
        if !self.q_compatible(entry).is_pass() {
            return None;
        }
        let sx = self.sigma_xi(entry)?;
        let facet = self.simple_facet(a, &sx, entry).ok()?;
        let plus = self.poly.facets()[facet].normal.clone();
        let minus = sub_vec(&self.coroot_xi[a], &plus);
        Some(AlphaPair { facet, plus, minus })
    }

    /// Pairwise admissibility over the polytope: each root compatible, and
    /// the functionals of the simple members pair at most one with every
    /// other root, with equality only on shared functionals.
    pub fn q_admissible(&self, sigma: &[&CatalogEntry]) -> Verdict {
        for entry in sigma {
            let v = self.q_compatible(entry);
            if !v.is_pass() {
                return v;
            }
        }
        for alpha in sigma {
            let Some(pair) = self.alpha_pair(alpha) else { continue };
            for other in sigma {
                if other.coeffs == alpha.coeffs {
                    continue;
                }
                let ox = self
                    .sigma_xi(other)
                    .expect("compatible roots lie in the lattice");
                for functional in pair.functionals() {
                    let p = dot(functional, &ox);
                    if p > Rat::one() {
                        return Verdict::fail(self.pairing_cert(alpha, other, functional, &p));
                    }
                    if p == Rat::one() {
                        let shared = self
                            .alpha_pair(other)
                            .map(|op| op.plus == *functional || op.minus == *functional)
                            .unwrap_or(false);
                        if !shared {
                            return Verdict::fail(self.pairing_cert(alpha, other, functional, &p));
                        }
                    }
                }
            }
        }
        Verdict::pass()
    }

    fn pairing_cert(
        &self,
        alpha: &CatalogEntry,
        other: &CatalogEntry,
        functional: &[Rat],
        pairing: &Rat,
    ) -> Certificate {
        Certificate::new(
            "qadm/pairing",
            "a functional of a simple member pairs too high with another root",
        )
        .with("alpha", alpha.name.clone())
        .with("sigma", other.name.clone())
        .with("functional", vec_to_string(functional))
        .with("pairing", rat_to_string(pairing))
    }

    /// Vertices of `Q` whose normal cone meets the valuation region of
    /// `sigma` in its relative interior.
    pub fn orbit_vertex_indices(&self, sigma: &[&CatalogEntry]) -> Vec<usize> {
        let coords = self.sigma_coords(sigma);
        (0..self.poly.vertices_xi().len())
            .filter(|&i| {
                let tight = self.poly.tight_facets_at(&self.poly.vertices_xi()[i]);
                let gens: Vec<Vec<Rat>> = tight
                    .iter()
                    .map(|&f| self.poly.facets()[f].normal.clone())
                    .collect();
                Cone::new(self.poly.lattice().rank(), gens).relint_meets(&coords)
            })
            .collect()
    }

    /// Faces of `Q` (indices into `polytope().faces()`) whose normal cone
    /// meets the valuation region of `sigma` in its relative interior.
    pub fn orbit_face_indices(&self, sigma: &[&CatalogEntry]) -> Vec<usize> {
        let coords = self.sigma_coords(sigma);
        (0..self.poly.faces().len())
            .filter(|&k| {
                let gens: Vec<Vec<Rat>> = self.poly.faces()[k]
                    .tight_facets
                    .iter()
                    .map(|&f| self.poly.facets()[f].normal.clone())
                    .collect();
                Cone::new(self.poly.lattice().rank(), gens).relint_meets(&coords)
            })
            .collect()
    }

    /// Per-facet rescaling index: the simple root `alpha` with `2 alpha` in
    /// `sigma` whose doubled root is positive on the facet, if any.
    pub fn rescaling(&self, sigma: &[&CatalogEntry]) -> Vec<Option<usize>> {
        let doubled: Vec<(usize, Vec<Rat>)> = sigma
            .iter()
            .filter_map(|e| {
                let a = doubled_simple_index(e)?;
                Some((a, self.sigma_xi(e)?))
            })
            .collect();
        self.poly
            .facets()
            .iter()
            .map(|facet| {
                doubled
                    .iter()
                    .find(|(_, sx)| dot(&facet.normal, sx).is_positive())
                    .map(|(a, _)| *a)
            })
            .collect()
    }

    /// Offset of the (possibly rescaled) facet functional relative to the
    /// given point: the value the functional takes on the point minus its
    /// value on the facet.
    pub fn m_offset(
        &self,
        rescaling: &[Option<usize>],
        facet: usize,
        point_xi: &[Rat],
    ) -> Rat {
        let on_facet = &self.poly.vertices_xi()[self.poly.facets()[facet].vertex_indices[0]];
        let diff = sub_vec(point_xi, on_facet);
        match rescaling[facet] {
            Some(a) => dot(&scale_vec(&(Rat::one() / rat_int(2)), &self.coroot_xi[a]), &diff),
            None => dot(&self.poly.facets()[facet].normal, &diff),
        }
    }

    /// Facets positive on some simple root `alpha` with `alpha` or
    /// `2 alpha` in `sigma`; these are the facets whose rescaled offsets
    /// must be integers at an orbit vertex.
    pub fn integrality_facets(&self, sigma: &[&CatalogEntry]) -> Vec<usize> {
        let marked: Vec<Vec<Rat>> = sigma
            .iter()
            .filter(|e| simple_index(e).is_some() || doubled_simple_index(e).is_some())
            .filter_map(|e| self.sigma_xi(e))
            .collect();
        (0..self.poly.facets().len())
            .filter(|&f| {
                marked
                    .iter()
                    .any(|sx| dot(&self.poly.facets()[f].normal, sx).is_positive())
            })
            .collect()
    }

    /// Full admissibility: pairwise admissibility, integral differences of
    /// orbit vertices, and an integral orbit vertex with integral rescaled
    /// offsets on the marked facets.
    pub fn admissible(&self, sigma: &[&CatalogEntry]) -> Verdict {
        let q = self.q_admissible(sigma);
        if !q.is_pass() {
            return q;
        }
        let vertices = self.orbit_vertex_indices(sigma);
        if vertices.is_empty() {
            return Verdict::fail(Certificate::new(
                "adm/no-orbit-vertex",
                "no vertex of the polytope is an orbit vertex",
            ));
        }
        for (k, &i) in vertices.iter().enumerate() {
            for &j in &vertices[..k] {
                let diff = sub_vec(&self.poly.vertices_xi()[i], &self.poly.vertices_xi()[j]);
                if !diff.iter().all(Rat::is_integer) {
                    return Verdict::fail(
                        Certificate::new(
                            "adm/vertex-differences",
                            "two orbit vertices differ by a non-lattice vector",
                        )
                        .with("vertex-a", vec_to_string(&self.poly.vertices_ambient()[j]))
                        .with("vertex-b", vec_to_string(&self.poly.vertices_ambient()[i]))
                        .with(
                            "difference",
                            vec_to_string(&sub_vec(
                                &self.poly.vertices_ambient()[i],
                                &self.poly.vertices_ambient()[j],
                            )),
                        ),
                    );
                }
            }
        }
        // With integral differences the remaining conditions hold for one
        // orbit vertex exactly when they hold for all; test the smallest.
        let &v = vertices
            .iter()
            .min_by(|&&i, &&j| {
                crate::num::cmp_vec(&self.poly.vertices_xi()[i], &self.poly.vertices_xi()[j])
            })
            .expect("nonempty");
        let ambient = &self.poly.vertices_ambient()[v];
        if !ambient.iter().all(Rat::is_integer) {
            return Verdict::fail(
                Certificate::new(
                    "adm/vertex-integrality",
                    "the orbit vertex is not a weight-lattice point",
                )
                .with("vertex", vec_to_string(ambient)),
            );
        }
        let rescaling = self.rescaling(sigma);
        for f in self.integrality_facets(sigma) {
            let m = self.m_offset(&rescaling, f, &self.poly.vertices_xi()[v]);
            if !m.is_integer() {
                return Verdict::fail(
                    Certificate::new(
                        "adm/m-integrality",
                        "a rescaled facet offset at the orbit vertex is not an integer",
                    )
                    .with("facet-normal", vec_to_string(&self.poly.facets()[f].normal))
                    .with("vertex", vec_to_string(ambient))
                    .with("offset", rat_to_string(&m)),
                );
            }
        }
        Verdict::pass()
    }

    fn anticanonical_name(&self) -> String {
        let rows: Vec<Vec<Rat>> = (0..self.rs.rank())
            .map(|i| self.rs.simple_root(i).to_vec())
            .collect();
        match matrix::row_coordinates(&rows, &self.w_ambient) {
            Some(coeffs) => self.rs.combination_name(&coeffs),
            None => vec_to_string(&self.w_ambient),
        }
    }

    /// Anticanonical conditions on the facet offsets; with
    /// `require_vertex_integrality` the admissibility gate is used and the
    /// anticanonical weight must differ from an orbit vertex by a lattice
    /// element, otherwise the pairwise gate suffices.
    pub fn reflexive(&self, sigma: &[&CatalogEntry], require_vertex_integrality: bool) -> Verdict {
        let gate = if require_vertex_integrality {
            self.admissible(sigma)
        } else {
            self.q_admissible(sigma)
        };
        if !gate.is_pass() {
            return gate;
        }
        let w_xi = match self.poly.to_xi(&self.w_ambient) {
            Some(w_xi) if self.poly.contains_xi(&w_xi) => w_xi,
            _ => {
                return Verdict::fail(
                    Certificate::new(
                        "refl/w-outside",
                        "the anticanonical weight lies outside the polytope",
                    )
                    .with("weight", self.anticanonical_name()),
                )
            }
        };
        let simples: Vec<Vec<Rat>> = sigma
            .iter()
            .filter(|e| simple_index(e).is_some())
            .filter_map(|e| self.sigma_xi(e))
            .collect();
        let coords = self.sigma_coords(sigma);
        let rescaling = self.rescaling(sigma);
        for (f, facet) in self.poly.facets().iter().enumerate() {
            let simple_positive = simples.iter().any(|sx| dot(&facet.normal, sx).is_positive());
            let wall_free = coords.iter().all(|sx| !dot(&facet.normal, sx).is_positive())
                && (0..self.rs.rank()).all(|a| {
                    self.s_perp_q.contains(&a)
                        || facet.vertex_indices.iter().any(|&u| {
                            !self
                                .rs
                                .pair_simple(a, &self.poly.vertices_ambient()[u])
                                .is_zero()
                        })
                });
            if !simple_positive && !wall_free {
                continue;
            }
            let m = self.m_offset(&rescaling, f, &w_xi);
            if m != Rat::one() {
                return Verdict::fail(
                    Certificate::new(
                        "refl/facet-offset",
                        "a constrained facet offset at the anticanonical weight is not one",
                    )
                    .with("facet-normal", vec_to_string(&facet.normal))
                    .with("weight", self.anticanonical_name())
                    .with("offset", rat_to_string(&m))
                    .with(
                        "trigger",
                        if simple_positive { "simple-root-facet" } else { "stable-facet" },
                    ),
                );
            }
        }
        if require_vertex_integrality {
            let vertices = self.orbit_vertex_indices(sigma);
            let integral = vertices.iter().any(|&i| {
                sub_vec(&self.poly.vertices_xi()[i], &w_xi)
                    .iter()
                    .all(Rat::is_integer)
            });
            if !integral {
                return Verdict::fail(
                    Certificate::new(
                        "refl/orbit-vertex-integrality",
                        "no orbit vertex differs from the anticanonical weight by a lattice element",
                    )
                    .with("weight", self.anticanonical_name())
                    .with("orbit-vertices", format!("{}", vertices.len())),
                );
            }
        }
        Verdict::pass()
    }

    /// All pairwise-admissible subsets of the catalog, as sorted index
    /// vectors, ordered by size and then lexicographically.  Subsets are
    /// exactly the cliques over compatible singletons, since pairwise
    /// admissibility characterizes the full condition.
    pub fn enumerate_q_admissible(&self) -> Vec<Vec<usize>> {
        let singles: Vec<usize> = (0..self.catalog.len())
            .filter(|&i| self.q_compatible(&self.catalog[i]).is_pass())
            .collect();
        let ok_pair: Vec<Vec<bool>> = singles
            .iter()
            .map(|&i| {
                singles
                    .iter()
                    .map(|&j| {
                        i < j && self.q_admissible(&[&self.catalog[i], &self.catalog[j]]).is_pass()
                    })
                    .collect()
            })
            .collect();
        let mut out: Vec<Vec<usize>> = vec![Vec::new()];
        let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
        while let Some((chosen, from)) = stack.pop() {
            for next in from..singles.len() {
                if chosen.iter().all(|&prev| ok_pair[prev][next]) {
                    let mut grown = chosen.clone();
                    grown.push(next);
                    out.push(grown.iter().map(|&k| singles[k]).collect());
                    stack.push((grown, next + 1));
                }
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

/// Basis of the intersection of `ext` with the hyperplane where the last
/// coordinate vanishes, in canonical echelon form over the integers.
pub fn degree_zero_slice(ext: &Lattice) -> Vec<Vec<Int>> {
    let n = ext.ambient_dim();
    let rotated: Vec<Vec<Int>> = ext
        .basis()
        .iter()
        .map(|b| {
            let mut row = vec![b[n - 1].clone()];
            row.extend_from_slice(&b[..n - 1]);
            row
        })
        .collect();
    let echelon = matrix::hnf(&rotated);
    let slice: Vec<Vec<Int>> = echelon
        .into_iter()
        .filter(|row| row[0].is_zero())
        .map(|row| {
            let mut back = row[1..].to_vec();
            back.push(Int::zero());
            back
        })
        .collect();
    matrix::hnf(&slice)
}

/// Extended lattice spanned by the base lattice in degree zero and one
/// integral point in degree one.
pub fn extended_from_vertex(lattice: &Lattice, vertex_ambient: &[Rat]) -> CoreResult<Lattice> {
    if !vertex_ambient.iter().all(Rat::is_integer) {
        return Err(CoreError::InvalidInput(format!(
            "degree-one generator {} is not a weight-lattice point",
            vec_to_string(vertex_ambient)
        )));
    }
    let mut rows: Vec<Vec<Int>> = lattice
        .basis()
        .iter()
        .map(|b| {
            let mut row = b.clone();
            row.push(Int::zero());
            row
        })
        .collect();
    let mut top: Vec<Int> = vertex_ambient.iter().map(|x| x.to_integer()).collect();
    top.push(Int::one());
    rows.push(top);
    Lattice::new(rows, lattice.ambient_dim() + 1)
}

/// Monoid-side decision context: the weight monoid is the set of extended
/// lattice points in the cone over `Q x {1}`, and every check is phrased in
/// terms of the ray generators of its dual cone.
pub struct MonoidContext<'a> {
    rs: &'a RootSystem,
    poly: &'a Polytope,
    axiom_s: &'a AxiomSTable,
    catalog: Vec<CatalogEntry>,
    ext: Lattice,
    s_perp_ext: Vec<usize>,
    s_perp_gamma: Vec<usize>,
    coroot_ext: Vec<Vec<Rat>>,
    generators_xi: Vec<Vec<Rat>>,
    dual_rays: Vec<Vec<Rat>>,
    span_problem: Option<Certificate>,
}

impl<'a> MonoidContext<'a> {
    pub fn new(
        rs: &'a RootSystem,
        poly: &'a Polytope,
        axiom_s: &'a AxiomSTable,
        ext: Lattice,
    ) -> CoreResult<MonoidContext<'a>> {
        if poly.lattice().ambient_dim() != rs.ambient_dim() {
            return Err(CoreError::InvalidInput(format!(
                "polytope lives in dimension {} but the root system needs {}",
                poly.lattice().ambient_dim(),
                rs.ambient_dim()
            )));
        }
        if ext.ambient_dim() != rs.ambient_dim() + 1 {
            return Err(CoreError::InvalidInput(format!(
                "extended lattice needs ambient dimension {}, got {}",
                rs.ambient_dim() + 1,
                ext.ambient_dim()
            )));
        }
        let catalog = spherical_root_catalog(rs);
        let basis_rows = weight_parts(&ext, rs.ambient_dim());
        let s_perp_ext = perp_of(rs, &basis_rows);
        let s_perp_gamma = perp_of(rs, poly.vertices_ambient());
        let coroot_ext: Vec<Vec<Rat>> = (0..rs.rank())
            .map(|i| basis_rows.iter().map(|b| rs.pair_simple(i, b)).collect())
            .collect();
        let mut span_problem = None;
        if ext.rank() != poly.dim() + 1 {
            span_problem = Some(
                Certificate::new(
                    "monoid/lattice-span",
                    "the extended lattice rank differs from the cone dimension",
                )
                .with("lattice-rank", format!("{}", ext.rank()))
                .with("cone-dimension", format!("{}", poly.dim() + 1)),
            );
        }
        let mut generators_xi = Vec::new();
        for v in poly.vertices_ambient() {
            let mut lifted = v.clone();
            lifted.push(Rat::one());
            match ext.coordinates(&lifted) {
                Some(c) => generators_xi.push(c),
                None => {
                    if span_problem.is_none() {
                        span_problem = Some(
                            Certificate::new(
                                "monoid/lattice-span",
                                "a lifted vertex lies outside the extended lattice span",
                            )
                            .with("vertex", vec_to_string(v)),
                        );
                    }
                    generators_xi.clear();
                    break;
                }
            }
        }
        let dual_rays = if span_problem.is_none() {
            match Cone::new(ext.rank(), generators_xi.clone()).dual_rays() {
                Ok(rays) => rays,
                Err(_) => {
                    span_problem = Some(Certificate::new(
                        "monoid/lattice-span",
                        "the lifted vertices do not span the extended lattice",
                    ));
                    Vec::new()
                }
            }
        } else {
            Vec::new()
        };
        Ok(MonoidContext {
            rs,
            poly,
            axiom_s,
            catalog,
            ext,
            s_perp_ext,
            s_perp_gamma,
            coroot_ext,
            generators_xi,
            dual_rays,
            span_problem,
        })
    }

    pub fn catalog(&self) -> &[CatalogEntry] {
        &self.catalog
    }

    pub fn extended_lattice(&self) -> &Lattice {
        &self.ext
    }

    /// Ray generators of the dual of the cone over `Q x {1}`, as primitive
    /// integral functionals in dual-basis coordinates; empty when the span
    /// condition fails.
    pub fn dual_rays(&self) -> &[Vec<Rat>] {
        &self.dual_rays
    }

    /// Extended-lattice coordinates of the lifted vertices of `Q`.
    pub fn lifted_vertices(&self) -> &[Vec<Rat>] {
        &self.generators_xi
    }

    /// Restriction of the `i`-th coroot to the extended lattice.
    pub fn coroot_on_extended(&self, i: usize) -> &[Rat] {
        &self.coroot_ext[i]
    }

    pub fn span_verdict(&self) -> Verdict {
        match &self.span_problem {
            Some(cert) => Verdict::fail(cert.clone()),
            None => Verdict::pass(),
        }
    }

    /// Extended-lattice coordinates of the degree-zero lift of the root.
    pub fn sigma_ext(&self, entry: &CatalogEntry) -> Option<Vec<Rat>> {
        self.ext.coordinates(&pad_weight(&entry.weight, self.ext.ambient_dim()))
    }

    /// Compatibility of a single root with the weight monoid.
    pub fn compatible(&self, entry: &CatalogEntry) -> Verdict {
        let span = self.span_verdict();
        if !span.is_pass() {
            return span;
        }
        let lat = lattice_compatible(self.rs, self.axiom_s, entry, &self.ext, &self.s_perp_ext);
        if !lat.is_pass() {
            return lat;
        }
        if let Some(a) = simple_index(entry) {
            if let Err(cert) = self.ray_pair(a, entry) {
                return Verdict::fail(cert);
            }
        } else {
            let sx = self.sigma_ext(entry).expect("membership was checked above");
            for ray in &self.dual_rays {
                if !dot(ray, &sx).is_positive() {
                    continue;
                }
                let covered = (0..self.rs.rank()).any(|d| {
                    !self.s_perp_gamma.contains(&d)
                        && !self.coroot_ext[d].iter().all(Rat::is_zero)
                        && int_to_rat_vec(&primitive_vector(&self.coroot_ext[d])) == *ray
                });
                if !covered {
                    return Verdict::fail(
                        Certificate::new(
                            "monoid/cm1",
                            "a dual ray positive on the root is no coroot direction",
                        )
                        .with("sigma", entry.name.clone())
                        .with("ray", vec_to_string(ray))
                        .with("pairing", rat_to_string(&dot(ray, &sx))),
                    );
                }
            }
        }
        Verdict::pass()
    }

    /// The two integral functionals splitting the coroot restriction of a
    /// compatible simple root.
    fn ray_pair(&self, a: usize, entry: &CatalogEntry) -> Result<(Vec<Rat>, Vec<Rat>), Certificate> {
        let sx = self
            .sigma_ext(entry)
            .expect("simple members lie in the extended lattice here");
        let positives: Vec<&Vec<Rat>> = self
            .dual_rays
            .iter()
            .filter(|ray| dot(ray, &sx).is_positive())
            .collect();
        if positives.is_empty() {
            return Err(Certificate::new(
                "monoid/cm2",
                "no dual ray is positive on the simple root",
            )
            .with("sigma", entry.name.clone()));
        }
        for ray in &positives {
            let p = dot(ray, &sx);
            if p != Rat::one() {
                return Err(Certificate::new(
                    "monoid/cm2",
                    "a dual ray positive on the simple root does not pair to one",
                )
                .with("sigma", entry.name.clone())
                .with("ray", vec_to_string(ray))
                .with("pairing", rat_to_string(&p)));
            }
        }
        for ray in &positives {
            let partner = sub_vec(&self.coroot_ext[a], ray);
            if !partner.iter().all(Rat::is_integer) {
                continue;
            }
            if !self
                .generators_xi
                .iter()
                .all(|g| !dot(&partner, g).is_negative())
            {
                continue;
            }
            if positives.iter().all(|r| **r == **ray || **r == partner) {
                return Ok(((*ray).clone(), partner));
            }
        }
        let mut cert = Certificate::new(
            "monoid/cm2",
            "the coroot restriction does not split over the positive dual rays",
        )
        .with("sigma", entry.name.clone());
        for ray in &positives {
            cert = cert.with("ray", vec_to_string(ray));
        }
        Err(cert)
    }

    /// The functional pair of a simple root, when it is compatible with the
    /// monoid.
    pub fn s_pair(&self, entry: &CatalogEntry) -> Option<(Vec<Rat>, Vec<Rat>)> {
        let a = simple_index(entry)?;
        if !self.compatible(entry).is_pass() {
            return None;
        }
        self.ray_pair(a, entry).ok()
    }

    /// Pairwise admissibility over the monoid, mirroring the polytope-side
    /// condition with dual-ray functionals.
    pub fn admissible_for_monoid(&self, sigma: &[&CatalogEntry]) -> Verdict {
        for entry in sigma {
            let v = self.compatible(entry);
            if !v.is_pass() {
                return v;
            }
        }
        for alpha in sigma {
            let Some(a) = simple_index(alpha) else { continue };
            let pair = match self.ray_pair(a, alpha) {
                Ok(pair) => pair,
                Err(cert) => return Verdict::fail(cert),
            };
            for other in sigma {
                if other.coeffs == alpha.coeffs {
                    continue;
                }
                let ox = self
                    .sigma_ext(other)
                    .expect("compatible roots lie in the extended lattice");
                for functional in [&pair.0, &pair.1] {
                    let p = dot(functional, &ox);
                    let mut violation = p > Rat::one();
                    if p == Rat::one() {
                        let shared = simple_index(other)
                            .and_then(|_| self.s_pair(other))
                            .map(|(r1, r2)| r1 == *functional || r2 == *functional)
                            .unwrap_or(false);
                        violation = !shared;
                    }
                    if violation {
                        return Verdict::fail(
                            Certificate::new(
                                "monoid/ap",
                                "a functional of a simple member pairs too high with another root",
                            )
                            .with("alpha", alpha.name.clone())
                            .with("sigma", other.name.clone())
                            .with("functional", vec_to_string(functional))
                            .with("pairing", rat_to_string(&p)),
                        );
                    }
                }
            }
        }
        Verdict::pass()
    }

    /// Full realizability over a projective space: the eligible highest
    /// weights must exist, the polytope must lie in their hull shifted down
    /// by the root cone, and `sigma` must be admissible for the monoid.
    pub fn quadruple(&self, sigma: &[&CatalogEntry], highest_weights: &[Vec<Rat>]) -> Verdict {
        let span = self.span_verdict();
        if !span.is_pass() {
            return span;
        }
        let eligible: Vec<&Vec<Rat>> = highest_weights
            .iter()
            .filter(|hw| self.poly.vertices_ambient().contains(hw))
            .filter(|hw| {
                let mut lifted = (*hw).clone();
                lifted.push(Rat::one());
                self.ext.contains(&lifted)
            })
            .collect();
        if eligible.is_empty() {
            return Verdict::fail(
                Certificate::new(
                    "quad/eligible-weights",
                    "no highest weight is a vertex of the polytope with an extended-lattice lift",
                )
                .with("weights", format!("{}", highest_weights.len())),
            );
        }
        // Q must lie in the hull of the eligible weights pushed down along
        // the chosen roots; by convexity the vertices decide.
        let ambient = self.rs.ambient_dim();
        for vertex in self.poly.vertices_ambient() {
            let mut constraints = Vec::new();
            for coord in 0..ambient {
                let mut row: Vec<Rat> = eligible.iter().map(|hw| hw[coord].clone()).collect();
                row.extend(sigma.iter().map(|e| -e.weight[coord].clone()));
                constraints.push(crate::lp::Constraint::eq(row, vertex[coord].clone()));
            }
            let mut ones = vec![Rat::one(); eligible.len()];
            ones.extend(vec![Rat::zero(); sigma.len()]);
            constraints.push(crate::lp::Constraint::eq(ones, Rat::one()));
            let nonneg = vec![true; eligible.len() + sigma.len()];
            if crate::lp::feasible_point(&constraints, &nonneg).is_none() {
                return Verdict::fail(
                    Certificate::new(
                        "quad/hull",
                        "a vertex is not reachable from the eligible weights along the roots",
                    )
                    .with("vertex", vec_to_string(vertex)),
                );
            }
        }
        self.admissible_for_monoid(sigma)
    }
}
