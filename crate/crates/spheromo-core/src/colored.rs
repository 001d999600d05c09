//! Colors of a dominant polytope relative to a set of spherical roots, the
//! colored fan over its orbit faces, and the geometric verdicts built on
//! top: fan validity, smoothness, Kaehler candidates, reflexivity, Delzant
//! vertices, and the facet wall condition.
//!
//! A color is an affine form on the polytope determined by the root set: a
//! linear functional `rho` on the lattice together with its value `n_d` at a
//! fixed reference point.  The face on which a color vanishes controls which
//! cones of the fan it decorates.

use crate::cone::Cone;
use crate::lp::{self, Constraint, LpOutcome};
use crate::matrix;
use crate::momentum::{doubled_simple_index, simple_index, PairContext};
use crate::num::{
    add_vec, cmp_vec, dot, int_to_rat_vec, is_zero_vec, primitive_vector, rat_int, rat_to_string,
    scale_vec, sub_vec, vec_to_string, Rat,
};
use crate::polykernel::Polytope;
use crate::rootsys::{CatalogEntry, RootSystem, RowTag};
use crate::tables::SocleRegistry;
use crate::verdict::{Certificate, Verdict};
use crate::{CoreError, CoreResult};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

/// How a color arises from the root set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColorKind {
    /// Attached to a simple root that is itself in the root set.
    Simple,
    /// Attached to a simple root whose double is in the root set.
    Doubled,
    /// Attached to a class of simple roots outside the root set.
    Wall,
}

/// One color: its functional on the lattice, its value at the reference
/// point, and the simple roots that move it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Color {
    pub name: String,
    pub kind: ColorKind,
    pub rho: Vec<Rat>,
    pub n_d: Rat,
    pub moved_by: Vec<usize>,
}

/// All colors for one root set, anchored at a reference point of the
/// polytope.  The vanishing loci of the color forms do not depend on the
/// reference point; only the stored `n_d` values do.
#[derive(Debug, Clone)]
pub struct ColorTable {
    colors: Vec<Color>,
    reference_ambient: Vec<Rat>,
    reference_xi: Vec<Rat>,
}

impl ColorTable {
    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn reference_ambient(&self) -> &[Rat] {
        &self.reference_ambient
    }

    pub fn reference_xi(&self) -> &[Rat] {
        &self.reference_xi
    }

    /// Value of the color form at a point in lattice coordinates.
    pub fn value(&self, color: usize, point_xi: &[Rat]) -> Rat {
        let c = &self.colors[color];
        dot(&c.rho, &sub_vec(point_xi, &self.reference_xi)) + &c.n_d
    }

    /// Indices of the colors moved by the given simple root.
    pub fn moved_by(&self, alpha: usize) -> Vec<usize> {
        (0..self.colors.len())
            .filter(|&d| self.colors[d].moved_by.contains(&alpha))
            .collect()
    }

    /// Colors whose form vanishes on every listed vertex.
    pub fn vanishing_on(&self, poly: &Polytope, vertex_indices: &[usize]) -> Vec<usize> {
        (0..self.colors.len())
            .filter(|&d| {
                vertex_indices
                    .iter()
                    .all(|&v| self.value(d, &poly.vertices_xi()[v]).is_zero())
            })
            .collect()
    }
}

/// Build the color table for a pairwise-admissible root set.
///
/// Simple members contribute a plus and a minus color; instances with equal
/// functionals glue to one color when they come from distinct simple roots.
/// Doubled members contribute one color with half the coroot restriction.
/// Every remaining simple root outside the vanishing set contributes through
/// its orthogonality class one color with the full coroot restriction.
///
/// `reference` is an ambient point of the polytope; `None` picks the
/// lexicographically least orbit vertex.
pub fn color_table(
    ctx: &PairContext,
    sigma: &[&CatalogEntry],
    reference: Option<&[Rat]>,
) -> CoreResult<ColorTable> {
    let rs = ctx.root_system();
    let poly = ctx.polytope();
    let (reference_ambient, reference_xi) = match reference {
        Some(w) => {
            let xi = poly.to_xi(w).ok_or_else(|| {
                CoreError::InvalidInput(
                    "reference point lies outside the affine span of the polytope".into(),
                )
            })?;
            (w.to_vec(), xi)
        }
        None => {
            let anchor = ctx
                .orbit_vertex_indices(sigma)
                .into_iter()
                .min_by(|&a, &b| cmp_vec(&poly.vertices_xi()[a], &poly.vertices_xi()[b]))
                .ok_or_else(|| {
                    CoreError::InvalidInput("no orbit vertex to anchor the color table".into())
                })?;
            (
                poly.vertices_ambient()[anchor].clone(),
                poly.vertices_xi()[anchor].clone(),
            )
        }
    };

    let mut simple_members: Vec<usize> = Vec::new();
    let mut doubled_members: Vec<usize> = Vec::new();
    for entry in sigma {
        if let Some(a) = simple_index(entry) {
            simple_members.push(a);
        }
        if let Some(a) = doubled_simple_index(entry) {
            doubled_members.push(a);
        }
    }
    simple_members.sort_unstable();
    doubled_members.sort_unstable();

    // Plus/minus instances of the simple members, grouped by functional.
    struct Instance {
        alpha: usize,
        positive: bool,
        rho: Vec<Rat>,
        n_d: Rat,
    }
    let mut instances: Vec<Instance> = Vec::new();
    let mut simple_entries: Vec<(usize, &CatalogEntry)> = sigma
        .iter()
        .filter_map(|e| simple_index(e).map(|a| (a, *e)))
        .collect();
    simple_entries.sort_by_key(|&(a, _)| a);
    for (a, entry) in simple_entries {
        let pair = ctx.alpha_pair(entry).ok_or_else(|| {
            CoreError::InvalidInput(format!("no facet pair for the simple root {}", entry.name))
        })?;
        let n_plus = poly.facet_value(pair.facet, &reference_xi);
        let n_minus = rs.pair_simple(a, &reference_ambient) - &n_plus;
        instances.push(Instance { alpha: a, positive: true, rho: pair.plus, n_d: n_plus });
        instances.push(Instance { alpha: a, positive: false, rho: pair.minus, n_d: n_minus });
    }

    let mut colors: Vec<Color> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, inst) in instances.iter().enumerate() {
        match groups.iter_mut().find(|g| instances[g[0]].rho == inst.rho) {
            Some(g) => g.push(i),
            None => groups.push(vec![i]),
        }
    }
    for group in &groups {
        let alphas: BTreeSet<usize> = group.iter().map(|&i| instances[i].alpha).collect();
        let instance_name = |inst: &Instance| {
            let sign = if inst.positive { '+' } else { '-' };
            format!("D{sign}({})", rs.label(inst.alpha))
        };
        if alphas.len() >= 2 {
            // One glued color; the first instance fixes name and value.
            let first = &instances[group[0]];
            colors.push(Color {
                name: instance_name(first),
                kind: ColorKind::Simple,
                rho: first.rho.clone(),
                n_d: first.n_d.clone(),
                moved_by: alphas.into_iter().collect(),
            });
        } else {
            for &i in group {
                let inst = &instances[i];
                colors.push(Color {
                    name: instance_name(inst),
                    kind: ColorKind::Simple,
                    rho: inst.rho.clone(),
                    n_d: inst.n_d.clone(),
                    moved_by: vec![inst.alpha],
                });
            }
        }
    }

    for &a in &doubled_members {
        let half = Rat::one() / rat_int(2);
        colors.push(Color {
            name: format!("D(2*{})", rs.label(a)),
            kind: ColorKind::Doubled,
            rho: scale_vec(&half, ctx.coroot_on_lattice(a)),
            n_d: rs.pair_simple(a, &reference_ambient) * half,
            moved_by: vec![a],
        });
    }

    // Orthogonality classes of the remaining simple roots: two are glued
    // when their sum or half-sum is in the root set.
    let excluded: BTreeSet<usize> = simple_members
        .iter()
        .chain(doubled_members.iter())
        .chain(ctx.s_perp_q().iter())
        .copied()
        .collect();
    let rest: Vec<usize> = (0..rs.rank()).filter(|a| !excluded.contains(a)).collect();
    let in_sigma = |coeffs: &[Rat]| sigma.iter().any(|e| e.coeffs == coeffs);
    let mut class_of: BTreeMap<usize, usize> = rest.iter().map(|&a| (a, a)).collect();
    let root_of = |class_of: &BTreeMap<usize, usize>, mut a: usize| {
        while class_of[&a] != a {
            a = class_of[&a];
        }
        a
    };
    for (i, &a) in rest.iter().enumerate() {
        for &b in &rest[i + 1..] {
            if !rs.is_orthogonal(a, b) {
                continue;
            }
            let mut sum = vec![Rat::zero(); rs.rank()];
            sum[a] = Rat::one();
            sum[b] = Rat::one();
            let half_sum = scale_vec(&(Rat::one() / rat_int(2)), &sum);
            if in_sigma(&sum) || in_sigma(&half_sum) {
                let (ra, rb) = (root_of(&class_of, a), root_of(&class_of, b));
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                class_of.insert(hi, lo);
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &a in &rest {
        classes.entry(root_of(&class_of, a)).or_default().push(a);
    }
    for (rep, members) in classes {
        let labels: Vec<&str> = members.iter().map(|&a| rs.label(a)).collect();
        colors.push(Color {
            name: format!("D({})", labels.join(",")),
            kind: ColorKind::Wall,
            rho: ctx.coroot_on_lattice(rep).to_vec(),
            n_d: rs.pair_simple(rep, &reference_ambient),
            moved_by: members,
        });
    }

    Ok(ColorTable { colors, reference_ambient, reference_xi })
}

/// Local data at an orbit vertex: the simple roots all of whose colors
/// vanish there, the vanishing colors themselves, and the extremal rays of
/// the vertex cone not covered by any vanishing color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitVertexData {
    pub simple_roots: Vec<usize>,
    pub colors: Vec<usize>,
    pub rays: Vec<Vec<Rat>>,
}

fn ray_covered(ray: &[Rat], rho: &[Rat]) -> bool {
    is_zero_vec(rho) || primitive_vector(rho) == primitive_vector(ray)
}

pub fn orbit_vertex_data(
    ctx: &PairContext,
    sigma: &[&CatalogEntry],
    table: &ColorTable,
    vertex: usize,
) -> CoreResult<OrbitVertexData> {
    if !ctx.orbit_vertex_indices(sigma).contains(&vertex) {
        return Err(CoreError::InvalidInput(format!(
            "vertex {vertex} is not an orbit vertex for this root set"
        )));
    }
    let poly = ctx.polytope();
    let vx = &poly.vertices_xi()[vertex];
    let colors: Vec<usize> = (0..table.colors().len())
        .filter(|&d| table.value(d, vx).is_zero())
        .collect();
    let gens: Vec<Vec<Rat>> = poly
        .tight_facets_at(vx)
        .iter()
        .map(|&f| poly.facets()[f].normal.clone())
        .collect();
    let cone = Cone::new(poly.lattice().rank(), gens);
    let rays: Vec<Vec<Rat>> = cone
        .extremal_generator_indices()
        .into_iter()
        .map(|i| cone.generators()[i].clone())
        .filter(|g| !colors.iter().any(|&d| ray_covered(g, &table.colors()[d].rho)))
        .collect();
    let simple_roots: Vec<usize> = (0..ctx.root_system().rank())
        .filter(|&a| table.moved_by(a).iter().all(|d| colors.contains(d)))
        .collect();
    Ok(OrbitVertexData { simple_roots, colors, rays })
}

/// One cone of a colored fan: the polytope face it sits over, the normals
/// of the facets through that face, and the colors vanishing on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredCone {
    pub face: usize,
    pub generators: Vec<Vec<Rat>>,
    pub colors: Vec<usize>,
}

/// The colored fan over the orbit faces of the polytope.
pub fn colored_fan(ctx: &PairContext, sigma: &[&CatalogEntry], table: &ColorTable) -> Vec<ColoredCone> {
    let poly = ctx.polytope();
    ctx.orbit_face_indices(sigma)
        .into_iter()
        .map(|k| {
            let face = &poly.faces()[k];
            let generators: Vec<Vec<Rat>> = face
                .tight_facets
                .iter()
                .map(|&f| poly.facets()[f].normal.clone())
                .collect();
            let colors = table.vanishing_on(poly, &face.vertex_indices);
            ColoredCone { face: k, generators, colors }
        })
        .collect()
}

fn face_label(poly: &Polytope, face: usize) -> String {
    format!("{:?}", poly.faces()[face].vertex_indices)
}

fn is_superset(sup: &[usize], sub: &[usize]) -> bool {
    sub.iter().all(|x| sup.contains(x))
}

fn face_cone(poly: &Polytope, face: usize) -> Cone {
    let gens: Vec<Vec<Rat>> = poly.faces()[face]
        .tight_facets
        .iter()
        .map(|&f| poly.facets()[f].normal.clone())
        .collect();
    Cone::new(poly.lattice().rank(), gens)
}

/// Check the colored-cone and fan axioms plus completeness against the
/// valuation region of `sigma_xi` (roots in lattice coordinates).
///
/// Per cone: every color functional lies in the cone, and every extremal
/// ray is either a valuation or covered by a color of the cone; the
/// relative interior meets the valuation region; the cone is strictly
/// convex with nonvanishing color functionals.  Across cones: faces of
/// cones that meet the region are again in the fan with the restricted
/// colors, relative interiors are pairwise disjoint inside the region, and
/// every face of the polytope whose normal cone meets the region carries a
/// cone.
pub fn validate_colored_fan(
    poly: &Polytope,
    colors: &[Color],
    sigma_xi: &[Vec<Rat>],
    fan: &[ColoredCone],
) -> Verdict {
    let rank = poly.lattice().rank();
    let cones: Vec<Cone> = fan
        .iter()
        .map(|c| Cone::new(rank, c.generators.clone()))
        .collect();
    let by_face: BTreeMap<usize, usize> =
        fan.iter().enumerate().map(|(i, c)| (c.face, i)).collect();

    for (cc, cone) in fan.iter().zip(&cones) {
        for &d in &cc.colors {
            if !cone.contains(&colors[d].rho) {
                return Verdict::fail(
                    Certificate::new("fan/cc1", "a color functional lies outside its cone")
                        .with("face", face_label(poly, cc.face))
                        .with("color", colors[d].name.clone())
                        .with("functional", vec_to_string(&colors[d].rho)),
                );
            }
        }
        for i in cone.extremal_generator_indices() {
            let g = &cone.generators()[i];
            let in_region = sigma_xi.iter().all(|s| !dot(g, s).is_positive());
            let covered = cc
                .colors
                .iter()
                .any(|&d| !is_zero_vec(&colors[d].rho) && ray_covered(g, &colors[d].rho));
            if !(in_region || covered) {
                return Verdict::fail(
                    Certificate::new(
                        "fan/cc1",
                        "an extremal ray is neither a valuation nor covered by a color",
                    )
                    .with("face", face_label(poly, cc.face))
                    .with("ray", vec_to_string(g)),
                );
            }
        }
    }

    for (cc, cone) in fan.iter().zip(&cones) {
        if !cone.relint_meets(sigma_xi) {
            return Verdict::fail(
                Certificate::new(
                    "fan/cc2",
                    "the relative interior of a cone misses the valuation region",
                )
                .with("face", face_label(poly, cc.face)),
            );
        }
    }

    for (cc, cone) in fan.iter().zip(&cones) {
        if !cone.is_pointed() {
            return Verdict::fail(
                Certificate::new("fan/scc", "a cone contains a line")
                    .with("face", face_label(poly, cc.face)),
            );
        }
        for &d in &cc.colors {
            if is_zero_vec(&colors[d].rho) {
                return Verdict::fail(
                    Certificate::new("fan/scc", "a color functional vanishes")
                        .with("face", face_label(poly, cc.face))
                        .with("color", colors[d].name.clone()),
                );
            }
        }
    }

    for cc in fan {
        let base = &poly.faces()[cc.face].vertex_indices;
        for k2 in 0..poly.faces().len() {
            if k2 == cc.face || !is_superset(&poly.faces()[k2].vertex_indices, base) {
                continue;
            }
            let sub = face_cone(poly, k2);
            if !sub.relint_meets(sigma_xi) {
                continue;
            }
            let Some(&j) = by_face.get(&k2) else {
                return Verdict::fail(
                    Certificate::new("fan/cf1", "a face of a colored cone is missing from the fan")
                        .with("face", face_label(poly, cc.face))
                        .with("missing-face", face_label(poly, k2)),
                );
            };
            let expect: Vec<usize> = cc
                .colors
                .iter()
                .copied()
                .filter(|&d| sub.contains(&colors[d].rho))
                .collect();
            let mut got = fan[j].colors.clone();
            got.sort_unstable();
            if expect != got {
                return Verdict::fail(
                    Certificate::new("fan/cf1", "the colors of a face are not the restriction")
                        .with("face", face_label(poly, cc.face))
                        .with("sub-face", face_label(poly, k2)),
                );
            }
        }
    }

    for i in 0..fan.len() {
        for j in i + 1..fan.len() {
            if relints_overlap_in_region(&fan[i].generators, &fan[j].generators, sigma_xi) {
                return Verdict::fail(
                    Certificate::new(
                        "fan/cf2",
                        "two cones overlap in their relative interiors inside the region",
                    )
                    .with("face", face_label(poly, fan[i].face))
                    .with("other-face", face_label(poly, fan[j].face)),
                );
            }
        }
    }

    for k in 0..poly.faces().len() {
        if face_cone(poly, k).relint_meets(sigma_xi) && !by_face.contains_key(&k) {
            return Verdict::fail(
                Certificate::new("fan/complete", "an orbit face of the polytope has no cone")
                    .with("face", face_label(poly, k)),
            );
        }
    }

    Verdict::pass()
}

/// Is there a point in both relative interiors that also satisfies
/// `<x, s> <= 0` for every row `s`?  Relative interiors are the
/// combinations of all generators with coefficients at least one, up to
/// scaling.
fn relints_overlap_in_region(a: &[Vec<Rat>], b: &[Vec<Rat>], sigma_xi: &[Vec<Rat>]) -> bool {
    let dim = a.first().or_else(|| b.first()).map_or(0, Vec::len);
    let nvars = a.len() + b.len();
    let mut cons: Vec<Constraint> = Vec::new();
    for d in 0..dim {
        let mut row = Vec::with_capacity(nvars);
        let mut rhs = Rat::zero();
        for g in a {
            row.push(g[d].clone());
            rhs -= &g[d];
        }
        for g in b {
            row.push(-g[d].clone());
            rhs += &g[d];
        }
        cons.push(Constraint::eq(row, rhs));
    }
    for s in sigma_xi {
        let mut row = Vec::with_capacity(nvars);
        let mut rhs = Rat::zero();
        for g in a {
            row.push(dot(g, s));
            rhs -= dot(g, s);
        }
        row.resize(nvars, Rat::zero());
        cons.push(Constraint::le(row, rhs));
    }
    lp::feasible_point(&cons, &vec![true; nvars]).is_some()
}

/// The root set prepared for socle comparisons: entries are doubled when
/// their support is a chain ending in a short root with all other support
/// roots vanishing on the polytope, when they are the long variant on the
/// exceptional two-root diagram, or when they lie outside the root lattice.
/// Returns `(coefficients, lattice coordinates)` per entry, aligned with
/// the input.
pub fn socle_roots(ctx: &PairContext, sigma: &[&CatalogEntry]) -> Vec<(Vec<Rat>, Vec<Rat>)> {
    let rs = ctx.root_system();
    sigma
        .iter()
        .map(|entry| {
            let mut double = entry.tag == RowTag::G2Long
                || entry.coeffs.iter().any(|c| !c.is_integer());
            if entry.tag == RowTag::BChain {
                if let Some(long_end) = bchain_long_end(rs, &entry.support) {
                    double = entry
                        .support
                        .iter()
                        .all(|&i| i == long_end || ctx.s_perp_q().contains(&i));
                }
            }
            let factor = if double { rat_int(2) } else { Rat::one() };
            let xi = ctx
                .sigma_xi(entry)
                .expect("catalog roots used here lie in the lattice span");
            (scale_vec(&factor, &entry.coeffs), scale_vec(&factor, &xi))
        })
        .collect()
}

/// The endpoint of a short-ended chain opposite the short root, if the
/// support is such a chain.
fn bchain_long_end(rs: &RootSystem, support: &[usize]) -> Option<usize> {
    let neighbors = |i: usize| {
        support
            .iter()
            .filter(move |&&j| j != i && !rs.is_orthogonal(i, j))
            .count()
    };
    let short = support
        .iter()
        .copied()
        .find(|&i| support.iter().any(|&j| j != i && rs.cartan()[i][j] == -rat_int(2).to_integer()))?;
    support
        .iter()
        .copied()
        .find(|&e| e != short && neighbors(e) == 1)
}

/// Which admissibility gate guards the smoothness test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmoothLevel {
    /// Pairwise admissibility only; integrality conditions are not applied.
    Real,
    /// Full admissibility including the integral orbit vertex conditions.
    Algebraic,
}

/// Smoothness of the triple: at every orbit vertex the color functionals
/// together with the uncovered rays must form a basis of the dual lattice,
/// and the local model classified from the vertex data must match a
/// registered socle shape.
pub fn smooth_check(
    ctx: &PairContext,
    sigma: &[&CatalogEntry],
    level: SmoothLevel,
    registry: &SocleRegistry,
) -> Verdict {
    let gate = match level {
        SmoothLevel::Real => ctx.q_admissible(sigma),
        SmoothLevel::Algebraic => ctx.admissible(sigma),
    };
    if !gate.is_pass() {
        return gate;
    }
    let orbit_vertices = ctx.orbit_vertex_indices(sigma);
    if orbit_vertices.is_empty() {
        return Verdict::fail(Certificate::new(
            "adm/no-orbit-vertex",
            "no vertex normal cone meets the valuation region in its relative interior",
        ));
    }
    let table = color_table(ctx, sigma, None).expect("admissible data always yields a color table");
    let socle = socle_roots(ctx, sigma);
    let poly = ctx.polytope();
    let rank = poly.lattice().rank();
    for &v in &orbit_vertices {
        let data = orbit_vertex_data(ctx, sigma, &table, v)
            .expect("indices come from the orbit vertex list");
        let vertex_str = vec_to_string(&poly.vertices_ambient()[v]);
        let mut rows: Vec<Vec<Rat>> = data
            .colors
            .iter()
            .map(|&d| table.colors()[d].rho.clone())
            .collect();
        rows.extend(data.rays.iter().cloned());
        if rows.len() != rank {
            return Verdict::fail(
                Certificate::new(
                    "smooth/basis",
                    "colors and uncovered rays do not match the lattice rank",
                )
                .with("vertex", vertex_str)
                .with("functionals", format!("{}", rows.len()))
                .with("rank", format!("{rank}")),
            );
        }
        let det = matrix::det(&rows);
        if det.abs() != Rat::one() {
            return Verdict::fail(
                Certificate::new(
                    "smooth/basis",
                    "colors and uncovered rays do not span the dual lattice",
                )
                .with("vertex", vertex_str)
                .with("determinant", rat_to_string(&det)),
            );
        }
        let local = socle_verdict(ctx, &table, &socle, &data, &vertex_str, registry);
        if !local.is_pass() {
            return local;
        }
    }
    Verdict::pass()
}

/// Classify the local model at one orbit vertex and compare it with the
/// registered socle shape of that classification.
fn socle_verdict(
    ctx: &PairContext,
    table: &ColorTable,
    socle: &[(Vec<Rat>, Vec<Rat>)],
    data: &OrbitVertexData,
    vertex_str: &str,
    registry: &SocleRegistry,
) -> Verdict {
    let rs = ctx.root_system();
    let sv: BTreeSet<usize> = data.simple_roots.iter().copied().collect();
    let mut local: Vec<&(Vec<Rat>, Vec<Rat>)> = socle
        .iter()
        .filter(|(coeffs, _)| {
            coeffs.iter().enumerate().all(|(i, c)| {
                c.is_integer() && (c.is_zero() || sv.contains(&i))
            })
        })
        .collect();
    local.sort_by(|x, y| cmp_vec(&x.0, &y.0));
    local.dedup_by(|x, y| x.0 == y.0);

    let parabolic = |a: &usize| ctx.s_perp_q().contains(a);
    let s_type: Option<&str> = if local.is_empty() && data.simple_roots.iter().all(parabolic) {
        Some("")
    } else if data.simple_roots.len() == 2
        && rs.is_orthogonal(data.simple_roots[0], data.simple_roots[1])
        && !data.simple_roots.iter().any(parabolic)
        && local.len() == 1
        && local[0].0.iter().enumerate().all(|(i, c)| {
            if sv.contains(&i) { c.is_one() } else { c.is_zero() }
        })
    {
        Some("a1xa1_sum")
    } else {
        None
    };

    let unknown = |detail: String| {
        Verdict::unsupported(
            Certificate::new("smooth/socle-unknown", "no registered model for the local data")
                .with("vertex", String::from(vertex_str))
                .with("local-roots", detail),
        )
    };
    let local_names = || {
        let names: Vec<String> = local.iter().map(|(c, _)| rs.combination_name(c)).collect();
        let roots: Vec<&str> = data.simple_roots.iter().map(|&a| rs.label(a)).collect();
        format!("simple {:?}, socle {:?}", roots, names)
    };
    let Some(s_type) = s_type else {
        return unknown(local_names());
    };
    let Some(entry) = registry.entry_for(s_type) else {
        return unknown(local_names());
    };
    if s_type.is_empty() {
        // No local roots constrain the colors; the shape itself suffices.
        return Verdict::pass();
    }

    let pairings =
        |rho: &[Rat]| -> Vec<Rat> { local.iter().map(|(_, xi)| dot(rho, xi)).collect() };
    let mut a_got: Vec<Vec<Rat>> = Vec::new();
    let mut d_got: Vec<Vec<Rat>> = Vec::new();
    let mut extra_got: Vec<Vec<Rat>> = Vec::new();
    for &d in &data.colors {
        let color = &table.colors()[d];
        let moved_local = color.moved_by.iter().any(|a| sv.contains(a));
        let bucket = if !moved_local {
            &mut extra_got
        } else if color.kind == ColorKind::Simple {
            &mut a_got
        } else {
            &mut d_got
        };
        bucket.push(pairings(&color.rho));
    }
    for ray in &data.rays {
        extra_got.push(pairings(ray));
    }
    let canon = |mut lists: Vec<Vec<Rat>>| {
        lists.sort_by(|x, y| cmp_vec(x, y));
        lists
    };
    let buckets = [
        ("simple-colors", canon(a_got), canon(entry.a_pairings.clone())),
        ("moved-colors", canon(d_got), canon(entry.d_pairings.clone())),
        ("unmoved", canon(extra_got), canon(entry.extra_pairings.clone())),
    ];
    for (name, got, want) in buckets {
        if got != want {
            let render = |lists: &[Vec<Rat>]| {
                let parts: Vec<String> = lists.iter().map(|l| vec_to_string(l)).collect();
                parts.join("; ")
            };
            return Verdict::fail(
                Certificate::new("smooth/socle", "local pairings differ from the registered model")
                    .with("vertex", String::from(vertex_str))
                    .with("shape", String::from(s_type))
                    .with("bucket", String::from(name))
                    .with("got", render(&got))
                    .with("want", render(&want)),
            );
        }
    }
    Verdict::pass()
}

/// Smoothness verdict for every pairwise-admissible subset of the catalog,
/// with integrality conditions dropped.
pub fn kaehler_survey(ctx: &PairContext, registry: &SocleRegistry) -> Vec<(Vec<usize>, Verdict)> {
    ctx.enumerate_q_admissible()
        .into_iter()
        .map(|subset| {
            let sigma: Vec<&CatalogEntry> = subset.iter().map(|&i| &ctx.catalog()[i]).collect();
            let verdict = smooth_check(ctx, &sigma, SmoothLevel::Real, registry);
            (subset, verdict)
        })
        .collect()
}

/// The catalog subsets that pass the smoothness test with integrality
/// conditions dropped.
pub fn kaehler_check(ctx: &PairContext, registry: &SocleRegistry) -> Vec<Vec<usize>> {
    kaehler_survey(ctx, registry)
        .into_iter()
        .filter(|(_, v)| v.is_pass())
        .map(|(s, _)| s)
        .collect()
}

/// Every vertex must be simple with facet normals forming a basis of the
/// dual lattice.
pub fn delzant_check(poly: &Polytope) -> Verdict {
    let rank = poly.lattice().rank();
    for (v, vx) in poly.vertices_xi().iter().enumerate() {
        let rows: Vec<Vec<Rat>> = poly
            .tight_facets_at(vx)
            .iter()
            .map(|&f| poly.facets()[f].normal.clone())
            .collect();
        let vertex_str = vec_to_string(&poly.vertices_ambient()[v]);
        if rows.len() != rank {
            return Verdict::fail(
                Certificate::new("delzant/vertex-basis", "vertex is not simple")
                    .with("vertex", vertex_str)
                    .with("facets", format!("{}", rows.len()))
                    .with("rank", format!("{rank}")),
            );
        }
        let det = matrix::det(&rows);
        if det.abs() != Rat::one() {
            return Verdict::fail(
                Certificate::new(
                    "delzant/vertex-basis",
                    "facet normals at a vertex do not span the dual lattice",
                )
                .with("vertex", vertex_str)
                .with("determinant", rat_to_string(&det)),
            );
        }
    }
    Verdict::pass()
}

/// Reflexivity of the polytope in the full weight lattice: full dimension,
/// facet hyperplanes stable under the stabilizer of every vertex and facet
/// barycenter, and every facet meeting the open dominant chamber.
pub fn reflective_check(poly: &Polytope, rs: &RootSystem) -> Verdict {
    let lat = poly.lattice();
    if poly.dim() != lat.ambient_dim() {
        return Verdict::fail(
            Certificate::new("reflective/dimension", "the polytope is not full-dimensional")
                .with("dimension", format!("{}", poly.dim()))
                .with("ambient", format!("{}", lat.ambient_dim())),
        );
    }
    let basis_rows: Vec<Vec<Rat>> = lat.basis().iter().map(|b| int_to_rat_vec(b)).collect();
    let mut alpha_xi: Vec<Vec<Rat>> = Vec::with_capacity(rs.rank());
    let mut coroot_xi: Vec<Vec<Rat>> = Vec::with_capacity(rs.rank());
    for a in 0..rs.rank() {
        let Some(coords) = lat.coordinates(rs.simple_root(a)) else {
            return Verdict::fail(
                Certificate::new(
                    "reflective/dimension",
                    "a simple root lies outside the lattice span",
                )
                .with("root", String::from(rs.label(a))),
            );
        };
        alpha_xi.push(coords);
        coroot_xi.push(basis_rows.iter().map(|r| rs.pair_simple(a, r)).collect());
    }

    let mut points: Vec<(Vec<Rat>, String)> = poly
        .vertices_ambient()
        .iter()
        .map(|v| (v.clone(), format!("vertex {}", vec_to_string(v))))
        .collect();
    for facet in poly.facets() {
        let count = rat_int(facet.vertex_indices.len() as i64);
        let mut sum = vec![Rat::zero(); lat.ambient_dim()];
        for &v in &facet.vertex_indices {
            sum = add_vec(&sum, &poly.vertices_ambient()[v]);
        }
        let bary = scale_vec(&(Rat::one() / count), &sum);
        points.push((
            bary,
            format!("facet-barycenter {}", vec_to_string(&facet.normal)),
        ));
    }

    for (ambient, label) in &points {
        let xi = poly.to_xi(ambient).expect("points lie in the affine span");
        let tight = poly.tight_facets_at(&xi);
        for a in 0..rs.rank() {
            if !rs.pair_simple(a, ambient).is_zero() {
                continue;
            }
            let shift = rs.pair_simple(a, poly.base_vertex_ambient());
            for &f in &tight {
                let p = dot(&poly.facets()[f].normal, &alpha_xi[a]);
                if p.is_zero() {
                    continue;
                }
                let rho2 = sub_vec(&poly.facets()[f].normal, &scale_vec(&p, &coroot_xi[a]));
                let m2 = &poly.facets()[f].offset - &p * &shift;
                let stable = tight.iter().any(|&f2| {
                    let n2 = &poly.facets()[f2].normal;
                    let o2 = &poly.facets()[f2].offset;
                    (rho2 == *n2 && m2 == *o2)
                        || (rho2 == n2.iter().map(|x| -x.clone()).collect::<Vec<Rat>>()
                            && m2 == -o2.clone())
                });
                if !stable {
                    return Verdict::fail(
                        Certificate::new(
                            "reflective/face-stability",
                            "a wall reflection moves a facet hyperplane off the tight set",
                        )
                        .with("point", label.clone())
                        .with("root", String::from(rs.label(a)))
                        .with("facet-normal", vec_to_string(&poly.facets()[f].normal)),
                    );
                }
            }
        }
    }

    for facet in poly.facets() {
        let k = facet.vertex_indices.len();
        let mut cons: Vec<Constraint> = Vec::new();
        let mut row = vec![Rat::one(); k];
        row.push(Rat::zero());
        cons.push(Constraint::eq(row, Rat::one()));
        for a in 0..rs.rank() {
            let mut row: Vec<Rat> = facet
                .vertex_indices
                .iter()
                .map(|&v| rs.pair_simple(a, &poly.vertices_ambient()[v]))
                .collect();
            row.push(-Rat::one());
            cons.push(Constraint::ge(row, Rat::zero()));
        }
        let mut row = vec![Rat::zero(); k];
        row.push(Rat::one());
        cons.push(Constraint::le(row, Rat::one()));
        let mut objective = vec![Rat::zero(); k];
        objective.push(Rat::one());
        let mut nonneg = vec![true; k];
        nonneg.push(false);
        let dominant = match lp::maximize(&objective, &cons, &nonneg) {
            LpOutcome::Optimal(value, _) => value.is_positive(),
            LpOutcome::Unbounded => true,
            LpOutcome::Infeasible => false,
        };
        if !dominant {
            return Verdict::fail(
                Certificate::new(
                    "reflective/facet-dominant",
                    "a facet does not meet the open dominant chamber",
                )
                .with("facet-normal", vec_to_string(&facet.normal)),
            );
        }
    }
    Verdict::pass()
}

/// For every facet and simple root: the facet normal pairs positively with
/// the root exactly when the facet contains the whole wall slice of the
/// polytope.
pub fn woodward_facet_condition(poly: &Polytope, rs: &RootSystem) -> Verdict {
    let lat = poly.lattice();
    let mut alpha_xi: Vec<Vec<Rat>> = Vec::with_capacity(rs.rank());
    for a in 0..rs.rank() {
        let Some(coords) = lat.coordinates(rs.simple_root(a)) else {
            return Verdict::unsupported(
                Certificate::new("woodward/facet", "a simple root lies outside the lattice span")
                    .with("root", String::from(rs.label(a))),
            );
        };
        alpha_xi.push(coords);
    }
    let walls: Vec<Vec<usize>> = (0..rs.rank())
        .map(|a| {
            (0..poly.vertices_ambient().len())
                .filter(|&v| rs.pair_simple(a, &poly.vertices_ambient()[v]).is_zero())
                .collect()
        })
        .collect();
    for facet in poly.facets() {
        for a in 0..rs.rank() {
            let pairing = dot(&facet.normal, &alpha_xi[a]);
            let positive = pairing.is_positive();
            let contains_wall = is_superset(&facet.vertex_indices, &walls[a]);
            if positive != contains_wall {
                return Verdict::fail(
                    Certificate::new(
                        "woodward/facet",
                        "facet pairing and wall containment disagree",
                    )
                    .with("facet-normal", vec_to_string(&facet.normal))
                    .with("root", String::from(rs.label(a)))
                    .with("pairing", rat_to_string(&pairing))
                    .with("wall-vertices", format!("{:?}", walls[a])),
                );
            }
        }
    }
    Verdict::pass()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Lattice;
    use crate::num::{rat, vec_int, vec_rat};
    use crate::rootsys::SimpleKind;
    use crate::tables::{AxiomSTable, PermittedFamily, SocleEntry};
    use crate::verdict::Status;
    use alloc::string::ToString;

    fn full_table() -> AxiomSTable {
        use crate::rootsys::ALL_ROW_TAGS;
        let rows = ALL_ROW_TAGS
            .iter()
            .map(|&tag| {
                let families = match tag {
                    RowTag::AChain | RowTag::BChain | RowTag::CChain | RowTag::A3Mid
                    | RowTag::DHalf | RowTag::F4Root | RowTag::G2Long => {
                        vec![PermittedFamily::ZeroPairingFull]
                    }
                    _ => vec![PermittedFamily::Empty],
                };
                (tag, families)
            })
            .collect();
        AxiomSTable::new(rows).unwrap()
    }

    fn registry() -> SocleRegistry {
        SocleRegistry::new(vec![
            SocleEntry {
                id: "trivial".to_string(),
                s_type: "".to_string(),
                a_pairings: vec![],
                d_pairings: vec![],
                extra_pairings: vec![],
            },
            SocleEntry {
                id: "a1xa1-sum".to_string(),
                s_type: "a1xa1_sum".to_string(),
                a_pairings: vec![],
                d_pairings: vec![vec![rat_int(2)]],
                extra_pairings: vec![vec![rat_int(-1)]],
            },
        ])
        .unwrap()
    }

    fn entry<'a>(catalog: &'a [CatalogEntry], name: &str) -> &'a CatalogEntry {
        catalog
            .iter()
            .find(|e| e.name == name)
            .unwrap_or_else(|| panic!("{name} not in catalog"))
    }

    fn foschi() -> (RootSystem, Polytope) {
        let rs = RootSystem::simple(SimpleKind::A, 2).unwrap();
        let lattice =
            Lattice::new(vec![vec_int(&[2, -1]), vec_int(&[-1, 2])], 2).unwrap();
        let poly = Polytope::new(
            lattice,
            vec![vec_rat(&[4, 4]), vec_rat(&[5, 2]), vec_rat(&[2, 5])],
        )
        .unwrap();
        (rs, poly)
    }

    fn sp6() -> (RootSystem, Polytope) {
        let rs = RootSystem::simple(SimpleKind::C, 3).unwrap();
        let lattice =
            Lattice::new(vec![vec_int(&[2, -3, 2]), vec_int(&[-1, 2, -1])], 3).unwrap();
        let poly = Polytope::new(
            lattice,
            vec![
                vec![Rat::zero(), rat(1, 2), Rat::zero()],
                vec_rat(&[0, 1, 0]),
                vec![rat(1, 3), Rat::zero(), rat(1, 3)],
            ],
        )
        .unwrap();
        (rs, poly)
    }

    fn sp4() -> (RootSystem, Polytope) {
        let rs = RootSystem::simple(SimpleKind::C, 2).unwrap();
        let lattice = Lattice::new(vec![vec_int(&[0, 1]), vec_int(&[4, -2])], 2).unwrap();
        let poly = Polytope::new(
            lattice,
            vec![vec_rat(&[0, 0]), vec_rat(&[0, 4]), vec_rat(&[8, 0])],
        )
        .unwrap();
        (rs, poly)
    }

    fn gl2() -> (RootSystem, Polytope) {
        let rs = RootSystem::custom(
            2,
            vec![vec_rat(&[1, -1])],
            vec![vec_rat(&[1, -1])],
            vec!["alpha1".to_string()],
        )
        .unwrap();
        let lattice = Lattice::new(vec![vec_int(&[1, 0]), vec_int(&[0, 1])], 2).unwrap();
        let poly = Polytope::new(
            lattice,
            vec![
                vec_rat(&[0, 0]),
                vec_rat(&[1, 0]),
                vec_rat(&[0, -1]),
                vec_rat(&[3, -1]),
            ],
        )
        .unwrap();
        (rs, poly)
    }

    fn torus(vertices: Vec<Vec<Rat>>) -> (RootSystem, Polytope) {
        let rs = RootSystem::custom(2, vec![], vec![], vec![]).unwrap();
        let lattice = Lattice::new(vec![vec_int(&[1, 0]), vec_int(&[0, 1])], 2).unwrap();
        (rs, Polytope::new(lattice, vertices).unwrap())
    }

    #[test]
    fn shared_functional_glues_to_one_color() {
        let (rs, poly) = foschi();
        let table = full_table();
        let ctx = PairContext::new(&rs, &poly, &table).unwrap();
        let sigma = [entry(ctx.catalog(), "alpha1"), entry(ctx.catalog(), "alpha2")];
        let ct = color_table(&ctx, &sigma, None).unwrap();
        let names: Vec<&str> = ct.colors().iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["D+(alpha1)", "D-(alpha1)", "D-(alpha2)"]);
        assert_eq!(ct.colors()[0].moved_by, vec![0, 1]);
        assert_eq!(ct.reference_ambient(), vec_rat(&[4, 4]));
        let n: Vec<Rat> = ct.colors().iter().map(|c| c.n_d.clone()).collect();
        assert_eq!(n, vec![rat_int(1), rat_int(3), rat_int(3)]);
        for a in 0..2 {
            let total: Rat = ct.moved_by(a).iter().map(|&d| ct.colors()[d].n_d.clone()).sum();
            assert_eq!(total, rs.pair_simple(a, ct.reference_ambient()));
        }
    }

    #[test]
    fn fan_over_orbit_faces_passes_the_validator() {
        let (rs, poly) = foschi();
        let table = full_table();
        let ctx = PairContext::new(&rs, &poly, &table).unwrap();
        let sigma = [entry(ctx.catalog(), "alpha1"), entry(ctx.catalog(), "alpha2")];
        let ct = color_table(&ctx, &sigma, None).unwrap();
        let fan = colored_fan(&ctx, &sigma, &ct);
        let faces: Vec<usize> = fan.iter().map(|c| c.face).collect();
        assert_eq!(faces, vec![0, 1, 2, 4]);
        let max_cone = fan.iter().find(|c| c.generators.len() == 2).unwrap();
        assert_eq!(max_cone.generators, vec![vec_rat(&[-1, 0]), vec_rat(&[0, -1])]);
        assert!(max_cone.colors.is_empty());
        let coords: Vec<Vec<Rat>> = sigma.iter().map(|e| ctx.sigma_xi(e).unwrap()).collect();
        assert!(validate_colored_fan(&poly, ct.colors(), &coords, &fan).is_pass());
    }

    #[test]
    fn every_admissible_subset_here_is_smooth() {
        let (rs, poly) = foschi();
        let table = full_table();
        let ctx = PairContext::new(&rs, &poly, &table).unwrap();
        let reg = registry();
        for subset in ctx.enumerate_q_admissible() {
            let sigma: Vec<&CatalogEntry> = subset.iter().map(|&i| &ctx.catalog()[i]).collect();
            let v = smooth_check(&ctx, &sigma, SmoothLevel::Algebraic, &reg);
            assert!(v.is_pass(), "subset {subset:?}: {v:?}");
        }
        assert_eq!(kaehler_check(&ctx, &reg).len(), 4);
    }

    #[test]
    fn two_movers_share_one_wall_color() {
        let (rs, poly) = sp6();
        let table = full_table();
        let ctx = PairContext::new(&rs, &poly, &table).unwrap();
        let sigma = [
            entry(ctx.catalog(), "alpha1 + alpha3"),
            entry(ctx.catalog(), "alpha2"),
        ];
        let ct = color_table(&ctx, &sigma, None).unwrap();
        let names: Vec<&str> = ct.colors().iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["D+(alpha2)", "D-(alpha2)", "D(alpha1,alpha3)"]);
        assert_eq!(ct.colors()[0].rho, vec_rat(&[-3, 1]));
        assert_eq!(ct.colors()[2].rho, vec_rat(&[2, -1]));
        assert_eq!(ct.colors()[2].moved_by, vec![0, 2]);

        let fan = colored_fan(&ctx, &sigma, &ct);
        assert_eq!(fan.len(), 2);
        assert!(fan[0].generators.is_empty() && fan[0].colors.is_empty());
        assert_eq!(fan[1].generators, vec![vec_rat(&[-3, 1]), vec_rat(&[2, -1])]);
        assert_eq!(fan[1].colors, vec![0, 2]);
        let coords: Vec<Vec<Rat>> = sigma.iter().map(|e| ctx.sigma_xi(e).unwrap()).collect();
        assert!(validate_colored_fan(&poly, ct.colors(), &coords, &fan).is_pass());

        let data = orbit_vertex_data(&ctx, &sigma, &ct, 1).unwrap();
        assert_eq!(data.simple_roots, vec![0, 2]);
        assert_eq!(data.colors, vec![0, 2]);
        assert!(data.rays.is_empty());
        assert!(orbit_vertex_data(&ctx, &sigma, &ct, 0).is_err());
    }

    #[test]
    fn socle_pairing_mismatch_fails_smoothness() {
        let (rs, poly) = sp6();
        let table = full_table();
        let ctx = PairContext::new(&rs, &poly, &table).unwrap();
        let reg = registry();
        let sigma = [
            entry(ctx.catalog(), "alpha1 + alpha3"),
            entry(ctx.catalog(), "alpha2"),
        ];
        let v = smooth_check(&ctx, &sigma, SmoothLevel::Algebraic, &reg);
        assert_eq!(v.status, Status::Fail);
        assert_eq!(v.certificates[0].rule, "smooth/socle");
        let witness: BTreeMap<&str, &str> = v.certificates[0]
            .witness
            .iter()
            .map(|(k, v)| (k.as_str(), v.as_str()))
            .collect();
        assert_eq!(witness["bucket"], "unmoved");
        assert_eq!(witness["got"], "(-3)");
        assert_eq!(witness["want"], "(-1)");
        let real = smooth_check(&ctx, &sigma, SmoothLevel::Real, &reg);
        assert_eq!(real.certificates[0].rule, "smooth/socle");
    }

    #[test]
    fn uncovered_rays_break_the_basis_test() {
        let (rs, poly) = gl2();
        let table = full_table();
        let ctx = PairContext::new(&rs, &poly, &table).unwrap();
        let reg = registry();
        let ct = color_table(&ctx, &[], None).unwrap();
        assert_eq!(ct.colors().len(), 1);
        assert_eq!(ct.colors()[0].rho, vec_rat(&[1, -1]));
        let data = orbit_vertex_data(&ctx, &[], &ct, 0).unwrap();
        assert_eq!(data.simple_roots, vec![0]);
        assert_eq!(data.colors, vec![0]);
        assert_eq!(data.rays, vec![vec_rat(&[0, -1]), vec_rat(&[1, 0])]);
        let v = smooth_check(&ctx, &[], SmoothLevel::Real, &reg);
        assert_eq!(v.status, Status::Fail);
        assert_eq!(v.certificates[0].rule, "smooth/basis");
        assert!(kaehler_check(&ctx, &reg).is_empty());
    }

    #[test]
    fn doubled_color_uses_half_the_coroot() {
        let (rs, poly) = sp4();
        let table = full_table();
        let ctx = PairContext::new(&rs, &poly, &table).unwrap();
        let sigma = [entry(ctx.catalog(), "2*alpha1")];
        let ct = color_table(&ctx, &sigma, None).unwrap();
        assert_eq!(ct.colors().len(), 2);
        assert_eq!(ct.colors()[0].name, "D(2*alpha1)");
        assert_eq!(ct.colors()[0].rho, vec_rat(&[0, 2]));
        assert_eq!(ct.colors()[0].n_d, rat_int(0));
        assert_eq!(ct.colors()[1].name, "D(alpha2)");

        let shifted = color_table(&ctx, &sigma, Some(&vec_rat(&[8, 0]))).unwrap();
        assert_eq!(shifted.colors()[0].n_d, rat_int(4));
        assert_eq!(
            shifted.colors()[0].n_d,
            rs.pair_simple(0, &vec_rat(&[8, 0])) / rat_int(2)
        );
        for &v in &ctx.orbit_vertex_indices(&sigma) {
            let a = orbit_vertex_data(&ctx, &sigma, &ct, v).unwrap();
            let b = orbit_vertex_data(&ctx, &sigma, &shifted, v).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn torus_smoothness_is_the_delzant_condition() {
        let square = vec![
            vec_rat(&[0, 0]),
            vec_rat(&[1, 0]),
            vec_rat(&[0, 1]),
            vec_rat(&[1, 1]),
        ];
        let triangle = vec![vec_rat(&[0, 0]), vec_rat(&[1, 0]), vec_rat(&[0, 2])];
        let table = full_table();
        let reg = registry();
        for (vertices, expect_pass) in [(square, true), (triangle, false)] {
            let (rs, poly) = torus(vertices);
            let ctx = PairContext::new(&rs, &poly, &table).unwrap();
            let smooth = smooth_check(&ctx, &[], SmoothLevel::Algebraic, &reg);
            let delzant = delzant_check(&poly);
            assert_eq!(smooth.is_pass(), expect_pass);
            assert_eq!(delzant.is_pass(), expect_pass);
            if !expect_pass {
                assert_eq!(smooth.certificates[0].rule, "smooth/basis");
                assert_eq!(delzant.certificates[0].rule, "delzant/vertex-basis");
                assert_eq!(
                    smooth.certificates[0].witness[0],
                    delzant.certificates[0].witness[0]
                );
            }
        }
    }

    fn honest_torus_fan(poly: &Polytope) -> Vec<ColoredCone> {
        (0..poly.faces().len())
            .map(|k| {
                let generators = poly.faces()[k]
                    .tight_facets
                    .iter()
                    .map(|&f| poly.facets()[f].normal.clone())
                    .collect();
                ColoredCone { face: k, generators, colors: vec![] }
            })
            .collect()
    }

    #[test]
    fn validator_rejects_vanishing_color_functional() {
        let (_, poly) = torus(vec![
            vec_rat(&[0, 0]),
            vec_rat(&[1, 0]),
            vec_rat(&[0, 1]),
            vec_rat(&[1, 1]),
        ]);
        let mut fan = honest_torus_fan(&poly);
        let colors = [Color {
            name: "D(bogus)".to_string(),
            kind: ColorKind::Wall,
            rho: vec_rat(&[0, 0]),
            n_d: rat_int(0),
            moved_by: vec![],
        }];
        assert!(validate_colored_fan(&poly, &[], &[], &fan).is_pass());
        let target = fan.iter_mut().find(|c| c.generators.len() == 2).unwrap();
        target.colors = vec![0];
        let v = validate_colored_fan(&poly, &colors, &[], &fan);
        assert_eq!(v.status, Status::Fail);
        assert_eq!(v.certificates[0].rule, "fan/scc");
    }

    #[test]
    fn validator_rejects_overlapping_relative_interiors() {
        let (_, poly) = torus(vec![
            vec_rat(&[0, 0]),
            vec_rat(&[1, 0]),
            vec_rat(&[0, 1]),
            vec_rat(&[1, 1]),
        ]);
        let mut fan = honest_torus_fan(&poly);
        let tampered = fan
            .iter_mut()
            .find(|c| poly.faces()[c.face].vertex_indices == vec![1])
            .unwrap();
        tampered.generators = vec![vec_rat(&[1, 1]), vec_rat(&[-1, 1])];
        let v = validate_colored_fan(&poly, &[], &[], &fan);
        assert_eq!(v.status, Status::Fail);
        assert_eq!(v.certificates[0].rule, "fan/cf2");
    }

    #[test]
    fn short_chain_support_doubles_when_parabolic() {
        let rs = RootSystem::simple(SimpleKind::B, 2).unwrap();
        let table = full_table();
        let lattice = Lattice::new(vec![vec_int(&[1, 0])], 2).unwrap();
        let poly =
            Polytope::new(lattice, vec![vec_rat(&[1, 0]), vec_rat(&[2, 0])]).unwrap();
        let ctx = PairContext::new(&rs, &poly, &table).unwrap();
        let sigma = [entry(ctx.catalog(), "alpha1 + alpha2")];
        let doubled = socle_roots(&ctx, &sigma);
        assert_eq!(doubled[0].0, vec_rat(&[2, 2]));

        let wide = Lattice::new(vec![vec_int(&[1, 0]), vec_int(&[0, 1])], 2).unwrap();
        let poly2 = Polytope::new(
            wide,
            vec![
                vec_rat(&[1, 0]),
                vec_rat(&[2, 0]),
                vec_rat(&[1, 1]),
                vec_rat(&[2, 1]),
            ],
        )
        .unwrap();
        let ctx2 = PairContext::new(&rs, &poly2, &table).unwrap();
        let sigma2 = [entry(ctx2.catalog(), "alpha1 + alpha2")];
        let kept = socle_roots(&ctx2, &sigma2);
        assert_eq!(kept[0].0, vec_rat(&[1, 1]));
    }

    #[test]
    fn reflective_needs_stable_walls_and_dominant_facets() {
        let (rs, poly) = gl2();
        assert!(reflective_check(&poly, &rs).is_pass());

        let rs2 = RootSystem::custom(
            2,
            vec![vec_rat(&[1, -1])],
            vec![vec_rat(&[1, -1])],
            vec!["alpha1".to_string()],
        )
        .unwrap();
        let lattice = Lattice::new(vec![vec_int(&[1, 0]), vec_int(&[0, 1])], 2).unwrap();
        let tilted = Polytope::new(
            lattice,
            vec![vec_rat(&[0, 0]), vec_rat(&[2, 0]), vec_rat(&[2, 2])],
        )
        .unwrap();
        let v = reflective_check(&tilted, &rs2);
        assert_eq!(v.status, Status::Fail);
        assert_eq!(v.certificates[0].rule, "reflective/face-stability");
    }

    #[test]
    fn wall_containment_mismatch_fails_the_facet_condition() {
        let (rs, poly) = gl2();
        let v = woodward_facet_condition(&poly, &rs);
        assert_eq!(v.status, Status::Fail);
        assert_eq!(v.certificates[0].rule, "woodward/facet");
        let witness: BTreeMap<&str, &str> = v.certificates[0]
            .witness
            .iter()
            .map(|(k, v)| (k.as_str(), v.as_str()))
            .collect();
        assert_eq!(witness["facet-normal"], "(-1, -2)");

        let lattice = Lattice::new(vec![vec_int(&[1, 0]), vec_int(&[0, 1])], 2).unwrap();
        let triangle = Polytope::new(
            lattice,
            vec![vec_rat(&[0, 0]), vec_rat(&[2, 0]), vec_rat(&[2, 2])],
        )
        .unwrap();
        assert!(woodward_facet_condition(&triangle, &rs).is_pass());
    }
}
