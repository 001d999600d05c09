//! Randomized property suites shared by the integration tests.
//!
//! Every suite runs until it has accepted a fixed number of randomized
//! instances (rejections retry with fresh samples), checks its property with
//! exact arithmetic, and returns the number of accepted instances.  Seeds
//! are fixed, so failures reproduce deterministically.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spheromo_core::colored::{
    color_table, colored_fan, delzant_check, orbit_vertex_data, smooth_check,
    validate_colored_fan, ColorKind, SmoothLevel,
};
use spheromo_core::cone::Cone;
use spheromo_core::lp::{feasible_point, Constraint};
use spheromo_core::matrix::{self, Lattice};
use spheromo_core::momentum::{
    doubled_simple_index, extended_from_vertex, simple_index, MonoidContext, PairContext,
};
use spheromo_core::num::{
    cmp_vec, denominator_lcm, dot, int, rat, rat_int, scale_vec, sub_vec, Int, Rat,
};
use spheromo_core::polykernel::Polytope;
use spheromo_core::rootsys::{CatalogEntry, RootSystem, SimpleKind};
use spheromo_core::tables::{AxiomSTable, SocleRegistry};

pub const TARGET: usize = 200;
const MAX_ATTEMPTS: usize = 40_000;

fn axiom_s_table() -> AxiomSTable {
    let (table, _) = spheromo::data::parse_axiom_s(include_str!("../../data/axiom_s_table.toml"))
        .expect("bundled table parses");
    table
}

fn socle_registry() -> SocleRegistry {
    let (registry, _) =
        spheromo::data::parse_socle_registry(include_str!("../../data/socle_registry.toml"))
            .expect("bundled registry parses");
    registry
}

fn identity_lattice(d: usize) -> Lattice {
    let rows: Vec<Vec<Int>> = (0..d)
        .map(|i| (0..d).map(|j| int(if i == j { 1 } else { 0 })).collect())
        .collect();
    Lattice::new(rows, d).expect("identity rows are a basis")
}

fn rand_rat(rng: &mut ChaCha8Rng, lo: i64, hi: i64, halves: bool) -> Rat {
    let den = if halves && rng.gen_range(0..4) == 0 { 2 } else { 1 };
    rat(rng.gen_range(lo..=hi), den)
}

/// Is `point` a convex combination of `points`?  Decided by an exact
/// feasibility LP, independent of the facet enumeration under test.
fn in_hull(point: &[Rat], points: &[Vec<Rat>]) -> bool {
    if points.is_empty() {
        return false;
    }
    let k = points.len();
    let mut cons: Vec<Constraint> = Vec::new();
    for c in 0..point.len() {
        let row: Vec<Rat> = points.iter().map(|p| p[c].clone()).collect();
        cons.push(Constraint::eq(row, point[c].clone()));
    }
    cons.push(Constraint::eq(vec![rat_int(1); k], rat_int(1)));
    feasible_point(&cons, &vec![true; k]).is_some()
}

fn extremal_subset(points: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    (0..points.len())
        .filter(|&i| {
            let others: Vec<Vec<Rat>> = points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            !in_hull(&points[i], &others)
        })
        .map(|i| points[i].clone())
        .collect()
}

/// Random vertex set of a `d`-dimensional polytope: sampled points reduced
/// to their extremal subset, rejected unless the hull has dimension `d`.
fn random_vertices(
    rng: &mut ChaCha8Rng,
    d: usize,
    lo: i64,
    hi: i64,
    halves: bool,
    npts: usize,
) -> Option<Vec<Vec<Rat>>> {
    let mut pts: Vec<Vec<Rat>> = Vec::new();
    for _ in 0..npts {
        let p: Vec<Rat> = (0..d).map(|_| rand_rat(rng, lo, hi, halves)).collect();
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let vertices = extremal_subset(&pts);
    if vertices.is_empty() {
        return None;
    }
    let diffs: Vec<Vec<Rat>> = vertices[1..]
        .iter()
        .map(|v| sub_vec(v, &vertices[0]))
        .collect();
    if matrix::rank(&diffs) != d {
        return None;
    }
    Some(vertices)
}

fn rank2_root_system(rng: &mut ChaCha8Rng) -> RootSystem {
    match rng.gen_range(0..4) {
        0 => RootSystem::simple(SimpleKind::A, 2).expect("A2 exists"),
        1 => RootSystem::simple(SimpleKind::B, 2).expect("B2 exists"),
        2 => RootSystem::simple(SimpleKind::C, 2).expect("C2 exists"),
        _ => RootSystem::product(&[(SimpleKind::A, 1), (SimpleKind::A, 1)])
            .expect("A1 x A1 exists"),
    }
}

fn rank2_lattice(rng: &mut ChaCha8Rng, rs: &RootSystem) -> Lattice {
    let rows: Vec<Vec<Int>> = match rng.gen_range(0..4) {
        0 => return identity_lattice(2),
        1 => (0..2)
            .map(|i| rs.simple_root(i).iter().map(|x| x.to_integer()).collect())
            .collect(),
        2 => vec![vec![int(1), int(0)], vec![int(0), int(2)]],
        _ => vec![vec![int(1), int(1)], vec![int(0), int(2)]],
    };
    Lattice::new(rows, 2).expect("rows are independent")
}

/// Random dominant polytope for a rank-2 group: nonnegative weight-basis
/// coordinates keep every vertex in the dominant chamber.
fn rank2_polytope(rng: &mut ChaCha8Rng, lattice: &Lattice, halves: bool) -> Option<Polytope> {
    let npts = rng.gen_range(3..=5);
    let vertices = random_vertices(rng, 2, 0, 5, halves, npts)?;
    Polytope::new(lattice.clone(), vertices).ok()
}

fn describe(rs: &RootSystem, poly: &Polytope, sigma: &[&CatalogEntry]) -> String {
    let names: Vec<&str> = sigma.iter().map(|e| e.name.as_str()).collect();
    format!(
        "labels {:?}, lattice {:?}, vertices {:?}, sigma {:?}",
        rs.labels(),
        poly.lattice().basis(),
        poly.vertices_ambient(),
        names
    )
}

fn entries<'c>(catalog: &'c [CatalogEntry], indices: &[usize]) -> Vec<&'c CatalogEntry> {
    indices.iter().map(|&i| &catalog[i]).collect()
}

/// Facet enumeration agrees with an LP membership oracle, and every listed
/// vertex is genuinely extremal.
pub fn suite_hull_facet_oracle() -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0001);
    let mut accepted = 0;
    for _ in 0..MAX_ATTEMPTS {
        if accepted >= TARGET {
            break;
        }
        let d = rng.gen_range(1..=3);
        let npts = rng.gen_range(d + 1..=d + 4);
        let Some(vertices) = random_vertices(&mut rng, d, -6, 6, true, npts) else {
            continue;
        };
        let poly = Polytope::new(identity_lattice(d), vertices.clone())
            .expect("extremal points of a d-dimensional hull are accepted");
        assert_eq!(poly.vertices_ambient(), &vertices[..]);

        for _ in 0..4 {
            let probe: Vec<Rat> = match rng.gen_range(0..3) {
                0 => (0..d).map(|_| rand_rat(&mut rng, -7, 7, true)).collect(),
                1 => {
                    // Random rational convex combination of the vertices.
                    let weights: Vec<Rat> = (0..vertices.len())
                        .map(|_| rat(rng.gen_range(0..=3), 1))
                        .collect();
                    let total: Rat = weights.iter().fold(rat_int(0), |a, b| a + b);
                    if total == rat_int(0) {
                        continue;
                    }
                    (0..d)
                        .map(|c| {
                            let s: Rat = vertices
                                .iter()
                                .zip(&weights)
                                .fold(rat_int(0), |a, (v, w)| a + &v[c] * w);
                            s / &total
                        })
                        .collect()
                }
                _ => {
                    let mut p = vertices[rng.gen_range(0..vertices.len())].clone();
                    let c = rng.gen_range(0..d);
                    p[c] = &p[c] + rat(rng.gen_range(-2..=2), 3);
                    p
                }
            };
            let by_facets = poly
                .to_xi(&probe)
                .map(|xi| poly.contains_xi(&xi))
                .unwrap_or(false);
            let by_lp = in_hull(&probe, &vertices);
            assert_eq!(
                by_facets, by_lp,
                "facet membership differs from the LP oracle at {probe:?} on {vertices:?}"
            );
        }

        if vertices.len() >= 2 {
            let i = rng.gen_range(0..vertices.len());
            let j = (i + 1 + rng.gen_range(0..vertices.len() - 1)) % vertices.len();
            let mid: Vec<Rat> = vertices[i]
                .iter()
                .zip(&vertices[j])
                .map(|(a, b)| (a + b) / rat_int(2))
                .collect();
            let mut padded = vertices.clone();
            padded.push(mid);
            assert!(
                Polytope::new(identity_lattice(d), padded).is_err(),
                "a midpoint of two vertices was accepted as a vertex on {vertices:?}"
            );
        }
        accepted += 1;
    }
    accepted
}

/// Dual rays pair nonnegatively with the cone, are extremal in the dual,
/// and dualizing twice returns the original cone.
pub fn suite_dual_cone_double_duality() -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0002);
    let mut accepted = 0;
    for _ in 0..MAX_ATTEMPTS {
        if accepted >= TARGET {
            break;
        }
        let d = rng.gen_range(2..=4);
        let ngens = rng.gen_range(d..=d + 2);
        let gens: Vec<Vec<Rat>> = (0..ngens)
            .map(|_| (0..d).map(|_| rat(rng.gen_range(-4..=4), 1)).collect())
            .collect();
        let cone = Cone::new(d, gens);
        let Ok(dual) = cone.dual_rays() else { continue };
        for ray in &dual {
            for g in cone.generators() {
                assert!(
                    dot(ray, g) >= rat_int(0),
                    "dual ray {ray:?} is negative on generator {g:?}"
                );
            }
        }
        let dual_cone = Cone::new(d, dual.clone());
        assert_eq!(
            dual_cone.extremal_generator_indices().len(),
            dual.len(),
            "a listed dual ray is not extremal for {:?}",
            cone.generators()
        );
        let Ok(double) = dual_cone.dual_rays() else { continue };
        let double_cone = Cone::new(d, double.clone());
        for g in cone.generators() {
            assert!(
                double_cone.contains(g),
                "double dual lost generator {g:?} of {:?}",
                cone.generators()
            );
        }
        for r in &double {
            assert!(
                cone.contains(r),
                "double dual gained ray {r:?} over {:?}",
                cone.generators()
            );
        }
        accepted += 1;
    }
    accepted
}

/// For a compatible simple root: at most two facets are positive on it;
/// with two, their normals sum to the coroot restriction and their offsets
/// sum to the coroot pairing; the reflected facet form stays nonnegative on
/// the polytope; and the color table reproduces the same functional pair.
pub fn suite_simple_root_facet_pairs() -> usize {
    let table = axiom_s_table();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0003);
    let mut accepted = 0;
    for _ in 0..MAX_ATTEMPTS {
        if accepted >= TARGET {
            break;
        }
        let rs = rank2_root_system(&mut rng);
        let lattice = rank2_lattice(&mut rng, &rs);
        let Some(poly) = rank2_polytope(&mut rng, &lattice, true) else {
            continue;
        };
        let Ok(ctx) = PairContext::new(&rs, &poly, &table) else {
            continue;
        };
        let mut processed = false;
        for entry in ctx.catalog() {
            let Some(a) = simple_index(entry) else { continue };
            if !ctx.q_compatible(entry).is_pass() {
                continue;
            }
            let here = describe(&rs, &poly, &[entry]);
            let sx = ctx.sigma_xi(entry).expect("compatible root lies in the span");
            let positive: Vec<usize> = (0..poly.facets().len())
                .filter(|&f| dot(&poly.facets()[f].normal, &sx) > rat_int(0))
                .collect();
            assert!(
                (1..=2).contains(&positive.len()),
                "{} facets positive on a compatible simple root; {here}",
                positive.len()
            );
            let pair = ctx
                .alpha_pair(entry)
                .expect("compatible simple roots have a facet pair");
            assert!(positive.contains(&pair.facet), "pair facet not positive; {here}");
            assert_eq!(poly.facets()[pair.facet].normal, pair.plus, "{here}");

            let k = rng.gen_range(0..poly.vertices_ambient().len());
            let w_amb = &poly.vertices_ambient()[k];
            let w_xi = &poly.vertices_xi()[k];
            let m_plus = poly.facet_value(pair.facet, w_xi);
            let coroot_w = rs.pair_simple(a, w_amb);

            if positive.len() == 2 {
                let other = positive[if positive[0] == pair.facet { 1 } else { 0 }];
                assert_eq!(
                    poly.facets()[other].normal, pair.minus,
                    "second positive facet normal is not the complement; {here}"
                );
                let m_other = poly.facet_value(other, w_xi);
                assert_eq!(
                    &m_plus + &m_other,
                    coroot_w,
                    "facet offsets do not sum to the coroot pairing; {here}"
                );
            }
            for q_xi in poly.vertices_xi() {
                let reflected = dot(&pair.minus, &sub_vec(q_xi, w_xi)) + &coroot_w - &m_plus;
                assert!(
                    reflected >= rat_int(0),
                    "reflected facet form is negative at a vertex; {here}"
                );
            }

            if ctx.q_admissible(&[entry]).is_pass() {
                let colors = color_table(&ctx, &[entry], Some(w_amb.as_slice()))
                    .expect("a singleton root set has a color table");
                let moved: Vec<(Vec<Rat>, Rat)> = colors
                    .moved_by(a)
                    .into_iter()
                    .map(|d| {
                        let c = &colors.colors()[d];
                        assert_eq!(c.kind, ColorKind::Simple, "{here}");
                        (c.rho.clone(), c.n_d.clone())
                    })
                    .collect();
                let mut expect = vec![
                    (pair.plus.clone(), m_plus.clone()),
                    (pair.minus.clone(), &coroot_w - &m_plus),
                ];
                let mut got = moved;
                expect.sort_by(|x, y| cmp_vec(&x.0, &y.0).then_with(|| x.1.cmp(&y.1)));
                got.sort_by(|x, y| cmp_vec(&x.0, &y.0).then_with(|| x.1.cmp(&y.1)));
                assert_eq!(got, expect, "color table disagrees with the facet pair; {here}");
            }
            processed = true;
        }
        if processed {
            accepted += 1;
        }
    }
    accepted
}

/// Pairwise admissibility is decided by singletons and pairs, passing sets
/// are closed under subsets, and the enumerator lists exactly the passing
/// subsets.
pub fn suite_q_admissible_pairwise() -> usize {
    let table = axiom_s_table();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0004);
    let mut accepted = 0;
    for _ in 0..MAX_ATTEMPTS {
        if accepted >= TARGET {
            break;
        }
        let rs = rank2_root_system(&mut rng);
        let lattice = rank2_lattice(&mut rng, &rs);
        let Some(poly) = rank2_polytope(&mut rng, &lattice, true) else {
            continue;
        };
        let Ok(ctx) = PairContext::new(&rs, &poly, &table) else {
            continue;
        };
        let singles: Vec<usize> = (0..ctx.catalog().len())
            .filter(|&i| ctx.q_compatible(&ctx.catalog()[i]).is_pass())
            .collect();
        if singles.is_empty() {
            continue;
        }
        let here = describe(&rs, &poly, &[]);
        assert!(singles.len() <= 6, "unexpectedly large rank-2 catalog; {here}");
        let n = singles.len();
        let mut passes: Vec<bool> = Vec::with_capacity(1 << n);
        for mask in 0u32..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|b| mask & (1 << b) != 0).map(|b| singles[b]).collect();
            let refs = entries(ctx.catalog(), &subset);
            let full = ctx.q_admissible(&refs).is_pass();
            let pairwise = (0..n).all(|b1| {
                mask & (1 << b1) == 0
                    || (0..b1).all(|b2| {
                        mask & (1 << b2) == 0
                            || ctx
                                .q_admissible(&entries(ctx.catalog(), &[singles[b2], singles[b1]]))
                                .is_pass()
                    })
            });
            assert_eq!(
                full, pairwise,
                "pairwise characterization breaks for mask {mask:#b}; {here}"
            );
            passes.push(full);
        }
        for mask in 0u32..(1 << n) {
            if !passes[mask as usize] {
                continue;
            }
            for b in 0..n {
                if mask & (1 << b) != 0 {
                    assert!(
                        passes[(mask & !(1 << b)) as usize],
                        "a subset of a passing set fails for mask {mask:#b}; {here}"
                    );
                }
            }
        }
        let mut expected: Vec<Vec<usize>> = (0u32..(1 << n))
            .filter(|&mask| passes[mask as usize])
            .map(|mask| (0..n).filter(|b| mask & (1 << b) != 0).map(|b| singles[b]).collect())
            .collect();
        expected.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        assert_eq!(
            ctx.enumerate_q_admissible(),
            expected,
            "enumerator disagrees with the subset sweep; {here}"
        );
        accepted += 1;
    }
    accepted
}

/// Pairwise admissibility of `(lattice, Q, sigma)` is equivalent to full
/// admissibility of `(lattice, nQ, sigma)` where `n` clears all vertex and
/// offset denominators.
pub fn suite_scaling_equivalence() -> usize {
    let table = axiom_s_table();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0005);
    let mut accepted = 0;
    let mut positives = 0;
    for _ in 0..MAX_ATTEMPTS {
        if accepted >= TARGET {
            break;
        }
        let rs = rank2_root_system(&mut rng);
        let lattice = rank2_lattice(&mut rng, &rs);
        let Some(poly) = rank2_polytope(&mut rng, &lattice, true) else {
            continue;
        };
        let Ok(ctx) = PairContext::new(&rs, &poly, &table) else {
            continue;
        };
        let subsets = ctx.enumerate_q_admissible();
        let indices: Vec<usize> = if rng.gen_bool(0.5) {
            subsets[rng.gen_range(0..subsets.len())].clone()
        } else {
            let size = rng.gen_range(0..=2.min(ctx.catalog().len()));
            let mut picked: Vec<usize> = Vec::new();
            while picked.len() < size {
                let i = rng.gen_range(0..ctx.catalog().len());
                if !picked.contains(&i) {
                    picked.push(i);
                }
            }
            picked.sort_unstable();
            picked
        };
        let sigma = entries(ctx.catalog(), &indices);
        let here = describe(&rs, &poly, &sigma);

        // Everything whose denominator the scale factor must clear.
        let mut denominators: Vec<Rat> = Vec::new();
        for v in poly.vertices_ambient() {
            denominators.extend(v.iter().cloned());
        }
        for v in poly.vertices_xi() {
            denominators.extend(v.iter().cloned());
        }
        let rescaling = ctx.rescaling(&sigma);
        for &v in &ctx.orbit_vertex_indices(&sigma) {
            for f in ctx.integrality_facets(&sigma) {
                denominators.push(ctx.m_offset(&rescaling, f, &poly.vertices_xi()[v]));
            }
        }
        let n = Rat::from_integer(denominator_lcm(&denominators));
        let scaled: Vec<Vec<Rat>> = poly
            .vertices_ambient()
            .iter()
            .map(|v| scale_vec(&n, v))
            .collect();
        let poly_n = Polytope::new(lattice.clone(), scaled).expect("scaling preserves vertices");
        let ctx_n = PairContext::new(&rs, &poly_n, &table).expect("same ambient data");
        let sigma_n = entries(ctx_n.catalog(), &indices);

        let q_small = ctx.q_admissible(&sigma).is_pass();
        assert_eq!(
            q_small,
            ctx_n.q_admissible(&sigma_n).is_pass(),
            "pairwise admissibility is not scale invariant; {here}"
        );
        assert_eq!(
            q_small,
            ctx_n.admissible(&sigma_n).is_pass(),
            "scaling by {n} does not close the gap to full admissibility; {here}"
        );
        if q_small {
            positives += 1;
        }
        accepted += 1;
    }
    assert!(positives >= 60, "too few pairwise-admissible instances: {positives}");
    accepted
}

/// The monoid route (dual rays of the cone over the lifted polytope) and
/// the polytope route agree on admissibility whenever every lifted vertex
/// lies in the extended lattice, which is the setting where the cone over
/// the polytope is the cone of an actual weight monoid.  When some vertex
/// does not lift and the root set is empty, the polytope route must reject.
/// Both routes see one dual ray per facet.
pub fn suite_monoid_route_equivalence() -> usize {
    let table = axiom_s_table();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0006);
    let mut accepted = 0;
    let mut passes = 0;
    let mut failures = 0;
    let mut unliftable = 0;
    for _ in 0..MAX_ATTEMPTS {
        if accepted >= TARGET && passes >= 25 && failures >= 25 && unliftable >= 10 {
            break;
        }
        let rs = rank2_root_system(&mut rng);
        let lattice = rank2_lattice(&mut rng, &rs);
        let halves = rng.gen_bool(0.5);
        let Some(poly) = rank2_polytope(&mut rng, &lattice, halves) else {
            continue;
        };
        let Ok(ctx) = PairContext::new(&rs, &poly, &table) else {
            continue;
        };
        let subsets = ctx.enumerate_q_admissible();
        let indices: Vec<usize> = if rng.gen_bool(0.6) {
            subsets[rng.gen_range(0..subsets.len())].clone()
        } else {
            let size = rng.gen_range(0..=2.min(ctx.catalog().len()));
            let mut picked: Vec<usize> = Vec::new();
            while picked.len() < size {
                let i = rng.gen_range(0..ctx.catalog().len());
                if !picked.contains(&i) {
                    picked.push(i);
                }
            }
            picked.sort_unstable();
            picked
        };
        let sigma = entries(ctx.catalog(), &indices);
        let orbit = ctx.orbit_vertex_indices(&sigma);
        let Some(&anchor) = orbit.iter().min_by(|&&i, &&j| {
            cmp_vec(&poly.vertices_xi()[i], &poly.vertices_xi()[j])
        }) else {
            continue;
        };
        let Ok(ext) = extended_from_vertex(poly.lattice(), &poly.vertices_ambient()[anchor])
        else {
            continue;
        };
        let Ok(mctx) = MonoidContext::new(&rs, &poly, &table, ext) else {
            continue;
        };
        let here = describe(&rs, &poly, &sigma);
        assert_eq!(
            mctx.dual_rays().len(),
            poly.facets().len(),
            "dual ray count differs from the facet count; {here}"
        );
        let by_polytope = ctx.admissible(&sigma).is_pass();
        let lifts = mctx
            .lifted_vertices()
            .iter()
            .all(|g| g.iter().all(|x| x.is_integer()));
        if !lifts {
            // Some vertex is no weight relative to the anchor.  For the
            // empty root set every vertex is an orbit vertex, so the
            // vertex-difference condition must reject.
            if indices.is_empty() {
                assert!(
                    !by_polytope,
                    "a polytope with a non-lifting vertex was admissible; {here}"
                );
                unliftable += 1;
                accepted += 1;
            }
            continue;
        }
        let sigma_m = entries(mctx.catalog(), &indices);
        let by_monoid = mctx.admissible_for_monoid(&sigma_m).is_pass();
        assert_eq!(
            by_polytope, by_monoid,
            "monoid and polytope routes disagree; {here}"
        );
        if by_polytope {
            passes += 1;
        } else {
            failures += 1;
        }
        accepted += 1;
    }
    assert!(passes >= 25, "too few admissible instances: {passes}");
    assert!(failures >= 25, "too few inadmissible instances: {failures}");
    assert!(unliftable >= 10, "too few non-lifting instances: {unliftable}");
    accepted
}

/// The colored fan over the orbit faces always satisfies the cone and fan
/// axioms with completeness, and its combinatorics do not depend on the
/// reference point of the color table.
pub fn suite_colored_fan_axioms() -> usize {
    let table = axiom_s_table();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0007);
    let mut accepted = 0;
    for _ in 0..MAX_ATTEMPTS {
        if accepted >= TARGET {
            break;
        }
        let rs = rank2_root_system(&mut rng);
        let lattice = rank2_lattice(&mut rng, &rs);
        let Some(poly) = rank2_polytope(&mut rng, &lattice, true) else {
            continue;
        };
        let Ok(ctx) = PairContext::new(&rs, &poly, &table) else {
            continue;
        };
        let admissible: Vec<Vec<usize>> = ctx
            .enumerate_q_admissible()
            .into_iter()
            .filter(|indices| ctx.admissible(&entries(ctx.catalog(), indices)).is_pass())
            .collect();
        if admissible.is_empty() {
            continue;
        }
        let indices = &admissible[rng.gen_range(0..admissible.len())];
        let sigma = entries(ctx.catalog(), indices);
        let here = describe(&rs, &poly, &sigma);

        let colors = color_table(&ctx, &sigma, None).expect("admissible sets have color tables");
        let fan = colored_fan(&ctx, &sigma, &colors);
        let sigma_xi: Vec<Vec<Rat>> = sigma
            .iter()
            .map(|e| ctx.sigma_xi(e).expect("admissible roots lie in the span"))
            .collect();
        let verdict = validate_colored_fan(&poly, colors.colors(), &sigma_xi, &fan);
        assert!(
            verdict.is_pass(),
            "colored fan fails its axioms: {:?}; {here}",
            verdict.certificates
        );

        let orbit = ctx.orbit_vertex_indices(&sigma);
        let other_reference = orbit
            .iter()
            .max_by(|&&i, &&j| cmp_vec(&poly.vertices_xi()[i], &poly.vertices_xi()[j]))
            .map(|&i| poly.vertices_ambient()[i].clone())
            .expect("admissible sets have an orbit vertex");
        let colors2 = color_table(&ctx, &sigma, Some(other_reference.as_slice()))
            .expect("any polytope point anchors the table");
        assert_eq!(colors.colors().len(), colors2.colors().len(), "{here}");
        for (c1, c2) in colors.colors().iter().zip(colors2.colors()) {
            assert_eq!(c1.name, c2.name, "{here}");
            assert_eq!(c1.kind, c2.kind, "{here}");
            assert_eq!(c1.rho, c2.rho, "{here}");
            assert_eq!(c1.moved_by, c2.moved_by, "{here}");
        }
        assert_eq!(
            fan,
            colored_fan(&ctx, &sigma, &colors2),
            "fan depends on the reference point; {here}"
        );
        for &v in &orbit {
            let d1 = orbit_vertex_data(&ctx, &sigma, &colors, v).expect("orbit vertex");
            let d2 = orbit_vertex_data(&ctx, &sigma, &colors2, v).expect("orbit vertex");
            assert_eq!(d1, d2, "vertex data depends on the reference point; {here}");
        }
        accepted += 1;
    }
    accepted
}

/// Color offsets: the offsets of the colors moved by a simple root sum to
/// the (possibly halved) coroot pairing at the reference point, every color
/// form is nonnegative on the polytope, and every facet is a color facet, a
/// wall facet, or stable under the root set.
pub fn suite_color_offsets() -> usize {
    let table = axiom_s_table();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0008);
    let mut accepted = 0;
    for _ in 0..MAX_ATTEMPTS {
        if accepted >= TARGET {
            break;
        }
        let rs = rank2_root_system(&mut rng);
        let lattice = rank2_lattice(&mut rng, &rs);
        let Some(poly) = rank2_polytope(&mut rng, &lattice, true) else {
            continue;
        };
        let Ok(ctx) = PairContext::new(&rs, &poly, &table) else {
            continue;
        };
        let subsets = ctx.enumerate_q_admissible();
        let indices = &subsets[rng.gen_range(0..subsets.len())];
        let sigma = entries(ctx.catalog(), indices);
        let here = describe(&rs, &poly, &sigma);
        let colors = match color_table(&ctx, &sigma, None) {
            Ok(colors) => colors,
            Err(_) => continue,
        };
        let w_amb = colors.reference_ambient().to_vec();

        for a in 0..rs.rank() {
            let moved = colors.moved_by(a);
            let halved = sigma.iter().any(|e| doubled_simple_index(e) == Some(a));
            let eps = if halved { rat(1, 2) } else { rat_int(1) };
            let rho_sum = moved.iter().fold(vec![rat_int(0); 2], |acc, &d| {
                acc.iter()
                    .zip(&colors.colors()[d].rho)
                    .map(|(x, y)| x + y)
                    .collect()
            });
            let n_sum = moved
                .iter()
                .fold(rat_int(0), |acc, &d| acc + &colors.colors()[d].n_d);
            if moved.is_empty() {
                assert_eq!(
                    rs.pair_simple(a, &w_amb),
                    rat_int(0),
                    "an unused simple root pairs nonzero with the polytope; {here}"
                );
                continue;
            }
            assert_eq!(
                rho_sum,
                scale_vec(&eps, ctx.coroot_on_lattice(a)),
                "color functionals moved by {} do not sum to the coroot; {here}",
                rs.label(a)
            );
            assert_eq!(
                n_sum,
                eps * rs.pair_simple(a, &w_amb),
                "color offsets moved by {} do not sum to the pairing; {here}",
                rs.label(a)
            );
        }

        for d in 0..colors.colors().len() {
            for q_xi in poly.vertices_xi() {
                assert!(
                    colors.value(d, q_xi) >= rat_int(0),
                    "color {} is negative on the polytope; {here}",
                    colors.colors()[d].name
                );
            }
        }

        let sigma_xi: Vec<Vec<Rat>> = sigma
            .iter()
            .map(|e| ctx.sigma_xi(e).expect("roots lie in the span"))
            .collect();
        for facet in poly.facets() {
            let is_color = colors.colors().iter().any(|c| c.rho == facet.normal);
            let is_wall = (0..rs.rank()).any(|a| {
                facet.vertex_indices.iter().all(|&u| {
                    rs.pair_simple(a, &poly.vertices_ambient()[u]) == rat_int(0)
                }) && !ctx.s_perp_q().contains(&a)
            });
            let is_stable = sigma_xi
                .iter()
                .all(|sx| dot(&facet.normal, sx) <= rat_int(0));
            assert!(
                is_color || is_wall || is_stable,
                "facet {:?} is neither a color facet, a wall facet, nor stable; {here}",
                facet.normal
            );
        }
        accepted += 1;
    }
    accepted
}

/// For linearly independent root sets, every orbit face contains an orbit
/// vertex.
pub fn suite_orbit_faces_have_vertices() -> usize {
    let table = axiom_s_table();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0009);
    let mut accepted = 0;
    for _ in 0..MAX_ATTEMPTS {
        if accepted >= TARGET {
            break;
        }
        let rs = rank2_root_system(&mut rng);
        let lattice = rank2_lattice(&mut rng, &rs);
        let Some(poly) = rank2_polytope(&mut rng, &lattice, true) else {
            continue;
        };
        let Ok(ctx) = PairContext::new(&rs, &poly, &table) else {
            continue;
        };
        let size = rng.gen_range(1..=2.min(ctx.catalog().len()));
        let mut indices: Vec<usize> = Vec::new();
        while indices.len() < size {
            let i = rng.gen_range(0..ctx.catalog().len());
            if !indices.contains(&i) {
                indices.push(i);
            }
        }
        let sigma = entries(ctx.catalog(), &indices);
        let weights: Vec<Vec<Rat>> = sigma.iter().map(|e| e.weight.clone()).collect();
        if matrix::rank(&weights) != sigma.len() {
            continue;
        }
        let here = describe(&rs, &poly, &sigma);
        let orbit_vertices = ctx.orbit_vertex_indices(&sigma);
        for k in ctx.orbit_face_indices(&sigma) {
            let face = &poly.faces()[k];
            assert!(
                face.vertex_indices.iter().any(|v| orbit_vertices.contains(v)),
                "orbit face {:?} contains no orbit vertex; {here}",
                face.vertex_indices
            );
        }
        accepted += 1;
    }
    accepted
}

/// On a torus the smoothness test degenerates to the per-vertex basis
/// condition, with matching first witness vertices on failure.
pub fn suite_torus_matches_delzant() -> usize {
    let table = axiom_s_table();
    let registry = socle_registry();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_000A);
    let mut accepted = 0;
    let mut smooth_seen = 0;
    let mut singular_seen = 0;
    for _ in 0..MAX_ATTEMPTS {
        if accepted >= TARGET {
            break;
        }
        let d = rng.gen_range(1..=3);
        let rs = RootSystem::custom(d, Vec::new(), Vec::new(), Vec::new())
            .expect("a torus has no roots");
        let npts = rng.gen_range(d + 1..=d + 4);
        let Some(vertices) = random_vertices(&mut rng, d, -3, 5, true, npts) else {
            continue;
        };
        let Ok(poly) = Polytope::new(identity_lattice(d), vertices) else {
            continue;
        };
        let Ok(ctx) = PairContext::new(&rs, &poly, &table) else {
            continue;
        };
        let smooth = smooth_check(&ctx, &[], SmoothLevel::Real, &registry);
        let delzant = delzant_check(&poly);
        let here = describe(&rs, &poly, &[]);
        assert_eq!(
            smooth.is_pass(),
            delzant.is_pass(),
            "torus smoothness and the vertex basis condition disagree; {here}"
        );
        if smooth.is_pass() {
            smooth_seen += 1;
        } else {
            singular_seen += 1;
            let sw = smooth.certificates[0]
                .witness
                .iter()
                .find(|(k, _)| k == "vertex")
                .map(|(_, v)| v.clone());
            let dw = delzant.certificates[0]
                .witness
                .iter()
                .find(|(k, _)| k == "vertex")
                .map(|(_, v)| v.clone());
            assert_eq!(sw, dw, "first failing vertex differs; {here}");
        }
        accepted += 1;
    }
    assert!(smooth_seen >= 25, "too few smooth instances: {smooth_seen}");
    assert!(singular_seen >= 25, "too few singular instances: {singular_seen}");
    accepted
}
