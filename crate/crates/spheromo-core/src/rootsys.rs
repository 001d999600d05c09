//! Root systems, coroot pairings, and the catalog of spherical roots.
//!
//! Weights live in "ambient" coordinates.  For the standard constructors the
//! ambient basis is the fundamental weights, so simple coroots act as
//! coordinate projections and simple roots are the columns of the Cartan
//! matrix.  Custom systems supply explicit root and coroot vectors, with the
//! pairing given by the dot product.

use crate::matrix;
use crate::num::{cmp_vec, dot, int, rat, rat_int, rat_to_string, Int, Rat};
use crate::{CoreError, CoreResult};
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimpleKind {
    A,
    B,
    C,
    D,
    F4,
    G2,
}

/// Cartan matrix `a[i][j] = <coroot_i, root_j>` in the Bourbaki numbering.
/// Chains are `a(i, i+1)`; in `B_n` the last root is short, in `C_n` long,
/// `D_n` forks at position `n-2`, `F4` has the long roots first, and in `G2`
/// the first root is short.
pub fn cartan_matrix(kind: SimpleKind, rank: usize) -> CoreResult<Vec<Vec<Int>>> {
    let chain = |n: usize| -> Vec<Vec<Int>> {
        let mut m = vec![vec![int(0); n]; n];
        for i in 0..n {
            m[i][i] = int(2);
            if i + 1 < n {
                m[i][i + 1] = int(-1);
                m[i + 1][i] = int(-1);
            }
        }
        m
    };
    let bad = |msg: &str| Err(CoreError::InvalidInput(msg.to_string()));
    match kind {
        SimpleKind::A => {
            if rank == 0 {
                return bad("type A needs rank >= 1");
            }
            Ok(chain(rank))
        }
        SimpleKind::B => {
            if rank < 2 {
                return bad("type B needs rank >= 2");
            }
            let mut m = chain(rank);
            m[rank - 1][rank - 2] = int(-2);
            Ok(m)
        }
        SimpleKind::C => {
            if rank < 2 {
                return bad("type C needs rank >= 2");
            }
            let mut m = chain(rank);
            m[rank - 2][rank - 1] = int(-2);
            Ok(m)
        }
        SimpleKind::D => {
            if rank < 3 {
                return bad("type D needs rank >= 3");
            }
            let mut m = chain(rank);
            m[rank - 1][rank - 2] = int(0);
            m[rank - 2][rank - 1] = int(0);
            m[rank - 1][rank - 3] = int(-1);
            m[rank - 3][rank - 1] = int(-1);
            Ok(m)
        }
        SimpleKind::F4 => {
            if rank != 4 {
                return bad("type F has rank 4");
            }
            let mut m = chain(4);
            m[2][1] = int(-2);
            Ok(m)
        }
        SimpleKind::G2 => {
            if rank != 2 {
                return bad("type G has rank 2");
            }
            Ok(vec![vec![int(2), int(-3)], vec![int(-1), int(2)]])
        }
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    ambient: usize,
    labels: Vec<String>,
    cartan: Vec<Vec<Int>>,
    simple_roots: Vec<Vec<Rat>>,
    coroots: Vec<Vec<Rat>>,
    positive: Vec<Vec<Int>>,
}

/// Upper bound on the reflection closure; the largest supported systems stay
/// far below it, and a non-finite Cartan matrix overflows it quickly.
const MAX_ROOTS: usize = 2000;

impl RootSystem {
    pub fn simple(kind: SimpleKind, rank: usize) -> CoreResult<RootSystem> {
        RootSystem::from_cartan(cartan_matrix(kind, rank)?)
    }

    /// Product of simple factors; labels get one trailing prime per extra
    /// factor (`alpha1`, `alpha1'`, `alpha1''`, ...).
    pub fn product(factors: &[(SimpleKind, usize)]) -> CoreResult<RootSystem> {
        if factors.is_empty() {
            return Err(CoreError::InvalidInput("empty product of factors".into()));
        }
        let blocks: Vec<Vec<Vec<Int>>> = factors
            .iter()
            .map(|&(k, r)| cartan_matrix(k, r))
            .collect::<CoreResult<_>>()?;
        let total: usize = blocks.iter().map(Vec::len).sum();
        let mut cartan = vec![vec![int(0); total]; total];
        let mut labels = Vec::with_capacity(total);
        let mut off = 0usize;
        for (f, block) in blocks.iter().enumerate() {
            let n = block.len();
            for i in 0..n {
                for j in 0..n {
                    cartan[off + i][off + j] = block[i][j].clone();
                }
                let primes: String = core::iter::repeat('\'').take(f).collect();
                labels.push(format!("alpha{}{}", i + 1, primes));
            }
            off += n;
        }
        RootSystem::from_cartan_labeled(cartan, labels)
    }

    /// Build in fundamental-weight coordinates from a Cartan matrix: coroot
    /// `i` is the `i`-th coordinate projection and root `j` is column `j`.
    pub fn from_cartan(cartan: Vec<Vec<Int>>) -> CoreResult<RootSystem> {
        let labels = (0..cartan.len()).map(|i| format!("alpha{}", i + 1)).collect();
        RootSystem::from_cartan_labeled(cartan, labels)
    }

    pub fn from_cartan_labeled(
        cartan: Vec<Vec<Int>>,
        labels: Vec<String>,
    ) -> CoreResult<RootSystem> {
        let n = cartan.len();
        validate_cartan(&cartan)?;
        if labels.len() != n {
            return Err(CoreError::InvalidInput("one label per simple root".into()));
        }
        let simple_roots: Vec<Vec<Rat>> = (0..n)
            .map(|j| (0..n).map(|i| Rat::from_integer(cartan[i][j].clone())).collect())
            .collect();
        let coroots: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut v = vec![Rat::zero(); n];
                v[i] = Rat::one();
                v
            })
            .collect();
        let positive = positive_closure(&cartan)?;
        Ok(RootSystem {
            ambient: n,
            labels,
            cartan,
            simple_roots,
            coroots,
            positive,
        })
    }

    /// Explicit realization: `simple_roots[i]` in ambient coordinates and
    /// `coroots[i]` as a functional (pairing = dot product).
    pub fn custom(
        ambient: usize,
        simple_roots: Vec<Vec<Rat>>,
        coroots: Vec<Vec<Rat>>,
        labels: Vec<String>,
    ) -> CoreResult<RootSystem> {
        let n = simple_roots.len();
        if coroots.len() != n || labels.len() != n {
            return Err(CoreError::InvalidInput(
                "simple_roots, coroots and labels must have equal length".into(),
            ));
        }
        for v in simple_roots.iter().chain(coroots.iter()) {
            if v.len() != ambient {
                return Err(CoreError::InvalidInput(format!(
                    "root or coroot has length {} instead of {ambient}",
                    v.len()
                )));
            }
        }
        if matrix::rank(&simple_roots) != n {
            return Err(CoreError::InvalidInput(
                "simple roots must be linearly independent".into(),
            ));
        }
        let mut cartan = vec![vec![int(0); n]; n];
        for i in 0..n {
            for j in 0..n {
                let p = dot(&coroots[i], &simple_roots[j]);
                if !p.is_integer() {
                    return Err(CoreError::InvalidInput(format!(
                        "pairing of coroot {} with root {} is not an integer",
                        i + 1,
                        j + 1
                    )));
                }
                cartan[i][j] = p.to_integer();
            }
        }
        validate_cartan(&cartan)?;
        let positive = positive_closure(&cartan)?;
        Ok(RootSystem {
            ambient,
            labels,
            cartan,
            simple_roots,
            coroots,
            positive,
        })
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn cartan(&self) -> &[Vec<Int>] {
        &self.cartan
    }

    pub fn simple_root(&self, i: usize) -> &[Rat] {
        &self.simple_roots[i]
    }

    pub fn coroot(&self, i: usize) -> &[Rat] {
        &self.coroots[i]
    }

    /// `<coroot_i, v>` for `v` in ambient coordinates.
    pub fn pair_simple(&self, i: usize, v: &[Rat]) -> Rat {
        dot(&self.coroots[i], v)
    }

    pub fn is_orthogonal(&self, i: usize, j: usize) -> bool {
        self.cartan[i][j].is_zero()
    }

    pub fn is_dominant(&self, v: &[Rat]) -> bool {
        (0..self.rank()).all(|i| !self.pair_simple(i, v).is_negative())
    }

    /// Simple reflection `s_i` on ambient coordinates.
    pub fn reflect(&self, i: usize, v: &[Rat]) -> Vec<Rat> {
        let c = self.pair_simple(i, v);
        v.iter()
            .zip(&self.simple_roots[i])
            .map(|(x, a)| x - &c * a)
            .collect()
    }

    /// Positive roots as coefficient vectors over the simple roots,
    /// lexicographically sorted.
    pub fn positive_roots(&self) -> &[Vec<Int>] {
        &self.positive
    }

    /// Ambient coordinates of a root-coefficient vector.
    pub fn root_combination(&self, coeffs: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.ambient];
        for (c, root) in coeffs.iter().zip(&self.simple_roots) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(root) {
                *o += c * x;
            }
        }
        out
    }

    /// Sum of the positive roots supported inside `subset`, in ambient
    /// coordinates.
    pub fn two_rho(&self, subset: &[usize]) -> Vec<Rat> {
        let inside: BTreeSet<usize> = subset.iter().copied().collect();
        let mut total = vec![Rat::zero(); self.ambient];
        for root in &self.positive {
            let supported = root
                .iter()
                .enumerate()
                .all(|(i, c)| c.is_zero() || inside.contains(&i));
            if !supported {
                continue;
            }
            for (t, x) in total.iter_mut().zip(self.root_combination(
                &root.iter().map(|c| Rat::from_integer(c.clone())).collect::<Vec<_>>(),
            )) {
                *t += x;
            }
        }
        total
    }

    /// Canonical display name for a root-coefficient vector, e.g.
    /// `"alpha1 + 2*alpha2"` or `"1/2*alpha1 + 1/2*alpha1'"`.
    pub fn combination_name(&self, coeffs: &[Rat]) -> String {
        let mut parts = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_one() {
                parts.push(self.labels[i].clone());
            } else {
                parts.push(format!("{}*{}", rat_to_string(c), self.labels[i]));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

fn validate_cartan(cartan: &[Vec<Int>]) -> CoreResult<()> {
    let n = cartan.len();
    for row in cartan {
        if row.len() != n {
            return Err(CoreError::InvalidInput("Cartan matrix must be square".into()));
        }
    }
    for i in 0..n {
        if cartan[i][i] != int(2) {
            return Err(CoreError::InvalidInput(
                "Cartan matrix must have 2 on the diagonal".into(),
            ));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if cartan[i][j].is_positive() {
                return Err(CoreError::InvalidInput(
                    "off-diagonal Cartan entries must be nonpositive".into(),
                ));
            }
            if cartan[i][j].is_zero() != cartan[j][i].is_zero() {
                return Err(CoreError::InvalidInput(
                    "Cartan zeros must be symmetric".into(),
                ));
            }
        }
    }
    Ok(())
}

/// All positive roots by reflection closure on coefficient vectors.
fn positive_closure(cartan: &[Vec<Int>]) -> CoreResult<Vec<Vec<Int>>> {
    let n = cartan.len();
    let mut seen: BTreeSet<Vec<Int>> = BTreeSet::new();
    let mut queue: Vec<Vec<Int>> = Vec::new();
    for i in 0..n {
        let mut v = vec![int(0); n];
        v[i] = int(1);
        seen.insert(v.clone());
        queue.push(v);
    }
    while let Some(c) = queue.pop() {
        for j in 0..n {
            // <coroot_j, sum c_i root_i> = sum_i c_i a_ji
            let p: Int = (0..n).map(|i| &c[i] * &cartan[j][i]).sum();
            if p.is_zero() {
                continue;
            }
            let mut r = c.clone();
            r[j] -= p;
            if seen.insert(r.clone()) {
                if seen.len() > MAX_ROOTS {
                    return Err(CoreError::InvalidInput(
                        "root system is not finite (reflection closure overflow)".into(),
                    ));
                }
                queue.push(r);
            }
        }
    }
    let mut positive: Vec<Vec<Int>> = seen
        .into_iter()
        .filter(|c| c.iter().all(|x| !x.is_negative()))
        .collect();
    positive.sort_by(|a, b| crate::num::cmp_int_vec(a, b));
    Ok(positive)
}

/// Classification row tags for spherical roots.  Each tag names one shape of
/// support diagram together with fixed coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RowTag {
    AChain,
    A1Double,
    A1A1Sum,
    A1A1Half,
    A3Mid,
    A3Half,
    BChain,
    BDouble,
    B3Long,
    B3Half,
    CChain,
    DDouble,
    DHalf,
    F4Root,
    G2Sum,
    G2Long,
    G2Double,
}

pub const ALL_ROW_TAGS: [RowTag; 17] = [
    RowTag::AChain,
    RowTag::A1Double,
    RowTag::A1A1Sum,
    RowTag::A1A1Half,
    RowTag::A3Mid,
    RowTag::A3Half,
    RowTag::BChain,
    RowTag::BDouble,
    RowTag::B3Long,
    RowTag::B3Half,
    RowTag::CChain,
    RowTag::DDouble,
    RowTag::DHalf,
    RowTag::F4Root,
    RowTag::G2Sum,
    RowTag::G2Long,
    RowTag::G2Double,
];

impl RowTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            RowTag::AChain => "a_chain",
            RowTag::A1Double => "a1_double",
            RowTag::A1A1Sum => "a1a1_sum",
            RowTag::A1A1Half => "a1a1_half",
            RowTag::A3Mid => "a3_mid",
            RowTag::A3Half => "a3_half",
            RowTag::BChain => "b_chain",
            RowTag::BDouble => "b_double",
            RowTag::B3Long => "b3_long",
            RowTag::B3Half => "b3_half",
            RowTag::CChain => "c_chain",
            RowTag::DDouble => "d_double",
            RowTag::DHalf => "d_half",
            RowTag::F4Root => "f4",
            RowTag::G2Sum => "g2_sum",
            RowTag::G2Long => "g2_long",
            RowTag::G2Double => "g2_double",
        }
    }

    pub fn parse(s: &str) -> Option<RowTag> {
        ALL_ROW_TAGS.iter().copied().find(|t| t.as_str() == s)
    }
}

/// One spherical root supported on a subdiagram: its row tag, ordered
/// support, coefficients over all simple roots, ambient weight, and a
/// canonical display name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub tag: RowTag,
    pub support: Vec<usize>,
    pub coeffs: Vec<Rat>,
    pub weight: Vec<Rat>,
    pub name: String,
}

/// All spherical roots of the root system, sorted by support and then by
/// coefficient vector.
pub fn spherical_root_catalog(rs: &RootSystem) -> Vec<CatalogEntry> {
    let n = rs.rank();
    assert!(n <= 24, "catalog enumeration supports rank <= 24");
    let mut out: Vec<CatalogEntry> = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let subset: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if subset.len() == 2 && rs.is_orthogonal(subset[0], subset[1]) {
            emit(rs, &mut out, RowTag::A1A1Sum, &[(subset[0], rat_int(1)), (subset[1], rat_int(1))]);
            emit(rs, &mut out, RowTag::A1A1Half, &[(subset[0], rat(1, 2)), (subset[1], rat(1, 2))]);
            continue;
        }
        if !is_connected(rs, &subset) {
            continue;
        }
        emit_connected(rs, &subset, &mut out);
    }
    out.sort_by(|x, y| x.support.cmp(&y.support).then_with(|| cmp_vec(&x.coeffs, &y.coeffs)));
    out
}

/// Find the catalog entry with the given coefficient vector, if any.
pub fn catalog_lookup<'a>(catalog: &'a [CatalogEntry], coeffs: &[Rat]) -> Option<&'a CatalogEntry> {
    catalog.iter().find(|e| e.coeffs == coeffs)
}

fn emit(rs: &RootSystem, out: &mut Vec<CatalogEntry>, tag: RowTag, terms: &[(usize, Rat)]) {
    let mut coeffs = vec![Rat::zero(); rs.rank()];
    for (i, c) in terms {
        coeffs[*i] = c.clone();
    }
    let mut support: Vec<usize> = terms.iter().map(|(i, _)| *i).collect();
    support.sort_unstable();
    let weight = rs.root_combination(&coeffs);
    let name = rs.combination_name(&coeffs);
    out.push(CatalogEntry { tag, support, coeffs, weight, name });
}

fn is_connected(rs: &RootSystem, subset: &[usize]) -> bool {
    if subset.is_empty() {
        return false;
    }
    let mut reached = BTreeSet::new();
    let mut stack = vec![subset[0]];
    reached.insert(subset[0]);
    while let Some(i) = stack.pop() {
        for &j in subset {
            if !reached.contains(&j) && !rs.is_orthogonal(i, j) {
                reached.insert(j);
                stack.push(j);
            }
        }
    }
    reached.len() == subset.len()
}

/// Edge multiplicity `a_ij * a_ji` (1, 2 or 3 for finite types).
fn edge_mult(rs: &RootSystem, i: usize, j: usize) -> Int {
    &rs.cartan()[i][j] * &rs.cartan()[j][i]
}

fn emit_connected(rs: &RootSystem, subset: &[usize], out: &mut Vec<CatalogEntry>) {
    let deg = |i: usize| subset.iter().filter(|&&j| j != i && !rs.is_orthogonal(i, j)).count();
    if subset.len() == 1 {
        let i = subset[0];
        emit(rs, out, RowTag::AChain, &[(i, rat_int(1))]);
        emit(rs, out, RowTag::A1Double, &[(i, rat_int(2))]);
        return;
    }
    if subset.iter().any(|&i| deg(i) > 3) {
        return;
    }
    let forks: Vec<usize> = subset.iter().copied().filter(|&i| deg(i) == 3).collect();
    match forks.len() {
        0 => emit_path(rs, subset, out),
        1 => emit_fork(rs, subset, forks[0], out),
        _ => {}
    }
}

fn emit_path(rs: &RootSystem, subset: &[usize], out: &mut Vec<CatalogEntry>) {
    let deg = |i: usize| subset.iter().filter(|&&j| j != i && !rs.is_orthogonal(i, j)).count();
    let Some(&start) = subset.iter().find(|&&i| deg(i) == 1) else {
        return; // a cycle; not a finite type
    };
    let mut path = vec![start];
    loop {
        let last = *path.last().unwrap();
        let next = subset
            .iter()
            .copied()
            .find(|&j| !path.contains(&j) && !rs.is_orthogonal(last, j));
        match next {
            Some(j) => path.push(j),
            None => break,
        }
    }
    if path.len() != subset.len() {
        return;
    }
    let n = path.len();
    let mults: Vec<Int> = (0..n - 1).map(|k| edge_mult(rs, path[k], path[k + 1])).collect();
    let doubles: Vec<usize> = (0..n - 1).filter(|&k| mults[k] == int(2)).collect();
    let triples: Vec<usize> = (0..n - 1).filter(|&k| mults[k] == int(3)).collect();
    if mults.iter().any(|m| *m > int(3)) {
        return;
    }
    if doubles.is_empty() && triples.is_empty() {
        // Type A chain.
        let ones: Vec<(usize, Rat)> = path.iter().map(|&i| (i, rat_int(1))).collect();
        emit(rs, out, RowTag::AChain, &ones);
        if n == 3 {
            emit(
                rs,
                out,
                RowTag::A3Mid,
                &[(path[0], rat_int(1)), (path[1], rat_int(2)), (path[2], rat_int(1))],
            );
            emit(
                rs,
                out,
                RowTag::A3Half,
                &[(path[0], rat(1, 2)), (path[1], rat_int(1)), (path[2], rat(1, 2))],
            );
        }
        return;
    }
    if triples.len() == 1 && doubles.is_empty() && n == 2 {
        // Type G2; the short root's coroot pairs to -3.
        let (a, b) = (path[0], path[1]);
        let (s, l) = if rs.cartan()[a][b] == int(-3) { (a, b) } else { (b, a) };
        emit(rs, out, RowTag::G2Sum, &[(s, rat_int(1)), (l, rat_int(1))]);
        emit(rs, out, RowTag::G2Long, &[(s, rat_int(2)), (l, rat_int(1))]);
        emit(rs, out, RowTag::G2Double, &[(s, rat_int(4)), (l, rat_int(2))]);
        return;
    }
    if doubles.len() != 1 || !triples.is_empty() {
        return;
    }
    let k = doubles[0];
    if n == 2 {
        emit_b_rows(rs, &orient_b2(rs, path[0], path[1]), out);
        return;
    }
    if k == 0 || k == n - 2 {
        let (t, u, ordered) = if k == n - 2 {
            (path[n - 1], path[n - 2], path.clone())
        } else {
            let mut p = path.clone();
            p.reverse();
            (path[0], path[1], p)
        };
        if rs.cartan()[t][u] == int(-2) {
            // Short terminal root: type B.
            emit_b_rows(rs, &ordered, out);
        } else {
            // Long terminal root: type C.
            let mut terms: Vec<(usize, Rat)> = ordered.iter().map(|&i| (i, rat_int(2))).collect();
            terms[0].1 = rat_int(1);
            let last = terms.len() - 1;
            terms[last].1 = rat_int(1);
            emit(rs, out, RowTag::CChain, &terms);
        }
        return;
    }
    if n == 4 && k == 1 {
        // Type F4: order so the short pair comes last.
        let ordered = if rs.cartan()[path[2]][path[1]] == int(-2) {
            path.clone()
        } else {
            let mut p = path.clone();
            p.reverse();
            p
        };
        emit(
            rs,
            out,
            RowTag::F4Root,
            &[
                (ordered[0], rat_int(1)),
                (ordered[1], rat_int(2)),
                (ordered[2], rat_int(3)),
                (ordered[3], rat_int(2)),
            ],
        );
    }
}

fn orient_b2(rs: &RootSystem, a: usize, b: usize) -> Vec<usize> {
    // Order [long, short]; the short coroot pairs to -2 against the long root.
    if rs.cartan()[a][b] == int(-2) {
        vec![b, a]
    } else {
        vec![a, b]
    }
}

/// Rows supported on a type-B chain ordered long-to-short.
fn emit_b_rows(rs: &RootSystem, ordered: &[usize], out: &mut Vec<CatalogEntry>) {
    let ones: Vec<(usize, Rat)> = ordered.iter().map(|&i| (i, rat_int(1))).collect();
    emit(rs, out, RowTag::BChain, &ones);
    let twos: Vec<(usize, Rat)> = ordered.iter().map(|&i| (i, rat_int(2))).collect();
    emit(rs, out, RowTag::BDouble, &twos);
    if ordered.len() == 3 {
        emit(
            rs,
            out,
            RowTag::B3Long,
            &[(ordered[0], rat_int(1)), (ordered[1], rat_int(2)), (ordered[2], rat_int(3))],
        );
        emit(
            rs,
            out,
            RowTag::B3Half,
            &[(ordered[0], rat(1, 2)), (ordered[1], rat_int(1)), (ordered[2], rat(3, 2))],
        );
    }
}

fn emit_fork(rs: &RootSystem, subset: &[usize], fork: usize, out: &mut Vec<CatalogEntry>) {
    // Type D only: all edges simple, two branches of length one.
    for &i in subset {
        for &j in subset {
            if i < j && !rs.is_orthogonal(i, j) && edge_mult(rs, i, j) != int(1) {
                return;
            }
        }
    }
    let neighbors: Vec<usize> = subset
        .iter()
        .copied()
        .filter(|&j| j != fork && !rs.is_orthogonal(fork, j))
        .collect();
    debug_assert_eq!(neighbors.len(), 3);
    let mut branches: Vec<Vec<usize>> = Vec::new();
    for &start in &neighbors {
        let mut branch = vec![start];
        let mut prev = fork;
        loop {
            let cur = *branch.last().unwrap();
            let next = subset
                .iter()
                .copied()
                .find(|&j| j != prev && j != cur && !rs.is_orthogonal(cur, j));
            match next {
                Some(j) => {
                    prev = cur;
                    branch.push(j);
                }
                None => break,
            }
        }
        branches.push(branch);
    }
    if branches.iter().map(Vec::len).sum::<usize>() + 1 != subset.len() {
        return; // a second fork or a cycle slipped in
    }
    for bi in 0..3 {
        for bj in bi + 1..3 {
            if branches[bi].len() != 1 || branches[bj].len() != 1 {
                continue;
            }
            let bk = 3 - bi - bj;
            let mut chain: Vec<usize> = branches[bk].clone();
            chain.reverse();
            chain.push(fork);
            let mut tips = [branches[bi][0], branches[bj][0]];
            tips.sort_unstable();
            let mut double: Vec<(usize, Rat)> =
                chain.iter().map(|&i| (i, rat_int(2))).collect();
            double.push((tips[0], rat_int(1)));
            double.push((tips[1], rat_int(1)));
            emit(rs, out, RowTag::DDouble, &double);
            let mut half: Vec<(usize, Rat)> = chain.iter().map(|&i| (i, rat_int(1))).collect();
            half.push((tips[0], rat(1, 2)));
            half.push((tips[1], rat(1, 2)));
            emit(rs, out, RowTag::DHalf, &half);
        }
    }
}
