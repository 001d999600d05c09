//! Data-driven classification tables.
//!
//! Two tables parameterize the checks that rest on the classification of
//! rank-one objects rather than on direct computation: the permitted
//! parabolic supports per spherical-root shape, and the registry of smooth
//! localized models.  Both are plain data so they can be loaded from files;
//! configurations outside the tables report `Unsupported` instead of
//! guessing.

use crate::num::{rat_to_string, Rat};
use crate::rootsys::{CatalogEntry, RootSystem, RowTag};
use crate::verdict::{Certificate, Verdict};
use crate::{CoreError, CoreResult};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use num_traits::Zero;

/// A family of permitted parabolic supports, evaluated per spherical root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermittedFamily {
    /// The empty support set.
    Empty,
    /// All support roots whose coroot pairs to zero with the spherical root.
    ZeroPairingFull,
}

impl PermittedFamily {
    pub fn as_str(&self) -> &'static str {
        match self {
            PermittedFamily::Empty => "empty",
            PermittedFamily::ZeroPairingFull => "zero_pairing_full",
        }
    }

    pub fn parse(s: &str) -> Option<PermittedFamily> {
        match s {
            "empty" => Some(PermittedFamily::Empty),
            "zero_pairing_full" => Some(PermittedFamily::ZeroPairingFull),
            _ => None,
        }
    }
}

/// Permitted parabolic supports for each spherical-root row.
///
/// For a pair `(Sp, sigma)` the decision is: any root of `Sp` pairing
/// nonzero with `sigma` is an outright failure; otherwise `Sp` intersected
/// with the support of `sigma` must equal one of the row's evaluated
/// families, and anything not listed is reported as unsupported.
#[derive(Debug, Clone)]
pub struct AxiomSTable {
    rows: Vec<(RowTag, Vec<PermittedFamily>)>,
}

impl AxiomSTable {
    pub fn new(rows: Vec<(RowTag, Vec<PermittedFamily>)>) -> CoreResult<AxiomSTable> {
        for (k, (tag, _)) in rows.iter().enumerate() {
            if rows[..k].iter().any(|(t, _)| t == tag) {
                return Err(CoreError::InvalidInput(format!(
                    "duplicate row {} in parabolic-support table",
                    tag.as_str()
                )));
            }
        }
        Ok(AxiomSTable { rows })
    }

    pub fn families(&self, tag: RowTag) -> Option<&[PermittedFamily]> {
        self.rows
            .iter()
            .find(|(t, _)| *t == tag)
            .map(|(_, f)| f.as_slice())
    }

    /// Decide whether `(sp, sigma)` is a valid parabolic/spherical-root pair.
    /// `sp` holds simple-root indices, sorted.
    pub fn check_pair(&self, rs: &RootSystem, entry: &CatalogEntry, sp: &[usize]) -> Verdict {
        for &i in sp {
            let p = rs.pair_simple(i, &entry.weight);
            if !p.is_zero() {
                return Verdict::fail(
                    Certificate::new(
                        "axiom-s/parabolic-pairing",
                        "a parabolic simple root pairs nonzero with the spherical root",
                    )
                    .with("sigma", entry.name.clone())
                    .with("root", rs.label(i))
                    .with("pairing", rat_to_string(&p)),
                );
            }
        }
        let t: Vec<usize> = sp
            .iter()
            .copied()
            .filter(|i| entry.support.contains(i))
            .collect();
        let Some(families) = self.families(entry.tag) else {
            return Verdict::unsupported(
                Certificate::new(
                    "axiom-s/unknown-row",
                    "the parabolic-support table has no row for this spherical-root shape",
                )
                .with("sigma", entry.name.clone())
                .with("row", entry.tag.as_str()),
            );
        };
        for family in families {
            let evaluated = match family {
                PermittedFamily::Empty => Vec::new(),
                PermittedFamily::ZeroPairingFull => entry
                    .support
                    .iter()
                    .copied()
                    .filter(|&i| rs.pair_simple(i, &entry.weight).is_zero())
                    .collect(),
            };
            if t == evaluated {
                return Verdict::pass();
            }
        }
        Verdict::unsupported(
            Certificate::new(
                "axiom-s/uncovered",
                "the parabolic support of the spherical root is not listed in the table",
            )
            .with("sigma", entry.name.clone())
            .with("parabolic-support", label_list(rs, &t))
            .with(
                "listed-families",
                families
                    .iter()
                    .map(|f| f.as_str())
                    .collect::<Vec<_>>()
                    .join(", "),
            ),
        )
    }
}

fn label_list(rs: &RootSystem, indices: &[usize]) -> String {
    if indices.is_empty() {
        return "{}".to_string();
    }
    let names: Vec<&str> = indices.iter().map(|&i| rs.label(i)).collect();
    format!("{{{}}}", names.join(", "))
}

/// One smooth localized model: the expected color pairings against the local
/// spherical roots, split by color kind.  Pairing vectors are indexed by the
/// local spherical roots in catalog order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocleEntry {
    pub id: String,
    /// Shape key: `""` for the no-local-root model (all local simple roots
    /// parabolic, no colors constrained), `"a1xa1_sum"` for two orthogonal
    /// simple roots with their sum as the only local spherical root.
    pub s_type: String,
    pub a_pairings: Vec<Vec<Rat>>,
    pub d_pairings: Vec<Vec<Rat>>,
    pub extra_pairings: Vec<Vec<Rat>>,
}

pub const KNOWN_SOCLE_SHAPES: [&str; 2] = ["", "a1xa1_sum"];

#[derive(Debug, Clone)]
pub struct SocleRegistry {
    pub entries: Vec<SocleEntry>,
}

impl SocleRegistry {
    pub fn new(entries: Vec<SocleEntry>) -> CoreResult<SocleRegistry> {
        for (k, e) in entries.iter().enumerate() {
            if !KNOWN_SOCLE_SHAPES.contains(&e.s_type.as_str()) {
                return Err(CoreError::InvalidInput(format!(
                    "socle registry entry {} has unrecognized shape {:?}",
                    e.id, e.s_type
                )));
            }
            if entries[..k].iter().any(|p| p.s_type == e.s_type) {
                return Err(CoreError::InvalidInput(format!(
                    "socle registry has two entries of shape {:?}",
                    e.s_type
                )));
            }
        }
        Ok(SocleRegistry { entries })
    }

    pub fn entry_for(&self, s_type: &str) -> Option<&SocleEntry> {
        self.entries.iter().find(|e| e.s_type == s_type)
    }
}
