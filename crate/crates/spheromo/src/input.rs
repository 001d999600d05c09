//! Input documents: a reductive group, a sublattice of its weight lattice, a
//! polytope, and optionally a root set and monoid data.  Accepted as JSON or
//! TOML; all rationals are exact strings ("p/q" or an integer), never floats.

use crate::error::InputError;
use serde::{Deserialize, Serialize};
use spheromo_core::matrix::Lattice;
use spheromo_core::num::{rat_from_str, vec_int, Int, Rat};
use spheromo_core::polykernel::Polytope;
use spheromo_core::rootsys::{RootSystem, SimpleKind};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub group: RootSystemSpec,
    /// Basis rows of the sublattice, integers in weight coordinates.
    pub lattice: Vec<Vec<i64>>,
    /// Vertices in weight coordinates, one rational string per coordinate.
    pub polytope: Vec<Vec<String>>,
    /// Root set; absence and the empty list mean different things (the
    /// enumeration commands require absence, `check` requires presence).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<SigmaSpec>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadruple: Option<QuadrupleSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum RootSystemSpec {
    Simple { kind: String, rank: usize },
    Product { factors: Vec<(String, usize)> },
    Custom {
        ambient: usize,
        simple_roots: Vec<Vec<String>>,
        coroots: Vec<Vec<String>>,
        labels: Vec<String>,
    },
    Torus { ambient: usize },
}

/// One root-set member: a name like "alpha1", "2alpha1", "alpha1+alpha3",
/// "1/2(alpha1+alpha1')", or an explicit label-to-coefficient map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SigmaSpec {
    Alias(String),
    Coefficients(BTreeMap<String, String>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadrupleSpec {
    /// Basis rows of the extended lattice in weight-plus-degree coordinates.
    pub generators: Vec<Vec<i64>>,
    /// Highest weights, rational strings in weight coordinates.
    pub highest_weights: Vec<Vec<String>>,
}

/// Wire format, chosen from the file extension (".toml" or JSON otherwise).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WireFormat {
    Json,
    Toml,
}

impl WireFormat {
    pub fn from_path(path: &std::path::Path) -> WireFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("toml") => WireFormat::Toml,
            _ => WireFormat::Json,
        }
    }
}

pub fn parse_document(text: &str, format: WireFormat) -> Result<InputDocument, InputError> {
    match format {
        WireFormat::Json => serde_json::from_str(text).map_err(|e| {
            let at = (e.line(), e.column());
            // serde_json appends its own " at line N column M"; the location
            // is reported once, through the structured field.
            let mut message = e.to_string();
            if let Some(cut) = message.rfind(" at line ") {
                message.truncate(cut);
            }
            InputError::located(message, Some(at))
        }),
        WireFormat::Toml => toml::from_str(text).map_err(|e| {
            let at = e
                .span()
                .map(|span| line_column(text, span.start));
            InputError::located(e.message().to_string(), at)
        }),
    }
}

pub fn to_json_string(doc: &InputDocument) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("documents serialize");
    out.push('\n');
    out
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let clamped = offset.min(text.len());
    let prefix = &text[..clamped];
    let line = prefix.matches('\n').count() + 1;
    let column = clamped - prefix.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

/// The document compiled to exact core objects.  Root-set members are kept
/// as coefficient vectors over the simple roots; commands resolve them
/// against the catalog of the group.
#[derive(Debug)]
pub struct CompiledInput {
    pub root_system: RootSystem,
    pub polytope: Polytope,
    pub sigma: Option<Vec<SigmaCoefficients>>,
    pub quadruple: Option<CompiledQuadruple>,
}

#[derive(Debug)]
pub struct SigmaCoefficients {
    pub coeffs: Vec<Rat>,
    pub display: String,
}

#[derive(Debug)]
pub struct CompiledQuadruple {
    pub extended: Lattice,
    pub highest_weights: Vec<Vec<Rat>>,
}

pub fn compile(doc: &InputDocument) -> Result<CompiledInput, InputError> {
    let root_system = build_root_system(&doc.group)?;
    let ambient = root_system.ambient_dim();
    let rows: Vec<Vec<Int>> = doc.lattice.iter().map(|r| vec_int(r)).collect();
    let lattice = Lattice::new(rows, ambient).map_err(InputError::from_core)?;
    let vertices = doc
        .polytope
        .iter()
        .map(|v| parse_rat_vec(v, ambient, "polytope vertex"))
        .collect::<Result<Vec<_>, _>>()?;
    let polytope = Polytope::new(lattice, vertices).map_err(InputError::from_core)?;
    let sigma = doc
        .sigma
        .as_ref()
        .map(|list| {
            list.iter()
                .map(|s| resolve_sigma_spec(&root_system, s))
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    let quadruple = doc
        .quadruple
        .as_ref()
        .map(|q| {
            let rows: Vec<Vec<Int>> = q.generators.iter().map(|r| vec_int(r)).collect();
            let extended =
                Lattice::new(rows, ambient + 1).map_err(InputError::from_core)?;
            let highest_weights = q
                .highest_weights
                .iter()
                .map(|w| parse_rat_vec(w, ambient, "highest weight"))
                .collect::<Result<Vec<_>, _>>()?;
            Ok::<CompiledQuadruple, InputError>(CompiledQuadruple { extended, highest_weights })
        })
        .transpose()?;
    Ok(CompiledInput { root_system, polytope, sigma, quadruple })
}

fn build_root_system(spec: &RootSystemSpec) -> Result<RootSystem, InputError> {
    match spec {
        RootSystemSpec::Simple { kind, rank } => {
            RootSystem::simple(parse_kind(kind)?, *rank).map_err(InputError::from_core)
        }
        RootSystemSpec::Product { factors } => {
            let parsed = factors
                .iter()
                .map(|(kind, rank)| Ok((parse_kind(kind)?, *rank)))
                .collect::<Result<Vec<_>, InputError>>()?;
            RootSystem::product(&parsed).map_err(InputError::from_core)
        }
        RootSystemSpec::Custom { ambient, simple_roots, coroots, labels } => {
            let roots = simple_roots
                .iter()
                .map(|v| parse_rat_vec(v, *ambient, "simple root"))
                .collect::<Result<Vec<_>, _>>()?;
            let cors = coroots
                .iter()
                .map(|v| parse_rat_vec(v, *ambient, "coroot"))
                .collect::<Result<Vec<_>, _>>()?;
            RootSystem::custom(*ambient, roots, cors, labels.clone())
                .map_err(InputError::from_core)
        }
        RootSystemSpec::Torus { ambient } => {
            RootSystem::custom(*ambient, vec![], vec![], vec![]).map_err(InputError::from_core)
        }
    }
}

fn parse_kind(kind: &str) -> Result<SimpleKind, InputError> {
    match kind {
        "A" => Ok(SimpleKind::A),
        "B" => Ok(SimpleKind::B),
        "C" => Ok(SimpleKind::C),
        "D" => Ok(SimpleKind::D),
        "F4" => Ok(SimpleKind::F4),
        "G2" => Ok(SimpleKind::G2),
        other => Err(InputError::new(format!(
            "unknown group kind `{other}` (expected A, B, C, D, F4, or G2)"
        ))),
    }
}

fn parse_rat_vec(strings: &[String], want_len: usize, what: &str) -> Result<Vec<Rat>, InputError> {
    if strings.len() != want_len {
        return Err(InputError::new(format!(
            "{what} has {} coordinates, expected {want_len}",
            strings.len()
        )));
    }
    strings
        .iter()
        .map(|s| rat_from_str(s).map_err(|e| InputError::new(format!("{what}: {e}"))))
        .collect()
}

fn resolve_sigma_spec(
    rs: &RootSystem,
    spec: &SigmaSpec,
) -> Result<SigmaCoefficients, InputError> {
    let coeffs = match spec {
        SigmaSpec::Alias(alias) => parse_sigma_alias(rs, alias)?,
        SigmaSpec::Coefficients(map) => {
            let mut coeffs = vec![Rat::from_integer(0.into()); rs.rank()];
            for (label, value) in map {
                let i = label_index(rs, label)?;
                coeffs[i] = rat_from_str(value)
                    .map_err(|e| InputError::new(format!("coefficient of {label}: {e}")))?;
            }
            coeffs
        }
    };
    let display = rs.combination_name(&coeffs);
    Ok(SigmaCoefficients { coeffs, display })
}

fn label_index(rs: &RootSystem, label: &str) -> Result<usize, InputError> {
    rs.labels()
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| InputError::new(format!("unknown simple root label `{label}`")))
}

/// Names are sums of coefficient-label terms, with an optional global
/// rational scale in front of a parenthesized sum:
///
///   alias := rational "(" sum ")" | sum
///   sum   := term ("+" term)*
///   term  := [rational ["*"]] label
///
/// Whitespace is ignored, so catalog names round-trip.
fn parse_sigma_alias(rs: &RootSystem, alias: &str) -> Result<Vec<Rat>, InputError> {
    let compact: String = alias.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |why: &str| {
        InputError::new(format!("cannot parse spherical root `{alias}`: {why}"))
    };
    if compact.is_empty() {
        return Err(bad("empty name"));
    }
    let (scale, body) = match compact.find('(') {
        Some(open) => {
            if !compact.ends_with(')') {
                return Err(bad("missing closing parenthesis"));
            }
            let prefix = compact[..open].trim_end_matches('*');
            let scale = rat_from_str(prefix).map_err(|e| bad(&e))?;
            (scale, &compact[open + 1..compact.len() - 1])
        }
        None => (Rat::from_integer(1.into()), compact.as_str()),
    };
    // Longest label first, so "alpha1'" wins over "alpha1" as a suffix.
    let mut by_length: Vec<usize> = (0..rs.rank()).collect();
    by_length.sort_by_key(|&i| std::cmp::Reverse(rs.label(i).len()));
    let mut coeffs = vec![Rat::from_integer(0.into()); rs.rank()];
    for term in body.split('+') {
        if term.is_empty() {
            return Err(bad("empty term"));
        }
        let Some(&i) = by_length.iter().find(|&&i| term.ends_with(rs.label(i))) else {
            return Err(bad(&format!("no simple root label ends the term `{term}`")));
        };
        let prefix = term[..term.len() - rs.label(i).len()].trim_end_matches('*');
        let c = if prefix.is_empty() {
            Rat::from_integer(1.into())
        } else {
            rat_from_str(prefix).map_err(|e| bad(&e))?
        };
        coeffs[i] += &c * &scale;
    }
    Ok(coeffs)
}
