//! Data files backing the parabolic-condition table and the socle registry.
//! Bundled defaults are compiled in; `--data-dir` or the SPHEROMO_DATA
//! environment variable point at a directory with replacement files.

use crate::error::InputError;
use serde::Deserialize;
use spheromo_core::num::{rat_from_str, Rat};
use spheromo_core::rootsys::RowTag;
use spheromo_core::tables::{AxiomSTable, PermittedFamily, SocleEntry, SocleRegistry};
use std::path::Path;

pub const AXIOM_S_FILE: &str = "axiom_s_table.toml";
pub const SOCLE_REGISTRY_FILE: &str = "socle_registry.toml";

const BUNDLED_AXIOM_S: &str = include_str!("../data/axiom_s_table.toml");
const BUNDLED_SOCLE_REGISTRY: &str = include_str!("../data/socle_registry.toml");

pub struct DataBundle {
    pub axiom_s: AxiomSTable,
    pub axiom_s_version: String,
    pub registry: SocleRegistry,
    pub registry_version: String,
}

/// Load the bundle: from `data_dir` if given, else from SPHEROMO_DATA if
/// set, else the compiled-in defaults.
pub fn load_bundle(data_dir: Option<&Path>) -> Result<DataBundle, InputError> {
    let env_dir = std::env::var_os("SPHEROMO_DATA").map(std::path::PathBuf::from);
    let dir = data_dir.or(env_dir.as_deref());
    let (axiom_text, socle_text) = match dir {
        Some(dir) => (read(dir, AXIOM_S_FILE)?, read(dir, SOCLE_REGISTRY_FILE)?),
        None => (BUNDLED_AXIOM_S.to_string(), BUNDLED_SOCLE_REGISTRY.to_string()),
    };
    let (axiom_s, axiom_s_version) = parse_axiom_s(&axiom_text)?;
    let (registry, registry_version) = parse_socle_registry(&socle_text)?;
    Ok(DataBundle { axiom_s, axiom_s_version, registry, registry_version })
}

fn read(dir: &Path, file: &str) -> Result<String, InputError> {
    let path = dir.join(file);
    std::fs::read_to_string(&path)
        .map_err(|e| InputError::new(format!("cannot read {}: {e}", path.display())))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AxiomSFile {
    version: String,
    row: Vec<AxiomSRow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AxiomSRow {
    tag: String,
    families: Vec<String>,
}

pub fn parse_axiom_s(text: &str) -> Result<(AxiomSTable, String), InputError> {
    let file: AxiomSFile = toml::from_str(text)
        .map_err(|e| InputError::new(format!("axiom table: {}", e.message())))?;
    let rows = file
        .row
        .iter()
        .map(|row| {
            let tag = RowTag::parse(&row.tag).ok_or_else(|| {
                InputError::new(format!("axiom table: unknown row tag `{}`", row.tag))
            })?;
            let families = row
                .families
                .iter()
                .map(|f| match f.as_str() {
                    "empty" => Ok(PermittedFamily::Empty),
                    "zero_pairing_full" => Ok(PermittedFamily::ZeroPairingFull),
                    other => Err(InputError::new(format!(
                        "axiom table: unknown family `{other}`"
                    ))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok((tag, families))
        })
        .collect::<Result<Vec<_>, InputError>>()?;
    let table = AxiomSTable::new(rows).map_err(InputError::from_core)?;
    Ok((table, file.version))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SocleFile {
    version: String,
    entry: Vec<SocleFileEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SocleFileEntry {
    id: String,
    s_type: String,
    a_pairings: Vec<Vec<String>>,
    d_pairings: Vec<Vec<String>>,
    extra_pairings: Vec<Vec<String>>,
}

pub fn parse_socle_registry(text: &str) -> Result<(SocleRegistry, String), InputError> {
    let file: SocleFile = toml::from_str(text)
        .map_err(|e| InputError::new(format!("socle registry: {}", e.message())))?;
    let entries = file
        .entry
        .iter()
        .map(|e| {
            Ok(SocleEntry {
                id: e.id.clone(),
                s_type: e.s_type.clone(),
                a_pairings: parse_pairings(&e.a_pairings)?,
                d_pairings: parse_pairings(&e.d_pairings)?,
                extra_pairings: parse_pairings(&e.extra_pairings)?,
            })
        })
        .collect::<Result<Vec<_>, InputError>>()?;
    let registry = SocleRegistry::new(entries).map_err(InputError::from_core)?;
    Ok((registry, file.version))
}

fn parse_pairings(lists: &[Vec<String>]) -> Result<Vec<Vec<Rat>>, InputError> {
    lists
        .iter()
        .map(|list| {
            list.iter()
                .map(|s| {
                    rat_from_str(s)
                        .map_err(|e| InputError::new(format!("socle registry: {e}")))
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use spheromo_core::rootsys::ALL_ROW_TAGS;

    #[test]
    fn bundled_files_parse_and_cover_every_row() {
        let bundle = load_bundle(None).unwrap();
        assert_eq!(bundle.axiom_s_version, "1");
        assert_eq!(bundle.registry_version, "1");
        let (table, _) = parse_axiom_s(BUNDLED_AXIOM_S).unwrap();
        let rs = spheromo_core::rootsys::RootSystem::simple(
            spheromo_core::rootsys::SimpleKind::A,
            2,
        )
        .unwrap();
        let catalog = spheromo_core::rootsys::spherical_root_catalog(&rs);
        for entry in &catalog {
            // Every bundled row is present: lookups never report a missing row.
            let verdict = table.check_pair(&rs, entry, &[]);
            assert_ne!(
                verdict.status,
                spheromo_core::verdict::Status::Unsupported,
                "{}",
                entry.name
            );
        }
        assert_eq!(ALL_ROW_TAGS.len(), 17);
        assert!(bundle.registry.entry_for("").is_some());
        assert!(bundle.registry.entry_for("a1xa1_sum").is_some());
        assert!(bundle.registry.entry_for("unknown").is_none());
    }

    #[test]
    fn unknown_tags_and_families_are_rejected() {
        let bad_tag = "version = \"1\"\n[[row]]\ntag = \"z_chain\"\nfamilies = []\n";
        assert!(parse_axiom_s(bad_tag).is_err());
        let bad_family =
            "version = \"1\"\n[[row]]\ntag = \"a_chain\"\nfamilies = [\"sometimes\"]\n";
        assert!(parse_axiom_s(bad_family).is_err());
    }
}
