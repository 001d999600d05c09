//! Command implementations.  Each command compiles the input, runs the
//! requested predicates through the core crate, and produces a [`Report`]
//! whose items are ordered deterministically regardless of `--jobs`.

use crate::data::DataBundle;
use crate::error::InputError;
use crate::input::{CompiledInput, SigmaCoefficients};
use crate::report::{exit_code, DataVersions, Report, ReportItem};
use spheromo_core::colored::{
    color_table, colored_fan, smooth_check, ColorKind, SmoothLevel,
};
use spheromo_core::momentum::{MonoidContext, PairContext};
use spheromo_core::num::{rat_to_string, vec_to_string};
use spheromo_core::rootsys::CatalogEntry;
use spheromo_core::verdict::{Certificate, Status, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    QAdmissible,
    Admissible,
    Smooth,
    QReflexive,
    Reflexive,
}

impl Level {
    pub fn as_str(&self) -> &'static str {
        match self {
            Level::QAdmissible => "q-admissible",
            Level::Admissible => "admissible",
            Level::Smooth => "smooth",
            Level::QReflexive => "q-reflexive",
            Level::Reflexive => "reflexive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Show {
    Facets,
    OrbitFaces,
    Colors,
    ColoredFan,
}

impl Show {
    pub fn as_str(&self) -> &'static str {
        match self {
            Show::Facets => "facets",
            Show::OrbitFaces => "orbit-faces",
            Show::Colors => "colors",
            Show::ColoredFan => "colored-fan",
        }
    }
}

/// Apply `f` to `0..n`, splitting across `jobs` threads; the result order
/// is by index, independent of scheduling.
pub fn map_indexed<T: Send>(
    n: usize,
    jobs: usize,
    f: impl Fn(usize) -> T + Sync,
) -> Vec<T> {
    let jobs = jobs.max(1).min(n.max(1));
    if jobs == 1 {
        return (0..n).map(f).collect();
    }
    let mut slots: Vec<Option<T>> = (0..n).map(|_| None).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|t| {
                let f = &f;
                scope.spawn(move || {
                    (t..n).step_by(jobs).map(|i| (i, f(i))).collect::<Vec<_>>()
                })
            })
            .collect();
        for handle in handles {
            for (i, value) in handle.join().expect("worker thread panicked") {
                slots[i] = Some(value);
            }
        }
    });
    slots.into_iter().map(|s| s.expect("index covered")).collect()
}

fn versions(data: &DataBundle) -> DataVersions {
    DataVersions {
        axiom_s_table: data.axiom_s_version.clone(),
        socle_registry: data.registry_version.clone(),
    }
}

fn subset_subject(names: &[&str]) -> String {
    format!("sigma {{{}}}", names.join(", "))
}

/// Map the input coefficient vectors to catalog entries, deduplicated and
/// kept in input order.  A vector matching no catalog entry is a failing
/// verdict (the set cannot consist of spherical roots), not an input error.
fn resolve_sigma<'a>(
    catalog: &'a [CatalogEntry],
    specs: &[SigmaCoefficients],
) -> Result<Vec<&'a CatalogEntry>, Verdict> {
    let mut out: Vec<&CatalogEntry> = Vec::new();
    for spec in specs {
        match spheromo_core::rootsys::catalog_lookup(catalog, &spec.coeffs) {
            Some(entry) => {
                if !out.iter().any(|e| e.coeffs == entry.coeffs) {
                    out.push(entry);
                }
            }
            None => {
                return Err(Verdict::fail(
                    Certificate::new(
                        "catalog/unknown-root",
                        "the weight is not a spherical root of this group",
                    )
                    .with("sigma", spec.display.clone()),
                ))
            }
        }
    }
    Ok(out)
}

fn require_sigma<'a>(
    input: &'a CompiledInput,
    command: &str,
) -> Result<&'a [SigmaCoefficients], InputError> {
    input.sigma.as_deref().ok_or_else(|| {
        InputError::new(format!(
            "the {command} command needs a sigma field (use [] for the empty set)"
        ))
    })
}

fn forbid_sigma(input: &CompiledInput, command: &str) -> Result<(), InputError> {
    if input.sigma.is_some() {
        return Err(InputError::new(format!(
            "the {command} command enumerates all root sets; remove the sigma field"
        )));
    }
    Ok(())
}

fn statuses(items: &[ReportItem]) -> Vec<Status> {
    items
        .iter()
        .map(|i| match i.status.as_str() {
            "pass" => Status::Pass,
            "unsupported" => Status::Unsupported,
            _ => Status::Fail,
        })
        .collect()
}

pub fn cmd_check(
    input: &CompiledInput,
    data: &DataBundle,
    input_name: &str,
    level: Level,
) -> Result<Report, InputError> {
    let specs = require_sigma(input, "check")?;
    let ctx = PairContext::new(&input.root_system, &input.polytope, &data.axiom_s)
        .map_err(InputError::from_core)?;
    let (subject, verdict) = match resolve_sigma(ctx.catalog(), specs) {
        Ok(sigma) => {
            let names: Vec<&str> = sigma.iter().map(|e| e.name.as_str()).collect();
            let verdict = match level {
                Level::QAdmissible => ctx.q_admissible(&sigma),
                Level::Admissible => ctx.admissible(&sigma),
                Level::Smooth => {
                    smooth_check(&ctx, &sigma, SmoothLevel::Algebraic, &data.registry)
                }
                Level::QReflexive => ctx.reflexive(&sigma, false),
                Level::Reflexive => ctx.reflexive(&sigma, true),
            };
            (subset_subject(&names), verdict)
        }
        Err(verdict) => {
            let names: Vec<&str> = specs.iter().map(|s| s.display.as_str()).collect();
            (subset_subject(&names), verdict)
        }
    };
    let items = vec![ReportItem::from_verdict(subject, &verdict)];
    let exit = exit_code(&statuses(&items));
    Ok(Report {
        command: format!("check --level {}", level.as_str()),
        input: input_name.to_string(),
        data_versions: versions(data),
        summary: verdict.status.to_string(),
        items,
        exit,
    })
}

pub fn cmd_enumerate(
    input: &CompiledInput,
    data: &DataBundle,
    input_name: &str,
    level: Level,
    jobs: usize,
) -> Result<Report, InputError> {
    forbid_sigma(input, "enumerate")?;
    let ctx = PairContext::new(&input.root_system, &input.polytope, &data.axiom_s)
        .map_err(InputError::from_core)?;
    let subsets = ctx.enumerate_q_admissible();
    let items = map_indexed(subsets.len(), jobs, |i| {
        let sigma: Vec<&CatalogEntry> =
            subsets[i].iter().map(|&k| &ctx.catalog()[k]).collect();
        let names: Vec<&str> = sigma.iter().map(|e| e.name.as_str()).collect();
        let verdict = match level {
            Level::QAdmissible => ctx.q_admissible(&sigma),
            Level::Admissible => ctx.admissible(&sigma),
            Level::Smooth => smooth_check(&ctx, &sigma, SmoothLevel::Algebraic, &data.registry),
            Level::QReflexive => ctx.reflexive(&sigma, false),
            Level::Reflexive => ctx.reflexive(&sigma, true),
        };
        ReportItem::from_verdict(subset_subject(&names), &verdict)
    });
    let all = statuses(&items);
    let passing = all.iter().filter(|s| **s == Status::Pass).count();
    Ok(Report {
        command: format!("enumerate --level {}", level.as_str()),
        input: input_name.to_string(),
        data_versions: versions(data),
        summary: format!(
            "{passing} of {} subsets pass at level {}",
            items.len(),
            level.as_str()
        ),
        exit: exit_code(&all),
        items,
    })
}

pub fn cmd_kaehler(
    input: &CompiledInput,
    data: &DataBundle,
    input_name: &str,
    jobs: usize,
) -> Result<Report, InputError> {
    forbid_sigma(input, "kaehler")?;
    let ctx = PairContext::new(&input.root_system, &input.polytope, &data.axiom_s)
        .map_err(InputError::from_core)?;
    let subsets = ctx.enumerate_q_admissible();
    let items = map_indexed(subsets.len(), jobs, |i| {
        let sigma: Vec<&CatalogEntry> =
            subsets[i].iter().map(|&k| &ctx.catalog()[k]).collect();
        let names: Vec<&str> = sigma.iter().map(|e| e.name.as_str()).collect();
        let verdict = smooth_check(&ctx, &sigma, SmoothLevel::Real, &data.registry);
        ReportItem::from_verdict(subset_subject(&names), &verdict)
    });
    let passing: Vec<&str> = items
        .iter()
        .filter(|i| i.status == "pass")
        .map(|i| i.subject.as_str())
        .collect();
    let summary = if passing.is_empty() {
        "kaehlerizable: no".to_string()
    } else {
        format!("kaehlerizable: yes ({})", passing.join("; "))
    };
    Ok(Report {
        command: "kaehler".to_string(),
        input: input_name.to_string(),
        data_versions: versions(data),
        summary,
        exit: exit_code(&statuses(&items)),
        items,
    })
}

pub fn cmd_quadruple(
    input: &CompiledInput,
    data: &DataBundle,
    input_name: &str,
    jobs: usize,
) -> Result<Report, InputError> {
    let quadruple = input.quadruple.as_ref().ok_or_else(|| {
        InputError::new("the quadruple command needs a quadruple block in the input")
    })?;
    let ctx = MonoidContext::new(
        &input.root_system,
        &input.polytope,
        &data.axiom_s,
        quadruple.extended.clone(),
    )
    .map_err(InputError::from_core)?;
    let hw = &quadruple.highest_weights;

    // With a sigma field the single set is tested; without it every subset
    // of the catalog is, smallest first.
    let subsets: Vec<Vec<usize>> = match &input.sigma {
        Some(specs) => match resolve_sigma(ctx.catalog(), specs) {
            Ok(sigma) => {
                let indices = sigma
                    .iter()
                    .map(|e| {
                        ctx.catalog()
                            .iter()
                            .position(|c| c.coeffs == e.coeffs)
                            .expect("resolved from this catalog")
                    })
                    .collect();
                vec![indices]
            }
            Err(verdict) => {
                let names: Vec<&str> = specs.iter().map(|s| s.display.as_str()).collect();
                let items =
                    vec![ReportItem::from_verdict(subset_subject(&names), &verdict)];
                return Ok(Report {
                    command: "quadruple".to_string(),
                    input: input_name.to_string(),
                    data_versions: versions(data),
                    summary: "0 of 1 subsets realize the monoid".to_string(),
                    exit: exit_code(&statuses(&items)),
                    items,
                });
            }
        },
        None => {
            let n = ctx.catalog().len();
            let mut all = Vec::new();
            for k in 0..=n {
                all.extend(spheromo_core::num::combinations(n, k));
            }
            all
        }
    };

    let items = map_indexed(subsets.len(), jobs, |i| {
        let sigma: Vec<&CatalogEntry> =
            subsets[i].iter().map(|&k| &ctx.catalog()[k]).collect();
        let names: Vec<&str> = sigma.iter().map(|e| e.name.as_str()).collect();
        let verdict = ctx.quadruple(&sigma, hw);
        ReportItem::from_verdict(subset_subject(&names), &verdict)
    });
    let all = statuses(&items);
    let passing = all.iter().filter(|s| **s == Status::Pass).count();
    Ok(Report {
        command: "quadruple".to_string(),
        input: input_name.to_string(),
        data_versions: versions(data),
        summary: format!("{passing} of {} subsets realize the monoid", items.len()),
        exit: exit_code(&all),
        items,
    })
}

pub fn cmd_inspect(
    input: &CompiledInput,
    data: &DataBundle,
    input_name: &str,
    show: Show,
) -> Result<Report, InputError> {
    let ctx = PairContext::new(&input.root_system, &input.polytope, &data.axiom_s)
        .map_err(InputError::from_core)?;
    let poly = &input.polytope;
    let items: Vec<ReportItem> = match show {
        Show::Facets => poly
            .facets()
            .iter()
            .map(|facet| {
                let vertices: Vec<String> = facet
                    .vertex_indices
                    .iter()
                    .map(|&v| vec_to_string(&poly.vertices_ambient()[v]))
                    .collect();
                ReportItem::data(
                    format!("facet {}", vec_to_string(&facet.normal)),
                    vec![
                        format!("offset {}", rat_to_string(&facet.offset)),
                        format!("vertices {}", vertices.join("; ")),
                    ],
                )
            })
            .collect(),
        Show::OrbitFaces => {
            let sigma = resolve_for_inspect(input, &ctx, "orbit-faces")?;
            ctx.orbit_face_indices(&sigma)
                .into_iter()
                .map(|k| {
                    let face = &poly.faces()[k];
                    let normals: Vec<String> = face
                        .tight_facets
                        .iter()
                        .map(|&f| vec_to_string(&poly.facets()[f].normal))
                        .collect();
                    ReportItem::data(
                        format!("face {:?}", face.vertex_indices),
                        vec![
                            format!("dim {}", face.dim),
                            format!("normals {}", normals.join("; ")),
                        ],
                    )
                })
                .collect()
        }
        Show::Colors => {
            let sigma = resolve_for_inspect(input, &ctx, "colors")?;
            let table =
                color_table(&ctx, &sigma, None).map_err(InputError::from_core)?;
            table
                .colors()
                .iter()
                .map(|color| {
                    let moved: Vec<&str> = color
                        .moved_by
                        .iter()
                        .map(|&a| input.root_system.label(a))
                        .collect();
                    let kind = match color.kind {
                        ColorKind::Simple => "simple",
                        ColorKind::Doubled => "doubled",
                        ColorKind::Wall => "wall",
                    };
                    ReportItem::data(
                        format!("color {}", color.name),
                        vec![
                            format!("kind {kind}"),
                            format!("functional {}", vec_to_string(&color.rho)),
                            format!("offset {}", rat_to_string(&color.n_d)),
                            format!("moved by {}", moved.join(", ")),
                        ],
                    )
                })
                .collect()
        }
        Show::ColoredFan => {
            let sigma = resolve_for_inspect(input, &ctx, "colored-fan")?;
            let table =
                color_table(&ctx, &sigma, None).map_err(InputError::from_core)?;
            let fan = colored_fan(&ctx, &sigma, &table);
            fan.iter()
                .map(|cone| {
                    let generators: Vec<String> =
                        cone.generators.iter().map(|g| vec_to_string(g)).collect();
                    let colors: Vec<&str> = cone
                        .colors
                        .iter()
                        .map(|&d| table.colors()[d].name.as_str())
                        .collect();
                    ReportItem::data(
                        format!(
                            "cone over face {:?}",
                            poly.faces()[cone.face].vertex_indices
                        ),
                        vec![
                            format!("generators {}", generators.join("; ")),
                            format!("colors {{{}}}", colors.join(", ")),
                        ],
                    )
                })
                .collect()
        }
    };
    Ok(Report {
        command: format!("inspect --show {}", show.as_str()),
        input: input_name.to_string(),
        data_versions: versions(data),
        summary: format!("{} items", items.len()),
        exit: 0,
        items,
    })
}

fn resolve_for_inspect<'c>(
    input: &CompiledInput,
    ctx: &'c PairContext<'_>,
    what: &str,
) -> Result<Vec<&'c CatalogEntry>, InputError> {
    let specs = require_sigma(input, &format!("inspect --show {what}"))?;
    resolve_sigma(ctx.catalog(), specs).map_err(|verdict| {
        let detail = verdict
            .certificates
            .first()
            .and_then(|c| c.witness.first())
            .map(|(_, v)| v.clone())
            .unwrap_or_default();
        InputError::new(format!("sigma entry `{detail}` is not a spherical root here"))
    })
}
