//! Deterministic reports: one item per checked subject, certificates with
//! witnesses, data version stamps, and the process exit code.  Identical
//! inputs and data versions produce identical bytes in both formats.

use serde::Serialize;
use spheromo_core::verdict::{Status, Verdict};

#[derive(Debug, Serialize)]
pub struct Report {
    /// The subcommand with its semantic flags (not presentation flags).
    pub command: String,
    pub input: String,
    pub data_versions: DataVersions,
    pub items: Vec<ReportItem>,
    pub summary: String,
    pub exit: i32,
}

#[derive(Debug, Serialize)]
pub struct DataVersions {
    pub axiom_s_table: String,
    pub socle_registry: String,
}

#[derive(Debug, Serialize)]
pub struct ReportItem {
    pub subject: String,
    pub status: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub detail: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<CertificateOut>,
}

#[derive(Debug, Serialize)]
pub struct CertificateOut {
    pub rule: String,
    pub message: String,
    pub witness: Vec<(String, String)>,
}

impl ReportItem {
    pub fn data(subject: impl Into<String>, detail: Vec<String>) -> ReportItem {
        ReportItem {
            subject: subject.into(),
            status: "data".to_string(),
            detail,
            certificates: vec![],
        }
    }

    pub fn from_verdict(subject: impl Into<String>, verdict: &Verdict) -> ReportItem {
        ReportItem {
            subject: subject.into(),
            status: verdict.status.to_string(),
            detail: vec![],
            certificates: verdict
                .certificates
                .iter()
                .map(|c| CertificateOut {
                    rule: c.rule.clone(),
                    message: c.message.clone(),
                    witness: c.witness.clone(),
                })
                .collect(),
        }
    }
}

/// Exit code for a list of verdict-backed items: 0 if any passes, else 3 if
/// any is unsupported, else 1.  A single `check` uses the same rule with one
/// item, giving the documented pass/fail/unsupported mapping.
pub fn exit_code(statuses: &[Status]) -> i32 {
    if statuses.iter().any(|s| *s == Status::Pass) {
        0
    } else if statuses.iter().any(|s| *s == Status::Unsupported) {
        3
    } else {
        1
    }
}

pub fn render_json(report: &Report) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("reports serialize");
    out.push('\n');
    out
}

pub fn render_human(report: &Report, show_certificates: bool) -> String {
    let mut out = String::new();
    out.push_str(&format!("spheromo {}\n", report.command));
    out.push_str(&format!("input: {}\n", report.input));
    out.push_str(&format!(
        "data: axiom-s-table v{}, socle-registry v{}\n",
        report.data_versions.axiom_s_table, report.data_versions.socle_registry
    ));
    for item in &report.items {
        if item.status == "data" {
            out.push_str(&format!("{}\n", item.subject));
        } else if !show_certificates && item.certificates.len() == 1 {
            out.push_str(&format!(
                "{}: {} ({})\n",
                item.subject, item.status, item.certificates[0].rule
            ));
        } else {
            out.push_str(&format!("{}: {}\n", item.subject, item.status));
        }
        for line in &item.detail {
            out.push_str(&format!("  {line}\n"));
        }
        if show_certificates {
            for cert in &item.certificates {
                out.push_str(&format!("  certificate {}: {}\n", cert.rule, cert.message));
                for (key, value) in &cert.witness {
                    out.push_str(&format!("    {key} = {value}\n"));
                }
            }
        }
    }
    out.push_str(&format!("summary: {}\n", report.summary));
    out.push_str(&format!("exit: {}\n", report.exit));
    out
}
