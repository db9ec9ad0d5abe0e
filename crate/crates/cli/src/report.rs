use multimodal_core::analysis::{AuditEntry, AuditReport, CrReport};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetRecord {
    pub x: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub cr: f64,
}

/// Evaluation report, a single JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub p: u32,
    pub variant: String,
    pub cr_analytic: f64,
    pub cr_empirical: f64,
    pub rounds: usize,
    pub targets: Vec<TargetRecord>,
}

impl From<&CrReport> for ReportFile {
    fn from(r: &CrReport) -> Self {
        Self {
            p: r.params.p,
            variant: r.params.variant.name().to_string(),
            cr_analytic: r.analytic_limit,
            cr_empirical: r.empirical_sup,
            rounds: r.rounds_used,
            targets: r
                .targets
                .iter()
                .map(|t| TargetRecord {
                    x: t.x,
                    t: t.time,
                    cr: t.ratio,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditEntryRecord {
    pub index: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditRecord {
    pub name: &'static str,
    pub passed: bool,
    pub first_violation: Option<usize>,
    pub entries: Vec<AuditEntryRecord>,
}

impl From<&AuditReport> for AuditRecord {
    fn from(r: &AuditReport) -> Self {
        Self {
            name: r.name,
            passed: r.passed(),
            first_violation: r.first_violation,
            entries: r
                .entries
                .iter()
                .map(|e: &AuditEntry| AuditEntryRecord {
                    index: e.index,
                    lhs: e.lhs,
                    rhs: e.rhs,
                    margin: e.margin,
                })
                .collect(),
        }
    }
}

/// Output of the `audit` command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditOutput {
    pub p: u32,
    pub claimed_cr: f64,
    pub periods: usize,
    pub x_seq: Vec<f64>,
    pub t_seq: Vec<f64>,
    pub audits: Vec<AuditRecord>,
}
