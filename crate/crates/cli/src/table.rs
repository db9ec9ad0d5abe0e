use std::fmt::Write as _;

use multimodal_core::solver::{is_odd, optimal_cr};

use crate::error::CliError;

/// One row of the optimal-ratio table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub p: u32,
    pub cr: f64,
}

impl TableRow {
    pub fn parity(&self) -> &'static str {
        if is_odd(self.p) {
            "odd"
        } else {
            "even"
        }
    }

    /// The ratio rounded half away from zero at 5 decimals.
    pub fn rounded(&self) -> f64 {
        (self.cr * 1e5).round() / 1e5
    }
}

/// Optimal competitive ratios for `p = 1..=p_max`.
pub fn table_rows(p_max: u32) -> Result<Vec<TableRow>, CliError> {
    if p_max == 0 {
        return Err(CliError::Validation("p_max must be at least 1".into()));
    }
    (1..=p_max)
        .map(|p| {
            Ok(TableRow {
                p,
                cr: optimal_cr(p)?,
            })
        })
        .collect()
}

/// CSV with header `p,parity,cr`.
pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("p,parity,cr\n");
    for row in rows {
        writeln!(out, "{},{},{:.5}", row.p, row.parity(), row.rounded()).unwrap();
    }
    out
}
