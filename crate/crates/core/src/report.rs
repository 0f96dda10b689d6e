//! Serialization of verification reports: versioned JSON, CSV and a plain
//! aligned text table.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bundlemodel::{Mode, VerificationReport};

pub const SCHEMA_VERSION: &str = "theta-jordan/1";

/// Stated in every JSON document: `|H(ξ_n)| = n²` holds in the chosen torsion
/// model, not in general.
pub const TORSION_MODEL: &str =
    "H(xi_n) modeled as the n-torsion Z_n + Z_n of T2; N = n^2 is a model property";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub classes: Vec<u8>,
    pub max_n: u64,
    pub mode: Mode,
    pub oracle_cap: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_group: Option<String>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timestamps {
    pub generated_at_unix_ms: u128,
    pub total_elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: String,
    pub torsion_model: String,
    pub config: ConfigEcho,
    pub reports: Vec<VerificationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamps: Option<Timestamps>,
}

impl ReportDocument {
    pub fn new(config: ConfigEcho, reports: Vec<VerificationReport>) -> Self {
        ReportDocument {
            schema: SCHEMA_VERSION.to_string(),
            torsion_model: TORSION_MODEL.to_string(),
            config,
            reports,
            timestamps: None,
        }
    }

    /// Drops every wall-clock field so that output is reproducible.
    pub fn strip_timestamps(&mut self) {
        self.timestamps = None;
        for r in &mut self.reports {
            for e in &mut r.entries {
                e.elapsed_ms = None;
            }
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is always serializable");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "manifold_class,n,group_order,max_abelian_order,min_abelian_index,method,elapsed_ms\n",
        );
        for r in &self.reports {
            for e in &r.entries {
                let elapsed = e.elapsed_ms.map(|t| format!("{t:.3}")).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.manifold_class.parity,
                    e.n,
                    e.group_order,
                    e.max_abelian_order,
                    e.min_abelian_index,
                    e.method.as_str(),
                    elapsed
                );
            }
        }
        out
    }

    pub fn to_table(&self) -> String {
        let header = ["n", "|G_n|", "max abelian", "min index", "method", "ms"];
        let mut out = String::new();
        for r in &self.reports {
            let _ = writeln!(
                out,
                "class {} ({})",
                r.manifold_class.parity,
                r.manifold_class.manifold()
            );
            let rows: Vec<[String; 6]> = r
                .entries
                .iter()
                .map(|e| {
                    [
                        e.n.to_string(),
                        e.group_order.to_string(),
                        e.max_abelian_order.to_string(),
                        e.min_abelian_index.to_string(),
                        e.method.as_str().to_string(),
                        e.elapsed_ms
                            .map(|t| format!("{t:.3}"))
                            .unwrap_or_else(|| "-".into()),
                    ]
                })
                .collect();
            let mut widths = header.map(str::len);
            for row in &rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: &[&str]| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            let _ = writeln!(out, "{}", line(&header));
            for row in &rows {
                let cells: Vec<&str> = row.iter().map(String::as_str).collect();
                let _ = writeln!(out, "{}", line(&cells));
            }
            for t in &r.threshold_certificates {
                let _ = writeln!(out, "  c = {}: refuted by n = {}", t.c, t.n);
            }
            out.push('\n');
        }
        out
    }
}
