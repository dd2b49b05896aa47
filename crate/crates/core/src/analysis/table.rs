//! The representation × tier reliability table.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analysis::stats::{mean, sample_std};
use crate::distance::Tier;
use crate::error::Result;
use crate::model::{AnnotationMatrix, EventLabel};
use crate::reliability::{krippendorff_alpha, AlphaResult};
use crate::representations::{extract, RepresentationKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellError {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorialCell {
    pub kind: RepresentationKind,
    pub tier: Tier,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<AlphaResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<CellError>,
}

impl FactorialCell {
    pub fn alpha(&self) -> Option<f64> {
        self.result.map(|r| r.alpha)
    }
}

/// Per-representation gaps between tiers and annotation-size statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowSummary {
    pub kind: RepresentationKind,
    pub delta_lm: Option<f64>,
    pub delta_ms: Option<f64>,
    pub delta_ls: Option<f64>,
    /// Mean cardinality over all non-missing extracted values.
    pub cardinality_mean: Option<f64>,
    /// Sample standard deviation (divisor n - 1) of the cardinalities.
    pub cardinality_std: Option<f64>,
    pub n_values: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReliabilityReport {
    pub target: EventLabel,
    /// 18 cells, representation-major in [`RepresentationKind::ALL`] order.
    pub cells: Vec<FactorialCell>,
    pub rows: Vec<RowSummary>,
}

fn diff(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    Some(a? - b?)
}

/// Fills every representation × tier cell. Cells whose alpha is undefined
/// carry an error instead of failing the report.
pub fn factorial_table(
    graphs: &AnnotationMatrix,
    target: &EventLabel,
) -> Result<ReliabilityReport> {
    let mut cells = Vec::with_capacity(18);
    let mut rows = Vec::with_capacity(6);
    for kind in RepresentationKind::ALL {
        let extracted = extract(graphs, kind, target)?;
        let row_cells: Vec<FactorialCell> = Tier::ALL
            .into_iter()
            .map(|tier| {
                let outcome = krippendorff_alpha(&extracted, kind.distance_spec(tier).resolve());
                let (result, error) = match outcome {
                    Ok(r) => (Some(r), None),
                    Err(e) => (
                        None,
                        Some(CellError {
                            code: e.code().to_owned(),
                            message: e.to_string(),
                        }),
                    ),
                };
                FactorialCell {
                    kind,
                    tier,
                    result,
                    error,
                }
            })
            .collect();

        let [l, m, s] = [0, 1, 2].map(|i| row_cells[i].alpha());
        let sizes: Vec<f64> = extracted
            .rows()
            .flatten()
            .filter_map(|v| v.cardinality())
            .map(|c| c as f64)
            .collect();
        rows.push(RowSummary {
            kind,
            delta_lm: diff(l, m),
            delta_ms: diff(m, s),
            delta_ls: diff(l, s),
            cardinality_mean: (!sizes.is_empty()).then(|| mean(&sizes)),
            cardinality_std: sample_std(&sizes),
            n_values: sizes.len(),
        });
        cells.extend(row_cells);
    }
    Ok(ReliabilityReport {
        target: target.clone(),
        cells,
        rows,
    })
}

const DASH: &str = "—";

fn fmt3(x: Option<f64>) -> String {
    x.map_or_else(|| DASH.to_owned(), |v| format!("{v:.3}"))
}

fn fmt_full(x: Option<f64>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

impl ReliabilityReport {
    pub fn cell(&self, kind: RepresentationKind, tier: Tier) -> &FactorialCell {
        let k = RepresentationKind::ALL
            .iter()
            .position(|&x| x == kind)
            .unwrap();
        let t = Tier::ALL.iter().position(|&x| x == tier).unwrap();
        &self.cells[k * 3 + t]
    }

    pub fn row(&self, kind: RepresentationKind) -> &RowSummary {
        self.rows.iter().find(|r| r.kind == kind).unwrap()
    }

    /// Aligned table: representations by tiers, tier gaps, and size statistics.
    pub fn render_text(&self) -> String {
        let header = [
            "Representation",
            "Lenient",
            "Moderate",
            "Strict",
            "Δ_lm",
            "Δ_ms",
            "Δ_ls",
            "μ(|·|)",
            "std(|·|)",
        ];
        let mut lines: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
        for row in &self.rows {
            let mut line = vec![row.kind.title().to_owned()];
            for tier in Tier::ALL {
                line.push(fmt3(self.cell(row.kind, tier).alpha()));
            }
            for v in [
                row.delta_lm,
                row.delta_ms,
                row.delta_ls,
                row.cardinality_mean,
                row.cardinality_std,
            ] {
                line.push(fmt3(v));
            }
            lines.push(line);
        }
        let widths: Vec<usize> = (0..header.len())
            .map(|c| lines.iter().map(|l| l[c].chars().count()).max().unwrap())
            .collect();

        let mut out = String::new();
        let _ = writeln!(
            out,
            "Krippendorff's alpha by narrative representation and distance tier (target: {})",
            self.target
        );
        let _ = writeln!(
            out,
            "std uses the sample divisor (n - 1); {DASH} marks an undefined value"
        );
        let _ = writeln!(out);
        for (i, line) in lines.iter().enumerate() {
            let mut text = format!("{:<w$}", line[0], w = widths[0]);
            for (cell, &w) in line.iter().zip(&widths).skip(1) {
                let _ = write!(text, "  {cell:>w$}");
            }
            let _ = writeln!(out, "{}", text.trim_end());
            if i == 0 || i == 3 {
                let total: usize = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
                let _ = writeln!(out, "{}", "-".repeat(total));
            }
        }
        out
    }

    /// One row per (representation, tier), plus a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "representation,tier,alpha,d_o,d_e,n_pairable,units_used,units_dropped,error,cardinality_mean,cardinality_std\n",
        );
        for cell in &self.cells {
            let row = self.row(cell.kind);
            let r = cell.result;
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                cell.kind.id(),
                cell.tier.id(),
                fmt_full(r.map(|r| r.alpha)),
                fmt_full(r.map(|r| r.observed_disagreement)),
                fmt_full(r.map(|r| r.expected_disagreement)),
                r.map_or(String::new(), |r| r.n_pairable.to_string()),
                r.map_or(String::new(), |r| r.units_used.to_string()),
                r.map_or(String::new(), |r| r.units_dropped.to_string()),
                cell.error.as_ref().map_or("", |e| e.code.as_str()),
                fmt_full(row.cardinality_mean),
                fmt_full(row.cardinality_std),
            );
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "target": self.target,
            "std_divisor": "n-1",
            "cells": self.cells,
            "rows": self.rows,
        })
    }
}
