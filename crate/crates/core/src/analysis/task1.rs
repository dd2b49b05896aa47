//! Document classification: majority-vote resolution, selection of documents
//! for graph annotation, and label-wise full-agreement statistics.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::analysis::stats::{mean, one_way_anova, sample_std, StatTestResult};
use crate::error::{Error, Result};
use crate::model::{AnnotationMatrix, AnnotationValue, ValueKind};

pub const CAUSE_DOMINANT: &str = "inflation-cause-dominant";
pub const RELATED: &str = "inflation-related";
pub const NON_RELATED: &str = "non-inflation-related";

/// The document labels, in reporting order.
pub const TASK1_LABELS: [&str; 3] = [CAUSE_DOMINANT, RELATED, NON_RELATED];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Resolution {
    /// Every present label is the same.
    Unanimous,
    /// One label has strictly more votes than any other.
    Majority,
    /// No unique winner (or no labels at all); assigned `inflation-related`.
    Tie,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitResolution {
    pub unit_id: String,
    pub label: String,
    pub resolution: Resolution,
    /// Present (non-missing) labels in the unit.
    pub n_labels: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Task2Selection {
    pub units: Vec<UnitResolution>,
    /// Units resolved to `inflation-cause-dominant`, in matrix order.
    pub selected: Vec<String>,
}

impl Task2Selection {
    pub fn count(&self, resolution: Resolution) -> usize {
        self.units
            .iter()
            .filter(|u| u.resolution == resolution)
            .count()
    }

    /// Units per (resolved label, resolution).
    pub fn tally(&self) -> BTreeMap<(String, Resolution), usize> {
        let mut out = BTreeMap::new();
        for u in &self.units {
            *out.entry((u.label.clone(), u.resolution)).or_default() += 1;
        }
        out
    }
}

fn check_categorical(matrix: &AnnotationMatrix) -> Result<()> {
    match matrix.kind() {
        Some(found) if found != ValueKind::Categorical => Err(Error::KindMismatch {
            expected: ValueKind::Categorical,
            found,
        }),
        _ => Ok(()),
    }
}

fn resolve_unit(labels: &[&str]) -> (String, Resolution) {
    let mut votes: BTreeMap<&str, usize> = BTreeMap::new();
    for &l in labels {
        *votes.entry(l).or_default() += 1;
    }
    if votes.len() == 1 {
        let (&label, _) = votes.iter().next().unwrap();
        return (label.to_owned(), Resolution::Unanimous);
    }
    let top = votes.values().copied().max().unwrap_or(0);
    let mut winners = votes.iter().filter(|(_, &c)| c == top);
    match (winners.next(), winners.next()) {
        (Some((&label, _)), None) => (label.to_owned(), Resolution::Majority),
        _ => (RELATED.to_owned(), Resolution::Tie),
    }
}

/// Resolves every unit's label and selects the cause-dominant units.
pub fn select_task2_documents(task1: &AnnotationMatrix) -> Result<Task2Selection> {
    check_categorical(task1)?;
    let mut units = Vec::with_capacity(task1.n_units());
    let mut selected = Vec::new();
    for (id, row) in task1.unit_ids().iter().zip(task1.rows()) {
        let labels: Vec<&str> = row
            .iter()
            .filter_map(AnnotationValue::as_categorical)
            .collect();
        let (label, resolution) = resolve_unit(&labels);
        if label == CAUSE_DOMINANT {
            selected.push(id.clone());
        }
        units.push(UnitResolution {
            unit_id: id.clone(),
            label,
            resolution,
            n_labels: labels.len(),
        });
    }
    Ok(Task2Selection { units, selected })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelAgreement {
    pub label: String,
    pub units: usize,
    pub full_agreement: usize,
    /// Proportion of units with full agreement.
    pub mean: f64,
    /// Sample standard deviation of the 0/1 indicator.
    pub std: Option<f64>,
    /// Whether the group entered the ANOVA (needs at least two units).
    pub tested: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FullAgreementReport {
    pub labels: Vec<LabelAgreement>,
    pub test: StatTestResult,
    /// Units with fewer labels than the matrix has annotators.
    pub incomplete_units: Vec<String>,
}

/// Tests whether the share of fully-agreed units differs across resolved labels.
///
/// A unit has full agreement when all of its present labels are identical.
pub fn full_agreement_by_label(task1: &AnnotationMatrix) -> Result<FullAgreementReport> {
    let selection = select_task2_documents(task1)?;
    let mut by_label: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    let mut incomplete_units = Vec::new();
    for unit in &selection.units {
        if unit.n_labels < task1.n_annotators() {
            incomplete_units.push(unit.unit_id.clone());
        }
        if unit.n_labels == 0 {
            continue;
        }
        let full = unit.resolution == Resolution::Unanimous;
        by_label
            .entry(unit.label.as_str())
            .or_default()
            .push(if full { 1.0 } else { 0.0 });
    }

    // Known labels first in their canonical order, then any others sorted.
    let mut order: Vec<&str> = TASK1_LABELS
        .iter()
        .copied()
        .filter(|l| by_label.contains_key(l))
        .collect();
    order.extend(
        by_label
            .keys()
            .copied()
            .filter(|l| !TASK1_LABELS.contains(l)),
    );

    let mut labels = Vec::new();
    let mut groups = Vec::new();
    for label in order {
        let xs = &by_label[label];
        let tested = xs.len() >= 2;
        labels.push(LabelAgreement {
            label: label.to_owned(),
            units: xs.len(),
            full_agreement: xs.iter().filter(|&&x| x == 1.0).count(),
            mean: mean(xs),
            std: sample_std(xs),
            tested,
        });
        if tested {
            groups.push((label.to_owned(), xs.clone()));
        }
    }
    if groups.len() < 2 {
        return Err(Error::InsufficientGroups(format!(
            "{} label group(s) with at least 2 units; need 2",
            groups.len()
        )));
    }
    let test = one_way_anova(&groups)?;
    Ok(FullAgreementReport {
        labels,
        test,
        incomplete_units,
    })
}
