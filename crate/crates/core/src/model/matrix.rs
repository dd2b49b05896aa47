use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::NarrativeGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueKind {
    Categorical,
    LabelSet,
    Graph,
}

impl fmt::Display for ValueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValueKind::Categorical => "categorical",
            ValueKind::LabelSet => "set",
            ValueKind::Graph => "graph",
        })
    }
}

/// One matrix cell.
///
/// `Missing` means no annotation was collected. It is not the same as an empty
/// set or an empty graph, which record that the annotator marked nothing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AnnotationValue {
    Categorical(String),
    LabelSet(BTreeSet<String>),
    Graph(NarrativeGraph),
    Missing,
}

impl AnnotationValue {
    pub fn kind(&self) -> Option<ValueKind> {
        match self {
            AnnotationValue::Categorical(_) => Some(ValueKind::Categorical),
            AnnotationValue::LabelSet(_) => Some(ValueKind::LabelSet),
            AnnotationValue::Graph(_) => Some(ValueKind::Graph),
            AnnotationValue::Missing => None,
        }
    }

    pub fn is_missing(&self) -> bool {
        matches!(self, AnnotationValue::Missing)
    }

    pub fn label_set<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        AnnotationValue::LabelSet(labels.into_iter().map(Into::into).collect())
    }

    pub fn as_graph(&self) -> Option<&NarrativeGraph> {
        match self {
            AnnotationValue::Graph(g) => Some(g),
            _ => None,
        }
    }

    pub fn as_label_set(&self) -> Option<&BTreeSet<String>> {
        match self {
            AnnotationValue::LabelSet(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_categorical(&self) -> Option<&str> {
        match self {
            AnnotationValue::Categorical(s) => Some(s),
            _ => None,
        }
    }

    /// Number of elements: set size, triple count, or 1 for a categorical label.
    pub fn cardinality(&self) -> Option<usize> {
        match self {
            AnnotationValue::Categorical(_) => Some(1),
            AnnotationValue::LabelSet(s) => Some(s.len()),
            AnnotationValue::Graph(g) => Some(g.len()),
            AnnotationValue::Missing => None,
        }
    }
}

impl From<NarrativeGraph> for AnnotationValue {
    fn from(g: NarrativeGraph) -> Self {
        AnnotationValue::Graph(g)
    }
}

impl<T: Into<AnnotationValue>> From<Option<T>> for AnnotationValue {
    fn from(v: Option<T>) -> Self {
        v.map_or(AnnotationValue::Missing, Into::into)
    }
}

impl From<&str> for AnnotationValue {
    fn from(s: &str) -> Self {
        AnnotationValue::Categorical(s.to_owned())
    }
}

/// Units (documents) by annotators. Every pair has exactly one cell, and all
/// non-missing cells share one [`ValueKind`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotationMatrix {
    unit_ids: Vec<String>,
    annotator_ids: Vec<String>,
    cells: Vec<AnnotationValue>,
    kind: Option<ValueKind>,
}

impl AnnotationMatrix {
    /// Builds a matrix from one row of cells per unit.
    pub fn new(
        unit_ids: Vec<String>,
        annotator_ids: Vec<String>,
        rows: Vec<Vec<AnnotationValue>>,
    ) -> Result<Self> {
        if rows.len() != unit_ids.len() {
            return Err(Error::Shape(format!(
                "{} rows for {} units",
                rows.len(),
                unit_ids.len()
            )));
        }
        check_unique("unit", &unit_ids)?;
        check_unique("annotator", &annotator_ids)?;
        let mut kind = None;
        let mut cells = Vec::with_capacity(unit_ids.len() * annotator_ids.len());
        for (unit, row) in unit_ids.iter().zip(rows) {
            if row.len() != annotator_ids.len() {
                return Err(Error::Shape(format!(
                    "unit `{unit}` has {} cells for {} annotators",
                    row.len(),
                    annotator_ids.len()
                )));
            }
            for cell in row {
                if let Some(k) = cell.kind() {
                    match kind {
                        None => kind = Some(k),
                        Some(expected) if expected != k => {
                            return Err(Error::KindMismatch { expected, found: k })
                        }
                        _ => {}
                    }
                }
                cells.push(cell);
            }
        }
        Ok(AnnotationMatrix {
            unit_ids,
            annotator_ids,
            cells,
            kind,
        })
    }

    /// Builds a matrix with generated ids (`u0, u1, ...` and `a0, a1, ...`).
    pub fn from_rows(rows: Vec<Vec<AnnotationValue>>) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        let units = (0..rows.len()).map(|i| format!("u{i}")).collect();
        let annotators = (0..width).map(|i| format!("a{i}")).collect();
        AnnotationMatrix::new(units, annotators, rows)
    }

    /// Nominal matrix from string labels; `None` is missing.
    pub fn categorical(rows: &[&[Option<&str>]]) -> Result<Self> {
        AnnotationMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&c| c.into()).collect())
                .collect(),
        )
    }

    pub fn unit_ids(&self) -> &[String] {
        &self.unit_ids
    }

    pub fn annotator_ids(&self) -> &[String] {
        &self.annotator_ids
    }

    pub fn n_units(&self) -> usize {
        self.unit_ids.len()
    }

    pub fn n_annotators(&self) -> usize {
        self.annotator_ids.len()
    }

    /// Kind shared by the non-missing cells; `None` when every cell is missing.
    pub fn kind(&self) -> Option<ValueKind> {
        self.kind
    }

    pub fn get(&self, unit: usize, annotator: usize) -> &AnnotationValue {
        &self.cells[unit * self.annotator_ids.len() + annotator]
    }

    pub fn row(&self, unit: usize) -> &[AnnotationValue] {
        let w = self.annotator_ids.len();
        &self.cells[unit * w..(unit + 1) * w]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[AnnotationValue]> {
        (0..self.n_units()).map(move |u| self.row(u))
    }

    /// Non-missing values per unit, in annotator order.
    pub fn present_values(&self) -> Vec<Vec<&AnnotationValue>> {
        self.rows()
            .map(|row| row.iter().filter(|v| !v.is_missing()).collect())
            .collect()
    }

    pub fn unit_index(&self, id: &str) -> Option<usize> {
        self.unit_ids.iter().position(|u| u == id)
    }

    pub fn annotator_index(&self, id: &str) -> Option<usize> {
        self.annotator_ids.iter().position(|a| a == id)
    }

    /// Applies `f` to every non-missing cell.
    pub fn map_values(
        &self,
        mut f: impl FnMut(&AnnotationValue) -> AnnotationValue,
    ) -> Result<AnnotationMatrix> {
        let rows = self
            .rows()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        if v.is_missing() {
                            AnnotationValue::Missing
                        } else {
                            f(v)
                        }
                    })
                    .collect()
            })
            .collect();
        AnnotationMatrix::new(self.unit_ids.clone(), self.annotator_ids.clone(), rows)
    }

    /// Reorders annotators by the given permutation of column indices.
    pub fn permute_annotators(&self, order: &[usize]) -> Result<AnnotationMatrix> {
        let ids = order
            .iter()
            .map(|&i| self.annotator_ids[i].clone())
            .collect();
        let rows = self
            .rows()
            .map(|row| order.iter().map(|&i| row[i].clone()).collect())
            .collect();
        AnnotationMatrix::new(self.unit_ids.clone(), ids, rows)
    }

    /// Reorders units by the given permutation of row indices.
    pub fn permute_units(&self, order: &[usize]) -> Result<AnnotationMatrix> {
        let ids = order.iter().map(|&i| self.unit_ids[i].clone()).collect();
        let rows = order.iter().map(|&i| self.row(i).to_vec()).collect();
        AnnotationMatrix::new(ids, self.annotator_ids.clone(), rows)
    }
}

fn check_unique(what: &str, ids: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(Error::Shape(format!("duplicate {what} id `{id}`")));
        }
    }
    Ok(())
}
