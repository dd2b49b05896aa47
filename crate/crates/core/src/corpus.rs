//! JSON corpus interchange format.
//!
//! ```json
//! {
//!   "version": "1",
//!   "category_system": "categories.json",
//!   "target_label": "Inflation",
//!   "annotators": ["a1", "a2"],
//!   "documents": [
//!     {
//!       "id": "doc-1",
//!       "task1": {"a1": "inflation-cause-dominant", "a2": "inflation-related"},
//!       "task2": {"a1": [["Wages", "Increases", "Inflation"]], "a2": []}
//!     }
//!   ]
//! }
//! ```
//!
//! An annotator absent from a document's `task1`/`task2` mapping is a missing
//! cell; a present but empty triple list is an empty graph. `category_system`
//! is either a path (relative to the corpus file), an inline category-system
//! document, or omitted for the bundled default.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analysis::TASK1_LABELS;
use crate::error::{Error, Result};
use crate::model::{
    validate_triples, AnnotationMatrix, AnnotationValue, CategorySystem, CategorySystemFile,
    EventLabel, NarrativeGraph, RelationLabel, Triple, ValidationOptions, ValueKind,
};

pub const FORMAT_VERSION: &str = "1";

/// `[subject, relation, object]` as written in the file; checked on load.
pub type RawTriple = (String, String, String);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategorySource {
    Path(PathBuf),
    Inline(CategorySystemFile),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocumentRecord {
    pub id: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub task1: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub task2: BTreeMap<String, Vec<RawTriple>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusFile {
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category_system: Option<CategorySource>,
    pub target_label: String,
    pub annotators: Vec<String>,
    pub documents: Vec<DocumentRecord>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadOptions {
    /// Skip invalid cells (as missing) with a warning instead of failing.
    pub lenient: bool,
    pub allow_cycles: bool,
}

/// A problem found while loading, located as precisely as possible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoadIssue {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub document: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annotator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub task: Option<u8>,
    pub message: String,
}

impl LoadIssue {
    fn cell(document: &str, annotator: &str, task: u8, message: impl Into<String>) -> Self {
        LoadIssue {
            document: Some(document.to_owned()),
            annotator: Some(annotator.to_owned()),
            task: Some(task),
            message: message.into(),
        }
    }
}

impl fmt::Display for LoadIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(d) = &self.document {
            write!(f, "document `{d}`")?;
            if let Some(a) = &self.annotator {
                write!(f, ", annotator `{a}`")?;
            }
            if let Some(t) = self.task {
                write!(f, ", task {t}")?;
            }
            f.write_str(": ")?;
        }
        f.write_str(&self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoadedCorpus {
    pub task1: AnnotationMatrix,
    pub task2: AnnotationMatrix,
    pub categories: CategorySystem,
    pub target: EventLabel,
    pub warnings: Vec<LoadIssue>,
}

/// Everything found in a corpus: the matrices with invalid cells blanked out,
/// plus the errors that caused the blanking.
#[derive(Debug, Clone)]
pub struct Inspection {
    pub corpus: LoadedCorpus,
    pub errors: Vec<LoadIssue>,
}

impl Inspection {
    pub fn is_clean(&self) -> bool {
        self.errors.is_empty()
    }
}

pub fn read_corpus_file(path: &Path) -> Result<CorpusFile> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn load_corpus(path: &Path, options: LoadOptions) -> Result<LoadedCorpus> {
    let file = read_corpus_file(path)?;
    load_corpus_file(&file, path.parent(), options)
}

pub fn parse_corpus(source: &str, options: LoadOptions) -> Result<LoadedCorpus> {
    let file: CorpusFile = serde_json::from_str(source)?;
    load_corpus_file(&file, None, options)
}

pub fn load_corpus_file(
    file: &CorpusFile,
    base_dir: Option<&Path>,
    options: LoadOptions,
) -> Result<LoadedCorpus> {
    let Inspection { mut corpus, errors } = inspect(file, base_dir, options)?;
    if errors.is_empty() {
        return Ok(corpus);
    }
    if options.lenient {
        corpus.warnings.splice(0..0, errors);
        return Ok(corpus);
    }
    let more = match errors.len() {
        1 => String::new(),
        n => format!(" (and {} more)", n - 1),
    };
    Err(Error::Validation(format!("{}{more}", errors[0])))
}

fn resolve_categories(
    source: Option<&CategorySource>,
    base_dir: Option<&Path>,
) -> Result<CategorySystem> {
    match source {
        None => Ok(CategorySystem::inflation_default()),
        Some(CategorySource::Inline(file)) => CategorySystem::from_file(file.clone()),
        Some(CategorySource::Path(p)) => {
            let path = match base_dir {
                Some(dir) if p.is_relative() => dir.join(p),
                _ => p.clone(),
            };
            let text = std::fs::read_to_string(&path)?;
            CategorySystem::from_json(&text)
        }
    }
}

/// Checks every cell and builds the matrices, collecting all problems.
///
/// File-level problems (unknown target, duplicate ids, unreadable category
/// system) are returned as errors immediately.
pub fn inspect(
    file: &CorpusFile,
    base_dir: Option<&Path>,
    options: LoadOptions,
) -> Result<Inspection> {
    let categories = resolve_categories(file.category_system.as_ref(), base_dir)?;
    let target = EventLabel::new(file.target_label.clone());
    if !categories.contains(&target) {
        return Err(Error::Validation(format!(
            "target label `{target}` is not in the category system"
        )));
    }
    let mut seen = BTreeSet::new();
    for doc in &file.documents {
        if !seen.insert(doc.id.as_str()) {
            return Err(Error::Validation(format!(
                "duplicate document id `{}`",
                doc.id
            )));
        }
    }

    let validation = ValidationOptions {
        allow_cycles: options.allow_cycles,
    };
    let annotators: BTreeSet<&str> = file.annotators.iter().map(String::as_str).collect();
    let mut errors = Vec::new();
    let mut warnings = Vec::new();
    let mut rows1 = Vec::with_capacity(file.documents.len());
    let mut rows2 = Vec::with_capacity(file.documents.len());

    for doc in &file.documents {
        for (task, keys) in [
            (1u8, doc.task1.keys().collect::<Vec<_>>()),
            (2u8, doc.task2.keys().collect::<Vec<_>>()),
        ] {
            for key in keys {
                if !annotators.contains(key.as_str()) {
                    errors.push(LoadIssue::cell(
                        &doc.id,
                        key,
                        task,
                        "annotator is not declared",
                    ));
                }
            }
        }
        if doc.task1.is_empty() && doc.task2.is_empty() {
            warnings.push(LoadIssue {
                document: Some(doc.id.clone()),
                annotator: None,
                task: None,
                message: "document has no annotations".to_owned(),
            });
        }

        let row1 = file
            .annotators
            .iter()
            .map(|a| match doc.task1.get(a) {
                None => AnnotationValue::Missing,
                Some(label) if TASK1_LABELS.contains(&label.as_str()) => {
                    AnnotationValue::Categorical(label.clone())
                }
                Some(label) => {
                    errors.push(LoadIssue::cell(
                        &doc.id,
                        a,
                        1,
                        format!("unknown document label `{label}`"),
                    ));
                    AnnotationValue::Missing
                }
            })
            .collect();
        rows1.push(row1);

        let row2 = file
            .annotators
            .iter()
            .map(|a| {
                let Some(raw) = doc.task2.get(a) else {
                    return AnnotationValue::Missing;
                };
                let mut triples = Vec::with_capacity(raw.len());
                for (s, r, o) in raw {
                    match r.parse::<RelationLabel>() {
                        Ok(rel) => triples.push(Triple::new(s.as_str(), rel, o.as_str())),
                        Err(e) => {
                            errors.push(LoadIssue::cell(&doc.id, a, 2, e.to_string()));
                            return AnnotationValue::Missing;
                        }
                    }
                }
                let result = validate_triples(&triples, &categories, validation);
                for w in &result.warnings {
                    warnings.push(LoadIssue::cell(&doc.id, a, 2, w.to_string()));
                }
                if !result.is_ok() {
                    for e in &result.errors {
                        errors.push(LoadIssue::cell(&doc.id, a, 2, e.to_string()));
                    }
                    return AnnotationValue::Missing;
                }
                AnnotationValue::Graph(triples.into_iter().collect())
            })
            .collect();
        rows2.push(row2);
    }

    let units: Vec<String> = file.documents.iter().map(|d| d.id.clone()).collect();
    let task1 = AnnotationMatrix::new(units.clone(), file.annotators.clone(), rows1)?;
    let task2 = AnnotationMatrix::new(units, file.annotators.clone(), rows2)?;
    Ok(Inspection {
        corpus: LoadedCorpus {
            task1,
            task2,
            categories,
            target,
            warnings,
        },
        errors,
    })
}

impl LoadedCorpus {
    /// A corpus with only graph annotations (all document labels missing).
    pub fn from_graphs(task2: AnnotationMatrix, categories: CategorySystem) -> Result<Self> {
        if let Some(found) = task2.kind() {
            if found != ValueKind::Graph {
                return Err(Error::KindMismatch {
                    expected: ValueKind::Graph,
                    found,
                });
            }
        }
        let rows = vec![vec![AnnotationValue::Missing; task2.n_annotators()]; task2.n_units()];
        let task1 = AnnotationMatrix::new(
            task2.unit_ids().to_vec(),
            task2.annotator_ids().to_vec(),
            rows,
        )?;
        Ok(LoadedCorpus {
            task1,
            task2,
            target: categories.target().clone(),
            categories,
            warnings: Vec::new(),
        })
    }

    /// Canonical file form: documents sorted by id, triples sorted, and the
    /// category system inlined unless it is the bundled default.
    pub fn to_file(&self) -> Result<CorpusFile> {
        if self.task1.unit_ids() != self.task2.unit_ids()
            || self.task1.annotator_ids() != self.task2.annotator_ids()
        {
            return Err(Error::Shape("task matrices do not share axes".to_owned()));
        }
        let annotators = self.task1.annotator_ids();
        let mut documents: Vec<DocumentRecord> = self
            .task1
            .unit_ids()
            .iter()
            .enumerate()
            .map(|(u, id)| {
                let mut task1 = BTreeMap::new();
                let mut task2 = BTreeMap::new();
                for (a, name) in annotators.iter().enumerate() {
                    if let Some(label) = self.task1.get(u, a).as_categorical() {
                        task1.insert(name.clone(), label.to_owned());
                    }
                    if let Some(g) = self.task2.get(u, a).as_graph() {
                        task2.insert(name.clone(), raw_triples(g));
                    }
                }
                DocumentRecord {
                    id: id.clone(),
                    task1,
                    task2,
                }
            })
            .collect();
        documents.sort_by(|a, b| a.id.cmp(&b.id));

        let category_system = (self.categories != CategorySystem::inflation_default())
            .then(|| CategorySource::Inline(self.categories.to_file()));
        Ok(CorpusFile {
            version: FORMAT_VERSION.to_owned(),
            category_system,
            target_label: self.target.to_string(),
            annotators: annotators.to_vec(),
            documents,
        })
    }
}

fn raw_triples(g: &NarrativeGraph) -> Vec<RawTriple> {
    g.iter()
        .map(|t| {
            (
                t.subject.to_string(),
                t.relation.as_str().to_owned(),
                t.object.to_string(),
            )
        })
        .collect()
}

impl CorpusFile {
    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("corpus serializes");
        s.push('\n');
        s
    }
}
