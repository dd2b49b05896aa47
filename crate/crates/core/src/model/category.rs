//! Event vocabularies.
//!
//! The bundled default is the inflation vocabulary: 5 Demand, 8 Supply and
//! 13 Miscellaneous labels plus the `Inflation` target.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::EventLabel;

const DEFAULT_SYSTEM: &str = include_str!("../../data/category_system.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Supercategory {
    Demand,
    Supply,
    Miscellaneous,
    Target,
}

impl fmt::Display for Supercategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Supercategory::Demand => "Demand",
            Supercategory::Supply => "Supply",
            Supercategory::Miscellaneous => "Miscellaneous",
            Supercategory::Target => "Target",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryEntry {
    pub label: EventLabel,
    pub supercategory: Supercategory,
    #[serde(default)]
    pub explanation: String,
}

/// On-disk shape of a category-system document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategorySystemFile {
    pub version: String,
    pub entries: Vec<CategoryEntry>,
}

/// A validated event vocabulary with exactly one target label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategorySystem {
    version: String,
    entries: Vec<CategoryEntry>,
    index: HashMap<EventLabel, usize>,
    target: usize,
}

impl CategorySystem {
    pub fn new(version: impl Into<String>, entries: Vec<CategoryEntry>) -> Result<Self> {
        let mut index = HashMap::with_capacity(entries.len());
        let mut target = None;
        for (i, entry) in entries.iter().enumerate() {
            if entry.label.as_str().is_empty() {
                return Err(Error::CategorySystem(format!(
                    "entry {i} has an empty label"
                )));
            }
            if index.insert(entry.label.clone(), i).is_some() {
                return Err(Error::CategorySystem(format!(
                    "duplicate label `{}`",
                    entry.label
                )));
            }
            if entry.supercategory == Supercategory::Target {
                if let Some(prev) = target.replace(i) {
                    return Err(Error::CategorySystem(format!(
                        "more than one Target entry (`{}` and `{}`)",
                        entries[prev].label, entry.label
                    )));
                }
            }
        }
        let target =
            target.ok_or_else(|| Error::CategorySystem("missing Target entry".to_owned()))?;
        Ok(CategorySystem {
            version: version.into(),
            entries,
            index,
            target,
        })
    }

    /// The bundled inflation-narrative vocabulary.
    pub fn inflation_default() -> Self {
        DEFAULT_SYSTEM
            .parse()
            .expect("bundled category system is valid")
    }

    pub fn from_json(source: &str) -> Result<Self> {
        source.parse()
    }

    pub fn from_file(file: CategorySystemFile) -> Result<Self> {
        CategorySystem::new(file.version, file.entries)
    }

    pub fn to_file(&self) -> CategorySystemFile {
        CategorySystemFile {
            version: self.version.clone(),
            entries: self.entries.clone(),
        }
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn entries(&self) -> &[CategoryEntry] {
        &self.entries
    }

    pub fn target(&self) -> &EventLabel {
        &self.entries[self.target].label
    }

    pub fn contains(&self, label: &EventLabel) -> bool {
        self.index.contains_key(label)
    }

    pub fn get(&self, label: &EventLabel) -> Option<&CategoryEntry> {
        self.index.get(label).map(|&i| &self.entries[i])
    }

    pub fn supercategory(&self, label: &EventLabel) -> Option<Supercategory> {
        self.get(label).map(|e| e.supercategory)
    }

    /// Labels in a given supercategory, in file order.
    pub fn labels_in(&self, sup: Supercategory) -> impl Iterator<Item = &EventLabel> {
        self.entries
            .iter()
            .filter(move |e| e.supercategory == sup)
            .map(|e| &e.label)
    }

    pub fn labels(&self) -> impl Iterator<Item = &EventLabel> {
        self.entries.iter().map(|e| &e.label)
    }
}

impl FromStr for CategorySystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let file: CategorySystemFile = serde_json::from_str(s)?;
        CategorySystem::from_file(file)
    }
}
