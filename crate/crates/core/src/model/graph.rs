use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// An event category used as a graph node. Node identity is label identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EventLabel(String);

impl EventLabel {
    pub fn new(name: impl Into<String>) -> Self {
        EventLabel(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EventLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for EventLabel {
    fn from(s: &str) -> Self {
        EventLabel(s.to_owned())
    }
}

impl From<String> for EventLabel {
    fn from(s: String) -> Self {
        EventLabel(s)
    }
}

/// Direction of a causal link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RelationLabel {
    Increases,
    Decreases,
}

impl RelationLabel {
    pub const ALL: [RelationLabel; 2] = [RelationLabel::Increases, RelationLabel::Decreases];

    pub fn as_str(self) -> &'static str {
        match self {
            RelationLabel::Increases => "Increases",
            RelationLabel::Decreases => "Decreases",
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            RelationLabel::Increases => RelationLabel::Decreases,
            RelationLabel::Decreases => RelationLabel::Increases,
        }
    }
}

impl fmt::Display for RelationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RelationLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Increases" => Ok(RelationLabel::Increases),
            "Decreases" => Ok(RelationLabel::Decreases),
            other => Err(Error::UnknownRelation(other.to_owned())),
        }
    }
}

/// One `(subject, relation, object)` causal assertion.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: EventLabel,
    pub relation: RelationLabel,
    pub object: EventLabel,
}

impl Triple {
    pub fn new(
        subject: impl Into<EventLabel>,
        relation: RelationLabel,
        object: impl Into<EventLabel>,
    ) -> Self {
        Triple {
            subject: subject.into(),
            relation,
            object: object.into(),
        }
    }

    pub fn is_self_loop(&self) -> bool {
        self.subject == self.object
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.subject, self.relation, self.object)
    }
}

// Triples travel as `["subject", "relation", "object"]`.
impl Serialize for Triple {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (
            self.subject.as_str(),
            self.relation.as_str(),
            self.object.as_str(),
        )
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Triple {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (subject, relation, object): (String, String, String) =
            Deserialize::deserialize(deserializer)?;
        let relation = relation.parse().map_err(serde::de::Error::custom)?;
        Ok(Triple::new(subject, relation, object))
    }
}

/// One annotator's reading of one document: a set of triples.
///
/// Equality is set equality of triples, and the `Ord` impl orders graphs by
/// their sorted triple sequence, which gives every graph a canonical form.
/// Nodes are derived from triples, so a graph never has isolated nodes.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NarrativeGraph {
    triples: BTreeSet<Triple>,
}

impl NarrativeGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, triple: Triple) -> bool {
        self.triples.insert(triple)
    }

    pub fn remove(&mut self, triple: &Triple) -> bool {
        self.triples.remove(triple)
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn triples(&self) -> &BTreeSet<Triple> {
        &self.triples
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn nodes(&self) -> BTreeSet<&EventLabel> {
        self.triples
            .iter()
            .flat_map(|t| [&t.subject, &t.object])
            .collect()
    }

    pub fn contains_node(&self, label: &EventLabel) -> bool {
        self.triples
            .iter()
            .any(|t| &t.subject == label || &t.object == label)
    }

    /// Edges keyed by ordered endpoint pair. A valid graph has one relation per pair.
    pub fn edges(&self) -> BTreeMap<(&EventLabel, &EventLabel), Vec<RelationLabel>> {
        let mut edges: BTreeMap<_, Vec<_>> = BTreeMap::new();
        for t in &self.triples {
            edges
                .entry((&t.subject, &t.object))
                .or_default()
                .push(t.relation);
        }
        edges
    }

    pub fn is_subgraph_of(&self, other: &NarrativeGraph) -> bool {
        self.triples.is_subset(&other.triples)
    }

    /// Keeps the triples matching `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&Triple) -> bool) -> NarrativeGraph {
        self.triples.iter().filter(|t| keep(t)).cloned().collect()
    }
}

impl FromIterator<Triple> for NarrativeGraph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        NarrativeGraph {
            triples: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a NarrativeGraph {
    type Item = &'a Triple;
    type IntoIter = std::collections::btree_set::Iter<'a, Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}

impl fmt::Display for NarrativeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, t) in self.triples.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("}")
    }
}
