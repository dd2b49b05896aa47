//! Lenient, moderate and strict distances for label sets and graphs.
//!
//! Every metric here is symmetric, returns a value in `[0, 1]`, and gives
//! `d(x, x) = 0`. Two empty sets (or two empty graphs) are at distance 0 under
//! every tier, so agreeing that a document has no narrative counts as agreement.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{AnnotationValue, EventLabel, NarrativeGraph, RelationLabel, ValueKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    Lenient,
    Moderate,
    Strict,
}

impl Tier {
    pub const ALL: [Tier; 3] = [Tier::Lenient, Tier::Moderate, Tier::Strict];

    pub fn id(self) -> &'static str {
        match self {
            Tier::Lenient => "lenient",
            Tier::Moderate => "moderate",
            Tier::Strict => "strict",
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Tier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Tier::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| Error::UnknownMetric(s.to_owned()))
    }
}

fn parse_kind(s: &str) -> Option<ValueKind> {
    match s {
        "categorical" => Some(ValueKind::Categorical),
        "set" => Some(ValueKind::LabelSet),
        "graph" => Some(ValueKind::Graph),
        _ => None,
    }
}

/// A `(value kind, tier)` pair naming one metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DistanceSpec {
    pub value_kind: ValueKind,
    pub tier: Tier,
}

impl DistanceSpec {
    pub fn new(value_kind: ValueKind, tier: Tier) -> Self {
        DistanceSpec { value_kind, tier }
    }

    pub fn resolve(self) -> Metric {
        match (self.value_kind, self.tier) {
            (ValueKind::Categorical, _) => Metric::Nominal,
            (ValueKind::LabelSet, Tier::Lenient) => Metric::SetOverlap,
            (ValueKind::LabelSet, Tier::Moderate) => Metric::SetJaccard,
            (ValueKind::LabelSet, Tier::Strict) => Metric::SetExact,
            (ValueKind::Graph, Tier::Lenient) => Metric::GraphOverlap,
            (ValueKind::Graph, Tier::Moderate) => Metric::GraphEditNormalized,
            (ValueKind::Graph, Tier::Strict) => Metric::GraphExact,
        }
    }
}

/// `kind:tier`, e.g. `graph:moderate`.
impl FromStr for DistanceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, tier) = s
            .split_once(':')
            .ok_or_else(|| Error::UnknownMetric(s.to_owned()))?;
        let kind = parse_kind(kind).ok_or_else(|| Error::UnknownMetric(s.to_owned()))?;
        Ok(DistanceSpec::new(kind, tier.parse()?))
    }
}

impl fmt::Display for DistanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.value_kind, self.tier)
    }
}

/// A resolved distance function over [`AnnotationValue`]s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    Nominal,
    SetOverlap,
    SetJaccard,
    SetExact,
    GraphOverlap,
    GraphEditNormalized,
    GraphExact,
}

impl Metric {
    pub const ALL: [Metric; 7] = [
        Metric::Nominal,
        Metric::SetOverlap,
        Metric::SetJaccard,
        Metric::SetExact,
        Metric::GraphOverlap,
        Metric::GraphEditNormalized,
        Metric::GraphExact,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Nominal => "nominal",
            Metric::SetOverlap => "set-overlap",
            Metric::SetJaccard => "set-jaccard",
            Metric::SetExact => "set-exact",
            Metric::GraphOverlap => "graph-overlap",
            Metric::GraphEditNormalized => "graph-edit-normalized",
            Metric::GraphExact => "graph-exact",
        }
    }

    pub fn value_kind(self) -> ValueKind {
        match self {
            Metric::Nominal => ValueKind::Categorical,
            Metric::SetOverlap | Metric::SetJaccard | Metric::SetExact => ValueKind::LabelSet,
            Metric::GraphOverlap | Metric::GraphEditNormalized | Metric::GraphExact => {
                ValueKind::Graph
            }
        }
    }

    /// Distance between two values of this metric's kind.
    ///
    /// Returns `None` when either value is missing or of another kind.
    pub fn distance(self, a: &AnnotationValue, b: &AnnotationValue) -> Option<f64> {
        use AnnotationValue as V;
        Some(match (self, a, b) {
            (Metric::Nominal, V::Categorical(a), V::Categorical(b)) => nominal_distance(a, b),
            (Metric::SetOverlap, V::LabelSet(a), V::LabelSet(b)) => set_overlap_distance(a, b),
            (Metric::SetJaccard, V::LabelSet(a), V::LabelSet(b)) => set_jaccard_distance(a, b),
            (Metric::SetExact, V::LabelSet(a), V::LabelSet(b)) => set_exact_distance(a, b),
            (Metric::GraphOverlap, V::Graph(a), V::Graph(b)) => graph_overlap_distance(a, b),
            (Metric::GraphEditNormalized, V::Graph(a), V::Graph(b)) => {
                graph_edit_distance_normalized(a, b)
            }
            (Metric::GraphExact, V::Graph(a), V::Graph(b)) => graph_exact_distance(a, b),
            _ => return None,
        })
    }

    pub fn try_distance(self, a: &AnnotationValue, b: &AnnotationValue) -> Result<f64> {
        self.distance(a, b).ok_or_else(|| {
            let found = a.kind().filter(|&k| k != self.value_kind()).or(b.kind());
            match found {
                Some(found) => Error::KindMismatch {
                    expected: self.value_kind(),
                    found,
                },
                None => Error::InvalidArgument("distance of a missing value".to_owned()),
            }
        })
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Accepts metric names (`set-jaccard`) or `kind:tier` specs (`set:moderate`).
impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(m) = Metric::ALL.into_iter().find(|m| m.name() == s) {
            return Ok(m);
        }
        s.parse::<DistanceSpec>()
            .map(DistanceSpec::resolve)
            .map_err(|_| Error::UnknownMetric(s.to_owned()))
    }
}

fn indicator(differs: bool) -> f64 {
    if differs {
        1.0
    } else {
        0.0
    }
}

/// 0 iff the strings are identical. Case and whitespace are significant.
pub fn nominal_distance(a: &str, b: &str) -> f64 {
    indicator(a != b)
}

pub fn set_overlap_distance<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    indicator(a.is_disjoint(b))
}

pub fn set_jaccard_distance<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    let shared = a.intersection(b).count();
    let union = a.len() + b.len() - shared;
    1.0 - shared as f64 / union as f64
}

pub fn set_exact_distance<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> f64 {
    indicator(a != b)
}

pub fn graph_overlap_distance(a: &NarrativeGraph, b: &NarrativeGraph) -> f64 {
    set_overlap_distance(a.triples(), b.triples())
}

pub fn graph_exact_distance(a: &NarrativeGraph, b: &NarrativeGraph) -> f64 {
    indicator(a != b)
}

/// Exact unit-cost graph edit distance.
///
/// Edits are node insertion and deletion, and edge insertion, deletion and
/// relabelling. Nodes are identified by label, so the node correspondence is
/// fixed and the minimum decomposes: every node in only one graph costs one
/// edit, and every ordered endpoint pair costs the larger of its relations
/// present only in the first graph and only in the second (relabel what can
/// be paired, insert or delete the rest).
pub fn graph_edit_distance(a: &NarrativeGraph, b: &NarrativeGraph) -> usize {
    let nodes_a = a.nodes();
    let nodes_b = b.nodes();
    let node_cost = nodes_a.symmetric_difference(&nodes_b).count();

    type Pair<'g> = (&'g EventLabel, &'g EventLabel);
    let mut pairs: BTreeMap<Pair<'_>, (BTreeSet<RelationLabel>, BTreeSet<RelationLabel>)> =
        BTreeMap::new();
    for t in a {
        pairs
            .entry((&t.subject, &t.object))
            .or_default()
            .0
            .insert(t.relation);
    }
    for t in b {
        pairs
            .entry((&t.subject, &t.object))
            .or_default()
            .1
            .insert(t.relation);
    }
    let edge_cost: usize = pairs
        .values()
        .map(|(ra, rb)| ra.difference(rb).count().max(rb.difference(ra).count()))
        .sum();

    node_cost + edge_cost
}

/// Edit distance to the empty graph: every node and every edge deleted.
pub fn graph_size(g: &NarrativeGraph) -> usize {
    g.nodes().len() + g.len()
}

/// Edit distance divided by the sum of both graphs' distances to the empty graph.
pub fn graph_edit_distance_normalized(a: &NarrativeGraph, b: &NarrativeGraph) -> f64 {
    let denom = graph_size(a) + graph_size(b);
    if denom == 0 {
        return 0.0;
    }
    graph_edit_distance(a, b) as f64 / denom as f64
}
