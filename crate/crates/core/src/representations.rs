//! The six narrative representations extracted around a target event.
//!
//! Graph representations keep only triples that lie on a directed path into
//! or out of the target. Event sets exclude the target itself: it would be a
//! member of every annotator's set and carry no agreement signal.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distance::Tier;
use crate::error::{Error, Result};
use crate::model::{
    AnnotationMatrix, AnnotationValue, EventLabel, NarrativeGraph, RelationLabel, ValueKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepresentationKind {
    AllEvents,
    AdjacentEvents,
    Relations,
    FullStory,
    AdjacentStory,
    ExtendedStory,
}

impl RepresentationKind {
    /// Row order of the reliability table.
    pub const ALL: [RepresentationKind; 6] = [
        RepresentationKind::AllEvents,
        RepresentationKind::AdjacentEvents,
        RepresentationKind::Relations,
        RepresentationKind::FullStory,
        RepresentationKind::AdjacentStory,
        RepresentationKind::ExtendedStory,
    ];

    pub fn value_kind(self) -> ValueKind {
        match self {
            RepresentationKind::AllEvents
            | RepresentationKind::AdjacentEvents
            | RepresentationKind::Relations => ValueKind::LabelSet,
            RepresentationKind::FullStory
            | RepresentationKind::AdjacentStory
            | RepresentationKind::ExtendedStory => ValueKind::Graph,
        }
    }

    /// Stable CLI identifier.
    pub fn id(self) -> &'static str {
        match self {
            RepresentationKind::AllEvents => "all-events",
            RepresentationKind::AdjacentEvents => "adjacent-events",
            RepresentationKind::Relations => "relations",
            RepresentationKind::FullStory => "full-story",
            RepresentationKind::AdjacentStory => "adjacent-story",
            RepresentationKind::ExtendedStory => "extended-story",
        }
    }

    /// Short row title used in rendered tables.
    pub fn title(self) -> &'static str {
        match self {
            RepresentationKind::AllEvents => "All Events",
            RepresentationKind::AdjacentEvents => "Adj. Events",
            RepresentationKind::Relations => "Relations",
            RepresentationKind::FullStory => "Full Story",
            RepresentationKind::AdjacentStory => "Adj. Story",
            RepresentationKind::ExtendedStory => "Ext. Story",
        }
    }

    /// Extracts this representation from one graph.
    pub fn extract_value(self, graph: &NarrativeGraph, target: &EventLabel) -> AnnotationValue {
        fn names<'a>(it: impl IntoIterator<Item = &'a EventLabel>) -> AnnotationValue {
            AnnotationValue::label_set(it.into_iter().map(|l| l.as_str()))
        }
        match self {
            RepresentationKind::AllEvents => names(&all_events(graph, target)),
            RepresentationKind::AdjacentEvents => names(&adjacent_events(graph, target)),
            RepresentationKind::Relations => {
                AnnotationValue::label_set(relations(graph, target).iter().map(|r| r.as_str()))
            }
            RepresentationKind::FullStory => full_story(graph, target).into(),
            RepresentationKind::AdjacentStory => adjacent_story(graph, target).into(),
            RepresentationKind::ExtendedStory => extended_story(graph, target).into(),
        }
    }

    /// The distance spec this representation uses at a given tier.
    pub fn distance_spec(self, tier: Tier) -> crate::distance::DistanceSpec {
        crate::distance::DistanceSpec::new(self.value_kind(), tier)
    }
}

impl fmt::Display for RepresentationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for RepresentationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RepresentationKind::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| Error::UnknownRepresentation(s.to_owned()))
    }
}

/// Nodes from which `target` is reachable along edges (`forward = false`), or
/// reachable from `target` (`forward = true`). Includes `target` when present.
fn closure<'g>(
    graph: &'g NarrativeGraph,
    target: &EventLabel,
    forward: bool,
) -> BTreeSet<&'g EventLabel> {
    let mut next: BTreeMap<&EventLabel, Vec<&EventLabel>> = BTreeMap::new();
    let mut start = None;
    for t in graph {
        let (from, to) = if forward {
            (&t.subject, &t.object)
        } else {
            (&t.object, &t.subject)
        };
        next.entry(from).or_default().push(to);
        if from == target {
            start = Some(from);
        }
    }
    let mut seen = BTreeSet::new();
    let Some(start) = start else {
        return seen;
    };
    let mut stack = vec![start];
    seen.insert(start);
    while let Some(node) = stack.pop() {
        for &n in next.get(node).into_iter().flatten() {
            if seen.insert(n) {
                stack.push(n);
            }
        }
    }
    seen
}

/// Triples on a directed path ending at or starting from `target`.
pub fn full_story(graph: &NarrativeGraph, target: &EventLabel) -> NarrativeGraph {
    let ancestors = closure(graph, target, false);
    let descendants = closure(graph, target, true);
    graph.filtered(|t| ancestors.contains(&t.object) || descendants.contains(&t.subject))
}

/// Triples of the form `(e, r, target)`.
pub fn adjacent_story(graph: &NarrativeGraph, target: &EventLabel) -> NarrativeGraph {
    graph.filtered(|t| &t.object == target)
}

/// Triples on a directed path ending at `target`.
pub fn extended_story(graph: &NarrativeGraph, target: &EventLabel) -> NarrativeGraph {
    let ancestors = closure(graph, target, false);
    graph.filtered(|t| ancestors.contains(&t.object))
}

pub fn all_events(graph: &NarrativeGraph, target: &EventLabel) -> BTreeSet<EventLabel> {
    full_story(graph, target)
        .nodes()
        .into_iter()
        .filter(|&l| l != target)
        .cloned()
        .collect()
}

pub fn adjacent_events(graph: &NarrativeGraph, target: &EventLabel) -> BTreeSet<EventLabel> {
    graph
        .iter()
        .filter(|t| &t.object == target)
        .map(|t| t.subject.clone())
        .collect()
}

pub fn relations(graph: &NarrativeGraph, target: &EventLabel) -> BTreeSet<RelationLabel> {
    graph
        .iter()
        .filter(|t| &t.object == target)
        .map(|t| t.relation)
        .collect()
}

/// Cell-wise extraction; missing cells stay missing.
pub fn extract(
    matrix: &AnnotationMatrix,
    kind: RepresentationKind,
    target: &EventLabel,
) -> Result<AnnotationMatrix> {
    if let Some(found) = matrix.kind() {
        if found != ValueKind::Graph {
            return Err(Error::KindMismatch {
                expected: ValueKind::Graph,
                found,
            });
        }
    }
    matrix.map_values(|v| match v {
        AnnotationValue::Graph(g) => kind.extract_value(g, target),
        _ => unreachable!("matrix kind checked above"),
    })
}
