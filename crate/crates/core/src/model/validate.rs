use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::model::{CategorySystem, EventLabel, NarrativeGraph, RelationLabel, Triple};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValidationOptions {
    /// Report cycles as warnings instead of errors.
    pub allow_cycles: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    UnknownLabel {
        label: EventLabel,
    },
    SelfLoop {
        label: EventLabel,
    },
    DuplicateTriple {
        triple: Triple,
    },
    ConflictingEdge {
        subject: EventLabel,
        object: EventLabel,
        relations: Vec<RelationLabel>,
    },
    /// A witness cycle, listed as `a -> b -> ... -> a`.
    Cycle {
        path: Vec<EventLabel>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownLabel { label } => write!(f, "unknown label `{label}`"),
            Violation::SelfLoop { label } => write!(f, "self-loop on `{label}`"),
            Violation::DuplicateTriple { triple } => write!(f, "duplicate triple {triple}"),
            Violation::ConflictingEdge {
                subject,
                object,
                relations,
            } => {
                let names: Vec<_> = relations.iter().map(|r| r.as_str()).collect();
                write!(
                    f,
                    "conflicting relations {} on edge `{subject}` -> `{object}`",
                    names.join("/")
                )
            }
            Violation::Cycle { path } => {
                let names: Vec<_> = path.iter().map(|l| l.as_str()).collect();
                write!(f, "cycle {}", names.join(" -> "))
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationResult {
    pub errors: Vec<Violation>,
    pub warnings: Vec<Violation>,
}

impl ValidationResult {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn is_clean(&self) -> bool {
        self.errors.is_empty() && self.warnings.is_empty()
    }

    pub fn violations(&self) -> impl Iterator<Item = &Violation> {
        self.errors.iter().chain(&self.warnings)
    }
}

pub fn validate_graph(graph: &NarrativeGraph, cs: &CategorySystem) -> ValidationResult {
    validate_graph_with(graph, cs, ValidationOptions::default())
}

pub fn validate_graph_with(
    graph: &NarrativeGraph,
    cs: &CategorySystem,
    options: ValidationOptions,
) -> ValidationResult {
    let triples: Vec<_> = graph.iter().cloned().collect();
    validate_triples(&triples, cs, options)
}

/// Validates a raw triple list, as read from a corpus file, before it is
/// collapsed into a set. This is the only place duplicates are visible.
pub fn validate_triples(
    triples: &[Triple],
    cs: &CategorySystem,
    options: ValidationOptions,
) -> ValidationResult {
    let mut result = ValidationResult::default();

    let mut unknown = BTreeSet::new();
    for t in triples {
        for label in [&t.subject, &t.object] {
            if !cs.contains(label) && unknown.insert(label.clone()) {
                result.errors.push(Violation::UnknownLabel {
                    label: label.clone(),
                });
            }
        }
    }

    let mut seen = BTreeSet::new();
    for t in triples {
        if t.is_self_loop() {
            result.errors.push(Violation::SelfLoop {
                label: t.subject.clone(),
            });
        }
        if !seen.insert(t) {
            result
                .errors
                .push(Violation::DuplicateTriple { triple: t.clone() });
        }
    }

    let mut by_pair: BTreeMap<(&EventLabel, &EventLabel), BTreeSet<RelationLabel>> =
        BTreeMap::new();
    for t in &seen {
        by_pair
            .entry((&t.subject, &t.object))
            .or_default()
            .insert(t.relation);
    }
    for ((subject, object), relations) in &by_pair {
        if relations.len() > 1 {
            result.errors.push(Violation::ConflictingEdge {
                subject: (*subject).clone(),
                object: (*object).clone(),
                relations: relations.iter().copied().collect(),
            });
        }
    }

    let successors = adjacency(triples.iter().filter(|t| !t.is_self_loop()));
    if let Some(path) = find_cycle(&successors) {
        let violation = Violation::Cycle { path };
        if options.allow_cycles {
            result.warnings.push(violation);
        } else {
            result.errors.push(violation);
        }
    }

    result
}

fn adjacency<'a>(
    triples: impl Iterator<Item = &'a Triple>,
) -> BTreeMap<&'a EventLabel, BTreeSet<&'a EventLabel>> {
    let mut succ: BTreeMap<_, BTreeSet<_>> = BTreeMap::new();
    for t in triples {
        succ.entry(&t.subject).or_default().insert(&t.object);
        succ.entry(&t.object).or_default();
    }
    succ
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    Fresh,
    OnStack,
    Done,
}

/// Iterative DFS; returns the first back-edge cycle found, in deterministic order.
fn find_cycle(succ: &BTreeMap<&EventLabel, BTreeSet<&EventLabel>>) -> Option<Vec<EventLabel>> {
    let mut mark: BTreeMap<&EventLabel, Mark> = succ.keys().map(|&k| (k, Mark::Fresh)).collect();
    for &root in succ.keys() {
        if mark[root] != Mark::Fresh {
            continue;
        }
        let mut stack: Vec<(&EventLabel, std::collections::btree_set::Iter<&EventLabel>)> =
            vec![(root, succ[root].iter())];
        mark.insert(root, Mark::OnStack);
        while let Some((node, children)) = stack.last_mut() {
            let node = *node;
            match children.next() {
                Some(&child) => match mark[child] {
                    Mark::Fresh => {
                        mark.insert(child, Mark::OnStack);
                        stack.push((child, succ[child].iter()));
                    }
                    Mark::OnStack => {
                        let start = stack.iter().position(|(n, _)| *n == child).unwrap();
                        let mut path: Vec<EventLabel> =
                            stack[start..].iter().map(|(n, _)| (*n).clone()).collect();
                        path.push(child.clone());
                        return Some(path);
                    }
                    Mark::Done => {}
                },
                None => {
                    mark.insert(node, Mark::Done);
                    stack.pop();
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::RelationLabel::*;

    fn graph(triples: &[(&str, RelationLabel, &str)]) -> NarrativeGraph {
        triples
            .iter()
            .map(|&(s, r, o)| Triple::new(s, r, o))
            .collect()
    }

    #[test]
    fn minimal_graph_is_valid() {
        let cs = CategorySystem::inflation_default();
        let res = validate_graph(&graph(&[("Wages", Increases, "Inflation")]), &cs);
        assert!(res.is_clean());
    }

    #[test]
    fn self_loop() {
        let cs = CategorySystem::inflation_default();
        let res = validate_graph(&graph(&[("Inflation", Increases, "Inflation")]), &cs);
        assert_eq!(
            res.errors,
            vec![Violation::SelfLoop {
                label: "Inflation".into()
            }]
        );
    }

    #[test]
    fn two_cycle_has_witness() {
        let cs = CategorySystem::inflation_default();
        let g = graph(&[
            ("Wages", Increases, "Food Prices"),
            ("Food Prices", Increases, "Wages"),
        ]);
        let res = validate_graph(&g, &cs);
        assert_eq!(res.errors.len(), 1);
        match &res.errors[0] {
            Violation::Cycle { path } => {
                assert_eq!(path.len(), 3);
                assert_eq!(path.first(), path.last());
            }
            v => panic!("unexpected {v:?}"),
        }
        let relaxed = validate_graph_with(&g, &cs, ValidationOptions { allow_cycles: true });
        assert!(relaxed.is_ok());
        assert_eq!(relaxed.warnings.len(), 1);
    }

    #[test]
    fn longer_cycle_witness_follows_edges() {
        let cs = CategorySystem::inflation_default();
        let g = graph(&[
            ("Wages", Increases, "Food Prices"),
            ("Food Prices", Increases, "Inflation"),
            ("Inflation", Increases, "Wages"),
            ("War", Increases, "Energy Prices"),
        ]);
        let res = validate_graph(&g, &cs);
        let Violation::Cycle { path } = &res.errors[0] else {
            panic!("expected cycle");
        };
        assert_eq!(path.len(), 4);
        for w in path.windows(2) {
            assert!(g.iter().any(|t| t.subject == w[0] && t.object == w[1]));
        }
    }

    #[test]
    fn unknown_label_and_conflicting_edge() {
        let cs = CategorySystem::inflation_default();
        let g = graph(&[
            ("Wages", Increases, "Inflation"),
            ("Wages", Decreases, "Inflation"),
            ("Aliens", Increases, "Inflation"),
        ]);
        let res = validate_graph(&g, &cs);
        assert!(res.errors.contains(&Violation::UnknownLabel {
            label: "Aliens".into()
        }));
        assert!(res.errors.contains(&Violation::ConflictingEdge {
            subject: "Wages".into(),
            object: "Inflation".into(),
            relations: vec![Increases, Decreases],
        }));
    }

    #[test]
    fn duplicates_only_visible_in_raw_lists() {
        let cs = CategorySystem::inflation_default();
        let t = Triple::new("Wages", Increases, "Inflation");
        let res = validate_triples(&[t.clone(), t.clone()], &cs, ValidationOptions::default());
        assert_eq!(res.errors, vec![Violation::DuplicateTriple { triple: t }]);
    }

    #[test]
    fn validation_is_pure() {
        let cs = CategorySystem::inflation_default();
        let g = graph(&[
            ("Wages", Increases, "Food Prices"),
            ("Food Prices", Increases, "Wages"),
        ]);
        assert_eq!(validate_graph(&g, &cs), validate_graph(&g, &cs));
    }
}
