use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{AnnotationMatrix, Triple, ValueKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeastAgreedOccurrence {
    pub unit_id: String,
    /// Annotators in this unit who included the triple.
    pub frequency: usize,
    /// Annotators with a (possibly empty) graph for this unit.
    pub annotators: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeastAgreedTriple {
    pub triple: Triple,
    /// Lowest frequency over the units where this triple was least agreed.
    pub frequency: usize,
    /// Number of units where this triple was among the least agreed.
    pub count: usize,
    pub occurrences: Vec<LeastAgreedOccurrence>,
}

/// For each unit, collects the triples with the lowest annotation frequency
/// among all triples annotated in that unit, then aggregates across units.
///
/// Sorted by frequency (ascending), then by count (descending), then by triple.
pub fn least_agreed_triples(graphs: &AnnotationMatrix) -> Result<Vec<LeastAgreedTriple>> {
    if let Some(found) = graphs.kind() {
        if found != ValueKind::Graph {
            return Err(Error::KindMismatch {
                expected: ValueKind::Graph,
                found,
            });
        }
    }
    let mut agg: BTreeMap<&Triple, Vec<LeastAgreedOccurrence>> = BTreeMap::new();
    for (unit_id, values) in graphs.unit_ids().iter().zip(graphs.present_values()) {
        let mut freq: BTreeMap<&Triple, usize> = BTreeMap::new();
        for g in values.iter().filter_map(|v| v.as_graph()) {
            for t in g {
                *freq.entry(t).or_default() += 1;
            }
        }
        let Some(&min) = freq.values().min() else {
            continue;
        };
        for (&t, &f) in &freq {
            if f == min {
                agg.entry(t).or_default().push(LeastAgreedOccurrence {
                    unit_id: unit_id.clone(),
                    frequency: f,
                    annotators: values.len(),
                });
            }
        }
    }
    let mut out: Vec<LeastAgreedTriple> = agg
        .into_iter()
        .map(|(t, occurrences)| LeastAgreedTriple {
            triple: t.clone(),
            frequency: occurrences.iter().map(|o| o.frequency).min().unwrap(),
            count: occurrences.len(),
            occurrences,
        })
        .collect();
    out.sort_by(|a, b| {
        a.frequency
            .cmp(&b.frequency)
            .then(b.count.cmp(&a.count))
            .then_with(|| a.triple.cmp(&b.triple))
    });
    Ok(out)
}
