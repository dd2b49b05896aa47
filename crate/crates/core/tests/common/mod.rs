//! Independent reference implementations and random generators shared by the
//! integration tests. Nothing here calls into the code under test.

#![allow(dead_code)]

use std::collections::VecDeque;

use narrative_iaa::{
    AnnotationMatrix, AnnotationValue, EventLabel, NarrativeGraph, RelationLabel, Triple,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub const TARGET: &str = "Inflation";
pub const VOCAB: [&str; 7] = [
    "Wages",
    "Energy Prices",
    "Food Prices",
    "Monetary Policy",
    "Government Spending",
    "War",
    "Supply Chain Issues",
];

/// Alpha straight from the definition, looping over ordered pairs of
/// individual values. `None` when undefined.
pub fn brute_force_alpha(rows: &[Vec<Option<String>>]) -> Option<(f64, f64, f64)> {
    let units: Vec<Vec<&str>> = rows
        .iter()
        .map(|r| r.iter().flatten().map(String::as_str).collect::<Vec<_>>())
        .filter(|u| u.len() >= 2)
        .collect();
    let pooled: Vec<&str> = units.iter().flatten().copied().collect();
    let n = pooled.len() as f64;
    if units.is_empty() {
        return None;
    }
    let d = |a: &str, b: &str| if a == b { 0.0 } else { 1.0 };
    let mut d_o = 0.0;
    for u in &units {
        let mut s = 0.0;
        for i in 0..u.len() {
            for j in 0..u.len() {
                if i != j {
                    s += d(u[i], u[j]);
                }
            }
        }
        d_o += s / (u.len() as f64 - 1.0);
    }
    d_o /= n;
    let mut d_e = 0.0;
    for i in 0..pooled.len() {
        for j in 0..pooled.len() {
            if i != j {
                d_e += d(pooled[i], pooled[j]);
            }
        }
    }
    d_e /= n * (n - 1.0);
    if d_e == 0.0 {
        return None;
    }
    Some((1.0 - d_o / d_e, d_o, d_e))
}

pub fn random_nominal_rows(rng: &mut impl Rng) -> Vec<Vec<Option<String>>> {
    let units = rng.random_range(1..=4);
    let annotators = rng.random_range(1..=4);
    let labels = ["a", "b", "c"];
    let n_labels = rng.random_range(2..=3);
    let missing = rng.random_range(0.0..0.4);
    (0..units)
        .map(|_| {
            (0..annotators)
                .map(|_| {
                    (!rng.random_bool(missing))
                        .then(|| labels[rng.random_range(0..n_labels)].to_owned())
                })
                .collect()
        })
        .collect()
}

pub fn nominal_matrix(rows: &[Vec<Option<String>>]) -> AnnotationMatrix {
    AnnotationMatrix::from_rows(
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|v| {
                        v.as_deref()
                            .map_or(AnnotationValue::Missing, AnnotationValue::from)
                    })
                    .collect()
            })
            .collect(),
    )
    .unwrap()
}

/// Exhaustive edit-distance search over graphs on three fixed nodes.
///
/// A state packs a 3-bit node-presence mask with 2 bits per ordered node
/// pair (bit 0 Increases, bit 1 Decreases). Unit-cost moves: insert a node;
/// delete an isolated node; insert, delete or relabel one edge whose
/// endpoints are present.
pub struct GedOracle;

pub const GED_LABELS: [&str; 3] = ["A", "B", "C"];
const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
pub const GED_STATES: usize = 1 << 15;

impl GedOracle {
    fn edges(state: usize, p: usize) -> usize {
        (state >> (3 + 2 * p)) & 3
    }

    fn with_edges(state: usize, p: usize, e: usize) -> usize {
        (state & !(3 << (3 + 2 * p))) | (e << (3 + 2 * p))
    }

    fn neighbours(state: usize, out: &mut Vec<usize>) {
        out.clear();
        let nodes = state & 7;
        for v in 0..3 {
            if nodes & (1 << v) == 0 {
                out.push(state | (1 << v));
            } else if PAIRS
                .iter()
                .enumerate()
                .all(|(p, &(a, b))| (a != v && b != v) || Self::edges(state, p) == 0)
            {
                out.push(state & !(1 << v));
            }
        }
        for (p, &(a, b)) in PAIRS.iter().enumerate() {
            if nodes & (1 << a) == 0 || nodes & (1 << b) == 0 {
                continue;
            }
            let e = Self::edges(state, p);
            for bit in [1, 2] {
                let other = 3 - bit;
                if e & bit == 0 {
                    out.push(Self::with_edges(state, p, e | bit));
                } else {
                    out.push(Self::with_edges(state, p, e & !bit));
                    if e & other == 0 {
                        out.push(Self::with_edges(state, p, (e & !bit) | other));
                    }
                }
            }
        }
    }

    /// Shortest edit counts from `source` to every state.
    pub fn distances_from(source: usize) -> Vec<u8> {
        let mut dist = vec![u8::MAX; GED_STATES];
        let mut queue = VecDeque::from([source]);
        dist[source] = 0;
        let mut next = Vec::with_capacity(32);
        while let Some(s) = queue.pop_front() {
            Self::neighbours(s, &mut next);
            for &t in &next {
                if dist[t] == u8::MAX {
                    dist[t] = dist[s] + 1;
                    queue.push_back(t);
                }
            }
        }
        dist
    }

    /// All 4^6 edge configurations; the node mask is implied by the edges.
    pub fn all_graphs() -> Vec<(usize, NarrativeGraph)> {
        (0..1usize << 12)
            .map(|edges| {
                let mut state = edges << 3;
                let mut g = NarrativeGraph::new();
                for (p, &(a, b)) in PAIRS.iter().enumerate() {
                    let e = Self::edges(state, p);
                    for (bit, rel) in [(1, RelationLabel::Increases), (2, RelationLabel::Decreases)]
                    {
                        if e & bit != 0 {
                            state |= (1 << a) | (1 << b);
                            g.insert(Triple::new(GED_LABELS[a], rel, GED_LABELS[b]));
                        }
                    }
                }
                (state, g)
            })
            .collect()
    }
}

fn random_relation(rng: &mut impl Rng) -> RelationLabel {
    if rng.random_bool(0.5) {
        RelationLabel::Increases
    } else {
        RelationLabel::Decreases
    }
}

/// A random DAG over the target and a random subset of [`VOCAB`]: edges only
/// go forward in a shuffled order, one relation per node pair.
pub fn random_dag(rng: &mut impl Rng) -> NarrativeGraph {
    let mut nodes: Vec<&str> = VOCAB.to_vec();
    nodes.shuffle(rng);
    nodes.truncate(rng.random_range(1..=VOCAB.len()));
    nodes.push(TARGET);
    nodes.shuffle(rng);
    let density = rng.random_range(0.1..0.6);
    let mut g = NarrativeGraph::new();
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if rng.random_bool(density) {
                g.insert(Triple::new(nodes[i], random_relation(rng), nodes[j]));
            }
        }
    }
    g
}

pub fn random_subgraph(g: &NarrativeGraph, rng: &mut impl Rng) -> NarrativeGraph {
    let keep = rng.random_range(0.0..1.0);
    g.filtered(|_| rng.random_bool(keep))
}

pub fn random_label_set(rng: &mut impl Rng) -> std::collections::BTreeSet<String> {
    VOCAB[..4]
        .iter()
        .filter(|_| rng.random_bool(0.4))
        .map(|s| s.to_string())
        .collect()
}

/// Small graphs that often share triples, so every distance value occurs.
pub fn random_small_graph(rng: &mut impl Rng) -> NarrativeGraph {
    let nodes = [TARGET, VOCAB[0], VOCAB[1], VOCAB[2]];
    let mut g = NarrativeGraph::new();
    for _ in 0..rng.random_range(0..4) {
        let a = rng.random_range(0..nodes.len());
        let b = rng.random_range(0..nodes.len());
        if a < b {
            g.insert(Triple::new(nodes[a], random_relation(rng), nodes[b]));
        }
    }
    g
}

pub fn target() -> EventLabel {
    TARGET.into()
}
