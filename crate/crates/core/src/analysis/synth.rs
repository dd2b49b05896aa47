//! Synthetic annotation corpora with controlled annotator noise.
//!
//! Each unit samples one ground-truth graph; every annotator then sees an
//! independently corrupted copy. Unit `i` draws from its own ChaCha stream
//! (`seed`, stream `i`), so output depends only on the seed and the shape.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    AnnotationMatrix, AnnotationValue, CategorySystem, EventLabel, NarrativeGraph, RelationLabel,
    Supercategory, Triple,
};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NoiseRates {
    pub node_drop_rate: f64,
    pub relation_flip_rate: f64,
    pub spurious_triple_rate: f64,
}

impl NoiseRates {
    pub fn uniform(rate: f64) -> Self {
        NoiseRates {
            node_drop_rate: rate,
            relation_flip_rate: rate,
            spurious_triple_rate: rate,
        }
    }

    fn check(&self) -> Result<()> {
        for (name, r) in [
            ("node_drop_rate", self.node_drop_rate),
            ("relation_flip_rate", self.relation_flip_rate),
            ("spurious_triple_rate", self.spurious_triple_rate),
        ] {
            if !(0.0..=1.0).contains(&r) {
                return Err(Error::InvalidArgument(format!(
                    "{name} = {r} is outside [0, 1]"
                )));
            }
        }
        Ok(())
    }
}

/// A distribution over ground-truth graphs.
pub trait TruthModel {
    fn target(&self) -> &EventLabel;

    /// Non-target labels that noise may introduce.
    fn vocabulary(&self) -> &[EventLabel];

    /// Samples a valid DAG containing the target.
    fn sample(&self, rng: &mut dyn RngCore) -> NarrativeGraph;
}

/// Random causal trees into the target: one to `max_direct` direct causes,
/// each with an optional upstream cause, and optional downstream effects of
/// the target. All node labels in one graph are distinct.
#[derive(Debug, Clone, PartialEq)]
pub struct CausalTreeModel {
    pub target: EventLabel,
    pub vocabulary: Vec<EventLabel>,
    pub max_direct: usize,
    pub increase_prob: f64,
    pub upstream_prob: f64,
    pub effect_prob: f64,
}

impl CausalTreeModel {
    pub fn new(categories: &CategorySystem) -> Self {
        CausalTreeModel {
            target: categories.target().clone(),
            vocabulary: categories
                .entries()
                .iter()
                .filter(|e| e.supercategory != Supercategory::Target)
                .map(|e| e.label.clone())
                .collect(),
            max_direct: 3,
            increase_prob: 0.8,
            upstream_prob: 0.3,
            effect_prob: 0.2,
        }
    }
}

impl Default for CausalTreeModel {
    fn default() -> Self {
        CausalTreeModel::new(&CategorySystem::inflation_default())
    }
}

fn random_relation(rng: &mut dyn RngCore, increase_prob: f64) -> RelationLabel {
    if rng.random_bool(increase_prob) {
        RelationLabel::Increases
    } else {
        RelationLabel::Decreases
    }
}

impl TruthModel for CausalTreeModel {
    fn target(&self) -> &EventLabel {
        &self.target
    }

    fn vocabulary(&self) -> &[EventLabel] {
        &self.vocabulary
    }

    fn sample(&self, mut rng: &mut dyn RngCore) -> NarrativeGraph {
        let mut pool: Vec<&EventLabel> = self.vocabulary.iter().collect();
        pool.shuffle(&mut rng);
        let mut pool = pool.into_iter();
        let mut g = NarrativeGraph::new();

        let n_direct = rng.random_range(1..=self.max_direct.max(1));
        for cause in pool.by_ref().take(n_direct).collect::<Vec<_>>() {
            g.insert(Triple::new(
                cause.clone(),
                random_relation(rng, self.increase_prob),
                self.target.clone(),
            ));
            if rng.random_bool(self.upstream_prob) {
                if let Some(up) = pool.next() {
                    g.insert(Triple::new(
                        up.clone(),
                        random_relation(rng, self.increase_prob),
                        cause.clone(),
                    ));
                }
            }
        }
        if rng.random_bool(self.effect_prob) {
            if let Some(effect) = pool.next() {
                g.insert(Triple::new(
                    self.target.clone(),
                    random_relation(rng, self.increase_prob),
                    effect.clone(),
                ));
            }
        }
        g
    }
}

/// Adding `from -> to` keeps the graph acyclic iff `to` cannot reach `from`.
fn reaches(g: &NarrativeGraph, from: &EventLabel, to: &EventLabel) -> bool {
    let mut succ: BTreeMap<&EventLabel, Vec<&EventLabel>> = BTreeMap::new();
    for t in g {
        succ.entry(&t.subject).or_default().push(&t.object);
    }
    let mut seen = BTreeSet::from([from]);
    let mut stack = vec![from];
    while let Some(n) = stack.pop() {
        if n == to {
            return true;
        }
        for &m in succ.get(n).into_iter().flatten() {
            if seen.insert(m) {
                stack.push(m);
            }
        }
    }
    false
}

/// One annotator's corrupted reading of `truth`.
pub fn perturb(
    truth: &NarrativeGraph,
    model: &dyn TruthModel,
    noise: &NoiseRates,
    rng: &mut dyn RngCore,
) -> NarrativeGraph {
    let target = model.target();
    let dropped: BTreeSet<&EventLabel> = truth
        .nodes()
        .into_iter()
        .filter(|&n| n != target)
        .filter(|_| rng.random_bool(noise.node_drop_rate))
        .collect();
    let mut g: NarrativeGraph = truth
        .iter()
        .filter(|t| !dropped.contains(&t.subject) && !dropped.contains(&t.object))
        .map(|t| {
            let mut t = t.clone();
            if rng.random_bool(noise.relation_flip_rate) {
                t.relation = t.relation.flipped();
            }
            t
        })
        .collect();

    if rng.random_bool(noise.spurious_triple_rate) && !model.vocabulary().is_empty() {
        for _ in 0..32 {
            let subject = model.vocabulary().choose(rng).unwrap();
            let object = if rng.random_bool(0.5) {
                target
            } else {
                model.vocabulary().choose(rng).unwrap()
            };
            let taken = g.iter().any(|t| {
                (&t.subject == subject && &t.object == object)
                    || (&t.subject == object && &t.object == subject)
            });
            if subject == object || taken || reaches(&g, object, subject) {
                continue;
            }
            g.insert(Triple::new(
                subject.clone(),
                random_relation(rng, 0.5),
                object.clone(),
            ));
            break;
        }
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub seed: u64,
    pub n_units: usize,
    pub n_annotators: usize,
    pub noise: NoiseRates,
}

/// Generates a units × annotators matrix of graphs.
pub fn generate_synthetic_corpus(
    config: &SynthConfig,
    model: &dyn TruthModel,
) -> Result<AnnotationMatrix> {
    config.noise.check()?;
    let rows = (0..config.n_units)
        .map(|unit| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(unit as u64);
            let truth = model.sample(&mut rng);
            (0..config.n_annotators)
                .map(|_| AnnotationValue::Graph(perturb(&truth, model, &config.noise, &mut rng)))
                .collect()
        })
        .collect();
    let units = (0..config.n_units).map(|i| format!("doc-{i:04}")).collect();
    let annotators = (1..=config.n_annotators)
        .map(|i| format!("annotator-{i}"))
        .collect();
    AnnotationMatrix::new(units, annotators, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_graph;

    fn config(noise: NoiseRates) -> SynthConfig {
        SynthConfig {
            seed: 7,
            n_units: 20,
            n_annotators: 4,
            noise,
        }
    }

    #[test]
    fn zero_noise_copies_truth() {
        let m =
            generate_synthetic_corpus(&config(NoiseRates::default()), &CausalTreeModel::default())
                .unwrap();
        for row in m.rows() {
            assert!(row.iter().all(|v| v == &row[0]));
            assert!(row[0]
                .as_graph()
                .unwrap()
                .contains_node(&"Inflation".into()));
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let model = CausalTreeModel::default();
        let a = generate_synthetic_corpus(&config(NoiseRates::uniform(0.3)), &model).unwrap();
        let b = generate_synthetic_corpus(&config(NoiseRates::uniform(0.3)), &model).unwrap();
        assert_eq!(a, b);
        let mut other = config(NoiseRates::uniform(0.3));
        other.seed = 8;
        assert_ne!(a, generate_synthetic_corpus(&other, &model).unwrap());
    }

    #[test]
    fn forced_flip() {
        struct One;
        impl TruthModel for One {
            fn target(&self) -> &EventLabel {
                static T: std::sync::OnceLock<EventLabel> = std::sync::OnceLock::new();
                T.get_or_init(|| "Inflation".into())
            }
            fn vocabulary(&self) -> &[EventLabel] {
                &[]
            }
            fn sample(&self, _: &mut dyn RngCore) -> NarrativeGraph {
                [Triple::new("Wages", RelationLabel::Increases, "Inflation")]
                    .into_iter()
                    .collect()
            }
        }
        let noise = NoiseRates {
            relation_flip_rate: 1.0,
            ..Default::default()
        };
        let m = generate_synthetic_corpus(&config(noise), &One).unwrap();
        let flipped: NarrativeGraph = [Triple::new("Wages", RelationLabel::Decreases, "Inflation")]
            .into_iter()
            .collect();
        assert!(m.rows().flatten().all(|v| v.as_graph() == Some(&flipped)));
    }

    #[test]
    fn noisy_graphs_stay_valid() {
        let cs = CategorySystem::inflation_default();
        let m = generate_synthetic_corpus(
            &config(NoiseRates::uniform(0.6)),
            &CausalTreeModel::default(),
        )
        .unwrap();
        for v in m.rows().flatten() {
            let res = validate_graph(v.as_graph().unwrap(), &cs);
            assert!(res.is_clean(), "{res:?}");
        }
    }

    #[test]
    fn invalid_rates() {
        let err = generate_synthetic_corpus(
            &config(NoiseRates::uniform(1.5)),
            &CausalTreeModel::default(),
        );
        assert!(matches!(err, Err(Error::InvalidArgument(_))));
    }
}
