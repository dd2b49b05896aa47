mod common;

use common::*;
use narrative_iaa::corpus::load_corpus_file;
use narrative_iaa::distance::{graph_edit_distance, graph_edit_distance_normalized, graph_size};
use narrative_iaa::representations::extract;
use narrative_iaa::{
    krippendorff_alpha, AnnotationMatrix, AnnotationValue, CategorySystem, LoadOptions,
    LoadedCorpus, Metric, NarrativeGraph, RelationLabel, RepresentationKind, Tier, Triple,
};
use proptest::prelude::*;

fn relation() -> impl Strategy<Value = RelationLabel> {
    prop_oneof![
        Just(RelationLabel::Increases),
        Just(RelationLabel::Decreases)
    ]
}

/// Forward edges over a fixed node order, so every graph is a DAG.
fn dag() -> impl Strategy<Value = NarrativeGraph> {
    let nodes = [VOCAB[0], VOCAB[1], TARGET, VOCAB[2], VOCAB[3]];
    let pairs: Vec<(usize, usize)> = (0..nodes.len())
        .flat_map(|i| (i + 1..nodes.len()).map(move |j| (i, j)))
        .collect();
    prop::collection::vec(prop::option::weighted(0.3, relation()), pairs.len()).prop_map(
        move |rels| {
            pairs
                .iter()
                .zip(rels)
                .filter_map(|(&(i, j), r)| Some(Triple::new(nodes[i], r?, nodes[j])))
                .collect()
        },
    )
}

fn nominal_rows() -> impl Strategy<Value = Vec<Vec<Option<String>>>> {
    let cell = prop::option::weighted(
        0.8,
        prop::sample::select(vec!["a", "b", "c"]).prop_map(String::from),
    );
    (1usize..6, 2usize..5).prop_flat_map(move |(u, a)| {
        prop::collection::vec(prop::collection::vec(cell.clone(), a), u)
    })
}

fn graph_matrix() -> impl Strategy<Value = AnnotationMatrix> {
    (1usize..6, 2usize..5).prop_flat_map(|(u, a)| {
        prop::collection::vec(
            prop::collection::vec(prop::option::weighted(0.85, dag()), a),
            u,
        )
        .prop_map(|rows| {
            AnnotationMatrix::from_rows(
                rows.into_iter()
                    .map(|r| r.into_iter().map(AnnotationValue::from).collect())
                    .collect(),
            )
            .unwrap()
        })
    })
}

fn same_outcome(
    a: &narrative_iaa::Result<narrative_iaa::AlphaResult>,
    b: &narrative_iaa::Result<narrative_iaa::AlphaResult>,
) -> bool {
    match (a, b) {
        (Ok(x), Ok(y)) => (x.alpha - y.alpha).abs() <= 1e-12,
        (Err(x), Err(y)) => x.code() == y.code(),
        _ => false,
    }
}

proptest! {
    #[test]
    fn alpha_matches_brute_force(rows in nominal_rows()) {
        let got = krippendorff_alpha(&nominal_matrix(&rows), Metric::Nominal);
        match brute_force_alpha(&rows) {
            Some((a, _, _)) => prop_assert!((got.unwrap().alpha - a).abs() <= 1e-12),
            None => prop_assert!(got.is_err()),
        }
    }

    #[test]
    fn alpha_invariant_under_permutation(m in graph_matrix(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut units: Vec<usize> = (0..m.n_units()).collect();
        let mut annotators: Vec<usize> = (0..m.n_annotators()).collect();
        units.shuffle(&mut rng);
        annotators.shuffle(&mut rng);
        let p = m.permute_units(&units).unwrap().permute_annotators(&annotators).unwrap();
        for kind in RepresentationKind::ALL {
            for tier in Tier::ALL {
                let metric = kind.distance_spec(tier).resolve();
                let a = krippendorff_alpha(&extract(&m, kind, &target()).unwrap(), metric);
                let b = krippendorff_alpha(&extract(&p, kind, &target()).unwrap(), metric);
                prop_assert!(same_outcome(&a, &b), "{kind:?}/{tier:?}: {a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn alpha_at_most_one(m in graph_matrix()) {
        for kind in RepresentationKind::ALL {
            for tier in Tier::ALL {
                let metric = kind.distance_spec(tier).resolve();
                if let Ok(r) = krippendorff_alpha(&extract(&m, kind, &target()).unwrap(), metric) {
                    prop_assert!(r.alpha <= 1.0 + 1e-12);
                    prop_assert!(r.observed_disagreement >= 0.0 && r.expected_disagreement > 0.0);
                }
            }
        }
    }

    #[test]
    fn edit_distance_is_a_metric(a in dag(), b in dag(), c in dag()) {
        let d = graph_edit_distance;
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert_eq!(d(&a, &a), 0);
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
        prop_assert_eq!(d(&a, &NarrativeGraph::new()), graph_size(&a));
        let n = graph_edit_distance_normalized(&a, &b);
        prop_assert!((0.0..=1.0).contains(&n));
        prop_assert_eq!(n == 0.0, a == b);
    }

    #[test]
    fn corpus_round_trip(m in graph_matrix(), labels in prop::collection::vec(prop::option::of(0usize..3), 40)) {
        let categories = CategorySystem::inflation_default();
        let mut corpus = LoadedCorpus::from_graphs(m, categories).unwrap();
        let names = narrative_iaa::analysis::TASK1_LABELS;
        let mut it = labels.into_iter().cycle();
        let rows: Vec<Vec<AnnotationValue>> = (0..corpus.task1.n_units())
            .map(|_| {
                (0..corpus.task1.n_annotators())
                    .map(|_| it.next().unwrap().map_or(AnnotationValue::Missing, |i| names[i].into()))
                    .collect()
            })
            .collect();
        corpus.task1 = AnnotationMatrix::new(
            corpus.task1.unit_ids().to_vec(),
            corpus.task1.annotator_ids().to_vec(),
            rows,
        )
        .unwrap();

        let file = corpus.to_file().unwrap();
        let text = file.to_json_pretty();
        let parsed: narrative_iaa::CorpusFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&parsed, &file);
        let loaded = load_corpus_file(&parsed, None, LoadOptions::default()).unwrap();
        prop_assert_eq!(&loaded.task1, &corpus.task1);
        prop_assert_eq!(&loaded.task2, &corpus.task2);
        prop_assert_eq!(&loaded.categories, &corpus.categories);
        prop_assert_eq!(loaded.to_file().unwrap().to_json_pretty(), text);
    }
}
