//! Inter-annotator agreement for causal narrative graphs.
//!
//! Annotators label documents with small directed graphs of events
//! (`Wages --Increases--> Inflation`). This crate measures how well they agree
//! with Krippendorff's alpha, under six projections of each graph and three
//! distances of increasing strictness.
//!
//! ```
//! use narrative_iaa::{
//!     alpha_for_representation, AnnotationMatrix, NarrativeGraph, RelationLabel,
//!     RepresentationKind, Tier, Triple,
//! };
//!
//! let g = |r| NarrativeGraph::from_iter([Triple::new("Wages", r, "Inflation")]);
//! let m = AnnotationMatrix::from_rows(vec![
//!     vec![g(RelationLabel::Increases).into(), g(RelationLabel::Increases).into()],
//!     vec![g(RelationLabel::Decreases).into(), g(RelationLabel::Decreases).into()],
//! ])?;
//! let r = alpha_for_representation(&m, RepresentationKind::Relations, Tier::Strict, &"Inflation".into())?;
//! assert_eq!(r.alpha, 1.0);
//! # Ok::<(), narrative_iaa::Error>(())
//! ```

pub mod analysis;
pub mod corpus;
pub mod distance;
mod error;
pub mod model;
pub mod reliability;
pub mod representations;

pub use analysis::{
    factorial_table, full_agreement_by_label, generate_synthetic_corpus, least_agreed_triples,
    one_way_anova, select_task2_documents, CausalTreeModel, NoiseRates, ReliabilityReport,
    StatTestResult, SynthConfig,
};
pub use corpus::{load_corpus, parse_corpus, CorpusFile, LoadOptions, LoadedCorpus};
pub use distance::{DistanceSpec, Metric, Tier};
pub use error::{Error, Result};
pub use model::{
    AnnotationMatrix, AnnotationValue, CategorySystem, EventLabel, NarrativeGraph, RelationLabel,
    Supercategory, Triple, ValueKind,
};
pub use reliability::{alpha_for_representation, krippendorff_alpha, AlphaResult};
pub use representations::RepresentationKind;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/data-model.md")]
    mod data_model {}
    #[doc = include_str!("../../../book/src/representations.md")]
    mod representations {}
    #[doc = include_str!("../../../book/src/distances.md")]
    mod distances {}
    #[doc = include_str!("../../../book/src/alpha.md")]
    mod alpha {}
    #[doc = include_str!("../../../book/src/analysis.md")]
    mod analysis {}
    #[doc = include_str!("../../../book/src/corpus-format.md")]
    mod corpus_format {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
