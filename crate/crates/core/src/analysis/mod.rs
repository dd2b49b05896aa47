//! The evaluation pipeline built on top of alpha: document selection, the
//! factorial reliability table, disagreement localization, and synthetic data.

mod disagreement;
pub mod stats;
mod synth;
mod table;
mod task1;

pub use disagreement::{least_agreed_triples, LeastAgreedOccurrence, LeastAgreedTriple};
pub use stats::{one_way_anova, student_t_test, PairwiseTTest, StatTestResult};
pub use synth::{
    generate_synthetic_corpus, perturb, CausalTreeModel, NoiseRates, SynthConfig, TruthModel,
};
pub use table::{factorial_table, CellError, FactorialCell, ReliabilityReport, RowSummary};
pub use task1::{
    full_agreement_by_label, select_task2_documents, FullAgreementReport, LabelAgreement,
    Resolution, Task2Selection, UnitResolution, CAUSE_DOMINANT, NON_RELATED, RELATED, TASK1_LABELS,
};
