//! Graph and annotation data model.

mod category;
mod graph;
mod matrix;
mod validate;

pub use category::{CategoryEntry, CategorySystem, CategorySystemFile, Supercategory};
pub use graph::{EventLabel, NarrativeGraph, RelationLabel, Triple};
pub use matrix::{AnnotationMatrix, AnnotationValue, ValueKind};
pub use validate::{
    validate_graph, validate_graph_with, validate_triples, ValidationOptions, ValidationResult,
    Violation,
};
