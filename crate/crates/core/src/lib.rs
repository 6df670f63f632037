//! Graph machinery for χ-boundedness experiments: exact colouring, induced tree
//! search, certificate validators, threshold constants and gadget constructions.

pub mod budget;
pub mod certificates;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod harness;
pub mod invariants;
pub mod io;
pub mod iso;
pub mod machinery;
pub mod thresholds;
pub mod tree_zoo;

pub use budget::Budget;
pub use certificates::{Certificate, StoredCertificate};
pub use error::{Error, Result, Verdict, Violation};
pub use graph::{Graph, Radius, Vertex, VertexSet};
pub use harness::{run_experiment, ExperimentConfig, Report};
pub use invariants::Coloring;
pub use iso::Embedding;
pub use thresholds::{lemma_threshold, Bound, LemmaId, ThresholdParams};
