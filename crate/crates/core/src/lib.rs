//! Homomorphism-homogeneity toolkit.
//!
//! Finite graphs with exact structural quantities ([`analysis`]), a
//! backtracking morphism search ([`morphism`]), canonical codes and
//! isomorphism-free enumeration ([`canon`]), XY-homogeneity deciders
//! ([`homogeneity`]), countable graphs given by adjacency oracles
//! ([`presentation`]) and lemma-checking suites ([`verify`]).

pub mod analysis;
pub mod bitset;
pub mod canon;
pub mod error;
pub mod graph;
pub mod homogeneity;
pub mod io;
pub mod morphism;
pub mod presentation;
pub mod verify;

pub use analysis::{analyze, AnalysisReport};
pub use bitset::VertexSet;
pub use canon::{canonical_code, enumerate_graphs, CanonicalCode};
pub use error::{Error, Result};
pub use graph::{Graph, Polarity};
pub use homogeneity::{decide_hh_conditions, decide_xy, AgePartition, HomogReport};
pub use morphism::{MorphismConstraints, MorphismKind, PartialMap};
pub use presentation::{Family, Presentation, RadoConstruction};
pub use verify::SuiteReport;
