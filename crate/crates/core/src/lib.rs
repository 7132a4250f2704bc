//! Finite multiplicative lattices: construction, validation, primality
//! classes relative to an expansion `δ` and a reduction `φ`, and an
//! exhaustive checker for statements about those classes.

pub mod classify;
pub mod constructions;
pub mod derived;
pub mod dot;
pub mod harness;
pub mod lattice;
pub mod maps;

pub use classify::{classification_report, Class, ClassificationReport, ClassifyError, Condition, Pair};
pub use constructions::{default_corpus, parse_lattice, serialize, Corpus, LatticeSource, ParseError};
pub use lattice::{Axiom, AxiomFailure, ElementId, Lattice, LatticeError, StructureError, ValidationReport};
pub use maps::{DeltaKind, Expansion, Isomorphism, MapError, PhiKind, PhiMap, UnaryMap};
