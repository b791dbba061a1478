//! Subword reversing for triangular positive presentations, and the
//! analyses built on it: ordering verdicts with replayable certificates,
//! order and word-problem decisions, parametrised families and a census of
//! two-generator presentations.

pub mod analysis;
pub mod census;
pub mod decision;
pub mod families;
pub mod presentation;
pub mod reversing;
pub mod words;

pub use presentation::{Presentation, Relation, RelationTable, TriangularStructure};
pub use reversing::{Budget, ReversingOutcome};
pub use words::{Alphabet, Letter, PositiveWord, SignedLetter, SignedWord};
