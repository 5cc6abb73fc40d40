//! Taxonomic semantic similarity over IS-A concept DAGs.
//!
//! The crate estimates concept probabilities from corpus counts, measures
//! similarity between concepts and words by shared information content
//! (alongside edge-counting, normalized path, and depth-ratio baselines),
//! and applies those measures to two batch ambiguity problems: bracketing
//! noun-phrase coordinations and assigning confidences to the senses of
//! nouns grouped by topic.

pub mod coordination;
pub mod error;
pub mod evalharness;
pub mod probmodel;
pub mod selection;
pub mod sensegroup;
pub mod similarity;
pub mod taxonomy;

pub use error::{Error, Result};
pub use taxonomy::{ConceptId, LoadOptions, Taxonomy};
