use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: malformed record: {reason}")]
    Malformed { line: usize, reason: String },

    #[error("line {line}: duplicate concept id {id:?}")]
    DuplicateConcept { line: usize, id: String },

    #[error("line {line}: parent {parent:?} of {child:?} is not defined")]
    DanglingParent {
        line: usize,
        child: String,
        parent: String,
    },

    #[error("cycle detected through edge {child:?} -> {parent:?}")]
    Cycle { child: String, parent: String },

    #[error("unknown concept id {0:?}")]
    UnknownConcept(String),

    #[error("fallback concept {0:?} is not defined in the taxonomy")]
    UnknownFallback(String),

    #[error("invalid concept id {id:?}: {reason}")]
    InvalidConceptId { id: String, reason: String },

    #[error("probability not monotone along {child:?} <= {ancestor:?}: p({child}) = {child_p} > p({ancestor}) = {ancestor_p}")]
    NotMonotone {
        child: String,
        ancestor: String,
        child_p: f64,
        ancestor_p: f64,
    },

    #[error("empty model: no tokens were counted")]
    EmptyModel,

    #[error("all common subsumers of {0:?} and {1:?} have zero frequency")]
    DegenerateModel(String, String),

    #[error("no connecting path between {0:?} and {1:?}")]
    NoPath(String, String),

    #[error("predicate word {0:?} was never observed")]
    UnseenWord(String),

    #[error("class {0:?} has conditional probability > 0 but prior 0")]
    InconsistentModel(String),

    #[error("invalid threshold: tau ({tau}) must be >= sigma ({sigma})")]
    InvalidThresholds { tau: f64, sigma: f64 },

    #[error("confidence input {0} outside [0, 1]")]
    ConfidenceOutOfRange(f64),

    #[error("noun group needs at least two distinct words, got {0}")]
    GroupTooSmall(usize),

    #[error("sense {word:?}/{sense:?} has no annotation")]
    Unannotated { word: String, sense: String },

    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(String),

    #[error("word {0:?} has no senses and no fallback is configured")]
    UnknownWord(String),
}

impl Error {
    /// True for failures caused by inputs that could not be loaded or parsed.
    pub fn is_load_error(&self) -> bool {
        matches!(
            self,
            Error::Malformed { .. }
                | Error::DuplicateConcept { .. }
                | Error::DanglingParent { .. }
                | Error::Cycle { .. }
                | Error::UnknownConcept(_)
                | Error::UnknownFallback(_)
                | Error::InvalidConceptId { .. }
                | Error::NotMonotone { .. }
                | Error::EmptyModel
        )
    }

    /// True for failures caused by words missing from the vocabulary.
    pub fn is_vocabulary_error(&self) -> bool {
        matches!(self, Error::UnknownWord(_) | Error::UnseenWord(_))
    }
}
