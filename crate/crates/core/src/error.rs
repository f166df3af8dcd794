use thiserror::Error;

/// Errors raised by the character-variety and polynomial routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not unimodular: |det - 1| = {deviation:e}")]
    NonUnimodular { deviation: f64 },

    #[error("pairwise eta values disagree by {spread:e}")]
    EtaInconsistent { spread: f64 },

    #[error("trace parameter is on the excluded locus t^2 = 3 (|t^2 - 3| = {margin:e})")]
    ExcludedTrace { margin: f64 },

    #[error("degenerate input: {what} has margin {margin:e}")]
    DegenerateInput { what: &'static str, margin: f64 },

    #[error("sextic root is excluded: {what} has margin {margin:e}")]
    ExcludedRoot { what: &'static str, margin: f64 },

    #[error("numerical rank is ambiguous: singular value {value:e} near threshold {threshold:e}")]
    RankAmbiguous { value: f64, threshold: f64 },

    #[error("pair is reducible: commutator trace is within {margin:e} of 2")]
    ReduciblePair { margin: f64 },

    #[error("reconstructed x3 is not unimodular: |det - 1| = {deviation:e}")]
    NonUnimodularResult { deviation: f64 },

    #[error("unsupported matrix size {0}; only 2x2 and 4x4 are supported")]
    UnsupportedSize(usize),

    #[error("not a representation: relator residuals ({0:e}, {1:e})")]
    NotARepresentation(f64, f64),

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("invalid component id `{0}`")]
    InvalidComponent(String),

    #[error("branch index {index} out of range for {count} roots")]
    BranchOutOfRange { index: usize, count: usize },

    #[error("sampler for {component} found no admissible point after {attempts} draws")]
    SamplingExhausted { component: String, attempts: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
