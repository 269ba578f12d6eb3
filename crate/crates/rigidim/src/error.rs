use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("relation is not length-homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("relation is not admissible: {0}")]
    NotAdmissible(String),
    #[error("algebra is not finite-dimensional: paths survive past length {max}")]
    NotFiniteDimensional { max: usize },
    #[error("modules belong to different algebras")]
    AlgebraMismatch,
    #[error("characteristic {p} is too small for the trace-form radical (need p > {dim})")]
    UnsupportedCharacteristic { p: u64, dim: usize },
    #[error("endomorphism ring of summand {summand} is not split local")]
    NotSplitLocal { summand: usize },
    #[error("summands {a} and {b} are isomorphic; the summand list must be basic")]
    NonBasic { a: usize, b: usize },
    #[error("module is not a generator: no summand is isomorphic to {missing}")]
    NotGenerator { missing: String },
    #[error("module is not a generator-cogenerator: no summand is isomorphic to {missing}")]
    NotGeneratorCogenerator { missing: String },
    #[error("algebra is not self-injective")]
    NotSelfInjective,
    #[error("algebra is self-injective; the bound is vacuous")]
    SelfInjective,
    #[error("indecomposable list is not marked complete")]
    IncompleteList,
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::DimensionMismatch(_)
            | Error::NotHomogeneous(_)
            | Error::NotAdmissible(_)
            | Error::Io(_) => 2,
            Error::Inconclusive(_) => 4,
            _ => 3,
        }
    }
}
