use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not square ({0}x{1})")]
    NonSquare(usize, usize),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("element is not in the algebra `{0}`")]
    NotInAlgebra(String),
    #[error("elements belong to different algebras (`{0}` vs `{1}`)")]
    ParentMismatch(String, String),
    #[error("closure exceeded the dimension cap {0}")]
    DimensionCap(usize),
    #[error("map is not multiplicative on basis pair ({0}, {1})")]
    NotMultiplicative(usize, usize),
    #[error("map does not send 1 to 1")]
    NotUnital,
    #[error("2-cell endpoints do not match: {0}")]
    EndpointMismatch(String),
    #[error("invalid piecewise-linear map: {0}")]
    InvalidPl(String),
    #[error("image escapes the codomain: {0}")]
    ImageEscapes(String),
    #[error("map is not surjective onto its codomain")]
    NotSurjective,
    #[error("map is not supported in the interior: {0}")]
    NotInteriorSupported(String),
    #[error("endpoint is not fixed: {0}")]
    EndpointNotFixed(String),
    #[error("lorentz parameter {0} must satisfy |u| < 1")]
    LorentzRange(String),
    #[error("site {0} is not mapped onto a lattice site")]
    SiteIncompatible(String),
    #[error("site count {0} exceeds the cap {1}")]
    SiteCap(usize, usize),
    #[error("no invertible element in the solution space: {0}")]
    NoUnitFound(String),
    #[error("state is not positive definite")]
    NotPositiveDefinite,
    #[error("state does not have trace 1")]
    TraceNotOne,
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("invalid hypothesis: {0}")]
    Hypothesis(String),
    #[error("model error: {0}")]
    Model(String),
    #[error("internal certification failure: {0}")]
    Internal(String),
    #[error("input error: {0}")]
    Input(String),
}

impl Error {
    pub fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse { offset, message: message.into() }
    }
}
