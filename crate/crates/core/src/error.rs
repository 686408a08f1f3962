use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not a group action: {0}")]
    NotAnAction(String),
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid natural isomorphism: {0}")]
    InvalidNaturalIso(String),
    #[error("unknown object {0}")]
    UnknownObject(usize),
    #[error("codomain mismatch: {0}")]
    CodomainMismatch(String),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("invalid local system at morphism {morphism}: {reason}")]
    InvalidSystem { morphism: usize, reason: String },
    #[error("invalid system map: {0}")]
    InvalidMap(String),
    #[error("maps are not composable: {0}")]
    Composability(String),
    #[error("not an equivalence: {0}")]
    NotAnEquivalence(String),
    #[error("incoherent square: {0}")]
    IncoherentSquare(String),
    #[error("internal axiom failure: {0}")]
    InternalAxiomFailure(String),
    #[error("norm map is not invertible: {0}")]
    NonInvertibleNorm(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("interface mismatch: {0}")]
    InterfaceMismatch(String),
    #[error("inner product carrier mismatch: {0}")]
    CarrierMismatch(String),
    #[error("invalid inner product: {0}")]
    InvalidInnerProduct(String),
    #[error("invalid fundamental class: {0}")]
    InvalidFundamentalClass(String),
    #[error("twisted classes are not supported here: {0}")]
    TwistedClassUnsupported(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("size limit exceeded: {needed} enumerated tuples, limit {limit}")]
    SizeLimit { needed: u128, limit: u128 },
    #[error("bad character data: {0}")]
    BadCharacterData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
