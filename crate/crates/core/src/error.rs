use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("invalid arity: {0}")]
    InvalidArity(String),

    #[error("ring would have {size} elements, above the cap of {cap}")]
    TooLarge { size: usize, cap: usize },

    #[error("{0} belongs to a different ring")]
    Ownership(&'static str),

    #[error("zero is generated under strict mode: {chain} = 0")]
    DegenerateSet { chain: String },

    #[error("enumeration cap exceeded: {0}")]
    EnumerationCap(String),

    #[error("ring axiom violated: {0}")]
    Axiom(String),

    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("unknown proposition `{0}`")]
    UnknownProposition(String),

    #[error("{0}")]
    Usage(String),

    #[error("unknown search target `{0}`")]
    UnknownTarget(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
