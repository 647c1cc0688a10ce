use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("universe of {size} symbols exceeds the configured maximum of {max}")]
    UniverseTooLarge { size: usize, max: usize },
    #[error("operands live over different symbol universes")]
    MixedUniverse,
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol index {0} is outside the universe")]
    IndexOutOfRange(usize),

    #[error("node set is not a sieve on its root: {0}")]
    NotASieve(String),
    #[error("sieve generator does not contain the root")]
    GeneratorBelowRoot,
    #[error("node set is not dense for the theory")]
    NotDense,

    #[error("rule 2: premise is not contained in the enlarged premise")]
    PremiseNotContained,
    #[error("rule 3: no sub-derivation supplied for disjunct {0}")]
    MissingSubderivation(String),
    #[error("rule 3: sub-derivation premise does not match its disjunct: {0}")]
    PremiseMismatch(String),
    #[error("theory is not degenerate; no refutation exists")]
    NotDegenerate,
    #[error("degeneracy trace is inconsistent: {0}")]
    InvalidTrace(String),

    #[error("tables do not define a commutative unital ring: {0}")]
    NotARing(String),
    #[error("ring must have at least two elements")]
    TrivialRing,
    #[error("map is not surjective")]
    NotSurjective,
    #[error("map has an empty codomain")]
    EmptyCodomain,
    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("construction is not downward stratified for the given order")]
    NotStratified,
    #[error("invalid inductive construction: {0}")]
    InvalidConstruction(String),

    #[error("syntax error at {line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("certificate theory hash does not match the theory")]
    HashMismatch,
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
}
