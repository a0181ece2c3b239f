use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Lie datum: {0}")]
    InvalidDatum(String),
    #[error("letter {letter} at position {position} is outside 1..={rank}")]
    LetterOutOfRange { position: usize, letter: usize, rank: usize },
    #[error("word is not reduced: letter at position {0} undoes an earlier inversion")]
    NotReduced(usize),
    #[error("word has length {len} but the longest element has length {expected}")]
    NotLongest { len: usize, expected: usize },
    #[error("root {0} does not occur in the word")]
    MissingRoot(usize),

    #[error("node {0} is frozen and cannot be mutated")]
    MutationAtFrozen(String),
    #[error("unknown node {0}")]
    UnknownNode(String),
    #[error("duplicate node label {0}")]
    DuplicateLabel(String),
    #[error("multipliers differ across glued pair {0} ~ {1}")]
    MultiplierMismatch(String, String),
    #[error("gluing is not injective at {0}")]
    GluingNotInjective(String),
    #[error("gluing must pair frozen nodes, {0} is not frozen")]
    GluingUnfrozen(String),
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
    #[error("malformed input: {0}")]
    Parse(String),

    #[error("operands live in different quantum tori")]
    SeedMismatch,
    #[error("coefficient not divisible by {0}")]
    NotDivisible(String),
    #[error("element is not exactly divisible by the given factor")]
    NotExactlyDivisible,
    #[error("commutation exponent {0} is not an integer")]
    NonIntegerCommutation(String),

    #[error("consecutive path monomials {0} and {1} do not q-commute with a supported exponent")]
    ChainNotQSquared(String, String),
    #[error("no E-path data for root {0}")]
    EPathUnavailable(usize),
    #[error("factor {0} is not a pushed-forward cluster variable")]
    NoMatchingNode(usize),
    #[error("node {0} has no polarization")]
    UnpolarizedNode(String),

    #[error("unknown {kind} '{name}'")]
    UnknownStrategy { kind: &'static str, name: String },
    #[error("golden data: {0}")]
    Golden(String),
}

pub type Result<T> = std::result::Result<T, Error>;
