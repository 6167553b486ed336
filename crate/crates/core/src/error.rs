use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("letter {letter} out of range for rank {rank}")]
    LetterOutOfRange { letter: usize, rank: usize },
    #[error("word is empty")]
    EmptyWord,
    #[error("word does not contain a reduced expression of the longest element")]
    MissingLongest,
    #[error("word has {len} letters; at most {max} positions are supported")]
    WordTooLong { len: usize, max: usize },
    #[error("position {0} is out of range")]
    PositionOutOfRange(usize),
    #[error("position {0} is not in the facet")]
    NotInFacet(usize),
    #[error("no flip partner for position {0}")]
    NoFlip(usize),
    #[error("diagonal ({a},{b}) is not {k}-relevant in a {m}-gon")]
    IrrelevantDiagonal { a: usize, b: usize, k: usize, m: usize },
    #[error("instance k={k}, n={n} exceeds the brute-force guard (kn <= {limit})")]
    TooLarge { k: usize, n: usize, limit: usize },
    #[error("move {0} is not applicable")]
    InapplicableMove(String),
    #[error("factor at {0} is not a c-sorted triangle")]
    NotATriangle(usize),
    #[error("letter index {0} out of range for insertion")]
    InsertionOutOfRange(usize),
    #[error("words are not equivalent under commutations")]
    NotCommutationEquivalent,
    #[error("coefficient must be positive, got {0}")]
    NonPositiveCoefficient(String),
    #[error("doubling coefficients must have opposite signs")]
    SameSignDoubling,
    #[error("unknown construction `{0}`")]
    UnknownConstruction(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("facets are not adjacent")]
    NotAdjacent,
    #[error("base facet is rank deficient")]
    RankDeficientBase,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
