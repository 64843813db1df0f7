use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("zero generator index")]
    ZeroGenerator,

    #[error("generator index {index} needs at least {} strands, but the braid has {strands}", index + 1)]
    GeneratorOutOfRange { index: usize, strands: usize },

    #[error("split index {k} out of range for a braid on {strands} strands (need 1 <= k <= strands - 2)")]
    SplitIndexOutOfRange { k: usize, strands: usize },

    #[error("summands must each have at least 2 strands to share a Seifert circle")]
    NoSharedStrand,

    #[error("malformed shuffle: {0}")]
    MalformedShuffle(String),

    #[error("twist count {0} is odd; plumbing twists must be even")]
    OddTwist(i64),

    #[error("rewrite rule not applicable: {0}")]
    RuleNotApplicable(String),

    #[error("position {position} out of range for a word of length {len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("basepoint strand {basepoint} out of range for {strands} strands")]
    InvalidBasepoint { basepoint: usize, strands: usize },

    #[error("closure has {components} components, expected a knot")]
    NotAKnot { components: usize },

    #[error("unknown knot `{0}`")]
    UnknownKnot(String),

    #[error("gon size {0} is odd")]
    OddGon(u64),

    #[error("gon merge needs at least one summing disk")]
    EmptyGonList,

    #[error("data line {line}: {message}")]
    InvalidData { line: usize, message: String },

    #[error("knot table validation failed: {0}")]
    TableValidation(String),

    #[error("missing distance data: {0}")]
    MissingData(String),

    #[error("inconsistent bounds: lower {lower} exceeds upper {upper}")]
    InconsistentBounds { lower: u64, upper: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
