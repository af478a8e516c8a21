use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("extension degree {0} out of range 1..=24")]
    DegreeOutOfRange(u32),

    #[error("field of order {p}^{k} is too large to represent")]
    FieldTooLarge { p: u64, k: u32 },

    #[error("cannot parse field element {0:?}")]
    Parse(String),

    #[error("denominator of {0} is divisible by the characteristic")]
    BadDenominator(String),

    #[error("matrix entries come from different fields")]
    MixedFields,

    #[error("series is zero to known precision")]
    ZeroSeries,

    #[error("singular curve: discriminant vanishes")]
    SingularCurve,

    #[error("point is not on the curve")]
    NotOnCurve,

    #[error("field too large for exhaustive enumeration ({0} elements)")]
    EnumerationTooLarge(String),

    #[error("expansion precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("invalid chart point: {0}")]
    ChartPoint(String),

    #[error("no nontrivial cocycle found up to cutoff {0}")]
    CocycleNotFound(usize),

    #[error("section space unstable under cutoff change: {0}")]
    CutoffInstability(String),

    #[error("class is torsion: {0}")]
    Torsion(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("bad reduction at p = {0}")]
    BadReduction(u64),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("job {id}: {source}")]
    Job { id: String, source: Box<Error> },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
