use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not an odd prime below 2^31")]
    InvalidModulus(u64),

    #[error("modulus {modulus} too small: need p > {required} for this construction")]
    ModulusTooSmall { modulus: u32, required: u64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degree {requested} is beyond the cutoff {cutoff}")]
    BeyondCutoff { requested: usize, cutoff: usize },

    #[error("Hilbert function has not stabilized by the cutoff degree {0}; raise the cutoff")]
    CutoffTooSmall(usize),

    #[error("{0}")]
    Containment(String),

    #[error("form is a zero divisor on the curve: {0}")]
    ZeroDivisor(String),

    #[error("genericity failure during {stage}: {detail}")]
    Genericity { stage: String, detail: String },

    #[error("disjointness violated: {0} shared point(s)")]
    Overlap(usize),

    #[error("invalid staircase: {0}")]
    Staircase(String),

    #[error("invalid linkage input: {0}")]
    InvalidLink(String),

    #[error("truncation search exhausted {0} retries")]
    TruncationExhausted(usize),

    #[error("invalid parameters for {scenario}: {detail}")]
    InvalidParameters { scenario: String, detail: String },

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("I/O failure: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
