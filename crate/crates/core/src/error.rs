use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a polygon needs at least 3 sides, got {0}")]
    InvalidSides(u32),

    #[error("curved hexagonal packings need sigma to be a multiple of 6 (or a circle), got {0}")]
    NotMultipleOfSix(u32),

    #[error("number of shells must be at least 1")]
    ZeroShells,

    #[error("border chain for sigma={sigma}, k={k} could not be bracketed")]
    NoSolution { sigma: u32, k: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("DNA is inconsistent with the border solution: {0}")]
    InconsistentDna(String),

    /// A contact path whose chord angles are not a permutation of the border
    /// angles shifted by pi/3.
    #[error("conjecture violation: chord angle {angle:.12} (step {step}) matches no border building block")]
    ConjectureViolation { step: usize, angle: f64 },

    #[error("enumeration would produce {count} configurations, above the cap of {cap}")]
    CapExceeded { count: String, cap: usize },

    #[error("circles do not intersect (center distance {distance} >= 2 * {radius})")]
    NoIntersection { distance: f64, radius: f64 },

    #[error("circle centers coincide")]
    Coincident,

    #[error("construction failed in shell {shell} at position {position}")]
    ConstructionFailed { shell: usize, position: usize },

    #[error("no contact path of length {k} from the fundamental vertex to the center")]
    NoPath { k: usize },

    #[error("no disk sits at the fundamental vertex")]
    AmbiguousStart,

    #[error("expected {expected} disks for {k} shells, got {actual}")]
    ShellCountMismatch { k: usize, expected: usize, actual: usize },

    #[error("two disks coincide (indices {0} and {1})")]
    CoincidentPoints(usize, usize),

    #[error("non-finite value during minimization (check lambda/s scaling)")]
    NonFinite,

    #[error("schema mismatch: expected `{expected}`, found `{found}`")]
    SchemaMismatch { expected: String, found: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable tag, used in CLI error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidSides(_) => "InvalidSides",
            Error::NotMultipleOfSix(_) => "NotMultipleOfSix",
            Error::ZeroShells => "ZeroShells",
            Error::NoSolution { .. } => "NoSolution",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::InconsistentDna(_) => "InconsistentDna",
            Error::ConjectureViolation { .. } => "ConjectureViolation",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::NoIntersection { .. } => "NoIntersection",
            Error::Coincident => "Coincident",
            Error::ConstructionFailed { .. } => "ConstructionFailed",
            Error::NoPath { .. } => "NoPath",
            Error::AmbiguousStart => "AmbiguousStart",
            Error::ShellCountMismatch { .. } => "ShellCountMismatch",
            Error::CoincidentPoints(..) => "CoincidentPoints",
            Error::NonFinite => "NonFinite",
            Error::SchemaMismatch { .. } => "SchemaMismatch",
            Error::Parse(_) => "ParseError",
            Error::Io(_) => "Io",
        }
    }
}
