use thiserror::Error;

/// Errors raised by the library. Checked-property failures that carry a
/// witness (a non-median triple, a non-commuting pair) are errors too, so
/// callers can map them onto exit codes directly.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("wall {wall} has an empty halfspace")]
    EmptyHalfspace { wall: usize },
    #[error("wall {wall} is not a partition of the ground set: {detail}")]
    NotAPartition { wall: usize, detail: String },
    #[error("walls {first} and {second} are the same partition")]
    DuplicateWall { first: usize, second: usize },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not median: triple ({}, {}, {}) {reason}", .triple.0, .triple.1, .triple.2)]
    NotMedian {
        triple: (usize, usize, usize),
        reason: String,
    },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("vertex set is empty")]
    EmptySet,

    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("isometries act on different complexes: {0}")]
    MismatchedComplex(String),
    #[error("invalid grid map: {0}")]
    InvalidGridMap(String),
    #[error("isometry is not loxodromic")]
    NotLoxodromic,
    #[error("isometries `{0}` and `{1}` do not commute")]
    NotCommuting(String, String),
    #[error("no power m <= {0} gives a common minset point")]
    NotFound(u32),
    #[error("action is not free on the sample: word {0:?} is {1}")]
    NotFreeOnSample(Vec<i64>, String),

    #[error("{what} exceeds cap {cap}")]
    TooLarge { what: String, cap: usize },

    #[error("invalid document: {0}")]
    Document(String),
}

impl Error {
    pub fn too_large(what: impl Into<String>, cap: usize) -> Self {
        Error::TooLarge {
            what: what.into(),
            cap,
        }
    }

    /// True for resource-cap errors.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::TooLarge { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
