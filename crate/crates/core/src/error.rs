use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty degree sequence")]
    Empty,
    #[error("odd degree sum {0}: no forest realization exists")]
    OddSum(usize),
    #[error("degree sum {sum} exceeds {bound}: no forest realization exists")]
    TooManyEdges { sum: usize, bound: usize },
    #[error("sequence cannot lose a K2 component: {0}")]
    NotPeelable(String),
    #[error("cannot parse degree sequence: {0}")]
    Parse(String),

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0}, {1}) closes a cycle")]
    CycleDetected(usize, usize),
    #[error("vertex label {label} out of range for order {n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("forest is not connected")]
    NotConnected,
    #[error("malformed forest file: {0}")]
    Format(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("cannot split {n} vertices into {components} components")]
    InfeasibleSplit { n: usize, components: usize },

    #[error("sequence has {len} non-zero entries, above the enumeration cap {cap}")]
    SizeCapExceeded { len: usize, cap: usize },
}

impl Error {
    /// Short variant name, used by the CLI when reporting failures.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Empty => "Empty",
            Error::OddSum(_) => "OddSum",
            Error::TooManyEdges { .. } => "TooManyEdges",
            Error::NotPeelable(_) => "NotPeelable",
            Error::Parse(_) => "Parse",
            Error::SelfLoop(_) => "SelfLoop",
            Error::DuplicateEdge(..) => "DuplicateEdge",
            Error::CycleDetected(..) => "CycleDetected",
            Error::LabelOutOfRange { .. } => "LabelOutOfRange",
            Error::NotConnected => "NotConnected",
            Error::Format(_) => "Format",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::InfeasibleSplit { .. } => "InfeasibleSplit",
            Error::SizeCapExceeded { .. } => "SizeCapExceeded",
        }
    }
}
