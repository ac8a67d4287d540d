use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("identification creates a self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("malformed rotation system at vertex {vertex}: {reason}")]
    MalformedRotation { vertex: usize, reason: String },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is not planar")]
    NonPlanar,

    #[error("invalid input: {0}")]
    Input(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },

    /// A constructive routine failed on input that met its preconditions.
    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
