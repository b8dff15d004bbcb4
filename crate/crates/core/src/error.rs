use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{}vertex {vertex} out of range for graph on {n} vertices", line_prefix(*.line))]
    VertexOutOfRange {
        vertex: usize,
        n: usize,
        line: Option<usize>,
    },

    #[error("{}self-loop at vertex {vertex}", line_prefix(*.line))]
    SelfLoop { vertex: usize, line: Option<usize> },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty vertex set: induced subgraph undefined")]
    EmptyVertexSet,

    #[error("link undefined at (v={v}, r={r}): sphere is empty")]
    EmptyLink { v: usize, r: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph needs at least {needed} vertices, has {n}")]
    TooSmall { n: usize, needed: usize },

    #[error("graph is not regular (degrees range over {min}..={max})")]
    NotRegular { min: usize, max: usize },

    #[error("{family}: {message}")]
    InvalidParameter { family: String, message: String },

    #[error("expansion undefined: no admissible S")]
    ExpansionUndefined,

    #[error("graph on {n} vertices exceeds the exact cap {cap}; use expansion_upper_bound")]
    ExactCapExceeded { n: usize, cap: usize },

    #[error("no simple {d}-regular graph on {n} vertices found after {attempts} attempts")]
    RetryLimit { n: usize, d: usize, attempts: usize },

    #[error("infeasible enumeration: {0}")]
    Infeasible(String),
}

fn line_prefix(line: Option<usize>) -> String {
    match line {
        Some(l) => format!("line {l}: "),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn param(family: &str, message: impl Into<String>) -> Self {
        Error::InvalidParameter {
            family: family.to_string(),
            message: message.into(),
        }
    }
}
