use thiserror::Error;

/// Errors produced anywhere in the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph order {0} outside 1..=64")]
    InvalidOrder(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{what} exceeds ceiling {ceiling} (got {got})")]
    Ceiling {
        what: &'static str,
        ceiling: usize,
        got: usize,
    },
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("search infeasible: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
