use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed user input (empty arrays, bad labels, non-finite values, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("shape mismatch: {what} has length {found}, expected {expected}")]
    ShapeMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("consecutive duplicate point {point} at bolt position {position}")]
    ConsecutiveDuplicate { position: usize, point: usize },

    /// The required class equality between `points[position]` and the next point fails.
    #[error("broken bolt chain at position {position}")]
    BrokenChain { position: usize },

    #[error("bolt cannot be closed: {0}")]
    NotClosable(String),

    #[error("bolt is not closed")]
    NotClosed,

    /// Residual signs along the bolt fit neither alternating parity.
    /// `first` and `second` are the first pair of bolt positions in conflict.
    #[error("residual signs do not alternate: positions {first} and {second} conflict")]
    SignViolation { first: usize, second: usize },

    #[error("residual is identically zero")]
    ZeroResidual,

    #[error("enumeration guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("space is not a product (grid) space")]
    NotProductSpace,

    #[error("alternating sweep did not converge: error {error}, dual value {dual_value}, after {sweeps} sweeps")]
    NonConvergence {
        error: f64,
        dual_value: f64,
        sweeps: usize,
    },

    /// Failure inside the simplex solver; must not happen on valid inputs.
    #[error("internal solver failure: {0}")]
    Solver(String),
}

pub type Result<T> = std::result::Result<T, Error>;
