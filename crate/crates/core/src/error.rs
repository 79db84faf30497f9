//! Crate-wide error type.
//!
//! Every fallible operation in the library returns [`Result`]. The variants
//! are grouped by the layer that raises them; the CLI maps [`Error::Input`]
//! and [`Error::UnknownSuite`] to the usage exit code and everything else to
//! the domain-error exit code.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The polynomial text does not follow the grammar.
    #[error("syntax error at position {pos}: {msg}")]
    Syntax {
        /// Byte offset into the input text.
        pos: usize,
        /// What was expected or found.
        msg: String,
    },
    /// An identifier in the polynomial text is not one of the declared variables.
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable {
        /// The offending identifier.
        name: String,
        /// Byte offset into the input text.
        pos: usize,
    },
    /// A coefficient such as `1/0` or `3/` could not be read as a rational.
    #[error("malformed rational at position {pos}: {msg}")]
    MalformedRational {
        /// Byte offset into the input text.
        pos: usize,
        /// Details.
        msg: String,
    },
    /// The declared variable list is invalid (duplicate or bad identifier).
    #[error("invalid variable list: {0}")]
    InvalidVariables(String),
    /// Two polynomials (or tuples) with different numbers of variables were combined.
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch {
        /// Arity of the left operand.
        left: usize,
        /// Arity of the right operand.
        right: usize,
    },
    /// A variable index is not below the arity.
    #[error("variable index {index} out of range for arity {arity}")]
    VariableOutOfRange {
        /// The offending index.
        index: usize,
        /// The polynomial arity.
        arity: usize,
    },
    /// The same variable appears twice in an integration box.
    #[error("variable index {0} appears more than once in the integration box")]
    DuplicateIntegrationVariable(usize),
    /// Tuples must have at least two entries.
    #[error("tuple length must be at least 2, got {0}")]
    TupleTooShort(usize),
    /// Two tuples of different lengths were combined.
    #[error("tuple length mismatch: {left} vs {right}")]
    LengthMismatch {
        /// Length of the left operand.
        left: usize,
        /// Length of the right operand.
        right: usize,
    },
    /// A mixed direction must contain at least one direction.
    #[error("mixed direction path is empty")]
    EmptyPath,
    /// Assignments handed to a specialization do not cover the required variables.
    #[error("specialization must assign every variable except the kept one: {0}")]
    SpecializationCoverage(String),
    /// A precondition of an analysis operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A result that must be a constant still depends on some variable.
    #[error("expected a constant, found a polynomial in remaining variables")]
    NonConstant,
    /// The quadrature did not reach the requested tolerance within its budget.
    #[error("quadrature did not converge: estimate {estimate}, error bound {error_bound}")]
    QuadratureNonConvergence {
        /// Best available estimate.
        estimate: f64,
        /// Estimated absolute error of that estimate.
        error_bound: f64,
    },
    /// An iterative search exceeded the configured iteration cap.
    #[error("iteration cap {0} exceeded")]
    IterationCap(usize),
    /// Unknown verification suite name.
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    /// Malformed tuple file or command-line value.
    #[error("invalid input: {0}")]
    Input(String),
}
