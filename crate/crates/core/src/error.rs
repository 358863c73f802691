use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Clone, Debug, Error)]
pub enum Error {
    /// Two objects live in polynomial rings with different variable counts.
    #[error("ambient dimension mismatch: {0} vs {1} variables")]
    DimensionMismatch(usize, usize),

    #[error("variable index {index} out of range for {n} variables")]
    VariableOutOfRange { index: usize, n: usize },

    /// An operation produced a pair I/J with I = J, which is no longer a
    /// proper quotient.
    #[error("degenerate quotient: {0}")]
    DegenerateQuotient(String),

    /// The requested invariant is undefined for this input (for example the
    /// lcm number of a pair with no generators at all).
    #[error("undefined invariant: {0}")]
    Undefined(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal consistency check failed. This indicates a bug or an
    /// object constructed outside its documented invariants.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// A configurable size cap (lattice elements, poset points, faces) was hit.
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    /// The order-dimension search exhausted `d_max` without finding a realizer.
    #[error("order dimension exceeds d_max = {d_max}")]
    DimBoundExceeded { d_max: usize },

    /// A deterministic search-node budget ran out before the search finished.
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
