use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An operation was applied outside its domain (e.g. a horizontal move
    /// on the empty word).
    #[error("domain error: {0}")]
    Domain(String),

    /// Halving was requested on an odd dyadic integer.
    #[error("parity error: {0}")]
    Parity(String),

    /// A structure-recovery query ran out of graph context.
    #[error("insufficient context: oracle exhausted within radius {radius}")]
    InsufficientContext { radius: usize },

    /// A structural invariant that recovery relies on failed; indicates a
    /// broken neighbour oracle.
    #[error("structure error: {0}")]
    Structure(String),

    /// A walk exceeded its step budget before the requested event occurred.
    #[error("step budget of {budget} exhausted")]
    BudgetExceeded { budget: u64 },

    /// An iterative solver stopped before reaching its tolerance.
    #[error("solver did not converge: residual {residual:.3e} after {iterations} iterations")]
    Solver { residual: f64, iterations: u64 },

    /// Per-level normalisation was requested on a level whose values sum
    /// to zero.
    #[error("degenerate level: {0}")]
    DegenerateLevel(String),

    /// A histogram construction would not fit on the requested grid.
    #[error("resolution error: {0}")]
    Resolution(String),
}

pub type Result<T> = std::result::Result<T, Error>;
