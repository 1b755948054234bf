//! Error type shared by model evaluation, optimization, sweeps, and input parsing.

use thiserror::Error;

/// Everything that can go wrong between parsing an input and writing a result.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter or force violated its domain constraint. The message names
    /// the offending quantity and the constraint it broke.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A flux or current evaluation produced a non-finite value (overflow, or a
    /// degenerate denominator). Never surfaced as an infinity in results.
    #[error("evaluation failed: {0}")]
    EvalFailure(String),

    /// The optimization bracket holds no positive objective values, so there is
    /// no interior maximum to find.
    #[error("bracket failure: {0}")]
    BracketFailure(String),

    /// The pre-scan found more than one interior peak; golden-section search
    /// would silently converge to an arbitrary one, so we refuse instead.
    #[error("objective is not unimodal on the bracket: {0}")]
    MultiModal(String),

    /// The golden-section loop hit its iteration cap before the bracket shrank
    /// to tolerance.
    #[error("no convergence after {iterations} iterations (bracket width {width:e})")]
    NoConvergence { iterations: usize, width: f64 },

    /// Every grid point of a sweep failed; there is nothing to report.
    #[error("sweep failed: {0}")]
    SweepFailure(String),

    /// A configuration file or CLI argument could not be parsed.
    #[error("config error: {0}")]
    Config(String),

    /// An output file could not be written.
    #[error("i/o error: {0}")]
    Io(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
