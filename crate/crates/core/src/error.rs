//! Error type shared by every module of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building or probing states.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A non-finite number reached a constructor or operation.
    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    /// An argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The state collapsed to (numerically) the zero vector.
    #[error("state has vanishing norm (norm_sq = {norm_sq:.3e})")]
    ZeroState { norm_sq: f64 },

    /// An operation that contracts on normalized input got something else.
    #[error("operation requires a normalized state (norm_sq = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    /// A heralding projection retained essentially no amplitude.
    #[error("herald outcome has vanishing probability ({probability:.3e})")]
    ZeroProbability { probability: f64 },

    /// A peak search found no structure to lock onto.
    #[error("profile is flat over the search window (spread = {spread:.3e})")]
    FlatProfile { spread: f64 },

    /// A photon-number truncation left too much mass near the cutoff.
    #[error("Fock cutoff {cutoff} is inadequate (tail mass = {tail_mass:.3e})")]
    InadequateCutoff { cutoff: usize, tail_mass: f64 },
}
