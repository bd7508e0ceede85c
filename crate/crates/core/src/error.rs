//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Bit count `m` must be at least 1.
    #[error("bit count m must be >= 1")]
    ZeroBitCount,

    /// A per-bit probability hit 0 or 1; such branches carry no information
    /// and the constellation should be re-specified with a smaller `m`.
    #[error("degenerate bit probability b[{index}] = {value}; all entries must lie strictly in (0, 1)")]
    DegenerateBitProbability { index: usize, value: f64 },

    #[error("matrix has {rows} rows; expected a power of two")]
    NotPowerOfTwoRows { rows: usize },

    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    #[error("non-finite value in {context}")]
    NonFinite { context: String },

    /// Labeling rows must be distinct codewords, i.e. a permutation of
    /// the integers `0..M`.
    #[error("invalid labeling: {context}")]
    InvalidLabeling { context: String },

    #[error("malformed constellation document: {context}")]
    MalformedDocument { context: String },

    #[error("unknown catalog name {name:?}")]
    UnknownCatalogName { name: String },

    #[error("catalog {name:?} does not support m = {m}")]
    UnsupportedCatalogSize { name: String, m: u32 },

    /// All-zero alphabet: Es = 0 leaves the GMI slope undefined.
    #[error("alphabet has zero average energy; low-GMI parameters are undefined")]
    ZeroEnergy,

    #[error("SNR must be positive and finite, got {snr}")]
    InvalidSnr { snr: f64 },

    #[error("quadrature order {order} is too small; need at least {min}")]
    QuadratureOrderTooSmall { order: usize, min: usize },

    #[error("Monte-Carlo sample count {samples} is too small; need at least {min}")]
    TooFewSamples { samples: u64, min: u64 },

    #[error("AWGN capacity is only defined here for 1 or 2 dimensions, got {dims}")]
    UnsupportedDims { dims: usize },

    #[error("SNR grid must be strictly increasing")]
    InvalidGrid,
}

impl Error {
    /// True for errors that indicate malformed input rather than a numeric
    /// failure during evaluation. The CLI maps the former to exit code 1 and
    /// the latter to exit code 2.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::ZeroEnergy | Error::InvalidSnr { .. })
    }
}
