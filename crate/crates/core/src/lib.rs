//! Low-SNR analysis of shaped BICM constellations.
//!
//! A BICM constellation here is an alphabet of `M = 2^m` real symbol vectors
//! together with a product-form symbol distribution induced by independent
//! per-bit probabilities. This crate provides the analytical machinery for
//! studying such constellations in the wideband (SNR → 0) regime:
//!
//! - [`constellation`]: core types, the product-form symbol distribution,
//!   labeling normalization to the natural binary code, and a catalog of
//!   reference alphabets (PAM, square QAM, PSK, 8-AMPM, star 8-QAM).
//! - [`hadamard`]: the ±1 Walsh–Hadamard transform of an alphabet, in the
//!   `1/M`-forward, unit-inverse convention used throughout.
//! - [`transform`]: a probability-dependent orthogonal transform that maps a
//!   shaped constellation to an unshaped one with the same low-SNR behavior,
//!   together with its inverse and the triangular matrix relating the
//!   Hadamard transforms of the two alphabets.
//! - [`low_gmi`]: closed-form low-GMI parameters `(μ, Es, α)` — mean, average
//!   symbol energy, and the slope of the BICM-GMI at SNR = 0 — via four
//!   mutually consistent routes.
//! - [`foo`]: first-order-optimality tests (does the constellation attain the
//!   −1.59 dB limit, i.e. α = log₂e?) and constructions that produce
//!   first-order-optimal alphabets from hypercube projections.
//! - [`gmi`]: numerical CM-MI and BICM-GMI over the AWGN channel by
//!   Gauss–Hermite quadrature, SNR sweeps with CSV export, a numerical slope
//!   oracle, and a Monte-Carlo cross-check.
//!
//! All types are immutable value objects and all operations are pure
//! functions, safe to share across threads. SNR is varied by scaling the
//! noise density for a fixed, dimensionless alphabet.

pub mod constellation;
pub mod error;
pub mod foo;
pub mod gmi;
pub mod hadamard;
pub mod low_gmi;
pub mod transform;

mod catalog;
mod doc;

pub use catalog::{catalog, Family};
pub use constellation::{
    Alphabet, BitProbabilities, Constellation, Labeling, LabelingKind, SymbolDistribution,
};
pub use doc::ConstellationDoc;
pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// An `M × N` real matrix stored as rows; row `i` is the vector attached to
/// label integer `i` wherever an NBC-ordered alphabet is expected.
pub type Matrix = Vec<Vec<f64>>;

/// log₂e, the Shannon-limit value of the GMI slope α.
pub const LOG2_E: f64 = std::f64::consts::LOG2_E;
