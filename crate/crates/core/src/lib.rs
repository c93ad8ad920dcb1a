//! Exact arithmetic for Hecke triangle functions.
//!
//! The crate is organized bottom-up:
//!
//! - [`exactnum`]: rationals, p-adic orders, digit sums and Catalan numbers.
//! - [`series`]: truncated Laurent series over the rationals.
//! - [`hecke`]: the expansion pipeline producing `J_m` and its rescaled
//!   normalization `j_m`, plus constant terms of their powers.
//! - [`polyfit`]: exact interpolation of coefficient data across `m`.
//! - [`conjectures`]: the divisibility predictions on constant terms, checked
//!   over finite grids, and the link to OEIS A005148.

pub mod conjectures;
pub mod exactnum;
pub mod hecke;
pub mod polyfit;
pub mod series;

pub use exactnum::{PAdicOrder, Rational};
pub use hecke::{CanonicalExpansion, Family, HeckeParameters};
pub use polyfit::RationalPolynomial;
pub use series::LaurentSeries;

/// Errors raised by the exact-arithmetic layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("division by a series or number whose leading coefficient is zero")]
    DivisionByZero,
    #[error("index {index} outside the known window {lower}..={order}")]
    OutOfRange { index: i64, lower: i64, order: i64 },
    #[error("duplicate abscissa {0} in interpolation data")]
    DuplicateAbscissa(String),
    #[error("interpolation did not stabilize by m = {cap}; the sampled family is likely not polynomial in m")]
    StabilizationFailed { cap: u32 },
    #[error("b-file ingestion failed: {0}")]
    Ingestion(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
