//! Exact q-series engine for partitions with parts separated by parity.
//!
//! The crate has five layers:
//! - [`series`]: truncated formal power series over exact rationals;
//! - [`products`]: q-Pochhammer symbols with monomial arguments and the
//!   pentagonal-number expansion;
//! - [`partitions`]: a brute-force enumerator for the eight partition
//!   families, used as the combinatorial oracle;
//! - [`catalog`]: builders for both sides of every cataloged identity and
//!   the verification engine comparing them coefficient-by-coefficient;
//! - [`expr`]: a small textual language for q-series expressions, with a
//!   parser and an evaluator, so every cataloged identity also exists as
//!   human-readable text.

pub mod catalog;
pub mod expr;
pub mod partitions;
pub mod products;
pub mod series;

pub use catalog::{
    CatalogError, IdentityId, Mismatch, VerificationReport, compare_series, lhs_series,
    rhs_series, verify,
};
pub use partitions::{ParityClass, Partition};
pub use products::MonomialArg;
pub use series::{QSeries, Rational, SeriesError, Sign};
