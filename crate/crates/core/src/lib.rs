//! Exact enumerative combinatorics for complete m-ary trees, (k,m)-ary trees
//! and plane forests.
//!
//! The crate enumerates the three families exhaustively, computes their hook
//! length polynomials over exact rationals (by enumeration, by recurrence and
//! in closed form), solves the defining generating-function equations as
//! truncated power series, and runs the split/merge and contraction
//! bijections. Everything is exact: counts are [`BigInt`], coefficients are
//! [`Rational`].
//!
//! [`verify`] ties the pieces together into a registry of named identities
//! that can be checked over a parameter grid.

pub mod bijection;
pub mod counting;
pub mod enumerate;
mod error;
pub mod hookpoly;
pub mod poly;
pub mod series;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use poly::{Rational, RationalPolynomial};
pub use series::TruncatedPowerSeries;
pub use tree::{Forest, HookMode, HookTable, PlaneTree};

/// Default resource guard for exhaustive enumeration.
pub const DEFAULT_CAP: u64 = 1_000_000;
