//! Exact-arithmetic toolkit for algebraic power series.
//!
//! The crate computes truncated expansions of algebraic functions over ℚ,
//! produces and verifies Eisenstein denominator certificates, and provides
//! the companion machinery: weighted graded root lifting with support cones,
//! P-recursive / D-finite coefficient diagnostics, and Weierstrass
//! preparation and division to a prescribed truncation order.
//!
//! All coefficient arithmetic is exact. Scalars are arbitrary-precision
//! integers and rationals; series live on bounded rational exponent grids.

pub mod dfinite;
pub mod eisenstein;
pub mod error;
pub mod exactnum;
pub mod frontend;
pub mod graded;
pub mod puiseux;
pub mod series;
pub mod weierstrass;

/// Arbitrary-precision integer scalar (the ground ring).
pub type Integer = num_bigint::BigInt;
/// Arbitrary-precision rational scalar (the ground field).
pub type Rational = num_rational::BigRational;

/// Univariate grid series with rational coefficients.
pub type QSeries = series::RGSeries<Rational>;
/// Univariate grid series with polynomial coefficients.
pub type PolySeries = series::RGSeries<series::MPoly>;

pub use error::{Error, Result};

pub(crate) fn int(n: i64) -> Integer {
    Integer::from(n)
}

#[allow(dead_code)] // handy in unit tests across the crate
pub(crate) fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

pub(crate) fn rat_int(n: i64) -> Rational {
    Rational::from_integer(Integer::from(n))
}
