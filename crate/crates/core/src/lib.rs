//! Certified computation of zeros and periodic orbits with exact rational
//! arithmetic: Sturm sequences, resultants, a monomial-bound discard
//! procedure and Poincaré-Miranda box certificates.

pub mod arith;
pub mod consts;
pub mod discard;
pub mod dynsys;
pub mod error;
pub mod pm;
pub mod poly;
pub mod roots;
pub mod studies;
mod textser;

pub use arith::Rational;
pub use error::{Error, Result};

/// Closed interval with rational endpoints.
pub type IntervalQ = arith::Interval<Rational>;
/// Axis-aligned box with rational endpoints.
pub type BoxQ = arith::Boxn<Rational>;
/// Dense univariate polynomial over the rationals.
pub type UniPoly = poly::Poly<Rational>;
/// Sparse bivariate polynomial over the rationals.
pub type BiPoly = poly::Poly2<Rational>;
