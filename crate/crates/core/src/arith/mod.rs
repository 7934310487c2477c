//! Exact rationals, closed rational intervals and axis-aligned boxes.

mod boxes;
mod interval;
mod rational;
mod scalar;
mod sign;

pub use boxes::{Boxn, Face, Side};
pub use interval::Interval;
pub use rational::{
    ceil, dyadic_ceil, dyadic_floor, floor, format_rational, int, parse_rational, pow10, rat,
    simple_between, trunc, Rational,
};
pub use scalar::{Field, Scalar};
pub use sign::Sign;

pub(crate) use rational::sign_of_int;
