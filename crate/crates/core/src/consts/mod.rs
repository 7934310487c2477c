//! Certified rational enclosures of real constants built from rationals,
//! field operations, integer powers, sin, cos, exp, sqrt and pi.

mod elementary;
mod enclose;
mod expr;

pub use elementary::{cos_interval, exp_interval, pi, sin_interval, sqrt_interval};
pub use enclose::{enclose, enclose_with, eval_interval, sign_of, trunc_pm, truncate_decimal, Enclosure, Env};
pub use expr::{Expr, Func};
