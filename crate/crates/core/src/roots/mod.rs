//! Real root counting and isolation for univariate rational polynomials.

mod isolate;
mod sturm;

pub use isolate::{isolate_roots, refine, refine_isolated, IsolationList, Region};
pub use sturm::{
    cauchy_bound, count_real_roots, count_roots, count_roots_closed, sign_definite_integer,
    sign_definite_on, SturmSequence,
};
