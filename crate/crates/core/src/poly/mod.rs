//! Exact univariate and bivariate polynomial algebra.

mod bi;
mod factor;
pub mod int;
pub mod modular;
pub mod parse;
mod resultant;
mod uni;

pub use bi::Poly2;
pub use factor::{div_exact, gcd, remove_exact_factor, remove_factor_times, squarefree_part};
pub use resultant::{
    bareiss_det, degree_bound, discriminant, discriminant_bi, lagrange, resultant, resultant_reference,
    resultant_uni, resultant_uni_euclid, sylvester, to_integer_bi, CACHE_ENV,
};
pub use uni::Poly;

use crate::arith::Rational;
use crate::error::{Error, Result};

fn parse_checked(src: &str, allowed: &[&str]) -> Result<parse::Terms> {
    let (t, _) = parse::parse_terms(src)?;
    for v in t.variables() {
        if !allowed.contains(&v.as_str()) {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("unexpected variable `{v}` (expected {})", allowed.join(", ")),
            });
        }
    }
    Ok(t)
}

/// Parses a univariate polynomial in `var`.
pub fn parse_uni(src: &str, var: &str) -> Result<Poly<Rational>> {
    let t = parse_checked(src, &[var])?;
    let deg = t.0.keys().map(|m| m.get(var).copied().unwrap_or(0)).max().unwrap_or(0);
    let mut c = vec![Rational::from_integer(0.into()); deg as usize + 1];
    for (m, q) in t.0 {
        c[m.get(var).copied().unwrap_or(0) as usize] += q;
    }
    Ok(Poly::new(c, var))
}

/// Parses a bivariate polynomial in `vars`.
pub fn parse_bi(src: &str, vars: [&str; 2]) -> Result<Poly2<Rational>> {
    let t = parse_checked(src, &vars)?;
    Ok(Poly2::from_terms(
        t.0.into_iter().map(|(m, q)| {
            let e = (
                m.get(vars[0]).copied().unwrap_or(0),
                m.get(vars[1]).copied().unwrap_or(0),
            );
            (e, q)
        }),
        vars,
    ))
}
