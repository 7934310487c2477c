//! A symmetric central configuration of the (1 + 4)-body problem.

use num_traits::ToPrimitive;

use super::{iv, planar, RunReport};
use crate::arith::{rat, Face, Sign, Side};
use crate::consts::{enclose, sign_of, Expr};
use crate::error::Result;
use crate::pm::{expression_faces, pm_check_adaptive, AdaptiveFace};
use crate::BoxQ;

/// `f(t) = (1 - sqrt(2) / (4 sqrt((1 - cos t)^3))) sin t`.
pub fn f_theta(t: Expr) -> Expr {
    let one = Expr::int(1);
    let denom = Expr::int(4) * (one.clone() - t.clone().cos()).powi(3).sqrt();
    (one - Expr::int(2).sqrt() / denom) * t.sin()
}

/// `g1 = f(u) + f(v) + f(u + v)`, `g2 = f(u) - f(v) - f(v - u)`.
pub fn central_system() -> [Expr; 2] {
    let (u, v) = (Expr::var("u"), Expr::var("v"));
    [
        f_theta(u.clone()) + f_theta(v.clone()) + f_theta(u.clone() + v.clone()),
        f_theta(u.clone()) - f_theta(v.clone()) - f_theta(v - u),
    ]
}

pub fn central_box() -> BoxQ {
    planar(iv(rat(7, 10), rat(4, 5)), iv(rat(13, 10), rat(3, 2)))
}

pub fn central_faces(bx: &BoxQ) -> Vec<AdaptiveFace> {
    let f = |axis, side| Face { axis, side };
    let targets = [
        (f(0, Side::Lower), 0, Sign::Negative),
        (f(0, Side::Upper), 0, Sign::Positive),
        (f(1, Side::Lower), 1, Sign::Positive),
        (f(1, Side::Upper), 1, Sign::Negative),
    ];
    expression_faces(&central_system(), ["u", "v"], bx, &targets)
}

/// Corner bounds of the four face ranges and their approximate values.
fn sign_facts() -> Vec<(&'static str, Expr, f64)> {
    let f = |a: i64, b: i64| f_theta(Expr::rat(a, b));
    vec![
        ("f(0.7) + f(1.5) + f(2)", f(7, 10) + f(3, 2) + f(2, 1), -0.031),
        ("f(0.8) + f(1.3) + f(2.3)", f(4, 5) + f(13, 10) + f(23, 10), 0.24),
        ("f(0.7) - f(1.3) - f(0.6)", f(7, 10) - f(13, 10) - f(3, 5), 0.40),
        ("f(0.8) - f(1.5) - f(0.7)", f(4, 5) - f(3, 2) - f(7, 10), -0.052),
    ]
}

pub fn central_config(max_depth: u32, k_max: u32) -> Result<RunReport> {
    let mut r = RunReport::new("central-config");
    r.param("max_depth", max_depth);
    r.param("k_max", k_max);
    let bx = central_box();
    let faces = central_faces(&bx);
    let comps = central_system();
    let out = r.timed("pm", || {
        pm_check_adaptive(&faces, &bx, Some((comps.clone(), ["u".into(), "v".into()])), max_depth, k_max)
    })?;
    r.check("pm box", out.is_certified(), out.summary());
    if let Some(c) = out.certificate() {
        r.certificate("[7/10,4/5]x[13/10,3/2]", c.clone());
    }

    let no_env = |_: &str| None;
    let mut values = Vec::new();
    for (name, e, quoted) in sign_facts() {
        let want = if quoted < 0.0 { Sign::Negative } else { Sign::Positive };
        let s = sign_of(&e, k_max);
        r.check(&format!("sign of {name}"), s == Some(want), format!("{s:?}"));
        let approx = e.eval_f64(&no_env);
        let enc = enclose(&e, 12)?;
        let lo = enc.iv.lo().to_f64().unwrap_or(f64::NAN);
        let hi = enc.iv.hi().to_f64().unwrap_or(f64::NAN);
        r.check(
            &format!("value of {name}"),
            lo <= approx + 1e-9 && approx - 1e-9 <= hi && (approx - quoted).abs() <= 0.01,
            format!("enclosure [{lo:.6}, {hi:.6}], float {approx:.6}, quoted {quoted}"),
        );
        values.push((name, approx));
    }
    r.datum("corner values", values);
    Ok(r)
}
