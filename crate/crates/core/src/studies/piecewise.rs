//! Three nested limit cycles of a piecewise linear planar system, located
//! as zeros of the half-return matching equations `g1 = g2 = 0` in the
//! flight times `(u, v)`.

use num_traits::ToPrimitive;

use super::{iv, planar, RunReport};
use crate::arith::{format_rational, int, pow10, rat, Face, Rational, Side, Sign};
use crate::consts::Expr;
use crate::error::Result;
use crate::pm::{pm_check_lemma, taylor_poly_bounds, LemmaFace, LemmaForm, TaylorBoundParams};
use crate::BoxQ;

const ALPHA_V: (i64, i64) = (49, 50);
const BETA_V: (i64, i64) = (1, 5);
const BETA_U: (i64, i64) = (3, 8);

fn e(s: String) -> Expr {
    s.parse().expect("well-formed face expression")
}

fn q(x: &Rational) -> String {
    format!("({})", format_rational(x))
}

/// `[a, b, c, d, e](v)` of the matching equations at a fixed `v`.
fn v_coefficients(v: &Rational) -> [Expr; 5] {
    let ev = format!("exp(-{}/5)", q(v));
    let s = format!("sin(49/50*{})", q(v));
    let c = format!("cos(49/50*{})", q(v));
    [
        e(format!("238*{ev}*{s}")),
        e(format!("55*{ev}*{s} + 35*{ev}*{c} - 35")),
        e(format!("49*{ev}*{c} - 77*{ev}*{s} + 49")),
        e(format!("-25*{ev}*{s}")),
        e(format!("77*{ev}*{s} - 49*{ev}*{c}")),
    ]
}

/// `g1(u, v) = a cos u + b sin u - a e^{3u/8}` and
/// `g2(u, v) = c cos u + d sin u + e e^{3u/8} - 49 e^{-3u/8}`.
pub fn piecewise_system() -> [Expr; 2] {
    let (u, v) = ("(u)", "(v)");
    let ev = format!("exp(-{v}/5)");
    let s = format!("sin(49/50*{v})");
    let c = format!("cos(49/50*{v})");
    let a = format!("(238*{ev}*{s})");
    let b = format!("(55*{ev}*{s} + 35*{ev}*{c} - 35)");
    let cc = format!("(49*{ev}*{c} - 77*{ev}*{s} + 49)");
    let d = format!("(-25*{ev}*{s})");
    let ee = format!("(77*{ev}*{s} - 49*{ev}*{c})");
    [
        e(format!("{a}*cos({u}) + {b}*sin({u}) - {a}*exp(3/8*{u})")),
        e(format!("{cc}*cos({u}) + {d}*sin({u}) + {ee}*exp(3/8*{u}) - 49*exp(-3/8*{u})")),
    ]
}

/// Face function on `u = ubar` times `e^{v/5}`, a form in `v`.
fn u_face(component: usize, ubar: &Rational) -> LemmaForm {
    let u = q(ubar);
    let (su, cu) = (format!("sin({u})"), format!("cos({u})"));
    let (ep, em) = (format!("exp(3/8*{u})"), format!("exp(-3/8*{u})"));
    let (a, b, c) = match component {
        0 => (
            e(format!("35*{su}")),
            e(format!("238*{cu} + 55*{su} - 238*{ep}")),
            e(format!("-35*{su}")),
        ),
        _ => (
            e(format!("49*{cu} - 49*{ep}")),
            e(format!("-77*{cu} - 25*{su} + 77*{ep}")),
            e(format!("49*{cu} - 49*{em}")),
        ),
    };
    LemmaForm {
        var: "v".into(),
        a,
        b,
        c,
        d: Expr::int(0),
        alpha: rat(ALPHA_V.0, ALPHA_V.1),
        beta: rat(BETA_V.0, BETA_V.1),
        premultiplier: Some(rat(BETA_V.0, BETA_V.1)),
    }
}

/// Face function on `v = vbar`, a form in `u`.
fn v_face(component: usize, vbar: &Rational) -> LemmaForm {
    let [a, b, c, d, ee] = v_coefficients(vbar);
    let (ca, cb, cc, cd) = match component {
        0 => (a.clone(), b, -a, Expr::int(0)),
        _ => (c, d, ee, Expr::int(-49)),
    };
    LemmaForm {
        var: "u".into(),
        a: ca,
        b: cb,
        c: cc,
        d: cd,
        alpha: int(1),
        beta: rat(BETA_U.0, BETA_U.1),
        premultiplier: None,
    }
}

/// One row of a parameter table: target sign, `n`, `k`, `M`.
type FaceRow = (Sign, u32, u32, Rational);

#[derive(Clone, Debug)]
pub struct PwlBox {
    pub name: &'static str,
    pub bx: BoxQ,
    /// Component used on the `u` faces; the other one is used on `v`.
    pub u_component: usize,
    /// Faces in the order `u = lo, u = hi, v = lo, v = hi`.
    pub rows: [FaceRow; 4],
}

fn tenth(k: u32) -> Rational {
    pow10(k).recip()
}

pub fn piecewise_boxes() -> Vec<PwlBox> {
    use Sign::{Negative as N, Positive as P};
    vec![
        PwlBox {
            name: "B1",
            bx: planar(iv(rat(9, 25), rat(1, 2)), iv(rat(219, 50), rat(26, 5))),
            u_component: 0,
            rows: [(N, 16, 15, tenth(13)), (P, 16, 15, tenth(12)), (P, 4, 3, rat(7, 10)), (N, 4, 3, rat(4, 5))],
        },
        PwlBox {
            name: "B2",
            bx: planar(iv(rat(1, 2), rat(7, 5)), iv(rat(71, 20), rat(219, 50))),
            u_component: 1,
            rows: [(P, 16, 14, tenth(13)), (N, 16, 10, tenth(12)), (N, 6, 2, rat(1, 50)), (P, 4, 2, rat(13, 10))],
        },
        PwlBox {
            name: "B3",
            bx: planar(iv(rat(7, 5), int(2)), iv(rat(17, 5), rat(71, 20))),
            u_component: 0,
            rows: [(N, 13, 8, tenth(8)), (P, 11, 8, tenth(6)), (P, 6, 3, tenth(2)), (N, 7, 2, tenth(2))],
        },
    ]
}

pub fn piecewise_faces(b: &PwlBox) -> Vec<LemmaFace> {
    let faces = [
        Face { axis: 0, side: Side::Lower },
        Face { axis: 0, side: Side::Upper },
        Face { axis: 1, side: Side::Lower },
        Face { axis: 1, side: Side::Upper },
    ];
    faces
        .iter()
        .zip(&b.rows)
        .map(|(&face, (target, n, k, m))| {
            let value = b.bx.face_value(face);
            let (component, form) = if face.axis == 0 {
                (b.u_component, u_face(b.u_component, value))
            } else {
                let c = 1 - b.u_component;
                (c, v_face(c, value))
            };
            LemmaFace {
                face,
                component,
                form,
                target: *target,
                params: TaylorBoundParams { n: *n, k: *k, m: m.clone() },
            }
        })
        .collect()
}

/// Largest gap between a face form and `e^{g t} g_i` on the face at a few
/// sample points, in floating point.
fn form_mismatch(lf: &LemmaFace, bx: &BoxQ) -> f64 {
    let sys = piecewise_system();
    let fixed = bx.face_value(lf.face).to_f64().unwrap_or(f64::NAN);
    let dom = bx.axis(1 - lf.face.axis);
    let (lo, hi) = (dom.lo().to_f64().unwrap_or(0.0), dom.hi().to_f64().unwrap_or(0.0));
    let form = lf.form.to_expr();
    let g = lf.form.premultiplier.as_ref().map_or(0.0, |q| q.to_f64().unwrap_or(0.0));
    (0..=4)
        .map(|s| {
            let t = lo + (hi - lo) * s as f64 / 4.0;
            let (u, v) = if lf.face.axis == 0 { (fixed, t) } else { (t, fixed) };
            let env = |name: &str| match name {
                "u" => Some(u),
                "v" => Some(v),
                _ => None,
            };
            let lhs = form.eval_f64(&env);
            let rhs = (g * t).exp() * sys[lf.component].eval_f64(&env);
            (lhs - rhs).abs() / (1.0 + rhs.abs())
        })
        .fold(0.0, f64::max)
}

pub fn piecewise_linear() -> Result<RunReport> {
    let mut r = RunReport::new("piecewise-linear");
    let boxes = piecewise_boxes();

    // the worked face: g2 on v = 219/50 of B1 with n = 4, k = 3
    let f = v_face(1, &rat(219, 50));
    let tb = taylor_poly_bounds(&f, boxes[0].bx.axis(0), 4, 3)?;
    let want = [rat(-1, 1000), rat(1001, 50), rat(-39899, 1000), rat(-669, 500), rat(357, 125)];
    r.check_eq("P-(4,3) coefficients", tb.p_minus.coeffs().to_vec(), want.to_vec());
    r.check(
        "m bar below 7/10",
        tb.m_bar.iv.hi() < &rat(7, 10),
        format!("m bar in {}", tb.m_bar.iv),
    );

    for b in &boxes {
        let faces = piecewise_faces(b);
        let worst = faces.iter().map(|lf| form_mismatch(lf, &b.bx)).fold(0.0, f64::max);
        r.check(&format!("{} face forms", b.name), worst < 1e-9, format!("relative gap {worst:.2e}"));
        let out = r.timed(b.name, || pm_check_lemma(&faces, &b.bx))?;
        r.check(&format!("pm {}", b.name), out.is_certified(), out.summary());
        if let Some(c) = out.certificate() {
            r.certificate(b.name, c.clone());
        }
    }
    r.count("limit cycles", r.certificates.len());
    Ok(r)
}
