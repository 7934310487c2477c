//! Declarative problem files (TOML) for `pmcheck`.

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use pmcert::arith::{parse_rational, Boxn, Face, Interval, Rational, Side, Sign};
use pmcert::consts::Expr;
use pmcert::discard::{decimal_schedule, discard_grid, CandidateGrid};
use pmcert::dynsys::{family_no_roots, fixed_point_system, lower_periods_not_excluded, PolyMap2};
use pmcert::pm::{
    expression_faces, pm_check_adaptive, pm_check_lemma, pm_check_poly, pm_check_poly_auto, LemmaFace, LemmaForm,
    PMCertificate, PmOutcome, TaylorBoundParams,
};
use pmcert::poly::parse::parse_terms;
use pmcert::poly::{parse_bi, parse_uni, remove_factor_times, resultant};
use pmcert::roots::{isolate_roots, Region};
use pmcert::{BiPoly, BoxQ, IntervalQ};

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ProblemDef {
    PolynomialSystem {
        #[serde(default = "xy")]
        vars: [String; 2],
        equations: [String; 2],
        boxes: Vec<BoxDef>,
        #[serde(default)]
        precondition: bool,
    },
    ExpressionSystem {
        vars: [String; 2],
        equations: [String; 2],
        boxes: Vec<BoxDef>,
        /// `[u-lo, u-hi, v-lo, v-hi]` as `"g1<0"`-style targets.
        targets: [String; 4],
        #[serde(default = "default_depth")]
        max_depth: u32,
        #[serde(default = "default_k")]
        k_max: u32,
    },
    LemmaFormSystem {
        boxes: Vec<LemmaBoxDef>,
    },
    ParameterFamily {
        /// Polynomial in `var` and `param`.
        polynomial: String,
        var: String,
        param: String,
        j: [String; 2],
        b: [String; 2],
        b0: String,
    },
    PeriodicOrbits {
        map: [String; 2],
        period: u32,
        #[serde(default = "default_width")]
        width_digits: u32,
        #[serde(default)]
        refine_cap_digits: Option<u32>,
        /// Factors `"poly^m"` removed from `Res_y` and `Res_x`.
        #[serde(default)]
        remove_x: Vec<String>,
        #[serde(default)]
        remove_y: Vec<String>,
    },
}

fn xy() -> [String; 2] {
    ["x".into(), "y".into()]
}

fn default_depth() -> u32 {
    12
}

fn default_k() -> u32 {
    30
}

fn default_width() -> u32 {
    40
}

#[derive(Debug, Deserialize)]
pub struct BoxDef {
    #[serde(default)]
    pub name: Option<String>,
    pub x: [String; 2],
    pub y: [String; 2],
}

#[derive(Debug, Deserialize)]
pub struct LemmaBoxDef {
    #[serde(default)]
    pub name: Option<String>,
    pub x: [String; 2],
    pub y: [String; 2],
    /// Faces in the order `x = lo, x = hi, y = lo, y = hi`.
    pub faces: Vec<LemmaFaceDef>,
}

#[derive(Debug, Deserialize)]
pub struct LemmaFaceDef {
    pub component: usize,
    pub sign: String,
    pub var: String,
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub alpha: String,
    pub beta: String,
    #[serde(default)]
    pub premultiplier: Option<String>,
    pub n: u32,
    pub k: u32,
    pub m: String,
}

/// Result of one problem: certificates, failures and extra data.
#[derive(Debug, Default, Serialize)]
pub struct Outcome {
    pub certified: Vec<Labelled>,
    pub failed: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

#[derive(Debug, Serialize)]
pub struct Labelled {
    pub label: String,
    pub certificate: PMCertificate,
}

#[derive(Debug, Serialize)]
pub struct Failure {
    pub label: String,
    pub reason: String,
}

impl Outcome {
    fn push(&mut self, label: String, out: PmOutcome) {
        match out {
            PmOutcome::Certified(c) => self.certified.push(Labelled { label, certificate: *c }),
            PmOutcome::NotCertified(nc) => self.failed.push(Failure {
                label,
                reason: match nc.face {
                    Some(f) => format!("{f}: {}", nc.reason),
                    None => nc.reason,
                },
            }),
        }
    }
}

/// Exact rational from text; decimals are converted with a warning.
pub fn rational(s: &str) -> Result<Rational> {
    let (q, decimal) = parse_rational(s).map_err(|e| anyhow!("{e}"))?;
    if decimal {
        eprintln!("warning: decimal `{}` read as the exact rational {}", s.trim(), pmcert::arith::format_rational(&q));
    }
    Ok(q)
}

fn interval(p: &[String; 2]) -> Result<IntervalQ> {
    Interval::new(rational(&p[0])?, rational(&p[1])?).map_err(|e| anyhow!("{e}"))
}

fn planar(x: &[String; 2], y: &[String; 2]) -> Result<BoxQ> {
    Ok(Boxn::planar(interval(x)?, interval(y)?))
}

fn warn_decimal(src: &str) -> Result<()> {
    let (_, decimal) = parse_terms(src).map_err(|e| anyhow!("{e}"))?;
    if decimal {
        eprintln!("warning: decimals in `{src}` read as exact rationals");
    }
    Ok(())
}

fn bi(src: &str, vars: [&str; 2]) -> Result<BiPoly> {
    warn_decimal(src)?;
    parse_bi(src, vars).map_err(|e| anyhow!("{e}")).with_context(|| format!("in `{src}`"))
}

fn expr(src: &str) -> Result<Expr> {
    src.parse::<Expr>().map_err(|e| anyhow!("{e}")).with_context(|| format!("in `{src}`"))
}

fn sign(s: &str) -> Result<Sign> {
    match s.trim() {
        "positive" | "+" | ">0" => Ok(Sign::Positive),
        "negative" | "-" | "<0" => Ok(Sign::Negative),
        other => bail!("unknown sign `{other}` (use positive or negative)"),
    }
}

const FACES: [Face; 4] = [
    Face { axis: 0, side: Side::Lower },
    Face { axis: 0, side: Side::Upper },
    Face { axis: 1, side: Side::Lower },
    Face { axis: 1, side: Side::Upper },
];

/// `"g1<0"` or `"g2>0"`.
fn target(s: &str) -> Result<(usize, Sign)> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (c, sg) = t
        .split_once(['<', '>'])
        .ok_or_else(|| anyhow!("target `{s}` must look like g1<0"))?;
    let comp = match c {
        "g1" => 0,
        "g2" => 1,
        _ => bail!("target `{s}` must name g1 or g2"),
    };
    if sg != "0" {
        bail!("target `{s}` must compare with 0");
    }
    Ok((comp, if t.contains('<') { Sign::Negative } else { Sign::Positive }))
}

fn label(name: &Option<String>, k: usize) -> String {
    name.clone().unwrap_or_else(|| format!("box {}", k + 1))
}

pub fn run(def: &ProblemDef) -> Result<Outcome> {
    let mut out = Outcome::default();
    match def {
        ProblemDef::PolynomialSystem { vars, equations, boxes, precondition } => {
            let v = [vars[0].as_str(), vars[1].as_str()];
            let f1 = bi(&equations[0], v)?;
            let f2 = bi(&equations[1], v)?;
            for (k, b) in boxes.iter().enumerate() {
                let bx = planar(&b.x, &b.y)?;
                let o = if *precondition { pm_check_poly_auto(&f1, &f2, &bx) } else { pm_check_poly(&f1, &f2, &bx) };
                out.push(label(&b.name, k), o.map_err(|e| anyhow!("{e}"))?);
            }
        }
        ProblemDef::ExpressionSystem { vars, equations, boxes, targets, max_depth, k_max } => {
            let comps = [expr(&equations[0])?, expr(&equations[1])?];
            let ts: Vec<(Face, usize, Sign)> = targets
                .iter()
                .zip(FACES)
                .map(|(t, f)| target(t).map(|(c, s)| (f, c, s)))
                .collect::<Result<_>>()?;
            for (k, b) in boxes.iter().enumerate() {
                let bx = planar(&b.x, &b.y)?;
                let faces = expression_faces(&comps, [vars[0].as_str(), vars[1].as_str()], &bx, &ts);
                let o = pm_check_adaptive(&faces, &bx, Some((comps.clone(), vars.clone())), *max_depth, *k_max)
                    .map_err(|e| anyhow!("{e}"))?;
                out.push(label(&b.name, k), o);
            }
        }
        ProblemDef::LemmaFormSystem { boxes } => {
            for (k, b) in boxes.iter().enumerate() {
                let bx = planar(&b.x, &b.y)?;
                if b.faces.len() != 4 {
                    bail!("{}: expected four faces", label(&b.name, k));
                }
                let faces: Vec<LemmaFace> = b
                    .faces
                    .iter()
                    .zip(FACES)
                    .map(|(f, face)| lemma_face(f, face))
                    .collect::<Result<_>>()?;
                let o = pm_check_lemma(&faces, &bx).map_err(|e| anyhow!("{e}"))?;
                out.push(label(&b.name, k), o);
            }
        }
        ProblemDef::ParameterFamily { polynomial, var, param, j, b, b0 } => {
            let g = bi(polynomial, [var.as_str(), param.as_str()])?;
            let res = family_no_roots(&g, &interval(j)?, &interval(b)?, &rational(b0)?).map_err(|e| anyhow!("{e}"))?;
            match res {
                Ok(c) => out.data = Some(serde_json::to_value(c)?),
                Err(f) => out.failed.push(Failure {
                    label: "family".into(),
                    reason: format!("{f:?}"),
                }),
            }
        }
        ProblemDef::PeriodicOrbits { map, period, width_digits, refine_cap_digits, remove_x, remove_y } => {
            periodic(&mut out, map, *period, *width_digits, refine_cap_digits.unwrap_or(2 * width_digits), remove_x, remove_y)?;
        }
    }
    Ok(out)
}

fn lemma_face(f: &LemmaFaceDef, face: Face) -> Result<LemmaFace> {
    Ok(LemmaFace {
        face,
        component: f.component,
        form: LemmaForm {
            var: f.var.clone(),
            a: expr(&f.a)?,
            b: expr(&f.b)?,
            c: expr(&f.c)?,
            d: expr(&f.d)?,
            alpha: rational(&f.alpha)?,
            beta: rational(&f.beta)?,
            premultiplier: f.premultiplier.as_deref().map(rational).transpose()?,
        },
        target: sign(&f.sign)?,
        params: TaylorBoundParams {
            n: f.n,
            k: f.k,
            m: rational(&f.m)?,
        },
    })
}

/// `"x - 2^99"`-style factor with multiplicity.
fn factor(s: &str, var: &str) -> Result<(pmcert::UniPoly, u32)> {
    let (body, m) = match s.rsplit_once('^') {
        Some((b, m)) if s.trim_end().ends_with(|c: char| c.is_ascii_digit()) && b.trim().ends_with(')') => {
            (b.trim(), m.trim().parse::<u32>()?)
        }
        _ => (s.trim(), 1),
    };
    Ok((parse_uni(body, var).map_err(|e| anyhow!("{e}"))?, m))
}

fn periodic(
    out: &mut Outcome,
    map: &[String; 2],
    p: u32,
    width_digits: u32,
    cap: u32,
    remove_x: &[String],
    remove_y: &[String],
) -> Result<()> {
    let v = ["x", "y"];
    let t = PolyMap2::new(bi(&map[0], v)?, bi(&map[1], v)?);
    let sys = fixed_point_system(&t, p).map_err(|e| anyhow!("{e}"))?;
    let e = |e: pmcert::Error| anyhow!("{e}");
    let mut px = resultant(&sys.g1, &sys.g2, 1).map_err(e)?;
    let mut qy = resultant(&sys.g1, &sys.g2, 0).map_err(e)?;
    for f in remove_x {
        let (f, m) = factor(f, "x")?;
        px = remove_factor_times(&px, &f, m).map_err(e)?;
    }
    for f in remove_y {
        let (f, m) = factor(f, "y")?;
        qy = remove_factor_times(&qy, &f, m).map_err(e)?;
    }
    let w = pmcert::arith::pow10(width_digits).recip();
    let xs = isolate_roots(&px, &Region::Positives, &w).map_err(e)?;
    let ys = isolate_roots(&qy, &Region::Positives, &w).map_err(e)?;
    let mut grid = CandidateGrid::new(xs, ys);
    let rep = discard_grid(&[sys.g1.clone(), sys.g2.clone()], &mut grid, &decimal_schedule(width_digits, 10, cap))
        .map_err(e)?;
    for &(i, j) in &rep.survivors {
        let bx = grid.kept_box(i, j);
        let name = format!("I{},{}", i + 1, j + 1);
        let open = lower_periods_not_excluded(&t, p, &bx).map_err(e)?;
        if !open.is_empty() {
            out.failed.push(Failure {
                label: name.clone(),
                reason: format!("lower periods {open:?} not excluded"),
            });
        }
        out.push(name, pm_check_poly_auto(&sys.g1, &sys.g2, &bx).map_err(e)?);
    }
    out.data = Some(serde_json::json!({
        "report": rep,
        "kept": grid.kept_text(),
        "matrix": grid.matrix_text(),
    }));
    Ok(())
}
