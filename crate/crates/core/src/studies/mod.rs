//! End-to-end case studies and their reports.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::arith::{Interval, Rational};
use crate::error::{Error, Result};
use crate::pm::{recheck, PMCertificate};

mod central;
mod kouchnirenko;
mod lotka_volterra;
mod markus_yamabe;
mod piecewise;

pub use central::{central_box, central_config, central_faces, central_system, f_theta};
pub use kouchnirenko::{kouchnirenko, kouchnirenko_system};
pub use lotka_volterra::{lotka_volterra, LvConfig, LvReference};
pub use markus_yamabe::{markus_yamabe, MyConfig, G1_TEXT};
pub use piecewise::{piecewise_boxes, piecewise_faces, piecewise_linear, piecewise_system, PwlBox};

pub const REPORT_VERSION: u32 = 1;

pub const STUDIES: [&str; 5] = ["kouchnirenko", "markus-yamabe", "lotka-volterra", "piecewise-linear", "central-config"];

/// One verified claim of a study.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabelledCertificate {
    pub label: String,
    pub certificate: PMCertificate,
}

/// An exact kept cell of a discard grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub label: String,
    pub status: String,
    pub x: Interval<Rational>,
    pub y: Interval<Rational>,
}

/// Outcome of one study. Everything except `timings` is deterministic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: u32,
    pub study: String,
    pub params: BTreeMap<String, String>,
    pub counts: BTreeMap<String, usize>,
    pub checks: Vec<Check>,
    pub certificates: Vec<LabelledCertificate>,
    pub cells: Vec<CellRecord>,
    pub data: BTreeMap<String, serde_json::Value>,
    #[serde(skip)]
    pub timings: Vec<(String, Duration)>,
}

impl RunReport {
    pub fn new(study: &str) -> Self {
        RunReport {
            version: REPORT_VERSION,
            study: study.to_string(),
            params: BTreeMap::new(),
            counts: BTreeMap::new(),
            checks: Vec::new(),
            certificates: Vec::new(),
            cells: Vec::new(),
            data: BTreeMap::new(),
            timings: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
        passed
    }

    /// Records `observed == expected` with both values in the detail.
    pub fn check_eq<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, observed: T, expected: T) -> bool {
        let ok = observed == expected;
        let (o, e) = (format!("{observed:?}"), format!("{expected:?}"));
        let detail = if o.len() + e.len() > 240 {
            format!("{} ({} chars of debug output)", if ok { "equal" } else { "differ" }, o.len())
        } else {
            format!("observed {o}, expected {e}")
        };
        self.check(name, ok, detail)
    }

    pub fn count(&mut self, key: &str, n: usize) {
        self.counts.insert(key.to_string(), n);
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    pub fn datum(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(serde_json::Value::Null);
        self.data.insert(key.to_string(), v);
    }

    /// Adds a certificate after re-checking it independently.
    pub fn certificate(&mut self, label: &str, c: PMCertificate) {
        let verdict = recheck(&c);
        self.check(
            &format!("recheck {label}"),
            verdict.is_ok(),
            verdict.err().map(|e| e.to_string()).unwrap_or_else(|| "ok".into()),
        );
        self.certificates.push(LabelledCertificate {
            label: label.to_string(),
            certificate: c,
        });
    }

    pub fn timed<T>(&mut self, what: &str, f: impl FnOnce() -> T) -> T {
        let t0 = Instant::now();
        let out = f();
        self.timings.push((what.to_string(), t0.elapsed()));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Knobs shared by the studies; `None` selects the study default.
#[derive(Clone, Debug, Default)]
pub struct StudyOptions {
    pub period: Option<u32>,
    pub width_digits: Option<u32>,
    pub refine_cap_digits: Option<u32>,
    pub max_depth: Option<u32>,
    pub k_max: Option<u32>,
    pub max_degree: Option<usize>,
}

/// Runs a registered study by name.
pub fn run_study(name: &str, opts: &StudyOptions) -> Result<RunReport> {
    match name {
        "kouchnirenko" => kouchnirenko(),
        "markus-yamabe" => markus_yamabe(&MyConfig::default()),
        "lotka-volterra" => {
            let mut cfg = LvConfig::for_period(opts.period.unwrap_or(5))?;
            if let Some(w) = opts.width_digits {
                cfg.width_digits = w;
            }
            if let Some(c) = opts.refine_cap_digits {
                cfg.refine_cap_digits = c;
            }
            if let Some(d) = opts.max_degree {
                cfg.max_degree = d;
            }
            lotka_volterra(&cfg)
        }
        "piecewise-linear" => piecewise_linear(),
        "central-config" => central_config(opts.max_depth.unwrap_or(12), opts.k_max.unwrap_or(30)),
        _ => Err(Error::InvalidArgument(format!(
            "unknown study `{name}` (known: {})",
            STUDIES.join(", ")
        ))),
    }
}

pub(crate) fn iv(lo: Rational, hi: Rational) -> Interval<Rational> {
    Interval::new(lo, hi).expect("ordered endpoints")
}

pub(crate) fn planar(x: Interval<Rational>, y: Interval<Rational>) -> crate::BoxQ {
    crate::arith::Boxn::planar(x, y)
}

impl RunReport {
    /// Copies the kept cells of a grid, 1-based labels `I{i},{j}`.
    pub(crate) fn record_grid(&mut self, grid: &crate::discard::CandidateGrid) {
        use crate::discard::CellStatus;
        for (i, row) in grid.status.iter().enumerate() {
            for (j, st) in row.iter().enumerate() {
                let (status, cell) = match st {
                    CellStatus::Survivor { cell } => ("survivor".to_string(), cell),
                    CellStatus::Identified { label, cell } => (format!("identified {label}"), cell),
                    _ => continue,
                };
                self.cells.push(CellRecord {
                    label: format!("I{},{}", i + 1, j + 1),
                    status,
                    x: cell[0].clone(),
                    y: cell[1].clone(),
                });
            }
        }
    }
}

/// Certifies the zero in a kept cell on the coarsest decimal box that still
/// isolates it, falling back to the cell itself.
pub(crate) fn certify_cell(
    grid: &crate::discard::CandidateGrid,
    i: usize,
    j: usize,
    f1: &crate::BiPoly,
    f2: &crate::BiPoly,
) -> Result<crate::pm::PmOutcome> {
    use crate::pm::pm_check_poly_auto;
    for digits in [4, 8, 12, 16, 24, 32] {
        if let Some(bx) = grid.coarse_box(i, j, digits) {
            let out = pm_check_poly_auto(f1, f2, &bx)?;
            if out.is_certified() {
                return Ok(out);
            }
        }
    }
    pm_check_poly_auto(f1, f2, &grid.kept_box(i, j))
}
