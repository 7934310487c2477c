//! `pmcert`: certified zeros and periodic orbits from the command line.
//!
//! Exit codes: 0 success or certified, 1 not certified or a failed check,
//! 2 input error, 3 resource limit exceeded.

mod problem;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use pmcert::pm::{recheck, PMCertificate};
use pmcert::poly::parse::parse_terms;
use pmcert::poly::parse_uni;
use pmcert::roots::{isolate_roots, Region};
use pmcert::studies::{run_study, StudyOptions, STUDIES};

#[derive(Parser)]
#[command(name = "pmcert", version, about = "Certified zeros and periodic orbits with exact arithmetic")]
struct Cli {
    /// Worker threads; 1 forces the serial path.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegionArg {
    All,
    Positives,
}

#[derive(Subcommand)]
enum Cmd {
    /// Isolate the real roots of a univariate polynomial.
    Isolate {
        polyfile: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        region: RegionArg,
        /// Maximum interval width, e.g. 1e-40 or 1/1000.
        #[arg(long, default_value = "1e-10")]
        width: String,
    },
    /// Run the Poincare-Miranda check described by a problem file.
    Pmcheck {
        problemfile: PathBuf,
        /// Also write the certificates to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce a case study.
    Casestudy {
        #[command(subcommand)]
        action: CaseAction,
    },
    /// Re-verify certificates: a certificate, a list, a pmcheck output or a report.
    Recheck { certfile: PathBuf },
}

#[derive(Subcommand)]
enum CaseAction {
    /// Run one study and emit its report.
    Run {
        name: String,
        #[arg(long)]
        period: Option<u32>,
        /// Isolation width as a power of ten, e.g. 40 for 1e-40.
        #[arg(long)]
        width_digits: Option<u32>,
        #[arg(long)]
        refine_cap_digits: Option<u32>,
        #[arg(long)]
        max_depth: Option<u32>,
        #[arg(long)]
        k_max: Option<u32>,
        #[arg(long)]
        max_degree: Option<usize>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the registered studies.
    List,
}

/// An error with the exit code it maps to.
struct Exit(u8, anyhow::Error);

fn input<E: Into<anyhow::Error>>(e: E) -> Exit {
    Exit(2, e.into())
}

fn core(e: pmcert::Error) -> Exit {
    match e {
        pmcert::Error::ResourceLimit(_) => Exit(3, anyhow!("{e}")),
        pmcert::Error::Parse { .. } => Exit(2, anyhow!("{e}")),
        _ => Exit(1, anyhow!("{e}")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let res = match cli.cmd {
        Cmd::Isolate { polyfile, region, width } => isolate(&polyfile, region, &width),
        Cmd::Pmcheck { problemfile, out } => pmcheck(&problemfile, out.as_deref()),
        Cmd::Casestudy { action } => casestudy(action),
        Cmd::Recheck { certfile } => recheck_file(&certfile),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}

fn read(path: &Path) -> Result<String, Exit> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(input)
}

/// Polynomial text without `#` comments.
fn strip_comments(text: &str) -> String {
    text.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join(" ")
}

fn isolate(path: &Path, region: RegionArg, width: &str) -> Result<u8, Exit> {
    let src = strip_comments(&read(path)?);
    let (terms, decimal) = parse_terms(&src).map_err(core)?;
    if decimal {
        eprintln!("warning: decimal coefficients read as exact rationals");
    }
    let vars = terms.variables();
    let var = match vars.as_slice() {
        [] => "x".to_string(),
        [v] => v.clone(),
        _ => return Err(input(anyhow!("expected one variable, found {}", vars.join(", ")))),
    };
    let p = parse_uni(&src, &var).map_err(core)?;
    let w = problem::rational(width).map_err(input)?;
    let region = match region {
        RegionArg::All => Region::All,
        RegionArg::Positives => Region::Positives,
    };
    let list = isolate_roots(&p, &region, &w).map_err(|e| match e {
        pmcert::Error::ZeroPolynomial | pmcert::Error::InvalidArgument(_) => input(anyhow!("{e}")),
        e => core(e),
    })?;
    eprintln!("{} root(s) of a degree-{} polynomial", list.len(), p.deg());
    print!("{}", list.to_text());
    Ok(0)
}

fn pmcheck(path: &Path, out: Option<&Path>) -> Result<u8, Exit> {
    let text = read(path)?;
    let def: problem::ProblemDef = toml::from_str(&text)
        .with_context(|| format!("in {}", path.display()))
        .map_err(input)?;
    let res = problem::run(&def).map_err(input)?;
    let json = serde_json::to_string_pretty(&res).map_err(|e| Exit(1, e.into()))?;
    for l in &res.certified {
        eprintln!("certified: {}", l.label);
    }
    for f in &res.failed {
        eprintln!("not certified: {}: {}", f.label, f.reason);
    }
    if let Some(p) = out {
        fs::write(p, &json).with_context(|| format!("cannot write {}", p.display())).map_err(input)?;
    }
    println!("{json}");
    Ok(if res.failed.is_empty() { 0 } else { 1 })
}

fn casestudy(action: CaseAction) -> Result<u8, Exit> {
    let CaseAction::Run { name, period, width_digits, refine_cap_digits, max_depth, k_max, max_degree, out } = action
    else {
        for s in STUDIES {
            println!("{s}");
        }
        return Ok(0);
    };
    if !STUDIES.contains(&name.as_str()) {
        return Err(input(anyhow!("unknown study `{name}` (known: {})", STUDIES.join(", "))));
    }
    let opts = StudyOptions {
        period,
        width_digits,
        refine_cap_digits,
        max_depth,
        k_max,
        max_degree,
    };
    let report = run_study(&name, &opts).map_err(core)?;
    for c in &report.checks {
        eprintln!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
    }
    for (what, d) in &report.timings {
        eprintln!("time {what}: {:.2?}", d);
    }
    let json = report.to_json();
    match out {
        Some(p) => fs::write(&p, &json).with_context(|| format!("cannot write {}", p.display())).map_err(input)?,
        None => println!("{json}"),
    }
    Ok(if report.passed() { 0 } else { 1 })
}

/// Every certificate found in a JSON document.
fn certificates(v: &Value) -> Result<Vec<(String, PMCertificate)>> {
    fn labelled(arr: &[Value]) -> Result<Vec<(String, PMCertificate)>> {
        arr.iter()
            .enumerate()
            .map(|(k, e)| {
                let label = e.get("label").and_then(Value::as_str).map_or_else(|| format!("#{}", k + 1), String::from);
                let c = e.get("certificate").unwrap_or(e);
                Ok((label, serde_json::from_value(c.clone())?))
            })
            .collect()
    }
    if let Some(arr) = v.as_array() {
        return labelled(arr);
    }
    for key in ["certificates", "certified"] {
        if let Some(arr) = v.get(key).and_then(Value::as_array) {
            return labelled(arr);
        }
    }
    Ok(vec![("certificate".into(), serde_json::from_value(v.clone())?)])
}

fn recheck_file(path: &Path) -> Result<u8, Exit> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text).map_err(input)?;
    let certs = certificates(&v).map_err(input)?;
    let mut bad = 0;
    for (label, c) in &certs {
        match recheck(c) {
            Ok(()) => println!("ok {label}"),
            Err(e) => {
                bad += 1;
                println!("FAIL {label}: {e}");
            }
        }
    }
    eprintln!("{} of {} certificate(s) verified", certs.len() - bad, certs.len());
    Ok(if bad == 0 { 0 } else { 1 })
}
