use pmcert::pm::recheck;
use pmcert::studies::{run_study, RunReport, StudyOptions, REPORT_VERSION, STUDIES};
use pmcert::Error;

fn run(name: &str) -> RunReport {
    let r = run_study(name, &StudyOptions::default()).unwrap();
    for c in r.failed_checks() {
        eprintln!("{name}: {} failed: {}", c.name, c.detail);
    }
    r
}

#[test]
fn kouchnirenko_report() {
    let r = run("kouchnirenko");
    assert!(r.passed());
    assert_eq!(r.certificates.len(), 4);
    // the report survives a JSON round trip and its certificates recheck
    let back: RunReport = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back.version, REPORT_VERSION);
    assert_eq!(back.checks, r.checks);
    for c in &back.certificates {
        recheck(&c.certificate).unwrap();
    }
}

#[test]
fn central_report() {
    let r = run("central-config");
    assert!(r.passed());
    assert_eq!(r.certificates.len(), 1);
}

#[test]
fn piecewise_report() {
    let r = run("piecewise-linear");
    assert!(r.passed());
    assert_eq!(r.counts["limit cycles"], 3);
}

#[test]
fn registry_and_errors() {
    assert_eq!(STUDIES.len(), 5);
    assert!(matches!(run_study("no-such-study", &StudyOptions::default()), Err(Error::InvalidArgument(_))));
    let opts = StudyOptions {
        period: Some(7),
        ..Default::default()
    };
    assert!(matches!(run_study("lotka-volterra", &opts), Err(Error::InvalidArgument(_))));
    let capped = StudyOptions {
        period: Some(6),
        max_degree: Some(40),
        ..Default::default()
    };
    assert!(matches!(run_study("lotka-volterra", &capped), Err(Error::ResourceLimit(_))));
}
