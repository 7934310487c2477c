use std::path::PathBuf;
use std::process::{Command, Output};

fn problems(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems").join(name)
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pmcert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn pmcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmcert")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn isolate_reports_no_roots_for_x2_plus_1() {
    let p = scratch("noroots.txt", "x^2 + 1\n");
    let o = pmcert(&["isolate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim().is_empty());
}

#[test]
fn isolate_brackets_sqrt2() {
    let o = pmcert(&["isolate", problems("sqrt2.txt").to_str().unwrap(), "--region", "positives", "--width", "1/1000000"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines.len(), 1);
    let ends: Vec<f64> = lines[0]
        .split(',')
        .map(|s| {
            let (n, d) = s.trim().split_once('/').unwrap();
            n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap()
        })
        .collect();
    assert!(ends[0] <= 2f64.sqrt() && 2f64.sqrt() <= ends[1]);
    assert!(ends[1] - ends[0] <= 1e-6);
}

#[test]
fn pmcheck_then_recheck() {
    let out = scratch("k.json", "");
    let o = pmcert(&["pmcheck", problems("kouchnirenko.toml").to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r = pmcert(&["recheck", out.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(0));
    assert_eq!(stdout(&r).lines().filter(|l| l.starts_with("ok ")).count(), 2);

    // a flipped face sign is caught
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let sign = &mut v["certified"][0]["certificate"]["faces"][0]["sign"];
    *sign = if sign == "positive" { "negative".into() } else { "positive".into() };
    let tampered = v.to_string();
    let bad = scratch("bad.json", &tampered);
    assert_eq!(pmcert(&["recheck", bad.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn uncertified_box_exits_1() {
    let o = pmcert(&["pmcheck", problems("face_zero.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_input_exits_2() {
    let p = scratch("bad.txt", "x^2 + * 3\n");
    assert_eq!(pmcert(&["isolate", p.to_str().unwrap()]).status.code(), Some(2));
    let t = scratch("bad.toml", "kind = \"polynomial-system\"\nequations = [\"x\", \"y\"]\n[[boxes]]\nx = [\"1\", \"0\"]\ny = [\"0\", \"1\"]\n");
    assert_eq!(pmcert(&["pmcheck", t.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(pmcert(&["casestudy", "run", "no-such-study"]).status.code(), Some(2));
}

#[test]
fn casestudy_list_and_limits() {
    let o = pmcert(&["casestudy", "list"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "lotka-volterra"));
    let o = pmcert(&["casestudy", "run", "lotka-volterra", "--period", "6", "--max-degree", "40"]);
    assert_eq!(o.status.code(), Some(3));
}
