//! Every subcommand through `dispatch` and through the built binary, with
//! payloads parsed back into the library types.

use std::process::Command;

use kfermat::circle::{CircleElement, ExyAudit, Triple};
use kfermat::cli::{dispatch, CommandResult, Status};
use kfermat::hyperbolic::HDeltaAudit;
use kfermat::kfermat::{CyclotomicVector, MonomialRecord};
use kfermat::search::{Counterexample, CoverageReport, SearchReport};
use kfermat::{Point2, ProjectiveRational, Rational};
use serde::de::DeserializeOwned;
use serde_json::Value;

fn run(args: &[&str]) -> CommandResult {
    let r = dispatch(args);
    assert_eq!(r.status, Status::Success, "{args:?}: {:?}", r.diagnostics);
    r
}

fn parse<T: DeserializeOwned>(v: &Value) -> T {
    serde_json::from_value(v.clone()).unwrap_or_else(|e| panic!("{e}: {v}"))
}

fn q(s: &str) -> Rational {
    kfermat::exact_arith::text::parse_rational(s).unwrap()
}

fn pt(x: &str, y: &str) -> Point2<Rational> {
    Point2::new(q(x), q(y))
}

#[test]
fn circle_commands() {
    let d: ProjectiveRational = parse(&run(&["circle", "compose", "--d1", "1/2", "--d2", "1/3"]).payload);
    assert_eq!(d, ProjectiveRational::Finite(q("1")));

    let p: Point2<Rational> = parse(&run(&["circle", "act", "--delta", "1/2", "--point", "1,0"]).payload);
    assert_eq!(p, pt("3/5", "4/5"));
    let p: Point2<Rational> = parse(&run(&["circle", "act", "--delta", "0", "--reflect", "--point", "3/5,4/5"]).payload);
    assert_eq!(p, pt("3/5", "-4/5"));

    let e: CircleElement<Rational> = parse(&run(&["circle", "solve", "--from", "1,0", "--to", "3/5,4/5"]).payload);
    assert_eq!(e, CircleElement::rotation(ProjectiveRational::Finite(q("1/2"))));

    let a: ExyAudit = parse(&run(&["circle", "audit-exy", "--from", "1,0", "--to", "0,1"]).payload);
    assert!(a.right_matches_solver);

    let sweep = run(&["circle", "audit-exy", "--height", "5"]).payload;
    assert_eq!(sweep["pairs"], 144);
    assert_eq!(sweep["mismatch"], 0);

    let triples: Vec<Triple> = parse(&run(&["triples", "--height", "4"]).payload);
    assert_eq!(triples, vec![[3, 4, 5], [5, 12, 13], [8, 15, 17], [7, 24, 25]]);
}

#[test]
fn hyper_commands() {
    let d: ProjectiveRational = parse(&run(&["hyper", "compose", "--d1", "1/2", "--d2", "1/3"]).payload);
    assert_eq!(d, ProjectiveRational::Finite(q("5/7")));
    assert_eq!(
        dispatch(["hyper", "compose", "--d1", "1", "--d2", "0"]).status,
        Status::InvalidArgument
    );
    let p: Point2<Rational> = parse(&run(&["hyper", "act", "--delta", "1/3", "--point", "1,0"]).payload);
    assert_eq!(p, pt("5/4", "3/4"));
    let e = run(&["hyper", "solve", "--from", "5/4,3/4", "--to", "5/3,4/3"]).payload;
    assert_eq!(e["delta"], "1/5");
    let a: HDeltaAudit = parse(&run(&["hyper", "audit", "--from", "5/4,3/4", "--to", "5/3,4/3"]).payload);
    assert_eq!(a.right.value(), Some(&ProjectiveRational::Finite(q("1/5"))));
    assert_eq!(a.left.value(), Some(&ProjectiveRational::Finite(q("-3/55"))));
    assert!(run(&["hyper", "audit", "--height", "5"]).payload["mismatch"].as_u64().unwrap() > 0);
}

#[test]
fn kgroup_commands() {
    assert_eq!(run(&["kgroup", "order", "--k", "3", "--n", "2"]).payload, 18);
    let en = run(&["kgroup", "enumerate", "--k", "3", "--n", "2"]).payload;
    let records: Vec<MonomialRecord> = parse(&en["elements"]);
    assert_eq!(records.len(), 18);
    assert!(records.into_iter().all(|r| r.into_matrix(3).is_ok()));

    let orbit = run(&["kgroup", "orbit", "--k", "3", "--point", "2,3"]).payload;
    assert_eq!(orbit["orbit_size"], 18);
    let points: Vec<CyclotomicVector<Rational>> = parse(&orbit["points"]);
    assert_eq!(points.len(), 18);

    let orbit = run(&["kgroup", "orbit", "--k", "3", "--point", "[0;1],0"]).payload;
    assert_eq!(orbit["orbit_size"], 6);

    let rat = run(&["kgroup", "rational", "--k", "4", "--n", "2"]).payload;
    assert_eq!(rat["order"], 8);
    let pts: Vec<Point2<Rational>> = parse(&run(&["kgroup", "orbit-rational", "--k", "3"]).payload["points"]);
    assert_eq!(pts, vec![pt("0", "1"), pt("1", "0")]);

    let capped = dispatch(["kgroup", "enumerate", "--k", "3", "--n", "3", "--limit", "100"]);
    assert_eq!(capped.status, Status::ResourceLimit);
}

#[test]
fn search_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.json");
    let r = run(&["search", "--k", "2", "--height", "5", "--json", out.to_str().unwrap()]);
    let report: SearchReport = parse(&r.payload);
    assert_eq!(report.solutions.len(), 12);
    let on_disk: SearchReport = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(on_disk, report);

    let r = run(&["search", "--k", "3", "--n", "3", "--height", "6"]);
    let report: SearchReport = parse(&r.payload);
    assert!(report.solutions.contains(&vec![q("1/2"), q("2/3"), q("5/6")]));

    let cov: CoverageReport = parse(&run(&["coverage", "--height", "5"]).payload);
    assert_eq!((cov.covered, cov.total), (12, 12));

    let c: Counterexample = parse(&run(&["counterexample", "--k", "3", "--x1", "7"]).payload);
    assert_eq!(c.tuple, vec![q("7"), q("-7"), q("1")]);
    assert!(c.verified && !c.all_natural);
    assert_eq!(dispatch(["counterexample", "--k", "4", "--x1", "7"]).status, Status::InvalidArgument);
}

#[test]
fn iterate_command() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let r = run(&["iterate", "--delta", "1/2", "--steps", "3", "--csv", out.to_str().unwrap()]);
    let points: Vec<Point2<Rational>> = parse(&r.payload["trajectory"]["points"]);
    assert_eq!(points[2], pt("-117/125", "44/125"));
    assert_eq!(r.payload["trajectory"]["heights"], serde_json::json!(["5", "25", "125"]));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(
        csv,
        "step,x,y,height\n0,1/1,0/1,1\n1,3/5,4/5,5\n2,-7/25,24/25,25\n3,-117/125,44/125,125\n"
    );
    let r = run(&["iterate", "--delta", "inf", "--steps", "2", "--start", "0,1"]);
    assert_eq!(r.payload["trajectory"]["period"], 2);
    assert_eq!(
        dispatch(["iterate", "--delta", "1/2", "--steps", "3", "--start", "1,1"]).status,
        Status::InvalidArgument
    );
    assert_eq!(
        dispatch(["iterate", "--delta", "1/2", "--steps", "20000"]).status,
        Status::ResourceLimit
    );
}

#[test]
fn outputs_are_byte_identical() {
    for args in [
        &["search", "--k", "3", "--height", "20"][..],
        &["kgroup", "orbit", "--k", "4", "--point", "1,1"],
        &["coverage", "--height", "10", "--format", "csv"],
    ] {
        assert_eq!(run(args).output, run(args).output);
    }
}

fn binary(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kfermat")).args(args).output().unwrap();
    (out.status.code(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn binary_exit_codes() {
    assert_eq!(binary(&["circle", "compose", "--d1", "1", "--d2", "1"]), (Some(0), "\"inf\"\n".to_string()));
    assert_eq!(binary(&["circle", "compose", "--d1", "1/0", "--d2", "1"]).0, Some(2));
    assert_eq!(binary(&["nonsense"]).0, Some(2));
    assert_eq!(binary(&["kgroup", "enumerate", "--k", "9", "--n", "7"]).0, Some(3));
    let (code, help) = binary(&["--help"]);
    assert_eq!(code, Some(0));
    assert!(help.contains("Heights are max"));
}

#[test]
fn orbit_limit_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_kfermat"))
        .args(["kgroup", "enumerate", "--k", "3", "--n", "2"])
        .env("FERMAT_ORBIT_LIMIT", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
