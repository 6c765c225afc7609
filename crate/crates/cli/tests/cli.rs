use std::process::Command;

use birflow::lie_structure::CatalogName;
use birflow::vector_fields::SurfaceModel;
use birflow_cli::{parse_field, run_args, Outcome};
use serde_json::Value;

fn run(args: &[&str]) -> Outcome {
    run_args(std::iter::once("birflow").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let out = run(&a);
    assert_eq!(out.code, 0, "{:?}: {}", args, out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn no_numbers(v: &Value) -> bool {
    match v {
        Value::Number(_) => false,
        Value::Array(a) => a.iter().all(no_numbers),
        Value::Object(m) => m.values().all(no_numbers),
        _ => true,
    }
}

#[test]
fn not_integrable_example() {
    let j = json(&["integrable", "y^2+x d/dy"]);
    assert_eq!(j["verdict"], "NotIntegrable");
    assert_eq!(j["delta"], "-x");
}

#[test]
fn sl2_complete_example() {
    let j = json(&["sl2-complete", "d/dy", "y d/dy", "--check"]);
    assert_eq!(j["verdict"], "Completed");
    assert_eq!(j["z"], "y^2 d/dy");
    assert_eq!(j["model"], "g0");
}

#[test]
fn catalog_g2_dims() {
    let j = json(&["catalog", "BorelG2"]);
    let dims: Vec<&str> = j["dims"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(&dims[..4], &["8", "6", "4", "1"]);
    assert!(no_numbers(&j));
}

#[test]
fn example_one_pullback() {
    let j = json(&["pullback", "(x+1) d/dx + d/dy", "(y/(x+1), y/(x-1))", "--check"]);
    let expect = parse_field("(x^2-1)*(y+2)/(2*y) d/dx + (y/2+2*x+x*y/2) d/dy", SurfaceModel::F(0)).unwrap();
    let got = parse_field(j["pullback"].as_str().unwrap(), SurfaceModel::F(0)).unwrap();
    assert_eq!(got, expect);
    let t = json(&["tangency", j["pullback"].as_str().unwrap()]);
    assert_eq!(t["tangent"], true);
}

#[test]
fn input_errors_exit_one() {
    let out = run(&["integrable", "d/dz"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("1:1"), "{}", out.stderr);
    let out = run(&["bracket", "x^65 d/dx", "d/dy"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("degree overflow"));
    assert_eq!(run(&["catalog", "E8"]).code, 1);
    assert_eq!(run(&["normalize", "y^2 d/dy"]).code, 1);
    assert_eq!(run(&["integrable", "d/dx"]).code, 1);
    assert_eq!(run(&["frobnicate"]).code, 1);
}

#[test]
fn extension_and_plane() {
    let j = json(&["integrable", "(y^2-2) d/dy", "--extension", "d=2", "--check"]);
    assert_eq!(j["verdict"], "Integrable");
    assert_eq!(j["model"], "L");
    let j = json(&["classify", "x d/dx + 2*y d/dy", "--surface", "p2", "--check"]);
    assert_eq!(j["verdict"], "H_gamma(2)");
}

#[test]
fn verdicts_in_check_mode() {
    let cases: &[&[&str]] = &[
        &["bracket", "x d/dy", "y^2 d/dy"],
        &["collinear", "d/dy", "x d/dy"],
        &["polar", "1/y d/dx"],
        &["first-integral", "x^2 d/dx - y*(x - 2*y) d/dy", "x^2*y/(x-y)"],
        &["flow", "y^2 d/dy"],
        &["adapt", "x^2 d/dx - y*(x - 2*y) d/dy", "x^2*y/(x-y)"],
        &["normalize", "(x+1) d/dx + (x^2 + y) d/dy"],
        &["reduce", "x d/dx + (y + x) d/dy"],
        &["hgamma", "2", "1,1,0,1"],
        &["algebra", "killing", "d/dy", "y d/dy", "y^2 d/dy"],
        &["algebra", "derived", "d/dx", "x d/dx", "d/dy", "x d/dy", "x^2 d/dy", "y d/dy"],
        &["sl2-verify", "d/dx", "x d/dx + y d/dy", "x^2 d/dx + 2*x*y d/dy"],
        &["sl2-complete", "d/dy", "x d/dx + y d/dy", "--c2", "1"],
        &["sl2-complete", "d/dy", "2*x d/dx + y d/dy", "--c2", "3"],
        &["classify2", "d/dy", "x d/dx + 3*y d/dy"],
        &["classify2", "d/dx + y d/dy", "y d/dy"],
    ];
    for c in cases {
        let mut a = c.to_vec();
        a.push("--check");
        let j = json(&a);
        assert!(no_numbers(&j), "{:?}", c);
    }
}

#[test]
fn not_closed_is_a_verdict() {
    let j = json(&["algebra", "structure", "x d/dy", "y^2 d/dy"]);
    assert_eq!(j["verdict"], "NotClosed");
    assert_eq!(j["witness"], "(2*x*y) d/dy");
}

#[test]
fn catalog_round_trips() {
    let fixed = CatalogName::FIXED.iter().copied();
    let families = [CatalogName::Bn(2), CatalogName::AutFn(3), CatalogName::Gn(2)];
    for n in fixed.chain(families) {
        let name = n.to_string();
        let j = json(&["catalog", &name, "--check"]);
        assert_eq!(j["verdict"], name.as_str());
    }
}

#[test]
fn text_output_and_out_file() {
    let dir = std::env::temp_dir().join(format!("birflow-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&["classify2", "d/dy", "x d/dy", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), out.stdout);
    let t = run(&["classify2", "d/dy", "x d/dy", "--text"]);
    assert!(t.stdout.contains("verdict: CollinearAbelian(x)"), "{}", t.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_birflow");
    let ok = Command::new(bin).args(["integrable", "y^2+x d/dy"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("verdict: NotIntegrable"));
    let bad = Command::new(bin).args(["integrable", "d/dz"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn invariant_violations_exit_two() {
    let e = birflow_cli::CliError::from(birflow::Error::InvariantViolation("x".into()));
    assert_eq!(e.exit_code(), 2);
    assert_eq!(birflow_cli::CliError::from(birflow::Error::NotAffinePair).exit_code(), 1);
}
