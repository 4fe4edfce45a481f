use std::path::PathBuf;
use std::process::{Command, Output};

const DATA_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");

fn bcv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcv")).args(args).output().unwrap()
}

fn data(name: &str) -> String {
    format!("{DATA_DIR}/{name}")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn solve_with_each_method() {
    for method in ["bcv", "cgm", "mbc"] {
        let o = bcv(&["solve", &data("quadratic.json"), "--method", method, "--mu", "1e-2"]);
        assert!(o.status.success(), "{method}: {}", String::from_utf8_lossy(&o.stderr));
        let out = stdout(&o);
        assert_eq!(field(&out, "converged"), "true");
        let x: Vec<f64> = field(&out, "x").split(',').map(|v| v.parse().unwrap()).collect();
        // balance with a = (1, -2, 1), beta = 0.5
        assert!((x[0] - 2.0 * x[1] + x[2] - 0.5).abs() < 1e-9);
    }
}

#[test]
fn solve_writes_trace() {
    let trace = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("trace.csv");
    let o = bcv(&[
        "solve",
        &data("quadratic.json"),
        "--pair",
        "sweep",
        "--linesearch",
        "graddiff",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let iters: usize = field(&stdout(&o), "iterations").parse().unwrap();
    let rows = std::fs::read_to_string(&trace).unwrap().lines().count();
    assert_eq!(rows, iters + 1);
}

#[test]
fn budget_exhaustion_exits_3() {
    let o = bcv(&["solve", &data("quadratic.json"), "--max-iters", "1", "--mu", "1e-9"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(field(&stdout(&o), "converged"), "false");
}

#[test]
fn infeasible_problem_exits_2() {
    let path = scratch(
        "infeasible.json",
        r#"{"n": 2, "a": [1, 1], "beta": 5, "lower": [0, 0], "upper": [1, 1],
            "objective": {"kind": "quadratic", "params": {"matrix": [[1, 0], [0, 1]]}}}"#,
    );
    let o = bcv(&["solve", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn missing_file_and_bad_usage_exit_2() {
    assert_eq!(bcv(&["solve", "/nonexistent/problem.json"]).status.code(), Some(2));
    assert_eq!(bcv(&["bench", "--series", "7"]).status.code(), Some(2));
    assert_eq!(bcv(&["solve"]).status.code(), Some(2));
}

#[test]
fn project_lands_on_feasible_set() {
    let o = bcv(&["project", &data("quadratic.json"), "--point", "5,5,5"]);
    assert!(o.status.success());
    let x: Vec<f64> = stdout(&o).trim().split(',').map(|v| v.parse().unwrap()).collect();
    assert!((x[0] - 2.0 * x[1] + x[2] - 0.5).abs() < 1e-9);
    assert!(x[0] <= 1.0 && x[1] <= 1.0 && x[2] <= 2.0);
}

#[test]
fn check_reports_stationarity_of_solution() {
    let o = bcv(&["solve", &data("quadratic.json"), "--mu", "1e-9"]);
    let x = field(&stdout(&o), "x").to_string();
    let o = bcv(&["check", &data("quadratic.json"), "--point", &x, "--tol", "1e-4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(field(&out, "feasible"), "true");
    assert_eq!(field(&out, "stationary"), "true");

    let o = bcv(&["check", &data("quadratic.json"), "--point", "1,1,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(field(&stdout(&o), "feasible"), "false");
}

#[test]
fn svm_trains_without_errors() {
    let o = bcv(&["svm", &data("svm.csv")]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(field(&stdout(&o), "training_errors"), "0");
}

#[test]
fn market_reaches_equilibrium() {
    let o = bcv(&["market", &data("market.json")]);
    assert!(o.status.success());
    assert_eq!(field(&stdout(&o), "equilibrium"), "true");
}

#[test]
fn bench_subset_formats() {
    let o = bcv(&["bench", "--series", "1", "--beta", "5", "--n", "10", "--format", "csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("series,beta,n,method"));
    // CGM, BCV and MBC for one cell
    assert_eq!(lines.len(), 4);
    let md = stdout(&bcv(&["bench", "--series", "2", "--beta", "5", "--n", "10"]));
    assert!(md.contains('|'));
}
