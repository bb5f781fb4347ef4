use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn rbacs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbacs")).args(args).output().unwrap()
}

fn data(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "data", name].iter().collect();
    path.to_string_lossy().into_owned()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
}

#[test]
fn solve_reports_a_valid_tour() {
    let text = stdout(&rbacs(&["solve", "--algo", "rbacs", "--seed", "7", "--budget", "40", &data("eil51.tsp")]));
    let mut cities: Vec<usize> = field(&text, "tour").split(' ').map(|c| c.parse().unwrap()).collect();
    cities.sort_unstable();
    assert_eq!(cities, (1..=51).collect::<Vec<_>>());
    assert!(field(&text, "length").parse::<u64>().unwrap() >= 426);
    assert_eq!(field(&text, "iterations"), "40");
    assert_eq!(field(&text, "seed"), "7");
}

#[test]
fn solve_on_three_cities_reports_the_perimeter() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tri.tsp");
    std::fs::write(
        &path,
        "NAME : tri\nTYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 3 0\n3 0 4\nEOF\n",
    )
    .unwrap();
    for algo in ["acs", "rbacs"] {
        let text = stdout(&rbacs(&["solve", "--algo", algo, "--budget", "5", path.to_str().unwrap()]));
        assert_eq!(field(&text, "length"), "12");
    }
}

#[test]
fn missing_file_fails_with_diagnostic() {
    let out = rbacs(&["solve", "/definitely/not/here.tsp"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("file not found"));
}

#[test]
fn inspect_reports_dimensions() {
    for (name, dim, nn) in [("eil51.tsp", "51", "511"), ("eil76.tsp", "76", "642")] {
        let text = stdout(&rbacs(&["inspect", &data(name)]));
        assert_eq!(field(&text, "dimension"), dim);
        assert_eq!(field(&text, "edge_weight_type"), "EUC_2D");
        assert_eq!(field(&text, "nearest_neighbor_length"), nn);
        assert!(field(&text, "tau0").parse::<f64>().unwrap() > 0.0);
    }
}

#[test]
fn inspect_rejects_non_tsplib_text() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("junk.tsp");
    std::fs::write(&path, "this is not a TSPLIB file\n").unwrap();
    let out = rbacs(&["inspect", path.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn invalid_parameters_are_rejected() {
    let out = rbacs(&["solve", "--q0", "1.5", &data("eil51.tsp")]);
    assert!(!out.status.success());
    let out = rbacs(&["solve", "--algo", "acs", "--rho-red", "0.2", &data("eil51.tsp")]);
    assert!(!out.status.success());
}

fn bench_into(dir: &Path) -> String {
    let traces = dir.join("traces");
    let summary = dir.join("summary.txt");
    let text = stdout(&rbacs(&[
        "bench",
        "--trials",
        "3",
        "--seed",
        "5",
        "--budget",
        "30",
        "--trace-dir",
        traces.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
        &data("eil51.tsp"),
    ]));
    assert_eq!(std::fs::read_to_string(summary).unwrap(), text);
    text
}

#[test]
fn bench_is_byte_identical_across_runs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert_eq!(bench_into(a.path()), bench_into(b.path()));
    for i in 0..3 {
        let name = format!("traces/trace_{i:03}.csv");
        let ta = std::fs::read(a.path().join(&name)).unwrap();
        assert_eq!(ta, std::fs::read(b.path().join(&name)).unwrap());
        assert_eq!(String::from_utf8(ta).unwrap().lines().count(), 31);
    }
}

#[test]
fn single_trial_bench_mean_is_that_trial() {
    let text = stdout(&rbacs(&["bench", "--algo", "acs", "--trials", "1", "--budget", "20", &data("eil51.tsp")]));
    let min: f64 = field(&text, "min").parse().unwrap();
    assert_eq!(field(&text, "mean").parse::<f64>().unwrap(), min);
    assert_eq!(field(&text, "reference_optimum"), "426");
    assert!(field(&text, "budget") == "20");
}
