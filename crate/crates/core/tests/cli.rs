mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use common::data_dir;

fn kmm(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kmm-qap"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn toy4() -> String {
    data_dir().join("toy4.dat").display().to_string()
}

#[test]
fn solve_writes_the_optimal_solution() {
    let dir = tempfile::tempdir().unwrap();
    let o = kmm(&["solve", &toy4(), "--seed", "3"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("toy4 objective=123 evaluations="));
    let sln = fs::read_to_string(dir.path().join("toy4.sln")).unwrap();
    assert_eq!(sln, "4\n1 4 3 2\n123\n");

    let e = kmm(&["eval", &toy4(), "toy4.sln"], dir.path());
    assert!(e.status.success(), "{}", stderr(&e));
    assert_eq!(stdout(&e), "123\n");
}

#[test]
fn solve_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let inst = data_dir().join("qaplib").join("nug12.dat").display().to_string();
    let args = |out: &'static str| {
        vec!["solve".to_string(), inst.clone(), "--seed".into(), "11".into(), "--budget".into(), "30000".into(), "--out".into(), out.into()]
    };
    for out in ["a.sln", "b.sln"] {
        let a: Vec<String> = args(out);
        let refs: Vec<&str> = a.iter().map(String::as_str).collect();
        assert!(kmm(&refs, dir.path()).status.success());
    }
    let a = fs::read(dir.path().join("a.sln")).unwrap();
    let b = fs::read(dir.path().join("b.sln")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn solve_rejects_tiny_budget() {
    let dir = tempfile::tempdir().unwrap();
    let o = kmm(&["solve", &toy4(), "--budget", "972"], dir.path());
    assert!(!o.status.success());
    assert!(stderr(&o).contains("budget too small"), "{}", stderr(&o));
}

#[test]
fn eval_reports_objectives_and_rejects_bad_solutions() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("id.sln"), "2\n1 2\n").unwrap();
    fs::write(dir.path().join("bad.sln"), "2\n1 1\n").unwrap();
    let toy2 = data_dir().join("toy2.dat").display().to_string();
    let o = kmm(&["eval", &toy2, "id.sln"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "6\n");
    let o = kmm(&["eval", &toy2, "bad.sln"], dir.path());
    assert!(!o.status.success());
    assert!(stderr(&o).contains("not a permutation"), "{}", stderr(&o));
    let o = kmm(&["eval", &toy2, "missing.sln"], dir.path());
    assert!(!o.status.success());
}

#[test]
fn pmf_prints_the_distance_law() {
    let dir = tempfile::tempdir().unwrap();
    let o = kmm(&["pmf", "--n", "4", "--theta", "0"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,probability");
    assert_eq!(lines.len(), 6);
    let probs: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    let expected = [1.0, 0.0, 6.0, 8.0, 9.0].map(|c| c / 24.0);
    for (p, e) in probs.iter().zip(expected) {
        assert!((p - e).abs() < 1e-12);
    }

    let o = kmm(&["pmf", "--n", "10", "--expected-distance", "2", "--exclude-consensus"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("# expected_distance=2"));
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body.len(), 12);
    assert_eq!(body[1], "0,0");

    let o = kmm(&["pmf", "--n", "4", "--theta", "1", "--expected-distance", "2"], dir.path());
    assert!(!o.status.success());
}

fn toy_bench_dir() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir(dir.path().join("inst")).unwrap();
    fs::copy(data_dir().join("toy4.dat"), dir.path().join("inst/toy4.dat")).unwrap();
    fs::copy(data_dir().join("toy_best_known.csv"), dir.path().join("best.csv")).unwrap();
    dir
}

#[test]
fn bench_reports_zero_ardp_on_the_toy() {
    let dir = toy_bench_dir();
    let o = kmm(
        &["bench", "inst", "--registry", "best.csv", "--reps", "3", "--out", "r.csv", "--json", "r.json"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(dir.path().join("r.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], kmm_qap::bench::REPORT_HEADER);
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(&fields[..6], &["toy4", "4", "3", "123.0", "123", "0.0"]);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(json["rows"][0]["instance"], "toy4");
}

#[test]
fn bench_output_is_independent_of_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir(dir.path().join("inst")).unwrap();
    for name in ["nug12", "chr12a", "tai12a"] {
        fs::copy(
            data_dir().join("qaplib").join(format!("{}.dat", name)),
            dir.path().join(format!("inst/{}.dat", name)),
        )
        .unwrap();
    }
    fs::copy(
        data_dir().join("qaplib/best_known.csv"),
        dir.path().join("best.csv"),
    )
    .unwrap();
    let run = |workers: &str, out: &str| {
        let o = kmm(
            &[
                "bench", "inst", "--registry", "best.csv", "--reps", "3", "--budget", "20000",
                "--pop", "100", "--seed", "4", "--workers", workers, "--no-timing", "--out", out,
            ],
            dir.path(),
        );
        assert!(o.status.success(), "{}", stderr(&o));
        fs::read(dir.path().join(out)).unwrap()
    };
    assert_eq!(run("1", "one.csv"), run("3", "three.csv"));
}

#[test]
fn bench_errors() {
    let dir = toy_bench_dir();
    fs::copy(data_dir().join("toy2.dat"), dir.path().join("inst/toy2.dat")).unwrap();
    let o = kmm(&["bench", "inst", "--registry", "best.csv", "--reps", "1"], dir.path());
    assert!(!o.status.success());
    assert!(stderr(&o).contains("toy2"), "{}", stderr(&o));

    fs::create_dir(dir.path().join("empty")).unwrap();
    let o = kmm(&["bench", "empty", "--registry", "best.csv"], dir.path());
    assert!(!o.status.success());
}
