use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn ecii(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecii"))
        .args(args)
        .env("ECII_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn job_dir() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    for f in ["fam.kb", "fam.conf"] {
        fs::copy(data.join(f), dir.path().join(f)).unwrap();
    }
    dir
}

fn p(path: PathBuf) -> String {
    path.to_string_lossy().into_owned()
}

#[test]
fn run_writes_default_results_file() {
    let dir = job_dir();
    let out = ecii(&["run", "--config", &p(dir.path().join("fam.conf"))]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("best: Female"));
    let text = fs::read_to_string(dir.path().join("fam.results.tsv")).unwrap();
    assert!(text.contains("\n1\t1.0\t1\tFemale\n"));
    assert!(text.contains("# materializer.invocations=1\n"));
}

#[test]
fn alpha3_flag_fills_the_column_and_max_solutions_caps_rows() {
    let dir = job_dir();
    let results = dir.path().join("r.tsv");
    let out = ecii(&[
        "run", "--config", &p(dir.path().join("fam.conf")), "--out", &p(results.clone()), "--alpha3",
        "--max-solutions", "3", "--quiet",
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(results).unwrap();
    assert!(text.contains("\n1\t1.0\t1\tFemale\t1.0\n"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 3);
}

#[test]
fn verify_agrees_then_detects_stale_results() {
    let dir = job_dir();
    let conf = p(dir.path().join("fam.conf"));
    let results = p(dir.path().join("fam.results.tsv"));
    assert_eq!(code(&ecii(&["run", "--config", &conf, "--quiet"])), 0);
    let table = dir.path().join("verify.tsv");
    let out = ecii(&["verify", "--config", &conf, "--results", &results, "--out", &p(table.clone())]);
    assert_eq!(code(&out), 0);
    let table = fs::read_to_string(table).unwrap();
    assert!(table.starts_with("candidate\talpha2\talpha3\tagree\n"));
    assert!(table.lines().skip(1).all(|l| l.ends_with("\ttrue")));

    let kb = dir.path().join("fam.kb");
    let mut text = fs::read_to_string(&kb).unwrap();
    text.push_str("type dave Female\n");
    fs::write(&kb, text).unwrap();
    assert_eq!(code(&ecii(&["verify", "--config", &conf, "--results", &results])), 2);
}

#[test]
fn verify_rejects_empty_results() {
    let dir = job_dir();
    let empty = dir.path().join("empty.tsv");
    fs::write(&empty, "").unwrap();
    let out = ecii(&["verify", "--config", &p(dir.path().join("fam.conf")), "--results", &p(empty)]);
    assert_eq!(code(&out), 1);
}

#[test]
fn missing_kb_is_a_usage_error_naming_the_path() {
    let dir = job_dir();
    fs::remove_file(dir.path().join("fam.kb")).unwrap();
    let out = ecii(&["run", "--config", &p(dir.path().join("fam.conf"))]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("fam.kb"));
}

#[test]
fn semantic_errors_exit_2() {
    let dir = job_dir();
    let kb = dir.path().join("fam.kb");
    let conf = p(dir.path().join("fam.conf"));
    let original = fs::read_to_string(&kb).unwrap();

    fs::write(&kb, format!("{original}type zed Female\n")).unwrap();
    assert_eq!(code(&ecii(&["run", "--config", &conf])), 2);

    fs::write(&kb, format!("{original}rel carol hasChild dave\n")).unwrap();
    let out = ecii(&["run", "--config", &conf]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("star-shaped"));

    fs::write(&kb, format!("{original}equiv Male (not Female)\n")).unwrap();
    assert_eq!(code(&ecii(&["run", "--config", &conf])), 2);

    fs::write(&kb, format!("{original}equiv Male (not Female\n")).unwrap();
    assert_eq!(code(&ecii(&["run", "--config", &conf])), 1);
}

#[test]
fn config_and_usage_errors_exit_1() {
    let dir = job_dir();
    let conf = dir.path().join("fam.conf");
    fs::write(&conf, "kb = fam.kb\npositives = { alice }\nnegatives = { bob }\nk9 = 1\n").unwrap();
    assert_eq!(code(&ecii(&["run", "--config", &p(conf.clone())])), 1);
    assert_eq!(code(&ecii(&["run"])), 1);
    assert_eq!(code(&ecii(&["bogus"])), 1);
    assert_eq!(code(&ecii(&["--help"])), 0);
    assert_eq!(code(&ecii(&["--version"])), 0);
    let bad_threads = Command::new(env!("CARGO_BIN_EXE_ecii"))
        .args(["run", "--config", &p(conf)])
        .env("ECII_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&bad_threads), 1);
}

#[test]
fn materialize_then_run_with_loaded_table() {
    let dir = job_dir();
    let conf = p(dir.path().join("fam.conf"));
    let mat = dir.path().join("fam.mat");
    assert_eq!(code(&ecii(&["materialize", &p(dir.path().join("fam.kb")), "--out", &p(mat.clone())])), 0);
    assert!(fs::read_to_string(&mat).unwrap().contains("type alice Parent\n"));

    let a = dir.path().join("a.tsv");
    let b = dir.path().join("b.tsv");
    assert_eq!(code(&ecii(&["run", "--config", &conf, "--out", &p(a.clone()), "--quiet"])), 0);
    let out = ecii(&["run", "--config", &conf, "--mat", &p(mat.clone()), "--out", &p(b.clone()), "--quiet"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let strip = |path: &Path| -> Vec<String> {
        fs::read_to_string(path)
            .unwrap()
            .lines()
            .filter(|l| !l.starts_with("# time."))
            .map(String::from)
            .collect()
    };
    assert_eq!(strip(&a), strip(&b));
    assert!(strip(&b).contains(&"# materializer.invocations=1".to_string()));

    let other = p(dir.path().join("other.mat"));
    assert_eq!(code(&ecii(&["materialize", &p(dir.path().join("fam.kb")), "--out", &other, "--n1", "1"])), 0);
    assert_eq!(code(&ecii(&["run", "--config", &conf, "--mat", &other, "--quiet"])), 2);
}

#[test]
fn materialize_empty_kb_writes_header_block_only() {
    let dir = tempfile::tempdir().unwrap();
    let kb = dir.path().join("empty.kb");
    fs::write(&kb, "").unwrap();
    let mat = dir.path().join("empty.mat");
    assert_eq!(code(&ecii(&["materialize", &p(kb), "--out", &p(mat.clone())])), 0);
    let text = fs::read_to_string(mat).unwrap();
    assert!(text.lines().all(|l| l.starts_with('#')), "{text}");
}

#[test]
fn bench_flags_single_samples_and_rejects_size_zero() {
    let out = ecii(&["bench", "--sizes", "30,60", "--reps", "1"]);
    assert_eq!(code(&out), 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    let rows: Vec<&str> = stdout.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.ends_with("single-sample")));
    assert_eq!(code(&ecii(&["bench", "--sizes", "0"])), 1);
}
