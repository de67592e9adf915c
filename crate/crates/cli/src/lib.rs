//! Command implementations behind the `ecii` binary.
//!
//! Every command returns a [`CliError`] carrying its exit code: 1 for
//! configuration, syntax and usage problems, 2 for knowledge-base semantic
//! problems and stale caches, 3 for internal failures.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use log::{info, warn};
use sha2::{Digest, Sha256};
use thiserror::Error;

use ecii_core::enrich::{enrich_kb, enumerate_expressions};
use ecii_core::induce::{run_induction, InduceError, MaterializationSource, SearchConfig};
use ecii_core::io::{parse_config, parse_expression, parse_kb, parse_report, serialize_kb, ParseError, ResultReport};
use ecii_core::kb::{ExampleSet, KbError, KnowledgeBase};
use ecii_core::materialize::{materialize, InvocationCounter, LoadedMeta};
use ecii_core::oracle::{unfold, Oracle};
use ecii_core::synthetic::family_job;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Semantic(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Semantic(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn parse(path: &Path, e: ParseError) -> Self {
        let msg = format!("{}: {e}", path.display());
        if e.is_semantic() {
            CliError::Semantic(msg)
        } else {
            CliError::Usage(msg)
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

/// Hex SHA-256 of the canonical serialization of `kb`.
pub fn kb_hash(kb: &KnowledgeBase) -> String {
    hex::encode(Sha256::digest(serialize_kb(kb).as_bytes()))
}

/// A parsed job: config, knowledge base and examples.
pub struct Job {
    pub kb: KnowledgeBase,
    pub examples: ExampleSet,
    pub search: SearchConfig,
    pub kb_path: PathBuf,
}

fn example_error(e: KbError) -> CliError {
    match e {
        KbError::OverlappingExamples(_) | KbError::EmptyExamples(_) => CliError::Usage(e.to_string()),
        _ => CliError::Semantic(e.to_string()),
    }
}

/// Reads a job config; its `kb` path is resolved against the config's directory.
pub fn load_job(config_path: &Path) -> Result<Job, CliError> {
    let cfg = parse_config(&read(config_path)?)
        .map_err(|e| CliError::Usage(format!("{}: {e}", config_path.display())))?;
    let kb_path = config_path.parent().unwrap_or(Path::new("")).join(&cfg.kb_path);
    let kb = parse_kb(&read(&kb_path)?).map_err(|e| CliError::parse(&kb_path, e))?;
    let examples = ExampleSet::from_names(&kb, &cfg.positives, &cfg.negatives).map_err(example_error)?;
    Ok(Job {
        kb,
        examples,
        search: cfg.search,
        kb_path,
    })
}

fn induce_error(e: InduceError) -> CliError {
    match e {
        InduceError::Materialization(p) => {
            let msg = format!("materialization file: {p}");
            if p.is_semantic() {
                CliError::Semantic(msg)
            } else {
                CliError::Usage(msg)
            }
        }
        other => CliError::Internal(other.to_string()),
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub config: PathBuf,
    pub out: Option<PathBuf>,
    pub alpha3: bool,
    pub mat: Option<PathBuf>,
    pub max_solutions: Option<usize>,
    pub quiet: bool,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub out: PathBuf,
    pub report: ResultReport,
}

/// `<config stem>.results.tsv` next to the config.
pub fn default_results_path(config: &Path) -> PathBuf {
    let stem = config.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    config.with_file_name(format!("{stem}.results.tsv"))
}

fn check_meta(meta: &LoadedMeta, key: &str, expected: &str, path: &Path) -> Result<(), CliError> {
    match meta.get(key) {
        Some(v) if v == expected => Ok(()),
        found => Err(CliError::Semantic(format!(
            "{}: stale materialization: `{key}` is {}, expected {expected}",
            path.display(),
            found.unwrap_or("missing")
        ))),
    }
}

pub fn cmd_run(opts: &RunOptions) -> Result<RunOutcome, CliError> {
    let start = Instant::now();
    let mut job = load_job(&opts.config)?;
    if opts.alpha3 {
        job.search.compute_alpha3 = true;
    }
    if let Some(n) = opts.max_solutions {
        job.search.max_solutions = n;
    }
    let hash = kb_hash(&job.kb);
    let mat_text = match &opts.mat {
        Some(path) => {
            let text = read(path)?;
            let meta = LoadedMeta::scan(&text);
            check_meta(&meta, "kb.hash", &hash, path)?;
            check_meta(&meta, "n1", &job.search.n1.to_string(), path)?;
            check_meta(&meta, "n2", &job.search.n2.to_string(), path)?;
            check_meta(&meta, "maxExpressions", &job.search.max_expressions.to_string(), path)?;
            Some(text)
        }
        None => None,
    };
    let parse_ms = start.elapsed().as_secs_f64() * 1e3;
    let source = match &mat_text {
        Some(t) => MaterializationSource::Load(t),
        None => MaterializationSource::Compute,
    };
    let induction = run_induction(&job.kb, &job.examples, &job.search, source).map_err(induce_error)?;
    let mut report = induction.report;
    report.kb_hash = Some(hash);
    report.timings.parse = parse_ms;
    report.timings.total += parse_ms;
    if report.materializer_invocations != 1 {
        return Err(CliError::Internal(format!(
            "materializer ran {} times",
            report.materializer_invocations
        )));
    }

    let out = opts.out.clone().unwrap_or_else(|| default_results_path(&opts.config));
    write(&out, &report.to_text())?;
    if !opts.quiet {
        match report.rows.first() {
            Some(r) => println!("best: {} (alpha2={}, length={})", r.expression, r.alpha2, r.length),
            None => println!("no solutions"),
        }
        let t = &report.timings;
        println!(
            "time ms: parse={:.3} enrich={:.3} materialize={:.3} induce={:.3} total={:.3}",
            t.parse, t.enrich, t.materialize, t.induce, t.total
        );
        println!("results: {}", out.display());
    }
    Ok(RunOutcome { out, report })
}

/// One row of the verification table.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyRow {
    pub expression: String,
    pub alpha2: f64,
    pub alpha3: f64,
    pub agree: bool,
}

/// `expression<TAB>alpha2<TAB>alpha3<TAB>agree` rows under a header line.
pub fn verify_table(rows: &[VerifyRow]) -> String {
    let mut out = String::from("candidate\talpha2\talpha3\tagree\n");
    for r in rows {
        let _ = writeln!(out, "{}\t{:?}\t{:?}\t{}", r.expression, r.alpha2, r.alpha3, r.agree);
    }
    out
}

pub fn cmd_verify(config: &Path, results: &Path, out: Option<&Path>) -> Result<Vec<VerifyRow>, CliError> {
    let job = load_job(config)?;
    let report = parse_report(&read(results)?).map_err(|e| CliError::Usage(format!("{}: {e}", results.display())))?;
    let hash = kb_hash(&job.kb);
    match &report.kb_hash {
        Some(h) if *h == hash => {}
        Some(_) => {
            return Err(CliError::Semantic(format!(
                "{}: stale results: knowledge base {} has changed",
                results.display(),
                job.kb_path.display()
            )))
        }
        None => warn!("{}: no kb.hash line, cannot check staleness", results.display()),
    }

    let mut defined = job.kb.clone();
    let bad_define = |e: String| CliError::Usage(format!("{}: {e}", results.display()));
    for (name, _) in &report.definitions {
        defined.declare_fresh_concept(name).map_err(|e| bad_define(e.to_string()))?;
    }
    for (name, body) in &report.definitions {
        let def = parse_expression(body).map_err(|e| bad_define(e.to_string()))?;
        defined.add_equivalence(name, &def).map_err(|e| bad_define(e.to_string()))?;
    }

    let oracle = Oracle::new(&job.kb);
    let mut rows = Vec::with_capacity(report.rows.len());
    for row in &report.rows {
        let expr = parse_expression(&row.expression).map_err(|e| bad_define(e.to_string()))?;
        defined
            .check_expression(&expr)
            .map_err(|e| CliError::Semantic(format!("{}: {e}", results.display())))?;
        let alpha3 = oracle.alpha3(&unfold(&defined, &expr), &job.examples).as_f64();
        let agree = alpha3 == row.alpha2;
        if !agree {
            info!("{}: alpha2={} alpha3={}", row.expression, row.alpha2, alpha3);
        }
        rows.push(VerifyRow {
            expression: row.expression.clone(),
            alpha2: row.alpha2,
            alpha3,
            agree,
        });
    }
    let table = verify_table(&rows);
    match out {
        Some(path) => write(path, &table)?,
        None => print!("{table}"),
    }
    Ok(rows)
}

/// Reads a knowledge base, enriches it with the given bounds and writes
/// the full materialization with its staleness metadata.
pub fn cmd_materialize(kb_path: &Path, out: &Path, search: &SearchConfig) -> Result<(), CliError> {
    let kb = parse_kb(&read(kb_path)?).map_err(|e| CliError::parse(kb_path, e))?;
    let enumeration = enumerate_expressions(&kb, search.n1, search.n2, search.max_expressions);
    let (enriched, _) = enrich_kb(&kb, &enumeration.expressions);
    let counter = InvocationCounter::new();
    let m = materialize(&enriched, None, &counter);
    let meta = [
        ("kb.hash", kb_hash(&kb)),
        ("n1", search.n1.to_string()),
        ("n2", search.n2.to_string()),
        ("maxExpressions", search.max_expressions.to_string()),
    ];
    write(out, &m.to_text(&enriched, &meta))
}

/// Mean phase times over the repetitions for one synthetic size.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub individuals: usize,
    pub reps: usize,
    pub enrich_ms: f64,
    pub materialize_ms: f64,
    pub induce_ms: f64,
    pub total_ms: f64,
    pub best_alpha2: f64,
}

pub const BENCH_MIN_SIZE: usize = 6;

pub fn run_bench(sizes: &[usize], reps: usize, search: &SearchConfig) -> Result<Vec<BenchRow>, CliError> {
    if reps == 0 {
        return Err(CliError::Usage("repetitions must be positive".into()));
    }
    if let Some(&bad) = sizes.iter().find(|&&s| s < BENCH_MIN_SIZE) {
        return Err(CliError::Usage(format!(
            "size {bad} rejected: synthetic knowledge bases need at least {BENCH_MIN_SIZE} individuals"
        )));
    }
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let job = family_job(n, n as u64);
        let examples = ExampleSet::from_names(&job.kb, &job.positives, &job.negatives)
            .map_err(|e| CliError::Internal(format!("synthetic examples: {e}")))?;
        let mut row = BenchRow {
            individuals: n,
            reps,
            enrich_ms: 0.0,
            materialize_ms: 0.0,
            induce_ms: 0.0,
            total_ms: 0.0,
            best_alpha2: 0.0,
        };
        for _ in 0..reps {
            let out = run_induction(&job.kb, &examples, search, MaterializationSource::Compute).map_err(induce_error)?;
            let r = &out.report;
            if r.materializer_invocations != 1 {
                return Err(CliError::Internal(format!(
                    "size {n}: materializer ran {} times",
                    r.materializer_invocations
                )));
            }
            row.enrich_ms += r.timings.enrich;
            row.materialize_ms += r.timings.materialize;
            row.induce_ms += r.timings.induce;
            row.total_ms += r.timings.total;
            row.best_alpha2 = r.rows.first().map_or(0.0, |x| x.alpha2);
        }
        let k = reps as f64;
        row.enrich_ms /= k;
        row.materialize_ms /= k;
        row.induce_ms /= k;
        row.total_ms /= k;
        info!("size {n}: mean total {:.3} ms", row.total_ms);
        rows.push(row);
    }
    Ok(rows)
}

pub fn bench_table(rows: &[BenchRow]) -> String {
    let mut out = String::from("individuals\treps\tenrich_ms\tmaterialize_ms\tinduce_ms\ttotal_ms\tbest_alpha2\tnote\n");
    for r in rows {
        let note = if r.reps == 1 { "single-sample" } else { "" };
        let _ = writeln!(
            out,
            "{}\t{}\t{:.3}\t{:.3}\t{:.3}\t{:.3}\t{:?}\t{note}",
            r.individuals, r.reps, r.enrich_ms, r.materialize_ms, r.induce_ms, r.total_ms, r.best_alpha2
        );
    }
    out
}

/// Sizes the global worker pool from `ECII_THREADS` (0 or unset = automatic).
pub fn configure_threads(value: Option<&str>) -> Result<(), CliError> {
    let n = match value.map(str::trim) {
        None | Some("") => 0,
        Some(v) => v
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("ECII_THREADS must be a non-negative integer, got `{v}`")))?,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Internal(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ecii_core::kb::family_fixture;

    #[test]
    fn results_path_sits_next_to_config() {
        assert_eq!(
            default_results_path(Path::new("jobs/fam.conf")),
            PathBuf::from("jobs/fam.results.tsv")
        );
    }

    #[test]
    fn hash_ignores_declaration_order_but_not_content() {
        let kb = family_fixture();
        let reparsed = parse_kb(&serialize_kb(&kb)).unwrap();
        assert_eq!(kb_hash(&kb), kb_hash(&reparsed));
        assert_eq!(kb_hash(&kb).len(), 64);
        let mut edited = kb.clone();
        edited.assert_type("dave", "Female").unwrap();
        assert_ne!(kb_hash(&kb), kb_hash(&edited));
    }

    #[test]
    fn exit_codes_by_kind() {
        assert_eq!(CliError::Usage(String::new()).exit_code(), 1);
        assert_eq!(CliError::Semantic(String::new()).exit_code(), 2);
        assert_eq!(CliError::Internal(String::new()).exit_code(), 3);
    }

    #[test]
    fn bench_rejects_bad_arguments() {
        let cfg = SearchConfig::default();
        assert_eq!(run_bench(&[0], 1, &cfg).unwrap_err().exit_code(), 1);
        assert_eq!(run_bench(&[100], 0, &cfg).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn bench_averages_repetitions() {
        let cfg = SearchConfig {
            n1: 1,
            n2: 1,
            ..SearchConfig::default()
        };
        let rows = run_bench(&[12, 24], 2, &cfg).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.reps == 2 && r.best_alpha2 == 1.0));
        let table = bench_table(&rows);
        assert_eq!(table.lines().count(), 3);
        assert!(!table.contains("single-sample"));
    }

    #[test]
    fn verify_table_format() {
        let rows = [VerifyRow {
            expression: "Female".into(),
            alpha2: 1.0,
            alpha3: 0.5,
            agree: false,
        }];
        assert_eq!(verify_table(&rows), "candidate\talpha2\talpha3\tagree\nFemale\t1.0\t0.5\tfalse\n");
    }
}
