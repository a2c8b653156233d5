//! Benchmark harness and the file formats used by the command-line front end:
//! best-known registries, solution files, ARDP reports and distance-law tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eda::{run, EdaConfig, RunResult};
use crate::error::{Error, Result};
use crate::mallows::{theta_from_expected_distance, HammingMallows};
use crate::perm::Permutation;
use crate::qap::{ardp, Objective, QapInstance};

/// Header of the report CSV.
pub const REPORT_HEADER: &str =
    "instance,n,reps,mean_objective,best_objective,ardp_percent,mean_seconds,evals_per_run";

/// Best-known objective values keyed by instance name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BestKnownRegistry {
    entries: BTreeMap<String, Objective>,
}

impl BestKnownRegistry {
    /// Parses `name,best_known` lines. A leading header row is skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let mut entries = BTreeMap::new();
        for (line, record) in reader.records().enumerate() {
            let record = record?;
            if record.len() != 2 {
                return Err(Error::Parse(format!(
                    "registry row {} has {} fields, expected 2",
                    line + 1,
                    record.len()
                )));
            }
            let (name, value) = (&record[0], &record[1]);
            let Ok(best) = value.parse::<Objective>() else {
                if line == 0 {
                    continue;
                }
                return Err(Error::Parse(format!(
                    "registry value {:?} for {} is not an integer",
                    value, name
                )));
            };
            if best <= 0 {
                return Err(Error::Parse(format!(
                    "registry value for {} must be positive, got {}",
                    name, best
                )));
            }
            if entries.insert(name.to_string(), best).is_some() {
                return Err(Error::Parse(format!("duplicate registry entry {}", name)));
            }
        }
        Ok(BestKnownRegistry { entries })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn get(&self, name: &str) -> Option<Objective> {
        self.entries.get(name).copied()
    }

    pub fn insert(&mut self, name: impl Into<String>, best: Objective) {
        self.entries.insert(name.into(), best);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A solution read from disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub permutation: Permutation,
    pub objective: Option<Objective>,
}

/// Solution file text: `n`, the 1-based permutation, the objective.
pub fn format_solution(permutation: &Permutation, objective: Objective) -> String {
    let labels: Vec<String> = permutation
        .to_one_based()
        .iter()
        .map(|v| v.to_string())
        .collect();
    format!("{}\n{}\n{}\n", permutation.len(), labels.join(" "), objective)
}

/// Parses a solution file. The first line holds `n` (optionally followed by
/// the objective, as in QAPLIB `.sln` files); the next `n` tokens are the
/// 1-based permutation, optionally followed by the objective.
pub fn parse_solution(text: &str) -> Result<Solution> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| Error::Parse("empty solution file".into()))?
        .split_whitespace()
        .collect();
    let int = |t: &str| {
        t.parse::<i64>()
            .map_err(|_| Error::Parse(format!("non-integer token {:?} in solution file", t)))
    };
    let n = int(header[0])?;
    if n < 1 {
        return Err(Error::Parse(format!("invalid solution size {}", n)));
    }
    let n = n as usize;
    let mut objective = header.get(1).map(|t| int(t)).transpose()?;
    let rest: Vec<i64> = lines
        .flat_map(|l| l.split_whitespace())
        .map(int)
        .collect::<Result<_>>()?;
    if rest.len() < n {
        return Err(Error::Parse(format!(
            "solution lists {} labels, expected {}",
            rest.len(),
            n
        )));
    }
    if let Some(&v) = rest.get(n) {
        objective = Some(v);
    }
    let labels = rest[..n]
        .iter()
        .map(|&v| {
            usize::try_from(v).map_err(|_| Error::NotAPermutation(format!("negative label {}", v)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Solution {
        permutation: Permutation::from_one_based(&labels)?,
        objective,
    })
}

pub fn read_solution(path: impl AsRef<Path>) -> Result<Solution> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_solution(&text)
}

/// One line of the benchmark report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance: String,
    pub n: usize,
    pub reps: usize,
    pub mean_objective: f64,
    pub best_objective: Objective,
    pub ardp_percent: f64,
    /// `None` when timing is left out of the report.
    pub mean_seconds: Option<f64>,
    pub evals_per_run: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub base_seed: u64,
    pub seeds: Vec<u64>,
    pub config: EdaConfig,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn to_csv(&self) -> Result<String> {
        let mut writer = csv::WriterBuilder::new()
            .has_headers(false)
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        for row in &self.rows {
            writer.serialize(row)?;
        }
        let body = writer
            .into_inner()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let mut out = String::from(REPORT_HEADER);
        out.push('\n');
        out.push_str(&String::from_utf8(body).expect("csv output is utf-8"));
        Ok(out)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

#[derive(Clone, Debug)]
pub struct BenchOptions {
    pub repetitions: usize,
    pub base_seed: u64,
    pub workers: usize,
    pub record_timing: bool,
    pub config: EdaConfig,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            repetitions: 10,
            base_seed: 0,
            workers: 1,
            record_timing: true,
            config: EdaConfig::default(),
        }
    }
}

/// QAPLIB files (`*.dat`) in `dir`, sorted by file name.
pub fn instance_files(dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|ext| ext == "dat"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "no QAPLIB instances (*.dat) in {}",
            dir.display()
        )));
    }
    Ok(files)
}

/// Runs every instance in `dir` `repetitions` times; see [`bench_instances`].
pub fn bench_dir(
    dir: impl AsRef<Path>,
    registry: &BestKnownRegistry,
    opts: &BenchOptions,
) -> Result<BenchReport> {
    let instances = instance_files(dir)?
        .iter()
        .map(QapInstance::from_file)
        .collect::<Result<Vec<_>>>()?;
    bench_instances(&instances, registry, opts)
}

/// Seeded runs `base_seed .. base_seed + repetitions` per instance, executed
/// on `workers` threads and aggregated into rows sorted by instance name.
pub fn bench_instances(
    instances: &[QapInstance],
    registry: &BestKnownRegistry,
    opts: &BenchOptions,
) -> Result<BenchReport> {
    if instances.is_empty() {
        return Err(Error::InvalidArgument("no instances to benchmark".into()));
    }
    if opts.repetitions == 0 {
        return Err(Error::InvalidArgument("repetitions must be positive".into()));
    }
    for inst in instances {
        if registry.get(inst.name()).is_none() {
            return Err(Error::MissingBestKnown(inst.name().to_string()));
        }
    }
    let seeds: Vec<u64> = (0..opts.repetitions as u64)
        .map(|r| opts.base_seed + r)
        .collect();
    let jobs: Vec<(usize, u64)> = (0..instances.len())
        .flat_map(|i| seeds.iter().map(move |&s| (i, s)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let results: Vec<RunResult> = pool.install(|| {
        jobs.par_iter()
            .map(|&(i, seed)| run(&instances[i], &opts.config.clone().with_seed(seed)))
            .collect::<Result<Vec<_>>>()
    })?;

    let mut rows = Vec::with_capacity(instances.len());
    for (i, inst) in instances.iter().enumerate() {
        let runs = &results[i * seeds.len()..(i + 1) * seeds.len()];
        rows.push(aggregate(inst, runs, registry, opts.record_timing)?);
    }
    rows.sort_by(|a, b| a.instance.cmp(&b.instance));
    Ok(BenchReport {
        base_seed: opts.base_seed,
        seeds,
        config: opts.config.clone(),
        rows,
    })
}

fn aggregate(
    inst: &QapInstance,
    runs: &[RunResult],
    registry: &BestKnownRegistry,
    record_timing: bool,
) -> Result<BenchRow> {
    let best_known = registry
        .get(inst.name())
        .ok_or_else(|| Error::MissingBestKnown(inst.name().to_string()))?;
    let objectives: Vec<Objective> = runs.iter().map(|r| r.best_objective).collect();
    let reps = runs.len();
    Ok(BenchRow {
        instance: inst.name().to_string(),
        n: inst.n(),
        reps,
        mean_objective: objectives.iter().map(|&v| v as f64).sum::<f64>() / reps as f64,
        best_objective: *objectives.iter().min().expect("at least one run"),
        ardp_percent: ardp(best_known, &objectives)?,
        mean_seconds: record_timing
            .then(|| runs.iter().map(|r| r.wall_seconds).sum::<f64>() / reps as f64),
        evals_per_run: runs[0].evaluations_used,
    })
}

/// How the concentration of a distance-law table is given.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PmfParameter {
    Theta(f64),
    ExpectedDistance(f64),
}

#[derive(Clone, Debug)]
pub struct PmfTable {
    pub n: usize,
    pub theta: f64,
    /// Set when the table was requested by expected distance.
    pub expected_distance: Option<f64>,
    pub exclude_consensus: bool,
    pub probabilities: Vec<f64>,
}

pub fn pmf_table(n: usize, param: PmfParameter, exclude_consensus: bool) -> Result<PmfTable> {
    let (theta, expected_distance) = match param {
        PmfParameter::Theta(t) => (t, None),
        PmfParameter::ExpectedDistance(e) => (theta_from_expected_distance(n, e)?, Some(e)),
    };
    let model = HammingMallows::new(n, theta, exclude_consensus)?;
    Ok(PmfTable {
        n,
        theta,
        expected_distance,
        exclude_consensus,
        probabilities: model.pmf(),
    })
}

impl PmfTable {
    /// `k,probability` rows for `k = 0..=n`, preceded by a `#` comment with
    /// the resolved `θ` when the table was requested by expected distance.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if let Some(e) = self.expected_distance {
            let _ = writeln!(out, "# expected_distance={} theta={}", e, self.theta);
        }
        out.push_str("k,probability\n");
        for (k, p) in self.probabilities.iter().enumerate() {
            let _ = writeln!(out, "{},{}", k, p);
        }
        out
    }
}
