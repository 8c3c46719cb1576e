//! Suite execution, CSV output and the summary table.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::{Duration, Instant};

use lian_core::metrics::{aggregate, SuiteMetrics, TaskRecord, TaskStatus};
use lian_core::{plan, AlgorithmConfig, Clock, Grid};
use rayon::prelude::*;

use crate::error::Error;
use crate::format::{MapSet, TaskSpec};

/// Monotonic wall clock started at construction.
#[derive(Debug, Clone, Copy)]
pub struct InstantClock(Instant);

impl InstantClock {
    pub fn start() -> Self {
        InstantClock(Instant::now())
    }
}

impl Clock for InstantClock {
    fn elapsed(&self) -> Duration {
        self.0.elapsed()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub cutoff: Duration,
    /// Worker threads; 1 runs tasks in order on the calling thread.
    pub jobs: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            cutoff: Duration::from_secs(60),
            jobs: 1,
        }
    }
}

/// Per-task records plus one warning per task that could not run.
#[derive(Debug, Clone)]
pub struct SuiteRun {
    pub records: Vec<TaskRecord>,
    pub warnings: Vec<String>,
}

impl SuiteRun {
    pub fn metrics(&self, cutoff: Duration, meters_per_cell: f64) -> SuiteMetrics {
        aggregate(&self.records, cutoff.as_secs_f64(), meters_per_cell)
    }
}

/// Runs every task under `config`. Weight fields are built once per map
/// before any timing starts. Records come back in task order whatever the
/// number of jobs.
pub fn run_suite(
    maps: &MapSet,
    tasks: &[TaskSpec],
    config: &AlgorithmConfig,
    opts: &SuiteOptions,
) -> SuiteRun {
    let mut prepared: BTreeMap<&str, Result<Grid, String>> = BTreeMap::new();
    for t in tasks {
        prepared
            .entry(t.map.as_str())
            .or_insert_with(|| match maps.get(&t.map) {
                Some(g) => config.prepare_grid(g).map_err(|e| e.to_string()),
                None => Err(format!("unknown map `{}`", t.map)),
            });
    }
    let run_one =
        |t: &TaskSpec| run_task(t, prepared[t.map.as_str()].as_ref(), config, opts.cutoff);
    let records: Vec<TaskRecord> = if opts.jobs <= 1 {
        tasks.iter().map(run_one).collect()
    } else {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
        {
            Ok(pool) => pool.install(|| tasks.par_iter().map(run_one).collect()),
            Err(_) => tasks.iter().map(run_one).collect(),
        }
    };
    let warnings = records
        .iter()
        .filter_map(|r| match &r.status {
            TaskStatus::ConfigError(msg) => Some(format!(
                "skipping {} ({}, {}) -> ({}, {}): {msg}",
                r.map, r.start.i, r.start.j, r.goal.i, r.goal.j
            )),
            TaskStatus::Ran(_) => None,
        })
        .collect();
    SuiteRun { records, warnings }
}

fn run_task(
    t: &TaskSpec,
    grid: Result<&Grid, &String>,
    config: &AlgorithmConfig,
    cutoff: Duration,
) -> TaskRecord {
    let mut rec = TaskRecord {
        map: t.map.clone(),
        start: t.start,
        goal: t.goal,
        algorithm: config.label(),
        params: config.params_string(),
        status: TaskStatus::ConfigError(String::new()),
        time_s: 0.0,
        nodes: 0,
        path_length: None,
    };
    let grid = match grid {
        Ok(g) => g,
        Err(msg) => {
            rec.status = TaskStatus::ConfigError(msg.clone());
            return rec;
        }
    };
    if let Err(msg) = t.check(grid) {
        rec.status = TaskStatus::ConfigError(msg);
        return rec;
    }
    let clock = InstantClock::start();
    match plan(grid, t.start, t.goal, config, Some(cutoff), &clock) {
        Ok(r) => {
            rec.time_s = clock.elapsed().as_secs_f64();
            rec.status = TaskStatus::Ran(r.outcome);
            rec.nodes = r.max_stored_nodes;
            rec.path_length = r.path_length();
        }
        Err(e) => rec.status = TaskStatus::ConfigError(e.to_string()),
    }
    rec
}

/// Header of the per-task CSV.
pub const TASK_COLUMNS: [&str; 9] = [
    "map",
    "start",
    "goal",
    "algorithm",
    "params",
    "outcome",
    "time_s",
    "nodes",
    "path_length",
];

/// Header of the aggregate CSV.
pub const SUMMARY_COLUMNS: [&str; 12] = [
    "algorithm",
    "params",
    "tasks",
    "successes",
    "config_errors",
    "cutoff_s",
    "sr",
    "par10",
    "mean_time_s",
    "mean_knodes",
    "mean_path_length",
    "meters_per_cell",
];

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6}")).unwrap_or_default()
}

pub fn task_row(r: &TaskRecord) -> [String; 9] {
    [
        r.map.clone(),
        format!("{} {}", r.start.i, r.start.j),
        format!("{} {}", r.goal.i, r.goal.j),
        r.algorithm.clone(),
        r.params.clone(),
        r.outcome_str().to_string(),
        format!("{:.6}", r.time_s),
        r.nodes.to_string(),
        opt(r.path_length),
    ]
}

pub fn summary_row(algorithm: &str, params: &str, m: &SuiteMetrics) -> [String; 12] {
    [
        algorithm.to_string(),
        params.to_string(),
        m.tasks.to_string(),
        m.successes.to_string(),
        m.config_errors.to_string(),
        format!("{}", m.cutoff_s),
        format!("{:.6}", m.sr),
        format!("{:.6}", m.par10),
        opt(m.mean_time),
        opt(m.mean_knodes),
        opt(m.mean_path_length),
        format!("{}", m.meters_per_cell),
    ]
}

pub fn write_task_csv(path: &Path, records: &[TaskRecord]) -> Result<(), Error> {
    let csv_err = |e| Error::Csv {
        path: path.to_path_buf(),
        source: e,
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(TASK_COLUMNS).map_err(csv_err)?;
    for r in records {
        w.write_record(task_row(r)).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// One summary row per `(algorithm, params, metrics)` entry.
pub fn write_summary_csv(
    path: &Path,
    rows: &[(String, String, SuiteMetrics)],
) -> Result<(), Error> {
    let csv_err = |e| Error::Csv {
        path: path.to_path_buf(),
        source: e,
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(SUMMARY_COLUMNS).map_err(csv_err)?;
    for (a, p, m) in rows {
        w.write_record(summary_row(a, p, m)).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Fixed-width text table: one line per configuration with sr in percent,
/// PAR-10 and mean time in seconds, m in kilonodes and pl in the scaled
/// length unit.
pub fn summary_table(rows: &[(String, String, SuiteMetrics)]) -> String {
    let dash = |v: Option<f64>, prec: usize| {
        v.map(|x| format!("{x:.prec$}"))
            .unwrap_or_else(|| "-".into())
    };
    let mut out = String::new();
    writeln!(
        out,
        "{:<12} {:<44} {:>6} {:>10} {:>9} {:>10} {:>10}",
        "algorithm", "params", "sr%", "PAR-10", "t", "m", "pl"
    )
    .unwrap();
    for (a, p, m) in rows {
        writeln!(
            out,
            "{:<12} {:<44} {:>6.1} {:>10.3} {:>9} {:>10} {:>10}",
            a,
            p,
            100.0 * m.sr,
            m.par10,
            dash(m.mean_time, 3),
            dash(m.mean_knodes, 1),
            dash(m.mean_path_length, 1)
        )
        .unwrap();
    }
    out
}
