//! Suite-level metrics: success rate, PAR-10, and success-only means of
//! runtime, stored nodes and path length.

use alloc::string::String;

use crate::grid::Cell;
use crate::search::Outcome;

/// Result of one task in a suite.
#[derive(Debug, Clone, PartialEq)]
pub enum TaskStatus {
    Ran(Outcome),
    /// The task itself was unusable (blocked endpoint, bad parameters, ...).
    /// Such tasks are excluded from every metric.
    ConfigError(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaskRecord {
    pub map: String,
    pub start: Cell,
    pub goal: Cell,
    pub algorithm: String,
    pub params: String,
    pub status: TaskStatus,
    /// Wall-clock seconds spent in the search.
    pub time_s: f64,
    /// Peak number of nodes held in OPEN and CLOSED.
    pub nodes: usize,
    /// Path length in cells, for successes.
    pub path_length: Option<f64>,
}

impl TaskRecord {
    pub fn outcome_str(&self) -> &str {
        match &self.status {
            TaskStatus::Ran(o) => o.as_str(),
            TaskStatus::ConfigError(_) => "config-error",
        }
    }

    /// Found a path within the cut-off.
    pub fn is_success(&self, cutoff_s: f64) -> bool {
        self.status == TaskStatus::Ran(Outcome::PathFound) && self.time_s <= cutoff_s
    }

    pub fn is_config_error(&self) -> bool {
        matches!(self.status, TaskStatus::ConfigError(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteMetrics {
    /// Tasks that actually ran (configuration errors excluded).
    pub tasks: usize,
    pub successes: usize,
    pub config_errors: usize,
    pub cutoff_s: f64,
    pub sr: f64,
    /// Penalized average runtime: failures are charged ten times the cut-off.
    pub par10: f64,
    /// Mean seconds over successes.
    pub mean_time: Option<f64>,
    /// Mean peak stored nodes over successes, in thousands.
    pub mean_knodes: Option<f64>,
    /// Mean path length over successes, in cells times `meters_per_cell`.
    pub mean_path_length: Option<f64>,
    pub meters_per_cell: f64,
}

impl SuiteMetrics {
    pub fn failures(&self) -> usize {
        self.tasks - self.successes
    }
}

/// Aggregates per-task records into suite metrics.
pub fn aggregate(records: &[TaskRecord], cutoff_s: f64, meters_per_cell: f64) -> SuiteMetrics {
    let mut tasks = 0usize;
    let mut successes = 0usize;
    let mut config_errors = 0usize;
    let mut time_sum = 0.0;
    let mut node_sum = 0.0;
    let mut len_sum = 0.0;
    for r in records {
        if r.is_config_error() {
            config_errors += 1;
            continue;
        }
        tasks += 1;
        if r.is_success(cutoff_s) {
            successes += 1;
            time_sum += r.time_s;
            node_sum += r.nodes as f64;
            len_sum += r.path_length.unwrap_or(0.0);
        }
    }
    let failures = tasks - successes;
    let mean = |sum: f64| (successes > 0).then(|| sum / successes as f64);
    let (sr, par10) = if tasks == 0 {
        (0.0, 0.0)
    } else {
        (
            successes as f64 / tasks as f64,
            (time_sum + 10.0 * cutoff_s * failures as f64) / tasks as f64,
        )
    };
    SuiteMetrics {
        tasks,
        successes,
        config_errors,
        cutoff_s,
        sr,
        par10,
        mean_time: mean(time_sum),
        mean_knodes: mean(node_sum).map(|n| n / 1000.0),
        mean_path_length: mean(len_sum).map(|l| l * meters_per_cell),
        meters_per_cell,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec::Vec;

    fn rec(status: TaskStatus, time_s: f64, nodes: usize, len: Option<f64>) -> TaskRecord {
        TaskRecord {
            map: "m".to_string(),
            start: Cell::new(0, 0),
            goal: Cell::new(1, 1),
            algorithm: "LIAN-5".to_string(),
            params: String::new(),
            status,
            time_s,
            nodes,
            path_length: len,
        }
    }

    #[test]
    fn par10_with_one_failure() {
        let rs = [
            rec(TaskStatus::Ran(Outcome::PathFound), 1.0, 100, Some(10.0)),
            rec(TaskStatus::Ran(Outcome::NoPath), 0.2, 50, None),
        ];
        let m = aggregate(&rs, 60.0, 1.0);
        assert_eq!(m.par10, 300.5);
        assert_eq!(m.sr, 0.5);
        assert_eq!(m.mean_time, Some(1.0));
        assert_eq!(m.mean_knodes, Some(0.1));
        assert_eq!(m.mean_path_length, Some(10.0));
    }

    #[test]
    fn all_success_par10_is_mean_time() {
        let rs: Vec<_> = [0.1, 0.7, 0.35, 2.25]
            .iter()
            .map(|&t| rec(TaskStatus::Ran(Outcome::PathFound), t, 10, Some(3.0)))
            .collect();
        let m = aggregate(&rs, 60.0, 2.7);
        assert_eq!(m.sr, 1.0);
        assert_eq!(Some(m.par10), m.mean_time);
        assert!((m.mean_path_length.unwrap() - 8.1).abs() < 1e-12);
    }

    #[test]
    fn overrun_counts_as_failure_and_config_errors_are_excluded() {
        let rs = [
            rec(TaskStatus::Ran(Outcome::PathFound), 11.0, 1, Some(1.0)),
            rec(TaskStatus::Ran(Outcome::BudgetExhausted), 10.0, 1, None),
            rec(
                TaskStatus::ConfigError("goal is blocked".to_string()),
                0.0,
                0,
                None,
            ),
        ];
        let m = aggregate(&rs, 10.0, 1.0);
        assert_eq!(m.tasks, 2);
        assert_eq!(m.config_errors, 1);
        assert_eq!(m.successes, 0);
        assert_eq!(m.par10, 100.0);
        assert_eq!(m.mean_time, None);
    }

    #[test]
    fn empty_suite() {
        let m = aggregate(&[], 60.0, 1.0);
        assert_eq!((m.tasks, m.sr, m.par10), (0, 0.0, 0.0));
    }
}
