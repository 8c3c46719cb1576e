//! Shared search configuration, results, budgets and the OPEN-list entry type.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::time::Duration;

use crate::error::Error;
use crate::grid::Cell;
use crate::path::Path;

/// How the successor radius is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaMode {
    /// LIAN: one radius for the whole search.
    Fixed(u32),
    /// D-LIAN: per-node radius, halved on total line-of-sight failure and
    /// doubled after `n_increase` successful expansions along a branch.
    Dynamic {
        init: u32,
        min: u32,
        max: u32,
        n_increase: u32,
    },
}

impl DeltaMode {
    /// Dynamic mode with the usual bindings: `min = init / 2`, `max = init`, `n = 2`.
    pub fn dynamic(init: u32) -> Self {
        DeltaMode::Dynamic {
            init,
            min: (init / 2).max(1),
            max: init,
            n_increase: 2,
        }
    }

    pub fn initial(&self) -> u32 {
        match *self {
            DeltaMode::Fixed(d) => d,
            DeltaMode::Dynamic { init, .. } => init,
        }
    }

    /// Smallest and largest radius a node may carry.
    pub fn bounds(&self) -> (u32, u32) {
        match *self {
            DeltaMode::Fixed(d) => (d, d),
            DeltaMode::Dynamic { min, max, .. } => (min, max),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchParams {
    /// Maximum turn angle in degrees, strictly between 0 and 180.
    pub alpha_max: f64,
    pub delta: DeltaMode,
    /// Weight `w >= 1` in `f = g + w * h`.
    pub heuristic_weight: f64,
    /// Give up once this many nodes have been created.
    pub node_budget: Option<usize>,
    pub time_budget: Option<Duration>,
}

impl SearchParams {
    pub fn lian(alpha_max: f64, delta: u32) -> Self {
        SearchParams {
            alpha_max,
            delta: DeltaMode::Fixed(delta),
            heuristic_weight: 1.0,
            node_budget: None,
            time_budget: None,
        }
    }

    pub fn dlian(alpha_max: f64, delta_init: u32) -> Self {
        SearchParams {
            delta: DeltaMode::dynamic(delta_init),
            ..SearchParams::lian(alpha_max, delta_init)
        }
    }

    pub fn with_heuristic_weight(mut self, w: f64) -> Self {
        self.heuristic_weight = w;
        self
    }

    pub fn with_time_budget(mut self, t: Duration) -> Self {
        self.time_budget = Some(t);
        self
    }

    pub fn with_node_budget(mut self, n: usize) -> Self {
        self.node_budget = Some(n);
        self
    }

    pub fn validate(&self) -> Result<(), Error> {
        validate_alpha(self.alpha_max)?;
        validate_weight(self.heuristic_weight)?;
        match self.delta {
            DeltaMode::Fixed(0) => return Err(Error::InvalidParams("delta must be >= 1")),
            DeltaMode::Fixed(_) => {}
            DeltaMode::Dynamic {
                init,
                min,
                max,
                n_increase,
            } => {
                if min == 0 {
                    return Err(Error::InvalidParams("delta_min must be >= 1"));
                }
                if !(min <= init && init <= max) {
                    return Err(Error::InvalidParams(
                        "delta bounds must satisfy delta_min <= delta_init <= delta_max",
                    ));
                }
                if n_increase == 0 {
                    return Err(Error::InvalidParams("n_increase must be >= 1"));
                }
            }
        }
        if self.node_budget == Some(0) {
            return Err(Error::InvalidParams("node budget must be positive"));
        }
        Ok(())
    }
}

pub(crate) fn validate_alpha(alpha: f64) -> Result<(), Error> {
    if !(alpha > 0.0 && alpha < 180.0) {
        return Err(Error::InvalidParams(
            "alpha_max must lie strictly between 0 and 180",
        ));
    }
    Ok(())
}

pub(crate) fn validate_weight(w: f64) -> Result<(), Error> {
    if !(w >= 1.0 && w.is_finite()) {
        return Err(Error::InvalidParams(
            "heuristic weight must be a finite value >= 1",
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    PathFound,
    NoPath,
    BudgetExhausted,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::PathFound => "path-found",
            Outcome::NoPath => "no-path",
            Outcome::BudgetExhausted => "budget-exhausted",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub outcome: Outcome,
    pub path: Option<Path>,
    /// Accumulated g-value of the goal node. Equals the geometric length
    /// except for weighted Theta*, where it is the weighted cost.
    pub cost: Option<f64>,
    /// Radius used to generate each section of `path`, in path order.
    /// Empty for the Theta* family.
    pub section_deltas: Vec<u32>,
    pub nodes_created: usize,
    pub nodes_expanded: usize,
    /// Peak `|OPEN| + |CLOSED|`.
    pub max_stored_nodes: usize,
    pub elapsed: Duration,
}

impl SearchResult {
    pub(crate) fn empty(outcome: Outcome) -> Self {
        SearchResult {
            outcome,
            path: None,
            cost: None,
            section_deltas: Vec::new(),
            nodes_created: 0,
            nodes_expanded: 0,
            max_stored_nodes: 0,
            elapsed: Duration::ZERO,
        }
    }

    pub fn found(&self) -> bool {
        self.outcome == Outcome::PathFound
    }

    pub fn path_length(&self) -> Option<f64> {
        self.path.as_ref().map(Path::length)
    }
}

/// Time source for cooperative budgets. The library itself never reads a
/// wall clock.
pub trait Clock {
    /// Time since the search started.
    fn elapsed(&self) -> Duration;
}

/// Clock that never advances; time budgets are then never hit.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn elapsed(&self) -> Duration {
        Duration::ZERO
    }
}

impl<C: Clock + ?Sized> Clock for &C {
    fn elapsed(&self) -> Duration {
        (**self).elapsed()
    }
}

/// A node as seen by a [`SearchObserver`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeEvent {
    pub id: usize,
    pub parent: Option<usize>,
    pub cell: Cell,
    pub parent_cell: Option<Cell>,
    pub g: f64,
    pub f: f64,
    pub delta: u32,
}

/// Hooks into the LIAN main loop, used by tests to check search discipline.
pub trait SearchObserver {
    fn on_push(&mut self, _node: &NodeEvent) {}
    fn on_expand(&mut self, _node: &NodeEvent) {}
}

impl SearchObserver for () {}

/// OPEN entry. The heap pops the smallest f first; ties go to the larger g,
/// then to the smaller cell, then to the earlier insertion.
#[derive(Debug, Clone, Copy)]
pub(crate) struct OpenEntry {
    pub f: f64,
    pub g: f64,
    pub cell: Cell,
    pub id: u32,
}

impl PartialEq for OpenEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for OpenEntry {}

impl PartialOrd for OpenEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OpenEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .f
            .total_cmp(&self.f)
            .then_with(|| self.g.total_cmp(&other.g))
            .then_with(|| other.cell.cmp(&self.cell))
            .then_with(|| other.id.cmp(&self.id))
    }
}
