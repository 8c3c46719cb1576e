//! Theta*-LA and wTheta*-LA.
//!
//! Basic Theta* over the 8-connected grid, with one change: a shortcut to the
//! grandparent (or a plain parent link) is only taken when the turn it creates
//! stays within the angle limit. The weighted variant additionally searches
//! over a grid whose cells near obstacles carry penalty weights.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::time::Duration;

use crate::error::Error;
use crate::geometry::{circle_offsets, euclid_dist, los_unchecked, turn_at, BresenhamIter};
use crate::grid::{Cell, Grid};
use crate::lian::check_task;
use crate::path::{validate_path, Path};
use crate::search::{
    validate_alpha, validate_weight, Clock, NoClock, OpenEntry, Outcome, SearchResult,
};
use crate::ANGLE_EPS;

/// Obstacle-proximity weighting: penalty `p` and radius `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightParams {
    pub p: f64,
    pub r: u32,
}

impl Default for WeightParams {
    fn default() -> Self {
        WeightParams { p: 0.1, r: 12 }
    }
}

impl WeightParams {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.p > 0.0 && self.p.is_finite()) {
            return Err(Error::InvalidParams("weight penalty p must be > 0"));
        }
        if self.r == 0 {
            return Err(Error::InvalidParams("weight radius r must be >= 1"));
        }
        Ok(())
    }

    /// Largest weight any traversable cell can receive.
    pub fn max_weight(&self) -> f64 {
        self.p * (1.0 + 1.0 / self.r as f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThetaParams {
    pub alpha_max: f64,
    /// Search over the grid's weight field instead of plain distances.
    pub use_weights: bool,
    pub heuristic_weight: f64,
    pub node_budget: Option<usize>,
    pub time_budget: Option<Duration>,
}

impl ThetaParams {
    pub fn new(alpha_max: f64, use_weights: bool) -> Self {
        ThetaParams {
            alpha_max,
            use_weights,
            heuristic_weight: 1.0,
            node_budget: None,
            time_budget: None,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        validate_alpha(self.alpha_max)?;
        validate_weight(self.heuristic_weight)?;
        if self.node_budget == Some(0) {
            return Err(Error::InvalidParams("node budget must be positive"));
        }
        Ok(())
    }
}

/// Blocked cells with at least one traversable 8-neighbor.
pub fn boundary_cells(grid: &Grid) -> Vec<Cell> {
    let mut out = Vec::new();
    for k in 0..grid.len() {
        let c = grid.cell_at(k);
        if grid.is_traversable(c) {
            continue;
        }
        let touches_free = NEIGHBORS.iter().any(|&d| grid.is_traversable(c + d));
        if touches_free {
            out.push(c);
        }
    }
    out
}

/// Fills the grid's weight field from its obstacles.
///
/// Around every boundary cell `a` a midpoint circle of radius `r` is drawn;
/// each traversable cell `a'` on a Bresenham ray from `a` to the circle gets
/// `p * (1 + (1 - dist(a, a')) / r)`. Cells reached several times keep the
/// largest value; untouched cells stay at zero.
pub fn compute_obstacle_weights(grid: &mut Grid, params: WeightParams) -> Result<(), Error> {
    params.validate()?;
    let mut weights = vec![0.0f64; grid.len()];
    let ring = circle_offsets(params.r as i32);
    let r = params.r as f64;
    for a in boundary_cells(grid) {
        for &o in &ring {
            for cell in BresenhamIter::new(a, a + o) {
                if !grid.is_traversable(cell) {
                    continue;
                }
                let w = (params.p * (1.0 + (1.0 - euclid_dist(a, cell)) / r)).max(0.0);
                let k = grid.index(cell);
                if w > weights[k] {
                    weights[k] = w;
                }
            }
        }
    }
    grid.set_weights(weights)
}

/// `dist(a, b) * (1 + avgW)`, with `avgW` the mean weight over the Bresenham
/// line from `a` to `b`, both endpoints included.
pub fn weighted_len(grid: &Grid, a: Cell, b: Cell) -> f64 {
    let mut sum = 0.0;
    let mut n = 0usize;
    for c in BresenhamIter::new(a, b) {
        if grid.in_bounds(c) {
            sum += grid.weight(c);
        }
        n += 1;
    }
    euclid_dist(a, b) * (1.0 + sum / n as f64)
}

const NEIGHBORS: [Cell; 8] = [
    Cell::new(-1, -1),
    Cell::new(-1, 0),
    Cell::new(-1, 1),
    Cell::new(0, -1),
    Cell::new(0, 1),
    Cell::new(1, -1),
    Cell::new(1, 0),
    Cell::new(1, 1),
];

pub fn theta_la_search(
    grid: &Grid,
    start: Cell,
    goal: Cell,
    params: &ThetaParams,
) -> Result<SearchResult, Error> {
    theta_la_search_with(grid, start, goal, params, &NoClock)
}

pub fn theta_la_search_with<C: Clock>(
    grid: &Grid,
    start: Cell,
    goal: Cell,
    params: &ThetaParams,
    clock: &C,
) -> Result<SearchResult, Error> {
    params.validate()?;
    check_task(grid, start, goal)?;
    Ok(ThetaLa::new(grid, goal, params).run(start, clock))
}

const NO_PARENT: u32 = u32::MAX;

struct ThetaLa<'a> {
    grid: &'a Grid,
    goal: Cell,
    params: &'a ThetaParams,
    g: Vec<f64>,
    parent: Vec<u32>,
    closed: Vec<bool>,
    open: BinaryHeap<OpenEntry>,
    created: usize,
    expanded: usize,
    open_live: usize,
    max_stored: usize,
}

impl<'a> ThetaLa<'a> {
    fn new(grid: &'a Grid, goal: Cell, params: &'a ThetaParams) -> Self {
        ThetaLa {
            grid,
            goal,
            params,
            g: vec![f64::INFINITY; grid.len()],
            parent: vec![NO_PARENT; grid.len()],
            closed: vec![false; grid.len()],
            open: BinaryHeap::new(),
            created: 0,
            expanded: 0,
            open_live: 0,
            max_stored: 0,
        }
    }

    fn len(&self, a: Cell, b: Cell) -> f64 {
        if self.params.use_weights {
            weighted_len(self.grid, a, b)
        } else {
            euclid_dist(a, b)
        }
    }

    fn parent_of(&self, c: Cell) -> Option<Cell> {
        match self.parent[self.grid.index(c)] {
            NO_PARENT => None,
            k => Some(self.grid.cell_at(k as usize)),
        }
    }

    /// Turn at `mid` when `mid`'s current parent is followed by `mid -> next`.
    /// Vacuously fine when `mid` has no parent.
    fn turn_ok(&self, mid: Cell, next: Cell) -> bool {
        match self.parent_of(mid) {
            None => true,
            Some(prev) => matches!(
                turn_at(prev, mid, next),
                Some(a) if a <= self.params.alpha_max + ANGLE_EPS
            ),
        }
    }

    fn push(&mut self, c: Cell, g: f64) {
        let k = self.grid.index(c);
        let is_new = self.g[k].is_infinite();
        self.g[k] = g;
        if is_new {
            self.created += 1;
            self.open_live += 1;
        }
        let f = g + self.params.heuristic_weight * euclid_dist(c, self.goal);
        self.open.push(OpenEntry {
            f,
            g,
            cell: c,
            id: k as u32,
        });
    }

    /// Offers `c` the parent `via`: keeps it if it improves `g(c)`.
    fn offer(&mut self, via: Cell, c: Cell) {
        let cand = self.g[self.grid.index(via)] + self.len(via, c);
        let k = self.grid.index(c);
        if cand < self.g[k] {
            self.parent[k] = self.grid.index(via) as u32;
            self.push(c, cand);
        }
    }

    fn run<C: Clock>(mut self, start: Cell, clock: &C) -> SearchResult {
        self.push(start, 0.0);
        let outcome = loop {
            if let Some(limit) = self.params.time_budget {
                if clock.elapsed() >= limit {
                    break Outcome::BudgetExhausted;
                }
            }
            if let Some(limit) = self.params.node_budget {
                if self.created >= limit {
                    break Outcome::BudgetExhausted;
                }
            }
            let Some(entry) = self.open.pop() else {
                break Outcome::NoPath;
            };
            let s = entry.cell;
            let k = entry.id as usize;
            if self.closed[k] || entry.g != self.g[k] {
                continue;
            }
            if s == self.goal {
                break Outcome::PathFound;
            }
            self.closed[k] = true;
            self.open_live -= 1;
            self.expanded += 1;
            for d in NEIGHBORS {
                let c = s + d;
                if !self.grid.is_traversable(c) || self.closed[self.grid.index(c)] {
                    continue;
                }
                if !los_unchecked(self.grid, s, c) {
                    continue;
                }
                self.relax(s, c);
            }
            self.max_stored = self.max_stored.max(self.open_live + self.expanded);
        };
        let mut res = SearchResult::empty(outcome);
        if outcome == Outcome::PathFound {
            match self.extract(start) {
                Some(path)
                    if validate_path(self.grid, &path, start, self.goal, self.params.alpha_max)
                        .is_ok() =>
                {
                    res.cost = Some(self.g[self.grid.index(self.goal)]);
                    res.path = Some(path);
                }
                _ => res.outcome = Outcome::NoPath,
            }
        }
        res.nodes_created = self.created;
        res.nodes_expanded = self.expanded;
        res.max_stored_nodes = self.max_stored.max(self.open_live + self.expanded);
        res.elapsed = clock.elapsed();
        res
    }

    /// Shortcut through the grandparent if visible and the turn there is
    /// allowed; otherwise the plain parent link if the turn at `s` is allowed.
    fn relax(&mut self, s: Cell, c: Cell) {
        if let Some(gp) = self.parent_of(s) {
            if los_unchecked(self.grid, gp, c) && self.turn_ok(gp, c) {
                self.offer(gp, c);
                return;
            }
        }
        if self.turn_ok(s, c) {
            self.offer(s, c);
        }
    }

    fn extract(&self, start: Cell) -> Option<Path> {
        let mut cells = vec![self.goal];
        let mut cur = self.goal;
        while cur != start {
            cur = self.parent_of(cur)?;
            cells.push(cur);
            if cells.len() > self.grid.len() + 1 {
                return None;
            }
        }
        cells.reverse();
        Path::from_cells(&cells).ok()
    }
}
