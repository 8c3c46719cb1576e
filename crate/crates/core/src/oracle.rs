//! Brute-force reference solver for fixed-radius angle-constrained paths.
//!
//! Plain Dijkstra over states `(cell, predecessor)`, with no heuristic, no
//! shared bookkeeping with the planners, and an explicit size bound. Used to
//! check that LIAN finds a solution exactly when one exists and that the
//! solution it returns is the shortest.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use hashbrown::HashMap;

use crate::error::Error;
use crate::geometry::{euclid_dist, line_of_sight, midpoint_circle, turn_angle};
use crate::grid::{Cell, Grid};
use crate::path::Section;
use crate::ANGLE_EPS;

/// Largest grid (in cells) the oracle accepts: 32 x 32.
pub const ORACLE_MAX_CELLS: usize = 32 * 32;

type State = (Cell, Option<Cell>);

#[derive(Debug, Clone, Copy)]
struct Item {
    dist: f64,
    state: State,
}

impl PartialEq for Item {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Item {}
impl PartialOrd for Item {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Item {
    fn cmp(&self, o: &Self) -> Ordering {
        o.dist
            .total_cmp(&self.dist)
            .then_with(|| o.state.cmp(&self.state))
    }
}

/// Length of the shortest path from `start` to `goal` whose sections are all
/// radius-`delta` circle steps except possibly a final step into the goal from
/// closer than `delta`, with every turn at most `alpha_max` degrees.
/// `None` if no such path exists.
pub fn oracle_delta_search(
    grid: &Grid,
    start: Cell,
    goal: Cell,
    delta: u32,
    alpha_max: f64,
) -> Result<Option<f64>, Error> {
    oracle_delta_search_bounded(grid, start, goal, delta, alpha_max, ORACLE_MAX_CELLS)
}

pub fn oracle_delta_search_bounded(
    grid: &Grid,
    start: Cell,
    goal: Cell,
    delta: u32,
    alpha_max: f64,
    max_cells: usize,
) -> Result<Option<f64>, Error> {
    if grid.len() > max_cells {
        return Err(Error::OracleTooLarge {
            cells: grid.len(),
            limit: max_cells,
        });
    }
    if delta == 0 {
        return Err(Error::InvalidRadius(0));
    }
    if !grid.is_traversable(start) || !grid.is_traversable(goal) || start == goal {
        return Err(Error::InvalidTask(
            "oracle needs distinct traversable endpoints",
        ));
    }

    let mut best: HashMap<State, f64> = HashMap::new();
    let mut heap = BinaryHeap::new();
    best.insert((start, None), 0.0);
    heap.push(Item {
        dist: 0.0,
        state: (start, None),
    });

    while let Some(Item { dist, state }) = heap.pop() {
        if best.get(&state).is_some_and(|&d| d < dist) {
            continue;
        }
        let (b, pred) = state;
        if b == goal {
            return Ok(Some(dist));
        }
        let mut next: Vec<Cell> = midpoint_circle(b, delta as i32)?;
        if euclid_dist(b, goal) < delta as f64 && !next.contains(&goal) {
            next.push(goal);
        }
        for c in next {
            if !grid.is_traversable(c) {
                continue;
            }
            if !line_of_sight(grid, b, c)? {
                continue;
            }
            if let Some(a) = pred {
                let angle = turn_angle(Section::new(a, b), Section::new(b, c))?;
                if angle > alpha_max + ANGLE_EPS {
                    continue;
                }
            }
            let nd = dist + euclid_dist(b, c);
            let key = (c, Some(b));
            if best.get(&key).is_none_or(|&d| nd < d) {
                best.insert(key, nd);
                heap.push(Item {
                    dist: nd,
                    state: key,
                });
            }
        }
    }
    Ok(None)
}
