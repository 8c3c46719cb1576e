//! LIAN and D-LIAN.
//!
//! Both planners run best-first search over nodes identified by the pair
//! (cell, parent cell). Successors of a node are the cells of a midpoint
//! circle around it, plus the goal once it is closer than the radius. A
//! successor survives if it is traversable, keeps the turn at the node within
//! the angle limit, has not been expanded with the same parent before, and is
//! visible from the node.
//!
//! D-LIAN stores a radius on every node. When every line-of-sight check at
//! that radius fails the radius is halved and the expansion retried, down to a lower
//! bound; after a number of consecutive clean expansions along a branch the
//! radius is doubled again, up to an upper bound.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;

use hashbrown::HashSet;

use crate::error::Error;
use crate::geometry::{circle_offsets, euclid_dist, los_unchecked, turn_at};
use crate::grid::{Cell, Grid};
use crate::path::{Path, Section};
use crate::search::{
    Clock, DeltaMode, NoClock, NodeEvent, OpenEntry, Outcome, SearchObserver, SearchParams,
    SearchResult,
};
use crate::ANGLE_EPS;

/// A search node: a cell reached along a particular parent chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchNode {
    pub cell: Cell,
    /// Length of the angle-constrained path from the start to this node.
    pub g: f64,
    /// Index of the predecessor in the node arena; `None` for the start node.
    pub parent: Option<usize>,
    /// Radius used when this node is expanded.
    pub delta: u32,
    /// Radius that generated this node (zero for the start node).
    pub generated_with: u32,
    /// Consecutive halving-free expansions along this node's branch.
    pub streak: u32,
}

/// Runs LIAN (fixed radius) or D-LIAN (dynamic radius) depending on
/// `params.delta`. Time budgets are ignored; see [`lian_search_with`].
pub fn lian_search(
    grid: &Grid,
    start: Cell,
    goal: Cell,
    params: &SearchParams,
) -> Result<SearchResult, Error> {
    lian_search_with(grid, start, goal, params, &NoClock, &mut ())
}

/// [`lian_search`] with an explicit clock for the time budget and an observer.
pub fn lian_search_with<C: Clock, O: SearchObserver>(
    grid: &Grid,
    start: Cell,
    goal: Cell,
    params: &SearchParams,
    clock: &C,
    observer: &mut O,
) -> Result<SearchResult, Error> {
    params.validate()?;
    check_task(grid, start, goal)?;
    let mut search = Lian::new(grid, goal, params);
    Ok(search.run(start, clock, observer))
}

pub(crate) fn check_task(grid: &Grid, start: Cell, goal: Cell) -> Result<(), Error> {
    if !grid.in_bounds(start) {
        return Err(Error::InvalidTask("start is out of bounds"));
    }
    if !grid.in_bounds(goal) {
        return Err(Error::InvalidTask("goal is out of bounds"));
    }
    if !grid.is_traversable(start) {
        return Err(Error::InvalidTask("start is blocked"));
    }
    if !grid.is_traversable(goal) {
        return Err(Error::InvalidTask("goal is blocked"));
    }
    if start == goal {
        return Err(Error::InvalidTask("start equals goal"));
    }
    Ok(())
}

/// Follows parent pointers from `goal` back to the root and returns the
/// section chain together with the radius that generated each section.
pub fn reconstruct_path(nodes: &[SearchNode], goal: usize) -> Result<(Path, Vec<u32>), Error> {
    let mut chain = Vec::new();
    let mut cur = Some(goal);
    while let Some(id) = cur {
        let node = nodes.get(id).ok_or(Error::BrokenParentChain)?;
        chain.push(id);
        if chain.len() > nodes.len() {
            return Err(Error::BrokenParentChain);
        }
        cur = node.parent;
    }
    if chain.len() < 2 {
        return Err(Error::BrokenParentChain);
    }
    chain.reverse();
    let sections = chain
        .windows(2)
        .map(|w| Section::new(nodes[w[0]].cell, nodes[w[1]].cell))
        .collect();
    let deltas = chain[1..]
        .iter()
        .map(|&id| nodes[id].generated_with)
        .collect();
    Ok((Path::new(sections)?, deltas))
}

type ClosedKey = (Cell, Option<Cell>);

struct Lian<'a> {
    grid: &'a Grid,
    goal: Cell,
    params: &'a SearchParams,
    nodes: Vec<SearchNode>,
    open: BinaryHeap<OpenEntry>,
    closed: HashSet<ClosedKey>,
    circles: Vec<Vec<Cell>>,
    expanded: usize,
    max_stored: usize,
    scratch: Vec<Cell>,
}

impl<'a> Lian<'a> {
    fn new(grid: &'a Grid, goal: Cell, params: &'a SearchParams) -> Self {
        Lian {
            grid,
            goal,
            params,
            nodes: Vec::new(),
            open: BinaryHeap::new(),
            closed: HashSet::new(),
            circles: Vec::new(),
            expanded: 0,
            max_stored: 0,
            scratch: Vec::new(),
        }
    }

    fn run<C: Clock, O: SearchObserver>(
        &mut self,
        start: Cell,
        clock: &C,
        observer: &mut O,
    ) -> SearchResult {
        let root = SearchNode {
            cell: start,
            g: 0.0,
            parent: None,
            delta: self.params.delta.initial(),
            generated_with: 0,
            streak: 0,
        };
        self.push(root, observer);

        let outcome = loop {
            if let Some(limit) = self.params.time_budget {
                if clock.elapsed() >= limit {
                    break Outcome::BudgetExhausted;
                }
            }
            if let Some(limit) = self.params.node_budget {
                if self.nodes.len() >= limit {
                    break Outcome::BudgetExhausted;
                }
            }
            let Some(entry) = self.open.pop() else {
                break Outcome::NoPath;
            };
            let id = entry.id as usize;
            let node = self.nodes[id];
            let parent_cell = node.parent.map(|p| self.nodes[p].cell);
            // A twin generated before this pair was closed; drop it.
            if self.closed.contains(&(node.cell, parent_cell)) {
                continue;
            }
            if node.cell == self.goal {
                return self.finish(id, clock);
            }
            self.closed.insert((node.cell, parent_cell));
            self.expanded += 1;
            observer.on_expand(&self.event(id, entry.f));
            match self.params.delta {
                DeltaMode::Fixed(_) => self.expand(id, observer),
                DeltaMode::Dynamic { .. } => self.expand_dynamic(id, observer),
            }
            self.max_stored = self.max_stored.max(self.open.len() + self.closed.len());
        };
        let mut res = SearchResult::empty(outcome);
        self.fill_stats(&mut res, clock);
        res
    }

    fn finish<C: Clock>(&mut self, goal_id: usize, clock: &C) -> SearchResult {
        let mut res = SearchResult::empty(Outcome::PathFound);
        // Parent pointers are created by this search, so the chain is sound.
        let (path, deltas) =
            reconstruct_path(&self.nodes, goal_id).expect("search tree parent chain");
        res.cost = Some(self.nodes[goal_id].g);
        res.path = Some(path);
        res.section_deltas = deltas;
        self.fill_stats(&mut res, clock);
        res
    }

    fn fill_stats<C: Clock>(&self, res: &mut SearchResult, clock: &C) {
        res.nodes_created = self.nodes.len();
        res.nodes_expanded = self.expanded;
        res.max_stored_nodes = self.max_stored.max(self.open.len() + self.closed.len());
        res.elapsed = clock.elapsed();
    }

    fn event(&self, id: usize, f: f64) -> NodeEvent {
        let n = &self.nodes[id];
        NodeEvent {
            id,
            parent: n.parent,
            cell: n.cell,
            parent_cell: n.parent.map(|p| self.nodes[p].cell),
            g: n.g,
            f,
            delta: n.generated_with,
        }
    }

    fn push<O: SearchObserver>(&mut self, node: SearchNode, observer: &mut O) {
        let f = node.g + self.params.heuristic_weight * euclid_dist(node.cell, self.goal);
        let id = self.nodes.len();
        self.nodes.push(node);
        self.open.push(OpenEntry {
            f,
            g: node.g,
            cell: node.cell,
            id: id as u32,
        });
        observer.on_push(&self.event(id, f));
    }

    /// Candidate cells at radius `delta` around `center`: the circle, plus the
    /// goal when it is strictly closer than `delta`. Written into `out`.
    fn candidates(&mut self, center: Cell, delta: u32, out: &mut Vec<Cell>) {
        let r = delta as usize;
        if self.circles.len() <= r {
            self.circles.resize(r + 1, Vec::new());
        }
        if self.circles[r].is_empty() {
            self.circles[r] = circle_offsets(delta as i32);
        }
        let ring = &self.circles[r];
        out.clear();
        out.extend(ring.iter().map(|&o| center + o));
        if euclid_dist(center, self.goal) < delta as f64
            && ring.binary_search(&(self.goal - center)).is_err()
        {
            out.push(self.goal);
        }
    }

    /// Traversability, turn-angle and CLOSED checks; line-of-sight is separate.
    #[inline]
    fn admissible(&self, cand: Cell, cell: Cell, parent: Option<Cell>) -> bool {
        if !self.grid.is_traversable(cand) {
            return false;
        }
        if let Some(p) = parent {
            match turn_at(p, cell, cand) {
                Some(a) if a <= self.params.alpha_max + ANGLE_EPS => {}
                _ => return false,
            }
        }
        !self.closed.contains(&(cand, Some(cell)))
    }

    fn expand<O: SearchObserver>(&mut self, id: usize, observer: &mut O) {
        let node = self.nodes[id];
        let parent = node.parent.map(|p| self.nodes[p].cell);
        let mut cands = core::mem::take(&mut self.scratch);
        self.candidates(node.cell, node.delta, &mut cands);
        for &cand in &cands {
            if self.admissible(cand, node.cell, parent) && los_unchecked(self.grid, node.cell, cand)
            {
                let child = SearchNode {
                    cell: cand,
                    g: node.g + euclid_dist(node.cell, cand),
                    parent: Some(id),
                    delta: node.delta,
                    generated_with: node.delta,
                    streak: 0,
                };
                self.push(child, observer);
            }
        }
        self.scratch = cands;
    }

    fn expand_dynamic<O: SearchObserver>(&mut self, id: usize, observer: &mut O) {
        let DeltaMode::Dynamic {
            min,
            max,
            n_increase,
            ..
        } = self.params.delta
        else {
            unreachable!("dynamic expansion with a fixed radius");
        };
        let node = self.nodes[id];
        let parent = node.parent.map(|p| self.nodes[p].cell);
        let mut cands = core::mem::take(&mut self.scratch);
        let mut survivors = Vec::new();
        let mut delta = node.delta;
        let mut halved = false;
        loop {
            self.candidates(node.cell, delta, &mut cands);
            // Phase one: everything but line-of-sight.
            cands.retain(|&c| self.admissible(c, node.cell, parent));
            // Phase two: line-of-sight on the remainder.
            survivors.clear();
            survivors.extend(
                cands
                    .iter()
                    .copied()
                    .filter(|&c| los_unchecked(self.grid, node.cell, c)),
            );
            // Only a total line-of-sight failure shrinks the radius; an empty
            // phase-one set ends the expansion.
            if !survivors.is_empty() || cands.is_empty() {
                break;
            }
            let next = delta / 2;
            if next < min || next == 0 {
                break;
            }
            delta = next;
            halved = true;
        }
        self.scratch = cands;
        if survivors.is_empty() {
            return;
        }
        let mut streak = if halved { 0 } else { node.streak + 1 };
        let mut child_delta = delta;
        if streak >= n_increase {
            child_delta = delta.saturating_mul(2).min(max);
            streak = 0;
        }
        for cand in survivors {
            let child = SearchNode {
                cell: cand,
                g: node.g + euclid_dist(node.cell, cand),
                parent: Some(id),
                delta: child_delta,
                generated_with: delta,
                streak,
            };
            self.push(child, observer);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::midpoint_circle;
    use crate::path::validate_path;

    fn c(i: i32, j: i32) -> Cell {
        Cell::new(i, j)
    }

    #[test]
    fn colinear_on_empty_grid() {
        let g = Grid::new(20, 20).unwrap();
        let r = lian_search(&g, c(10, 0), c(10, 15), &SearchParams::lian(25.0, 5)).unwrap();
        assert_eq!(r.outcome, Outcome::PathFound);
        let p = r.path.unwrap();
        assert_eq!(p.cells(), [c(10, 0), c(10, 5), c(10, 10), c(10, 15)]);
        assert_eq!(p.length(), 15.0);
        assert_eq!(p.max_turn_angle(), 0.0);
        assert_eq!(r.section_deltas, [5, 5, 5]);
    }

    #[test]
    fn wall_without_gap() {
        let mut g = Grid::new(9, 9).unwrap();
        g.block_rect(c(0, 4), c(8, 4));
        let r = lian_search(&g, c(4, 0), c(4, 8), &SearchParams::lian(90.0, 3)).unwrap();
        assert_eq!(r.outcome, Outcome::NoPath);
        assert!(r.path.is_none());
        assert!(r.nodes_expanded > 0);
    }

    #[test]
    fn invalid_tasks() {
        let mut g = Grid::new(5, 5).unwrap();
        g.set_blocked(c(0, 0), true).unwrap();
        let p = SearchParams::lian(30.0, 2);
        assert!(matches!(
            lian_search(&g, c(0, 0), c(4, 4), &p),
            Err(Error::InvalidTask(_))
        ));
        assert!(matches!(
            lian_search(&g, c(1, 1), c(5, 4), &p),
            Err(Error::InvalidTask(_))
        ));
        assert!(matches!(
            lian_search(&g, c(1, 1), c(1, 1), &p),
            Err(Error::InvalidTask(_))
        ));
        let bad = SearchParams::lian(200.0, 2);
        assert!(matches!(
            lian_search(&g, c(1, 1), c(4, 4), &bad),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn node_budget_reports_exhaustion() {
        let g = Grid::new(40, 40).unwrap();
        let p = SearchParams::lian(20.0, 3).with_node_budget(10);
        let r = lian_search(&g, c(0, 0), c(39, 39), &p).unwrap();
        assert_eq!(r.outcome, Outcome::BudgetExhausted);
        assert!(r.path.is_none());
    }

    #[derive(Default)]
    struct Recorder {
        pushed: Vec<NodeEvent>,
        expanded: Vec<NodeEvent>,
    }

    impl SearchObserver for Recorder {
        fn on_push(&mut self, n: &NodeEvent) {
            self.pushed.push(*n);
        }
        fn on_expand(&mut self, n: &NodeEvent) {
            self.expanded.push(*n);
        }
    }

    #[test]
    fn start_expansion_ignores_angle() {
        let g = Grid::new(30, 30).unwrap();
        let mut rec = Recorder::default();
        let p = SearchParams::lian(10.0, 5).with_node_budget(2);
        lian_search_with(&g, c(15, 15), c(15, 29), &p, &NoClock, &mut rec).unwrap();
        // root plus the whole ring; the budget stops the search right after.
        let ring = midpoint_circle(c(15, 15), 5).unwrap();
        assert_eq!(rec.pushed.len(), 1 + ring.len());
    }

    #[test]
    fn sharp_turns_are_pruned() {
        // Parent due west of the node at distance 5; alpha 30 forbids the
        // 90 degree step due south.
        let g = Grid::new(30, 30).unwrap();
        let mut rec = Recorder::default();
        let p = SearchParams::lian(30.0, 5);
        lian_search_with(&g, c(15, 5), c(15, 20), &p, &NoClock, &mut rec).unwrap();
        let node = c(15, 10);
        let from_node: Vec<Cell> = rec
            .pushed
            .iter()
            .filter(|e| e.parent_cell == Some(node))
            .map(|e| e.cell)
            .collect();
        assert!(!from_node.is_empty());
        assert!(!from_node.contains(&c(20, 10)));
        assert!(from_node.contains(&c(15, 15)));
        for cell in from_node {
            assert!(turn_at(c(15, 5), node, cell).unwrap() <= 30.0 + ANGLE_EPS);
        }
    }

    #[test]
    fn goal_inside_radius_is_a_candidate() {
        let g = Grid::new(20, 20).unwrap();
        let r = lian_search(&g, c(5, 5), c(5, 8), &SearchParams::lian(30.0, 5)).unwrap();
        let p = r.path.unwrap();
        assert_eq!(p.cells(), [c(5, 5), c(5, 8)]);
        assert_eq!(r.cost, Some(3.0));
    }

    #[test]
    fn dynamic_on_open_terrain_matches_fixed() {
        let g = Grid::new(60, 60).unwrap();
        let fixed = SearchParams::lian(25.0, 10).with_heuristic_weight(2.0);
        let dynamic = SearchParams::dlian(25.0, 10).with_heuristic_weight(2.0);
        for (s, t) in [
            (c(2, 2), c(55, 50)),
            (c(30, 0), c(30, 59)),
            (c(59, 0), c(0, 40)),
        ] {
            let a = lian_search(&g, s, t, &fixed).unwrap();
            let b = lian_search(&g, s, t, &dynamic).unwrap();
            assert_eq!(a.path, b.path);
            assert_eq!(a.nodes_created, b.nodes_created);
            assert!(b.section_deltas.iter().all(|&d| d == 10));
        }
    }

    #[test]
    fn dynamic_halves_inside_a_pocket() {
        // (15, 3) sits in a walled pocket whose east wall is four cells away.
        // Every radius-10 ring cell lies outside the pocket, so all rays cross
        // the wall; radius 5 still has visible cells inside.
        let mut g = Grid::new(40, 40).unwrap();
        g.block_rect(c(10, 0), c(10, 7));
        g.block_rect(c(20, 0), c(20, 7));
        g.block_rect(c(10, 7), c(20, 7));
        let center = c(15, 3);
        let ring10 = midpoint_circle(center, 10).unwrap();
        let free10: Vec<Cell> = ring10
            .into_iter()
            .filter(|&x| g.is_traversable(x))
            .collect();
        assert!(!free10.is_empty());
        assert!(free10.iter().all(|&x| !los_unchecked(&g, center, x)));
        let ring5 = midpoint_circle(center, 5).unwrap();
        assert!(ring5
            .iter()
            .any(|&x| g.is_traversable(x) && los_unchecked(&g, center, x)));

        let p = SearchParams::dlian(90.0, 10);
        let mut rec = Recorder::default();
        let r = lian_search_with(&g, center, c(35, 35), &p, &NoClock, &mut rec).unwrap();
        assert_eq!(r.outcome, Outcome::NoPath);
        let first: Vec<&NodeEvent> = rec
            .pushed
            .iter()
            .filter(|e| e.parent_cell == Some(center))
            .collect();
        assert!(!first.is_empty());
        assert!(first.iter().all(|e| e.delta == 5));

        let fixed = lian_search(&g, center, c(35, 35), &SearchParams::lian(90.0, 10)).unwrap();
        assert_eq!(fixed.outcome, Outcome::NoPath);
        assert_eq!(fixed.nodes_expanded, 1);
    }

    #[test]
    fn reconstruct_chain() {
        let n = |cell, parent, g| SearchNode {
            cell,
            g,
            parent,
            delta: 3,
            generated_with: 3,
            streak: 0,
        };
        let nodes = [
            n(c(0, 0), None, 0.0),
            n(c(0, 3), Some(0), 3.0),
            n(c(0, 5), Some(1), 5.0),
        ];
        let (p, d) = reconstruct_path(&nodes, 2).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(d, [3, 3]);
        let (p, _) = reconstruct_path(&nodes, 1).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.max_turn_angle(), 0.0);
        let broken = [n(c(0, 0), Some(7), 0.0), n(c(0, 3), Some(0), 3.0)];
        assert_eq!(reconstruct_path(&broken, 1), Err(Error::BrokenParentChain));
        let cyclic = [n(c(0, 0), Some(1), 0.0), n(c(0, 3), Some(0), 3.0)];
        assert_eq!(reconstruct_path(&cyclic, 1), Err(Error::BrokenParentChain));
    }

    #[test]
    fn returned_paths_are_valid() {
        let g = Grid::from_ascii(&[
            "....................",
            "....................",
            "......#######.......",
            "......#######.......",
            "......#######.......",
            "....................",
            "....................",
            "....................",
        ])
        .unwrap();
        for alpha in [20.0, 35.0, 60.0, 120.0] {
            for p in [SearchParams::lian(alpha, 3), SearchParams::dlian(alpha, 4)] {
                let r = lian_search(&g, c(3, 0), c(3, 19), &p).unwrap();
                if let Some(path) = &r.path {
                    assert_eq!(validate_path(&g, path, c(3, 0), c(3, 19), alpha), Ok(()));
                    assert!((path.length() - r.cost.unwrap()).abs() < 1e-9);
                }
            }
        }
    }
}
