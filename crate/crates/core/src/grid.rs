use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Sub};

use crate::error::Error;

/// A grid cell addressed by row `i` and column `j`.
///
/// Coordinates are signed so that rasterization around a cell near the border
/// can produce out-of-grid cells; callers filter them through [`Grid::in_bounds`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cell {
    pub i: i32,
    pub j: i32,
}

impl Cell {
    pub const fn new(i: i32, j: i32) -> Self {
        Cell { i, j }
    }
}

impl From<(i32, i32)> for Cell {
    fn from((i, j): (i32, i32)) -> Self {
        Cell { i, j }
    }
}

impl Add for Cell {
    type Output = Cell;
    fn add(self, o: Cell) -> Cell {
        Cell::new(self.i + o.i, self.j + o.j)
    }
}

impl Sub for Cell {
    type Output = Cell;
    fn sub(self, o: Cell) -> Cell {
        Cell::new(self.i - o.i, self.j - o.j)
    }
}

/// Occupancy grid with an optional per-cell weight field.
///
/// The weight field is all zeros until [`crate::compute_obstacle_weights`] fills it.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    height: usize,
    width: usize,
    blocked: Vec<bool>,
    weights: Vec<f64>,
}

impl Grid {
    /// An all-traversable grid.
    pub fn new(height: usize, width: usize) -> Result<Self, Error> {
        Self::from_blocked(height, width, vec![false; height.saturating_mul(width)])
    }

    /// Builds a grid from a row-major blocked mask.
    pub fn from_blocked(height: usize, width: usize, blocked: Vec<bool>) -> Result<Self, Error> {
        if height == 0
            || width == 0
            || height > i32::MAX as usize
            || width > i32::MAX as usize
            || blocked.len() != height * width
        {
            return Err(Error::InvalidDimensions { height, width });
        }
        Ok(Grid {
            height,
            width,
            weights: vec![0.0; blocked.len()],
            blocked,
        })
    }

    /// Builds a grid from rows of `'.'` (free) and `'#'` (blocked) characters.
    /// Intended for tests and fixtures; any other character is treated as blocked.
    pub fn from_ascii(rows: &[&str]) -> Result<Self, Error> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.chars().count());
        let mut blocked = Vec::with_capacity(height * width);
        for row in rows {
            if row.chars().count() != width {
                return Err(Error::InvalidDimensions { height, width });
            }
            blocked.extend(row.chars().map(|c| c != '.'));
        }
        Self::from_blocked(height, width, blocked)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.blocked.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocked.is_empty()
    }

    #[inline]
    pub fn in_bounds(&self, c: Cell) -> bool {
        c.i >= 0 && c.j >= 0 && (c.i as usize) < self.height && (c.j as usize) < self.width
    }

    /// Row-major index of an in-bounds cell.
    #[inline]
    pub fn index(&self, c: Cell) -> usize {
        debug_assert!(self.in_bounds(c));
        c.i as usize * self.width + c.j as usize
    }

    #[inline]
    pub fn cell_at(&self, index: usize) -> Cell {
        Cell::new((index / self.width) as i32, (index % self.width) as i32)
    }

    /// False for blocked cells and for anything outside the grid.
    #[inline]
    pub fn is_traversable(&self, c: Cell) -> bool {
        self.in_bounds(c) && !self.blocked[self.index(c)]
    }

    pub fn is_blocked(&self, c: Cell) -> Result<bool, Error> {
        if !self.in_bounds(c) {
            return Err(Error::OutOfBounds(c));
        }
        Ok(self.blocked[self.index(c)])
    }

    pub fn set_blocked(&mut self, c: Cell, blocked: bool) -> Result<(), Error> {
        if !self.in_bounds(c) {
            return Err(Error::OutOfBounds(c));
        }
        let k = self.index(c);
        self.blocked[k] = blocked;
        Ok(())
    }

    /// Blocks every cell of the inclusive rectangle, clipped to the grid.
    pub fn block_rect(&mut self, top_left: Cell, bottom_right: Cell) {
        let i0 = top_left.i.max(0);
        let j0 = top_left.j.max(0);
        let i1 = bottom_right.i.min(self.height as i32 - 1);
        let j1 = bottom_right.j.min(self.width as i32 - 1);
        for i in i0..=i1 {
            for j in j0..=j1 {
                let k = self.index(Cell::new(i, j));
                self.blocked[k] = true;
            }
        }
    }

    pub fn blocked_mask(&self) -> &[bool] {
        &self.blocked
    }

    pub fn traversable_count(&self) -> usize {
        self.blocked.iter().filter(|b| !**b).count()
    }

    /// Weight of an in-bounds cell; zero unless a weight field was computed.
    #[inline]
    pub fn weight(&self, c: Cell) -> f64 {
        self.weights[self.index(c)]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Replaces the weight field. Negative or non-finite weights are rejected.
    pub fn set_weights(&mut self, weights: Vec<f64>) -> Result<(), Error> {
        if weights.len() != self.blocked.len() {
            return Err(Error::InvalidDimensions {
                height: self.height,
                width: self.width,
            });
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidParams(
                "weights must be finite and non-negative",
            ));
        }
        self.weights = weights;
        Ok(())
    }

    pub fn has_weights(&self) -> bool {
        self.weights.iter().any(|w| *w != 0.0)
    }

    pub fn clear_weights(&mut self) {
        self.weights.iter_mut().for_each(|w| *w = 0.0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_dimensions() {
        assert!(Grid::new(0, 3).is_err());
        assert!(Grid::new(3, 0).is_err());
        assert!(Grid::from_blocked(2, 2, vec![false; 3]).is_err());
    }

    #[test]
    fn out_of_bounds_is_untraversable() {
        let g = Grid::new(2, 3).unwrap();
        assert!(g.is_traversable(Cell::new(1, 2)));
        assert!(!g.is_traversable(Cell::new(2, 0)));
        assert!(!g.is_traversable(Cell::new(0, -1)));
        assert_eq!(
            g.is_blocked(Cell::new(5, 5)),
            Err(Error::OutOfBounds(Cell::new(5, 5)))
        );
    }

    #[test]
    fn ascii_and_rect() {
        let mut g = Grid::from_ascii(&["...", ".#."]).unwrap();
        assert!(!g.is_traversable(Cell::new(1, 1)));
        assert_eq!(g.traversable_count(), 5);
        g.block_rect(Cell::new(-3, -3), Cell::new(0, 0));
        assert!(!g.is_traversable(Cell::new(0, 0)));
        assert_eq!(g.traversable_count(), 4);
    }

    #[test]
    fn weights_validated() {
        let mut g = Grid::new(1, 2).unwrap();
        assert!(g.set_weights(vec![0.0, -1.0]).is_err());
        assert!(g.set_weights(vec![0.0]).is_err());
        g.set_weights(vec![0.0, 0.5]).unwrap();
        assert!(g.has_weights());
        assert_eq!(g.weight(Cell::new(0, 1)), 0.5);
    }
}
