//! Distance, Bresenham lines, line-of-sight, midpoint circles and turn angles.

use alloc::vec::Vec;

use crate::error::Error;
use crate::grid::{Cell, Grid};

#[inline]
pub fn euclid_dist(a: Cell, b: Cell) -> f64 {
    let di = (b.i - a.i) as f64;
    let dj = (b.j - a.j) as f64;
    libm::sqrt(di * di + dj * dj)
}

/// Integer Bresenham walk between two cells, both endpoints included.
///
/// The walk always starts at the lexicographically smaller endpoint, so the
/// visited cells do not depend on argument order.
#[derive(Debug, Clone)]
pub struct BresenhamIter {
    cur: Cell,
    end: Cell,
    di: i32,
    dj: i32,
    si: i32,
    sj: i32,
    err: i32,
    done: bool,
}

impl BresenhamIter {
    pub fn new(a: Cell, b: Cell) -> Self {
        let (from, to) = if b < a { (b, a) } else { (a, b) };
        let di = (to.i - from.i).abs();
        let dj = -(to.j - from.j).abs();
        BresenhamIter {
            cur: from,
            end: to,
            di,
            dj,
            si: if from.i < to.i { 1 } else { -1 },
            sj: if from.j < to.j { 1 } else { -1 },
            err: di + dj,
            done: false,
        }
    }
}

impl Iterator for BresenhamIter {
    type Item = Cell;

    #[inline]
    fn next(&mut self) -> Option<Cell> {
        if self.done {
            return None;
        }
        let out = self.cur;
        if self.cur == self.end {
            self.done = true;
            return Some(out);
        }
        let e2 = 2 * self.err;
        if e2 >= self.dj {
            self.err += self.dj;
            self.cur.i += self.si;
        }
        if e2 <= self.di {
            self.err += self.di;
            self.cur.j += self.sj;
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        if self.done {
            return (0, Some(0));
        }
        let n = (self.end.i - self.cur.i)
            .abs()
            .max((self.end.j - self.cur.j).abs()) as usize
            + 1;
        (n, Some(n))
    }
}

impl ExactSizeIterator for BresenhamIter {}

/// Bresenham rasterization of the segment `a -> b`, listed from `a` to `b`.
pub fn bresenham_line(a: Cell, b: Cell) -> Vec<Cell> {
    let mut cells: Vec<Cell> = BresenhamIter::new(a, b).collect();
    if b < a {
        cells.reverse();
    }
    cells
}

/// True iff every cell of the Bresenham line between `a` and `b` is traversable.
pub fn line_of_sight(grid: &Grid, a: Cell, b: Cell) -> Result<bool, Error> {
    for c in [a, b] {
        if !grid.in_bounds(c) {
            return Err(Error::OutOfBounds(c));
        }
    }
    Ok(los_unchecked(grid, a, b))
}

/// Line-of-sight for planners: out-of-bounds cells simply block.
#[inline]
pub(crate) fn los_unchecked(grid: &Grid, a: Cell, b: Cell) -> bool {
    BresenhamIter::new(a, b).all(|c| grid.is_traversable(c))
}

/// Offsets of the midpoint circle of radius `r` around the origin, sorted and
/// free of duplicates. Radius zero yields the origin alone.
pub fn circle_offsets(r: i32) -> Vec<Cell> {
    let mut out = Vec::new();
    if r <= 0 {
        out.push(Cell::new(0, 0));
        return out;
    }
    // First octant walk: x from r downwards, y from 0 upwards, while x >= y.
    // The decision variable is x^2 - x + y^2 - r^2 evaluated for the next y;
    // negative means the midpoint (x - 1/2, y) lies inside the circle.
    let mut x = r;
    let mut y = 0;
    let mut d = 1 - r;
    while x >= y {
        for (a, b) in [(x, y), (y, x)] {
            out.push(Cell::new(a, b));
            out.push(Cell::new(-a, b));
            out.push(Cell::new(a, -b));
            out.push(Cell::new(-a, -b));
        }
        y += 1;
        if d < 0 {
            d += 2 * y + 1;
        } else {
            x -= 1;
            d += 2 * (y - x) + 1;
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Cells of the midpoint circle of radius `delta` around `center`.
///
/// Cells may fall outside any particular grid; callers filter them.
pub fn midpoint_circle(center: Cell, delta: i32) -> Result<Vec<Cell>, Error> {
    if delta < 1 {
        return Err(Error::InvalidRadius(delta));
    }
    Ok(circle_offsets(delta)
        .into_iter()
        .map(|o| center + o)
        .collect())
}

/// Angle in degrees, within `[0, 180]`, between two nonzero direction vectors.
#[inline]
pub fn vector_angle(u: Cell, v: Cell) -> f64 {
    let (ux, uy) = (u.i as f64, u.j as f64);
    let (vx, vy) = (v.i as f64, v.j as f64);
    let norm = libm::sqrt((ux * ux + uy * uy) * (vx * vx + vy * vy));
    let cos = ((ux * vx + uy * vy) / norm).clamp(-1.0, 1.0);
    libm::acos(cos).to_degrees()
}

/// Turn angle at the shared cell of two adjacent sections given as cell
/// triples `prev -> mid -> next`. Returns `None` if either leg is degenerate.
#[inline]
pub fn turn_at(prev: Cell, mid: Cell, next: Cell) -> Option<f64> {
    let u = mid - prev;
    let v = next - mid;
    if u == Cell::default() || v == Cell::default() {
        return None;
    }
    Some(vector_angle(u, v))
}

/// Absolute angle of alteration between two adjacent sections, in degrees.
pub fn turn_angle(e1: crate::path::Section, e2: crate::path::Section) -> Result<f64, Error> {
    if e1.head != e2.tail {
        return Err(Error::NotAdjacent {
            head: e1.head,
            tail: e2.tail,
        });
    }
    for e in [e1, e2] {
        if e.tail == e.head {
            return Err(Error::ZeroLengthSection(e.tail));
        }
    }
    Ok(vector_angle(e1.head - e1.tail, e2.head - e2.tail))
}
