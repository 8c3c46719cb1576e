use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::geometry::{euclid_dist, los_unchecked, turn_angle};
use crate::grid::{Cell, Grid};
use crate::ANGLE_EPS;

/// Ordered pair of cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Section {
    pub tail: Cell,
    pub head: Cell,
}

impl Section {
    pub const fn new(tail: Cell, head: Cell) -> Self {
        Section { tail, head }
    }

    pub fn length(&self) -> f64 {
        euclid_dist(self.tail, self.head)
    }
}

/// A non-empty chain of adjacent sections.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    sections: Vec<Section>,
}

impl Path {
    pub fn new(sections: Vec<Section>) -> Result<Self, Error> {
        if sections.is_empty() {
            return Err(Error::EmptyPath);
        }
        for w in sections.windows(2) {
            if w[0].head != w[1].tail {
                return Err(Error::NotAdjacent {
                    head: w[0].head,
                    tail: w[1].tail,
                });
            }
        }
        Ok(Path { sections })
    }

    /// Path through the given waypoints; needs at least two.
    pub fn from_cells(cells: &[Cell]) -> Result<Self, Error> {
        Path::new(cells.windows(2).map(|w| Section::new(w[0], w[1])).collect())
    }

    pub fn sections(&self) -> &[Section] {
        &self.sections
    }

    /// Waypoints: the first tail followed by every head.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.sections.len() + 1);
        out.push(self.sections[0].tail);
        out.extend(self.sections.iter().map(|s| s.head));
        out
    }

    pub fn start(&self) -> Cell {
        self.sections[0].tail
    }

    pub fn goal(&self) -> Cell {
        self.sections[self.sections.len() - 1].head
    }

    pub fn len(&self) -> usize {
        self.sections.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn length(&self) -> f64 {
        self.sections.iter().map(Section::length).sum()
    }

    /// Turn angle at every interior waypoint, in path order.
    ///
    /// Zero-length sections make the angle undefined; they are reported as 180.
    pub fn turn_angles(&self) -> Vec<f64> {
        self.sections
            .windows(2)
            .map(|w| turn_angle(w[0], w[1]).unwrap_or(180.0))
            .collect()
    }

    pub fn max_turn_angle(&self) -> f64 {
        self.turn_angles().into_iter().fold(0.0, f64::max)
    }
}

/// Sum of section lengths; errors on an empty section list.
pub fn path_length(sections: &[Section]) -> Result<f64, Error> {
    if sections.is_empty() {
        return Err(Error::EmptyPath);
    }
    Ok(sections.iter().map(Section::length).sum())
}

/// Largest turn angle between consecutive sections; zero for a single section.
pub fn max_turn_angle(sections: &[Section]) -> Result<f64, Error> {
    if sections.is_empty() {
        return Err(Error::EmptyPath);
    }
    let mut max = 0.0f64;
    for w in sections.windows(2) {
        max = max.max(turn_angle(w[0], w[1])?);
    }
    Ok(max)
}

/// First reason a path fails to be a valid angle-constrained solution.
#[derive(Debug, Clone, PartialEq)]
pub enum PathViolation {
    WrongStart { expected: Cell, found: Cell },
    WrongGoal { expected: Cell, found: Cell },
    NoLineOfSight { section: usize },
    DegenerateSection { section: usize },
    AngleExceeded { at: usize, angle: f64 },
}

impl fmt::Display for PathViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathViolation::WrongStart { expected, found } => write!(
                f,
                "path starts at ({}, {}) instead of ({}, {})",
                found.i, found.j, expected.i, expected.j
            ),
            PathViolation::WrongGoal { expected, found } => write!(
                f,
                "path ends at ({}, {}) instead of ({}, {})",
                found.i, found.j, expected.i, expected.j
            ),
            PathViolation::NoLineOfSight { section } => {
                write!(f, "section {section} is not traversable")
            }
            PathViolation::DegenerateSection { section } => {
                write!(f, "section {section} has zero length")
            }
            PathViolation::AngleExceeded { at, angle } => {
                write!(f, "turn of {angle:.6} degrees after section {at}")
            }
        }
    }
}

/// Checks endpoints, per-section line-of-sight and the turn limit.
pub fn validate_path(
    grid: &Grid,
    path: &Path,
    start: Cell,
    goal: Cell,
    alpha_max: f64,
) -> Result<(), PathViolation> {
    if path.start() != start {
        return Err(PathViolation::WrongStart {
            expected: start,
            found: path.start(),
        });
    }
    if path.goal() != goal {
        return Err(PathViolation::WrongGoal {
            expected: goal,
            found: path.goal(),
        });
    }
    for (k, s) in path.sections().iter().enumerate() {
        if s.tail == s.head {
            return Err(PathViolation::DegenerateSection { section: k });
        }
        if !los_unchecked(grid, s.tail, s.head) {
            return Err(PathViolation::NoLineOfSight { section: k });
        }
    }
    for (k, angle) in path.turn_angles().into_iter().enumerate() {
        if angle > alpha_max + ANGLE_EPS {
            return Err(PathViolation::AngleExceeded { at: k, angle });
        }
    }
    Ok(())
}
