use core::fmt;

use crate::grid::Cell;

/// Errors reported by the planning library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Grid dimensions must both be at least one and the buffers must match.
    InvalidDimensions { height: usize, width: usize },
    /// A cell query fell outside the grid.
    OutOfBounds(Cell),
    /// Circle radius below one.
    InvalidRadius(i32),
    /// A section whose tail equals its head has no direction.
    ZeroLengthSection(Cell),
    /// Two sections that were expected to share a middle cell do not.
    NotAdjacent { head: Cell, tail: Cell },
    /// A path needs at least one section.
    EmptyPath,
    /// Start or goal is unusable for a search.
    InvalidTask(&'static str),
    /// A parameter is outside its admissible range.
    InvalidParams(&'static str),
    /// Parent pointers of a goal node do not lead back to the start.
    BrokenParentChain,
    /// The brute-force oracle refuses grids above its size bound.
    OracleTooLarge { cells: usize, limit: usize },
    /// Endpoint sampling gave up after its retry budget.
    SamplingFailed { attempts: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDimensions { height, width } => {
                write!(f, "invalid grid dimensions {height}x{width}")
            }
            Error::OutOfBounds(c) => write!(f, "cell ({}, {}) is out of bounds", c.i, c.j),
            Error::InvalidRadius(r) => write!(f, "circle radius must be >= 1, got {r}"),
            Error::ZeroLengthSection(c) => {
                write!(f, "zero-length section at ({}, {})", c.i, c.j)
            }
            Error::NotAdjacent { head, tail } => write!(
                f,
                "sections are not adjacent: ({}, {}) != ({}, {})",
                head.i, head.j, tail.i, tail.j
            ),
            Error::EmptyPath => f.write_str("a path needs at least one section"),
            Error::InvalidTask(why) => write!(f, "invalid task: {why}"),
            Error::InvalidParams(why) => write!(f, "invalid parameters: {why}"),
            Error::BrokenParentChain => f.write_str("parent chain does not reach the start node"),
            Error::OracleTooLarge { cells, limit } => {
                write!(f, "oracle refuses a grid of {cells} cells (limit {limit})")
            }
            Error::SamplingFailed { attempts } => {
                write!(f, "could not sample a valid task after {attempts} attempts")
            }
        }
    }
}

impl core::error::Error for Error {}
