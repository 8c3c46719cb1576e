//! Angle-constrained path planning on square grids.
//!
//! The crate is `no_std` and only needs an allocator. It contains the grid
//! model and its rasterization primitives, the LIAN family of planners
//! (fixed-radius and dynamic-radius), the Theta*-LA baselines, a brute-force
//! reference solver used for verification, and the pure parts of the
//! benchmark protocol (metric aggregation, synthetic map generation).
//!
//! Everything that touches the file system or a wall clock lives in the
//! companion `lian` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod algorithm;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod lian;
pub mod mapgen;
pub mod metrics;
pub mod oracle;
pub mod path;
pub mod search;
pub mod theta;

pub use algorithm::{plan, AlgorithmConfig, Planner};
pub use error::Error;
pub use geometry::{bresenham_line, euclid_dist, line_of_sight, midpoint_circle, turn_angle};
pub use grid::{Cell, Grid};
pub use lian::lian_search;
pub use path::{max_turn_angle, path_length, validate_path, Path, PathViolation, Section};
pub use search::{Clock, DeltaMode, NoClock, Outcome, SearchParams, SearchResult};
pub use theta::{
    compute_obstacle_weights, theta_la_search, weighted_len, ThetaParams, WeightParams,
};

/// Slack, in degrees, applied in favor of acceptance whenever a turn angle is
/// compared against the limit.
pub const ANGLE_EPS: f64 = 1e-9;
