//! File formats, benchmark harness and SVG rendering on top of `lian-core`.

pub mod error;
pub mod format;
pub mod harness;
pub mod svg;

pub use error::{Error, ParseError};
pub use format::{
    parse_map, parse_tasks, read_map, serialize_map, write_map, MapSet, TaskFile, TaskSpec,
};
pub use harness::{run_suite, InstantClock, SuiteOptions};
pub use lian_core;
pub use svg::{render_svg, SvgOptions};
