//! Plain-text map and task files.
//!
//! Map:
//!
//! ```text
//! height 2
//! width 3
//! ...
//! .#.
//! ```
//!
//! Task file: one `map-path start_i start_j goal_i goal_j` per line, `#`
//! comments and blank lines ignored. Map paths are relative to the task file.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use lian_core::{Cell, Grid};

use crate::error::{Error, ParseError};

fn perr(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// 1-based column of `part`, a subslice of `line`.
fn column_of(line: &str, part: &str) -> usize {
    part.as_ptr() as usize - line.as_ptr() as usize + 1
}

/// Parses a map document. Header lines `height M` and `width N` come first in
/// either order; optional `type ...` and `map` lines are accepted and
/// ignored. The body follows: exactly `M` lines of `N` characters, `.` for
/// free and `#` for blocked cells.
pub fn parse_map(text: &str) -> Result<Grid, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.strip_suffix('\r').unwrap_or(l)));
    let mut height = None;
    let mut width = None;
    let mut last_line = 0;
    while height.is_none() || width.is_none() {
        let Some((n, line)) = lines.next() else {
            return Err(perr(last_line + 1, 1, "missing `height` or `width` header"));
        };
        last_line = n;
        let mut words = line.split_whitespace();
        let key = words.next();
        let slot = match key {
            None => continue,
            Some("type") => continue,
            Some("height") => &mut height,
            Some("width") => &mut width,
            Some(other) => return Err(perr(n, 1, format!("unexpected header `{other}`"))),
        };
        let value = words
            .next()
            .ok_or_else(|| perr(n, line.len() + 1, "missing value"))?;
        let col = column_of(line, value);
        let v: usize = value
            .parse()
            .map_err(|_| perr(n, col, format!("`{value}` is not a non-negative integer")))?;
        if v == 0 {
            return Err(perr(n, col, "dimensions must be positive"));
        }
        if words.next().is_some() {
            return Err(perr(
                n,
                col + value.len(),
                "trailing text after header value",
            ));
        }
        if slot.replace(v).is_some() {
            return Err(perr(n, 1, "duplicate header"));
        }
    }
    let (height, width) = (height.unwrap(), width.unwrap());

    let mut blocked = Vec::with_capacity(height * width);
    let mut rows = 0;
    let mut first = true;
    for (n, line) in lines.by_ref() {
        last_line = n;
        if first && line.trim() == "map" {
            first = false;
            continue;
        }
        first = false;
        if rows == height {
            if line.trim().is_empty() {
                continue;
            }
            return Err(perr(n, 1, format!("more than {height} rows")));
        }
        let mut count = 0;
        for (col, ch) in line.chars().enumerate() {
            match ch {
                '.' => blocked.push(false),
                '#' => blocked.push(true),
                other => return Err(perr(n, col + 1, format!("illegal character `{other}`"))),
            }
            count += 1;
        }
        if count != width {
            return Err(perr(
                n,
                count.min(width) + 1,
                format!("expected {width} cells, found {count}"),
            ));
        }
        rows += 1;
    }
    if rows != height {
        return Err(perr(
            last_line + 1,
            1,
            format!("expected {height} rows, found {rows}"),
        ));
    }
    Ok(Grid::from_blocked(height, width, blocked).expect("dimensions checked"))
}

/// Normalized text form: the two header lines and the body, each line
/// terminated by `\n`.
pub fn serialize_map(grid: &Grid) -> String {
    let mut out = String::with_capacity(grid.len() + grid.height() + 32);
    writeln!(out, "height {}", grid.height()).unwrap();
    writeln!(out, "width {}", grid.width()).unwrap();
    for row in grid.blocked_mask().chunks(grid.width()) {
        out.extend(row.iter().map(|&b| if b { '#' } else { '.' }));
        out.push('\n');
    }
    out
}

pub fn read_map(path: &Path) -> Result<Grid, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_map(&text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        source: e,
    })
}

pub fn write_map(path: &Path, grid: &Grid) -> Result<(), Error> {
    fs::write(path, serialize_map(grid)).map_err(|e| Error::io(path, e))
}

/// One start/goal pair on a named map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskSpec {
    /// Map path as written in the task file.
    pub map: String,
    pub start: Cell,
    pub goal: Cell,
}

impl TaskSpec {
    /// Checks the endpoints against the map: in bounds, free and distinct.
    pub fn check(&self, grid: &Grid) -> Result<(), String> {
        for (name, c) in [("start", self.start), ("goal", self.goal)] {
            if !grid.in_bounds(c) {
                return Err(format!("{name} ({}, {}) is outside the map", c.i, c.j));
            }
            if !grid.is_traversable(c) {
                return Err(format!("{name} ({}, {}) is blocked", c.i, c.j));
            }
        }
        if self.start == self.goal {
            return Err("start equals goal".to_string());
        }
        Ok(())
    }
}

pub fn parse_tasks(text: &str) -> Result<Vec<TaskSpec>, ParseError> {
    let mut tasks = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let n = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim_end();
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 5 {
            return Err(perr(
                n,
                1,
                format!("expected 5 fields, found {}", fields.len()),
            ));
        }
        let mut nums = [0i32; 4];
        for (slot, f) in nums.iter_mut().zip(&fields[1..]) {
            let col = column_of(raw, f);
            *slot = f
                .parse::<u32>()
                .ok()
                .and_then(|v| i32::try_from(v).ok())
                .ok_or_else(|| perr(n, col, format!("`{f}` is not a non-negative integer")))?;
        }
        tasks.push(TaskSpec {
            map: fields[0].to_string(),
            start: Cell::new(nums[0], nums[1]),
            goal: Cell::new(nums[2], nums[3]),
        });
    }
    Ok(tasks)
}

pub fn serialize_tasks(tasks: &[TaskSpec]) -> String {
    let mut out = String::new();
    for t in tasks {
        writeln!(
            out,
            "{} {} {} {} {}",
            t.map, t.start.i, t.start.j, t.goal.i, t.goal.j
        )
        .unwrap();
    }
    out
}

/// A parsed task file together with the directory its map paths are
/// relative to.
#[derive(Debug, Clone)]
pub struct TaskFile {
    pub dir: PathBuf,
    pub tasks: Vec<TaskSpec>,
}

impl TaskFile {
    pub fn read(path: &Path) -> Result<Self, Error> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let tasks = parse_tasks(&text).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            source: e,
        })?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(TaskFile { dir, tasks })
    }

    pub fn resolve(&self, map: &str) -> PathBuf {
        self.dir.join(map)
    }

    /// Reads every distinct map the tasks refer to.
    pub fn load_maps(&self) -> Result<MapSet, Error> {
        let mut maps = MapSet::new();
        for t in &self.tasks {
            if !maps.contains_key(&t.map) {
                let grid = read_map(&self.resolve(&t.map))?;
                maps.insert(t.map.clone(), grid);
            }
        }
        Ok(maps)
    }
}

/// Maps keyed by the name used in task files.
pub type MapSet = std::collections::BTreeMap<String, Grid>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_map() {
        let g = parse_map("height 2\nwidth 3\n...\n.#.").unwrap();
        assert_eq!((g.height(), g.width()), (2, 3));
        assert!(!g.is_traversable(Cell::new(1, 1)));
        assert_eq!(g.traversable_count(), 5);
        assert_eq!(serialize_map(&g), "height 2\nwidth 3\n...\n.#.\n");
    }

    #[test]
    fn short_body() {
        let e = parse_map("height 3\nwidth 2\n..\n..\n").unwrap_err();
        assert_eq!(e.line, 5);
        assert!(e.message.contains("expected 3 rows"));
    }

    #[test]
    fn illegal_char_position() {
        let e = parse_map("height 2\nwidth 3\n...\n.@.\n").unwrap_err();
        assert_eq!((e.line, e.column), (4, 2));
    }

    #[test]
    fn tasks_with_comments() {
        let t = parse_tasks("# header\n\na.map 1 2 3 4  # trailing\n").unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].start, Cell::new(1, 2));
        assert!(parse_tasks("a.map 1 2 3\n").is_err());
        assert_eq!(parse_tasks("a.map 1 -2 3 4\n").unwrap_err().column, 9);
    }
}
