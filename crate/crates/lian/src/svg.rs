//! Deterministic SVG rendering of a grid and an optional path.

use std::fmt::Write as _;

use lian_core::{Grid, Path};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    /// Side of one cell in user units.
    pub cell_size: u32,
    /// Print the turn angle, in degrees, next to every inner vertex.
    pub angle_labels: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            cell_size: 10,
            angle_labels: false,
        }
    }
}

/// Renders blocked cells as squares and the path as a polyline through cell
/// centers, with start and goal markers. Column `j` maps to `x`, row `i` to
/// `y`.
pub fn render_svg(grid: &Grid, path: Option<&Path>, opts: &SvgOptions) -> Result<String, Error> {
    if opts.cell_size == 0 {
        return Err(Error::Invalid("cell size must be positive".to_string()));
    }
    let s = f64::from(opts.cell_size);
    let (w, h) = (grid.width() as f64 * s, grid.height() as f64 * s);
    let cells = path.map(Path::cells).unwrap_or_default();
    if let Some(&c) = cells.iter().find(|&&c| !grid.in_bounds(c)) {
        return Err(Error::PathOutOfBounds {
            cell: c,
            height: grid.height(),
            width: grid.width(),
        });
    }

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    )
    .unwrap();
    writeln!(
        out,
        "<rect class=\"outline\" x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"1\"/>"
    )
    .unwrap();

    let blocked: Vec<usize> = (0..grid.len())
        .filter(|&k| grid.blocked_mask()[k])
        .collect();
    if !blocked.is_empty() {
        out.push_str("<g class=\"obstacles\" fill=\"#404040\">\n");
        for k in blocked {
            let c = grid.cell_at(k);
            writeln!(
                out,
                "<rect x=\"{}\" y=\"{}\" width=\"{s}\" height=\"{s}\"/>",
                f64::from(c.j) * s,
                f64::from(c.i) * s
            )
            .unwrap();
        }
        out.push_str("</g>\n");
    }

    if let (Some(p), Some(first), Some(last)) = (path, cells.first(), cells.last()) {
        let center = |c: lian_core::Cell| ((f64::from(c.j) + 0.5) * s, (f64::from(c.i) + 0.5) * s);
        let points: Vec<String> = cells
            .iter()
            .map(|&c| {
                let (x, y) = center(c);
                format!("{x},{y}")
            })
            .collect();
        writeln!(
            out,
            "<polyline class=\"path\" points=\"{}\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"{}\" stroke-linejoin=\"round\"/>",
            points.join(" "),
            s / 5.0
        )
        .unwrap();
        let r = s * 0.4;
        for (class, c, color) in [("start", *first, "#2ca02c"), ("goal", *last, "#1f77b4")] {
            let (x, y) = center(c);
            writeln!(
                out,
                "<circle class=\"{class}\" cx=\"{x}\" cy=\"{y}\" r=\"{r}\" fill=\"{color}\"/>"
            )
            .unwrap();
        }
        if opts.angle_labels && cells.len() > 2 {
            writeln!(
                out,
                "<g class=\"angles\" font-family=\"sans-serif\" font-size=\"{}\" fill=\"#000000\">",
                s
            )
            .unwrap();
            for (c, a) in cells[1..cells.len() - 1].iter().zip(p.turn_angles()) {
                let (x, y) = center(*c);
                writeln!(out, "<text x=\"{}\" y=\"{}\">{a:.1}</text>", x + r, y - r).unwrap();
            }
            out.push_str("</g>\n");
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lian_core::Cell;

    #[test]
    fn empty_grid_is_outline_only() {
        let g = Grid::new(3, 4).unwrap();
        let svg = render_svg(&g, None, &SvgOptions::default()).unwrap();
        assert!(svg.contains("width=\"40\" height=\"30\""));
        assert_eq!(svg.matches("<rect").count(), 1);
        assert!(!svg.contains("polyline"));
    }

    #[test]
    fn single_section() {
        let g = Grid::new(5, 5).unwrap();
        let p = Path::from_cells(&[Cell::new(0, 0), Cell::new(4, 3)]).unwrap();
        let svg = render_svg(&g, Some(&p), &SvgOptions::default()).unwrap();
        assert!(svg.contains("points=\"5,5 35,45\""));
    }

    #[test]
    fn out_of_bounds_path() {
        let g = Grid::new(5, 5).unwrap();
        let p = Path::from_cells(&[Cell::new(0, 0), Cell::new(5, 3)]).unwrap();
        assert!(matches!(
            render_svg(&g, Some(&p), &SvgOptions::default()),
            Err(Error::PathOutOfBounds { .. })
        ));
    }
}
