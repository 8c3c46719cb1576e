//! Seeded synthetic maps and task sampling.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::geometry::euclid_dist;
use crate::grid::{Cell, Grid};

/// Layout parameters for [`generate_urban_map`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UrbanMapParams {
    pub height: usize,
    pub width: usize,
    /// Target fraction of blocked cells, in `[0, 1)`.
    pub density: f64,
    /// Inclusive range of building side lengths.
    pub min_size: usize,
    pub max_size: usize,
    /// Minimum free gap kept between two buildings.
    pub street: usize,
}

impl UrbanMapParams {
    pub fn new(height: usize, width: usize, density: f64) -> Self {
        UrbanMapParams {
            height,
            width,
            density,
            min_size: 4,
            max_size: 16,
            street: 2,
        }
    }
}

/// Places axis-aligned rectangular buildings at random until the blocked
/// fraction reaches the target density or placement stops making progress.
pub fn generate_urban_map(seed: u64, params: &UrbanMapParams) -> Result<Grid, Error> {
    if !(0.0..1.0).contains(&params.density) {
        return Err(Error::InvalidParams("density must lie in [0, 1)"));
    }
    if params.min_size == 0 || params.min_size > params.max_size {
        return Err(Error::InvalidParams(
            "building sizes must satisfy 1 <= min <= max",
        ));
    }
    let mut grid = Grid::new(params.height, params.width)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = libm::ceil(params.density * grid.len() as f64) as usize;
    let mut blocked = 0usize;
    let mut placed: Vec<(Cell, Cell)> = Vec::new();
    let max_attempts = 200 + 50 * grid.len() / (params.min_size * params.min_size);
    let gap = params.street as i32;
    let mut attempts = 0;
    while blocked < target && attempts < max_attempts {
        attempts += 1;
        let h = rng
            .gen_range(params.min_size..=params.max_size)
            .min(params.height);
        let w = rng
            .gen_range(params.min_size..=params.max_size)
            .min(params.width);
        let i0 = rng.gen_range(0..=params.height - h) as i32;
        let j0 = rng.gen_range(0..=params.width - w) as i32;
        let tl = Cell::new(i0, j0);
        let br = Cell::new(i0 + h as i32 - 1, j0 + w as i32 - 1);
        let clashes = placed.iter().any(|(a, b)| {
            tl.i <= b.i + gap && br.i + gap >= a.i && tl.j <= b.j + gap && br.j + gap >= a.j
        });
        if clashes {
            continue;
        }
        grid.block_rect(tl, br);
        placed.push((tl, br));
        blocked += h * w;
    }
    Ok(grid)
}

/// Every cell blocked independently with probability `density`.
pub fn random_grid(seed: u64, height: usize, width: usize, density: f64) -> Result<Grid, Error> {
    if !(0.0..1.0).contains(&density) {
        return Err(Error::InvalidParams("density must lie in [0, 1)"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = (0..height * width).map(|_| rng.gen_bool(density)).collect();
    Grid::from_blocked(height, width, mask)
}

/// Samples `count` start/goal pairs on traversable, distinct cells that are at
/// least `min_dist_fraction` of the grid diagonal apart.
pub fn sample_tasks(
    grid: &Grid,
    seed: u64,
    count: usize,
    min_dist_fraction: f64,
) -> Result<Vec<(Cell, Cell)>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let diag = euclid_dist(
        Cell::new(0, 0),
        Cell::new(grid.height() as i32 - 1, grid.width() as i32 - 1),
    );
    let min_dist = min_dist_fraction * diag;
    let max_attempts = 1000 * count.max(1);
    let mut attempts = 0;
    let mut out = Vec::with_capacity(count);
    let pick = |rng: &mut ChaCha8Rng| {
        Cell::new(
            rng.gen_range(0..grid.height()) as i32,
            rng.gen_range(0..grid.width()) as i32,
        )
    };
    while out.len() < count {
        if attempts >= max_attempts {
            return Err(Error::SamplingFailed { attempts });
        }
        attempts += 1;
        let s = pick(&mut rng);
        let g = pick(&mut rng);
        if s != g
            && grid.is_traversable(s)
            && grid.is_traversable(g)
            && euclid_dist(s, g) >= min_dist
        {
            out.push((s, g));
        }
    }
    Ok(out)
}
