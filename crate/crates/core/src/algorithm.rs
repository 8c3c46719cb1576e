//! One entry point over the four planners.

use alloc::format;
use alloc::string::String;
use core::time::Duration;

use crate::error::Error;
use crate::grid::{Cell, Grid};
use crate::lian::lian_search_with;
use crate::search::{Clock, DeltaMode, SearchParams, SearchResult};
use crate::theta::{compute_obstacle_weights, theta_la_search_with, ThetaParams, WeightParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Planner {
    Lian {
        delta: u32,
    },
    DLian {
        init: u32,
        min: u32,
        max: u32,
        n_increase: u32,
    },
    ThetaLa,
    WThetaLa(WeightParams),
}

impl Planner {
    /// D-LIAN with `min = init / 2`, `max = init`, `n = 2`.
    pub fn dlian(init: u32) -> Self {
        match DeltaMode::dynamic(init) {
            DeltaMode::Dynamic {
                init,
                min,
                max,
                n_increase,
            } => Planner::DLian {
                init,
                min,
                max,
                n_increase,
            },
            DeltaMode::Fixed(_) => unreachable!(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgorithmConfig {
    pub planner: Planner,
    pub alpha_max: f64,
    pub heuristic_weight: f64,
}

impl AlgorithmConfig {
    pub fn new(planner: Planner, alpha_max: f64, heuristic_weight: f64) -> Self {
        AlgorithmConfig {
            planner,
            alpha_max,
            heuristic_weight,
        }
    }

    /// Short name such as `LIAN-5`, `D-LIAN-10`, `Theta*-LA`.
    pub fn label(&self) -> String {
        match self.planner {
            Planner::Lian { delta } => format!("LIAN-{delta}"),
            Planner::DLian { init, .. } => format!("D-LIAN-{init}"),
            Planner::ThetaLa => String::from("Theta*-LA"),
            Planner::WThetaLa(_) => String::from("wTheta*-LA"),
        }
    }

    /// Full parameter list, `;`-separated `key=value` pairs.
    pub fn params_string(&self) -> String {
        let base = format!("alpha={};w={}", self.alpha_max, self.heuristic_weight);
        match self.planner {
            Planner::Lian { delta } => format!("{base};delta={delta}"),
            Planner::DLian {
                init,
                min,
                max,
                n_increase,
            } => format!("{base};delta_init={init};delta_min={min};delta_max={max};n={n_increase}"),
            Planner::ThetaLa => base,
            Planner::WThetaLa(wp) => format!("{base};p={};r={}", wp.p, wp.r),
        }
    }

    pub fn weight_params(&self) -> Option<WeightParams> {
        match self.planner {
            Planner::WThetaLa(wp) => Some(wp),
            _ => None,
        }
    }

    pub fn search_params(&self) -> Option<SearchParams> {
        let delta = match self.planner {
            Planner::Lian { delta } => DeltaMode::Fixed(delta),
            Planner::DLian {
                init,
                min,
                max,
                n_increase,
            } => DeltaMode::Dynamic {
                init,
                min,
                max,
                n_increase,
            },
            _ => return None,
        };
        Some(SearchParams {
            alpha_max: self.alpha_max,
            delta,
            heuristic_weight: self.heuristic_weight,
            node_budget: None,
            time_budget: None,
        })
    }

    /// Grid the planner should search: a copy carrying the obstacle weight
    /// field for wTheta*-LA, a plain copy otherwise.
    pub fn prepare_grid(&self, grid: &Grid) -> Result<Grid, Error> {
        let mut g = grid.clone();
        match self.weight_params() {
            Some(wp) => compute_obstacle_weights(&mut g, wp)?,
            None => g.clear_weights(),
        }
        Ok(g)
    }
}

/// Runs the configured planner. For wTheta*-LA the grid must already carry
/// its weight field (see [`AlgorithmConfig::prepare_grid`]).
pub fn plan<C: Clock>(
    grid: &Grid,
    start: Cell,
    goal: Cell,
    config: &AlgorithmConfig,
    time_budget: Option<Duration>,
    clock: &C,
) -> Result<SearchResult, Error> {
    match config.planner {
        Planner::ThetaLa | Planner::WThetaLa(_) => {
            if let Some(wp) = config.weight_params() {
                wp.validate()?;
            }
            let params = ThetaParams {
                alpha_max: config.alpha_max,
                use_weights: matches!(config.planner, Planner::WThetaLa(_)),
                heuristic_weight: config.heuristic_weight,
                node_budget: None,
                time_budget,
            };
            theta_la_search_with(grid, start, goal, &params, clock)
        }
        _ => {
            let mut params = config.search_params().expect("LIAN family");
            params.time_budget = time_budget;
            lian_search_with(grid, start, goal, &params, clock, &mut ())
        }
    }
}
