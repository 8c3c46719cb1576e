use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use lian::harness::{
    run_suite, summary_table, write_summary_csv, write_task_csv, InstantClock, SuiteOptions,
};
use lian::lian_core::mapgen::{generate_urban_map, sample_tasks, UrbanMapParams};
use lian::lian_core::{
    plan, validate_path, AlgorithmConfig, Cell, Clock, Outcome, Path as CellPath, Planner,
    WeightParams,
};
use lian::{read_map, render_svg, write_map, Error, SvgOptions, TaskFile, TaskSpec};

const EXIT_NO_PATH: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "lian",
    version,
    about = "Angle-constrained path planning on grids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plan one path and print a report.
    Solve(SolveArgs),
    /// Run a task file under one or more planner configurations.
    Bench(BenchArgs),
    /// Write seeded synthetic maps and a task file.
    Generate(GenerateArgs),
    /// Draw a map, optionally with a path, as SVG.
    Render(RenderArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Lian,
    Dlian,
    ThetaLa,
    WthetaLa,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    map: PathBuf,
    /// Start cell as `i,j`; sampled from --seed when omitted together with --goal.
    #[arg(long, value_parser = parse_cell)]
    start: Option<Cell>,
    #[arg(long, value_parser = parse_cell)]
    goal: Option<Cell>,
    #[arg(long, value_enum, default_value = "lian")]
    algorithm: Algorithm,
    /// Maximum turn angle in degrees.
    #[arg(long, default_value_t = 30.0)]
    alpha_max: f64,
    /// Circle radius for lian (default 5).
    #[arg(long)]
    delta: Option<u32>,
    /// Initial radius for dlian (default 10).
    #[arg(long)]
    delta_init: Option<u32>,
    #[arg(long)]
    delta_min: Option<u32>,
    #[arg(long)]
    delta_max: Option<u32>,
    #[arg(long)]
    n_increase: Option<u32>,
    /// Heuristic weight (default 2 for lian and dlian, 1 for the theta planners).
    #[arg(long)]
    hweight: Option<f64>,
    /// Obstacle penalty for wtheta-la (default 0.1).
    #[arg(long)]
    weight_p: Option<f64>,
    /// Obstacle influence radius for wtheta-la (default 12).
    #[arg(long)]
    weight_r: Option<u32>,
    /// Time budget in seconds.
    #[arg(long, default_value_t = 60.0)]
    timeout: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Minimum start-goal distance for sampled tasks, as a fraction of the map diagonal.
    #[arg(long, default_value_t = 0.5)]
    min_dist: f64,
    #[arg(long)]
    out_svg: Option<PathBuf>,
    /// Label turn angles in the SVG.
    #[arg(long)]
    angles: bool,
    #[arg(long, default_value_t = 1.0)]
    meters_per_cell: f64,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    tasks: PathBuf,
    /// Comma-separated planners: lian-<delta>, dlian-<delta_init>, theta-la, wtheta-la.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "lian-5,lian-10,theta-la,wtheta-la"
    )]
    algorithms: Vec<String>,
    /// Comma-separated turn limits in degrees.
    #[arg(long, value_delimiter = ',', default_value = "20,25,30")]
    alphas: Vec<f64>,
    /// Per-task cut-off in seconds.
    #[arg(long, default_value_t = 60.0)]
    cutoff: f64,
    #[arg(long)]
    hweight: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    weight_p: f64,
    #[arg(long, default_value_t = 12)]
    weight_r: u32,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = 1.0)]
    meters_per_cell: f64,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    maps: usize,
    #[arg(long, default_value_t = 128)]
    height: usize,
    #[arg(long, default_value_t = 128)]
    width: usize,
    /// Target fraction of blocked cells.
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    #[arg(long, default_value_t = 4)]
    min_size: usize,
    #[arg(long, default_value_t = 16)]
    max_size: usize,
    #[arg(long, default_value_t = 2)]
    street: usize,
    /// Tasks per map.
    #[arg(long, default_value_t = 10)]
    tasks: usize,
    #[arg(long, default_value_t = 0.5)]
    min_dist: f64,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    map: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Path cells as `i,j;i,j;...`.
    #[arg(long)]
    path: Option<String>,
    #[arg(long)]
    angles: bool,
    #[arg(long, default_value_t = 10)]
    cell_size: u32,
}

fn parse_cell(s: &str) -> Result<Cell, String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("`{s}` is not of the form i,j"))?;
    let num = |x: &str| {
        x.trim()
            .parse::<i32>()
            .map_err(|_| format!("`{x}` is not an integer"))
    };
    Ok(Cell::new(num(a)?, num(b)?))
}

fn usage(sub: &str, kind: ErrorKind, msg: impl std::fmt::Display) -> ExitCode {
    let mut cmd = Cli::command();
    let cmd = cmd.find_subcommand_mut(sub).expect("known subcommand");
    let _ = cmd.error(kind, msg).print();
    ExitCode::from(EXIT_INVALID)
}

fn fail(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_INVALID)
}

/// Parses `lian-5`, `dlian-10`, `theta-la`, `wtheta-la`.
fn parse_planner(name: &str, wp: WeightParams) -> Result<Planner, String> {
    let radius = |s: &str| {
        s.parse::<u32>()
            .ok()
            .filter(|&d| d > 0)
            .ok_or_else(|| format!("bad radius in `{name}`"))
    };
    match name {
        "theta-la" => Ok(Planner::ThetaLa),
        "wtheta-la" => Ok(Planner::WThetaLa(wp)),
        "lian" => Ok(Planner::Lian { delta: 5 }),
        "dlian" => Ok(Planner::dlian(10)),
        _ => {
            if let Some(d) = name.strip_prefix("dlian-") {
                Ok(Planner::dlian(radius(d)?))
            } else if let Some(d) = name.strip_prefix("lian-") {
                Ok(Planner::Lian { delta: radius(d)? })
            } else {
                Err(format!("unknown planner `{name}`"))
            }
        }
    }
}

fn default_hweight(p: &Planner) -> f64 {
    match p {
        Planner::Lian { .. } | Planner::DLian { .. } => 2.0,
        Planner::ThetaLa | Planner::WThetaLa(_) => 1.0,
    }
}

fn solve_config(a: &SolveArgs) -> Result<AlgorithmConfig, String> {
    let dlian_flags = a.delta_init.is_some()
        || a.delta_min.is_some()
        || a.delta_max.is_some()
        || a.n_increase.is_some();
    let weight_flags = a.weight_p.is_some() || a.weight_r.is_some();
    let reject = |flag: &str| Err(format!("{flag} cannot be used with this algorithm"));
    if a.algorithm != Algorithm::Lian && a.delta.is_some() {
        return reject("--delta");
    }
    if a.algorithm != Algorithm::Dlian && dlian_flags {
        return reject("--delta-init/--delta-min/--delta-max/--n-increase");
    }
    if a.algorithm != Algorithm::WthetaLa && weight_flags {
        return reject("--weight-p/--weight-r");
    }
    let planner = match a.algorithm {
        Algorithm::Lian => Planner::Lian {
            delta: a.delta.unwrap_or(5),
        },
        Algorithm::Dlian => {
            let Planner::DLian {
                init,
                min,
                max,
                n_increase,
            } = Planner::dlian(a.delta_init.unwrap_or(10))
            else {
                unreachable!()
            };
            Planner::DLian {
                init,
                min: a.delta_min.unwrap_or(min),
                max: a.delta_max.unwrap_or(max),
                n_increase: a.n_increase.unwrap_or(n_increase),
            }
        }
        Algorithm::ThetaLa => Planner::ThetaLa,
        Algorithm::WthetaLa => Planner::WThetaLa(WeightParams {
            p: a.weight_p.unwrap_or(0.1),
            r: a.weight_r.unwrap_or(12),
        }),
    };
    let hw = a.hweight.unwrap_or_else(|| default_hweight(&planner));
    let cfg = AlgorithmConfig::new(planner, a.alpha_max, hw);
    if let Some(p) = cfg.search_params() {
        p.validate().map_err(|e| e.to_string())?;
    }
    if let Some(wp) = cfg.weight_params() {
        wp.validate().map_err(|e| e.to_string())?;
    }
    if !(a.timeout.is_finite() && a.timeout > 0.0) {
        return Err("--timeout must be positive".into());
    }
    Ok(cfg)
}

fn fmt_cell(c: Cell) -> String {
    format!("{},{}", c.i, c.j)
}

fn solve(a: SolveArgs) -> ExitCode {
    let cfg = match solve_config(&a) {
        Ok(c) => c,
        Err(msg) => return usage("solve", ErrorKind::ArgumentConflict, msg),
    };
    let grid = match read_map(&a.map) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let (start, goal) = match (a.start, a.goal) {
        (Some(s), Some(g)) => (s, g),
        (None, None) => match sample_tasks(&grid, a.seed, 1, a.min_dist) {
            Ok(t) => t[0],
            Err(e) => return fail(e),
        },
        _ => {
            return usage(
                "solve",
                ErrorKind::MissingRequiredArgument,
                "--start and --goal must be given together",
            )
        }
    };
    let task = TaskSpec {
        map: a.map.display().to_string(),
        start,
        goal,
    };
    if let Err(msg) = task.check(&grid) {
        return fail(msg);
    }
    let searched = match cfg.prepare_grid(&grid) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let clock = InstantClock::start();
    let result = match plan(
        &searched,
        start,
        goal,
        &cfg,
        Some(Duration::from_secs_f64(a.timeout)),
        &clock,
    ) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let elapsed = clock.elapsed().as_secs_f64();
    if let Some(p) = &result.path {
        if let Err(v) = validate_path(&grid, p, start, goal, cfg.alpha_max) {
            eprintln!("error: planner returned an invalid path: {v}");
            return ExitCode::from(EXIT_INTERNAL);
        }
    }

    println!("algorithm: {}", cfg.label());
    println!("params: {}", cfg.params_string());
    println!("start: {}", fmt_cell(start));
    println!("goal: {}", fmt_cell(goal));
    println!("outcome: {}", result.outcome.as_str());
    if let Some(p) = &result.path {
        println!("path_length: {:.6}", p.length() * a.meters_per_cell);
        println!("max_turn_angle: {:.6}", p.max_turn_angle());
        println!("sections: {}", p.len());
    }
    println!("nodes_created: {}", result.nodes_created);
    println!("nodes_expanded: {}", result.nodes_expanded);
    println!("max_stored_nodes: {}", result.max_stored_nodes);
    if let Some(p) = &result.path {
        let cells: Vec<String> = p.cells().into_iter().map(fmt_cell).collect();
        println!("path: {}", cells.join(";"));
    }
    println!("time_s: {elapsed:.6}");

    if let Some(out) = &a.out_svg {
        let opts = SvgOptions {
            angle_labels: a.angles,
            ..SvgOptions::default()
        };
        let written = render_svg(&grid, result.path.as_ref(), &opts).and_then(|svg| {
            fs::write(out, svg).map_err(|e| Error::Io {
                path: out.clone(),
                source: e,
            })
        });
        if let Err(e) = written {
            return fail(e);
        }
    }
    match result.outcome {
        Outcome::PathFound => ExitCode::SUCCESS,
        Outcome::NoPath => ExitCode::from(EXIT_NO_PATH),
        Outcome::BudgetExhausted => ExitCode::from(EXIT_BUDGET),
    }
}

fn bench(a: BenchArgs) -> ExitCode {
    if !(a.cutoff.is_finite() && a.cutoff > 0.0) {
        return usage(
            "bench",
            ErrorKind::InvalidValue,
            "--cutoff must be positive",
        );
    }
    let wp = WeightParams {
        p: a.weight_p,
        r: a.weight_r,
    };
    let mut configs = Vec::new();
    for &alpha in &a.alphas {
        for name in &a.algorithms {
            let planner = match parse_planner(name.trim(), wp) {
                Ok(p) => p,
                Err(msg) => return usage("bench", ErrorKind::InvalidValue, msg),
            };
            let cfg = AlgorithmConfig::new(
                planner,
                alpha,
                a.hweight.unwrap_or_else(|| default_hweight(&planner)),
            );
            let checked = match cfg.search_params() {
                Some(p) => p.validate(),
                None => cfg.weight_params().map_or(Ok(()), |w| w.validate()),
            };
            if let Err(e) =
                checked.and_then(|_| lian::lian_core::ThetaParams::new(alpha, false).validate())
            {
                return usage("bench", ErrorKind::InvalidValue, e);
            }
            configs.push(cfg);
        }
    }
    let file = match TaskFile::read(&a.tasks) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    if file.tasks.is_empty() {
        return fail(format!("{}: no tasks", a.tasks.display()));
    }
    let maps = match file.load_maps() {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let opts = SuiteOptions {
        cutoff: Duration::from_secs_f64(a.cutoff),
        jobs: a.jobs.max(1),
    };
    let mut records = Vec::new();
    let mut rows = Vec::new();
    for cfg in &configs {
        let run = run_suite(&maps, &file.tasks, cfg, &opts);
        for w in &run.warnings {
            eprintln!("warning: {w}");
        }
        rows.push((
            cfg.label(),
            cfg.params_string(),
            run.metrics(opts.cutoff, a.meters_per_cell),
        ));
        records.extend(run.records);
    }
    if let Err(e) = fs::create_dir_all(&a.out_dir) {
        return fail(Error::Io {
            path: a.out_dir.clone(),
            source: e,
        });
    }
    let tasks_csv = a.out_dir.join("tasks.csv");
    let summary_csv = a.out_dir.join("summary.csv");
    if let Err(e) =
        write_task_csv(&tasks_csv, &records).and_then(|_| write_summary_csv(&summary_csv, &rows))
    {
        return fail(e);
    }
    print!("{}", summary_table(&rows));
    ExitCode::SUCCESS
}

fn generate(a: GenerateArgs) -> ExitCode {
    let params = UrbanMapParams {
        height: a.height,
        width: a.width,
        density: a.density,
        min_size: a.min_size,
        max_size: a.max_size,
        street: a.street,
    };
    if let Err(e) = fs::create_dir_all(&a.out_dir) {
        return fail(Error::Io {
            path: a.out_dir.clone(),
            source: e,
        });
    }
    let mut tasks = Vec::new();
    for k in 0..a.maps {
        let name = format!("map-{k:03}.map");
        let map_seed = a.seed.wrapping_mul(1_000_003).wrapping_add(k as u64);
        let grid = match generate_urban_map(map_seed, &params) {
            Ok(g) => g,
            Err(e) => return fail(e),
        };
        let pairs = match sample_tasks(&grid, map_seed ^ 0x5eed, a.tasks, a.min_dist) {
            Ok(p) => p,
            Err(e) => return fail(format!("{name}: {e}")),
        };
        if let Err(e) = write_map(&a.out_dir.join(&name), &grid) {
            return fail(e);
        }
        tasks.extend(pairs.into_iter().map(|(start, goal)| TaskSpec {
            map: name.clone(),
            start,
            goal,
        }));
    }
    let task_path = a.out_dir.join("tasks.txt");
    if let Err(e) = fs::write(&task_path, lian::format::serialize_tasks(&tasks)) {
        return fail(Error::Io {
            path: task_path,
            source: e,
        });
    }
    println!(
        "wrote {} maps and {} tasks to {}",
        a.maps,
        tasks.len(),
        a.out_dir.display()
    );
    ExitCode::SUCCESS
}

fn render(a: RenderArgs) -> ExitCode {
    let grid = match read_map(&a.map) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let path = match a.path.as_deref().map(parse_path).transpose() {
        Ok(p) => p,
        Err(msg) => return usage("render", ErrorKind::InvalidValue, msg),
    };
    let opts = SvgOptions {
        cell_size: a.cell_size,
        angle_labels: a.angles,
    };
    match render_svg(&grid, path.as_ref(), &opts) {
        Ok(svg) => match fs::write(&a.out, svg) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(Error::Io {
                path: a.out,
                source: e,
            }),
        },
        Err(e) => fail(e),
    }
}

fn parse_path(s: &str) -> Result<CellPath, String> {
    let cells = s
        .split(';')
        .filter(|p| !p.trim().is_empty())
        .map(parse_cell)
        .collect::<Result<Vec<_>, _>>()?;
    CellPath::from_cells(&cells).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve(a) => solve(a),
        Command::Bench(a) => bench(a),
        Command::Generate(a) => generate(a),
        Command::Render(a) => render(a),
    }
}
