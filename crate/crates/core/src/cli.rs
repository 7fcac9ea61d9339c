//! The `cage` command-line tool.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 domain-negative result
//! (colliding pose, unreachable target), 3 planner and oracle disagree.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::lie::Pose2;
use crate::planner::{brute_force_min_moves, Planner, PlannerError, PoseGrid};
use crate::render::render_svg;
use crate::report::{
    read_moves, ClassificationEntry, CommandEcho, MovesEntry, OracleEntry, PoseEntry, Report, ReportResult,
};
use crate::scene_file::SceneFile;
use crate::sweep::SimpleMove;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_ORACLE_MISMATCH: i32 = 3;

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "CAGE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "cage", version, about = "Caging analysis for rigid planar objects")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Scene file (TOML).
    #[arg(long)]
    scene: PathBuf,
    /// Grid resolution as NX,NY,NTHETA.
    #[arg(long, value_parser = parse_grid)]
    grid: Option<(usize, usize, usize)>,
    /// Largest |k| of log branches tried per move.
    #[arg(long)]
    k_max: Option<u32>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Include wall-clock time in JSON reports.
    #[arg(long)]
    timing: bool,
    /// Output file (the SVG for `render`, the report otherwise).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Test one placement for collision and report its clearance.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        from: String,
    },
    /// Count congruence classes of the free grid.
    Components {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ell0: Option<usize>,
    },
    /// Least number of simple moves between two named placements.
    MinMoves {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Cross-check against the brute-force search.
        #[arg(long)]
        oracle: bool,
    },
    /// Least number of simple moves from a placement to outside the cage.
    Escape {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        from: String,
    },
    /// Draw the scene, or a move sequence from a JSON report, as SVG.
    Render {
        #[command(flatten)]
        common: Common,
        /// JSON report from `min-moves` or `escape`.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Placement to draw when no report is given.
        #[arg(long)]
        from: Option<String>,
    },
    /// Classify the scene as congruent, completely caging, or dissociating.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ell0: usize,
    },
}

fn parse_grid(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    let nums: Result<Vec<usize>, _> = parts.iter().map(|p| p.trim().parse::<usize>()).collect();
    match nums.as_deref() {
        Ok([a, b, c]) if *a > 0 && *b > 0 && *c > 0 => Ok((*a, *b, *c)),
        Ok([_, _, _]) => Err("grid resolution must be positive".to_string()),
        _ => Err(format!("expected NX,NY,NTHETA, got \"{s}\"")),
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<PlannerError> for Failure {
    fn from(e: PlannerError) -> Self {
        let code = match e {
            PlannerError::QueryPoseColliding => EXIT_NEGATIVE,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

struct Context {
    file: SceneFile,
    echo: CommandEcho,
}

impl Context {
    fn load(name: &str, common: &Common) -> Result<Self, Failure> {
        let file = SceneFile::load(&common.scene).map_err(|e| Failure::usage(e.to_string()))?;
        let mut args = BTreeMap::new();
        args.insert("scene".to_string(), json!(common.scene.display().to_string()));
        if let Some((a, b, c)) = common.grid {
            args.insert("grid".to_string(), json!([a, b, c]));
        }
        if let Some(k) = common.k_max {
            args.insert("k_max".to_string(), json!(k));
        }
        Ok(Self {
            file,
            echo: CommandEcho {
                name: name.to_string(),
                args,
            },
        })
    }

    fn arg(&mut self, key: &str, value: serde_json::Value) {
        self.echo.args.insert(key.to_string(), value);
    }

    fn named(&self, label: &str) -> Result<(Pose2, PoseEntry), Failure> {
        let p = self
            .file
            .pose(label)
            .ok_or_else(|| Failure::usage(format!("no pose labelled \"{label}\" in scene")))?;
        Ok((p.pose(), PoseEntry::labelled(&p.label, p.x, p.y, p.theta)))
    }

    fn grid(&self, common: &Common) -> PoseGrid {
        self.file.pose_grid(common.grid, common.k_max)
    }

    fn report(self, grid: Option<PoseGrid>, result: ReportResult) -> Report {
        Report::new(self.echo, &self.file.scene.name, grid, result)
    }
}

fn execute(command: &Command) -> Result<(i32, Option<String>), Failure> {
    let started = Instant::now();
    let (common, report, code) = match command {
        Command::Check { common, from } => {
            let mut cx = Context::load("check", common)?;
            cx.arg("from", json!(from));
            let (pose, entry) = cx.named(from)?;
            let shape = cx.file.scene.object.transform(&pose);
            let free = !crate::geometry::intersects(&shape, &cx.file.scene.cage);
            let clearance = crate::geometry::clearance(&shape, &cx.file.scene.cage);
            let result = ReportResult::Check {
                pose: entry,
                free,
                clearance: clearance.is_finite().then_some(clearance),
            };
            let code = if free { EXIT_OK } else { EXIT_NEGATIVE };
            (common, cx.report(None, result), code)
        }
        Command::Components { common, ell0 } => {
            let mut cx = Context::load("components", common)?;
            if let Some(e) = ell0 {
                cx.arg("ell0", json!(e));
            }
            let grid = cx.grid(common);
            let planner = Planner::new(&cx.file.scene, &grid)?;
            let labels = planner.components();
            let classification = match *ell0 {
                Some(e) => {
                    let extra: Vec<Pose2> = cx.file.poses.iter().map(|p| p.pose()).collect();
                    Some(ClassificationEntry::new(&planner.classify(e, &extra)?, e))
                }
                None => None,
            };
            let result = ReportResult::Components {
                total_cells: grid.cell_count(),
                free_cells: planner.free_cells().len(),
                component_count: labels.count(),
                component_sizes: labels.sizes.clone(),
                classification,
            };
            (common, cx.report(Some(grid), result), EXIT_OK)
        }
        Command::MinMoves {
            common,
            from,
            to,
            oracle,
        } => {
            let mut cx = Context::load("min-moves", common)?;
            cx.arg("from", json!(from));
            cx.arg("to", json!(to));
            if *oracle {
                cx.arg("oracle", json!(true));
            }
            let (a, a_entry) = cx.named(from)?;
            let (b, b_entry) = cx.named(to)?;
            let grid = cx.grid(common);
            let found = Planner::new(&cx.file.scene, &grid)?.min_simple_moves(&a, &b)?;
            let mut entry = MovesEntry::new(&found, a_entry, Some(b_entry));
            let mut code = if found.is_reachable() { EXIT_OK } else { EXIT_NEGATIVE };
            if *oracle {
                let reference = brute_force_min_moves(&cx.file.scene, &a, &b, &grid)?;
                let agrees = reference.ell == found.ell;
                if !agrees {
                    code = EXIT_ORACLE_MISMATCH;
                }
                entry.oracle = Some(OracleEntry {
                    ell: reference.ell,
                    agrees,
                });
            }
            (common, cx.report(Some(grid), ReportResult::Moves(entry)), code)
        }
        Command::Escape { common, from } => {
            let mut cx = Context::load("escape", common)?;
            cx.arg("from", json!(from));
            let (a, a_entry) = cx.named(from)?;
            let grid = cx.grid(common);
            let found = Planner::new(&cx.file.scene, &grid)?.escape_to_exterior(&a)?;
            let code = if found.is_reachable() { EXIT_OK } else { EXIT_NEGATIVE };
            let entry = MovesEntry::new(&found, a_entry, None);
            (common, cx.report(Some(grid), ReportResult::Moves(entry)), code)
        }
        Command::Render { common, report, from } => {
            let mut cx = Context::load("render", common)?;
            let path = common
                .out
                .as_ref()
                .ok_or_else(|| Failure::usage("render needs --out PATH"))?;
            cx.arg("out", json!(path.display().to_string()));
            let (start, moves) = match (report, from) {
                (Some(r), _) => {
                    cx.arg("report", json!(r.display().to_string()));
                    let text = std::fs::read_to_string(r)
                        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", r.display())))?;
                    let input = read_moves(&text).map_err(Failure::usage)?;
                    let moves = input
                        .segments
                        .iter()
                        .map(|s| {
                            s.twist()
                                .map(|t| SimpleMove::new(t, s.start.pose()))
                                .ok_or_else(|| Failure::usage("report has a non-finite move"))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    (input.from.pose(), moves)
                }
                (None, Some(label)) => {
                    cx.arg("from", json!(label));
                    (cx.named(label)?.0, Vec::new())
                }
                (None, None) => (
                    cx.file.poses.first().map_or(Pose2::identity(), |p| p.pose()),
                    Vec::new(),
                ),
            };
            let svg = render_svg(&cx.file.scene, &start, &moves);
            write_file(path, svg.as_bytes())?;
            let result = ReportResult::Render {
                out: path.display().to_string(),
                panels: moves.len() + 1,
            };
            (common, cx.report(None, result), EXIT_OK)
        }
        Command::Classify { common, ell0 } => {
            let mut cx = Context::load("classify", common)?;
            cx.arg("ell0", json!(ell0));
            let grid = cx.grid(common);
            let extra: Vec<Pose2> = cx.file.poses.iter().map(|p| p.pose()).collect();
            let c = Planner::new(&cx.file.scene, &grid)?.classify(*ell0, &extra)?;
            let result = ReportResult::Classify(ClassificationEntry::new(&c, *ell0));
            (common, cx.report(Some(grid), result), EXIT_OK)
        }
    };

    let mut report = report;
    let elapsed = started.elapsed().as_secs_f64() * 1e3;
    let text = if common.json {
        if common.timing {
            report.wall_time_ms = Some(elapsed);
        }
        report.to_json()
    } else {
        report.wall_time_ms = Some(elapsed);
        report.to_text()
    };
    match (&common.out, command) {
        (Some(path), c) if !matches!(c, Command::Render { .. }) => {
            write_file(path, text.as_bytes())?;
            Ok((code, None))
        }
        _ => Ok((code, Some(text))),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, bytes).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn thread_pool() -> Result<rayon::ThreadPool, Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::usage(format!("{THREADS_ENV} must be a positive integer, got \"{v}\"")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| Failure::usage(e.to_string()))
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let shown = e.to_string();
            return if e.use_stderr() {
                let _ = err.write_all(shown.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(shown.as_bytes());
                EXIT_OK
            };
        }
    };
    let result = thread_pool().and_then(|pool| pool.install(|| execute(&cli.command)));
    match result {
        Ok((code, text)) => {
            if let Some(text) = text {
                if let Err(e) = out.write_all(text.as_bytes()) {
                    let _ = writeln!(err, "error: cannot write output: {e}");
                    return EXIT_USAGE;
                }
            }
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
