//! Argument handling for the `tetrageo` binary. Everything is returned as
//! strings plus an exit code so the whole surface is testable in-process.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tetra_geodesic::cut_locus::{cut_locus_graph, expanded_cut_locus};
use tetra_geodesic::json::{self, audit_json, cut_locus_json, geodesic_set_json, label_json, plan_json};
use tetra_geodesic::oracle::{self, GeodesicSet};
use tetra_geodesic::planner::{self, continuity_audit, oracle_audit, partition_audit, AuditReport, Cell};
use tetra_geodesic::render::{render_expanded, render_figure, FigureId, FigureParams};
use tetra_geodesic::surface::{parse_point, SurfacePoint, MAX_DEPTH};
use tetra_geodesic::Error;

/// Environment variable that replaces the default seed.
pub const SEED_VAR: &str = "TETRAGEO_SEED";

#[derive(Debug, Parser)]
#[command(name = "tetrageo", version, about = "Geodesics, cut loci and motion planning on the regular tetrahedron")]
struct Cli {
    /// Length slack for counting two paths as equally short.
    #[arg(long, global = true, default_value_t = oracle::DEFAULT_TOL)]
    tol: f64,
    /// Unfolding depth of the oracle.
    #[arg(long, global = true, default_value_t = oracle::DEFAULT_DEPTH)]
    depth: usize,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Geodesic distance.
    Dist { p: String, q: String },
    /// All minimal geodesics.
    Geo { p: String, q: String },
    /// Number of minimal geodesics.
    Mult { p: String, q: String },
    /// The cut-locus tree of a point.
    Cutlocus {
        p: String,
        /// Also draw the expanded cut locus.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// The planner cell of a pair.
    Classify { p: String, q: String },
    /// The planner cell and the chosen path.
    Plan { p: String, q: String },
    Audit {
        kind: AuditKind,
        /// Restrict the continuity audit to one cell.
        #[arg(long)]
        cell: Option<String>,
    },
    /// Write one of the reference drawings.
    Render {
        figure: String,
        #[arg(long, allow_negative_numbers = true)]
        x: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        #[arg(long)]
        svg: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AuditKind {
    Partition,
    Continuity,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn json(value: &Value) -> Self {
        Self { code: 0, stdout: format!("{}\n", json::to_string(value)), stderr: String::new() }
    }

    fn fail(code: i32, message: impl std::fmt::Display) -> Self {
        Self { code, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

/// Run with the default seed taken from the environment.
pub fn run_command<S: AsRef<str>>(argv: &[S]) -> Output {
    let default_seed = match std::env::var(SEED_VAR) {
        Ok(s) => match s.trim().parse() {
            Ok(v) => v,
            Err(_) => return Output::fail(2, format!("{SEED_VAR} is not an unsigned integer: {s}")),
        },
        Err(_) => 0,
    };
    run_with_default_seed(argv, default_seed)
}

/// `argv[0]` is the program name.
pub fn run_with_default_seed<S: AsRef<str>>(argv: &[S], default_seed: u64) -> Output {
    let cli = match Cli::try_parse_from(argv.iter().map(|s| s.as_ref())) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: 2, stdout: String::new(), stderr: text }
            } else {
                Output { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Output::fail(2, format!("--tol must be positive, got {}", cli.tol));
    }
    if !(2..=MAX_DEPTH).contains(&cli.depth) {
        return Output::fail(2, format!("--depth must be between 2 and {MAX_DEPTH}, got {}", cli.depth));
    }
    if cli.samples == 0 {
        return Output::fail(2, "--samples must be at least 1");
    }
    let seed = cli.seed.unwrap_or(default_seed);
    match execute(&cli, seed) {
        Ok(out) => out,
        Err(e @ (Error::ParsePoint(_) | Error::BadSum(_) | Error::NegativeWeight(_) | Error::NonFinite)) => {
            Output::fail(2, e)
        }
        Err(e @ (Error::UnknownFigure(_) | Error::BadParams(_) | Error::BadCell(_))) => Output::fail(2, e),
        Err(e) => Output::fail(1, e),
    }
}

fn points(p: &str, q: &str) -> Result<(SurfacePoint, SurfacePoint), Error> {
    Ok((parse_point(p)?, parse_point(q)?))
}

fn geodesic_set(cli: &Cli, p: &str, q: &str) -> Result<GeodesicSet, Error> {
    let (p, q) = points(p, q)?;
    oracle::min_geodesics(&p, &q, cli.depth, cli.tol)
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), String> {
    std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn audit_output(report: &AuditReport) -> Output {
    let mut out = Output::json(&audit_json(report));
    if !report.passed() {
        out.code = 1;
    }
    out
}

fn execute(cli: &Cli, seed: u64) -> Result<Output, Error> {
    Ok(match &cli.command {
        Command::Dist { p, q } => {
            Output::json(&json::rounded(json!({ "distance": geodesic_set(cli, p, q)?.distance })))
        }
        Command::Mult { p, q } => Output::json(&json!({ "multiplicity": geodesic_set(cli, p, q)?.multiplicity() })),
        Command::Geo { p, q } => Output::json(&geodesic_set_json(&geodesic_set(cli, p, q)?)),
        Command::Cutlocus { p, svg } => {
            let p = parse_point(p)?;
            let graph = cut_locus_graph(&p)?;
            if let Some(path) = svg {
                if let Err(e) =
                    write_file(path, &render_expanded(&expanded_cut_locus(&p), &format!("cut locus of {p}")))
                {
                    return Ok(Output::fail(1, e));
                }
            }
            Output::json(&cut_locus_json(&graph))
        }
        Command::Classify { p, q } => {
            let (p, q) = points(p, q)?;
            Output::json(&label_json(&planner::classify(&p, &q)?))
        }
        Command::Plan { p, q } => {
            let (p, q) = points(p, q)?;
            Output::json(&plan_json(&planner::phi(&p, &q)?))
        }
        Command::Audit { kind: AuditKind::Partition, .. } => audit_output(&partition_audit(cli.samples, seed)),
        Command::Audit { kind: AuditKind::Oracle, .. } => audit_output(&oracle_audit(cli.samples, seed, cli.depth)),
        Command::Audit { kind: AuditKind::Continuity, cell } => {
            let cells = match cell {
                Some(name) => match Cell::from_name(name) {
                    Some(c) => vec![c],
                    None => return Ok(Output::fail(2, format!("unknown cell `{name}`"))),
                },
                None => vec![Cell::E1, Cell::E2, Cell::E3, Cell::E5],
            };
            let mut violations = Vec::new();
            let mut summary = BTreeMap::new();
            for c in cells {
                let r = continuity_audit(c, cli.samples, seed)?;
                violations.extend(r.violations);
                summary.insert(c.to_string(), r.summary);
            }
            let value = json::rounded(json!({
                "audit": "continuity",
                "samples": cli.samples,
                "seed": seed,
                "violations": violations,
                "summary": summary,
            }));
            let mut out = Output::json(&value);
            if !violations_empty(&value) {
                out.code = 1;
            }
            out
        }
        Command::Render { figure, x, alpha, svg } => {
            let fig = FigureId::from_name(figure)?;
            let doc = render_figure(fig, FigureParams { x: *x, alpha: *alpha })?;
            if let Err(e) = write_file(svg, &doc) {
                return Ok(Output::fail(1, e));
            }
            Output::json(&json!({ "figure": fig.name(), "svg": svg.display().to_string() }))
        }
    })
}

fn violations_empty(v: &Value) -> bool {
    v["violations"].as_array().is_some_and(|a| a.is_empty())
}
