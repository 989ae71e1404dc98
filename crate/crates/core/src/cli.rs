//! Command-line front end. Every subcommand prints a short human-readable
//! result on stdout and can additionally write JSON and DOT artifacts.
//!
//! Exit codes: 0 success, 1 domain or parameter error, 2 budget exceeded,
//! 3 parse error. Failures print a JSON object on stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::bfs;
use crate::classify::{classify, Limits};
use crate::cover::{build_cover_with_budget, cover_certificate, CoverCertificate, DEFAULT_NODE_BUDGET};
use crate::error::{Error, Result};
use crate::fold::{stiff_reduce, FoldPolicy};
use crate::gluing::{
    count_extensions_with_budget, glue_rect_with_budget, LBoundary, RectPattern, DEFAULT_FREE_CELLS,
};
use crate::graph::{fixture_from_spec, parse_graph, Graph, Vertex};
use crate::sofic::{minimal_gluing_distance_with, witness_json, SoficLimits};
use crate::walk::{build_walk_graph_with_budget, growth_probe_with_budget, DEFAULT_WALK_BUDGET};

#[derive(Parser, Debug)]
#[command(
    name = "homshift",
    version,
    about = "Mixing properties of two-dimensional hom-shifts"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Edge-list file, one `u v` pair per line.
    #[arg(short = 'g', long, global = true, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Built-in graph such as `cycle:5`, `complete:4` or `hard_square`.
    #[arg(long, global = true, value_name = "SPEC")]
    fixture: Option<String>,
    /// Also write the result as JSON.
    #[arg(long, global = true, value_name = "FILE")]
    json: Option<PathBuf>,
    /// Also write a DOT rendering.
    #[arg(long, global = true, value_name = "FILE")]
    dot: Option<PathBuf>,
    /// Size budget of the main construction (walk-graph vertices, cover
    /// nodes or free cells, depending on the command).
    #[arg(long, global = true, value_name = "N")]
    budget: Option<u64>,
    /// Seed for randomized choices; without it choices are lexicographic.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Largest window radius for searches over `n`.
    #[arg(long, global = true, value_name = "N")]
    max_n: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the full decision ladder and print the report.
    Classify,
    /// Fold down to a stiff graph.
    Fold,
    /// Decide whether the universal cover is finite.
    Cover {
        /// Root vertex of the drawn cover (defaults to the first vertex).
        #[arg(long)]
        root: Option<String>,
        /// Depth cap of the drawn cover.
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Diameter of the walk graph on windows of radius n.
    WalkDiam {
        #[arg(short = 'n', default_value_t = 1)]
        n: usize,
    },
    /// Walk-graph diameters for n = 0..=max-n as CSV.
    Growth,
    /// Smallest even block-gluing distance up to 2 * max-n.
    GluingDistance,
    /// Glue two rectangular patterns at a given separation.
    Glue {
        /// Lower pattern: a JSON grid of vertex names (rows from the
        /// bottom), given inline or as a file path.
        #[arg(long)]
        a: String,
        /// Upper pattern, in the same format.
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 2)]
        separation: usize,
    },
    /// Count extensions of an L-shaped boundary to the full square.
    Extensions {
        #[arg(short = 'n')]
        n: usize,
        /// Comma-separated names on (0,0), (1,0), ..., (n,0).
        #[arg(long)]
        bottom: String,
        /// Comma-separated names on (n,0), (n,1), ..., (n,n).
        #[arg(long)]
        right: String,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let report = json!({
                "error": { "kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code() }
            });
            let _ = writeln!(err, "{report}");
            e.exit_code()
        }
    }
}

fn load_graph(global: &Global) -> Result<Graph> {
    match (&global.graph, &global.fixture) {
        (Some(path), None) => parse_graph(&std::fs::read_to_string(path)?),
        (None, Some(spec)) => fixture_from_spec(spec),
        _ => Err(Error::Parameter(
            "give exactly one of --graph and --fixture".into(),
        )),
    }
}

fn write_artifact(path: &Option<PathBuf>, contents: &str) -> Result<()> {
    if let Some(path) = path {
        std::fs::write(path, contents)?;
    }
    Ok(())
}

fn write_json(path: &Option<PathBuf>, value: &serde_json::Value) -> Result<()> {
    write_artifact(path, &(serde_json::to_string_pretty(value)? + "\n"))
}

fn vertex(g: &Graph, name: &str) -> Result<Vertex> {
    g.vertex_by_name(name.trim())
        .ok_or_else(|| Error::Parameter(format!("unknown vertex {name:?}")))
}

fn read_pattern(g: &Graph, arg: &str) -> Result<RectPattern> {
    if arg.trim_start().starts_with('[') {
        RectPattern::from_json(g, arg)
    } else {
        RectPattern::from_json(g, &std::fs::read_to_string(Path::new(arg))?)
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let global = &cli.global;
    let g = load_graph(global)?;
    let walk_budget = global.budget.map_or(DEFAULT_WALK_BUDGET, u128::from);
    match &cli.command {
        Command::Classify => {
            let mut limits = Limits {
                walk_budget,
                ..Limits::default()
            };
            if let Some(n) = global.max_n {
                limits.max_n = n;
            }
            let report = classify(&g, &limits)?;
            let text = report.to_json_pretty() + "\n";
            out.write_all(text.as_bytes())?;
            write_artifact(&global.json, &text)?;
            write_artifact(&global.dot, &g.to_dot())?;
        }
        Command::Fold => {
            let policy = global.seed.map_or(FoldPolicy::Lexicographic, FoldPolicy::Random);
            let seq = stiff_reduce(&g, policy);
            for &(v, w) in &seq.steps {
                writeln!(out, "fold {} -> {}", g.name(v), g.name(w))?;
            }
            writeln!(
                out,
                "stiff: {} vertices, shape {:?}",
                seq.survivors.len(),
                seq.shape()
            )?;
            write_json(&global.json, &seq.to_json(&g))?;
            write_artifact(&global.dot, &seq.terminal.to_dot())?;
        }
        Command::Cover { root, depth } => {
            let certificate = cover_certificate(&g)?;
            let value = match &certificate {
                CoverCertificate::Finite {
                    reachable_arcs,
                    longest_walk,
                } => {
                    writeln!(out, "finite (longest non-backtracking walk {longest_walk})")?;
                    json!({ "cover": "finite", "reachable_arcs": reachable_arcs, "longest_walk": longest_walk })
                }
                CoverCertificate::Infinite { .. } => {
                    let cycle = certificate.cycle_names(&g);
                    let arcs: Vec<String> = cycle.iter().map(|[u, v]| format!("{u}->{v}")).collect();
                    writeln!(out, "infinite (arc cycle {})", arcs.join(" "))?;
                    json!({ "cover": "infinite", "cycle": cycle })
                }
            };
            write_json(&global.json, &value)?;
            if global.dot.is_some() {
                let r = root.as_deref().map_or(Ok(0), |name| vertex(&g, name))?;
                let budget = global.budget.map_or(DEFAULT_NODE_BUDGET, |b| b as usize);
                let tree = build_cover_with_budget(&g, r, *depth, budget)?;
                write_artifact(&global.dot, &tree.to_dot(&g))?;
            }
        }
        Command::WalkDiam { n } => {
            let wg = build_walk_graph_with_budget(&g, *n, walk_budget)?;
            let diameter = wg.diameter();
            writeln!(out, "{diameter}")?;
            write_json(
                &global.json,
                &json!({
                    "n": n,
                    "vertices": wg.vertex_count(),
                    "edges": wg.edge_count(),
                    "diameter": diameter,
                    "connected": bfs::is_connected(&wg),
                    "bipartite": bfs::is_bipartite(&wg),
                }),
            )?;
            if global.dot.is_some() {
                write_artifact(&global.dot, &wg.to_dot()?)?;
            }
        }
        Command::Growth => {
            let probe = growth_probe_with_budget(&g, global.max_n.unwrap_or(3), walk_budget)?;
            out.write_all(probe.to_csv()?.as_bytes())?;
            write_json(&global.json, &serde_json::to_value(&probe)?)?;
        }
        Command::GluingDistance => {
            let limits = SoficLimits {
                walk_budget,
                ..SoficLimits::default()
            };
            let result = minimal_gluing_distance_with(&g, global.max_n.unwrap_or(2), limits)?;
            match result.distance {
                Some(d) => writeln!(out, "{d}")?,
                None => writeln!(out, "none up to {}", 2 * result.n_cap)?,
            }
            let checks: Vec<_> = result
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "n": c.n,
                        "glues": c.glues,
                        "witness": c.witness.as_ref().map(|w| witness_json(&g, w)),
                    })
                })
                .collect();
            write_json(
                &global.json,
                &json!({ "distance": result.distance, "n_cap": result.n_cap, "checks": checks }),
            )?;
        }
        Command::Glue { a, b, separation } => {
            let (a, b) = (read_pattern(&g, a)?, read_pattern(&g, b)?);
            match glue_rect_with_budget(&g, &a, &b, *separation, walk_budget)? {
                Some(glued) => {
                    writeln!(
                        out,
                        "phase {} ({} steps, period {})",
                        glued.phase.as_str(),
                        glued.steps,
                        glued.period
                    )?;
                    out.write_all(glued.strip.to_text(&g).as_bytes())?;
                    write_json(
                        &global.json,
                        &json!({
                            "found": true,
                            "phase": glued.phase,
                            "steps": glued.steps,
                            "period": glued.period,
                            "b_origin": glued.b_origin,
                            "strip": glued.strip.to_names(&g),
                        }),
                    )?;
                }
                None => {
                    writeln!(out, "not found")?;
                    write_json(&global.json, &json!({ "found": false }))?;
                }
            }
        }
        Command::Extensions { n, bottom, right } => {
            let parse = |s: &str| s.split(',').map(|v| vertex(&g, v)).collect::<Result<Vec<_>>>();
            let boundary = LBoundary {
                bottom: parse(bottom)?,
                right: parse(right)?,
            };
            let max_free = global.budget.map_or(DEFAULT_FREE_CELLS, |b| b as usize);
            let count = count_extensions_with_budget(&g, &boundary, *n, max_free)?;
            writeln!(out, "{count}")?;
            write_json(&global.json, &json!({ "n": n, "extensions": count.to_string() }))?;
        }
    }
    Ok(())
}
