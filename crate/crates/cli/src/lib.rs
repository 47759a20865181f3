//! Command-line front end for `vmc-core`: argument definitions, the
//! instance format, and the subcommand implementations. `main.rs` only
//! wires these to the process.

pub mod format;

use std::fs;
use std::io::Write;
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context as _;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use vmc_core::bipedal::{visit_branching, BranchConfig, Edit};
use vmc_core::driver::{solve_compression, solve_vmc, SolveOptions, SolveStats};
use vmc_core::lp::{find_nonzero_vertex, opt_lp, Rational};
use vmc_core::separators::enumerate_important_separators;
use vmc_core::shadow::{cover_family, CoverMode};
use vmc_core::solver::{SolverKind, SolverResult};
use vmc_core::testkit::{brute_force_compression, brute_force_vmc, gen_compression_instance, gen_random_instance};
use vmc_core::VertexSet;

use format::{format_vertex_list, parse_vertex_list, Document};

#[derive(Debug, Parser)]
#[command(name = "vmc", version, about = "Vertex multicut solver")]
pub struct Cli {
    /// Worker threads for the parallel stages; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Det,
    Rand,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LeafSolver {
    Branching,
    Exact,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    /// Budget; overrides the file's `k` line.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value = "det")]
    pub mode: Mode,
    /// Seed for `--mode rand`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Colorings for `--mode rand`; defaults to the amplified count.
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long, value_enum, default_value = "branching")]
    pub solver: LeafSolver,
    #[arg(long)]
    pub json: bool,
    /// Report wall-clock time (makes JSON output run-dependent).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a vertex multicut instance by iterative compression.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        args: SolveArgs,
    },
    /// Solve a compression instance (the file must list `w` vertices).
    Compress {
        file: PathBuf,
        #[command(flatten)]
        args: SolveArgs,
    },
    /// List important separators between two vertex sets.
    Impsep {
        file: PathBuf,
        #[arg(long)]
        source: String,
        #[arg(long)]
        sink: String,
        #[arg(long)]
        k: usize,
    },
    /// Solve the multiway-cut LP for the file's `W`.
    Lp {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the covering family used for shadow removal.
    ShadowCover {
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "det")]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        trials: Option<u64>,
    },
    /// Run the branching search on a compression instance.
    Branch {
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        /// Print the search tree as JSON lines.
        #[arg(long)]
        dump_tree: bool,
    },
    /// Generate a random instance.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        pairs: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Emit a compression instance with this many `W` vertices.
        #[arg(long)]
        w: Option<usize>,
    },
    /// Solve by exhaustive search.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Check a proposed solution.
    Verify {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        witness: String,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Solve every `.vmc` file in a directory and write a CSV summary.
    Bench {
        #[arg(long)]
        suite: PathBuf,
        #[arg(long)]
        csv: PathBuf,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse {
        path: String,
        source: format::ParseError,
    },
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Other(#[from] anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => 2,
            _ => 3,
        }
    }
}

/// Exit status for a completed command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Yes,
    No,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Yes => 0,
            Status::No => 1,
        }
    }

    fn of(result: &SolverResult) -> Self {
        if result.is_yes() {
            Status::Yes
        } else {
            Status::No
        }
    }
}

#[derive(Debug, Serialize)]
pub struct StatsReport {
    pub nodes: u64,
    pub lp_solves: u64,
    pub depth: usize,
    pub wall_ms: Option<u64>,
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub verdict: &'static str,
    /// 1-indexed.
    pub witness: Option<Vec<usize>>,
    pub stats: StatsReport,
}

impl SolveReport {
    fn new(result: &SolverResult, stats: &SolveStats, wall_ms: Option<u64>) -> Self {
        SolveReport {
            verdict: if result.is_yes() { "yes" } else { "no" },
            witness: result
                .witness
                .as_ref()
                .map(|w| w.vertices.iter().map(|v| v + 1).collect()),
            stats: StatsReport {
                nodes: stats.branch.nodes,
                lp_solves: stats.branch.lp_solves,
                depth: stats.branch.max_depth,
                wall_ms,
            },
        }
    }
}

#[derive(Debug, Serialize)]
struct TreeLine {
    id: u64,
    parent: Option<u64>,
    edit: Option<String>,
    measure: Option<String>,
}

pub fn load(path: &Path) -> Result<Document, CliError> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    format::parse(&text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn ratio(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn edit_text(e: &Edit) -> String {
    match *e {
        Edit::Delete(v) => format!("delete {}", v + 1),
        Edit::Torso(v) => format!("torso {}", v + 1),
        Edit::Contract { v, w } => format!("contract {} {}", v + 1, w + 1),
    }
}

fn cover_mode(mode: Mode, seed: u64, trials: Option<u64>) -> CoverMode {
    match mode {
        Mode::Det => CoverMode::Deterministic,
        Mode::Rand => CoverMode::Randomized { seed, trials },
    }
}

fn solve_options(args: &SolveArgs) -> SolveOptions {
    SolveOptions {
        mode: cover_mode(args.mode, args.seed, args.trials),
        solver: match args.solver {
            LeafSolver::Branching => SolverKind::Branching,
            LeafSolver::Exact => SolverKind::Exact,
        },
        ..SolveOptions::default()
    }
}

fn compression_of(doc: &Document, k: Option<usize>) -> Result<vmc_core::CompressionInstance, CliError> {
    if doc.w.is_empty() {
        return Err(CliError::Usage("the instance has no `w` lines".into()));
    }
    doc.compression(k).map_err(|e| CliError::Usage(e.to_string()))
}

fn write_solve(out: &mut dyn Write, args: &SolveArgs, result: &SolverResult, stats: &SolveStats, ms: u64) -> Result<(), CliError> {
    let wall = args.timing.then_some(ms);
    if args.json {
        writeln!(out, "{}", serde_json::to_string(&SolveReport::new(result, stats, wall))?)?;
    } else {
        writeln!(out, "{}", if result.is_yes() { "yes" } else { "no" })?;
        if let Some(w) = &result.witness {
            writeln!(out, "witness {}", format_vertex_list(w.vertices.iter()))?;
        }
        writeln!(
            out,
            "nodes {} lp_solves {} depth {}",
            stats.branch.nodes, stats.branch.lp_solves, stats.branch.max_depth
        )?;
        if let Some(ms) = wall {
            writeln!(out, "wall_ms {ms}")?;
        }
    }
    Ok(())
}

/// Runs one subcommand, writing its output to `out`.
pub fn run(cmd: &Command, out: &mut dyn Write) -> Result<Status, CliError> {
    match cmd {
        Command::Solve { file, args } => {
            let inst = load(file)?.multicut(args.k);
            let start = Instant::now();
            let (result, stats) = solve_vmc(&inst, &solve_options(args)).map_err(|e| CliError::Internal(e.to_string()))?;
            write_solve(out, args, &result, &stats, start.elapsed().as_millis() as u64)?;
            Ok(Status::of(&result))
        }
        Command::Compress { file, args } => {
            let inst = compression_of(&load(file)?, args.k)?;
            let start = Instant::now();
            let (result, stats) =
                solve_compression(&inst, &solve_options(args)).map_err(|e| CliError::Internal(e.to_string()))?;
            write_solve(out, args, &result, &stats, start.elapsed().as_millis() as u64)?;
            Ok(Status::of(&result))
        }
        Command::Impsep { file, source, sink, k } => {
            let doc = load(file)?;
            let s = parse_vertex_list(source, doc.n).map_err(CliError::Usage)?;
            let t = parse_vertex_list(sink, doc.n).map_err(CliError::Usage)?;
            let seps = enumerate_important_separators(
                &doc.graph(),
                &VertexSet::from_iter(doc.n, s),
                &VertexSet::from_iter(doc.n, t),
                *k,
            )
            .map_err(|e| CliError::Usage(e.to_string()))?;
            for sep in &seps {
                writeln!(out, "{}", format_vertex_list(sep.cut.iter()))?;
            }
            Ok(Status::Yes)
        }
        Command::Lp { file, json } => {
            let doc = load(file)?;
            let g = doc.graph();
            let w = doc.w_set();
            let lp_out = match opt_lp(&g, &w) {
                Ok(sol) => {
                    let values: Vec<(usize, String)> = sol.support().map(|v| (v + 1, ratio(sol.value(v)))).collect();
                    let nonzero = find_nonzero_vertex(&g, &w).map(|v| v + 1);
                    (Some(ratio(&sol.objective)), values, nonzero)
                }
                Err(_) => (None, Vec::new(), None),
            };
            let (objective, values, nonzero) = lp_out;
            if *json {
                let v = serde_json::json!({
                    "objective": objective,
                    "values": values.iter().map(|(v, x)| serde_json::json!({"vertex": v, "value": x})).collect::<Vec<_>>(),
                    "nonzero_vertex": nonzero,
                });
                writeln!(out, "{v}")?;
            } else {
                match &objective {
                    Some(o) => writeln!(out, "objective {o}"),
                    None => writeln!(out, "infeasible"),
                }
                ?;
                for (v, x) in &values {
                    writeln!(out, "d {v} {x}")?;
                }
                if let Some(v) = nonzero {
                    writeln!(out, "nonzero {v}")?;
                }
            }
            Ok(if objective.is_some() { Status::Yes } else { Status::No })
        }
        Command::ShadowCover { file, k, mode, seed, trials } => {
            let inst = compression_of(&load(file)?, *k)?;
            let fam = cover_family(&inst, cover_mode(*mode, *seed, *trials));
            writeln!(out, "sets {}", fam.len())?;
            for z in &fam.sets {
                if z.is_empty() {
                    writeln!(out, "z")?;
                } else {
                    writeln!(out, "z {}", format_vertex_list(z.iter()))?;
                }
            }
            Ok(Status::Yes)
        }
        Command::Branch { file, k, dump_tree } => {
            let inst = compression_of(&load(file)?, *k)?;
            let config = BranchConfig {
                record_tree: *dump_tree,
                ..BranchConfig::default()
            };
            let mut emitted = 0u64;
            let (stats, tree) = visit_branching(&inst, &config, &mut |_| {
                emitted += 1;
                ControlFlow::Continue(())
            })
            .map_err(|e| CliError::Internal(e.to_string()))?;
            if *dump_tree {
                for r in &tree {
                    let line = TreeLine {
                        id: r.id,
                        parent: r.parent,
                        edit: r.edit.as_ref().map(edit_text),
                        measure: r.measure.as_ref().map(ratio),
                    };
                    writeln!(out, "{}", serde_json::to_string(&line)?)
                        ?;
                }
            } else {
                writeln!(
                    out,
                    "emitted {emitted} nodes {} pruned {} depth {} lp_solves {}",
                    stats.nodes, stats.pruned, stats.max_depth, stats.lp_solves
                )
                ?;
            }
            Ok(Status::Yes)
        }
        Command::Gen { seed, n, p, pairs, k, w } => {
            if !(0.0..=1.0).contains(p) {
                return Err(CliError::Usage(format!("--p must lie in [0, 1], got {p}")));
            }
            let doc = match w {
                Some(w) => Document::from_compression(&gen_compression_instance(*seed, *n, *p, *pairs, *w, *k)),
                None => Document::from_multicut(&gen_random_instance(*seed, *n, *p, *pairs, *k)),
            };
            write!(out, "{}", format::serialize(&doc))?;
            Ok(Status::Yes)
        }
        Command::Oracle { file, k } => {
            let doc = load(file)?;
            let result = if doc.w.is_empty() {
                brute_force_vmc(&doc.multicut(*k))
            } else {
                brute_force_compression(&compression_of(&doc, *k)?).result
            };
            writeln!(out, "{}", if result.is_yes() { "yes" } else { "no" })?;
            if let Some(w) = &result.witness {
                writeln!(out, "witness {}", format_vertex_list(w.vertices.iter()))?;
            }
            Ok(Status::of(&result))
        }
        Command::Verify { file, witness, k } => {
            let doc = load(file)?;
            let x = VertexSet::from_iter(doc.n, parse_vertex_list(witness, doc.n).map_err(CliError::Usage)?);
            let ok = if doc.w.is_empty() {
                doc.multicut(*k).is_solution(&x)
            } else {
                compression_of(&doc, *k)?.is_solution(&x)
            };
            writeln!(out, "{}", if ok { "valid" } else { "invalid" })?;
            Ok(if ok { Status::Yes } else { Status::No })
        }
        Command::Bench { suite, csv } => bench(suite, csv, out),
    }
}

#[derive(Debug, Serialize)]
struct BenchRow {
    instance: String,
    n: usize,
    m: usize,
    k: usize,
    verdict: &'static str,
    nodes: u64,
    lp_solves: u64,
    wall_ms: u64,
}

fn bench(suite: &Path, csv_path: &Path, out: &mut dyn Write) -> Result<Status, CliError> {
    let mut files: Vec<PathBuf> = fs::read_dir(suite)
        .with_context(|| format!("reading {}", suite.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "vmc"))
        .collect();
    files.sort();
    let mut writer = csv::Writer::from_path(csv_path).with_context(|| format!("creating {}", csv_path.display()))?;
    for path in &files {
        let doc = load(path)?;
        let inst = doc.multicut(None);
        let start = Instant::now();
        let (result, stats) =
            solve_vmc(&inst, &SolveOptions::default()).map_err(|e| CliError::Internal(e.to_string()))?;
        let row = BenchRow {
            instance: path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
            n: doc.n,
            m: doc.edges.len(),
            k: inst.k(),
            verdict: if result.is_yes() { "yes" } else { "no" },
            nodes: stats.branch.nodes,
            lp_solves: stats.branch.lp_solves,
            wall_ms: start.elapsed().as_millis() as u64,
        };
        writer.serialize(&row).context("writing CSV")?;
    }
    writer.flush().context("writing CSV")?;
    writeln!(out, "{} instances", files.len())?;
    Ok(Status::Yes)
}
