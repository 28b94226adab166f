//! Command-line front end: matching instances, the tree reduction, drawing
//! synthesis, verification, extraction, exact solving, and SVG rendering.
//!
//! Machine output (JSON, SVG) goes to standard output unless `--out` is
//! given; human-readable notes go to standard error. Exit codes: 0 for a
//! positive or successful result, 1 for a well-formed negative answer
//! (no matching, infeasible grid, invalid drawing), 2 for usage, format,
//! or capacity errors.

mod schemas;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use sutd_core::json as files;
use sutd_core::{
    brute_force_solve_with_limit, build_tree, check_solution, extract_matching,
    generate_yes_instance, min_area, render_svg, solve_exact, strengthen, synthesize_drawing,
    verify_drawing, EdgeMode, Error, ExtractionReport, ReductionArtifacts, SolverOptions,
    SvgStyle, BRUTE_FORCE_K_LIMIT,
};

#[derive(Parser)]
#[command(
    name = "sutd",
    version,
    about = "Numerical matching instances and strictly-upward tree drawings"
)]
struct Cli {
    /// Print the JSON Schema for a file format and exit
    #[arg(long, value_name = "NAME", value_enum)]
    schema: Option<SchemaName>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemaName {
    Instance,
    Solution,
    Tree,
    Drawing,
    Strengthen,
}

#[derive(Subcommand)]
enum Command {
    /// Work with numerical matching instances
    #[command(subcommand)]
    N3dm(N3dmCmd),
    /// Build the reduction tree for an instance
    Reduce(ReduceArgs),
    /// Lay out the reduction tree on its exact grid from a known matching
    Synth(SynthArgs),
    /// Check a drawing against the grid drawing rules
    Verify(VerifyArgs),
    /// Read a matching back out of a drawing of the reduction tree
    Extract(ExtractArgs),
    /// Search for a strictly-upward straight-line drawing on a given grid
    Solve(SolveArgs),
    /// Search for a feasible grid of minimum area
    MinArea(MinAreaArgs),
    /// Render a drawing as SVG
    Render(RenderArgs),
}

#[derive(Subcommand)]
enum N3dmCmd {
    /// Find a matching by exhaustive search
    Solve(N3dmSolveArgs),
    /// Check a proposed matching
    Check(N3dmCheckArgs),
    /// Generate a random solvable instance
    Gen(N3dmGenArgs),
    /// Rescale an instance so matchings survive the tree reduction
    Strengthen(N3dmStrengthenArgs),
}

#[derive(Args)]
struct N3dmSolveArgs {
    /// Instance JSON file
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Write the solution here instead of standard output
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Lift the k guard on the factorial search
    #[arg(long)]
    guard_override: bool,
}

#[derive(Args)]
struct N3dmCheckArgs {
    /// Instance JSON file
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Solution JSON file
    #[arg(long, value_name = "FILE")]
    solution: PathBuf,
}

#[derive(Args)]
struct N3dmGenArgs {
    /// Number of triples
    #[arg(long)]
    k: usize,
    /// RNG seed; reruns with the same seed reproduce the instance
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Upper bound on the generated values. Keep this small if the instance
    /// is headed for strengthen + reduce: the tree grows like the fourth
    /// power of the value range
    #[arg(long, default_value_t = 7)]
    bound: u64,
    /// Write the instance here instead of standard output
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Also record the planted matching
    #[arg(long, value_name = "FILE")]
    solution_out: Option<PathBuf>,
}

#[derive(Args)]
struct N3dmStrengthenArgs {
    /// Instance JSON file
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Write the strengthened instance here instead of standard output
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Also record the full before/after transformation
    #[arg(long, value_name = "FILE")]
    record: Option<PathBuf>,
}

#[derive(Args)]
struct ReduceArgs {
    /// Instance JSON file
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Write the tree here instead of standard output
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    /// Instance JSON file
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Matching JSON file
    #[arg(long, value_name = "FILE")]
    solution: PathBuf,
    /// Write the drawing here instead of standard output
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Straight,
    Poly,
}

#[derive(Args)]
struct VerifyArgs {
    /// Tree JSON file
    #[arg(long, value_name = "FILE")]
    tree: PathBuf,
    /// Drawing JSON file
    #[arg(long, value_name = "FILE")]
    drawing: PathBuf,
    /// Edge interpretation: straight rejects bends, poly accepts them
    #[arg(long, value_enum, default_value = "poly")]
    mode: ModeArg,
    /// Write the report here instead of standard output
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExtractArgs {
    /// Reduction tree JSON file (role labels required)
    #[arg(long, value_name = "FILE")]
    tree: PathBuf,
    /// Drawing JSON file
    #[arg(long, value_name = "FILE")]
    drawing: PathBuf,
    /// Write the solution here; the report then goes to standard output
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Tree JSON file
    #[arg(long, value_name = "FILE")]
    tree: PathBuf,
    /// Grid width
    #[arg(long)]
    width: i64,
    /// Grid height
    #[arg(long)]
    height: i64,
    /// Only straight-line search is supported
    #[arg(long, value_enum, default_value = "straight")]
    mode: ModeArg,
    /// Lift the vertex and cell guards on the exponential search
    #[arg(long)]
    guard_override: bool,
    /// Keep isomorphic sibling subtrees unordered (slower, same answers)
    #[arg(long)]
    no_symmetry_break: bool,
    /// Write the drawing here instead of standard output
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MinAreaArgs {
    /// Tree JSON file
    #[arg(long, value_name = "FILE")]
    tree: PathBuf,
    /// Largest width to consider
    #[arg(long)]
    max_width: i64,
    /// Largest height to consider
    #[arg(long)]
    max_height: i64,
    /// Lift the vertex and cell guards on the exponential search
    #[arg(long)]
    guard_override: bool,
    /// Keep isomorphic sibling subtrees unordered (slower, same answers)
    #[arg(long)]
    no_symmetry_break: bool,
    /// Write the drawing here instead of standard output
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    /// Tree JSON file
    #[arg(long, value_name = "FILE")]
    tree: PathBuf,
    /// Drawing JSON file
    #[arg(long, value_name = "FILE")]
    drawing: PathBuf,
    /// Pixels per grid step
    #[arg(long, default_value_t = 24)]
    unit: i64,
    /// Vertex circle radius in pixels
    #[arg(long, default_value_t = 6)]
    radius: i64,
    /// Skip verification and draw no violation overlay
    #[arg(long)]
    no_violations: bool,
    /// Write the SVG here instead of standard output
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> sutd_core::Result<u8> {
    if let Some(name) = cli.schema {
        let text = match name {
            SchemaName::Instance => schemas::INSTANCE,
            SchemaName::Solution => schemas::SOLUTION,
            SchemaName::Tree => schemas::TREE,
            SchemaName::Drawing => schemas::DRAWING,
            SchemaName::Strengthen => schemas::STRENGTHEN,
        };
        print!("{text}");
        return Ok(0);
    }
    let Some(command) = cli.command else {
        return Err(Error::InvalidInput(
            "a subcommand is required; see --help".into(),
        ));
    };
    match command {
        Command::N3dm(cmd) => run_n3dm(cmd),
        Command::Reduce(args) => run_reduce(args),
        Command::Synth(args) => run_synth(args),
        Command::Verify(args) => run_verify(args),
        Command::Extract(args) => run_extract(args),
        Command::Solve(args) => run_solve(args),
        Command::MinArea(args) => run_min_area(args),
        Command::Render(args) => run_render(args),
    }
}

/// Writes `text` to `out` when given, otherwise to standard output.
fn emit(out: Option<&Path>, text: &str) -> sutd_core::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn infeasible_marker(out: Option<&Path>) -> sutd_core::Result<()> {
    let mut text = serde_json::to_string_pretty(&json!({ "infeasible": true }))?;
    text.push('\n');
    emit(out, &text)
}

fn run_n3dm(cmd: N3dmCmd) -> sutd_core::Result<u8> {
    match cmd {
        N3dmCmd::Solve(args) => {
            let inst = files::read_instance(&args.input)?;
            let limit = if args.guard_override {
                usize::MAX
            } else {
                BRUTE_FORCE_K_LIMIT
            };
            match brute_force_solve_with_limit(&inst, limit)? {
                Some(sol) => {
                    emit(args.out.as_deref(), &files::solution_to_string(&sol))?;
                    eprintln!("matching found for k = {}", inst.k());
                    Ok(0)
                }
                None => {
                    infeasible_marker(args.out.as_deref())?;
                    eprintln!("no matching exists for this instance");
                    Ok(1)
                }
            }
        }
        N3dmCmd::Check(args) => {
            let inst = files::read_instance(&args.input)?;
            let sol = files::read_solution(&args.solution)?;
            let valid = check_solution(&inst, &sol)?;
            let mut text = serde_json::to_string_pretty(&json!({ "valid": valid }))?;
            text.push('\n');
            print!("{text}");
            if valid {
                eprintln!("solution matches the target on every triple");
                Ok(0)
            } else {
                eprintln!("solution does not match the target");
                Ok(1)
            }
        }
        N3dmCmd::Gen(args) => {
            let (inst, sol) = generate_yes_instance(args.k, args.seed, args.bound)?;
            if let Some(path) = &args.solution_out {
                files::write_solution(path, &sol)?;
            }
            emit(args.out.as_deref(), &files::instance_to_string(&inst))?;
            eprintln!(
                "generated a solvable instance with k = {}, B = {}",
                inst.k(),
                inst.target
            );
            Ok(0)
        }
        N3dmCmd::Strengthen(args) => {
            let inst = files::read_instance(&args.input)?;
            let rec = strengthen(&inst)?;
            if let Some(path) = &args.record {
                std::fs::write(path, files::strengthen_record_to_string(&rec))?;
            }
            emit(
                args.out.as_deref(),
                &files::instance_to_string(&rec.strengthened),
            )?;
            eprintln!(
                "strengthened with c = {}, mu = {}; target is now {}",
                rec.c, rec.mu, rec.strengthened.target
            );
            Ok(0)
        }
    }
}

fn run_reduce(args: ReduceArgs) -> sutd_core::Result<u8> {
    let inst = files::read_instance(&args.input)?;
    let art = build_tree(&inst)?;
    emit(args.out.as_deref(), &files::tree_to_string(art.tree()))?;
    eprintln!(
        "reduction tree has {} vertices for a {} x {} grid",
        art.tree().n(),
        art.width(),
        art.height()
    );
    Ok(0)
}

fn run_synth(args: SynthArgs) -> sutd_core::Result<u8> {
    let inst = files::read_instance(&args.input)?;
    let sol = files::read_solution(&args.solution)?;
    let art = build_tree(&inst)?;
    match synthesize_drawing(&art, &sol) {
        Ok(d) => {
            emit(args.out.as_deref(), &files::drawing_to_string(&d))?;
            eprintln!("drawing fills the {} x {} grid", d.w(), d.h());
            Ok(0)
        }
        Err(Error::SynthesisInfeasible { index, reason }) => {
            infeasible_marker(args.out.as_deref())?;
            eprintln!("no layout for this matching: triple {index}: {reason}");
            Ok(1)
        }
        Err(e) => Err(e),
    }
}

fn run_verify(args: VerifyArgs) -> sutd_core::Result<u8> {
    let tree = files::read_tree(&args.tree)?;
    let d = files::read_drawing(&args.drawing)?;
    let mode = match args.mode {
        ModeArg::Straight => EdgeMode::Straight,
        ModeArg::Poly => EdgeMode::Poly,
    };
    let report = verify_drawing(&tree, &d, mode)?;
    emit(args.out.as_deref(), &files::pretty(&report))?;
    if report.ok {
        eprintln!(
            "drawing is valid ({} vertices, {} segments)",
            report.stats.vertices, report.stats.segments
        );
        Ok(0)
    } else {
        for v in &report.violations {
            eprintln!("violation: {v}");
        }
        eprintln!("{} violations", report.violations.len());
        Ok(1)
    }
}

fn extraction_report_text(report: &ExtractionReport) -> String {
    let mut text = String::new();
    for t in &report.triples {
        text.push_str(&format!(
            "triple {}: {} + {} + {} = {} {}\n",
            t.index,
            t.red,
            t.blue,
            t.green,
            t.sum,
            if t.matches_target { "(target met)" } else { "(target missed)" }
        ));
    }
    text.push_str(&format!(
        "{} of {} triples meet the target\n",
        report.triples.iter().filter(|t| t.matches_target).count(),
        report.triples.len()
    ));
    text
}

fn run_extract(args: ExtractArgs) -> sutd_core::Result<u8> {
    let tree = files::read_tree(&args.tree)?;
    let art = ReductionArtifacts::from_labeled_tree(tree)?;
    let d = files::read_drawing(&args.drawing)?;
    match extract_matching(&art, &d) {
        Ok(report) => {
            let report_text = extraction_report_text(&report);
            match &args.out {
                Some(path) => {
                    files::write_solution(path, &report.solution)?;
                    print!("{report_text}");
                }
                None => {
                    print!("{}", files::solution_to_string(&report.solution));
                    eprint!("{report_text}");
                }
            }
            if report.all_match {
                Ok(0)
            } else {
                eprintln!("extracted assignment does not solve the instance");
                Ok(1)
            }
        }
        Err(Error::StructureMismatch { index, reason }) => {
            infeasible_marker(args.out.as_deref())?;
            eprintln!("no matching can be read off this drawing: row {index}: {reason}");
            Ok(1)
        }
        Err(e) => Err(e),
    }
}

fn solver_options(guard_override: bool, no_symmetry_break: bool) -> SolverOptions {
    SolverOptions {
        break_symmetry: !no_symmetry_break,
        guard_override,
    }
}

fn run_solve(args: SolveArgs) -> sutd_core::Result<u8> {
    if matches!(args.mode, ModeArg::Poly) {
        return Err(Error::InvalidInput(
            "the search covers straight-line drawings only; \
             use --mode straight (bend placement is unbounded)"
                .into(),
        ));
    }
    let tree = files::read_tree(&args.tree)?;
    let opts = solver_options(args.guard_override, args.no_symmetry_break);
    match solve_exact(&tree, args.width, args.height, &opts)? {
        Some(d) => {
            emit(args.out.as_deref(), &files::drawing_to_string(&d))?;
            eprintln!("drawing found on the {} x {} grid", args.width, args.height);
            Ok(0)
        }
        None => {
            infeasible_marker(args.out.as_deref())?;
            eprintln!(
                "no strictly-upward drawing fits the {} x {} grid",
                args.width, args.height
            );
            Ok(1)
        }
    }
}

fn run_min_area(args: MinAreaArgs) -> sutd_core::Result<u8> {
    let tree = files::read_tree(&args.tree)?;
    let opts = solver_options(args.guard_override, args.no_symmetry_break);
    match min_area(&tree, args.max_width, args.max_height, &opts)? {
        Some((w, h, d)) => {
            emit(args.out.as_deref(), &files::drawing_to_string(&d))?;
            eprintln!("minimum area {} on a {w} x {h} grid", w * h);
            Ok(0)
        }
        None => {
            infeasible_marker(args.out.as_deref())?;
            eprintln!(
                "no grid up to {} x {} admits a drawing",
                args.max_width, args.max_height
            );
            Ok(1)
        }
    }
}

fn run_render(args: RenderArgs) -> sutd_core::Result<u8> {
    let tree = files::read_tree(&args.tree)?;
    let d = files::read_drawing(&args.drawing)?;
    let style = SvgStyle {
        unit: args.unit,
        radius: args.radius,
        show_violations: !args.no_violations,
    };
    let svg = render_svg(&tree, &d, &style)?;
    emit(args.out.as_deref(), &svg)?;
    eprintln!("rendered {} vertices", d.n());
    Ok(0)
}
