//! Command-line surface over the library: verification, strictness, search,
//! classification, system enumeration, construction, tours, embeddings, and
//! golden-file reproduction of the committed results.
//!
//! Exit codes: 0 success (or "exists"), 1 negative mathematical answer
//! (verification failure, nothing found, golden mismatch), 2 usage or input
//! error, 3 budget exhausted.

use clap::{Parser, Subcommand, ValueEnum};
use heffter::construct::{assemble_wh5_stage, WH5Stage};
use heffter::corpus;
use heffter::embed::{
    rotation_and_signature, trace_all_faces, EmbedError, EmbeddingReport, LineOrdering,
    RotationSystem,
};
use heffter::format::{emit_json, emit_text, parse_auto, parse_text};
use heffter::search::{
    classify, search_arrays, ClassifyRow, ExistenceAnswer, SearchBudget, SearchError, SearchGoal,
    SearchMode, SearchSpec,
};
use heffter::systems::enumerate_heffter_systems;
use heffter::tour::{is_solution, nonorientable_certificate, solve_tour, tour_list,
    tour_to_embedding, Orientations};
use heffter::transforms::{strictness_check, Strictness};
use heffter::{ArrayContext, VerifyMode, WeakArray};
use serde_json::json;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "heffter",
    version,
    about = "Weak Heffter arrays: verify, search, construct, tour, and embed"
)]
struct Cli {
    /// Report format for structured output
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Abort searches after this many nodes (exit code 3)
    #[arg(long, global = true, value_name = "N")]
    budget_nodes: Option<u64>,
    /// Abort searches after this many seconds (exit code 3)
    #[arg(long, global = true, value_name = "S")]
    budget_seconds: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Heffter conditions of an array file
    Verify {
        /// Array file, text or JSON
        file: PathBuf,
        /// Which conditions to check
        #[arg(long, value_enum, default_value_t = Kind::Weak)]
        mode: Kind,
        /// Additionally require zero line sums over the integers
        #[arg(long)]
        integer: bool,
    },
    /// Decide whether a weak array is strictly weak
    Strictness {
        /// Array file, text or JSON
        file: PathBuf,
    },
    /// Exhaustive search for arrays with the given parameters
    Search {
        /// Rows
        #[arg(long)]
        m: usize,
        /// Columns
        #[arg(long)]
        n: usize,
        /// Filled cells per row
        #[arg(long)]
        h: usize,
        /// Filled cells per column
        #[arg(long)]
        k: usize,
        /// Order of the subgroup the entries avoid (1 = plain arrays)
        #[arg(long)]
        t: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Weak)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = GoalArg::Exists)]
        goal: GoalArg,
        /// Prescribed split cells, e.g. "1,1;2,1;9,1"
        #[arg(long)]
        omega: Option<String>,
        /// Reverse the value branching order (a complete search must agree)
        #[arg(long)]
        reverse: bool,
    },
    /// Classical / strictly-weak existence for every admissible subgroup order
    Classify {
        /// Side of the square array
        #[arg(long)]
        n: usize,
        /// Filled cells per line
        #[arg(long)]
        k: usize,
    },
    /// Enumerate Heffter systems D_t(v;k)
    Systems {
        /// Modulus
        #[arg(long)]
        v: u32,
        /// Order of the avoided subgroup
        #[arg(long)]
        t: u32,
        /// Block size
        #[arg(long)]
        k: usize,
    },
    /// Emit a member of a constructed array family
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Walk the two-copy tour of an array, or search orientations that close it
    Tour {
        /// Array file, text or JSON
        file: PathBuf,
        /// Orientations "c1,..,cn/r1,..,rm" with entries 1 or -1
        #[arg(long, conflicts_with = "solve", allow_hyphen_values = true)]
        orient: Option<String>,
        /// Search the 2^(m+n) orientation pairs
        #[arg(long, value_enum)]
        solve: Option<SolveArg>,
        /// Also print the non-orientability certificate cell
        #[arg(long, requires = "orient")]
        certify: bool,
    },
    /// Build the embedding induced by orientations and trace its faces
    Embed {
        /// Array file, text or JSON
        file: PathBuf,
        /// Orientations "c1,..,cn/r1,..,rm" with entries 1 or -1
        #[arg(long, allow_hyphen_values = true)]
        orient: String,
        /// Report format; overrides --format
        #[arg(long, value_enum)]
        report: Option<Format>,
    },
    /// Re-run a committed result and diff it against its golden file
    Repro {
        #[arg(value_enum)]
        target: Target,
        /// Rewrite the golden file instead of diffing (maintainer use)
        #[arg(long, hide = true)]
        write_golden: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// Weak conditions: split cells allowed
    Weak,
    /// Classical conditions: no split cells
    Classical,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Classical,
    Weak,
    StrictlyWeak,
}

impl From<ModeArg> for SearchMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Classical => SearchMode::Classical,
            ModeArg::Weak => SearchMode::Weak,
            ModeArg::StrictlyWeak => SearchMode::StrictlyWeak,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GoalArg {
    Exists,
    Count,
    Enumerate,
}

impl From<GoalArg> for SearchGoal {
    fn from(goal: GoalArg) -> Self {
        match goal {
            GoalArg::Exists => SearchGoal::Exists,
            GoalArg::Count => SearchGoal::Count,
            GoalArg::Enumerate => SearchGoal::Enumerate,
        }
    }
}

#[derive(Subcommand)]
enum Family {
    /// Strictly weak integer WH_5(n;5) for n ≡ 0 (mod 4), n ≥ 12
    Wh5 {
        /// Side of the square array
        #[arg(long)]
        n: usize,
        /// Stop at an assembly checkpoint instead of the finished array
        #[arg(long, value_enum, default_value_t = StageArg::Final)]
        stage: StageArg,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StageArg {
    Base,
    Lifted,
    Blocks,
    Final,
}

impl From<StageArg> for WH5Stage {
    fn from(stage: StageArg) -> Self {
        match stage {
            StageArg::Base => WH5Stage::Base,
            StageArg::Lifted => WH5Stage::Lifted,
            StageArg::Blocks => WH5Stage::Blocks,
            StageArg::Final => WH5Stage::Final,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveArg {
    All,
    First,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    #[value(name = "t33")]
    T33,
    #[value(name = "t43")]
    T43,
    #[value(name = "n34")]
    N34,
    #[value(name = "systems-counts")]
    SystemsCounts,
    #[value(name = "wh5-12")]
    Wh512,
    #[value(name = "tour-3x4")]
    Tour3x4,
    #[value(name = "embed-3x4")]
    Embed3x4,
    #[value(name = "k55-family")]
    K55Family,
}

impl Target {
    fn golden_file(self) -> &'static str {
        match self {
            Target::T33 => "t33.json",
            Target::T43 => "t43.json",
            Target::N34 => "n34.json",
            Target::SystemsCounts => "systems-counts.json",
            Target::Wh512 => "wh5-12.txt",
            Target::Tour3x4 => "tour-3x4.txt",
            Target::Embed3x4 => "embed-3x4.json",
            Target::K55Family => "k55-family.json",
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

fn usage(err: impl std::fmt::Display) -> Failure {
    fail(EXIT_USAGE, err.to_string())
}

fn main() -> ExitCode {
    // Restore default SIGPIPE handling so a truncated pipe (`heffter ... |
    // head`) ends the process quietly instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Verify { file, mode, integer } => cmd_verify(cli, file, *mode, *integer),
        Command::Strictness { file } => cmd_strictness(cli, file),
        Command::Search { m, n, h, k, t, mode, goal, omega, reverse } => {
            cmd_search(cli, *m, *n, *h, *k, *t, *mode, *goal, omega.as_deref(), *reverse)
        }
        Command::Classify { n, k } => cmd_classify(cli, *n, *k),
        Command::Systems { v, t, k } => cmd_systems(cli, *v, *t, *k),
        Command::Construct { family } => cmd_construct(cli, family),
        Command::Tour { file, orient, solve, certify } => {
            cmd_tour(cli, file, orient.as_deref(), *solve, *certify)
        }
        Command::Embed { file, orient, report } => cmd_embed(cli, file, orient, *report),
        Command::Repro { target, write_golden } => cmd_repro(cli, *target, *write_golden),
    }
}

fn budget_of(cli: &Cli) -> SearchBudget {
    SearchBudget { nodes: cli.budget_nodes, seconds: cli.budget_seconds }
}

fn load_array(path: &Path) -> Result<WeakArray, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| fail(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
    parse_auto(&text).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn print_array(array: &WeakArray, format: Format) {
    match format {
        Format::Text => print!("{}", emit_text(array)),
        Format::Json => println!("{}", emit_json(array)),
    }
}

/// Parses "c1,..,cn/r1,..,rm"; each side accepts 1, +1, -1, + and -, or a
/// bare sign string like "+--+".
fn parse_orient(raw: &str) -> Result<(Vec<i8>, Vec<i8>), Failure> {
    let (cols, rows) = raw
        .split_once('/')
        .ok_or_else(|| fail(EXIT_USAGE, "--orient wants <column signs>/<row signs>"))?;
    Ok((parse_signs(cols)?, parse_signs(rows)?))
}

fn parse_signs(part: &str) -> Result<Vec<i8>, Failure> {
    let part = part.trim();
    if !part.is_empty() && !part.contains(',') && part.chars().all(|c| c == '+' || c == '-') {
        return Ok(part.chars().map(|c| if c == '+' { 1 } else { -1 }).collect());
    }
    part.split(',')
        .map(|item| match item.trim() {
            "1" | "+1" | "+" => Ok(1),
            "-1" | "-" => Ok(-1),
            other => Err(fail(
                EXIT_USAGE,
                format!("unrecognized orientation entry {other:?} (use 1 or -1)"),
            )),
        })
        .collect()
}

fn orient_line(orient: &Orientations) -> String {
    let side = |signs: &[i8]| {
        signs
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    format!("{}/{}", side(&orient.cols), side(&orient.rows))
}

fn parse_omega(raw: &str) -> Result<Vec<(usize, usize)>, Failure> {
    raw.split(';')
        .map(|pair| {
            let (r, c) = pair.split_once(',').ok_or_else(|| {
                fail(EXIT_USAGE, format!("bad cell {pair:?} in --omega (use r,c;r,c)"))
            })?;
            let coord = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| fail(EXIT_USAGE, format!("bad coordinate {s:?} in --omega")))
            };
            Ok((coord(r)?, coord(c)?))
        })
        .collect()
}

fn cmd_verify(cli: &Cli, file: &Path, mode: Kind, integer: bool) -> Result<u8, Failure> {
    let array = load_array(file)?;
    let t = array.ctx().t;
    let vmode = match mode {
        Kind::Weak => VerifyMode::weak_for(t),
        Kind::Classical => VerifyMode::classical_for(t),
    };
    let report = if integer { array.verify_integer(vmode) } else { array.verify(vmode) };
    match cli.format {
        Format::Text => println!("{}", report.to_string().trim_end()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
    }
    Ok(if report.ok { 0 } else { EXIT_NEGATIVE })
}

fn cmd_strictness(cli: &Cli, file: &Path) -> Result<u8, Failure> {
    let array = load_array(file)?;
    let verdict = strictness_check(&array).map_err(usage)?;
    match (&verdict, cli.format) {
        (Strictness::StrictlyWeak { nodes }, Format::Text) => {
            println!("STRICTLY WEAK");
            println!("nodes={nodes}");
            Ok(0)
        }
        (Strictness::NotStrict { witness, nodes }, Format::Text) => {
            print!("{}", emit_text(witness));
            println!("nodes={nodes}");
            Ok(EXIT_NEGATIVE)
        }
        (_, Format::Json) => {
            let witness = match &verdict {
                Strictness::NotStrict { witness, .. } => Some(emit_text(witness)),
                Strictness::StrictlyWeak { .. } => None,
            };
            let doc = json!({
                "strictly_weak": verdict.is_strict(),
                "nodes": verdict.nodes(),
                "witness": witness,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            Ok(if verdict.is_strict() { 0 } else { EXIT_NEGATIVE })
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    cli: &Cli,
    m: usize,
    n: usize,
    h: usize,
    k: usize,
    t: u32,
    mode: ModeArg,
    goal: GoalArg,
    omega: Option<&str>,
    reverse: bool,
) -> Result<u8, Failure> {
    let ctx = ArrayContext::new(m, n, h, k, t).map_err(usage)?;
    let mut spec = SearchSpec::new(ctx, mode.into(), goal.into());
    spec.omega = omega.map(parse_omega).transpose()?;
    spec.budget = budget_of(cli);
    spec.reverse = reverse;
    let outcome = match search_arrays(&spec) {
        Ok(outcome) => outcome,
        Err(err @ SearchError::Inadmissible(_)) => return Err(usage(err)),
        Err(err @ SearchError::BudgetExceeded { .. }) => return Err(fail(EXIT_BUDGET, err.to_string())),
    };
    match cli.format {
        Format::Text => {
            for witness in &outcome.witnesses {
                print!("{}", emit_text(witness));
                println!();
            }
            eprintln!(
                "exists={} count={} nodes={} strictness_nodes={} skeletons={} complete={}",
                outcome.exists,
                outcome.count,
                outcome.nodes,
                outcome.strictness_nodes,
                outcome.skeletons,
                outcome.complete
            );
        }
        Format::Json => {
            let doc = json!({
                "exists": outcome.exists,
                "count": outcome.count,
                "nodes": outcome.nodes,
                "strictness_nodes": outcome.strictness_nodes,
                "skeletons": outcome.skeletons,
                "complete": outcome.complete,
                "witnesses": outcome.witnesses.iter().map(emit_text).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
    Ok(if outcome.exists { 0 } else { EXIT_NEGATIVE })
}

fn answer_json(answer: &ExistenceAnswer) -> serde_json::Value {
    match answer {
        ExistenceAnswer::Exists { nodes, .. } => json!({"exists": true, "nodes": nodes}),
        ExistenceAnswer::None { nodes } => json!({"exists": false, "nodes": nodes}),
    }
}

fn classify_table(n: usize, k: usize, rows: &[ClassifyRow]) -> String {
    let rows: Vec<_> = rows
        .iter()
        .map(|row| {
            json!({
                "t": row.t,
                "v": row.v,
                "necessary": row.verdict,
                "system_count": row.system_count,
                "classical": answer_json(&row.classical),
                "strictly_weak": answer_json(&row.strictly_weak),
            })
        })
        .collect();
    serde_json::to_string_pretty(&json!({"n": n, "k": k, "rows": rows})).unwrap()
}

fn run_classify(cli: &Cli, n: usize, k: usize) -> Result<Vec<ClassifyRow>, Failure> {
    match classify(n, k, budget_of(cli)) {
        Ok(rows) => Ok(rows),
        Err(err @ SearchError::Inadmissible(_)) => Err(usage(err)),
        Err(err @ SearchError::BudgetExceeded { .. }) => Err(fail(EXIT_BUDGET, err.to_string())),
    }
}

fn cmd_classify(cli: &Cli, n: usize, k: usize) -> Result<u8, Failure> {
    let rows = run_classify(cli, n, k)?;
    // The classification is a table by nature; it is always emitted as JSON.
    println!("{}", classify_table(n, k, &rows));
    Ok(0)
}

fn cmd_systems(cli: &Cli, v: u32, t: u32, k: usize) -> Result<u8, Failure> {
    let systems = enumerate_heffter_systems(v, t, k).map_err(usage)?;
    match cli.format {
        Format::Text => {
            for system in &systems {
                println!("{system}");
            }
            eprintln!("count={}", systems.len());
        }
        Format::Json => {
            let doc = json!({"v": v, "t": t, "k": k, "count": systems.len(), "systems": systems});
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
    Ok(0)
}

fn cmd_construct(cli: &Cli, family: &Family) -> Result<u8, Failure> {
    match family {
        Family::Wh5 { n, stage } => {
            let array = assemble_wh5_stage(*n, (*stage).into()).map_err(usage)?;
            print_array(&array, cli.format);
            Ok(0)
        }
    }
}

fn cmd_tour(
    cli: &Cli,
    file: &Path,
    orient: Option<&str>,
    solve: Option<SolveArg>,
    certify: bool,
) -> Result<u8, Failure> {
    let array = load_array(file)?;
    let cells = array.skeleton().len();
    if let Some(raw) = orient {
        let (cols, rows) = parse_orient(raw)?;
        let orient = Orientations::new(cols, rows).map_err(usage)?;
        let list = tour_list(&array, &orient).map_err(usage)?;
        let solved = list.len() == cells;
        let certificate = nonorientable_certificate(&list);
        match cli.format {
            Format::Text => {
                for state in &list {
                    println!("{state}");
                }
                if certify {
                    match certificate {
                        Some((r, c)) => println!("certificate=({r},{c})"),
                        None => println!("certificate=none"),
                    }
                }
                eprintln!("solution={solved} length={} cells={cells}", list.len());
            }
            Format::Json => {
                let doc = json!({
                    "list": list.iter().map(|s| json!([s.row, s.col, s.copy])).collect::<Vec<_>>(),
                    "solution": solved,
                    "length": list.len(),
                    "cells": cells,
                    "certificate": certificate,
                });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            }
        }
        return Ok(if solved { 0 } else { EXIT_NEGATIVE });
    }
    match solve.unwrap_or(SolveArg::First) {
        SolveArg::All => {
            let search = solve_tour(&array, cli.budget_nodes).map_err(usage)?;
            match cli.format {
                Format::Text => {
                    for solution in &search.solutions {
                        println!("{}", orient_line(solution));
                    }
                    eprintln!(
                        "solutions={} examined={} complete={}",
                        search.solutions.len(),
                        search.examined,
                        search.complete
                    );
                }
                Format::Json => {
                    let doc = json!({
                        "solutions": search
                            .solutions
                            .iter()
                            .map(|o| json!({"cols": o.cols, "rows": o.rows}))
                            .collect::<Vec<_>>(),
                        "examined": search.examined,
                        "complete": search.complete,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
            }
            if !search.solutions.is_empty() {
                Ok(0)
            } else if !search.complete {
                Err(fail(EXIT_BUDGET, "orientation budget exhausted before any solution"))
            } else {
                Ok(EXIT_NEGATIVE)
            }
        }
        SolveArg::First => {
            let ctx = array.ctx();
            let pairs: u64 = 1 << (ctx.m + ctx.n).min(63);
            let limit = cli.budget_nodes.unwrap_or(u64::MAX).min(pairs);
            for index in 0..limit {
                let orient = Orientations::from_index(ctx.m, ctx.n, index);
                if is_solution(&array, &orient).map_err(usage)? {
                    let list = tour_list(&array, &orient).map_err(usage)?;
                    match cli.format {
                        Format::Text => {
                            println!("{}", orient_line(&orient));
                            for state in &list {
                                println!("{state}");
                            }
                        }
                        Format::Json => {
                            let doc = json!({
                                "cols": orient.cols,
                                "rows": orient.rows,
                                "list": list
                                    .iter()
                                    .map(|s| json!([s.row, s.col, s.copy]))
                                    .collect::<Vec<_>>(),
                            });
                            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                        }
                    }
                    return Ok(0);
                }
            }
            if limit < pairs {
                Err(fail(EXIT_BUDGET, "orientation budget exhausted before any solution"))
            } else {
                Ok(EXIT_NEGATIVE)
            }
        }
    }
}

fn embed_report_json(report: &EmbeddingReport) -> serde_json::Value {
    let faces: Vec<_> = report
        .faces
        .iter()
        .map(|face| json!({"length": face.vertices.len(), "cycle": face.vertices}))
        .collect();
    let mut doc = json!({
        "vertices": report.vertices,
        "edges": report.edges,
        "faces": faces,
        "chi": report.chi,
        "orientable": report.orientable,
        "regular": report.regular,
    });
    if let Some(genus) = report.genus {
        doc["genus"] = json!(genus);
    }
    if let Some(crosscap) = report.crosscap {
        doc["crosscap"] = json!(crosscap);
    }
    doc
}

fn build_rotation(
    array: &WeakArray,
    raw_orient: &str,
) -> Result<(LineOrdering, RotationSystem), Failure> {
    let (cols, rows) = parse_orient(raw_orient)?;
    let ord = LineOrdering::from_orientations(array, &cols, &rows).map_err(usage)?;
    let rot = rotation_and_signature(array, &ord).map_err(|e| match e {
        EmbedError::NotCompatible { .. } | EmbedError::CriteriaDisagree { .. } => {
            fail(EXIT_NEGATIVE, e.to_string())
        }
        other => usage(other),
    })?;
    Ok((ord, rot))
}

fn cmd_embed(cli: &Cli, file: &Path, orient: &str, report_fmt: Option<Format>) -> Result<u8, Failure> {
    let array = load_array(file)?;
    let (_ord, rot) = build_rotation(&array, orient)?;
    let report = trace_all_faces(&rot).map_err(|e| fail(EXIT_NEGATIVE, e.to_string()))?;
    match report_fmt.unwrap_or(cli.format) {
        Format::Text => {
            let surface = match (report.genus, report.crosscap) {
                (Some(genus), _) => format!("genus={genus}"),
                (None, Some(crosscap)) => format!("crosscap={crosscap}"),
                (None, None) => String::from("surface=?"),
            };
            println!(
                "vertices={} edges={} faces={} chi={} orientable={} {surface} regular={}",
                report.vertices,
                report.edges,
                report.faces.len(),
                report.chi,
                report.orientable,
                report.regular
            );
            let lengths = report
                .lengths
                .iter()
                .map(|(len, count)| format!("{len}x{count}"))
                .collect::<Vec<_>>()
                .join(" ");
            println!("lengths: {lengths}");
            for face in &report.faces {
                let cycle = face
                    .vertices
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                println!("({cycle})");
            }
        }
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&embed_report_json(&report)).unwrap());
        }
    }
    Ok(0)
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/golden").join(name)
}

fn cmd_repro(cli: &Cli, target: Target, write_golden: bool) -> Result<u8, Failure> {
    let content = build_repro(cli, target)?;
    let path = golden_path(target.golden_file());
    if write_golden {
        fs::write(&path, &content)
            .map_err(|e| fail(EXIT_USAGE, format!("cannot write {}: {e}", path.display())))?;
        println!("wrote {}", path.display());
        return Ok(0);
    }
    let expected = fs::read_to_string(&path)
        .map_err(|e| fail(EXIT_NEGATIVE, format!("missing golden {}: {e}", path.display())))?;
    if expected == content {
        println!("MATCH {}", target.golden_file());
        Ok(0)
    } else {
        let diff = first_difference(&expected, &content);
        println!("MISMATCH {}", target.golden_file());
        println!("{diff}");
        Ok(EXIT_NEGATIVE)
    }
}

fn first_difference(expected: &str, actual: &str) -> String {
    let mut want = expected.lines();
    let mut got = actual.lines();
    let mut line = 0usize;
    loop {
        line += 1;
        match (want.next(), got.next()) {
            (Some(w), Some(g)) if w == g => continue,
            (Some(w), Some(g)) => {
                return format!("line {line}:\n  golden: {w}\n  actual: {g}");
            }
            (Some(w), None) => return format!("line {line}: golden continues with: {w}"),
            (None, Some(g)) => return format!("line {line}: actual continues with: {g}"),
            (None, None) => return String::from("files differ only in trailing bytes"),
        }
    }
}

fn pretty(doc: &serde_json::Value) -> String {
    let mut out = serde_json::to_string_pretty(doc).unwrap();
    out.push('\n');
    out
}

fn fixture_array(name: &str) -> WeakArray {
    let fixture = corpus::by_name(name).expect("fixture name");
    parse_text(fixture.text).expect("fixture parses")
}

fn build_repro(cli: &Cli, target: Target) -> Result<String, Failure> {
    match target {
        Target::T33 => {
            let rows = run_classify(cli, 3, 3)?;
            Ok(classify_table(3, 3, &rows) + "\n")
        }
        Target::T43 => {
            let rows = run_classify(cli, 4, 3)?;
            Ok(classify_table(4, 3, &rows) + "\n")
        }
        Target::N34 => {
            let array = fixture_array("wh_3x4");
            let weak = array.verify(VerifyMode::Weak);
            let integer = array.verify_integer(VerifyMode::Weak);
            let verdict = strictness_check(&array).map_err(usage)?;
            let (theta, omega) = array.theta_omega();
            let lambda = array.lambda_table();
            let ctx = array.ctx();
            let lambda_plus: Vec<u32> =
                ctx.classes().filter(|&cl| lambda[cl as usize] == 1).collect();
            Ok(pretty(&json!({
                "fixture": "wh_3x4",
                "weak_ok": weak.ok,
                "integer_ok": integer.ok,
                "strictly_weak": verdict.is_strict(),
                "strictness_nodes": verdict.nodes(),
                "theta": theta,
                "omega": omega,
                "lambda_plus_classes": lambda_plus,
            })))
        }
        Target::SystemsCounts => {
            let cases: [(u32, u32, usize); 10] = [
                (21, 3, 3),
                (32, 8, 3),
                (27, 3, 3),
                (30, 6, 3),
                (27, 9, 3),
                (36, 12, 3),
                (25, 1, 3),
                (26, 2, 3),
                (28, 4, 3),
                (48, 24, 3),
            ];
            let mut counts = Vec::new();
            let mut d3_21 = Vec::new();
            let mut d8_32 = Vec::new();
            for (v, t, k) in cases {
                let systems = enumerate_heffter_systems(v, t, k).map_err(usage)?;
                counts.push(json!({"v": v, "t": t, "k": k, "count": systems.len()}));
                let lines: Vec<String> = systems.iter().map(|s| s.to_string()).collect();
                if (v, t) == (21, 3) {
                    d3_21 = lines;
                } else if (v, t) == (32, 8) {
                    d8_32 = lines;
                }
            }
            Ok(pretty(&json!({"counts": counts, "d3_21": d3_21, "d8_32": d8_32})))
        }
        Target::Wh512 => {
            let array = assemble_wh5_stage(12, WH5Stage::Final).map_err(usage)?;
            let text = emit_text(&array);
            let fixture = corpus::by_name("wh5_12x12").expect("fixture name");
            if text != fixture.text {
                return Err(fail(
                    EXIT_NEGATIVE,
                    "constructed array differs from the committed 12x12 fixture",
                ));
            }
            Ok(text)
        }
        Target::Tour3x4 => {
            let array = fixture_array("wh_3x4");
            let orient = Orientations::new(vec![-1, -1, 1, 1], vec![1, 1, 1]).map_err(usage)?;
            let list = tour_list(&array, &orient).map_err(usage)?;
            if list.len() != array.skeleton().len() {
                return Err(fail(EXIT_NEGATIVE, "known solution no longer solves the tour"));
            }
            let mut out = String::new();
            out.push_str(&orient_line(&orient));
            out.push('\n');
            for state in &list {
                out.push_str(&state.to_string());
                out.push('\n');
            }
            match nonorientable_certificate(&list) {
                Some((r, c)) => out.push_str(&format!("certificate=({r},{c})\n")),
                None => out.push_str("certificate=none\n"),
            }
            Ok(out)
        }
        Target::Embed3x4 => {
            let array = fixture_array("wh_3x4");
            let (_ord, rot) = build_rotation(&array, "-1,-1,1,1/1,1,1")?;
            let report = trace_all_faces(&rot).map_err(|e| fail(EXIT_NEGATIVE, e.to_string()))?;
            let ctx = array.ctx();
            let epsilon_plus: Vec<u32> =
                ctx.classes().filter(|&cl| rot.epsilon(cl) == 1).collect();
            Ok(pretty(&json!({
                "rho": rot.rho_cycle,
                "epsilon_plus_classes": epsilon_plus,
                "vertices": report.vertices,
                "edges": report.edges,
                "faces": report.faces.len(),
                "lengths": report.lengths,
                "chi": report.chi,
                "orientable": report.orientable,
                "crosscap": report.crosscap,
                "regular": report.regular,
            })))
        }
        Target::K55Family => {
            let ctx = ArrayContext::from_header(55, 1, 9, 3).map_err(usage)?;
            let mut spec = SearchSpec::new(ctx, SearchMode::Weak, SearchGoal::Exists);
            spec.omega = Some(vec![(1, 1), (2, 1), (9, 1)]);
            spec.budget = budget_of(cli);
            let outcome = match search_arrays(&spec) {
                Ok(outcome) => outcome,
                Err(err @ SearchError::Inadmissible(_)) => return Err(usage(err)),
                Err(err @ SearchError::BudgetExceeded { .. }) => {
                    return Err(fail(EXIT_BUDGET, err.to_string()))
                }
            };
            let array = outcome
                .witnesses
                .first()
                .ok_or_else(|| fail(EXIT_NEGATIVE, "no 9x3 array with the prescribed splits"))?;
            let orient =
                Orientations::new(vec![1, -1, -1], vec![-1; 9]).map_err(usage)?;
            let list = tour_list(array, &orient).map_err(usage)?;
            if list.len() != array.skeleton().len() {
                return Err(fail(
                    EXIT_NEGATIVE,
                    "prescribed orientations do not solve the 9x3 tour",
                ));
            }
            let has = |row, col, copy| {
                list.iter().any(|s| s.row == row && s.col == col && s.copy == copy)
            };
            let certificate = nonorientable_certificate(&list);
            let (_ord, rot) = tour_to_embedding(array, &orient).map_err(usage)?;
            let report = trace_all_faces(&rot).map_err(|e| fail(EXIT_NEGATIVE, e.to_string()))?;
            Ok(pretty(&json!({
                "array": emit_text(array),
                "search_nodes": outcome.nodes,
                "tour_length": list.len(),
                "has_1_3_plus": has(1, 3, 1),
                "has_1_3_minus": has(1, 3, -1),
                "certificate": certificate,
                "vertices": report.vertices,
                "edges": report.edges,
                "faces": report.faces.len(),
                "lengths": report.lengths,
                "chi": report.chi,
                "orientable": report.orientable,
                "crosscap": report.crosscap,
                "regular": report.regular,
            })))
        }
    }
}
