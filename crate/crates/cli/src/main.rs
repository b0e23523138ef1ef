//! `tilekit`: JSON-in, JSON-out front end for the tilekit library.
//!
//! Exit codes: 0 success, 1 checked and false, 2 input error, 3 capacity.

mod parse;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use tilekit_core::fiid::{
    nonabelian_tile, site_records, two_tile_family, vertical_family, FiberTile,
};
use tilekit_core::rational::serde_rational;
use tilekit_core::torus::{
    assemble_circle_tiling, circle_rationality, connected_case, render_svg, sine_multitile_check,
    velocity_decomposition, verify_rational_torus_tiling, verify_symbolic_tiling_with,
    weak_rational_direction, CircleOutcome, SubstitutionPlan,
};
use tilekit_core::*;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(TileError),
}

impl From<TileError> for CliError {
    fn from(e: TileError) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Core(e) => match e {
                TileError::CapacityExceeded { .. } => 3,
                TileError::PremiseViolation(_)
                | TileError::StructureViolation { .. }
                | TileError::ConnectedRequired
                | TileError::LemmaViolation(_) => 1,
                _ => 2,
            },
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "InputError",
            CliError::Core(e) => match e {
                TileError::SpecMismatch(_) => "SpecMismatch",
                TileError::InvalidSpec(_) => "InvalidSpec",
                TileError::ArithmeticOverflow(_) => "ArithmeticOverflow",
                TileError::InvalidPrime(_) => "InvalidPrime",
                TileError::PremiseViolation(_) => "PremiseViolation",
                TileError::CapacityExceeded { .. } => "CapacityExceeded",
                TileError::StructureViolation { .. } => "StructureViolation",
                TileError::ConnectedRequired => "ConnectedRequired",
                TileError::LemmaViolation(_) => "LemmaViolation",
                TileError::Unsupported(_) => "Unsupported",
                TileError::InvalidAssignment(_) => "InvalidAssignment",
                TileError::InvalidSubgroup(_) => "InvalidSubgroup",
                TileError::DegenerateWindow(_) => "DegenerateWindow",
                TileError::InvalidInput(_) => "InvalidInput",
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "tilekit",
    version,
    about = "Exact tools for translational tilings"
)]
struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct TilingArgs {
    /// Group, e.g. `Z/6`, `Z/2xZ/4`, `Z(3)xZ/2`.
    #[arg(long)]
    group: String,
    /// Tile elements.
    #[arg(long, allow_hyphen_values = true)]
    tile: String,
    /// Elements of the set `A` (reduced into the fundamental domain).
    #[arg(long, allow_hyphen_values = true)]
    set: String,
}

#[derive(clap::Args, Debug)]
struct DocArgs {
    /// JSON document: a path, `-` for standard input, or inline JSON.
    #[arg(long, short)]
    input: String,
}

#[derive(clap::Args, Debug)]
struct WindowArgs {
    /// Window length `N`.
    #[arg(long)]
    len: usize,
    /// First site of the window.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    start: i64,
    #[arg(long)]
    seed: u64,
    /// Write one JSON line per window site to this file.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Normalization {
    TileSize,
    SmallPrimeProduct,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check whether `F + A` tiles the quotient.
    Verify(TilingArgs),
    /// Check `rF + A` for a range of dilations `r`.
    Dilate {
        #[command(flatten)]
        tiling: TilingArgs,
        /// `a..b` (inclusive) or a comma-separated list.
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// List every complement `A` of a tile in a finite group.
    Enumerate {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        tile: String,
    },
    /// Compute and check the components `phi_f`.
    Decompose {
        #[command(flatten)]
        tiling: TilingArgs,
        #[arg(long, value_enum, default_value = "tile-size")]
        normalization: Normalization,
    },
    /// Classify a connected-support interval tiling `1_F * psi = 1_[a,b]`.
    ClassifyInterval(DocArgs),
    /// Verify a torus tiling with rational or symbolic shifts.
    TorusVerify {
        #[command(flatten)]
        doc: DocArgs,
        /// Seed for the substitution test; needed for symbolic shifts.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 8)]
        trials: usize,
    },
    /// Velocity decomposition and weak rational directions of symbolic shifts.
    TorusSlide(DocArgs),
    /// Structure of a tiling of `T^2` by a connected tile.
    TorusConnected(DocArgs),
    /// Rationality check for a tiling of the circle.
    Circle(DocArgs),
    /// Build a circle tile from tilings of `Z/q` by `F'`.
    AssembleCircle {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        fprime: String,
        /// One tiling of `Z/q` per transversal cell, separated by `;`.
        #[arg(long)]
        assignment: String,
    },
    /// Sample the sliding three-tile family on `T^3`.
    SineCheck {
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Factor-of-iid tiling of `Z` by `{0,1}` and `{0,1,2}`.
    FiidTwoTile(WindowArgs),
    /// Factor-of-iid vertical tiling of `Z x G0`.
    FiidVertical {
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        tiling: TilingArgs,
    },
    /// Factor-of-iid tiling of `Z x S3` by a non-abelian tile.
    FiidS3(WindowArgs),
    /// Render a substituted torus tiling as SVG.
    Render(DocArgs),
}

fn read_doc<T: DeserializeOwned>(doc: &DocArgs) -> CliResult<T> {
    let text = if doc.input == "-" {
        std::io::read_to_string(std::io::stdin())
            .map_err(|e| CliError::Input(format!("reading standard input: {e}")))?
    } else if doc.input.trim_start().starts_with(['{', '[']) {
        doc.input.clone()
    } else {
        std::fs::read_to_string(&doc.input)
            .map_err(|e| CliError::Input(format!("reading {}: {e}", doc.input)))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("bad input document: {e}")))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// A report and whether the checked property held.
struct Outcome {
    report: Output,
    holds: bool,
}

enum Output {
    Json(Value),
    Text(String),
}

fn json(report: Value, holds: bool) -> CliResult<Outcome> {
    Ok(Outcome {
        report: Output::Json(report),
        holds,
    })
}

struct Tiling {
    q: QuotientSpec,
    tile: Vec<GroupElement>,
    set: PeriodicSet,
}

fn tiling(args: &TilingArgs) -> CliResult<Tiling> {
    let g = parse::group(&args.group)?;
    let tile = g.elements(&args.tile)?;
    let set = PeriodicSet::from_elements(&g.quotient, &g.elements(&args.set)?)?;
    Ok(Tiling {
        q: g.quotient,
        tile,
        set,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IntervalDoc {
    f: RationalMultiset,
    psi: StepFunction,
    #[serde(with = "serde_rational")]
    a: Rational,
    #[serde(with = "serde_rational")]
    b: Rational,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TorusDoc {
    a: CellSet,
    shifts: Vec<SymbolicVector>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CircleDoc {
    a: CellSet,
    shifts: Vec<SymbolicScalar>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RenderDoc {
    a: CellSet,
    shifts: Vec<SymbolicVector>,
    #[serde(default)]
    values: BTreeMap<String, f64>,
}

fn window(args: &WindowArgs) -> FiidWindow {
    FiidWindow::new(args.len, args.seed).shifted(args.start)
}

fn fiid_outcome(
    args: &WindowArgs,
    trace: &FiidTrace,
    group: &FiniteGroupTable,
    tiles: &[FiberTile],
    extra: Value,
) -> CliResult<Outcome> {
    let validation = validate_trace(trace, group, tiles);
    if let Some(path) = &args.trace {
        let mut out = String::new();
        for rec in site_records(trace) {
            out.push_str(&serde_json::to_string(&rec).expect("records serialize"));
            out.push('\n');
        }
        std::fs::write(path, out)
            .map_err(|e| CliError::Input(format!("writing {}: {e}", path.display())))?;
    }
    let holds = validation.coverage_violations == 0;
    json(
        json!({ "trace": to_value(trace), "validation": to_value(&validation), "setup": extra }),
        holds,
    )
}

fn run(command: &Command) -> CliResult<Outcome> {
    match command {
        Command::Verify(args) => {
            let t = tiling(args)?;
            let rep = verify_tiling(&t.q, &t.tile, &t.set)?;
            json(to_value(&rep), rep.is_tiling)
        }
        Command::Dilate { tiling: args, r } => {
            let t = tiling(args)?;
            let rs = parse::int_range(r)?;
            let scan = dilation_scan(&t.q, &t.tile, &t.set, &rs)?;
            let holds = scan
                .iter()
                .filter(|e| e.coprime_to_tile_size)
                .all(|e| e.report.is_tiling);
            json(to_value(&scan), holds)
        }
        Command::Enumerate { group, tile } => {
            let g = parse::group(group)?;
            let tile = g.elements(tile)?;
            let cat = enumerate_tilings(&g.quotient, &tile)?;
            let summary = enumerate::summarize(&cat);
            let solutions: Vec<Vec<GroupElement>> =
                (0..cat.count()).map(|i| cat.solution_elements(i)).collect();
            let holds = cat.count() > 0;
            json(
                json!({
                    "count": summary.count,
                    "orbit_count": summary.orbit_count,
                    "rigidity": summary.rigidity,
                    "solutions": to_value(&solutions),
                    "orbit_classes": cat.orbit_classes,
                }),
                holds,
            )
        }
        Command::Decompose {
            tiling: args,
            normalization,
        } => {
            let t = tiling(args)?;
            let norm = match normalization {
                Normalization::TileSize => QNormalization::TileSize,
                Normalization::SmallPrimeProduct => QNormalization::SmallPrimeProduct,
            };
            let dec = decompose(&t.q, &t.tile, &t.set, norm)?;
            let check = check_decomposition(&t.q, &t.tile, &t.set, &dec)?;
            let components: Vec<Value> = dec
                .formatted()
                .into_iter()
                .map(|(f, phi)| json!({ "f": to_value(&f), "phi": phi }))
                .collect();
            json(
                json!({
                    "q_exponent": dec.q_exponent,
                    "components": components,
                    "check": to_value(&check),
                }),
                true,
            )
        }
        Command::ClassifyInterval(doc) => {
            let d: IntervalDoc = read_doc(doc)?;
            let c = classify_connected(&d.f, &d.psi, &d.a, &d.b)?;
            json(to_value(&c), true)
        }
        Command::TorusVerify { doc, seed, trials } => {
            let d: TorusDoc = read_doc(doc)?;
            if d.shifts.iter().all(SymbolicVector::is_rational) {
                let shifts: Vec<Vec<Rational>> = d
                    .shifts
                    .iter()
                    .map(|f| f.rational_part().to_vec())
                    .collect();
                let rep = verify_rational_torus_tiling(&shifts, &d.a)?;
                return json(to_value(&rep), rep.is_tiling);
            }
            let seed = seed.ok_or_else(|| {
                CliError::Input("symbolic shifts need --seed for the substitution test".into())
            })?;
            let plan = SubstitutionPlan {
                trials: *trials,
                seed,
                ..SubstitutionPlan::default()
            };
            let rep = verify_symbolic_tiling_with(&d.shifts, &d.a, &plan)?;
            json(to_value(&rep), rep.certified)
        }
        Command::TorusSlide(doc) => {
            let d: TorusDoc = read_doc(doc)?;
            let dec = velocity_decomposition(&d.shifts)?;
            let weak = if d.a.dim() == 2 {
                let w: Vec<_> = d
                    .shifts
                    .iter()
                    .map(weak_rational_direction)
                    .collect::<Result<_>>()?;
                to_value(&w)
            } else {
                Value::Null
            };
            json(
                json!({ "decomposition": to_value(&dec), "weak_directions": weak }),
                true,
            )
        }
        Command::TorusConnected(doc) => {
            let d: TorusDoc = read_doc(doc)?;
            json(to_value(&connected_case(&d.shifts, &d.a)?), true)
        }
        Command::Circle(doc) => {
            let d: CircleDoc = read_doc(doc)?;
            let out = circle_rationality(&d.shifts, &d.a)?;
            let holds = matches!(out, CircleOutcome::Rational { .. });
            json(to_value(&out), holds)
        }
        Command::AssembleCircle {
            q,
            fprime,
            assignment,
        } => {
            let a = assemble_circle_tiling(
                *q,
                &parse::u64_list(fprime)?,
                &parse::u64_rows(assignment)?,
            )?;
            json(to_value(&a), true)
        }
        Command::SineCheck { t, samples, seed } => {
            let rep = sine_multitile_check(*t, *samples, *seed);
            json(to_value(&rep), rep.violations == 0)
        }
        Command::FiidTwoTile(args) => {
            let trace = simulate_two_tile(window(args))?;
            fiid_outcome(
                args,
                &trace,
                &FiniteGroupTable::trivial(),
                &two_tile_family(),
                Value::Null,
            )
        }
        Command::FiidVertical {
            window: w,
            tiling: args,
        } => {
            let g = parse::group(&args.group)?;
            let f0 = g.elements(&args.tile)?;
            let a0 = g.elements(&args.set)?;
            let trace = simulate_vertical(window(w), &g.quotient, &f0, &a0)?;
            let table = FiniteGroupTable::from_quotient(&g.quotient)?;
            let tiles = vertical_family(&g.quotient, &f0)?;
            fiid_outcome(w, &trace, &table, &tiles, Value::Null)
        }
        Command::FiidS3(args) => {
            let (g, h, a, trace) = simulate_nonabelian_s3(window(args))?;
            let tiles = vec![nonabelian_tile(&g, &h, a)?];
            let setup = json!({ "group": to_value(&g), "h": h, "a": a });
            fiid_outcome(args, &trace, &g, &tiles, setup)
        }
        Command::Render(doc) => {
            let d: RenderDoc = read_doc(doc)?;
            Ok(Outcome {
                report: Output::Text(render_svg(&d.a, &d.shifts, &d.values)?),
                holds: true,
            })
        }
    }
}

fn emit(path: Option<&PathBuf>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(&cli.command) {
        Ok(out) => {
            let text = match out.report {
                Output::Json(v) => {
                    serde_json::to_string_pretty(&v).expect("reports serialize") + "\n"
                }
                Output::Text(s) => s,
            };
            (text, if out.holds { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("tilekit: {e}");
            let doc = json!({ "error": e.kind(), "message": e.to_string() });
            (
                serde_json::to_string_pretty(&doc).expect("errors serialize") + "\n",
                e.exit_code(),
            )
        }
    };
    if let Err(e) = emit(cli.output.as_ref(), &text) {
        eprintln!("tilekit: writing output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
