//! Command-line front end: solve problem files, dump division descriptions, and run seeded
//! differential checks. See `polymin::problem` for the problem-file grammar.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use polymin::cubic_bounded::cubic_division;
use polymin::exactmath::Rat;
use polymin::homogeneous::quasi_division;
use polymin::lattice2d::{Polyhedron2, Row};
use polymin::oracle::{differential_run, judge_solution, InstanceDegree, InstanceSpec};
use polymin::problem::{parse, ProblemFile};
use polymin::regions::{box_radius, DivisionDescription};
use polymin::solve::{resolve_mode, solve, Mode, ModeUsed};
use polymin::Error;
use serde_json::{json, Map, Value};
use std::path::{Path, PathBuf};

/// Exit status for solved problems, including infeasible and unbounded ones.
pub const EXIT_OK: i32 = 0;
/// Exit status for internal failures and oracle mismatches.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for unreadable or malformed input and bad flags.
pub const EXIT_PARSE: i32 = 2;
/// Exit status for inputs outside the supported problem classes.
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "polymin", version, about = "Exact integer minimization of bivariate polynomials over polygons")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve a problem file and print the result as one JSON object.
    Run {
        path: PathBuf,
        /// Solver family; overrides the file's `mode`.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Restrict the region to the square [-R, R]^2.
        #[arg(long, value_name = "R")]
        box_radius: Option<BigInt>,
        /// Check the result against exhaustive search or the certificate conditions.
        #[arg(long)]
        oracle: bool,
    },
    /// Print the division description used for a problem file as one JSON object.
    EmitRegions {
        path: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Sublevel value, required by the cubic path (for example `1/2`).
        #[arg(long)]
        omega: Option<Rat>,
        /// Half-width of the described square; defaults to the region's bounding radius.
        #[arg(long, value_name = "R")]
        box_radius: Option<BigInt>,
    },
    /// Compare the solver with exhaustive search on seeded random instances, one JSON line each.
    Oracle {
        /// First seed; instances use seeds `seed .. seed + count`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: u64,
        #[arg(long, value_enum, default_value_t = KindArg::Total)]
        kind: KindArg,
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, default_value_t = 9)]
        coeff_bound: u32,
        #[arg(long, default_value_t = 10)]
        box_radius: u32,
        #[arg(long, default_value_t = 2)]
        constraints: u32,
        /// Drop the bounding box from the generated regions.
        #[arg(long)]
        unbounded: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    Cubic,
    Homogeneous,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Auto => Mode::Auto,
            ModeArg::Cubic => Mode::Cubic,
            ModeArg::Homogeneous => Mode::Homogeneous,
        }
    }
}

/// Objective family of generated instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    /// All monomials up to the degree (at most 3).
    Total,
    /// All monomials of exactly the degree.
    Homogeneous,
    /// A homogeneous form shifted by a rational point.
    Translatable,
}

/// What the process writes and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(v: Value) -> Output {
        Output { code: EXIT_OK, stdout: format!("{v}\n"), stderr: String::new() }
    }

    fn error(code: i32, kind: &str, message: String) -> Output {
        let v = json!({ "status": "error", "error": kind, "message": message });
        Output { code, stdout: format!("{v}\n"), stderr: format!("polymin: {message}\n") }
    }

    fn from_solver_error(e: Error) -> Output {
        match e {
            Error::Parse { .. } => Output::error(EXIT_PARSE, "parse", e.to_string()),
            Error::Unsupported(_)
            | Error::DegreeTooHigh(_)
            | Error::NotTranslatable
            | Error::NotHomogeneous
            | Error::UnboundedRegion
            | Error::DegenerateShape(_)
            | Error::NonIntegerCoefficients => Output::error(EXIT_UNSUPPORTED, "unsupported", e.to_string()),
            _ => Output::error(EXIT_FAILURE, "internal", e.to_string()),
        }
    }
}

pub fn execute(cli: Cli) -> Output {
    match cli.command {
        Command::Run { path, mode, box_radius, oracle } => run(&path, mode, box_radius.as_ref(), oracle),
        Command::EmitRegions { path, mode, omega, box_radius } => emit_regions(&path, mode, omega.as_ref(), box_radius.as_ref()),
        Command::Oracle { seed, count, kind, degree, coeff_bound, box_radius, constraints, unbounded } => {
            let degree = match kind {
                KindArg::Total => InstanceDegree::Total(degree),
                KindArg::Homogeneous => InstanceDegree::Homogeneous(degree),
                KindArg::Translatable => InstanceDegree::Translatable(degree),
            };
            oracle(seed, count, degree, coeff_bound, box_radius, constraints, unbounded)
        }
    }
}

fn read_problem(path: &Path) -> Result<ProblemFile, Output> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Output::error(EXIT_PARSE, "parse", format!("cannot read {}: {e}", path.display())))?;
    parse(&text).map_err(|e| Output::error(EXIT_PARSE, "parse", format!("{}: {e}", path.display())))
}

/// Solves the problem file at `path`.
pub fn run(path: &Path, mode: Option<ModeArg>, radius: Option<&BigInt>, with_oracle: bool) -> Output {
    let problem = match read_problem(path) {
        Ok(p) => p,
        Err(out) => return out,
    };
    let f = problem.objective_poly();
    let region = problem.region();
    let mode = mode.map_or(problem.mode, Mode::from);
    let solved = match solve(&f, &region, mode, radius) {
        Ok(s) => s,
        Err(e) => return Output::from_solver_error(e),
    };
    let Value::Object(mut obj) = solved.outcome.to_json() else { unreachable!("outcomes serialize to objects") };
    obj.insert("mode_used".into(), json!(solved.mode_used.as_str()));
    obj.insert(
        "stats".into(),
        json!({ "bisection_steps": solved.stats.bisection_steps, "pieces": solved.stats.pieces }),
    );
    if with_oracle {
        let region = match radius {
            Some(r) => region.intersect(&Polyhedron2::square(r)),
            None => region,
        };
        let window = Polyhedron2::square(&box_radius(&region).unwrap_or_else(|_| BigInt::from(1)));
        let (status, expected) = judge_solution(&f, &region, &solved, &window);
        obj.insert("oracle".into(), json!({ "status": status, "expected": expected }));
    }
    Output::ok(Value::Object(obj))
}

fn rat_json(v: &Rat) -> Value {
    Value::String(v.to_string())
}

fn row_json(r: &Row) -> Value {
    json!({ "a": rat_json(&r.a), "b": rat_json(&r.b), "c": rat_json(&r.c) })
}

fn piece_json(p: &Polyhedron2) -> Value {
    Value::Array(p.rows().iter().map(row_json).collect())
}

fn division_json(dd: &DivisionDescription) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("bounds".into(), piece_json(&dd.bounds));
    m.insert("convex_side".into(), Value::Array(dd.convex_side.iter().map(piece_json).collect()));
    m.insert("concave_side".into(), Value::Array(dd.concave_side.iter().map(piece_json).collect()));
    m.insert(
        "lines".into(),
        Value::Array(
            dd.lines
                .iter()
                .map(|l| json!({ "a": l.a.to_string(), "b": l.b.to_string(), "c": l.c.to_string() }))
                .collect(),
        ),
    );
    m
}

/// Writes the division description of the problem at `path`: pieces as lists of rows
/// `a x + b y <= c`, lines as `a x + b y = c`, all numbers as decimal strings.
pub fn emit_regions(path: &Path, mode: Option<ModeArg>, omega: Option<&Rat>, radius: Option<&BigInt>) -> Output {
    let problem = match read_problem(path) {
        Ok(p) => p,
        Err(out) => return out,
    };
    let f = problem.objective_poly();
    let region = problem.region();
    let radius = match radius {
        Some(r) => r.clone(),
        None => match box_radius(&region) {
            Ok(r) => r,
            Err(_) => {
                return Output::error(EXIT_UNSUPPORTED, "unsupported", "unbounded region needs --box-radius".into())
            }
        },
    };
    let bounded = region.intersect(&Polyhedron2::square(&radius));
    let mode = mode.map_or(problem.mode, Mode::from);
    let used = match resolve_mode(&f, &bounded, mode) {
        Ok(m) => m,
        Err(e) => return Output::from_solver_error(e),
    };
    let dd = match used {
        ModeUsed::Homogeneous => quasi_division(&f, &radius),
        ModeUsed::Cubic | ModeUsed::CubicUnbounded => match omega {
            Some(w) => cubic_division(&f, w, &radius),
            None => return Output::error(EXIT_PARSE, "usage", "the cubic path needs --omega".into()),
        },
    };
    let dd = match dd {
        Ok(d) => d,
        Err(e) => return Output::from_solver_error(e),
    };
    let mut obj = division_json(&dd);
    obj.insert("mode_used".into(), json!(used.as_str()));
    obj.insert("radius".into(), json!(radius.to_string()));
    if used != ModeUsed::Homogeneous {
        obj.insert("omega".into(), rat_json(omega.expect("checked above")));
    }
    Output::ok(Value::Object(obj))
}

/// Differential run over seeds `seed .. seed + count`; exits with failure when any instance
/// mismatches or errors.
pub fn oracle(
    seed: u64,
    count: u64,
    degree: InstanceDegree,
    coeff_bound: u32,
    box_radius: u32,
    constraints: u32,
    unbounded: bool,
) -> Output {
    let mut specs = Vec::new();
    for s in seed..seed.saturating_add(count) {
        match InstanceSpec::new(s, degree, coeff_bound, box_radius, constraints, unbounded) {
            Ok(spec) => specs.push(spec),
            Err(e) => return Output::error(EXIT_PARSE, "usage", e.to_string()),
        }
    }
    let report = differential_run(&specs);
    let failures = report.failures().count();
    let (code, stderr) = if failures == 0 {
        (EXIT_OK, String::new())
    } else {
        (EXIT_FAILURE, format!("polymin: {failures} of {} instances failed\n", specs.len()))
    };
    Output { code, stdout: report.to_string(), stderr }
}
