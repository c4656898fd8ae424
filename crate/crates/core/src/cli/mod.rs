//! Command-line front end.
//!
//! [`dispatch`] parses an argument list, runs one operation and returns a
//! [`CommandResult`]; the binary only prints it and exits with
//! [`Status::exit_code`]. Every payload is a JSON value built from exact
//! text forms (`p/q`, `inf`), so output is byte-identical across runs.
//! Timings go to `diagnostics`, never into the payload.

mod audit;
mod render;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use audit::{
    circle_identity_sweep, hyperbolic_identity_sweep, run_audit_suite, AuditReport, IdentitySweep, LawSweep,
    SubgroupFinding, DEFAULT_SEED, IDENTITY_HEIGHT,
};
pub use render::Table;

use crate::circle::{self, CircleElement};
use crate::error::Error;
use crate::exact_arith::text::{format_projective, format_rational, parse_point, parse_projective, parse_rational};
use crate::hyperbolic::{self, HyperbolicElement};
use crate::kfermat::{self, CyclotomicVector};
use crate::search;
use crate::stroboscope;
use crate::{Cyclotomic, CyclotomicField, Point2, ProjectiveRational, Rational};

/// Environment variable overriding the group enumeration cap.
pub const LIMIT_ENV: &str = "FERMAT_ORBIT_LIMIT";
/// Default cap on `iterate --steps`.
pub const DEFAULT_ITERATE_STEPS: u64 = 10_000;
/// Default cap on the number of candidate fractions scanned by `triples`.
pub const DEFAULT_TRIPLES_CANDIDATES: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Success,
    InvalidArgument,
    ResourceLimit,
    /// An exact post-condition failed inside an operation.
    VerificationFailed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::VerificationFailed => 1,
            Status::InvalidArgument => 2,
            Status::ResourceLimit => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    /// What the binary prints on stdout: the payload in the requested
    /// format, or usage text.
    #[serde(skip)]
    pub output: String,
}

impl CommandResult {
    fn failure(err: &Error) -> Self {
        let status = match err {
            Error::InvalidArgument(_) => Status::InvalidArgument,
            Error::ResourceLimit { .. } => Status::ResourceLimit,
            Error::Verification(_) => Status::VerificationFailed,
        };
        CommandResult {
            status,
            payload: Value::Null,
            diagnostics: vec![err.to_string()],
            output: String::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

const AFTER_HELP: &str = "\
Rationals are written p/q or p; the point at infinity of the parameter line is inf.
Points are x,y. Heights are max(|numerator|, denominator) of the reduced fraction.
Exit codes: 0 success, 1 verification failure, 2 invalid argument, 3 resource limit.";

#[derive(Debug, Parser)]
#[command(name = "kfermat", version, about = "Exact groups preserving Fermat-type forms", after_help = AFTER_HELP)]
struct Cli {
    /// Output serialization.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Size cap for the command (group elements, search leaves, steps, ...).
    /// Group commands also read FERMAT_ORBIT_LIMIT.
    #[arg(long, global = true)]
    limit: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rational rotations of x² + y² = 1.
    #[command(subcommand)]
    Circle(CircleCmd),
    /// Rational boosts of x² − y² = 1.
    #[command(subcommand)]
    Hyper(HyperCmd),
    /// Primitive Pythagorean triples from Δ = p/q, 0 < p < q ≤ height.
    Triples {
        #[arg(long)]
        height: u64,
    },
    /// Monomial groups preserving x₁^k + … + x_n^k.
    #[command(subcommand)]
    Kgroup(KgroupCmd),
    /// Rational solutions of x₁^k + … + x_n^k = 1 up to a height.
    Search {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        height: u64,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Also write the report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check that every circle solution up to a height is in the orbit of (1,0).
    Coverage {
        #[arg(long)]
        height: u64,
    },
    /// The cancellation solution (x1, −x1, 1) for odd k.
    Counterexample {
        #[arg(long)]
        k: u32,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        x1: Rational,
    },
    /// Iterate L(Δ) exactly from a circle point.
    Iterate {
        #[arg(long, value_parser = projective_arg, allow_hyphen_values = true)]
        delta: ProjectiveRational,
        #[arg(long)]
        steps: u64,
        #[arg(long, value_parser = point_arg, allow_hyphen_values = true, default_value = "1,0")]
        start: Point2<Rational>,
        /// Also write step,x,y,height rows to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run every identity and group-law audit and emit one report.
    Audit {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct ComposeArgs {
    #[arg(long, value_parser = projective_arg, allow_hyphen_values = true)]
    d1: ProjectiveRational,
    #[arg(long, value_parser = projective_arg, allow_hyphen_values = true)]
    d2: ProjectiveRational,
}

#[derive(Debug, Args)]
struct ActArgs {
    #[arg(long, value_parser = projective_arg, allow_hyphen_values = true)]
    delta: ProjectiveRational,
    /// Apply R·L(Δ) instead of L(Δ).
    #[arg(long)]
    reflect: bool,
    #[arg(long, value_parser = point_arg, allow_hyphen_values = true)]
    point: Point2<Rational>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long, value_parser = point_arg, allow_hyphen_values = true)]
    from: Point2<Rational>,
    #[arg(long, value_parser = point_arg, allow_hyphen_values = true)]
    to: Point2<Rational>,
}

/// Either one pair or a sweep over all pairs up to a height.
#[derive(Debug, Args)]
#[group(required = true, multiple = true)]
struct AuditArgs {
    #[arg(long, conflicts_with_all = ["from", "to"])]
    height: Option<u64>,
    #[arg(long, value_parser = point_arg, allow_hyphen_values = true, requires = "to")]
    from: Option<Point2<Rational>>,
    #[arg(long, value_parser = point_arg, allow_hyphen_values = true, requires = "from")]
    to: Option<Point2<Rational>>,
}

#[derive(Debug, Subcommand)]
enum CircleCmd {
    Compose(ComposeArgs),
    Act(ActArgs),
    Solve(SolveArgs),
    AuditExy(AuditArgs),
}

#[derive(Debug, Subcommand)]
enum HyperCmd {
    Compose(ComposeArgs),
    Act(ActArgs),
    Solve(SolveArgs),
    Audit(AuditArgs),
}

#[derive(Debug, Subcommand)]
enum KgroupCmd {
    /// k^n · n!.
    Order {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: usize,
    },
    Enumerate {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: usize,
    },
    /// Orbit of a vector. Components are rationals or coefficient lists
    /// [c0;c1;...] in powers of ω, separated by commas.
    Orbit {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Elements with all entries rational.
    Rational {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: usize,
    },
    /// Rational points in the orbit of (1, 0) under O_k(2).
    OrbitRational {
        #[arg(long)]
        k: u32,
    },
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn projective_arg(s: &str) -> Result<ProjectiveRational, String> {
    parse_projective(s).map_err(|e| e.to_string())
}

fn point_arg(s: &str) -> Result<Point2<Rational>, String> {
    parse_point(s).map_err(|e| e.to_string())
}

/// Parses `2,3` or `[1;0;1],-1/2` into a vector over `Q(ω_k)`.
pub fn parse_cyclotomic_vector(k: u32, token: &str) -> crate::Result<CyclotomicVector<Rational>> {
    let field = CyclotomicField::new(k)?;
    let mut components = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    let body = token.trim();
    let mut pieces = Vec::new();
    for (i, c) in body.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                pieces.push(&body[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    pieces.push(&body[start..]);
    for piece in pieces {
        let piece = piece.trim();
        let coeffs = match piece.strip_prefix('[').and_then(|p| p.strip_suffix(']')) {
            Some(inner) => inner.split(';').map(parse_rational).collect::<crate::Result<Vec<_>>>()?,
            None => vec![parse_rational(piece)?],
        };
        components.push(Cyclotomic::from_coeffs(&field, coeffs));
    }
    CyclotomicVector::new(&field, components)
}

struct Output {
    payload: Value,
    table: Option<Table>,
    diagnostics: Vec<String>,
}

impl Output {
    fn new(payload: impl Serialize) -> crate::Result<Self> {
        Ok(Output {
            payload: to_json(payload)?,
            table: None,
            diagnostics: Vec::new(),
        })
    }

    fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }
}

fn to_json(v: impl Serialize) -> crate::Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Verification(format!("payload serialization: {e}")))
}

/// Parses `argv` (without the program name) and runs the command.
pub fn dispatch<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let args = std::iter::once(OsString::from("kfermat")).chain(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            let status = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Status::Success,
                _ => Status::InvalidArgument,
            };
            return CommandResult {
                status,
                payload: Value::Null,
                diagnostics: if status == Status::Success { Vec::new() } else { vec![text.clone()] },
                output: if status == Status::Success { text } else { String::new() },
            };
        }
    };
    let format = cli.format;
    let started = Instant::now();
    match run(cli) {
        Ok(out) => {
            let mut diagnostics = out.diagnostics;
            diagnostics.push(format!("elapsed: {:.3} s", started.elapsed().as_secs_f64()));
            let output = match render::render(&out.payload, out.table.as_ref(), format) {
                Ok(s) => s,
                Err(e) => return CommandResult::failure(&e),
            };
            CommandResult {
                status: Status::Success,
                payload: out.payload,
                diagnostics,
                output,
            }
        }
        Err(e) => CommandResult::failure(&e),
    }
}

fn group_limit(explicit: Option<u64>) -> crate::Result<u64> {
    if let Some(l) = explicit {
        return Ok(l);
    }
    match std::env::var(LIMIT_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("{LIMIT_ENV}='{v}' is not a natural number"))),
        Err(_) => Ok(kfermat::DEFAULT_ENUMERATION_LIMIT),
    }
}

fn write_file(path: &Path, contents: &str) -> crate::Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display())))
}

fn run(cli: Cli) -> crate::Result<Output> {
    let limit = cli.limit;
    match cli.command {
        Command::Circle(cmd) => run_circle(cmd),
        Command::Hyper(cmd) => run_hyper(cmd),
        Command::Triples { height } => {
            let cap = limit.unwrap_or(DEFAULT_TRIPLES_CANDIDATES);
            let candidates = u128::from(height) * u128::from(height.saturating_sub(1)) / 2;
            if candidates > u128::from(cap) {
                return Err(Error::limit("triples candidate fractions", candidates, cap));
            }
            let triples = circle::triples_enumerate(height)?;
            let table = Table::new(["a", "b", "c"], triples.iter().map(|t| t.iter().map(u64::to_string).collect()));
            Ok(Output::new(&triples)?.with_table(table))
        }
        Command::Kgroup(cmd) => run_kgroup(cmd, limit),
        Command::Search { k, height, n, json } => {
            let report = if n == 2 {
                search::search_solutions(k, height)?
            } else {
                search::search_n(k, n, height, limit.unwrap_or(search::DEFAULT_SEARCH_BUDGET))?
            };
            let mut out = Output::new(&report)?;
            if let Some(path) = json {
                write_file(&path, &(serde_json::to_string_pretty(&out.payload).expect("json value") + "\n"))?;
            }
            let header: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
            out.table = Some(Table::new(
                header,
                report.solutions.iter().map(|s| s.iter().map(format_rational).collect()),
            ));
            out.diagnostics.push(format!("search time: {:.3} s", report.elapsed.as_secs_f64()));
            Ok(out)
        }
        Command::Coverage { height } => {
            let report = search::verify_orbit_coverage(height)?;
            let table = Table::new(
                ["x", "y", "delta"],
                report
                    .entries
                    .iter()
                    .map(|e| vec![format_rational(&e.point.x), format_rational(&e.point.y), format_projective(&e.delta)]),
            );
            Ok(Output::new(&report)?.with_table(table))
        }
        Command::Counterexample { k, x1 } => Output::new(search::n_counterexample(k, &x1)?),
        Command::Iterate { delta, steps, start, csv } => {
            let cap = limit.unwrap_or(DEFAULT_ITERATE_STEPS);
            if steps > cap {
                return Err(Error::limit("iteration steps", steps, cap));
            }
            let t = stroboscope::iterate(&delta, &start, steps as usize)?;
            let rows = std::iter::once((0usize, &start, start.height()))
                .chain(t.points.iter().zip(&t.heights).enumerate().map(|(i, (p, h))| (i + 1, p, h.clone())))
                .map(|(i, p, h)| vec![i.to_string(), format_rational(&p.x), format_rational(&p.y), h.to_string()]);
            let table = Table::new(["step", "x", "y", "height"], rows);
            if let Some(path) = csv {
                write_file(&path, &table.to_csv())?;
            }
            let mut payload = json!({ "trajectory": to_json(&t)? });
            if !t.points.is_empty() {
                let mut growth = to_json(stroboscope::height_profile(&t)?)?;
                if let Value::Object(m) = &mut growth {
                    m.remove("heights");
                }
                payload["growth"] = growth;
            }
            Ok(Output {
                payload,
                table: Some(table),
                diagnostics: Vec::new(),
            })
        }
        Command::Audit { seed } => {
            let res = run_audit_suite(seed);
            if res.status != Status::Success {
                return Err(Error::Verification(res.diagnostics.join("; ")));
            }
            Ok(Output {
                payload: res.payload,
                table: None,
                diagnostics: res.diagnostics,
            })
        }
    }
}

fn point_table<'a>(points: impl IntoIterator<Item = &'a Point2<Rational>>) -> Table {
    Table::new(
        ["x", "y"],
        points.into_iter().map(|p| vec![format_rational(&p.x), format_rational(&p.y)]),
    )
}

fn run_circle(cmd: CircleCmd) -> crate::Result<Output> {
    match cmd {
        CircleCmd::Compose(a) => Output::new(circle::circle_compose(&a.d1, &a.d2)),
        CircleCmd::Act(a) => {
            let e = CircleElement {
                delta: a.delta,
                reflected: a.reflect,
            };
            let image = circle::circle_act(&e, &a.point)?;
            Ok(Output::new(&image)?.with_table(point_table([&image])))
        }
        CircleCmd::Solve(a) => Output::new(circle::circle_solve_delta(&a.from, &a.to)?),
        CircleCmd::AuditExy(a) => match (a.height, a.from, a.to) {
            (Some(h), _, _) => Output::new(audit::circle_identity_sweep(h)?),
            (None, Some(from), Some(to)) => Output::new(circle::exy_audit(&from, &to)?),
            _ => Err(Error::invalid("give --height or both --from and --to")),
        },
    }
}

fn run_hyper(cmd: HyperCmd) -> crate::Result<Output> {
    match cmd {
        HyperCmd::Compose(a) => Output::new(hyperbolic::hyper_compose(&a.d1, &a.d2)?),
        HyperCmd::Act(a) => {
            let e = HyperbolicElement::new(a.delta, a.reflect)?;
            let image = hyperbolic::hyper_act(&e, &a.point)?;
            Ok(Output::new(&image)?.with_table(point_table([&image])))
        }
        HyperCmd::Solve(a) => Output::new(hyperbolic::hyper_solve_delta(&a.from, &a.to)?),
        HyperCmd::Audit(a) => match (a.height, a.from, a.to) {
            (Some(h), _, _) => Output::new(audit::hyperbolic_identity_sweep(h)?),
            (None, Some(from), Some(to)) => Output::new(hyperbolic::hdeltaxy_audit(&from, &to)?),
            _ => Err(Error::invalid("give --height or both --from and --to")),
        },
    }
}

fn run_kgroup(cmd: KgroupCmd, limit: Option<u64>) -> crate::Result<Output> {
    match cmd {
        KgroupCmd::Order { k, n } => match kfermat::group_order(k, n)? {
            Some(o) => match u64::try_from(o) {
                Ok(o) => Output::new(o),
                Err(_) => Output::new(o.to_string()),
            },
            None => Err(Error::limit(format!("O_{k}({n}) order"), "more than 2^128", u64::MAX)),
        },
        KgroupCmd::Enumerate { k, n } => {
            let elements = kfermat::group_enumerate(k, n, group_limit(limit)?)?;
            let table = Table::new(
                ["perm", "exp"],
                elements.iter().map(|m| {
                    let join = |xs: Vec<String>| xs.join(";");
                    vec![
                        join(m.perm().images().iter().map(usize::to_string).collect()),
                        join(m.exponents().iter().map(u32::to_string).collect()),
                    ]
                }),
            );
            Ok(Output::new(json!({
                "k": k,
                "n": n,
                "order": elements.len(),
                "elements": to_json(&elements)?,
            }))?
            .with_table(table))
        }
        KgroupCmd::Orbit { k, point } => {
            let v = parse_cyclotomic_vector(k, &point)?;
            Output::new(kfermat::orbit(&v, k, group_limit(limit)?)?)
        }
        KgroupCmd::Rational { k, n } => Output::new(kfermat::rational_elements(k, n, group_limit(limit)?)?),
        KgroupCmd::OrbitRational { k } => {
            let points = kfermat::orbit_rational_points(k, group_limit(limit)?)?;
            let table = point_table(&points);
            Ok(Output::new(json!({ "k": k, "points": to_json(&points)? }))?.with_table(table))
        }
    }
}
