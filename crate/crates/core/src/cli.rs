//! Command-line front end.
//!
//! Every verb maps to one library operation or to the verification harness.
//! Output is a small human-readable table by default and a stable JSON
//! document with `--json`; errors always go to the error stream.
//!
//! Exit codes: `0` success, `1` domain error, `2` usage error (bad flags,
//! unreadable files, malformed option values), `3` a gating suite failed.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::analysis::{
    destabilization, diagonalize, dominating_number, dropler_intensity, exactness_degree,
    expansion_index, min_index_check, mixed_specific_check, normalization_stage,
    single_var_profile, unionization_stage, ExpansionExpr,
};
use crate::error::Error;
use crate::expansion::{
    contract_pow, expand_mixed_pow, expand_pow, mixed_totient, residue, totient, totient_formula,
    Direction, MixedDirection, PolyTuple,
};
use crate::io::{parse_box, parse_direction, parse_path, parse_spots, TupleFile};
use crate::measure::{
    area, check_average_inequality, check_integral_inequality, check_min_gap, volume, volume_terms,
    BoxDomain, InequalityReport,
};
use crate::polyring::format_rational;
use crate::verify::{run_all, run_suite_with, GenConfig, VerificationReport, ENGINE_VERSION};

/// Environment variable capping the number of operator iterations a verb may need.
pub const MAX_ITER_ENV: &str = "EXPD_MAX_ITER";

/// Exit status of a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status of a domain error.
pub const EXIT_DOMAIN: i32 = 1;
/// Exit status of a usage error.
pub const EXIT_USAGE: i32 = 2;
/// Exit status of a `verify` run with a failing gating suite.
pub const EXIT_GATING: i32 = 3;

/// Expansion operators on tuples of polynomials.
#[derive(Debug, Parser)]
#[command(name = "expd", version, about)]
pub struct Cli {
    /// Emit machine-readable JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Show intermediate quantities where a verb has them.
    #[arg(long, global = true)]
    pub explain: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// The tuple file every verb reads.
#[derive(Debug, Args)]
pub struct TupleArg {
    /// Tuple file: `{"vars": [...], "entries": [...]}`.
    #[arg(long, value_name = "FILE")]
    pub tuple: PathBuf,
}

/// A single direction or a mixed path.
#[derive(Debug, Args)]
#[command(group(ArgGroup::new("direction").required(true).args(["dir", "path"])))]
pub struct DirOrPath {
    /// Direction, by variable name or index.
    #[arg(long)]
    pub dir: Option<String>,
    /// Comma-separated direction path, e.g. `x,y`.
    #[arg(long)]
    pub path: Option<String>,
}

/// Which inequality `check` evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    /// `∫_box ‖E_m(t)‖ ≥ ‖∫_box E_m(t)‖` (needs `--box`).
    Integral,
    /// `vol(box) ≥ ‖∫_box E_m(t)‖` when `‖E_m(t)‖ ≤ 1` (needs `--box`).
    MinGap,
    /// Volume sum against its sampled upper bound (needs `--spots`).
    Average,
    /// Mixed totient against directional totients and orders.
    MixedSpecific,
    /// Smallest directional totient against the mean exponent.
    MinIndex,
}

/// Verbs.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply an expansion (or a mixed path) repeatedly.
    Expand {
        #[command(flatten)]
        tuple: TupleArg,
        #[command(flatten)]
        dir: DirOrPath,
        /// Number of applications.
        #[arg(long, default_value_t = 1)]
        times: u32,
    },
    /// Number of applications needed to reach the null tuple.
    Totient {
        #[command(flatten)]
        tuple: TupleArg,
        #[command(flatten)]
        dir: DirOrPath,
    },
    /// The last non-null iterate.
    Residue {
        #[command(flatten)]
        tuple: TupleArg,
        /// Direction.
        #[arg(long)]
        dir: String,
    },
    /// Apply the right inverse of the expansion repeatedly.
    Contract {
        #[command(flatten)]
        tuple: TupleArg,
        /// Direction.
        #[arg(long)]
        dir: String,
        /// Number of applications.
        #[arg(long, default_value_t = 1)]
        times: u32,
    },
    /// Intensity and energy of an expansion value against the tuple.
    Dropler {
        #[command(flatten)]
        tuple: TupleArg,
        /// Direction in which the value is measured.
        #[arg(long)]
        dir: String,
        /// Path of the source expansion.
        #[arg(long)]
        path: String,
        /// Power of the source expansion.
        #[arg(long, default_value_t = 1)]
        times: u32,
        /// Spot of the source expansion (defaults to the tuple).
        #[arg(long, value_name = "FILE")]
        source: Option<PathBuf>,
    },
    /// First iterate that survives evaluation at the origin.
    Destab {
        #[command(flatten)]
        tuple: TupleArg,
        /// Direction.
        #[arg(long)]
        dir: String,
    },
    /// Rewrite a mixed expansion as a power of one direction.
    Diagonalize {
        #[command(flatten)]
        tuple: TupleArg,
        /// Mixed path.
        #[arg(long)]
        path: String,
        /// Target direction (must occur in the path).
        #[arg(long)]
        dir: String,
    },
    /// Smallest power of the tuple's expansion equal to a mixed expansion of a spot.
    Exactness {
        #[command(flatten)]
        tuple: TupleArg,
        /// Direction of the tuple's expansion.
        #[arg(long)]
        dir: String,
        /// Spot file.
        #[arg(long, value_name = "FILE")]
        spot: PathBuf,
        /// Mixed path applied to the spot.
        #[arg(long)]
        path: String,
    },
    /// Index of the expansion of a spot in the expansion of the tuple.
    Index {
        #[command(flatten)]
        tuple: TupleArg,
        /// Spot file.
        #[arg(long, value_name = "FILE")]
        spot: PathBuf,
        /// Direction.
        #[arg(long)]
        dir: String,
        /// Power of the spot's expansion.
        #[arg(long, default_value_t = 1)]
        times: u32,
    },
    /// Dominating number of the expansion of a spot over the tuple.
    Dominate {
        #[command(flatten)]
        tuple: TupleArg,
        /// Spot file.
        #[arg(long, value_name = "FILE")]
        spot: PathBuf,
        /// Direction.
        #[arg(long)]
        dir: String,
        /// Power of the spot's expansion.
        #[arg(long, default_value_t = 1)]
        times: u32,
    },
    /// First iterate whose entries share one exponent in the direction.
    Normalize {
        #[command(flatten)]
        tuple: TupleArg,
        /// Direction.
        #[arg(long)]
        dir: String,
    },
    /// First iterate that vanishes at the origin.
    Unionize {
        #[command(flatten)]
        tuple: TupleArg,
        /// Direction.
        #[arg(long)]
        dir: String,
    },
    /// Exact integral of a mixed expansion over a box.
    Area {
        #[command(flatten)]
        tuple: TupleArg,
        /// Mixed path.
        #[arg(long)]
        path: String,
        /// Box, e.g. `x:0:1,y:-1/2:3`.
        #[arg(long = "box", value_name = "BOX")]
        bx: String,
    },
    /// Volume sum of a mixed expansion over spots.
    Volume {
        #[command(flatten)]
        tuple: TupleArg,
        /// Mixed path.
        #[arg(long)]
        path: String,
        /// Spots, e.g. `(1,0);(0,1)`.
        #[arg(long)]
        spots: String,
    },
    /// Evaluate one of the inequalities.
    Check {
        #[command(flatten)]
        tuple: TupleArg,
        /// Which inequality.
        #[arg(long, value_enum)]
        kind: CheckKind,
        /// Mixed path.
        #[arg(long)]
        path: String,
        /// Box, for the integral kinds.
        #[arg(long = "box", value_name = "BOX")]
        bx: Option<String>,
        /// Spots, for the average kind.
        #[arg(long)]
        spots: Option<String>,
        /// Relative tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Run verification suites on generated instances.
    Verify {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Base seed.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Generated cases per suite.
        #[arg(long, default_value_t = 200)]
        cases: usize,
        /// Write the JSON report to this file.
        #[arg(long, value_name = "FILE")]
        report: Option<PathBuf>,
        /// Tuple file run before the generated cases, in direction 0; repeatable.
        #[arg(long, value_name = "FILE")]
        plant: Vec<PathBuf>,
    },
    /// Degree, rank, local number and dimension of a one-variable tuple.
    Profile {
        #[command(flatten)]
        tuple: TupleArg,
    },
}

/// A verb's result: table rows for humans, a JSON value for machines.
struct Output {
    rows: Vec<(String, String)>,
    json: Value,
    code: i32,
}

impl Output {
    fn new(json: Value) -> Self {
        Self { rows: Vec::new(), json, code: EXIT_OK }
    }

    fn row(mut self, key: &str, value: impl ToString) -> Self {
        self.rows.push((key.to_string(), value.to_string()));
        self
    }
}

/// Failures carry the exit code they map to.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Input(_) | Error::UnknownSuite(_) => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        };
        Self { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

/// Runs the CLI in-process on `args` (including the program name).
///
/// Returns the exit code and the text destined for the output and error streams.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { (EXIT_USAGE, String::new(), text) } else { (EXIT_OK, text, String::new()) };
        }
    };
    match dispatch(&cli) {
        Ok(out) => {
            let text = if cli.json {
                let mut s = serde_json::to_string_pretty(&out.json).expect("JSON values serialize");
                s.push('\n');
                s
            } else {
                render_table(&out.rows)
            };
            (out.code, text, String::new())
        }
        Err(f) => (f.code, String::new(), format!("error: {}\n", f.message)),
    }
}

fn render_table(rows: &[(String, String)]) -> String {
    if let [(_, v)] = rows {
        return format!("{v}\n");
    }
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut s = String::new();
    for (k, v) in rows {
        let _ = writeln!(s, "{k:<width$}  {v}");
    }
    s
}

/// A parsed tuple file.
struct Loaded {
    file: TupleFile,
    tuple: PolyTuple,
}

impl Loaded {
    fn read(path: &Path) -> std::result::Result<Self, Failure> {
        let file = TupleFile::read(path)?;
        let tuple = file.to_tuple()?;
        Ok(Self { file, tuple })
    }

    fn vars(&self) -> &[String] {
        &self.file.vars
    }

    fn dir(&self, text: &str) -> std::result::Result<Direction, Failure> {
        parse_direction(text, self.vars()).map_err(|e| usage(e.to_string()))
    }

    fn path(&self, text: &str) -> std::result::Result<MixedDirection, Failure> {
        parse_path(text, self.vars()).map_err(|e| usage(e.to_string()))
    }

    fn show(&self, t: &PolyTuple) -> String {
        t.display(self.vars())
    }

    fn tuple_json(&self, t: &PolyTuple) -> Value {
        json!({ "vars": self.vars(), "entries": t.format(self.vars()) })
    }

    fn names(&self, m: &MixedDirection) -> Vec<String> {
        m.format(self.vars())
    }

    fn name(&self, d: Direction) -> String {
        self.vars()[d].clone()
    }
}

/// The JSON document shared by all tuple verbs.
fn envelope(verb: &str, input: &Loaded, fields: Value, result: Value) -> Value {
    let mut doc = json!({
        "engine_version": ENGINE_VERSION,
        "verb": verb,
        "tuple": input.file,
        "result": result,
    });
    if let (Value::Object(doc), Value::Object(extra)) = (&mut doc, fields) {
        doc.extend(extra);
    }
    doc
}

/// Refuses work that would need more iterations than `EXPD_MAX_ITER` allows.
fn iteration_guard(t: &PolyTuple, dirs: &[Direction], times: u32) -> std::result::Result<(), Failure> {
    let Ok(raw) = std::env::var(MAX_ITER_ENV) else { return Ok(()) };
    let cap: usize = raw
        .trim()
        .parse()
        .map_err(|_| usage(format!("{MAX_ITER_ENV} must be a non-negative integer, got `{raw}`")))?;
    let mut need = times as usize;
    for &d in dirs {
        need = need.max(totient_formula(t, d)? as usize);
    }
    if need > cap {
        return Err(Error::IterationCap(cap).into());
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> std::result::Result<Output, Failure> {
    match &cli.command {
        Command::Verify { suite, seed, cases, report, plant } => {
            verify(suite, *seed, *cases, report.as_deref(), plant)
        }
        Command::Expand { tuple, dir, times } => {
            let t = Loaded::read(&tuple.tuple)?;
            let (m, key, names) = resolve(&t, dir)?;
            iteration_guard(&t.tuple, m.dirs(), *times)?;
            let v = match m.as_single() {
                Some(d) => expand_pow(&t.tuple, d, *times)?,
                None => expand_mixed_pow(&t.tuple, &m, *times)?,
            };
            let json = envelope("expand", &t, json!({ key: names, "times": times }), t.tuple_json(&v));
            Ok(Output::new(json).row("value", t.show(&v)))
        }
        Command::Totient { tuple, dir } => {
            let t = Loaded::read(&tuple.tuple)?;
            let (m, key, names) = resolve(&t, dir)?;
            iteration_guard(&t.tuple, m.dirs(), 0)?;
            if let Some(d) = m.as_single().filter(|_| dir.dir.is_some()) {
                let iterative = totient(&t.tuple, d)?;
                let formula = totient_formula(&t.tuple, d)?;
                let mut result = json!({ "totient": iterative });
                if cli.explain {
                    result = json!({ "totient": iterative, "iterative": iterative, "formula": formula });
                }
                let out = Output::new(envelope("totient", &t, json!({ key: names }), result));
                Ok(if cli.explain {
                    out.row("iterative", iterative).row("formula", formula)
                } else {
                    out.row("totient", iterative)
                })
            } else {
                let phi = mixed_totient(&t.tuple, &m)?;
                let json = envelope("totient", &t, json!({ key: names }), json!({ "totient": phi }));
                Ok(Output::new(json).row("totient", phi))
            }
        }
        Command::Residue { tuple, dir } => {
            let t = Loaded::read(&tuple.tuple)?;
            let d = t.dir(dir)?;
            iteration_guard(&t.tuple, &[d], 0)?;
            let v = residue(&t.tuple, d)?;
            let json = envelope("residue", &t, json!({ "dir": t.name(d) }), t.tuple_json(&v));
            Ok(Output::new(json).row("residue", t.show(&v)))
        }
        Command::Contract { tuple, dir, times } => {
            let t = Loaded::read(&tuple.tuple)?;
            let d = t.dir(dir)?;
            let v = contract_pow(&t.tuple, d, *times)?;
            let json = envelope("contract", &t, json!({ "dir": t.name(d), "times": times }), t.tuple_json(&v));
            Ok(Output::new(json).row("value", t.show(&v)))
        }
        Command::Dropler { tuple, dir, path, times, source } => {
            let t = Loaded::read(&tuple.tuple)?;
            let d = t.dir(dir)?;
            let m = t.path(path)?;
            let spot = match source {
                Some(p) => load_like(&t, p)?,
                None => t.tuple.clone(),
            };
            iteration_guard(&t.tuple, &[d], *times)?;
            let src = ExpansionExpr::new(spot, m.clone(), *times)?;
            let r = dropler_intensity(&src, &t.tuple, d)?;
            let fields = json!({ "dir": t.name(d), "path": t.names(&m), "times": times });
            let result = json!({
                "source_value": t.tuple_json(&src.value),
                "intensity": r.intensity,
                "admits": r.admits,
                "energy": r.energy,
            });
            Ok(Output::new(envelope("dropler", &t, fields, result))
                .row("source value", t.show(&src.value))
                .row("intensity", r.intensity)
                .row("admits", r.admits)
                .row("energy", r.energy))
        }
        Command::Destab { tuple, dir } => {
            let t = Loaded::read(&tuple.tuple)?;
            let d = t.dir(dir)?;
            iteration_guard(&t.tuple, &[d], 0)?;
            let r = destabilization(&t.tuple, d)?;
            let result = json!({
                "natural": r.natural,
                "stage": r.stage,
                "strong": r.strong,
                "value": t.tuple_json(&r.value),
            });
            Ok(Output::new(envelope("destab", &t, json!({ "dir": t.name(d) }), result))
                .row("stage", r.stage)
                .row("natural", r.natural)
                .row("strong", r.strong)
                .row("value", t.show(&r.value)))
        }
        Command::Diagonalize { tuple, path, dir } => {
            let t = Loaded::read(&tuple.tuple)?;
            let m = t.path(path)?;
            let d = t.dir(dir)?;
            let r = diagonalize(&t.tuple, &m, d)?;
            let differs = r.differs_non_constantly(&t.tuple)?;
            let fields = json!({ "dir": t.name(d), "path": t.names(&m) });
            let result = json!({
                "spot": t.tuple_json(&r.spot),
                "order": r.order,
                "direction": t.name(r.direction),
                "differs_non_constantly": differs,
            });
            Ok(Output::new(envelope("diagonalize", &t, fields, result))
                .row("spot", t.show(&r.spot))
                .row("order", r.order)
                .row("differs non-constantly", differs))
        }
        Command::Exactness { tuple, dir, spot, path } => {
            let t = Loaded::read(&tuple.tuple)?;
            let d = t.dir(dir)?;
            let m = t.path(path)?;
            let s = load_like(&t, spot)?;
            iteration_guard(&t.tuple, &[d], 0)?;
            let k = exactness_degree(&t.tuple, d, &s, &m)?;
            let fields = json!({ "dir": t.name(d), "path": t.names(&m), "spot": t.tuple_json(&s) });
            Ok(Output::new(envelope("exactness", &t, fields, json!({ "degree": k })))
                .row("degree", opt(k)))
        }
        Command::Index { tuple, spot, dir, times } | Command::Dominate { tuple, spot, dir, times } => {
            let verb = if matches!(cli.command, Command::Index { .. }) { "index" } else { "dominate" };
            let t = Loaded::read(&tuple.tuple)?;
            let d = t.dir(dir)?;
            let s = load_like(&t, spot)?;
            iteration_guard(&t.tuple, &[d], *times)?;
            let t_expr = ExpansionExpr::single(t.tuple.clone(), d)?;
            let z_expr = ExpansionExpr::new(s.clone(), MixedDirection::single(d), *times)?;
            let (key, v) = if verb == "index" {
                ("index", expansion_index(&t_expr, &z_expr)?)
            } else {
                ("dominating_number", dominating_number(&z_expr, &t_expr)?)
            };
            let fields = json!({ "dir": t.name(d), "times": times, "spot": t.tuple_json(&s) });
            Ok(Output::new(envelope(verb, &t, fields, json!({ key: v }))).row(key, opt(v)))
        }
        Command::Normalize { tuple, dir } => {
            let t = Loaded::read(&tuple.tuple)?;
            let d = t.dir(dir)?;
            iteration_guard(&t.tuple, &[d], 0)?;
            let (stage, fibre) = normalization_stage(&t.tuple, d)?;
            let result = json!({ "stage": stage, "value": t.tuple_json(&fibre) });
            Ok(Output::new(envelope("normalize", &t, json!({ "dir": t.name(d) }), result))
                .row("stage", stage)
                .row("value", t.show(&fibre)))
        }
        Command::Unionize { tuple, dir } => {
            let t = Loaded::read(&tuple.tuple)?;
            let d = t.dir(dir)?;
            iteration_guard(&t.tuple, &[d], 0)?;
            let j = unionization_stage(&t.tuple, d)?;
            let json = envelope("unionize", &t, json!({ "dir": t.name(d) }), json!({ "stage": j }));
            Ok(Output::new(json).row("stage", j))
        }
        Command::Area { tuple, path, bx } => {
            let t = Loaded::read(&tuple.tuple)?;
            let m = t.path(path)?;
            let b = load_box(&t, bx)?;
            let a = area(&t.tuple, &m, &b)?;
            let text = a.format(t.vars());
            let fields = json!({ "path": t.names(&m), "box": box_json(&t, &b) });
            Ok(Output::new(envelope("area", &t, fields, json!({ "area": text }))).row("area", text))
        }
        Command::Volume { tuple, path, spots } => {
            let t = Loaded::read(&tuple.tuple)?;
            let m = t.path(path)?;
            let spots = parse_spots(spots).map_err(|e| usage(e.to_string()))?;
            let terms = volume_terms(&t.tuple, &m, &spots)?;
            let v = volume(&t.tuple, &m, &spots)?;
            let terms_json: Vec<Value> = terms
                .iter()
                .map(|x| {
                    json!({
                        "s": x.s,
                        "t": x.t,
                        "v": x.v,
                        "area": format_rational(&x.area),
                        "cross_norm_squared": format_rational(&x.cross_norm_squared),
                    })
                })
                .collect();
            let spots_json: Vec<Vec<String>> =
                spots.iter().map(|s| s.iter().map(format_rational).collect()).collect();
            let fields = json!({
                "path": t.names(&m),
                "spots": spots_json,
                "convention": VOLUME_CONVENTION,
            });
            let result = json!({ "volume": v, "terms": terms_json });
            Ok(Output::new(envelope("volume", &t, fields, result))
                .row("volume", v)
                .row("terms", terms.len())
                .row("convention", VOLUME_CONVENTION))
        }
        Command::Check { tuple, kind, path, bx, spots, tol } => check(tuple, *kind, path, bx, spots, *tol),
        Command::Profile { tuple } => {
            let t = Loaded::read(&tuple.tuple)?;
            iteration_guard(&t.tuple, &[0], 0)?;
            let p = single_var_profile(&t.tuple)?;
            let result = json!({
                "degree": p.degree,
                "rank": t.tuple_json(&p.rank),
                "local_number": p.local_number,
                "dimension": p.dimension,
            });
            Ok(Output::new(envelope("profile", &t, json!({}), result))
                .row("degree", p.degree)
                .row("rank", t.show(&p.rank))
                .row("local number", p.local_number)
                .row("dimension", p.dimension))
        }
    }
}

/// How `volume` pairs spots with cross products.
const VOLUME_CONVENTION: &str =
    "l spots; sum over pairs s<t of the area between a_s and a_t times the cross-product norm of the spots other than a_v, for every v outside {s,t}";

fn opt(v: Option<u32>) -> String {
    v.map_or_else(|| "none".to_string(), |v| v.to_string())
}

fn resolve(t: &Loaded, dir: &DirOrPath) -> std::result::Result<(MixedDirection, &'static str, Value), Failure> {
    match (&dir.dir, &dir.path) {
        (Some(d), _) => {
            let d = t.dir(d)?;
            Ok((MixedDirection::single(d), "dir", json!(t.name(d))))
        }
        (None, Some(p)) => {
            let m = t.path(p)?;
            Ok((m.clone(), "path", json!(t.names(&m))))
        }
        (None, None) => Err(usage("one of --dir or --path is required")),
    }
}

/// Reads a second tuple file, requiring the same variables as the primary one.
fn load_like(t: &Loaded, path: &Path) -> std::result::Result<PolyTuple, Failure> {
    let other = Loaded::read(path)?;
    if other.vars() != t.vars() {
        return Err(usage(format!(
            "{} declares variables {:?}, expected {:?}",
            path.display(),
            other.vars(),
            t.vars()
        )));
    }
    Ok(other.tuple)
}

fn load_box(t: &Loaded, text: &str) -> std::result::Result<BoxDomain, Failure> {
    let bounds = parse_box(text, t.vars()).map_err(|e| usage(e.to_string()))?;
    Ok(BoxDomain::new(bounds)?)
}

fn box_json(t: &Loaded, b: &BoxDomain) -> Value {
    b.bounds
        .iter()
        .map(|(d, lo, hi)| json!([t.name(*d), format_rational(lo), format_rational(hi)]))
        .collect()
}

fn check(
    tuple: &TupleArg,
    kind: CheckKind,
    path: &str,
    bx: &Option<String>,
    spots: &Option<String>,
    tol: f64,
) -> std::result::Result<Output, Failure> {
    let t = Loaded::read(&tuple.tuple)?;
    let m = t.path(path)?;
    let kind_name = kind.to_possible_value().expect("no skipped variants").get_name().to_string();
    let need_box = || bx.as_deref().ok_or_else(|| usage(format!("--kind {kind_name} needs --box")));
    let mut fields = json!({ "path": t.names(&m), "kind": kind_name, "tol": tol });
    let (holds, result, mut out) = match kind {
        CheckKind::Integral | CheckKind::MinGap => {
            let b = load_box(&t, need_box()?)?;
            fields["box"] = box_json(&t, &b);
            let r = if kind == CheckKind::Integral {
                check_integral_inequality(&t.tuple, &m, &b, tol)?
            } else {
                check_min_gap(&t.tuple, &m, &b)?
            };
            inequality_output(&r)
        }
        CheckKind::Average => {
            let text = spots.as_deref().ok_or_else(|| usage("--kind average needs --spots"))?;
            let s = parse_spots(text).map_err(|e| usage(e.to_string()))?;
            fields["spots"] =
                json!(s.iter().map(|p| p.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>());
            fields["convention"] = json!(VOLUME_CONVENTION);
            inequality_output(&check_average_inequality(&t.tuple, &m, &s, tol)?)
        }
        CheckKind::MixedSpecific => {
            let r = mixed_specific_check(&t.tuple, &m)?;
            let out = Output::new(Value::Null)
                .row("mixed totient", r.mixed_totient)
                .row("totient sum", r.totient_sum)
                .row("order sum", r.order_sum)
                .row("corollary holds", r.corollary_holds);
            (r.holds, serde_json::to_value(&r).expect("plain report"), out)
        }
        CheckKind::MinIndex => {
            let r = min_index_check(&t.tuple, &m)?;
            let out = Output::new(Value::Null)
                .row("min totient", r.min_totient)
                .row("mean index", r.mean_index);
            (r.holds, serde_json::to_value(&r).expect("plain report"), out)
        }
    };
    out.rows.insert(0, ("holds".into(), holds.to_string()));
    out.json = envelope("check", &t, fields, result);
    Ok(out)
}

fn inequality_output(r: &InequalityReport) -> (bool, Value, Output) {
    let out = Output::new(Value::Null)
        .row("lhs", r.lhs)
        .row("rhs", r.rhs)
        .row("margin", r.margin)
        .row("applicable", r.applicable)
        .row("approximate", r.approximate)
        .row("error estimate", r.quadrature_error_estimate);
    (r.holds, serde_json::to_value(r).expect("plain report"), out)
}

fn verify(
    suite: &str,
    seed: u64,
    cases: usize,
    report: Option<&Path>,
    plant: &[PathBuf],
) -> std::result::Result<Output, Failure> {
    let cfg = GenConfig { seed, cases, ..GenConfig::default() };
    let planted = plant
        .iter()
        .map(|p| Loaded::read(p).map(|l| l.tuple))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let reports: Vec<VerificationReport> =
        if suite == "all" { run_all(&cfg, &planted)? } else { vec![run_suite_with(suite, &cfg, &planted)?] };
    let json = serde_json::to_value(&reports).expect("reports serialize");
    if let Some(path) = report {
        let mut text = serde_json::to_string_pretty(&json).expect("reports serialize");
        text.push('\n');
        std::fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut out = Output::new(json).row("suite", "class      cases passed failed  n/a  status");
    let width = reports.iter().map(|r| r.suite.len()).max().unwrap_or(0);
    for r in &reports {
        let passed = r.cases - r.failures - r.inapplicable;
        let status = if r.gating_failed() {
            "FAIL"
        } else if r.failures > 0 {
            "counterexamples"
        } else {
            "ok"
        };
        let class = serde_json::to_value(r.classification).expect("enum serializes");
        out.rows.push((
            format!("{:<width$}", r.suite),
            format!(
                "{:<10} {:>5} {:>6} {:>6} {:>4}  {status}",
                class.as_str().unwrap_or_default(),
                r.cases,
                passed,
                r.failures,
                r.inapplicable
            ),
        ));
    }
    if reports.iter().any(VerificationReport::gating_failed) {
        out.code = EXIT_GATING;
    }
    Ok(out)
}
