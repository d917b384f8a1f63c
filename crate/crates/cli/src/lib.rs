//! The `scx` command line: builds objects from JSON, runs checks, and writes
//! reports as JSON or text.
//!
//! Exit codes: 0 success, 1 a check failed, 2 malformed input, 3 a violated
//! precondition.

pub mod report;
pub mod suites;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use scx_core::anodyne::{carpal, hom_via_slice, is_weak_bicategory, preperc, scaled_slice, swww, verify_filtration};
use scx_core::coherent::{hom_complex, hom_dimension_bound, marked_closure, scaled_nerve, MarkedSimpCategory};
use scx_core::decorations::{Decorated, DecoratedJson, ScaledSSet};
use scx_core::homology::homology;
use scx_core::segal::{free_hom, invertible_edges, is_category_object, PreSegalJson, PreSegalSet};
use scx_core::sset::{nerve, standard, CategoryJson, FinCategory, FiniteSimplicialSet, SSetJson, Standard};
use scx_core::subdivision::{jt_check, sd0, sd_plus0};
use scx_core::{Error, Verdict};

#[derive(Parser, Debug)]
#[command(name = "scx", version, about = "Finite checks on scaled and marked simplicial sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Shape {
    Simplex,
    Boundary,
    Horn,
    CollapsedK,
    /// The nerve of a category read from `--input`.
    Nerve,
    /// The scaled nerve of a category read from `--input`, with discrete homs.
    ScaledNerve,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Decoration {
    Flat,
    Sharp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Preperc,
    Swww,
    Carpal,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit a standard complex or a nerve as JSON.
    Build {
        #[arg(long, value_enum)]
        shape: Shape,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        i: usize,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        decoration: Option<Decoration>,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// The mapping complex of the coherent nerve between two vertices.
    Hom {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Read the base as scaled and emit the marked closure.
        #[arg(long)]
        scaled: bool,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// The scaled slice under a vertex, or its fiber over a second vertex.
    Slice {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: Option<String>,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// sd₀, or sd⁺₀ when the input is read as scaled.
    Subdivide {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        scaled: bool,
    },
    /// Certificates for every β fiber over the simplices of dimension at most `n`.
    JtCheck {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: usize,
        /// Homology degree bound; defaults to max(n, 1).
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Extension property against the scaled-anodyne generators.
    CheckBicat {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// Verify one of the built-in prism filtrations.
    CertifyFiltration {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        i: usize,
    },
    /// Segal condition and invertible edges.
    Segal {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// A hom-set of the free category on a preSegal set.
    FreeCat {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        bound: usize,
    },
    /// Integral homology with a contractibility grade.
    Homology {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        /// Record per-check runtimes (makes reports differ between runs).
        #[arg(long)]
        timings: bool,
    },
}

/// What a finished invocation prints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Response {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Json(_) | Error::Malformed(_) => 2,
            Error::Segal(_) => 1,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<Report, Failure>;

/// A command's result: the JSON value, an optional hand-written text form,
/// and the exit code.
struct Report {
    value: Value,
    text: Option<String>,
    code: i32,
}

impl Report {
    fn ok(v: impl Serialize) -> Self {
        Report { value: to_value(v), text: None, code: 0 }
    }

    fn with_code(mut self, failed: bool) -> Self {
        self.code = i32::from(failed);
        self
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

pub fn run<I, T>(args: I) -> Response
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let s = e.render().to_string();
            return if code == 0 { Response { code, stdout: s, stderr: String::new() } } else { Response { code, stdout: String::new(), stderr: s } };
        }
    };
    let (code, body) = match dispatch(&cli) {
        Ok(r) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&r.value).expect("json") + "\n",
                Format::Text => r.text.unwrap_or_else(|| render_text(&r.value, "")),
            };
            (r.code, body)
        }
        Err(f) => {
            let err = json!({ "error": f.message, "exit_code": f.code });
            return Response { code: f.code, stdout: String::new(), stderr: serde_json::to_string(&err).expect("json") + "\n" };
        }
    };
    match &cli.out {
        Some(path) => match fs::write(path, &body) {
            Ok(()) => Response { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Response { code: 3, stdout: String::new(), stderr: format!("cannot write {}: {e}\n", path.display()) },
        },
        None => Response { code, stdout: body, stderr: String::new() },
    }
}

/// Indented `key: value` lines, in the (sorted) key order of the JSON value.
fn render_text(v: &Value, indent: &str) -> String {
    let mut out = String::new();
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if x.is_object() || (x.is_array() && x.as_array().is_some_and(|a| a.iter().any(|y| y.is_object()))) {
                    out += &format!("{indent}{k}:\n{}", render_text(x, &format!("{indent}  ")));
                } else {
                    out += &format!("{indent}{k}: {x}\n");
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                out += &format!("{indent}-\n{}", render_text(x, &format!("{indent}  ")));
            }
        }
        x => out += &format!("{indent}{x}\n"),
    }
    out
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure { code: 2, message: format!("cannot read {}: {e}", path.display()) })
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Error::Json(format!("{}: {e}", path.display())).into())
}

/// A bare simplicial set, or the base of a decorated one.
fn read_sset(path: &Path) -> Result<FiniteSimplicialSet, Failure> {
    let v: Value = parse(path)?;
    let j: SSetJson = match serde_json::from_value::<SSetJson>(v.clone()) {
        Ok(j) => j,
        Err(_) => serde_json::from_value::<DecoratedJson>(v).map_err(Error::from)?.base,
    };
    Ok(FiniteSimplicialSet::from_json(&j)?)
}

/// A scaled simplicial set; a bare simplicial set is read as flat.
fn read_scaled(path: &Path) -> Result<ScaledSSet, Failure> {
    let v: Value = parse(path)?;
    let j = match serde_json::from_value::<DecoratedJson>(v.clone()) {
        Ok(j) => j,
        Err(_) => DecoratedJson { base: serde_json::from_value(v).map_err(Error::from)?, marked: None, thin: None, cones: None },
    };
    Ok(ScaledSSet::from_json(&j)?)
}

fn read_category(path: &Path) -> Result<FinCategory, Failure> {
    Ok(FinCategory::from_json(&parse::<CategoryJson>(path)?)?)
}

fn verdict_failed<W>(v: &Verdict<W>) -> bool {
    !v.is_yes()
}

fn dispatch(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Build { shape, n, i, input, decoration, bound } => {
            let need_input = || input.as_deref().ok_or_else(|| Failure { code: 3, message: "this shape needs --input".into() });
            let base = match shape {
                Shape::Simplex => standard(Standard::Simplex(*n))?,
                Shape::Boundary => standard(Standard::Boundary(*n))?,
                Shape::Horn => standard(Standard::Horn(*n, *i))?,
                Shape::CollapsedK => standard(Standard::CollapsedK)?,
                Shape::Nerve => nerve(&read_category(need_input()?)?, *bound),
                Shape::ScaledNerve => {
                    let c = read_category(need_input()?)?;
                    return Ok(Report::ok(scaled_nerve(&MarkedSimpCategory::discrete(&c), *bound).to_json()));
                }
            };
            Ok(match decoration {
                None => Report::ok(base.to_json()),
                Some(Decoration::Flat) => Report::ok(ScaledSSet::flat(&base).to_json()),
                Some(Decoration::Sharp) => Report::ok(ScaledSSet::sharp(&base).to_json()),
            })
        }
        Command::Hom { base, from, to, scaled, bound } => {
            if *scaled {
                let s = read_scaled(base)?;
                let b = match bound {
                    Some(b) => *b,
                    None => hom_dimension_bound(&s.base, from, to)?,
                };
                let m = marked_closure(&s, from, to, b)?;
                Ok(Report::ok(json!({ "bound": b, "complex": m.to_json() })))
            } else {
                let s = read_sset(base)?;
                let b = match bound {
                    Some(b) => *b,
                    None => hom_dimension_bound(&s, from, to)?,
                };
                let h = hom_complex(&s, from, to, b)?;
                Ok(Report::ok(json!({ "bound": b, "f_vector": h.set.f_vector(), "complex": h.set.to_json() })))
            }
        }
        Command::Slice { input, from, to, bound } => {
            let c = read_scaled(input)?;
            let m = match to {
                Some(y) => hom_via_slice(&c, from, y, *bound)?,
                None => scaled_slice(&c, from, *bound)?.set,
            };
            Ok(Report::ok(json!({ "bound": bound, "f_vector": m.base.f_vector(), "complex": m.to_json() })))
        }
        Command::Subdivide { input, scaled } => {
            let sd = if *scaled { sd_plus0(&read_scaled(input)?)? } else { sd0(&read_sset(input)?)? };
            Ok(Report::ok(sd.to_json()))
        }
        Command::JtCheck { input, n, bound } => {
            let x = read_sset(input)?;
            let certs = jt_check(&x, *n, *n, bound.unwrap_or((*n).max(1)))?;
            let failed = certs.iter().any(|(_, c)| !c.is_contractible_grade());
            let fibers: Vec<Value> = certs.iter().map(|(s, c)| json!({ "simplex": x.label(s.gen), "word": s.word, "certificate": c })).collect();
            Ok(Report::ok(json!({ "n": n, "fibers": fibers })).with_code(failed))
        }
        Command::CheckBicat { input, bound } => {
            let v = is_weak_bicategory(&read_scaled(input)?, *bound)?;
            let failed = verdict_failed(&v);
            Ok(Report::ok(v).with_code(failed))
        }
        Command::CertifyFiltration { family, n, i } => {
            let f = match family {
                Family::Preperc => preperc(*n)?,
                Family::Swww => swww(*n, *i)?,
                Family::Carpal => carpal(*n)?,
            };
            match verify_filtration(&f) {
                Ok(c) => Ok(Report { text: Some(c.to_string()), ..Report::ok(&c) }),
                Err(e) => Ok(Report::ok(json!({ "status": "fail", "reason": e.to_string() })).with_code(true)),
            }
        }
        Command::Segal { input, bound } => {
            let x = read_sset(input)?;
            let b = bound.unwrap_or(x.dim().max(3));
            let v = is_category_object(&x, b);
            let failed = verdict_failed(&v);
            let mut out = json!({ "category_object": v });
            if !failed {
                let inv = invertible_edges(&x)?;
                out["invertible_edges"] = json!(inv.iter().filter(|e| !e.is_degenerate()).map(|e| x.label(e.gen)).collect::<Vec<_>>());
            }
            Ok(Report::ok(out).with_code(failed))
        }
        Command::FreeCat { input, from, to, bound } => {
            let p = PreSegalSet::from_json(&parse::<PreSegalJson>(input)?)?;
            Ok(Report::ok(free_hom(&p, from, to, *bound)?))
        }
        Command::Homology { input, bound } => {
            let x = read_sset(input)?;
            Ok(Report::ok(homology(&x, bound.unwrap_or(x.dim()))))
        }
        Command::Verify { suite, timings } => {
            let names: Vec<&str> = if suite == "all" { suites::SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut reports = Vec::new();
            for name in names {
                match suites::run_suite(name, cli.seed, *timings) {
                    Some(r) => reports.push(r),
                    None => return Err(Failure { code: 3, message: format!("unknown suite `{suite}`; expected one of: all, {}", suites::SUITES.join(", ")) }),
                }
            }
            let failed = reports.iter().any(|r| !r.passed);
            let text = reports.iter().map(|r| r.to_string()).collect::<String>();
            let value = if reports.len() == 1 { to_value(&reports[0]) } else { to_value(&reports) };
            Ok(Report { value, text: Some(text), code: i32::from(failed) })
        }
    }
}
