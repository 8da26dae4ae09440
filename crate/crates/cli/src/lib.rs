//! Command-line front end for the Killing tensor engine.
//!
//! [`run`] takes an argument vector and returns the exit status together
//! with everything that would be written to stdout and stderr, so the whole
//! interface can be exercised in-process. Reports are JSON (one object per
//! line in batch mode) or flattened `key: value` text. Rationals are always
//! written as strings.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use thiserror::Error;

use ktweb_core::exact_kernel::{parse_rational, rational_to_f64, Rational};
use ktweb_core::killing_spaces::Space;
use ktweb_core::web_classifier::FLOAT_TOLERANCE;

mod commands;
pub mod selfcheck;

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] ktweb_core::Error),
}

impl CliError {
    /// 2 for anything wrong with the input itself, 1 for domain errors.
    pub fn status(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Engine(ktweb_core::Error::BadRational(_) | ktweb_core::Error::Arity { .. }) => 2,
            CliError::Engine(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeneratorKind {
    /// Induced generators on one parameter space.
    Sigma,
    /// Generators on tensor parameters plus the point.
    Extended,
    /// Generators on vector and tensor parameters together (Euclidean).
    Joint,
}

#[derive(Debug, Parser)]
#[command(name = "ktweb", version, about = "Isometry invariants and web classification of Killing tensors in the Euclidean and Minkowski planes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Output::Json, global = true)]
    output: Output,
    #[arg(long, value_enum, default_value_t = Mode::Exact, global = true)]
    mode: Mode,
    /// Relative zero tolerance in float mode.
    #[arg(long, default_value_t = FLOAT_TOLERANCE, global = true)]
    tol: f64,
}

#[derive(Debug, Args)]
struct Input {
    #[arg(long, value_parser = parse_space)]
    space: Space,
    /// Comma-separated parameters, e.g. "0,0,-1,0,0,1/4".
    #[arg(long, allow_hyphen_values = true, required_unless_present = "batch", conflicts_with = "batch")]
    params: Option<String>,
    /// JSON file holding an array of parameter vectors; one report per line.
    #[arg(long)]
    batch: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fundamental invariants (I1, I2, I3), plus auxiliary ones in the Minkowski plane.
    Invariants(Input),
    /// Fundamental covariants (C1, C2) and their sign classes.
    Covariants {
        #[command(flatten)]
        input: Input,
        /// Evaluate at this point as well, e.g. "1,-2".
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Classify the web (6 parameters, or the 5 nontrivial ones).
    Classify(Input),
    /// Moving frame normalizing p3, p4, p5 to zero.
    Frame(Input),
    /// Canonical form of an equivalence class.
    Canonical {
        #[arg(long, value_parser = parse_space)]
        space: Space,
        #[arg(long = "class")]
        class: String,
        #[arg(long, allow_hyphen_values = true)]
        k2: Option<String>,
    },
    /// Split into a multiple of the metric and a nontrivial part.
    Decompose(Input),
    /// Infinitesimal generators of the induced action.
    Generators {
        #[arg(long, value_parser = parse_space)]
        space: Space,
        #[arg(long, value_enum, default_value_t = GeneratorKind::Sigma)]
        kind: GeneratorKind,
        #[arg(long, default_value_t = 2)]
        valence: u8,
    },
    /// Dimension of the orbit through a parameter vector.
    OrbitDim(Input),
    /// Joint invariants of a Euclidean Killing vector and Killing tensor.
    Joint {
        /// Vector parameters "a1,a2,a3".
        #[arg(long, allow_hyphen_values = true)]
        kv: String,
        /// Tensor parameters "b1,...,b6".
        #[arg(long, allow_hyphen_values = true)]
        params: String,
    },
    /// Run the verification suite and report pass/fail per criterion.
    Verify {
        /// Smaller random samples.
        #[arg(long)]
        quick: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn parse_space(text: &str) -> Result<Space, String> {
    text.parse::<Space>().map_err(|e| e.to_string())
}

/// Parameter values in the requested arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub enum Values {
    Exact(Vec<Rational>),
    Float(Vec<f64>),
}

impl Values {
    fn parse(items: &[String], mode: Mode) -> CliResult<Self> {
        match mode {
            Mode::Exact => Ok(Values::Exact(items.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?)),
            Mode::Float => Ok(Values::Float(items.iter().map(|s| parse_float(s)).collect::<CliResult<_>>()?)),
        }
    }

    pub(crate) fn len(&self) -> usize {
        match self {
            Values::Exact(v) => v.len(),
            Values::Float(v) => v.len(),
        }
    }

    pub(crate) fn to_json(&self) -> Value {
        match self {
            Values::Exact(v) => Value::Array(v.iter().map(exact).collect()),
            Values::Float(v) => Value::Array(v.iter().map(|x| float(*x)).collect()),
        }
    }
}

fn parse_float(text: &str) -> CliResult<f64> {
    text.trim()
        .parse::<f64>()
        .or_else(|_| parse_rational(text).map(|r| rational_to_f64(&r)))
        .map_err(|_| CliError::Engine(ktweb_core::Error::BadRational(text.to_string())))
}

pub(crate) fn split_list(text: &str) -> Vec<String> {
    if text.trim().is_empty() {
        return Vec::new();
    }
    text.split(',').map(|s| s.trim().to_string()).collect()
}

pub(crate) fn exact(value: &Rational) -> Value {
    Value::String(value.to_string())
}

pub(crate) fn float(value: f64) -> Value {
    serde_json::Number::from_f64(value).map_or(Value::Null, Value::Number)
}

/// Entries of a batch file: each is an array of numbers/strings or one
/// comma-separated string.
fn read_batch(path: &Path) -> CliResult<Vec<Vec<String>>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{} is not JSON: {e}", path.display())))?;
    let Value::Array(entries) = value else {
        return Err(CliError::Usage("batch file must hold a JSON array".into()));
    };
    entries
        .iter()
        .map(|entry| match entry {
            Value::String(s) => Ok(split_list(s)),
            Value::Array(items) => items
                .iter()
                .map(|item| match item {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(n) => Ok(n.to_string()),
                    other => Err(CliError::Usage(format!("not a parameter value: {other}"))),
                })
                .collect(),
            other => Err(CliError::Usage(format!("not a parameter vector: {other}"))),
        })
        .collect()
}

/// Flattened `key: value` lines.
fn to_text(value: &Value) -> String {
    fn walk(prefix: &str, value: &Value, out: &mut Vec<String>) {
        match value {
            Value::Object(map) => {
                for (k, v) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, v, out);
                }
            }
            Value::Array(items) if items.iter().all(|v| !v.is_object() && !v.is_array()) => {
                let parts: Vec<String> = items.iter().map(scalar_text).collect();
                out.push(format!("{prefix}: [{}]", parts.join(", ")));
            }
            Value::Array(items) => {
                for (i, v) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), v, out);
                }
            }
            other => out.push(format!("{prefix}: {}", scalar_text(other))),
        }
    }
    let mut out = Vec::new();
    walk("", value, &mut out);
    out.join("\n")
}

fn scalar_text(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render(value: &Value, output: Output) -> String {
    match output {
        Output::Json => value.to_string(),
        Output::Text => to_text(value),
    }
}

/// Settings shared by all subcommands.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Context {
    pub mode: Mode,
    pub tol: f64,
}

fn with_header(command: &str, space: Option<Space>, ctx: Context, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("command".into(), json!(command));
    if let Some(space) = space {
        map.insert("space".into(), json!(space.name()));
    }
    map.insert("mode".into(), json!(match ctx.mode {
        Mode::Exact => "exact",
        Mode::Float => "float",
    }));
    if let Value::Object(fields) = body {
        map.extend(fields);
    }
    Value::Object(map)
}

type Handler<'a> = &'a dyn Fn(Space, &Values, Context) -> CliResult<Value>;

/// Runs a parameter-taking command on one vector or on every vector of a batch.
fn run_input(name: &str, input: &Input, ctx: Context, output: Output, handler: Handler<'_>) -> CliResult<(i32, String, String)> {
    let vectors = match (&input.params, &input.batch) {
        (Some(p), _) => vec![split_list(p)],
        (None, Some(path)) => read_batch(path)?,
        (None, None) => return Err(CliError::Usage("either --params or --batch is required".into())),
    };
    let single = input.batch.is_none();
    let (mut status, mut stdout, mut stderr) = (0, Vec::new(), Vec::new());
    for items in &vectors {
        let result = Values::parse(items, ctx.mode).and_then(|values| handler(input.space, &values, ctx));
        match result {
            Ok(body) => stdout.push(render(&with_header(name, Some(input.space), ctx, body), output)),
            Err(e) if single => return Err(e),
            Err(e) => {
                status = status.max(e.status());
                stderr.push(format!("error: {e}"));
                let body = json!({ "input": items, "error": e.to_string() });
                stdout.push(render(&with_header(name, Some(input.space), ctx, body), output));
            }
        }
    }
    Ok((status, lines(&stdout), lines(&stderr)))
}

fn lines(items: &[String]) -> String {
    items.iter().map(|l| format!("{l}\n")).collect()
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { status: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { status: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    match dispatch(&cli) {
        Ok((status, stdout, stderr)) => Outcome { status, stdout, stderr },
        Err(e) => Outcome { status: e.status(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn dispatch(cli: &Cli) -> CliResult<(i32, String, String)> {
    let ctx = Context { mode: cli.mode, tol: cli.tol };
    let out = cli.output;
    let single = |name: &str, space: Option<Space>, body: CliResult<Value>| -> CliResult<(i32, String, String)> {
        Ok((0, format!("{}\n", render(&with_header(name, space, ctx, body?), out)), String::new()))
    };
    match &cli.command {
        Command::Invariants(input) => run_input("invariants", input, ctx, out, &commands::invariants),
        Command::Covariants { input, point } => {
            let point = point.as_deref().map(split_list);
            let handler = |space, values: &Values, ctx| commands::covariants(space, values, ctx, point.as_deref());
            run_input("covariants", input, ctx, out, &handler)
        }
        Command::Classify(input) => run_input("classify", input, ctx, out, &commands::classify),
        Command::Frame(input) => run_input("frame", input, ctx, out, &commands::frame),
        Command::Decompose(input) => run_input("decompose", input, ctx, out, &commands::decompose),
        Command::OrbitDim(input) => run_input("orbit-dim", input, ctx, out, &commands::orbit_dim),
        Command::Canonical { space, class, k2 } => {
            single("canonical", Some(*space), commands::canonical(*space, class, k2.as_deref()))
        }
        Command::Generators { space, kind, valence } => {
            single("generators", Some(*space), commands::generators(*space, *kind, *valence))
        }
        Command::Joint { kv, params } => single("joint", Some(Space::Euclidean), commands::joint(kv, params, ctx)),
        Command::Verify { quick, seed } => Ok(selfcheck::verify_command(*quick, *seed, out)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ktweb(args: &[&str]) -> Outcome {
        run(std::iter::once("ktweb").chain(args.iter().copied()))
    }

    fn json_of(outcome: &Outcome) -> Value {
        serde_json::from_str(outcome.stdout.trim()).expect("one JSON object")
    }

    #[test]
    fn classify_minkowski_ec2() {
        let out = ktweb(&["classify", "--space", "minkowski", "--params", "0,0,0,0,1"]);
        assert_eq!(out.status, 0);
        assert_eq!(json_of(&out)["class"], "EC2");
    }

    #[test]
    fn invariants_are_rational_strings() {
        let out = ktweb(&["invariants", "--space", "minkowski", "--params", "0,0,-1,0,0,1/4"]);
        let v = json_of(&out);
        assert_eq!(v["invariants"]["I1"], "-1/4");
        assert_eq!(v["invariants"]["I3"], "1/4");
        assert_eq!(v["auxiliary"]["k4"], "4");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(ktweb(&["classify", "--space", "euclidean", "--params", "0,0,0"]).status, 2);
        assert_eq!(ktweb(&["invariants", "--space", "euclidean", "--params", "1,1/0,0,0,0,0"]).status, 2);
        assert_eq!(ktweb(&["invariants", "--space", "hyperbolic", "--params", "1,0,0,0,0,0"]).status, 2);
        // EC6 lies outside the arctanh domain.
        assert_eq!(ktweb(&["frame", "--space", "minkowski", "--params", "1/4,0,1/4,0,0,1/4"]).status, 1);
        assert_eq!(ktweb(&["--help"]).status, 0);
    }

    #[test]
    fn float_mode_and_text_output() {
        let out = ktweb(&["--mode", "float", "classify", "--space", "euclidean", "--params", "0,0,0,0,0,1"]);
        assert_eq!(json_of(&out)["class"], "Polar");
        let text = ktweb(&["--output", "text", "canonical", "--space", "euclidean", "--class", "EC3"]);
        assert!(text.stdout.lines().any(|l| l == "web_class: Parabolic"), "{}", text.stdout);
    }

    #[test]
    fn canonical_k2_rules() {
        assert_eq!(ktweb(&["canonical", "--space", "minkowski", "--class", "EC5"]).status, 1);
        let out = ktweb(&["canonical", "--space", "minkowski", "--class", "ec5", "--k2", "1/2"]);
        assert_eq!(json_of(&out)["nontrivial"][0], "1");
    }

    #[test]
    fn batch_reports_each_line_and_keeps_going() {
        let path = std::env::temp_dir().join(format!("ktweb-unit-{}.json", std::process::id()));
        std::fs::write(&path, r#"[["0","0","0","0","0","1"], "1,2,3", [1, -1, 0, 0, 0, 0]]"#).unwrap();
        let out = ktweb(&["classify", "--space", "minkowski", "--batch", path.to_str().unwrap()]);
        std::fs::remove_file(&path).unwrap();
        assert_eq!(out.status, 2);
        let lines: Vec<Value> = out.stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0]["class"], "EC2");
        assert!(lines[1]["error"].is_string());
        // A multiple of the metric has no web.
        assert_eq!(lines[2]["class"], Value::Null);
    }

    #[test]
    fn covariants_at_a_point() {
        let out = ktweb(&["covariants", "--space", "euclidean", "--params", "1,0,0,0,0,1", "--point", "1,2"]);
        let v = json_of(&out);
        assert_eq!(v["at_point"]["C2"], "-3");
        assert_eq!(v["sign_classes"]["C1"], "POS");
    }
}
