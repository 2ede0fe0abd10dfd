//! The `fieldext` command line: classify, composite, magid and verify.
//!
//! Every command builds one JSON document `{tool_version, input, report,
//! notes}`; `--format text` renders that document. Exit codes: 0 success,
//! 1 input error, 2 violation or internal disagreement, 3 capability limit.

pub mod parse;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::classify;
use crate::composite::CompositeRing;
use crate::error::{Error, Result};
use crate::harness::{self, HarnessOptions};
use crate::magid;
use parse::InputSpec;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_CAPABILITY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "fieldext", version, about = "Exact field extensions and polynomial composites K + XL[X]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Degree, separability, normality, Galois group and hypothesis flags.
    Classify(ExtArgs),
    /// Noetherian verdict for K + XL[X] and a generation certificate for XL[X].
    Composite(ExtArgs),
    /// Separability conditions on the tensor algebra M ⊗_K L.
    Magid(ExtArgs),
    /// Run every characterization check over a catalog.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InfiniteArg {
    Algebraic,
    Transcendental,
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Degree bound for certificates.
    #[arg(long, default_value_t = 6)]
    pub bound: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ExtArgs {
    /// Q, GF(p) or GF(p)(t).
    #[arg(long)]
    pub base: String,
    /// Defining polynomial in x of the next tower level; repeat for towers.
    #[arg(long = "ext")]
    pub ext: Vec<String>,
    /// Accept defining polynomials whose irreducibility cannot be verified.
    #[arg(long)]
    pub trusted: bool,
    /// Describe an infinite extension of the base instead of a tower.
    #[arg(long, value_enum)]
    pub infinite: Option<InfiniteArg>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// `builtin` or the path of a JSON catalog file.
    #[arg(long, default_value = "builtin")]
    pub catalog: String,
    #[command(flatten)]
    pub common: CommonArgs,
}

/// Output of one command: the JSON document and its exit code.
pub struct Outcome {
    pub document: Json,
    pub code: i32,
    pub format: Format,
}

impl Outcome {
    pub fn render(&self) -> String {
        match self.format {
            Format::Json => serde_json::to_string_pretty(&self.document).unwrap() + "\n",
            Format::Text => render_text(&self.document),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Capability(_) | Error::NotGenerated { .. } => EXIT_CAPABILITY,
        Error::Internal(_) => EXIT_VIOLATION,
        _ => EXIT_INPUT,
    }
}

fn error_json(e: &Error) -> Json {
    let kind = match e {
        Error::Domain(_) => "domain",
        Error::DivisionByZero => "division_by_zero",
        Error::Capability(_) => "capability",
        Error::Construction(_) => "construction",
        Error::NotGenerated { .. } => "not_generated",
        Error::Parse { .. } => "parse",
        Error::Internal(_) => "internal",
    };
    let mut out = json!({"kind": kind, "message": e.to_string()});
    if let Error::Parse { column, .. } = e {
        out["column"] = json!(column);
    }
    out
}

fn to_json<T: Serialize>(v: &T) -> Json {
    serde_json::to_value(v).expect("reports serialize")
}

impl ExtArgs {
    fn spec(&self) -> InputSpec {
        InputSpec {
            name: None,
            base: self.base.clone(),
            ext: self.ext.clone(),
            trusted: self.trusted,
            infinite: self.infinite.map(|k| match k {
                InfiniteArg::Algebraic => "algebraic".to_string(),
                InfiniteArg::Transcendental => "transcendental".to_string(),
            }),
            expected: Default::default(),
        }
    }

    fn input_json(&self, command: &str) -> Json {
        let mut v = to_json(&self.spec());
        v["command"] = json!(command);
        v["bound"] = json!(self.common.bound);
        v["seed"] = json!(self.common.seed);
        v
    }
}

fn document(input: Json, report: Json, notes: Vec<String>) -> Json {
    json!({"tool_version": TOOL_VERSION, "input": input, "report": report, "notes": notes})
}

fn failure(input: Json, e: &Error, format: Format) -> Outcome {
    let doc = json!({"tool_version": TOOL_VERSION, "input": input, "error": error_json(e), "notes": Vec::<String>::new()});
    Outcome { document: doc, code: exit_code(e), format }
}

fn cmd_classify(args: &ExtArgs) -> Result<(Json, Vec<String>)> {
    let built = args.spec().build()?;
    let report = classify::classify(&built.extension)?;
    let mut notes = Vec::new();
    if !report.reasons.is_empty() {
        notes.push("some properties are undecided; see report.reasons".to_string());
    }
    Ok((to_json(&report), notes))
}

fn cmd_composite(args: &ExtArgs) -> Result<(Json, Vec<String>)> {
    let built = args.spec().build()?;
    let ring = CompositeRing::new(&built.extension);
    let mut report = json!({
        "extension": built.extension.describe(),
        "degree": to_json(&built.extension.degree()),
        "noetherian": ring.is_noetherian(),
    });
    let mut notes = Vec::new();
    if ring.is_noetherian() {
        let gens = ring.xl_ideal_generators()?;
        let cert = ring.certify_generation(&gens, args.common.bound)?;
        report["generators"] = to_json(&gens);
        report["certificate"] = to_json(&cert);
    } else {
        report["generators"] = Json::Null;
        notes.push("XL[X] is not finitely generated over an infinite extension".to_string());
    }
    Ok((report, notes))
}

fn cmd_magid(args: &ExtArgs) -> Result<(Json, Vec<String>)> {
    let built = args.spec().build()?;
    let report = magid::magid_check(&built.extension, args.common.seed)?;
    let notes = report.notes.clone();
    Ok((to_json(&report), notes))
}

/// Catalog from `builtin` or a JSON file holding a list of input specs.
pub fn load_catalog(name: &str) -> Result<Vec<InputSpec>> {
    if name == "builtin" {
        return Ok(harness::builtin_catalog());
    }
    let text = std::fs::read_to_string(PathBuf::from(name))
        .map_err(|e| Error::domain(format!("cannot read catalog {name}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse { column: e.column(), message: format!("catalog {name}: {e}") })
}

fn run_verify(args: &VerifyArgs) -> Outcome {
    let input = json!({"command": "verify", "catalog": args.catalog, "bound": args.common.bound, "seed": args.common.seed});
    let fmt = args.common.format;
    let table = load_catalog(&args.catalog)
        .and_then(|cat| harness::run_all(&cat, HarnessOptions { bound: args.common.bound, seed: args.common.seed }));
    match table {
        Ok(t) => {
            let code = if t.passed() { EXIT_OK } else { EXIT_VIOLATION };
            let notes = t.notes.clone();
            Outcome { document: document(input, to_json(&t), notes), code, format: fmt }
        }
        Err(e) => failure(input, &e, fmt),
    }
}

/// Runs one parsed command.
pub fn run(cli: &Cli) -> Outcome {
    let (args, name, f): (&ExtArgs, &str, fn(&ExtArgs) -> Result<(Json, Vec<String>)>) = match &cli.command {
        Command::Classify(a) => (a, "classify", cmd_classify),
        Command::Composite(a) => (a, "composite", cmd_composite),
        Command::Magid(a) => (a, "magid", cmd_magid),
        Command::Verify(v) => return run_verify(v),
    };
    let input = args.input_json(name);
    match f(args) {
        Ok((report, notes)) => Outcome { document: document(input, report, notes), code: EXIT_OK, format: args.common.format },
        Err(e) => failure(input, &e, args.common.format),
    }
}

/// Parses `argv`, runs, prints, and returns the exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let out = run(&cli);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.render().as_bytes());
    if let Some(err) = out.document.get("error") {
        eprintln!("fieldext: {}", err["message"].as_str().unwrap_or("error"));
    }
    out.code
}

// ---- text rendering of the JSON document ----

fn scalar(v: &Json) -> String {
    match v {
        Json::String(s) => s.clone(),
        Json::Null => "-".to_string(),
        other => other.to_string(),
    }
}

fn is_scalar(v: &Json) -> bool {
    !matches!(v, Json::Object(_) | Json::Array(_))
}

fn render_value(out: &mut String, key: &str, v: &Json, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Json::Object(m) if key == "hypotheses" || key == "hypothesis_flags" => {
            let parts: Vec<String> = m.iter().map(|(k, x)| format!("{k}={}", scalar(x))).collect();
            out.push_str(&format!("{pad}{key}: {}\n", parts.join(", ")));
        }
        Json::Object(m) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, x) in m {
                render_value(out, k, x, indent + 1);
            }
        }
        Json::Array(items) if items.iter().all(is_scalar) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{pad}{key}: [{}]\n", parts.join(", ")));
        }
        Json::Array(items) if key == "rows" => {
            out.push_str(&format!("{pad}{key}:\n"));
            for r in items {
                let mut line = format!(
                    "{pad}  {:<4} {:<22} {:<19} {}",
                    scalar(&r["id"]),
                    scalar(&r["direction"]),
                    scalar(&r["verdict"]),
                    scalar(&r["entry"])
                );
                if let Some(reason) = r.get("reason") {
                    line.push_str(&format!("  ({})", scalar(reason)));
                }
                out.push_str(line.trim_end());
                out.push('\n');
            }
        }
        Json::Array(items) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (i, x) in items.iter().enumerate() {
                render_value(out, &format!("[{i}]"), x, indent + 1);
            }
        }
        other => out.push_str(&format!("{pad}{key}: {}\n", scalar(other))),
    }
}

/// Indented `key: value` rendering; verdict rows become one line each.
pub fn render_text(doc: &Json) -> String {
    let mut out = String::new();
    if let Json::Object(m) = doc {
        for (k, v) in m {
            render_value(&mut out, k, v, 0);
        }
    }
    out
}
