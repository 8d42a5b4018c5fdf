//! Command-line front end.
//!
//! Exit codes: 0 success, 1 error diagnostics or a violated invariant,
//! 2 usage error, 3 state limit exceeded. Results go to stdout and
//! diagnostics to stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::codegen::{self, FrameworkDescriptor};
use crate::dataflow::{self, Element};
use crate::diagnostics::{has_errors, Code, Diagnostic, Span};
use crate::model::ArchitectureModel;
use crate::verify::{self, TransitionSystem};
use crate::wellformed;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

const ARGV: &str = "<command-line>";

#[derive(Debug, Parser)]
#[command(
    name = "sccadl",
    version,
    about = "Check, analyze, generate and verify SCC architectures"
)]
struct Cli {
    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse, resolve and run every wellformedness check.
    Check {
        file: PathBuf,
        /// Descriptor from a previous generation; changed callbacks are
        /// reported as W020.
        #[arg(long, value_name = "DESCRIPTOR")]
        baseline: Option<PathBuf>,
    },
    /// Query dataflow facts.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        query: Query,
    },
    /// Export the interaction graph.
    Graph {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
    /// Generate the Rust programming framework into `<DIR>/generated/`.
    Generate {
        file: PathBuf,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        /// Also write `generated/framework.json`.
        #[arg(long)]
        descriptor: bool,
    },
    /// Check interaction invariants.
    Verify {
        file: PathBuf,
        #[arg(long, value_name = "INV")]
        invariants: PathBuf,
        /// Write the Promela model to this path.
        #[arg(long, value_name = "OUT")]
        emit_promela: Option<PathBuf>,
        /// Maximum number of explored states [default: $SCCADL_STATE_LIMIT or 1000000]
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
        state_limit: Option<u64>,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Query {
    /// Elements possibly activated by a publication of SRC.
    #[arg(long, value_name = "SRC")]
    impact: Option<String>,
    /// Elements activated by every reaction to SRC.
    #[arg(long, value_name = "SRC")]
    must_impact: Option<String>,
    /// Elements whose publications can lead to EL being activated.
    #[arg(long, value_name = "EL")]
    activators: Option<String>,
    /// Unreachable elements and unused sources.
    #[arg(long)]
    dead: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Dot,
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    json: bool,
}

impl Io<'_> {
    fn diagnostics(&mut self, diags: &[Diagnostic]) {
        for d in diags {
            let _ = writeln!(self.err, "{d}");
        }
    }

    fn json(&mut self, v: &Value) {
        let _ = writeln!(self.out, "{}", canonical_json(v));
    }

    /// Reports front-end failures; returns the exit code.
    fn failed(&mut self, diags: &[Diagnostic]) -> i32 {
        self.diagnostics(diags);
        if self.json {
            self.json(&diagnostics_report(diags));
        }
        EXIT_FAILURE
    }
}

/// Compact JSON with object keys in sorted order.
pub fn canonical_json(v: &Value) -> String {
    // serde_json's default map is a BTreeMap, so keys come out sorted.
    serde_json::to_string(v).expect("JSON values always serialize")
}

fn diagnostics_report(diags: &[Diagnostic]) -> Value {
    json!({
        "diagnostics": diags.iter().map(Diagnostic::to_json).collect::<Vec<_>>(),
        "ok": !has_errors(diags),
    })
}

fn io_error(path: &Path, e: &std::io::Error) -> Diagnostic {
    Diagnostic::new(
        Code::IoError,
        Span::default(),
        format!("cannot access file: {e}"),
    )
    .in_file(path.display().to_string())
}

fn read(path: &Path) -> Result<String, Diagnostic> {
    std::fs::read_to_string(path).map_err(|e| io_error(path, &e))
}

/// Front end with file names attached. Returns the model only when no
/// error was reported; warnings are printed either way.
fn load(path: &Path, io: &mut Io<'_>) -> Result<(ArchitectureModel, Vec<Diagnostic>), i32> {
    let text = match read(path) {
        Ok(t) => t,
        Err(d) => return Err(io.failed(&[d])),
    };
    let compiled = crate::compile(&text);
    let file = path.display().to_string();
    let diags: Vec<Diagnostic> = compiled
        .diagnostics
        .iter()
        .cloned()
        .map(|d| d.in_file(file.clone()))
        .collect();
    match (compiled.ok(), compiled.model) {
        (true, Some(m)) => Ok((m, diags)),
        _ => Err(io.failed(&diags)),
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let mut io = Io {
        out,
        err,
        json: cli.json,
    };
    match cli.command {
        Command::Check { file, baseline } => check(&file, baseline.as_deref(), &mut io),
        Command::Analyze { file, query } => analyze(&file, &query, &mut io),
        Command::Graph { file, format } => graph(&file, format, &mut io),
        Command::Generate {
            file,
            out,
            descriptor,
        } => generate(&file, &out, descriptor, &mut io),
        Command::Verify {
            file,
            invariants,
            emit_promela,
            state_limit,
        } => verify(
            &file,
            &invariants,
            emit_promela.as_deref(),
            state_limit.map_or_else(verify::state_limit_from_env, |n| {
                usize::try_from(n).unwrap_or(usize::MAX)
            }),
            &mut io,
        ),
    }
}

fn check(file: &Path, baseline: Option<&Path>, io: &mut Io<'_>) -> i32 {
    let (model, mut diags) = match load(file, io) {
        Ok(x) => x,
        Err(code) => return code,
    };
    if let Some(path) = baseline {
        let text = match read(path) {
            Ok(t) => t,
            Err(d) => return io.failed(&[d]),
        };
        match FrameworkDescriptor::from_json(&text) {
            Ok(desc) => diags.extend(
                wellformed::check_signature_drift(&model, &desc)
                    .diagnostics
                    .into_iter()
                    .map(|d| d.in_file(file.display().to_string())),
            ),
            Err(e) => {
                let d = Diagnostic::new(
                    Code::SyntaxError,
                    Span::default(),
                    format!("invalid framework descriptor: {e}"),
                )
                .in_file(path.display().to_string());
                return io.failed(&[d]);
            }
        }
    }
    io.diagnostics(&diags);
    if io.json {
        io.json(&diagnostics_report(&diags));
    }
    EXIT_OK
}

fn analyze(file: &Path, query: &Query, io: &mut Io<'_>) -> i32 {
    let (model, warnings) = match load(file, io) {
        Ok(x) => x,
        Err(code) => return code,
    };
    io.diagnostics(&warnings);
    let g = dataflow::build_graph(&model);
    let lookup = |name: &str, io: &mut Io<'_>| -> Result<Element, i32> {
        g.lookup(name).map_err(|d| io.failed(&[d.in_file(ARGV)]))
    };
    let names: Vec<String> = if let Some(src) = &query.impact {
        match lookup(src, io) {
            Ok(e) => g.names(&dataflow::may_impact(&g, e)),
            Err(code) => return code,
        }
    } else if let Some(src) = &query.must_impact {
        match lookup(src, io) {
            Ok(e) => g.names(&dataflow::must_impact(&g, e)),
            Err(code) => return code,
        }
    } else if let Some(el) = &query.activators {
        match lookup(el, io) {
            Ok(e) => g.names(&dataflow::activators_of(&g, e)),
            Err(code) => return code,
        }
    } else {
        let dead = dataflow::dead_elements(&g);
        if io.json {
            let entries: Vec<Value> = dead
                .iter()
                .map(|&(e, code)| json!({"element": g.name(e), "code": code.as_str()}))
                .collect();
            io.json(&Value::Array(entries));
        } else {
            for (e, code) in dead {
                let _ = writeln!(io.out, "{code} {}", g.name(e));
            }
        }
        return EXIT_OK;
    };
    if io.json {
        io.json(&json!(names));
    } else {
        for n in names {
            let _ = writeln!(io.out, "{n}");
        }
    }
    EXIT_OK
}

fn graph(file: &Path, format: GraphFormat, io: &mut Io<'_>) -> i32 {
    let (model, warnings) = match load(file, io) {
        Ok(x) => x,
        Err(code) => return code,
    };
    io.diagnostics(&warnings);
    let g = dataflow::build_graph(&model);
    if io.json {
        io.json(&dataflow::graph_json(&g));
    } else {
        match format {
            GraphFormat::Dot => {
                let _ = write!(io.out, "{}", dataflow::to_dot(&g));
            }
        }
    }
    EXIT_OK
}

fn generate(file: &Path, out_dir: &Path, descriptor: bool, io: &mut Io<'_>) -> i32 {
    let (model, warnings) = match load(file, io) {
        Ok(x) => x,
        Err(code) => return code,
    };
    io.diagnostics(&warnings);
    let result = if descriptor {
        codegen::generate_with_descriptor(&model, out_dir)
    } else {
        codegen::generate_skeletons(&model, out_dir)
    };
    match result {
        Ok(files) => {
            let paths: Vec<String> = files
                .files
                .iter()
                .map(|f| files.dir.join(f).display().to_string())
                .collect();
            if io.json {
                io.json(&json!({ "files": paths }));
            } else {
                for p in paths {
                    let _ = writeln!(io.out, "{p}");
                }
            }
            EXIT_OK
        }
        Err(e) => {
            let d = Diagnostic::new(e.code(), Span::default(), e.to_string())
                .in_file(out_dir.display().to_string());
            io.failed(&[d])
        }
    }
}

fn verify(
    file: &Path,
    inv_path: &Path,
    promela: Option<&Path>,
    state_limit: usize,
    io: &mut Io<'_>,
) -> i32 {
    let (model, warnings) = match load(file, io) {
        Ok(x) => x,
        Err(code) => return code,
    };
    io.diagnostics(&warnings);
    let text = match read(inv_path) {
        Ok(t) => t,
        Err(d) => return io.failed(&[d]),
    };
    let invariants = match verify::parse_invariants(&text, &model) {
        Ok(i) => i,
        Err(errs) => {
            let file = inv_path.display().to_string();
            let errs: Vec<Diagnostic> = errs.into_iter().map(|d| d.in_file(file.clone())).collect();
            return io.failed(&errs);
        }
    };
    if let Some(path) = promela {
        if let Err(e) = std::fs::write(path, verify::emit_promela(&model, &invariants)) {
            return io.failed(&[io_error(path, &e)]);
        }
    }
    let ts = TransitionSystem::new(&model);
    let outcome = match verify::check(&ts, &invariants, state_limit) {
        Ok(o) => o,
        Err(d) => {
            io.failed(&[d.in_file(file.display().to_string())]);
            return EXIT_LIMIT;
        }
    };
    if io.json {
        io.json(&verify::report_json(&model, &invariants, &outcome.verdicts));
    } else {
        let _ = write!(
            io.out,
            "{}",
            verify::render_report(&model, &invariants, &outcome.verdicts)
        );
    }
    if outcome.verdicts.iter().all(verify::Verdict::holds) {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}
