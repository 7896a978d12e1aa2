use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use threefold::coherence::{catalog, run_families_timed, CoherenceReport, Family, SuiteConfig, Timings};
use threefold::functors::{Formalism, Mutation};
use threefold::linalg::Tolerance;

use crate::document::{resolve, DocumentError, InstanceDocument, FORMAT_VERSION};
use crate::verify::check_document;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "threefold",
    version,
    about = "Randomized coherence and absorption checks for the finite formalism"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate an instance document, check its objects, then run the
    /// generated suites of the selected families.
    Verify {
        path: PathBuf,
        /// coherence, section3, involutive, fell, or a single family name;
        /// repeatable. All families when omitted.
        #[arg(long = "family")]
        families: Vec<String>,
        /// Check only the objects of the document.
        #[arg(long)]
        document_only: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run every family on generated instances.
    Fuzz {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Describe a check id.
    Explain { id: String },
    /// List all check ids.
    List,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    /// Absolute tolerance on residuals.
    #[arg(long, env = "THREEFOLD_TOL", default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 5)]
    max_atoms: usize,
    #[arg(long, default_value_t = 3)]
    max_fiber_dim: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// A mutation name, or a check id to break with the mutation that
    /// targets it.
    #[arg(long)]
    mutate: Option<String>,
    /// Also write the JSON report to this file.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// The JSON form of a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub version: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub document: Option<String>,
    pub report: CoherenceReport,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        let code = match e {
            DocumentError::Parse { .. } | DocumentError::Version(_) => EXIT_USAGE,
            DocumentError::Invalid { .. } => EXIT_INVALID,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run(args: impl IntoIterator<Item = OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            if !f.message.is_empty() {
                let _ = writeln!(err, "error: {}", f.message);
            }
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Explain { id } => explain(&id, out),
        Command::List => {
            for c in catalog::CHECKS {
                let fams: Vec<&str> = c.families.iter().map(|f| f.name()).collect();
                writeln!(out, "{:<24} {}", c.id, fams.join(",")).map_err(io)?;
            }
            Ok(EXIT_PASS)
        }
        Command::Fuzz { run } => {
            let (cfg, fx) = setup(&run)?;
            let (report, timings) = run_families_timed(&Family::ALL, &cfg, &fx);
            emit("fuzz", None, &report, &timings, &run, out, err)
        }
        Command::Verify {
            path,
            families,
            document_only,
            run,
        } => {
            let (cfg, fx) = setup(&run)?;
            let selected = select_families(&families)?;
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            let doc = InstanceDocument::parse(&text)?;
            let inst = resolve(&doc, cfg.tolerance.abs_eps())?;
            let mut results = check_document(&inst, &fx, cfg.tolerance);
            let mut timings = Timings::default();
            if !document_only {
                let (generated, t) = run_families_timed(&selected, &cfg, &fx);
                results.extend(generated.results);
                timings = t;
            }
            let report = CoherenceReport::new(cfg, fx.mutation().map(|m| m.to_string()), results);
            emit(
                "verify",
                Some(path.display().to_string()),
                &report,
                &timings,
                &run,
                out,
                err,
            )
        }
    }
}

fn io(e: std::io::Error) -> Failure {
    // A closed pipe (`threefold list | head`) is not worth a message.
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        return Failure {
            code: EXIT_PASS,
            message: String::new(),
        };
    }
    Failure {
        code: EXIT_USAGE,
        message: format!("write failed: {e}"),
    }
}

fn explain(id: &str, out: &mut dyn Write) -> Result<i32, Failure> {
    let info = catalog::lookup(id).ok_or_else(|| {
        Failure::usage(format!(
            "unknown check id {id:?}; `threefold list` prints the known ids"
        ))
    })?;
    let fams: Vec<&str> = info.families.iter().map(|f| f.name()).collect();
    writeln!(out, "{}", info.id).map_err(io)?;
    writeln!(out, "family: {}", fams.join(", ")).map_err(io)?;
    writeln!(out, "{}", info.description).map_err(io)?;
    match info.broken_by {
        Some(m) => writeln!(out, "fails under --mutate {m}").map_err(io)?,
        None => writeln!(out, "no built-in mutation targets this check").map_err(io)?,
    }
    Ok(EXIT_PASS)
}

fn setup(run: &RunArgs) -> Result<(SuiteConfig, Formalism), Failure> {
    let tolerance = Tolerance::new(run.tol).map_err(|e| Failure::usage(e.to_string()))?;
    let cfg = SuiteConfig {
        seed: run.seed,
        trials: run.trials,
        max_atoms: run.max_atoms,
        max_fiber_dim: run.max_fiber_dim,
        tolerance,
    };
    cfg.validate().map_err(|e| Failure::usage(e.to_string()))?;
    let fx = match &run.mutate {
        None => Formalism::standard(),
        Some(name) => Formalism::mutated(parse_mutation(name)?),
    };
    Ok((cfg, fx))
}

fn parse_mutation(name: &str) -> Result<Mutation, Failure> {
    if let Ok(m) = name.parse::<Mutation>() {
        return Ok(m);
    }
    match catalog::lookup(name) {
        Some(info) => catalog::mutation_for(info.id)
            .ok_or_else(|| Failure::usage(format!("no built-in mutation targets check {name:?}"))),
        None => Err(Failure::usage(format!(
            "{name:?} is neither a mutation ({}) nor a check id",
            Mutation::NAMES.join(", ")
        ))),
    }
}

fn select_families(names: &[String]) -> Result<Vec<Family>, Failure> {
    if names.is_empty() {
        return Ok(Family::ALL.to_vec());
    }
    let mut out = Vec::new();
    for name in names {
        let group: Vec<Family> = match name.as_str() {
            "coherence" => vec![Family::Projection, Family::BaseChange, Family::Mixed],
            "section3" => vec![Family::Sqrt, Family::Section3],
            other => vec![other.parse::<Family>().map_err(Failure::usage)?],
        };
        for f in group {
            if !out.contains(&f) {
                out.push(f);
            }
        }
    }
    out.sort();
    Ok(out)
}

fn emit(
    command: &str,
    document: Option<String>,
    report: &CoherenceReport,
    timings: &Timings,
    run: &RunArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let doc = ReportDocument {
        version: FORMAT_VERSION.to_string(),
        command: command.to_string(),
        document,
        report: report.clone(),
    };
    let json = serde_json::to_string_pretty(&doc).expect("reports serialize");
    if let Some(path) = &run.output {
        std::fs::write(path, format!("{json}\n"))
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    match run.format {
        Format::Text => {
            write!(out, "{}", report.to_text()).map_err(io)?;
            write!(err, "{}", timings.to_text()).map_err(io)?;
        }
        Format::Json => writeln!(out, "{json}").map_err(io)?,
    }
    Ok(if report.all_passed() { EXIT_PASS } else { EXIT_FAIL })
}
