//! Command-line front end: argument parsing, configuration, dispatch and
//! JSON output documents.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod inputs;

use clap::Parser;
use serde_json::{Map, Value};

pub use config::{OutputFormat, RunConfig};
pub use error::{exit, CliError};

/// Version of the output document layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Result of one invocation: exit status plus the two output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(err: &CliError) -> Self {
        Outcome { code: err.exit_code(), stdout: String::new(), stderr: format!("error: {err}\n") }
    }
}

/// Runs `argv` (program name first). With `config = None` the configuration
/// comes from `--config`, the default file and the environment.
pub fn dispatch(argv: &[String], config: Option<RunConfig>) -> Outcome {
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: exit::OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: exit::USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    let mut cfg = match config {
        Some(c) => c,
        None => match RunConfig::discover(cli.config.as_deref()) {
            Ok(c) => c,
            Err(e) => return Outcome::failure(&e),
        },
    };
    if let Some(p) = cli.precision {
        cfg.precision_digits = p;
    }
    if let Some(o) = cli.output {
        cfg.output = o;
    }
    if let Err(e) = cfg.validate() {
        return Outcome::failure(&e);
    }
    let result = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| commands::run(&cli.command, &cfg)),
            Err(e) => Err(CliError::Usage(format!("cannot start {n} workers: {e}"))),
        },
        None => commands::run(&cli.command, &cfg),
    };
    match result {
        Ok(body) => Outcome {
            code: exit::OK,
            stdout: render(command_name(&cli.command), body, cfg.output),
            stderr: String::new(),
        },
        Err(e) => Outcome::failure(&e),
    }
}

fn command_name(c: &args::Command) -> &'static str {
    use args::*;
    match c {
        Command::Lambda { .. } => "lambda",
        Command::Weight { .. } => "weight",
        Command::Psi { .. } => "psi",
        Command::Cm(CmCommand::Validate { .. }) => "cm validate",
        Command::Cm(CmCommand::Analyze { .. }) => "cm analyze",
        Command::Cm(CmCommand::Enumerate { .. }) => "cm enumerate",
        Command::Reciprocity(ReciprocityCommand::Family(_)) => "reciprocity family",
        Command::Reciprocity(ReciprocityCommand::Kernel { .. }) => "reciprocity kernel",
        Command::Cohomology(CohomologyCommand::H1 { .. }) => "cohomology h1",
        Command::Cohomology(CohomologyCommand::H2 { .. }) => "cohomology h2",
        Command::Conductor { .. } => "conductor",
        Command::Quasidisc(_) => "quasidisc",
        Command::Classical(ClassicalCommand::H { .. }) => "classical h",
        Command::Classical(ClassicalCommand::Shyr { .. }) => "classical shyr",
        Command::Bound(_) => "bound",
    }
}

/// Wraps the body as `{"schema_version", "command", "result"}`; keys are
/// emitted in sorted order.
fn render(command: &str, body: Value, format: OutputFormat) -> String {
    let mut doc = Map::new();
    doc.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
    doc.insert("command".into(), Value::from(command));
    doc.insert("result".into(), body);
    let doc = Value::Object(doc);
    let mut text = match format {
        OutputFormat::Pretty => serde_json::to_string_pretty(&doc),
        OutputFormat::Json => serde_json::to_string(&doc),
    }
    .expect("JSON values serialize");
    text.push('\n');
    text
}
