mod commands;
mod config;

use std::ffi::OsString;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use commands::{CliError, Report};

/// Exact F2 engine for HOCA-enriched toric codes.
#[derive(Debug, Parser)]
#[command(name = "hocaset", version)]
struct Cli {
    /// key = value file whose keys mirror the flags of the chosen command.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Run searches on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Ascii,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mobility class of an excitation pattern.
    Classify(ClassifyArgs),
    /// Observed fusion channels of two patterns, checked against the allowed set.
    Fuse(FuseArgs),
    /// A decomposition f = (1 + x) P + (1 + y) Q and the stabilizers built from it.
    Decompose(RuleArgs),
    /// The CZ circuit template of a rule.
    Circuit(RuleArgs),
    /// Evolves initial rows under a rule.
    Evolve(EvolveArgs),
    /// Ground-state degeneracy on an L x L torus.
    Gsd(GsdArgs),
    /// Cross-checks the algebra against brute-force oracles.
    Verify(VerifyArgs),
    /// Runs the built-in worked examples.
    PaperExamples,
}

#[derive(Debug, Args)]
pub struct RuleArgs {
    /// Rule polynomial, e.g. "1 + y + x*y^2 + x^2*y^2".
    #[arg(long)]
    pub rule: Option<String>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub rule: Option<String>,
    /// Excitation pattern.
    #[arg(long)]
    pub m: Option<String>,
    /// Bound on listed moves: |i|, |j| <= S.
    #[arg(long, default_value_t = 3)]
    pub shift_bound: i32,
}

#[derive(Debug, Args)]
pub struct FuseArgs {
    #[arg(long)]
    pub rule: Option<String>,
    #[arg(long)]
    pub m1: Option<String>,
    #[arg(long)]
    pub m2: Option<String>,
    /// Placements x^a y^b with |a|, |b| <= WINDOW. Defaults to twice the
    /// summed extents of the rule and both patterns.
    #[arg(long)]
    pub window: Option<i32>,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[arg(long)]
    pub rule: Option<String>,
    /// Initial rows, comma separated: "1, x^-1".
    #[arg(long)]
    pub w: Option<String>,
    #[arg(long, default_value_t = 8)]
    pub depth: usize,
}

#[derive(Debug, Args)]
pub struct GsdArgs {
    #[arg(long)]
    pub rule: Option<String>,
    /// Torus size. Defaults to the smallest size the rule fits on.
    #[arg(long = "L", value_name = "L")]
    pub l: Option<i32>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Check this rule; without it, check random rules.
    #[arg(long)]
    pub rule: Option<String>,
    /// Pattern whose mobility is checked against the oracle.
    #[arg(long)]
    pub m: Option<String>,
    /// Initial rows whose symmetry operator is checked.
    #[arg(long)]
    pub w: Option<String>,
    #[arg(long, default_value_t = 8)]
    pub depth: usize,
    #[arg(long, default_value_t = 3)]
    pub shift_bound: i32,
    #[arg(long, default_value_t = hocaset::random::DEFAULT_SEED)]
    pub seed: u64,
    /// Number of random rules.
    #[arg(long, default_value_t = 16)]
    pub count: usize,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify(_) => "classify",
            Command::Fuse(_) => "fuse",
            Command::Decompose(_) => "decompose",
            Command::Circuit(_) => "circuit",
            Command::Evolve(_) => "evolve",
            Command::Gsd(_) => "gsd",
            Command::Verify(_) => "verify",
            Command::PaperExamples => "paper-examples",
        }
    }
}

/// Inserts config values right after the subcommand, skipping keys the
/// subcommand does not take and flags already on the command line.
fn merge_config(args: Vec<String>, entries: &[(String, String)]) -> Result<Vec<String>, String> {
    let cmd = Cli::command();
    let Some(pos) = args
        .iter()
        .skip(1)
        .position(|a| cmd.find_subcommand(a).is_some())
        .map(|p| p + 1)
    else {
        return Ok(args);
    };
    let sub = cmd.find_subcommand(&args[pos]).expect("found above");
    let accepted = |key: &str| {
        sub.get_arguments()
            .chain(cmd.get_arguments())
            .any(|a| a.get_long() == Some(key))
    };
    let present = |key: &str| {
        let flag = format!("--{key}");
        args.iter()
            .any(|a| *a == flag || a.starts_with(&format!("{flag}=")))
    };
    let mut extra = Vec::new();
    for (key, value) in entries {
        if key == "config" {
            return Err("a config file cannot name another config file".into());
        }
        if accepted(key) && !present(key) {
            if value == "true" && matches!(key.as_str(), "sequential") {
                extra.push(format!("--{key}"));
            } else if value != "false" {
                extra.push(format!("--{key}={value}"));
            }
        }
    }
    let mut out = args;
    out.splice(pos + 1..pos + 1, extra);
    Ok(out)
}

fn emit(format: Format, command: &str, report: &Report) {
    if format != Format::Ascii {
        let mut body = json!({ "schema": "1", "command": command });
        if let (Value::Object(dst), Value::Object(src)) = (&mut body, &report.json) {
            dst.extend(src.clone());
        }
        println!("{body}");
    }
    if format != Format::Json {
        println!("{}", report.ascii);
    }
}

fn emit_error(format: Format, command: &str, err: &CliError) {
    if format == Format::Ascii {
        eprintln!("error ({}): {}", err.kind(), err.message());
    } else {
        let body = json!({
            "schema": "1",
            "command": command,
            "error": { "kind": err.kind(), "message": err.message() },
        });
        println!("{body}");
    }
}

fn main() -> ExitCode {
    let mut args: Vec<String> = std::env::args_os()
        .map(|a: OsString| a.to_string_lossy().into_owned())
        .collect();
    if let Some(path) = config::config_path(&args) {
        match config::load_config(path.as_ref()).and_then(|e| merge_config(args, &e)) {
            Ok(merged) => args = merged,
            Err(msg) => {
                eprintln!("error: config: {msg}");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse_from(args);
    let exec = if cli.sequential {
        hocaset::Execution::Sequential
    } else {
        hocaset::Execution::Parallel
    };
    let name = cli.command.name();
    let result = match &cli.command {
        Command::Classify(a) => commands::classify(a),
        Command::Fuse(a) => commands::fuse(a, exec),
        Command::Decompose(a) => commands::decompose(a),
        Command::Circuit(a) => commands::circuit(a),
        Command::Evolve(a) => commands::evolve(a),
        Command::Gsd(a) => commands::gsd(a),
        Command::Verify(a) => commands::verify(a, exec),
        Command::PaperExamples => commands::paper_examples(exec),
    };
    match result {
        Ok(report) => {
            emit(cli.format, name, &report);
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            emit_error(cli.format, name, &err);
            ExitCode::from(err.exit_code())
        }
    }
}
