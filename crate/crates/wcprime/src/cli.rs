//! Command-line handling. Exit codes: 0 success, 1 an asserted check
//! failed, 2 not applicable or degenerate input, 3 usage or parse error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use wcprime_core::theorems::{
    parse_theorem_filter, search_counterexample, verify_theorem, Bounds, Goal, Instance, TheoremId,
};
use wcprime_core::Error;

use crate::parse::{load_instance, SpecError};
use crate::report;
use crate::runner::run_suite_parallel;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_NA: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "wcprime", version, about = "Weakly classical prime submodules over finite rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide the six submodule classes for every `sub=` of an instance.
    Classify {
        #[command(flatten)]
        spec: SpecArg,
        #[command(flatten)]
        output: Output,
    },
    /// Check theorems on one instance, or sweep generated instances.
    Verify {
        #[arg(long)]
        spec: Option<String>,
        #[arg(long, default_value = "all")]
        theorem: String,
        #[command(flatten)]
        sweep: Sweep,
        #[command(flatten)]
        output: Output,
    },
    /// Find the first generated instance reaching a goal.
    Search {
        #[arg(long)]
        goal: String,
        #[command(flatten)]
        sweep: Sweep,
        #[command(flatten)]
        output: Output,
    },
    /// List the submodules of a module, or the generated modules.
    Enumerate {
        #[arg(long)]
        spec: Option<String>,
        #[command(flatten)]
        sweep: Sweep,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Debug)]
struct SpecArg {
    /// Instance text, or a path to a file containing it.
    #[arg(long)]
    spec: String,
}

#[derive(Args, Debug)]
struct Sweep {
    /// Overrides such as `ringmax=8,modmax=16,arity=2`.
    #[arg(long)]
    bounds: Option<String>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    workers: u16,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

/// What the process prints and returns.
#[derive(Debug, Default)]
pub struct RunOutput {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutput {
    fn usage(msg: impl std::fmt::Display) -> Self {
        RunOutput { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

/// Parses `key=value` bound overrides on top of the defaults.
pub fn parse_bounds(s: &str) -> Result<Bounds, String> {
    let mut b = Bounds::default();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| format!("bad bound `{part}`, expected key=value"))?;
        let v: usize = v.trim().parse().map_err(|_| format!("bound `{k}` needs a positive integer"))?;
        if v == 0 {
            return Err(format!("bound `{k}` must be positive"));
        }
        match k.trim() {
            "ringmax" => b.ringmax = v,
            "modmax" => b.modmax = v,
            "arity" => b.arity = v,
            "targeted" => b.targeted = v,
            other => return Err(format!("unknown bound `{other}`")),
        }
    }
    Ok(b)
}

fn spec_text(spec: &str) -> Result<String, String> {
    let p = Path::new(spec);
    if !spec.contains('=') && p.is_file() {
        return std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()));
    }
    Ok(spec.to_string())
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Degenerate | Error::NotProper | Error::NotApplicable(_) | Error::HypothesisFailed(_) => EXIT_NA,
        _ => EXIT_USAGE,
    }
}

fn spec_error(e: SpecError) -> RunOutput {
    match &e {
        SpecError::Semantic(inner) => {
            RunOutput { code: error_code(inner), stdout: String::new(), stderr: format!("error: {e}\n") }
        }
        SpecError::Syntax(_) => RunOutput::usage(e),
    }
}

fn core_error(e: Error) -> RunOutput {
    RunOutput { code: error_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") }
}

fn render(value: &Value, md: impl FnOnce(&Value) -> String, output: &Output, code: u8) -> RunOutput {
    let text = match output.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Md => md(value),
    };
    match &output.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => RunOutput { code, ..Default::default() },
            Err(e) => RunOutput::usage(format!("cannot write {}: {e}", path.display())),
        },
        None => RunOutput { code, stdout: text, stderr: String::new() },
    }
}

fn classify(spec: &str, output: &Output) -> RunOutput {
    let text = match spec_text(spec) {
        Ok(t) => t,
        Err(e) => return RunOutput::usage(e),
    };
    let loaded = match load_instance(&text) {
        Ok(l) => l,
        Err(e) => return spec_error(e),
    };
    if loaded.subs.is_empty() {
        return RunOutput::usage("classify needs at least one `sub=`");
    }
    if loaded.module.is_degenerate() {
        return core_error(Error::NotApplicable("zero module".into()));
    }
    let mut reports = Vec::new();
    for (gens, n) in loaded.instance.subs.iter().zip(&loaded.subs) {
        let single = Instance { subs: vec![gens.clone()], ..loaded.instance.clone() };
        match report::classify_json(&single, &loaded.module, n) {
            Ok(v) => reports.push(v),
            Err(e) => return core_error(e),
        }
    }
    let value = if reports.len() == 1 { reports.pop().unwrap() } else { Value::Array(reports) };
    let md = |v: &Value| match v {
        Value::Array(vs) => vs.iter().map(report::classify_md).collect::<Vec<_>>().join("\n"),
        v => report::classify_md(v),
    };
    render(&value, md, output, EXIT_OK)
}

fn bounds_of(sweep: &Sweep) -> Result<Bounds, RunOutput> {
    match &sweep.bounds {
        Some(s) => parse_bounds(s).map_err(RunOutput::usage),
        None => Ok(Bounds::default()),
    }
}

fn verify(spec: Option<&str>, theorem: &str, sweep: &Sweep, output: &Output) -> RunOutput {
    let ids: Vec<TheoremId> = match parse_theorem_filter(theorem) {
        Ok(ids) => ids,
        Err(e) => return RunOutput::usage(e),
    };
    let bounds = match bounds_of(sweep) {
        Ok(b) => b,
        Err(out) => return out,
    };
    let Some(spec) = spec else {
        let r = run_suite_parallel(&bounds, &ids, sweep.workers as usize);
        let code = if r.any_fail() { EXIT_FAIL } else { EXIT_OK };
        let value = report::suite_json(&r);
        return render(&value, |_| report::suite_md(&r), output, code);
    };
    let text = match spec_text(spec) {
        Ok(t) => t,
        Err(e) => return RunOutput::usage(e),
    };
    let loaded = match load_instance(&text) {
        Ok(l) => l,
        Err(e) => return spec_error(e),
    };
    if loaded.subs.is_empty() {
        return RunOutput::usage("verify --spec needs at least one `sub=`");
    }
    let mut values = Vec::new();
    let mut md = String::new();
    let mut failed = false;
    for gens in &loaded.instance.subs {
        let single = Instance { subs: vec![gens.clone()], ..loaded.instance.clone() };
        let outcomes = match ids.iter().map(|&id| verify_theorem(&single, id)).collect::<Result<Vec<_>, _>>() {
            Ok(o) => o,
            Err(e) => return core_error(e),
        };
        failed |= outcomes.iter().any(|o| o.is_fail());
        values.push(report::instance_json(&single, &outcomes));
        md += &report::instance_md(&single, &outcomes);
    }
    let value = if values.len() == 1 { values.pop().unwrap() } else { Value::Array(values) };
    render(&value, |_| md, output, if failed { EXIT_FAIL } else { EXIT_OK })
}

fn search(goal: &str, sweep: &Sweep, output: &Output) -> RunOutput {
    let goal: Goal = match goal.parse() {
        Ok(g) => g,
        Err(e) => return RunOutput::usage(e),
    };
    let bounds = match bounds_of(sweep) {
        Ok(b) => b,
        Err(out) => return out,
    };
    let r = search_counterexample(goal, &bounds);
    render(&report::search_json(&r), |_| report::search_md(&r), output, EXIT_OK)
}

fn enumerate(spec: Option<&str>, sweep: &Sweep, output: &Output) -> RunOutput {
    let Some(spec) = spec else {
        let bounds = match bounds_of(sweep) {
            Ok(b) => b,
            Err(out) => return out,
        };
        return render(&report::modules_json(&bounds), report::modules_md, output, EXIT_OK);
    };
    let text = match spec_text(spec) {
        Ok(t) => t,
        Err(e) => return RunOutput::usage(e),
    };
    let loaded = match load_instance(&text) {
        Ok(l) => l,
        Err(e) => return spec_error(e),
    };
    match report::submodules_json(&loaded.instance, &loaded.module) {
        Ok(v) => render(&v, report::submodules_md, output, EXIT_OK),
        Err(e) => core_error(e),
    }
}

/// Runs the command line and collects its output.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    RunOutput { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => RunOutput { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    match &cli.command {
        Command::Classify { spec, output } => classify(&spec.spec, output),
        Command::Verify { spec, theorem, sweep, output } => verify(spec.as_deref(), theorem, sweep, output),
        Command::Search { goal, sweep, output } => search(goal, sweep, output),
        Command::Enumerate { spec, sweep, output } => enumerate(spec.as_deref(), sweep, output),
    }
}
