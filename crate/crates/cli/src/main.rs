//! Command-line front end: run suites, generate cases, search hard cases.

mod shipped;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};

use ivcheck::bigfloat::Format;
use ivcheck::generator::{
    find_hard_cases, hard_case_suite, hard_cases_json, make_case, HardOptions, RunPattern, SearchRange,
};
use ivcheck::harness::{run_suites, AccuracyClaim, Adapter, BuiltinAdapter, RunOptions, SubprocessAdapter, VerdictKind};
use ivcheck::interval::parse_interval_literal;
use ivcheck::pointfuncs::FunctionId;
use ivcheck::suite::{load_suite_with, save_suite, FormatHint, TestSuite, ValidationPolicy};

#[derive(Parser)]
#[command(name = "ivcheck", version, about = "Conformance testing for interval arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run suites against an implementation.
    Run(RunArgs),
    /// Write a case for one function on given inputs.
    Generate(GenerateArgs),
    /// Search a range for hard-to-round arguments.
    FindHard(FindHardArgs),
    /// Regenerate the shipped suites.
    BuildSuites {
        #[arg(long, default_value = "suites")]
        dir: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(required = true)]
    suites: Vec<PathBuf>,
    #[arg(long, default_value = "tight", value_parser = parse_claim)]
    claim: AccuracyClaim,
    /// `builtin` or `cmd:<program> [args...]`.
    #[arg(long, default_value = "builtin")]
    adapter: String,
    /// Random points checked per case.
    #[arg(long, default_value_t = 0)]
    fuzz: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    junit: Option<PathBuf>,
    /// Reject endpoints that are not exactly representable.
    #[arg(long)]
    strict_endpoints: bool,
    /// Per-call timeout for subprocess adapters, in seconds.
    #[arg(long, default_value_t = 10.0)]
    timeout: f64,
}

#[derive(Args)]
struct FormatArgs {
    #[arg(long)]
    precision: u32,
    #[arg(long, value_parser = parse_hint)]
    format_hint: Option<FormatHint>,
}

impl FormatArgs {
    fn format(&self) -> Result<Format, String> {
        match self.format_hint {
            Some(h) if h.format().precision() != self.precision => {
                Err(format!("{} needs precision {}", h.name(), h.format().precision()))
            }
            Some(h) => Ok(h.format()),
            None if self.precision < 2 => Err("precision must be at least 2".to_string()),
            None => Ok(Format::wide(self.precision)),
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_parser = parse_function)]
    function: FunctionId,
    /// An interval literal such as `[0x1@0,0x1.8@0]` or `[1,2]_com`; once
    /// per argument.
    #[arg(long, required = true, allow_hyphen_values = true)]
    input: Vec<String>,
    #[command(flatten)]
    format: FormatArgs,
    /// Emit undecorated inputs and outputs.
    #[arg(long)]
    bare: bool,
    #[arg(long)]
    comment: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FindHardArgs {
    #[arg(long, value_parser = parse_function)]
    function: FunctionId,
    #[command(flatten)]
    format: FormatArgs,
    /// `[a,b]` or `[a,b)` inside one binade.
    #[arg(long, allow_hyphen_values = true)]
    range: String,
    #[arg(long)]
    hardness: u32,
    #[arg(long, default_value = "both", value_parser = parse_pattern)]
    pattern: RunPattern,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = HardOptions::default().budget)]
    budget: u64,
    /// Bits past p + h on the first evaluation.
    #[arg(long, default_value_t = HardOptions::default().working_extra)]
    working_extra: u32,
    /// The suite; the metadata goes next to it as `<stem>.hardcases.json`.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_claim(s: &str) -> Result<AccuracyClaim, String> {
    AccuracyClaim::from_name(s).ok_or_else(|| format!("unknown claim {s:?}"))
}

fn parse_hint(s: &str) -> Result<FormatHint, String> {
    FormatHint::from_name(s).ok_or_else(|| format!("unknown format {s:?}"))
}

fn parse_function(s: &str) -> Result<FunctionId, String> {
    FunctionId::from_name(s).ok_or_else(|| format!("unknown function {s:?}"))
}

fn parse_pattern(s: &str) -> Result<RunPattern, String> {
    RunPattern::from_name(s).ok_or_else(|| format!("unknown pattern {s:?}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Generate(args) => generate(args),
        Command::FindHard(args) => find_hard(args),
        Command::BuildSuites { dir, jobs } => shipped::build(&dir, jobs).map(|()| true),
    };
    eprintln!("wall time {:.3} s", started.elapsed().as_secs_f64());
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn adapter(spec: &str, timeout: Duration) -> Result<Box<dyn Adapter>, String> {
    match spec {
        "builtin" => Ok(Box::new(BuiltinAdapter)),
        _ => {
            let cmd = spec.strip_prefix("cmd:").ok_or_else(|| format!("unknown adapter {spec:?}"))?;
            let argv: Vec<String> = cmd.split_whitespace().map(str::to_string).collect();
            if argv.is_empty() {
                return Err("cmd: adapter needs a command".to_string());
            }
            Ok(Box::new(SubprocessAdapter::new(argv, timeout)))
        }
    }
}

fn run(args: RunArgs) -> Result<bool, String> {
    let policy = ValidationPolicy { exact_endpoints: args.strict_endpoints };
    let suites = args
        .suites
        .iter()
        .map(|p| load_suite_with(p, &policy).map_err(|e| e.to_string()))
        .collect::<Result<Vec<TestSuite>, _>>()?;
    if !(args.timeout > 0.0 && args.timeout.is_finite()) {
        return Err("timeout must be positive".to_string());
    }
    let adapter = adapter(&args.adapter, Duration::from_secs_f64(args.timeout))?;
    let opts = RunOptions { claim: args.claim, fuzz: args.fuzz, seed: args.seed, jobs: args.jobs };
    let report = run_suites(&suites, adapter.as_ref(), &opts);
    for c in &report.cases {
        if !c.kind.is_pass() {
            println!("{} case[{}] {}: {} {}", c.suite, c.index, c.function, c.kind, c.detail);
        }
    }
    let summary: Vec<String> =
        VerdictKind::ALL.iter().map(|&k| (k, report.count(k))).filter(|(_, n)| *n > 0).map(|(k, n)| format!("{k} {n}")).collect();
    println!("{} case(s): {}", report.cases.len(), if summary.is_empty() { "none".to_string() } else { summary.join(", ") });
    if let Some(path) = &args.report {
        write(path, &report.to_json_string())?;
    }
    if let Some(path) = &args.junit {
        write(path, &report.to_junit())?;
    }
    Ok(report.success())
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn generate(args: GenerateArgs) -> Result<bool, String> {
    let format = args.format.format()?;
    let inputs = args
        .input
        .iter()
        .map(|t| parse_interval_literal(t, format).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let case = make_case(args.function, &inputs, format, !args.bare, args.comment).map_err(|e| e.to_string())?;
    let suite = TestSuite::new("generated", vec![case]);
    match &args.out {
        Some(path) => save_suite(&suite, path).map_err(|e| e.to_string())?,
        None => print!("{}", suite.to_json_string()),
    }
    Ok(true)
}

fn find_hard(args: FindHardArgs) -> Result<bool, String> {
    let format = args.format.format()?;
    let range = SearchRange::parse(&args.range, format).map_err(|e| e.to_string())?;
    let opts = HardOptions { working_extra: args.working_extra, budget: args.budget, jobs: args.jobs, ..HardOptions::default() };
    let found = find_hard_cases(args.function, &range, args.hardness, args.pattern, &opts).map_err(|e| e.to_string())?;
    eprintln!("{} hard case(s) in {} argument(s)", found.len(), range.len());
    let name = args.out.as_ref().and_then(|p| p.file_name()).map_or("hard.json".into(), |n| n.to_string_lossy().into_owned());
    let suite = hard_case_suite(&name, &found, format).map_err(|e| e.to_string())?;
    let meta = serde_json::to_string_pretty(&hard_cases_json(&found, format)).expect("json values serialize") + "\n";
    match &args.out {
        Some(path) => {
            save_suite(&suite, path).map_err(|e| e.to_string())?;
            write(&sidecar_path(path), &meta)?;
        }
        None => print!("{meta}"),
    }
    Ok(true)
}

fn sidecar_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map_or("hard".into(), |s| s.to_string_lossy().into_owned());
    out.with_file_name(format!("{stem}.hardcases.json"))
}
