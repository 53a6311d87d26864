//! Command-line driver: reads a TLSF file, reduces it and prints either
//! basic-format TLSF or a single LTL formula.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use thiserror::Error;

use tlsf_core::ast::{Pos, Semantics, Spec, Target};
use tlsf_core::emit::{print_basic, print_formula, LtlProfile};
use tlsf_core::eval::{Env, Value, DEFAULT_RECURSION_LIMIT};
use tlsf_core::ltl::Rewrite;
use tlsf_core::reduce::{elaborate_with, BasicSpec};
use tlsf_core::semantics::{convert_target, interpret};
use tlsf_core::typecheck::check_spec;

pub const RECURSION_LIMIT_VAR: &str = "TLSF_RECURSION_LIMIT";

/// Stack for the worker thread; deep recursion in user functions needs it.
pub const STACK_SIZE: usize = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    /// Basic-format TLSF.
    Basic,
    /// The interpreted specification as one LTL formula.
    Formula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Mealy,
    Moore,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SemanticsArg {
    Mealy,
    Moore,
    MealyStrict,
    MooreStrict,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::Mealy => Target::Mealy,
            TargetArg::Moore => Target::Moore,
        }
    }
}

impl From<SemanticsArg> for Semantics {
    fn from(s: SemanticsArg) -> Self {
        match s {
            SemanticsArg::Mealy => Semantics::Mealy,
            SemanticsArg::Moore => Semantics::Moore,
            SemanticsArg::MealyStrict => Semantics::MealyStrict,
            SemanticsArg::MooreStrict => Semantics::MooreStrict,
        }
    }
}

fn parse_param(s: &str) -> Result<(String, u64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected NAME=NAT, got '{s}'"))?;
    let value = value.trim().parse::<u64>().map_err(|_| format!("'{value}' is not a natural number"))?;
    Ok((name.trim().to_string(), value))
}

#[derive(Debug, Clone, Parser)]
#[command(name = "tlsf", version, about = "Reduce and convert TLSF specifications")]
pub struct Config {
    /// Input file, or '-' for standard input.
    pub input: PathBuf,
    /// Override a parameter (repeatable).
    #[arg(short = 'p', long = "param", value_name = "NAME=NAT", value_parser = parse_param)]
    pub params: Vec<(String, u64)>,
    /// Convert to this system model.
    #[arg(long, value_enum)]
    pub target: Option<TargetArg>,
    /// Replace the declared semantics.
    #[arg(long, value_enum)]
    pub semantics: Option<SemanticsArg>,
    #[arg(short = 'o', long = "output-mode", value_enum, default_value = "basic")]
    pub output_mode: OutputMode,
    /// Rewrite applied to the formula, in order (repeatable).
    #[arg(short = 't', long = "transform", value_name = "NAME", value_parser = parse_rewrite)]
    pub transforms: Vec<Rewrite>,
    /// LTL spelling profile for formula output: tlsf or classic.
    #[arg(long, default_value = "tlsf", value_parser = parse_profile)]
    pub profile: LtlProfile,
    /// Stop after type checking and list parameters and signals.
    #[arg(long)]
    pub check: bool,
    /// Write output to FILE instead of standard output.
    #[arg(short = 'O', value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Report each stage on standard error.
    #[arg(short, long)]
    pub verbose: bool,
}

fn parse_rewrite(s: &str) -> Result<Rewrite, String> {
    s.parse().map_err(|_| {
        let names: Vec<_> = Rewrite::ALL.iter().map(|r| r.name()).collect();
        format!("unknown transformation '{s}' (expected one of {})", names.join(", "))
    })
}

fn parse_profile(s: &str) -> Result<LtlProfile, String> {
    LtlProfile::by_name(s)
        .ok_or_else(|| format!("unknown profile '{s}' (expected one of {})", LtlProfile::NAMES.join(", ")))
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{file}{}: error: {message}", location(.pos))]
    Input { file: String, pos: Option<Pos>, message: String },
}

fn location(pos: &Option<Pos>) -> String {
    match pos {
        Some(p) => format!(":{}:{}", p.line, p.col),
        None => String::new(),
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } | CliError::Input { .. } => 1,
        }
    }
}

/// Reads `TLSF_RECURSION_LIMIT`, if set.
pub fn recursion_limit_from_env() -> Result<usize, CliError> {
    match std::env::var(RECURSION_LIMIT_VAR) {
        Err(_) => Ok(DEFAULT_RECURSION_LIMIT),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{RECURSION_LIMIT_VAR} must be a natural number, got '{v}'"))),
    }
}

fn read_input(config: &Config) -> Result<(String, String), CliError> {
    if config.input.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|source| CliError::Io { path: "<stdin>".into(), source })?;
        return Ok(("<stdin>".into(), text));
    }
    let name = config.input.display().to_string();
    let text = std::fs::read_to_string(&config.input).map_err(|source| CliError::Io { path: name.clone(), source })?;
    Ok((name, text))
}

fn input_error(file: &str, e: impl Into<tlsf_core::Error>) -> CliError {
    let e = e.into();
    CliError::Input { file: file.into(), pos: e.pos(), message: e.to_string() }
}

/// Runs one invocation and returns the text to write.
pub fn run(config: &Config, recursion_limit: usize) -> Result<String, CliError> {
    let (file, source) = read_input(config)?;
    run_source(config, &file, &source, recursion_limit)
}

pub fn run_source(config: &Config, file: &str, source: &str, recursion_limit: usize) -> Result<String, CliError> {
    if !config.transforms.is_empty() && config.output_mode == OutputMode::Basic {
        return Err(CliError::Usage("transformations need '--output-mode formula'".into()));
    }
    let overrides: BTreeMap<String, u64> = config.params.iter().cloned().collect();
    let mut log = Log(config.verbose);

    let spec = tlsf_core::frontend::parse(source).map_err(|e| input_error(file, e))?;
    log.note(format_args!("parsed {} definition(s)", spec.definitions.len()));
    for name in overrides.keys() {
        if !spec.parameters.iter().any(|p| p.name.as_str() == name) {
            return Err(CliError::Usage(format!("{file}: no parameter named '{name}'")));
        }
    }
    if config.check {
        return check_report(&spec, &overrides).map_err(|e| input_error(file, e));
    }

    let mut basic = elaborate_with(&spec, &overrides, recursion_limit).map_err(|e| input_error(file, e))?;
    log.note(format_args!("reduced to {} input(s) and {} output(s)", basic.inputs.len(), basic.outputs.len()));
    if let Some(s) = config.semantics {
        basic.info.semantics = s.into();
    }
    if let Some(t) = config.target {
        basic.info.target = t.into();
    }

    match config.output_mode {
        OutputMode::Basic => {
            if config.target.is_some() {
                basic = convert_target(&basic, basic.info.target);
            }
            Ok(print_basic(&basic))
        }
        OutputMode::Formula => formula_output(&basic, config, &mut log).map_err(|e| input_error(file, e)),
    }
}

fn formula_output(basic: &BasicSpec, config: &Config, log: &mut Log) -> Result<String, tlsf_core::Error> {
    let mut phi = interpret(basic);
    for rewrite in &config.transforms {
        phi = rewrite.apply(&phi);
        log.note(format_args!("after {rewrite}: size {}", phi.size()));
    }
    let mut text = print_formula(&phi, &config.profile)?;
    text.push('\n');
    Ok(text)
}

fn check_report(spec: &Spec, overrides: &BTreeMap<String, u64>) -> Result<String, tlsf_core::Error> {
    let types = check_spec(spec)?;
    let mut env = Env::for_spec(spec, overrides).map_err(tlsf_core::reduce::ReduceError::Eval)?;
    let mut out = String::new();
    out.push_str("parameters:\n");
    for p in &spec.parameters {
        let v = env.global(p.name.as_str(), p.name.pos).map_err(tlsf_core::reduce::ReduceError::Eval)?;
        let _ = writeln!(out, "  {} = {v}", p.name);
    }
    for (title, decls) in [("inputs", &spec.inputs), ("outputs", &spec.outputs)] {
        let _ = writeln!(out, "{title}:");
        for d in decls {
            match env.global(d.name.as_str(), d.name.pos).map_err(tlsf_core::reduce::ReduceError::Eval)? {
                Value::Bus { width, .. } => {
                    let _ = writeln!(out, "  {} : bus of width {width}", d.name);
                }
                _ => {
                    let _ = writeln!(out, "  {} : signal", d.name);
                }
            }
        }
    }
    out.push_str("definitions:\n");
    for d in &spec.definitions {
        if d.is_function() {
            for (args, result) in types.instances(d.name.as_str()) {
                let args: Vec<_> = args.iter().map(|t| t.to_string()).collect();
                let _ = writeln!(out, "  {}({}) : {result}", d.name, args.join(", "));
            }
        } else if let Some(t) = types.lookup(d.name.as_str()) {
            let _ = writeln!(out, "  {} : {t}", d.name);
        }
    }
    Ok(out)
}

struct Log(bool);

impl Log {
    fn note(&mut self, msg: std::fmt::Arguments<'_>) {
        if self.0 {
            eprintln!("tlsf: {msg}");
        }
    }
}

/// Parses arguments, runs on a thread with a large stack, writes the
/// result and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match Config::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = std::thread::Builder::new()
        .stack_size(STACK_SIZE)
        .spawn(move || {
            let limit = recursion_limit_from_env()?;
            let text = run(&config, limit)?;
            match &config.output {
                Some(path) => std::fs::write(path, text)
                    .map_err(|source| CliError::Io { path: path.display().to_string(), source }),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        })
        .expect("spawning the worker thread")
        .join();
    match outcome {
        Ok(Ok(())) => 0,
        Ok(Err(e @ CliError::Input { .. })) => {
            eprintln!("{e}");
            e.exit_code()
        }
        Ok(Err(e)) => {
            eprintln!("tlsf: {e}");
            e.exit_code()
        }
        Err(_) => 1,
    }
}
