mod commands;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use commands::{build_case, characters_case, classify_case, verify_case, CaseError, RunOptions};
use spec::{is_prime, parse_case, parse_suite, CaseSpec, DEFAULT_SUITE};

#[derive(Parser)]
#[command(name = "hecke-lab", version, about = "Explore extended affine Hecke algebras with unequal parameters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Root datum, diagram, classes and length-zero group.
    Build(CommonArgs),
    /// One-dimensional characters, their extensions and discreteness.
    Characters(CommonArgs),
    /// Find a discrete module with supersingular reduction (adjoint data).
    Classify(CommonArgs),
    /// Run every check on a case or suite; the built-in suite when no input is given.
    Verify(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Single case file.
    #[arg(long, conflicts_with = "suite")]
    case: Option<PathBuf>,
    /// Suite file (array of cases, or {"cases": [...]}).
    #[arg(long)]
    suite: Option<PathBuf>,
    /// Prime for reductions; a per-case `p` overrides it.
    #[arg(long, default_value_t = 3)]
    p: u64,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Check every generator orbit in types E7 and E8 instead of a sample.
    #[arg(long)]
    exhaustive: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    timing: bool,
}

enum Input {
    Case(CaseSpec),
    Suite(Vec<CaseSpec>),
}

fn load(args: &CommonArgs, default_suite: bool) -> Result<(Input, String), CaseError> {
    let read = |path: &PathBuf| {
        std::fs::read_to_string(path).map_err(|e| CaseError::invalid("Io", format!("{}: {e}", path.display())))
    };
    let parse_err = |e: serde_json::Error| CaseError::invalid("Parse", e.to_string());
    if let Some(path) = &args.case {
        let text = read(path)?;
        let case = parse_case(&text).map_err(parse_err)?;
        Ok((Input::Case(case), text))
    } else if let Some(path) = &args.suite {
        let text = read(path)?;
        let cases = parse_suite(&text).map_err(parse_err)?;
        Ok((Input::Suite(cases), text))
    } else if default_suite {
        let cases = parse_suite(DEFAULT_SUITE).map_err(parse_err)?;
        Ok((Input::Suite(cases), DEFAULT_SUITE.to_string()))
    } else {
        Err(CaseError::invalid("MissingInput", "one of --case or --suite is required"))
    }
}

fn thread_pool() -> rayon::ThreadPool {
    let threads = std::env::var("HECKE_LAB_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).unwrap_or(0);
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
}

fn emit(report: &Value, out: &Option<PathBuf>) -> Result<(), CaseError> {
    let mut text = serde_json::to_string_pretty(report).expect("serializable report");
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CaseError::invalid("Io", format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Worst exit code wins: internal errors over invalid input over failed checks.
fn combine(codes: impl Iterator<Item = i32>) -> i32 {
    codes.fold(0, |acc, c| match (acc, c) {
        (3, _) | (_, 3) => 3,
        (2, _) | (_, 2) => 2,
        (1, _) | (_, 1) => 1,
        _ => 0,
    })
}

fn run(cli: Cli) -> i32 {
    let start = Instant::now();
    let (name, args) = match &cli.command {
        Command::Build(a) => ("build", a),
        Command::Characters(a) => ("characters", a),
        Command::Classify(a) => ("classify", a),
        Command::Verify(a) => ("verify", a),
    };
    let opts = RunOptions { p: args.p, seed: args.seed, exhaustive: args.exhaustive, timing: args.timing };

    let mut report = json!({
        "tool": {"name": "hecke-lab", "version": env!("CARGO_PKG_VERSION")},
        "command": name,
        "p": args.p,
        "seed": args.seed,
    });
    let finish = |mut report: Value, code: i32| -> i32 {
        if opts.timing {
            report["timing_ms"] = json!(start.elapsed().as_millis() as u64);
        }
        match emit(&report, &args.json) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        }
    };

    if !is_prime(args.p) {
        let e = CaseError::invalid("NotPrime", format!("{} is not prime", args.p));
        eprintln!("error: {e}");
        report["result"] = e.to_json();
        return finish(report, 2);
    }

    let (input, text) = match load(args, name == "verify") {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            report["result"] = e.to_json();
            return finish(report, e.exit_code());
        }
    };
    report["input_sha256"] = json!(format!("{:x}", Sha256::digest(text.as_bytes())));

    let one = |case: &CaseSpec| -> (Value, i32) {
        let t = Instant::now();
        let res = match name {
            "build" => build_case(case, &opts).map(|v| (v, true)),
            "characters" => characters_case(case, &opts).map(|v| (v, true)),
            "classify" => classify_case(case, &opts).map(|v| (v, true)),
            _ => verify_case(case, &opts),
        };
        match res {
            Ok((mut v, pass)) => {
                if opts.timing && v.get("timing_ms").is_none() {
                    v["timing_ms"] = json!(t.elapsed().as_millis() as u64);
                }
                (v, if pass { 0 } else { 1 })
            }
            Err(e) => {
                eprintln!("error in {}: {e}", case.label());
                let mut v = e.to_json();
                v["case"] = json!(case);
                (v, e.exit_code())
            }
        }
    };

    match input {
        Input::Case(case) => {
            let (v, code) = one(&case);
            report["result"] = v;
            finish(report, code)
        }
        Input::Suite(cases) => {
            if cases.is_empty() {
                eprintln!("warning: suite contains no cases");
            }
            let results: Vec<(Value, i32)> = thread_pool().install(|| cases.par_iter().map(one).collect());
            let code = combine(results.iter().map(|r| r.1));
            let passed = results.iter().filter(|r| r.1 == 0).count();
            report["summary"] = json!({"cases": results.len(), "passed": passed, "failed": results.len() - passed});
            if cases.is_empty() {
                report["warnings"] = json!(["suite contains no cases"]);
            }
            report["results"] = Value::Array(results.into_iter().map(|r| r.0).collect());
            finish(report, code)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(run(cli) as u8)
}
