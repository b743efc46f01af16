use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hopf_calc_core::examples::pipelines::{registry, run_cohomology, run_verify, ExampleError, ParamKind, Suite};
use serde::Serialize;
use serde_json::json;

const SCHEMA: u32 = 1;
const DEFAULT_SEED: u64 = 7;

#[derive(Parser)]
#[command(name = "hopf-calc", version, about = "Verification suites for crossed product calculi")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the registered examples and their parameters.
    ListExamples,
    /// Run the verification suites of an example.
    Verify {
        example: String,
        #[command(flatten)]
        params: ExampleParams,
        /// Run a single suite.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        window: Option<i64>,
        /// Seed for sampled checks.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// de Rham cohomology dimensions of an example's differential complex.
    Cohomology {
        example: String,
        #[command(flatten)]
        params: ExampleParams,
        #[arg(long, default_value_t = 1)]
        max_degree: usize,
        #[arg(long)]
        window: Option<i64>,
    },
}

/// Example parameters; which ones apply depends on the example.
#[derive(Args)]
struct ExampleParams {
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    ideal: Option<String>,
    #[arg(long = "M")]
    m: Option<String>,
    #[arg(long)]
    theta: Option<String>,
    #[arg(long)]
    qcalc: Option<String>,
    #[arg(long)]
    file: Option<String>,
}

impl ExampleParams {
    fn given(&self) -> BTreeMap<String, String> {
        [
            ("r", &self.r),
            ("n", &self.n),
            ("q", &self.q),
            ("ideal", &self.ideal),
            ("M", &self.m),
            ("theta", &self.theta),
            ("qcalc", &self.qcalc),
            ("file", &self.file),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.clone().map(|v| (k.to_string(), v)))
        .collect()
    }
}

#[derive(Serialize)]
struct Document<T: Serialize> {
    schema: u32,
    #[serde(flatten)]
    body: T,
}

fn emit<T: Serialize>(body: T) {
    let doc = Document { schema: SCHEMA, body };
    println!("{}", serde_json::to_string_pretty(&doc).expect("reports serialize"));
}

fn emit_error(kind: &str, message: &str) {
    emit(json!({ "error": { "kind": kind, "message": message } }));
}

fn summarize(suites: &[Suite]) {
    for s in suites {
        let failed: Vec<_> = s.checks.iter().filter(|c| c.status.is_fail()).collect();
        eprintln!("{}: {} checks, {} failed", s.suite, s.checks.len(), failed.len());
        for c in failed {
            eprintln!("  FAIL {}: {}", c.name, c.witness.as_deref().unwrap_or("no witness"));
        }
    }
}

fn failure(e: ExampleError) -> ExitCode {
    let usage = e.is_usage();
    eprintln!("error: {e}");
    emit_error(if usage { "usage" } else { "build" }, &e.to_string());
    ExitCode::from(if usage { 2 } else { 1 })
}

fn list_examples() {
    let examples: Vec<_> = registry()
        .iter()
        .map(|e| {
            let params: Vec<_> = e
                .params
                .iter()
                .map(|p| {
                    let kind = match p.kind {
                        ParamKind::Int { min } => json!({ "int": { "min": min } }),
                        ParamKind::Choice(options) => json!({ "choice": options }),
                        ParamKind::Path => json!("path"),
                    };
                    json!({ "name": p.name, "kind": kind, "default": p.default, "help": p.help })
                })
                .collect();
            json!({
                "name": e.name,
                "summary": e.summary,
                "params": params,
                "default_window": e.default_window,
                "suites": e.suites,
            })
        })
        .collect();
    for e in registry() {
        eprintln!("{:<12} {}", e.name, e.summary);
    }
    emit(json!({ "examples": examples }));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            emit_error("usage", e.to_string().lines().next().unwrap_or("invalid arguments"));
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match cli.command {
        Command::ListExamples => {
            list_examples();
            ExitCode::SUCCESS
        }
        Command::Verify { example, params, suite, window, seed } => {
            match run_verify(&example, &params.given(), suite.as_deref(), window, seed) {
                Ok(v) => {
                    summarize(&v.suites);
                    let ok = v.passed();
                    emit(v);
                    if ok {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::FAILURE
                    }
                }
                Err(e) => failure(e),
            }
        }
        Command::Cohomology { example, params, max_degree, window } => {
            match run_cohomology(&example, &params.given(), max_degree, window) {
                Ok(run) => {
                    summarize(&run.suites);
                    for d in &run.cohomology {
                        eprintln!("H^{} = {}", d.degree, d.dimension);
                    }
                    let ok = run.suites.iter().all(|s| s.checks.iter().all(|c| !c.status.is_fail()));
                    emit(run);
                    if ok {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::FAILURE
                    }
                }
                Err(e) => failure(e),
            }
        }
    }
}
