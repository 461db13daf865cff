mod commands;
mod error;
mod problem;
mod render;

use std::io::Read;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use commands::{Command, Settings};
use error::CliError;
use problem::{Problem, ProblemSpec};

const USAGE_EXIT: u8 = 64;
const INTERNAL_EXIT: u8 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

/// Exact invariant theory of modules of covariants for finite matrix groups.
#[derive(Parser, Debug)]
#[command(name = "invartool", version)]
struct Cli {
    /// Computation to run.
    #[arg(value_enum)]
    command: Command,
    /// Problem description (JSON); `-` reads standard input.
    #[arg(long)]
    input: String,
    /// Degree bound: series length, basis search cap, or Serre spanning bound.
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
    /// Largest group order to enumerate.
    #[arg(long)]
    order_cap: Option<usize>,
    /// Degree cap for each point-stabilizer basis search.
    #[arg(long)]
    hyperplane_cap: Option<usize>,
    /// Accepted for reproducible runs; no result depends on it.
    #[arg(long)]
    seed: Option<u64>,
    /// Named module from the problem's `modules` table, or trivial, natural, dual, regular.
    #[arg(long)]
    module: Option<String>,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    timings: bool,
}

fn read_input(path: &str) -> Result<String, CliError> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    Ok(text)
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    let start = Instant::now();
    let spec = ProblemSpec::parse(&read_input(&cli.input)?)?;
    let max_degree = cli.max_degree.or(spec.max_degree);
    let hyperplane_cap = cli.hyperplane_cap.or(spec.caps.hyperplane_cap);
    let problem = Problem::build(spec, cli.module.as_deref(), cli.order_cap)?;
    let setup = start.elapsed();
    let settings = Settings {
        max_degree,
        hyperplane_cap,
    };
    let results = commands::run(cli.command, &problem, &settings)?;
    let total = start.elapsed();

    let echo = json!({
        "name": cli.command.name(),
        "module": problem.module_name,
        "max_degree": max_degree,
        "order_cap": cli.order_cap.or(problem.spec.caps.order_cap),
        "hyperplane_cap": hyperplane_cap,
        "seed": cli.seed,
    });
    let summary = json!({
        "field": problem.field.to_string(),
        "dimension": problem.group.dim(),
        "generators": problem.group.generators().len(),
        "group_order": problem.group.order(),
        "module": problem.module_name,
        "module_dim": problem.module.dim(),
    });
    let timings = cli.timings.then(|| {
        json!({
            "setup_ms": setup.as_secs_f64() * 1e3,
            "command_ms": (total - setup).as_secs_f64() * 1e3,
        })
    });
    Ok(match cli.format {
        Format::Machine => {
            let mut report = json!({
                "schema": "v1",
                "engine": format!("covariant-core {}", covariant_core::VERSION),
                "command": echo,
                "problem": summary,
                "results": results,
            });
            if let Some(t) = timings {
                report["timings"] = t;
            }
            serde_json::to_string_pretty(&report).expect("serializable") + "\n"
        }
        Format::Human => {
            let mut out = format!(
                "invartool {} (covariant-core {})\n",
                cli.command.name(),
                covariant_core::VERSION
            );
            out += &format!(
                "group: order {} over {} in dimension {}, {} generators\n",
                problem.group.order(),
                problem.field,
                problem.group.dim(),
                problem.group.generators().len()
            );
            out += &format!(
                "module: {} (dimension {})\n",
                problem.module_name,
                problem.module.dim()
            );
            if let Some(seed) = cli.seed {
                out += &format!("seed: {seed}\n");
            }
            out += "\n";
            out += &render::human(&results);
            if let Some(t) = timings {
                out += "\n";
                out += &render::human(&json!({ "timings": t }));
            }
            out
        }
    })
}

fn error_report(e: &CliError, format: Format) -> Option<String> {
    (format == Format::Machine).then(|| {
        let v: Value = json!({
            "schema": "v1",
            "engine": format!("covariant-core {}", covariant_core::VERSION),
            "error": { "code": e.code(), "exit_code": e.exit_code(), "message": e.to_string() },
        });
        serde_json::to_string_pretty(&v).expect("serializable") + "\n"
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_EXIT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match catch_unwind(AssertUnwindSafe(|| execute(&cli))) {
        Ok(Ok(out)) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Ok(Err(e)) => {
            if let Some(report) = error_report(&e, cli.format) {
                print!("{report}");
            }
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(e.exit_code())
        }
        Err(_) => {
            eprintln!("error[internal]: unexpected failure");
            ExitCode::from(INTERNAL_EXIT)
        }
    }
}
