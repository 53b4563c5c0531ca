//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 positivity violation,
//! 3 transform failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use serde_json::json;

use llt_deg::axioms::check_axioms;
use llt_deg::graph::{build_standard_deg, component_shape, generating_function, SignedColoredGraph};
use llt_deg::io::{from_json, to_dot, to_json};
use llt_deg::llt::{build_llt_graph_bounded, llt_schur_bounded, Method};
use llt_deg::macdonald::{kostka_macdonald_bounded, MACDONALD_SIZE_BOUND};
use llt_deg::shapes::{parse_partition, parse_tuple_shape, DEFAULT_SIZE_BOUND};
use llt_deg::symfunc::{extract_schur, SchurPoly};
use llt_deg::transform::transform_to_deg;
use llt_deg::{fixtures, Error, Result};

#[derive(Parser)]
#[command(name = "llt-deg", version, about = "LLT and Macdonald Schur expansions through dual equivalence graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Schur expansion of an LLT polynomial.
    Llt(LltArgs),
    /// Schur expansion of a transformed Macdonald polynomial.
    Macdonald(MacdonaldArgs),
    /// Build, check, transform or render signed, colored graphs.
    Deg {
        #[command(subcommand)]
        command: DegCommand,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Oracle,
    Transform,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct LltArgs {
    /// Tuple of skew shapes, e.g. "2;1,1" or "3,2/1;2".
    #[arg(long)]
    shapes: String,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "oracle")]
    method: MethodArg,
    #[arg(long, default_value_t = DEFAULT_SIZE_BOUND)]
    max_size: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Treat a transform failure as an error instead of using the oracle.
    #[arg(long)]
    no_fallback: bool,
}

#[derive(Args)]
struct MacdonaldArgs {
    /// The partition μ, e.g. "2,1".
    #[arg(long, alias = "partition")]
    mu: String,
    #[arg(long, default_value_t = MACDONALD_SIZE_BOUND)]
    max_size: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct Source {
    /// Graph JSON file.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Standard graph of a partition.
    #[arg(long)]
    partition: Option<String>,
    /// LLT graph of a tuple of shapes (with --k).
    #[arg(long)]
    shapes: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    /// A built-in fixture by name.
    #[arg(long)]
    fixture: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SIZE_BOUND)]
    max_size: usize,
}

#[derive(Args)]
struct Output {
    /// Write the graph to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit DOT instead of JSON.
    #[arg(long)]
    export_dot: bool,
}

#[derive(Subcommand)]
enum DegCommand {
    Build {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    Check {
        #[command(flatten)]
        source: Source,
    },
    Transform {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        /// Write the event log as JSON.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    Components {
        #[command(flatten)]
        source: Source,
    },
    ExportDot {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load(source: &Source) -> Result<SignedColoredGraph> {
    match (&source.input, &source.partition, &source.shapes, &source.fixture) {
        (Some(path), None, None, None) => from_json(&fs::read_to_string(path)?),
        (None, Some(p), None, None) => build_standard_deg(&parse_partition(p)?, None),
        (None, None, Some(s), None) => {
            let k = source.k.ok_or_else(|| Error::Parse("--shapes needs --k".into()))?;
            build_llt_graph_bounded(&parse_tuple_shape(s)?, k, source.max_size)
        }
        (None, None, None, Some(name)) => {
            fixtures::by_name(name).ok_or_else(|| Error::Parse(format!("unknown fixture {name}")))?.build()
        }
        _ => Err(Error::Parse("give exactly one of --in, --partition, --shapes, --fixture".into())),
    }
}

fn emit(g: &SignedColoredGraph, output: &Output) -> Result<()> {
    let text = if output.export_dot { to_dot(g, true) } else { to_json(g)? + "\n" };
    write_text(&output.out, &text)
}

fn write_text(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn schur_json(s: &SchurPoly) -> serde_json::Value {
    let terms: serde_json::Map<String, serde_json::Value> =
        s.sorted_terms().into_iter().map(|(l, c)| (l.to_string(), json!(c.to_string()))).collect();
    json!(terms)
}

fn run_llt(a: &LltArgs) -> Result<()> {
    let shape = parse_tuple_shape(&a.shapes)?;
    let methods: Vec<Method> = match a.method {
        MethodArg::Oracle => vec![Method::Oracle],
        MethodArg::Transform => vec![Method::Transform],
        MethodArg::Both => vec![Method::Oracle, Method::Transform],
    };
    let mut results = Vec::new();
    for m in methods {
        let out = llt_schur_bounded(&shape, a.k, m, a.max_size)?;
        if out.fallbacks > 0 {
            if a.no_fallback {
                return Err(Error::TransformFailed {
                    reason: format!("{} components needed the oracle", out.fallbacks),
                    log: out.log,
                });
            }
            eprintln!("warning: {} components fell back to the oracle", out.fallbacks);
        }
        results.push((m, out.schur));
    }
    if let [(_, x), (_, y)] = results.as_slice() {
        if x != y {
            eprintln!("oracle and transform disagree:\n  oracle:    {x}\n  transform: {y}");
            return Err(Error::Domain("methods disagree".into()));
        }
    }
    match a.format {
        Format::Text => {
            for (m, s) in &results {
                if results.len() > 1 {
                    println!("{}: {s}", if *m == Method::Oracle { "oracle" } else { "transform" });
                } else {
                    println!("{s}");
                }
            }
        }
        Format::Json => {
            let doc: serde_json::Map<String, serde_json::Value> = results
                .iter()
                .map(|(m, s)| ((if *m == Method::Oracle { "oracle" } else { "transform" }).to_string(), schur_json(s)))
                .collect();
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
    }
    Ok(())
}

fn run_macdonald(a: &MacdonaldArgs) -> Result<()> {
    let mu = parse_partition(&a.mu)?;
    let s = kostka_macdonald_bounded(&mu, a.max_size)?;
    match a.format {
        Format::Text => {
            for (lambda, c) in s.sorted_terms() {
                println!("{lambda}: {c}");
            }
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&schur_json(&s))?),
    }
    Ok(())
}

fn run_deg(c: &DegCommand) -> Result<()> {
    match c {
        DegCommand::Build { source, output } => emit(&load(source)?, output),
        DegCommand::Check { source } => {
            let g = load(source)?;
            print!("{}", check_axioms(&g));
            Ok(())
        }
        DegCommand::Transform { source, output, log } => {
            let g = load(source)?;
            let out = transform_to_deg(&g)?;
            if let Some(path) = log {
                fs::write(path, serde_json::to_string_pretty(&out.log)? + "\n")?;
            }
            emit(&out.graph, output)
        }
        DegCommand::Components { source } => {
            let g = load(source)?;
            for comp in g.components(&g.all_colors()) {
                let shape = component_shape(&g, &comp).map_or_else(
                    || {
                        let f = generating_function(&g, &comp, false)?;
                        Ok::<_, Error>(format!("not standard; aggregate {}", extract_schur(&f)?))
                    },
                    |l| Ok(format!("G_{l}")),
                )?;
                println!("{} vertices [{}]: {shape}", comp.len(), comp.iter().join(","));
            }
            Ok(())
        }
        DegCommand::ExportDot { source, out } => write_text(out, &to_dot(&load(source)?, true)),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotSchurPositive { .. } => 2,
        Error::TransformFailed { .. } | Error::Obstruction { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Llt(a) => run_llt(a),
        Command::Macdonald(a) => run_macdonald(a),
        Command::Deg { command } => run_deg(command),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
