mod text;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use ncinv_core::error::{Error, Result};
use ncinv_core::fixtures;
use ncinv_core::input::InputDocument;
use ncinv_core::pipeline::{self, Command, Mismatch, Report};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(
    name = "ncinv",
    version,
    about = "Invariants of graded algebras under finite group and Hopf actions"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Truncation degree N (default: the document's value, else 8).
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Largest homological index P (default: the document's value, else 4).
    #[arg(long, global = true)]
    max_homological: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Recorded in the report; every computation is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include wall-clock timing (breaks byte-identical output).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(clap::Args)]
struct Input {
    /// Path to an input document, or a built-in fixture id.
    input: String,
    /// Parameter for the ex1.2.1 and ex3.6 families.
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    Validate(Input),
    Basis(Input),
    Invariants(Input),
    Beta(Input),
    Tau(Input),
    HilbertIdeal(Input),
    Annihilators(Input),
    Resolve(Input),
    Betti(Input),
    Torreg(Input),
    Cmreg(Input),
    Series(Input),
    CheckBounds(Input),
    /// Run a built-in fixture (or `all`) and compare against its golden values.
    Reproduce(Input),
    /// List the built-in fixtures.
    Fixtures,
    /// Print the JSON schema for input documents.
    Schema,
}

#[derive(Serialize)]
struct InputInfo {
    source: String,
    sha256: String,
}

#[derive(Serialize)]
struct RunReport {
    version: &'static str,
    command: String,
    input: InputInfo,
    truncation: pipeline::Truncation,
    seed: u64,
    status: &'static str,
    exit_code: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mismatches: Option<Vec<Mismatch>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<f64>,
}

fn load(input: &Input) -> Result<(InputDocument, String)> {
    let path = Path::new(&input.input);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::schema("", format!("cannot read {}: {e}", path.display())))?;
        Ok((
            InputDocument::parse(&text)?,
            format!("file:{}", input.input),
        ))
    } else {
        let doc = fixtures::load(&input.input, input.m)?;
        Ok((doc, format!("fixture:{}", doc_name(&input.input, input.m))))
    }
}

fn doc_name(id: &str, m: Option<usize>) -> String {
    match m {
        Some(m) => format!("{id} m={m}"),
        None => id.to_string(),
    }
}

fn run(cli: &Cli, name: &str, input: &Input, command: Option<Command>) -> RunReport {
    let start = Instant::now();
    let mut rr = RunReport {
        version: env!("CARGO_PKG_VERSION"),
        command: name.to_string(),
        input: InputInfo {
            source: input.input.clone(),
            sha256: String::new(),
        },
        truncation: pipeline::Truncation {
            max_degree: cli.max_degree.unwrap_or(8),
            max_homological: cli.max_homological.unwrap_or(4),
        },
        seed: cli.seed,
        status: "ok",
        exit_code: 0,
        report: None,
        mismatches: None,
        error: None,
        timing_ms: None,
    };
    let result = (|| -> Result<(Report, Option<Vec<Mismatch>>)> {
        let (doc, source) = load(input)?;
        rr.input = InputInfo {
            source,
            sha256: hex::encode(Sha256::digest(doc.to_json().as_bytes())),
        };
        let mut fx = doc.compile()?;
        if let Some(n) = cli.max_degree {
            fx.params.max_degree = n;
        }
        if let Some(p) = cli.max_homological {
            fx.params.max_homological = p;
        }
        rr.truncation = pipeline::Truncation {
            max_degree: fx.params.max_degree,
            max_homological: fx.params.max_homological,
        };
        match command {
            Some(c) => Ok((pipeline::analyze(&fx, &[c])?, None)),
            None => {
                let (r, m) = pipeline::reproduce(&fx)?;
                Ok((r, Some(m)))
            }
        }
    })();
    match result {
        Ok((report, mismatches)) => {
            if report.certified_violations() > 0 {
                rr.status = "certified-violation";
                rr.exit_code = 4;
            } else if mismatches.as_ref().is_some_and(|m| !m.is_empty()) {
                rr.status = "golden-mismatch";
                rr.exit_code = 1;
            }
            rr.report = Some(report);
            rr.mismatches = mismatches;
        }
        Err(e) => {
            rr.exit_code = e.exit_code() as u8;
            rr.status = match rr.exit_code {
                2 => "invalid-input",
                3 => "cap-exceeded",
                _ => "error",
            };
            rr.error = Some(e.to_string());
        }
    }
    if cli.timing {
        rr.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    rr
}

fn emit(cli: &Cli, body: String) -> std::io::Result<()> {
    match &cli.out {
        Some(p) => std::fs::write(p, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn render(cli: &Cli, reports: &[RunReport]) -> String {
    match cli.output {
        Output::Json => {
            let mut s = if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0])
            } else {
                serde_json::to_string_pretty(reports)
            }
            .expect("report serializes");
            s.push('\n');
            s
        }
        Output::Text => reports
            .iter()
            .map(text::render)
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, input, command) = match &cli.command {
        Cmd::Fixtures => {
            let ids: Vec<&str> = fixtures::FIXTURES.iter().map(|(k, _)| *k).collect();
            let body = match cli.output {
                Output::Json => serde_json::to_string_pretty(&ids).expect("ids serialize") + "\n",
                Output::Text => ids.join("\n") + "\n",
            };
            return finish(emit(&cli, body), 0);
        }
        Cmd::Schema => return finish(emit(&cli, fixtures::SCHEMA.to_string()), 0),
        Cmd::Reproduce(i) => ("reproduce", i, None),
        Cmd::Validate(i) => ("validate", i, Some(Command::Validate)),
        Cmd::Basis(i) => ("basis", i, Some(Command::Basis)),
        Cmd::Invariants(i) => ("invariants", i, Some(Command::Invariants)),
        Cmd::Beta(i) => ("beta", i, Some(Command::Beta)),
        Cmd::Tau(i) => ("tau", i, Some(Command::Tau)),
        Cmd::HilbertIdeal(i) => ("hilbert-ideal", i, Some(Command::HilbertIdeal)),
        Cmd::Annihilators(i) => ("annihilators", i, Some(Command::Annihilators)),
        Cmd::Resolve(i) => ("resolve", i, Some(Command::Resolve)),
        Cmd::Betti(i) => ("betti", i, Some(Command::Betti)),
        Cmd::Torreg(i) => ("torreg", i, Some(Command::Torreg)),
        Cmd::Cmreg(i) => ("cmreg", i, Some(Command::Cmreg)),
        Cmd::Series(i) => ("series", i, Some(Command::Series)),
        Cmd::CheckBounds(i) => ("check-bounds", i, Some(Command::CheckBounds)),
    };
    let reports: Vec<RunReport> = if command.is_none() && input.input == "all" {
        fixtures::FIXTURES
            .par_iter()
            .filter(|(id, _)| !id.contains("bad"))
            .map(|(id, _)| {
                let one = Input {
                    input: id.to_string(),
                    m: None,
                };
                run(&cli, name, &one, None)
            })
            .collect()
    } else {
        vec![run(&cli, name, input, command)]
    };
    for r in &reports {
        if let Some(e) = &r.error {
            eprintln!("ncinv: {}: {e}", r.input.source);
        }
    }
    let code = reports
        .iter()
        .map(|r| r.exit_code)
        .max_by_key(|&c| severity(c))
        .unwrap_or(0);
    finish(emit(&cli, render(&cli, &reports)), code)
}

/// Worst outcome wins when several fixtures run together.
fn severity(code: u8) -> u8 {
    match code {
        0 => 0,
        1 => 1,
        3 => 2,
        4 => 3,
        _ => 4,
    }
}

fn finish(io: std::io::Result<()>, code: u8) -> ExitCode {
    match io {
        Ok(()) => ExitCode::from(code),
        Err(e) => {
            eprintln!("ncinv: cannot write output: {e}");
            ExitCode::from(1)
        }
    }
}
