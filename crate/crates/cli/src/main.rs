use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use postrip::algebra::json as algebra_json;
use postrip::algebra::models::by_name;
use postrip::catalog::{catalog_list, find, parse_spec, replay, run_check, Filter, RunConfig};
use postrip::report::{expected_name, verify_report, CheckReport};

#[derive(Parser)]
#[command(name = "postrip", version, about = "Exact checks of positive triples h ⊂ k ⊂ g")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every sampled stage.
    #[arg(long, global = true, default_value_t = RunConfig::default().seed)]
    seed: u64,
    /// Sampled A, probes and transitivity samples per check.
    #[arg(long, global = true, default_value_t = RunConfig::default().samples)]
    samples: usize,
    /// Largest family parameter n in the catalog.
    #[arg(long, global = true, default_value_t = RunConfig::default().max_n)]
    max_n: usize,
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "md")]
    json: bool,
    /// Emit markdown (the default).
    #[arg(long, global = true)]
    md: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ListFilter {
    All,
    Positive,
    Negative,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog entries.
    List {
        #[arg(long, value_enum, default_value = "all")]
        filter: ListFilter,
    },
    /// Run the pipeline on a catalog entry or an inline spec file.
    Check {
        #[arg(required_unless_present = "spec", conflicts_with = "spec")]
        id: Option<String>,
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Check every catalog entry and print the verdict table.
    Replay,
    /// Print an algebra as a JSON document.
    ExportAlgebra { name: String },
    /// Re-check every witness in a report.
    VerifyReport { file: PathBuf },
}

impl Cli {
    fn config(&self) -> RunConfig {
        RunConfig { seed: self.seed, samples: self.samples, max_n: self.max_n, ..RunConfig::default() }
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                let mut text = text.to_string();
                if !text.ends_with('\n') {
                    text.push('\n');
                }
                match std::io::stdout().lock().write_all(text.as_bytes()) {
                    Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                    r => r.context("writing stdout"),
                }
            }
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let cfg = cli.config();
    match &cli.command {
        Command::List { filter } => {
            let filter = match filter {
                ListFilter::All => Filter::All,
                ListFilter::Positive => Filter::Positive,
                ListFilter::Negative => Filter::Negative,
            };
            let entries = catalog_list(filter, cfg.max_n);
            let text = if cli.json {
                let rows: Vec<_> = entries
                    .iter()
                    .map(|e| {
                        serde_json::json!({
                            "id": e.id,
                            "description": e.description,
                            "expected": e.expected.map(expected_name),
                            "recipe": e.recipe.to_string(),
                        })
                    })
                    .collect();
                serde_json::to_string_pretty(&rows)?
            } else {
                let mut s = String::from("| id | triple | expected |\n|---|---|---|\n");
                for e in &entries {
                    s += &format!("| {} | {} | {} |\n", e.id, e.description, e.expected.map(expected_name).unwrap_or("-"));
                }
                s
            };
            cli.emit(&text)?;
            Ok(0)
        }
        Command::Check { id, spec } => {
            let entry = match (id, spec) {
                (_, Some(path)) => {
                    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    parse_spec(&text)?
                }
                (Some(id), None) => find(id)?,
                (None, None) => unreachable!("clap requires an id or a spec"),
            };
            let out = run_check(&entry, &cfg)?;
            let text = if cli.json { out.report.to_json() } else { out.report.to_markdown(&out.timings) };
            cli.emit(&text)?;
            Ok(if out.report.matches_expected() == Some(false) { 1 } else { 0 })
        }
        Command::Replay => {
            let (doc, times) = replay(&cfg);
            let text = if cli.json { doc.to_json() } else { doc.to_markdown(&times) };
            cli.emit(&text)?;
            Ok(if doc.all_match() { 0 } else { 1 })
        }
        Command::ExportAlgebra { name } => {
            let l = by_name(name)?;
            cli.emit(&algebra_json::to_json(&l))?;
            Ok(0)
        }
        Command::VerifyReport { file } => {
            let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let report = CheckReport::from_json(&text).context("parsing report")?;
            match verify_report(&report) {
                Ok(()) => {
                    cli.emit(&format!("{}: {} verified\n", report.triple_id, report.verdict.as_str()))?;
                    Ok(0)
                }
                Err(e) => {
                    eprintln!("{}: verification failed: {e}", report.triple_id);
                    Ok(1)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
