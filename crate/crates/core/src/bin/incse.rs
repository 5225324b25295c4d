use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use incse::experiment::{
    convergence_experiment, run_baseline, run_compare, run_measure, write_csv, ConvergenceConfig,
    CsvTable, Dim, Failure, RunConfig, DEFAULT_REPETITIONS,
};
use incse::generators::{generate_dataset, Dataset, DatasetConfig, Process};
use incse::{Error, Result};

/// Incremental structural entropy experiments.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a dynamic-graph dataset directory.
    Generate(GenerateArgs),
    /// Incremental measurement of every step.
    Measure(RunArgs),
    /// Recalculate-from-scratch entropy of every step.
    Baseline(RunArgs),
    /// Speedup and relative error of measurement against baseline.
    Compare(RunArgs),
    /// Local Difference convergence sweep with bound checks.
    Convergence(ConvergenceArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// JSON dataset configuration (plus an optional "out" directory).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Reference process settings when no config is given: hawkes, triad or pbp.
    #[arg(long)]
    process: Option<String>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// JSON file with any of: dataset, dim, seed, out, repetitions.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    dataset: Option<PathBuf>,
    #[arg(long)]
    dim: Option<u8>,
    #[arg(long)]
    seed: Option<u64>,
    /// CSV output path; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    repetitions: Option<usize>,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    Ok(serde_json::from_str(&text)?)
}

fn emit<T: CsvTable>(out: Option<&Path>, rows: &[T]) -> Result<()> {
    let res = match out {
        Some(p) => File::create(p).and_then(|f| write_csv(BufWriter::new(f), rows)),
        None => write_csv(io::stdout().lock(), rows),
    };
    res.map_err(|e| Error::Io {
        path: out.map_or_else(|| "<stdout>".into(), Path::to_path_buf),
        source: e,
    })
}

fn print_json(value: &impl Serialize) {
    let mut err = io::stderr().lock();
    let _ = writeln!(
        err,
        "{}",
        serde_json::to_string_pretty(value).unwrap_or_default()
    );
}

struct Resolved {
    dataset: Dataset,
    dim: Dim,
    seed: u64,
    out: Option<PathBuf>,
    repetitions: usize,
}

fn resolve(args: RunArgs) -> Result<Resolved> {
    let file: RunConfig = match &args.config {
        Some(p) => read_json(p)?,
        None => RunConfig::default(),
    };
    let dir = args
        .dataset
        .or(file.dataset)
        .ok_or_else(|| Error::Config("--dataset is required".into()))?;
    Ok(Resolved {
        dataset: Dataset::load(dir)?,
        dim: Dim::try_from(args.dim.or(file.dim).unwrap_or(1))?,
        seed: args.seed.or(file.seed).unwrap_or(0),
        out: args.out.or(file.out),
        repetitions: args
            .repetitions
            .or(file.repetitions)
            .unwrap_or(DEFAULT_REPETITIONS),
    })
}

fn run(cli: Cli) -> Result<Vec<Failure>> {
    match cli.command {
        Command::Generate(a) => {
            #[derive(serde::Deserialize)]
            struct GenerateFile {
                #[serde(flatten)]
                dataset: DatasetConfig,
                out: Option<PathBuf>,
            }
            let (mut cfg, file_out) = match (&a.config, &a.process) {
                (Some(p), _) => {
                    let f: GenerateFile = read_json(p)?;
                    (f.dataset, f.out)
                }
                (None, Some(name)) => {
                    let process = Process::reference(name)
                        .ok_or_else(|| Error::Config(format!("unknown process {name:?}")))?;
                    (DatasetConfig::reference(process, 0), None)
                }
                (None, None) => {
                    return Err(Error::Config(
                        "either --config or --process is required".into(),
                    ))
                }
            };
            if let Some(s) = a.seed {
                cfg.seed = s;
            }
            if let Some(d) = a.dim {
                cfg.process = cfg.process.with_dim(d);
            }
            let out = a
                .out
                .or(file_out)
                .ok_or_else(|| Error::Config("--out is required".into()))?;
            let ds = generate_dataset(&cfg)?;
            ds.save(&out)?;
            let _ = writeln!(
                io::stdout().lock(),
                "{}",
                serde_json::to_string_pretty(&ds.manifest.snapshots)?
            );
            Ok(Vec::new())
        }
        Command::Measure(a) => {
            let r = resolve(a)?;
            let report = run_measure(&r.dataset, r.dim, r.repetitions)?;
            emit(r.out.as_deref(), &report.rows)?;
            print_json(&json!({ "init_seconds": report.init_seconds }));
            Ok(Vec::new())
        }
        Command::Baseline(a) => {
            let r = resolve(a)?;
            let rows = run_baseline(&r.dataset, r.dim, r.seed, r.repetitions)?;
            emit(r.out.as_deref(), &rows)?;
            Ok(Vec::new())
        }
        Command::Compare(a) => {
            let r = resolve(a)?;
            let report = run_compare(&r.dataset, r.dim, r.seed, r.repetitions)?;
            emit(r.out.as_deref(), &report.records)?;
            print_json(&report.summary);
            Ok(report.failures)
        }
        Command::Convergence(a) => {
            let mut cfg: ConvergenceConfig = match &a.config {
                Some(p) => read_json(p)?,
                None => ConvergenceConfig::default(),
            };
            if let Some(s) = a.seed {
                cfg.seed = s;
            }
            let out = a.out.or(cfg.out.clone());
            let report = convergence_experiment(&cfg)?;
            emit(out.as_deref(), &report.trials)?;
            print_json(&report.sizes);
            Ok(report.failures)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(failures) if failures.is_empty() => ExitCode::SUCCESS,
        Ok(failures) => {
            print_json(&json!({ "status": "failed", "failures": failures }));
            ExitCode::from(1)
        }
        Err(e) => {
            print_json(&json!({ "status": "error", "message": e.to_string() }));
            ExitCode::from(2)
        }
    }
}
