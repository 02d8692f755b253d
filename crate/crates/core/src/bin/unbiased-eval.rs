//! Command-line front end.
//!
//! Exit codes: 0 success, 2 input error, 1 internal error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use unbiased_eval::input::{read_labels, read_scores};
use unbiased_eval::report::Report;
use unbiased_eval::roc::{curve_auc, sweep};
use unbiased_eval::simulate::{run_study, summarize, write_study_csv, write_summary_csv, StudyConfig, DEFAULT_SEED};
use unbiased_eval::{ContingencyCounts, EvalError};

#[derive(Parser)]
#[command(name = "unbiased-eval", version, about = "Biased and unbiased evaluation of binary classifiers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Report every measure for one contingency table
    Metrics {
        /// Cell counts A,B,C,D (TP,FP,FN,TN)
        #[arg(long, value_name = "A,B,C,D", conflicts_with = "labels", required_unless_present = "labels")]
        counts: Option<String>,
        /// CSV file with header `gold,pred` and 0/1 values
        #[arg(long, value_name = "PATH")]
        labels: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// ROC curve of a score-valued classifier
    Sweep {
        /// CSV file with header `gold,score`
        #[arg(long, value_name = "PATH")]
        scores: PathBuf,
    },
    /// Run the Monte Carlo study
    Simulate {
        #[arg(long, default_value_t = 11)]
        levels: u32,
        #[arg(long, default_value_t = 10)]
        runs: u32,
        /// Instances per simulated table
        #[arg(long, default_value_t = 1000)]
        n: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_name = "LO,HI", default_value = "0.05,0.95")]
        prevalence: String,
        #[arg(long = "guess-bias", value_name = "LO,HI", default_value = "0.05,0.95")]
        guess_bias: String,
        /// Study CSV destination (standard output when omitted)
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Summary CSV destination
        #[arg(long, value_name = "PATH")]
        summary: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Internal(String),
}

impl Failure {
    fn input(err: impl std::fmt::Display) -> Self {
        Failure::Input(err.to_string())
    }

    fn internal(err: impl std::fmt::Display) -> Self {
        Failure::Internal(err.to_string())
    }
}

fn classify(err: EvalError) -> Failure {
    match err {
        EvalError::Io(e) => Failure::internal(e),
        other => Failure::input(other),
    }
}

fn parse_counts(text: &str) -> Result<ContingencyCounts, Failure> {
    let cells: Vec<i64> = text
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Input(format!("--counts: {e}")))?;
    let [a, b, c, d] = cells[..] else {
        return Err(Failure::Input(format!(
            "--counts expects four comma-separated integers, got {}",
            cells.len()
        )));
    };
    ContingencyCounts::from_signed(a, b, c, d).map_err(classify)
}

fn parse_range(flag: &str, text: &str) -> Result<(f64, f64), Failure> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Input(format!("--{flag}: {e}")))?;
    match parts[..] {
        [lo, hi] => Ok((lo, hi)),
        _ => Err(Failure::Input(format!("--{flag} expects LO,HI"))),
    }
}

fn open_input(path: &Path) -> Result<File, Failure> {
    File::open(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn with_path(path: &Path, err: EvalError) -> Failure {
    match classify(err) {
        Failure::Input(msg) => Failure::Input(format!("{}: {msg}", path.display())),
        internal => internal,
    }
}

fn create_output(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::Internal(format!("{}: {e}", path.display())))
}

fn metrics(counts: Option<String>, labels: Option<PathBuf>, format: Format) -> Result<(), Failure> {
    let table = match (counts, labels) {
        (Some(text), _) => parse_counts(&text)?,
        (None, Some(path)) => {
            let (gold, pred) = read_labels(open_input(&path)?).map_err(|e| with_path(&path, e))?;
            ContingencyCounts::from_labels(&gold, &pred).map_err(classify)?
        }
        (None, None) => return Err(Failure::Input("one of --counts or --labels is required".into())),
    };
    let report = Report::from_counts(&table);
    let out = BufWriter::new(io::stdout().lock());
    match format {
        Format::Json => report.write_json(out),
        Format::Csv => report.write_csv(out),
    }
    .map_err(classify)
}

fn sweep_cmd(path: &Path) -> Result<(), Failure> {
    let (gold, scores) = read_scores(open_input(path)?).map_err(|e| with_path(path, e))?;
    let curve = sweep(&gold, &scores).map_err(classify)?;
    let mut out = BufWriter::new(io::stdout().lock());
    let write = |out: &mut BufWriter<_>| -> io::Result<()> {
        writeln!(out, "threshold,fpr,tpr")?;
        for entry in &curve {
            writeln!(out, "{},{},{}", entry.threshold, entry.point.fpr, entry.point.tpr)?;
        }
        writeln!(out, "auc,{}", curve_auc(&curve))?;
        out.flush()
    };
    write(&mut out).map_err(Failure::internal)
}

#[allow(clippy::too_many_arguments)]
fn simulate_cmd(
    levels: u32,
    runs: u32,
    n: u64,
    seed: u64,
    prevalence: &str,
    guess_bias: &str,
    out: Option<PathBuf>,
    summary: Option<PathBuf>,
) -> Result<(), Failure> {
    let cfg = StudyConfig {
        levels,
        runs_per_level: runs,
        instances_per_run: n,
        prevalence_range: parse_range("prevalence", prevalence)?,
        guess_bias_range: parse_range("guess-bias", guess_bias)?,
        seed,
    };
    cfg.validate().map_err(classify)?;
    let records = run_study(&cfg).map_err(classify)?;
    match out {
        Some(path) => write_study_csv(&records, create_output(&path)?),
        None => write_study_csv(&records, BufWriter::new(io::stdout().lock())),
    }
    .map_err(classify)?;
    if let Some(path) = summary {
        let stats = summarize(&records).map_err(classify)?;
        write_summary_csv(&stats, create_output(&path)?).map_err(classify)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Metrics { counts, labels, format } => metrics(counts, labels, format),
        Command::Sweep { scores } => sweep_cmd(&scores),
        Command::Simulate {
            levels,
            runs,
            n,
            seed,
            prevalence,
            guess_bias,
            out,
            summary,
        } => simulate_cmd(levels, runs, n, seed, &prevalence, &guess_bias, out, summary),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
