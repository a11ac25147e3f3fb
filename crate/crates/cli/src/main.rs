use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use logcy_core::enumeration::{self, EnumBounds};
use logcy_core::homology::LogCYPair;
use logcy_core::json::parse_rational;
use logcy_core::moves::SearchBounds;
use logcy_core::report::{self, PreconditionError};
use logcy_core::Divisor;
use serde_json::Value;

#[derive(Parser)]
#[command(name = "logcy", version, about = "Exact invariants of cycles of spheres and log Calabi-Yau divisors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inertia, determinant, monodromy trace and contact type.
    Classify { file: PathBuf },
    /// Monodromy matrix, trace and bundle type of a cycle.
    Monodromy { file: PathBuf },
    /// Dual cycle of a negative definite cycle, or the dual torus.
    Dual { file: PathBuf },
    /// Toric minimal representative and the blow-downs reaching it.
    Reduce { file: PathBuf },
    /// Bounded search for a toric-move path between two cycles.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_length: usize,
        #[arg(long, default_value_t = -10, allow_hyphen_values = true)]
        min_entry: i64,
        #[arg(long, default_value_t = 6)]
        max_steps: usize,
    },
    /// Anti-canonical divisors reachable from the minimal models, as JSON lines.
    Enumerate {
        #[arg(long, default_value_t = 4)]
        max_length: usize,
        #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
        min_entry: i64,
        #[arg(long, default_value_t = 4)]
        max_moves: usize,
        /// Inclusive parameter range for the C and D cases, as LO..HI.
        #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
        param_range: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Accepted for compatibility; every algorithm here is deterministic.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Validation and constraint report for a pair file.
    Check { file: PathBuf },
    /// Solve Q_D z = a for the given areas.
    SolveExact {
        file: PathBuf,
        /// Comma-separated positive rationals, e.g. 1,3/2,2.
        #[arg(long, allow_hyphen_values = true)]
        areas: String,
    },
    /// Plumbing graph in DOT format.
    Graph {
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Malformed(String),
    Precondition(String),
}

impl From<PreconditionError> for Failure {
    fn from(e: PreconditionError) -> Self {
        Failure::Precondition(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Malformed(e.to_string())
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn read_divisor(path: &Path) -> Result<Divisor, Failure> {
    Divisor::from_json(&read_json(path)?).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<i64>, Failure> {
    let bad = || Failure::Malformed(format!("parameter range `{text}` is not of the form LO..HI"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

fn emit(v: &Value) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    writeln!(out, "{v}")?;
    Ok(())
}

/// Rough per-record footprint of the dedup index, for the soft memory cap.
const RECORD_BYTES: usize = 512;

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Classify { file } => emit(&report::classify(&read_divisor(&file)?)),
        Command::Monodromy { file } => emit(&report::monodromy(&read_divisor(&file)?)?),
        Command::Dual { file } => emit(&report::dual(&read_divisor(&file)?)?),
        Command::Reduce { file } => emit(&report::reduce(&read_divisor(&file)?)?),
        Command::Equiv {
            a,
            b,
            max_length,
            min_entry,
            max_steps,
        } => {
            let bounds = SearchBounds::new(max_length, min_entry, max_steps);
            emit(&report::equiv(&read_divisor(&a)?, &read_divisor(&b)?, &bounds)?)
        }
        Command::Enumerate {
            max_length,
            min_entry,
            max_moves,
            param_range,
            out,
            workers,
            seed: _,
        } => {
            if workers == 0 {
                return Err(Failure::Malformed("--workers must be at least 1".into()));
            }
            let bounds = EnumBounds::new(max_length, min_entry, max_moves, parse_range(&param_range)?);
            let result = enumeration::enumerate_anticanonical(&bounds, workers);
            if let Some(cap) = std::env::var("LOGCY_MAX_MEM").ok().and_then(|v| v.parse::<usize>().ok()) {
                let estimate = result.records.len() * RECORD_BYTES;
                if estimate > cap {
                    eprintln!("warning: dedup index uses about {estimate} bytes, above LOGCY_MAX_MEM = {cap}");
                }
            }
            match out {
                Some(path) => result.write_jsonl(io::BufWriter::new(fs::File::create(path)?))?,
                None => result.write_jsonl(io::BufWriter::new(io::stdout().lock()))?,
            }
            eprintln!(
                "{} records from {} minimal models ({} filtered)",
                result.stats.emitted,
                result.stats.seeds,
                result.stats.filtered.values().sum::<usize>()
            );
            Ok(())
        }
        Command::Check { file } => {
            let pair = LogCYPair::from_json(&read_json(&file)?)
                .map_err(|e| Failure::Malformed(format!("{}: {e}", file.display())))?;
            emit(&report::check(&pair))
        }
        Command::SolveExact { file, areas } => {
            let d = read_divisor(&file)?;
            let areas = areas
                .split(',')
                .map(parse_rational)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::Malformed(e.to_string()))?;
            emit(&report::solve_exact(&d, &areas)?)
        }
        Command::Graph { file, output } => {
            let dot = report::graph_dot(&read_divisor(&file)?);
            match output {
                Some(path) => fs::write(path, dot)?,
                None => io::stdout().lock().write_all(dot.as_bytes())?,
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Malformed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("precondition failed: {msg}");
            ExitCode::from(2)
        }
    }
}
