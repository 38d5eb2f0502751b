//! `mdim`: exact fractional and integer k-metric dimension from the command
//! line.

mod verify;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mdim_core::families::generate;
use mdim_core::frac::{check_k_range, default_samples, fractional_k_dimension_with};
use mdim_core::integer::{brute_force_k_metric_dimension, k_metric_dimension_with, DEFAULT_GUARD};
use mdim_core::rational::{equally_spaced, parse_rational, to_u64_exact, Rational};
use mdim_core::{FamilySpec, Graph, PairSystem};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "mdim", version, about = "Exact fractional and integer k-metric dimension")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve dim_f^k or dim^k for one graph and print a JSON report.
    Compute {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        k: String,
        #[arg(long, value_enum, default_value_t = Mode::Fractional)]
        mode: Mode,
    },
    /// Tabulate k -> dim_f^k as CSV.
    Sweep {
        #[command(flatten)]
        source: Source,
        /// Comma-separated rationals, e.g. 1,3/2,2.
        #[arg(long, conflicts_with = "count")]
        samples: Option<String>,
        /// Number of equally spaced samples from 1 to kappa.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a family member as an edge list.
    Generate {
        #[arg(long)]
        family: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare closed forms against the solvers; exit 3 on any mismatch.
    Verify {
        #[arg(long, value_enum, default_value_t = verify::Scope::All)]
        scope: verify::Scope,
        /// Largest vertex count of any generated instance.
        #[arg(long, default_value_t = 21)]
        max_n: usize,
        /// Number of random trees in the trees scope.
        #[arg(long, default_value_t = 30)]
        count: usize,
        /// Leg length for the three-leg construction.
        #[arg(long, default_value_t = 2)]
        s: usize,
    },
    /// Exhaustive dim^k for small graphs.
    Oracle {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        k: String,
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Edge-list file.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Family spec such as petersen, grid:3x4 or remark:path:2,s=2.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Fractional,
    Integer,
}

#[derive(Serialize)]
#[serde(rename_all = "lowercase")]
enum Input {
    Graph(String),
    Family(String),
}

#[derive(Serialize)]
struct RunReport<P: Serialize, R: Serialize> {
    command: &'static str,
    input: Input,
    parameters: P,
    result: R,
    timing_ms: u128,
}

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Core(mdim_core::Error),
    Mismatch(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Core(e) if e.is_domain() => 2,
            CliError::Core(_) => 1,
            CliError::Mismatch(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Mismatch(msg) => write!(f, "mismatch: {msg}"),
        }
    }
}

impl From<mdim_core::Error> for CliError {
    fn from(e: mdim_core::Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn load(source: &Source) -> CliResult<(Input, Graph)> {
    match (&source.graph, &source.family) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok((Input::Graph(path.display().to_string()), Graph::parse_edge_list(&text)?))
        }
        (None, Some(spec)) => {
            let spec: FamilySpec = spec.parse()?;
            Ok((Input::Family(spec.to_string()), generate(&spec)?))
        }
        (None, None) => unreachable!("clap requires one graph source"),
    }
}

fn integral_k(k: &Rational) -> CliResult<usize> {
    if *k < Rational::from_integer(1.into()) {
        return Err(mdim_core::Error::KBelowOne { k: k.to_string() }.into());
    }
    to_u64_exact(k)
        .map(|v| v as usize)
        .ok_or_else(|| mdim_core::Error::NonIntegralK { k: k.to_string() }.into())
}

fn write_output(out: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => emit(text),
    }
}

/// Writes to stdout; a closed pipe on the reading side is not an error.
pub fn emit(text: &str) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(CliError::Io(format!("stdout: {e}")))
        }
        _ => Ok(()),
    }
}

fn print_json<T: Serialize>(value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    emit(&(text + "\n"))
}

#[derive(Serialize)]
struct ComputeParams {
    k: String,
    mode: Mode,
}

fn cmd_compute(source: &Source, k: &str, mode: Mode) -> CliResult<()> {
    let start = Instant::now();
    let k = parse_rational(k)?;
    let (input, g) = load(source)?;
    let ps = PairSystem::new(&g)?;
    let result = match mode {
        Mode::Fractional => serde_json::to_value(fractional_k_dimension_with(&ps, &k)?),
        Mode::Integer => {
            let ki = integral_k(&k)?;
            serde_json::to_value(k_metric_dimension_with(&ps, ki)?)
        }
    }
    .map_err(|e| CliError::Io(e.to_string()))?;
    print_json(&RunReport {
        command: "compute",
        input,
        parameters: ComputeParams { k: k.to_string(), mode },
        result,
        timing_ms: start.elapsed().as_millis(),
    })
}

fn parse_samples(text: &str) -> CliResult<Vec<Rational>> {
    text.split(',')
        .map(|t| parse_rational(t.trim()).map_err(CliError::from))
        .collect()
}

fn cmd_sweep(
    source: &Source,
    samples: &Option<String>,
    count: Option<usize>,
    out: &Option<PathBuf>,
) -> CliResult<()> {
    let explicit = samples.as_deref().map(parse_samples).transpose()?;
    let (_, g) = load(source)?;
    let ps = PairSystem::new(&g)?;
    let kappa = ps.kappa();
    let ks = match (explicit, count) {
        (Some(ks), _) => ks,
        (None, Some(c)) => equally_spaced(kappa as u64, c),
        (None, None) => default_samples(kappa, 2),
    };
    for k in &ks {
        check_k_range(k, kappa)?;
    }
    let values: Vec<Rational> = ks
        .par_iter()
        .map(|k| fractional_k_dimension_with(&ps, k).map(|r| r.value))
        .collect::<Result<_, _>>()?;
    let mut csv = String::from("k,value\n");
    for (k, v) in ks.iter().zip(&values) {
        csv.push_str(&format!("{k},{v}\n"));
    }
    write_output(out, &csv)
}

fn cmd_generate(family: &str, out: &Option<PathBuf>) -> CliResult<()> {
    let spec: FamilySpec = family.parse()?;
    write_output(out, &generate(&spec)?.to_edge_list())
}

#[derive(Serialize)]
struct OracleParams {
    k: usize,
    guard: usize,
}

fn cmd_oracle(source: &Source, k: &str, guard: usize) -> CliResult<()> {
    let start = Instant::now();
    let k = integral_k(&parse_rational(k)?)?;
    let (input, g) = load(source)?;
    let result = brute_force_k_metric_dimension(&g, k, guard)?;
    print_json(&RunReport {
        command: "oracle",
        input,
        parameters: OracleParams { k, guard },
        result,
        timing_ms: start.elapsed().as_millis(),
    })
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("MDIM_THREADS") else { return Ok(()) };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Io(format!("MDIM_THREADS={raw:?} is not a non-negative integer")))?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Io(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    match &cli.command {
        Command::Compute { source, k, mode } => cmd_compute(source, k, *mode),
        Command::Sweep { source, samples, count, out } => cmd_sweep(source, samples, *count, out),
        Command::Generate { family, out } => cmd_generate(family, out),
        Command::Verify { scope, max_n, count, s } => {
            verify::run(*scope, &verify::Limits { max_n: *max_n, trees: *count, s: *s })
        }
        Command::Oracle { source, k, guard } => cmd_oracle(source, k, *guard),
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
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_by_error_class() {
        assert_eq!(CliError::Io("x".into()).exit_code(), 1);
        assert_eq!(CliError::Core(mdim_core::Error::EmptyInput).exit_code(), 1);
        assert_eq!(CliError::Core(mdim_core::Error::Disconnected).exit_code(), 2);
        assert_eq!(CliError::Mismatch("x".into()).exit_code(), 3);
    }

    #[test]
    fn integral_k_rules() {
        assert_eq!(integral_k(&Rational::from_integer(3.into())).unwrap(), 3);
        assert_eq!(integral_k(&parse_rational("5/2").unwrap()).unwrap_err().exit_code(), 2);
        assert_eq!(integral_k(&Rational::from_integer(0.into())).unwrap_err().exit_code(), 2);
    }
}
