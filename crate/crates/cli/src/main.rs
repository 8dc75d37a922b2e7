//! `paulitpd` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failed, 2 I/O error, 3 invalid input
//! or arguments.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use paulitpd::bench::{run_bench, summarize, write_csv, write_summary_csv, BenchConfig};
use paulitpd::io::{format_dense, format_matrix_market, read_matrix, MatrixFile};
use paulitpd::{
    generate, generate_sparse, DecomposeOptions, Decomposition, Error, GeneratorKind,
    GeneratorSpec, Method, TpdConfig,
};

const THREADS_ENV: &str = "PAULITPD_THREADS";
const VERIFY_MAX_QUBITS: usize = 8;
const VERIFY_RELATIVE_TOLERANCE: f64 = 1e-10;

#[derive(Parser)]
#[command(name = "paulitpd", version, about = "Pauli decomposition by tensorized block slicing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a matrix and print its Pauli terms.
    Decompose(DecomposeArgs),
    /// Write a generated matrix.
    Generate(GenerateArgs),
    /// Decompose, reconstruct and compare against the input.
    Verify(VerifyArgs),
    /// Time methods over matrix kinds and qubit counts.
    Bench(BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Matrix file (dense text or Matrix Market).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Generate the input instead of reading it.
    #[arg(long)]
    kind: Option<GeneratorKind>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = paulitpd::generators::DEFAULT_DENSITY)]
    density: f64,
}

#[derive(Args)]
struct EngineArgs {
    #[arg(long, default_value = "tpd-recursive")]
    method: Method,
    /// Prune blocks whose largest entry modulus is at most this.
    #[arg(long, default_value_t = 0.0)]
    epsilon: f64,
    /// Split large blocks across threads.
    #[arg(long)]
    parallel: bool,
    /// Ignore the naive/composer qubit limits.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    engine: EngineArgs,
    /// Output file; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    kind: GeneratorKind,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = paulitpd::generators::DEFAULT_DENSITY)]
    density: f64,
    /// Output file; `.mtx`/`.mm` selects Matrix Market. Stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write Matrix Market regardless of the output name.
    #[arg(long)]
    mm: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    engine: EngineArgs,
    /// Check this decomposition file instead of decomposing.
    #[arg(long)]
    decomposition: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated matrix kinds.
    #[arg(long, value_delimiter = ',', required = true)]
    kind: Vec<GeneratorKind>,
    /// Qubit count `N` or inclusive range `A..B`.
    #[arg(long, value_parser = parse_range)]
    n: RangeInclusive<usize>,
    /// Comma-separated methods.
    #[arg(long, value_delimiter = ',', default_value = "tpd-recursive")]
    method: Vec<Method>,
    #[arg(long, default_value_t = paulitpd::bench::DEFAULT_REPS)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = paulitpd::generators::DEFAULT_DENSITY)]
    density: f64,
    #[arg(long, default_value_t = 0.0)]
    epsilon: f64,
    #[arg(long)]
    parallel: bool,
    #[arg(long)]
    force: bool,
    /// CSV of every run; the per-cell medians go next to it as `<stem>.summary.csv`.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected N or A..B, got {s:?}");
    match s.split_once("..") {
        Some((a, b)) => {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim_start_matches('=').trim().parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok(a..=b)
        }
        None => {
            let n: usize = s.trim().parse().map_err(|_| bad())?;
            Ok(n..=n)
        }
    }
}

/// Failure of a command, carrying its exit code.
enum Failure {
    Io(String),
    Invalid(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_io() {
            Failure::Io(e.to_string())
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

impl InputArgs {
    fn load(&self, sparse: bool) -> Result<MatrixFile, Failure> {
        match (&self.input, self.kind) {
            (Some(path), None) => {
                if self.n.is_some() {
                    return Err(Failure::Invalid("--n only applies with --kind".into()));
                }
                Ok(read_matrix(path)?)
            }
            (None, Some(kind)) => {
                let n = self
                    .n
                    .ok_or_else(|| Failure::Invalid("--kind needs --n".into()))?;
                let spec = GeneratorSpec::new(kind, n)
                    .with_seed(self.seed)
                    .with_density(self.density);
                Ok(if sparse {
                    MatrixFile::Sparse(generate_sparse(&spec)?)
                } else {
                    MatrixFile::Dense(generate(&spec)?)
                })
            }
            _ => Err(Failure::Invalid(
                "give exactly one input: --in PATH or --kind KIND --n N".into(),
            )),
        }
    }
}

impl EngineArgs {
    fn options(&self) -> Result<DecomposeOptions, Failure> {
        Ok(DecomposeOptions {
            tpd: TpdConfig::new()
                .with_prune_epsilon(self.epsilon)?
                .with_parallel(self.parallel),
            force: self.force,
        })
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn decompose(args: &DecomposeArgs) -> CmdResult {
    let method = args.engine.method;
    let opts = args.engine.options()?;
    let input = args.input.load(method.uses_sparse_input())?;
    let d = method.decompose(&input, &opts)?;
    let mut w = output(args.out.as_deref())?;
    w.write_all(d.to_canonical_string().as_bytes())?;
    w.flush()?;
    Ok(())
}

fn generate_cmd(args: &GenerateArgs) -> CmdResult {
    let spec = GeneratorSpec::new(args.kind, args.n)
        .with_seed(args.seed)
        .with_density(args.density);
    let by_name = args
        .out
        .as_deref()
        .and_then(Path::extension)
        .is_some_and(|e| e == "mtx" || e == "mm");
    let text = if args.mm || by_name {
        format_matrix_market(&generate_sparse(&spec)?)
    } else {
        format_dense(&generate(&spec)?)
    };
    let mut w = output(args.out.as_deref())?;
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(())
}

fn verify(args: &VerifyArgs) -> CmdResult {
    let method = args.engine.method;
    let input = args.input.load(method.uses_sparse_input())?;
    let n = input.n();
    if n > VERIFY_MAX_QUBITS && !args.engine.force {
        return Err(Error::GuardExceeded {
            method: "verify",
            limit: VERIFY_MAX_QUBITS,
            n,
        }
        .into());
    }
    let d = match &args.decomposition {
        Some(path) => Decomposition::parse_with_qubits(&std::fs::read_to_string(path)?, n)?,
        None => method.decompose(&input, &args.engine.options()?)?,
    };
    let a = input.to_dense();
    let err = d.reconstruct().max_abs_diff(&a)?;
    let tol = VERIFY_RELATIVE_TOLERANCE * a.max_abs();
    let pass = err <= tol;
    println!(
        "{} n={n} terms={} max_err={err:e} tol={tol:e}",
        if pass { "PASS" } else { "FAIL" },
        d.len()
    );
    if pass {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn bench(args: &BenchArgs) -> CmdResult {
    let mut cfg = BenchConfig::new(args.kind.clone(), args.n.clone(), args.method.clone());
    cfg.reps = args.reps;
    cfg.seed = args.seed;
    cfg.density = args.density;
    cfg.options = DecomposeOptions {
        tpd: TpdConfig::new()
            .with_prune_epsilon(args.epsilon)?
            .with_parallel(args.parallel),
        force: args.force,
    };
    let records = run_bench(&cfg, |r| {
        eprintln!("{} {} n={} rep={} {:.6}s", r.method, r.kind, r.n, r.rep, r.wall_time);
    })?;
    let summary = summarize(&records);
    match &args.out {
        Some(path) => {
            let mut w = output(Some(path))?;
            write_csv(&records, &mut w)?;
            w.flush()?;
            let summary_path = path.with_extension("summary.csv");
            let mut w = output(Some(&summary_path))?;
            write_summary_csv(&summary, &mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = output(None)?;
            write_csv(&records, &mut w)?;
            w.flush()?;
            let mut buf = Vec::new();
            write_summary_csv(&summary, &mut buf)?;
            io::stderr().write_all(&buf)?;
        }
    }
    Ok(())
}

fn configure_threads() -> CmdResult {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Invalid(format!("{THREADS_ENV} must be a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Invalid(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Decompose(args) => decompose(args),
        Command::Generate(args) => generate_cmd(args),
        Command::Verify(args) => verify(args),
        Command::Bench(args) => bench(args),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
