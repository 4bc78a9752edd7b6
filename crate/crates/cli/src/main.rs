use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclone::bench::{self, Workload};
use cyclone::edit::{self, LpamSource};
use cyclone::geometry::positions;
use cyclone::lpam::{all_lpam, all_lpam_baseline};
use cyclone::mismatch::{self, Algo};
use cyclone::reductions::{bji_from_cpm, edit_distance_via_cpm, CpmStrategy};
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] cyclone::Error),
    #[error(transparent)]
    Output(#[from] io::Error),
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(name = "cyclone", version, about = "Circular pattern matching under Hamming and edit distance")]
struct Cli {
    /// Worker threads for window- and block-level parallelism.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    threads: u16,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Positions where some rotation of the pattern occurs within budget k.
    Search(SearchArgs),
    /// Positions where some rotation of the pattern occurs exactly.
    Exact(ExactArgs),
    /// Longest pattern prefix and suffix approximately matched at every text position.
    Lpam(LpamArgs),
    /// Minimum and maximum number of ones over windows of every length.
    Bji(BjiArgs),
    /// Edit distance of two strings through circular edit decisions.
    EditViaCpm(EditViaCpmArgs),
    /// Random comparisons of every search path against brute force.
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        iters: usize,
    },
    /// Timing sweep over k, as CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct Input {
    /// Pattern file (raw bytes).
    #[arg(short = 'p', long = "pattern", conflicts_with = "pattern_str", required_unless_present = "pattern_str")]
    pattern_file: Option<PathBuf>,
    /// Text file (raw bytes).
    #[arg(short = 't', long = "text", conflicts_with = "text_str", required_unless_present = "text_str")]
    text_file: Option<PathBuf>,
    #[arg(long)]
    pattern_str: Option<String>,
    #[arg(long)]
    text_str: Option<String>,
}

impl Input {
    fn load(&self) -> CliResult<(Vec<u8>, Vec<u8>)> {
        Ok((bytes(&self.pattern_file, &self.pattern_str)?, bytes(&self.text_file, &self.text_str)?))
    }
}

fn bytes(file: &Option<PathBuf>, inline: &Option<String>) -> CliResult<Vec<u8>> {
    match (file, inline) {
        (Some(path), _) => std::fs::read(path).map_err(|source| CliError::Read { path: path.clone(), source }),
        (None, Some(s)) => Ok(s.as_bytes().to_vec()),
        (None, None) => Err(CliError::Input("missing input".into())),
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Hamming,
    Edit,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Report,
    Decide,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Anchored,
    Nk,
    Brute,
}

impl From<AlgoArg> for Algo {
    fn from(a: AlgoArg) -> Algo {
        match a {
            AlgoArg::Anchored => Algo::Anchored,
            AlgoArg::Nk => Algo::Nk,
            AlgoArg::Brute => Algo::Brute,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LpamArg {
    Fast,
    Baseline,
}

impl From<LpamArg> for LpamSource {
    fn from(a: LpamArg) -> LpamSource {
        match a {
            LpamArg::Fast => LpamSource::Fast,
            LpamArg::Baseline => LpamSource::Baseline,
        }
    }
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value = "hamming")]
    metric: MetricArg,
    #[arg(long, value_enum, default_value = "report")]
    mode: ModeArg,
    /// Reporting algorithm for the Hamming metric.
    #[arg(long, value_enum, default_value = "anchored")]
    algo: AlgoArg,
    /// Table engine for edit decisions.
    #[arg(long, value_enum, default_value = "fast")]
    lpam: LpamArg,
    /// Budget (at least 1; use `exact` for budget 0).
    #[arg(short = 'k', value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExactArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct LpamArgs {
    #[command(flatten)]
    input: Input,
    #[arg(short = 'k', value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long, value_enum, default_value = "fast")]
    lpam: LpamArg,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    Direct,
    ViaReport,
}

#[derive(Args)]
struct BjiArgs {
    /// Binary string over {0, 1}.
    #[arg(short = 'x', long, conflicts_with = "file", required_unless_present = "file")]
    x: Option<String>,
    #[arg(short = 'i', long)]
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    strategy: StrategyArg,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EditViaCpmArgs {
    #[arg(short = 'u', long = "u-file", conflicts_with = "u_str", required_unless_present = "u_str")]
    u_file: Option<PathBuf>,
    #[arg(short = 'v', long = "v-file", conflicts_with = "v_str", required_unless_present = "v_str")]
    v_file: Option<PathBuf>,
    #[arg(long)]
    u_str: Option<String>,
    #[arg(long)]
    v_str: Option<String>,
    #[arg(long, value_enum, default_value = "baseline")]
    lpam: LpamArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum WorkloadArg {
    HammingDecide,
    HammingReport,
    EditDecide,
    EditReport,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value = "hamming-decide")]
    workload: WorkloadArg,
    #[arg(long, value_enum, default_value = "anchored")]
    algo: AlgoArg,
    #[arg(long, value_enum, default_value = "fast")]
    lpam: LpamArg,
    #[arg(short = 'n', default_value_t = 8192)]
    n: usize,
    #[arg(short = 'm', default_value_t = 512)]
    m: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [4, 8, 16, 32])]
    ks: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    reps: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Also print the growth check against k²·log²k (Hamming decide) or k² to stderr.
    #[arg(long)]
    fit: bool,
}

#[derive(Serialize)]
struct Envelope<'a> {
    positions: &'a [usize],
    k: u64,
    metric: &'a str,
    mode: &'a str,
    elapsed_ms: f64,
}

fn print_positions(found: &[usize], json: Option<Envelope>) -> CliResult<()> {
    let mut out = io::BufWriter::new(io::stdout().lock());
    match json {
        Some(env) => writeln!(out, "{}", serde_json::to_string(&env).expect("envelope serializes"))?,
        None => {
            for i in found {
                writeln!(out, "{i}")?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn search(args: &SearchArgs) -> CliResult<ExitCode> {
    let (p, t) = args.input.load()?;
    let k = usize::try_from(args.k).map_err(|_| CliError::Input("k too large".into()))?;
    let start = Instant::now();
    let (found, metric, mode) = match (args.metric, args.mode) {
        (MetricArg::Hamming, ModeArg::Report) => (mismatch::search(&p, &t, k, args.algo.into())?, "hamming", "report"),
        (MetricArg::Hamming, ModeArg::Decide) => (mismatch::decide(&p, &t, k)?.into_iter().collect(), "hamming", "decide"),
        (MetricArg::Edit, ModeArg::Report) => (edit::report(&p, &t, k)?, "edit", "report"),
        (MetricArg::Edit, ModeArg::Decide) => (edit::decide(&p, &t, k, args.lpam.into())?.into_iter().collect(), "edit", "decide"),
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    log::info!("{metric} {mode}: {} positions in {elapsed_ms:.3} ms", found.len());
    let env = args.json.then_some(Envelope { positions: &found, k: args.k, metric, mode, elapsed_ms });
    print_positions(&found, env)?;
    Ok(if mode == "decide" && found.is_empty() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn exact(args: &ExactArgs) -> CliResult<ExitCode> {
    let (p, t) = args.input.load()?;
    let start = Instant::now();
    let found = positions(&cyclone::exact::exact_cpm(&p, &t));
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let env = args.json.then_some(Envelope { positions: &found, k: 0, metric: "exact", mode: "report", elapsed_ms });
    print_positions(&found, env)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct LpamJson<'a> {
    k: u64,
    lpref: &'a [Vec<usize>],
    lsuf: &'a [Vec<usize>],
}

fn lpam(args: &LpamArgs) -> CliResult<ExitCode> {
    let (p, t) = args.input.load()?;
    let k = usize::try_from(args.k).map_err(|_| CliError::Input("k too large".into()))?;
    let table = match args.lpam {
        LpamArg::Fast => all_lpam(&p, &t, k)?,
        LpamArg::Baseline => all_lpam_baseline(&p, &t, k)?,
    };
    let mut out = io::BufWriter::new(io::stdout().lock());
    if args.json {
        let body = LpamJson { k: args.k, lpref: table.prefix_rows(), lsuf: table.suffix_rows() };
        writeln!(out, "{}", serde_json::to_string(&body).expect("table serializes"))?;
    } else {
        writeln!(out, "k\tj\tlpref\tlsuf")?;
        for kp in 0..=k {
            for j in 0..=t.len() {
                writeln!(out, "{kp}\t{j}\t{}\t{}", table.lpref(kp, j), table.lsuf(kp, j))?;
            }
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct BjiJson<'a> {
    min: &'a [usize],
    max: &'a [usize],
}

fn bji(args: &BjiArgs) -> CliResult<ExitCode> {
    let x = bytes(&args.file, &args.x)?;
    let strategy = match args.strategy {
        StrategyArg::Auto => CpmStrategy::Auto,
        StrategyArg::Direct => CpmStrategy::Direct,
        StrategyArg::ViaReport => CpmStrategy::ViaReport,
    };
    let (lo, hi) = bji_from_cpm(&x, strategy)?;
    let mut out = io::BufWriter::new(io::stdout().lock());
    if args.json {
        writeln!(out, "{}", serde_json::to_string(&BjiJson { min: &lo, max: &hi }).expect("arrays serialize"))?;
    } else {
        writeln!(out, "t\tmin\tmax")?;
        for (t, (a, b)) in lo.iter().zip(&hi).enumerate() {
            writeln!(out, "{t}\t{a}\t{b}")?;
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn edit_via_cpm(args: &EditViaCpmArgs) -> CliResult<ExitCode> {
    let u = bytes(&args.u_file, &args.u_str)?;
    let v = bytes(&args.v_file, &args.v_str)?;
    println!("{}", edit_distance_via_cpm(&u, &v, args.lpam.into())?);
    Ok(ExitCode::SUCCESS)
}

fn selftest(seed: u64, iters: usize) -> CliResult<ExitCode> {
    let report = cyclone::selftest::run(seed, iters)?;
    for failure in &report.failures {
        eprintln!("mismatch: {failure}");
    }
    println!("selftest seed={seed} iters={iters}: {} checks, {} failures", report.checks, report.failures.len());
    Ok(if report.ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run_bench(args: &BenchArgs) -> CliResult<ExitCode> {
    if args.m == 0 || args.m > args.n {
        return Err(CliError::Input(format!("need 1 <= m <= n, got m={} n={}", args.m, args.n)));
    }
    let work = match args.workload {
        WorkloadArg::HammingDecide => Workload::HammingDecide,
        WorkloadArg::HammingReport => Workload::HammingReport(args.algo.into()),
        WorkloadArg::EditDecide => Workload::EditDecide(args.lpam.into()),
        WorkloadArg::EditReport => Workload::EditReport,
    };
    let rows = bench::sweep(work, args.n, args.m, &args.ks, args.reps, args.seed)?;
    let mut out = io::BufWriter::new(io::stdout().lock());
    writeln!(out, "{}", bench::CSV_HEADER)?;
    for row in &rows {
        writeln!(out, "{row}")?;
    }
    out.flush()?;
    if args.fit {
        let (f, name): (fn(usize) -> f64, &str) =
            if matches!(work, Workload::HammingDecide) { (bench::k2_log2k, "k^2 log^2 k") } else { (bench::k2, "k^2") };
        if let Some(fit) = bench::fit_growth(&rows, f, 2.0) {
            eprintln!(
                "{} {}: c={:.3} ns, worst ratio {:.3} (tolerance {})",
                if fit.passes() { "PASS" } else { "FAIL" },
                name,
                fit.c,
                fit.worst,
                fit.tolerance
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("CYCLONE_LOG")).init();
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads as usize).build_global() {
        log::warn!("thread pool already set: {e}");
    }
    let outcome = match &cli.command {
        Command::Search(args) => search(args),
        Command::Exact(args) => exact(args),
        Command::Lpam(args) => lpam(args),
        Command::Bji(args) => bji(args),
        Command::EditViaCpm(args) => edit_via_cpm(args),
        Command::Selftest { seed, iters } => selftest(*seed, *iters),
        Command::Bench(args) => run_bench(args),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}
