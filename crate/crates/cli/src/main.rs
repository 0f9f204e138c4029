use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use symtest::efficiency::{sigma2_exact, DEFAULT_CONFIGS};
use symtest::nulldist::{power_curve, PowerSpec, QUANTILE_LEVELS};
use symtest::stats::DEFAULT_MAX_ORDER;
use symtest::{
    efficiency_table, run_test, simulate_null, Family, Kind, NullTable, Sample, Sided, Variant,
};

const TABLE_DIR_VAR: &str = "SYMTEST_TABLE_DIR";

#[derive(Debug, Parser)]
#[command(name = "symtest", version, about = "Tests of symmetry about zero based on extremal order statistics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Test a sample for symmetry about zero.
    Test(TestArgs),
    /// Simulate and store a Monte Carlo null table.
    NullTable(NullTableArgs),
    /// Local Bahadur efficiencies under location alternatives.
    Efficiency(EfficiencyArgs),
    /// Empirical power under location shifts.
    Power(PowerArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct StatisticArgs {
    #[arg(long, default_value = "integral")]
    kind: Kind,
    #[arg(long = "k", default_value_t = 2)]
    k: usize,
    #[arg(long, default_value = "u")]
    variant: Variant,
    /// Permit k above the default cap of 6.
    #[arg(long)]
    allow_high_order: bool,
}

impl StatisticArgs {
    fn check(&self) -> Result<()> {
        if self.k < 2 {
            bail!(input(format!("k must be at least 2, got {}", self.k)));
        }
        if self.k > DEFAULT_MAX_ORDER && !self.allow_high_order {
            bail!(input(format!(
                "k = {} exceeds {DEFAULT_MAX_ORDER}; pass --allow-high-order to proceed",
                self.k
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Args)]
struct TestArgs {
    /// Sample file: one number per line, `#` starts a comment.
    data: PathBuf,
    #[command(flatten)]
    stat: StatisticArgs,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, default_value = "two")]
    sided: Sided,
    /// Replicates when the null table has to be simulated.
    #[arg(long, default_value_t = 10_000)]
    reps: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Precomputed null table (JSON).
    #[arg(long)]
    table: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
struct NullTableArgs {
    #[command(flatten)]
    stat: StatisticArgs,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 10_000)]
    reps: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Where to write the table; defaults to the table cache when
    /// SYMTEST_TABLE_DIR is set.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
struct EfficiencyArgs {
    /// Comma-separated families.
    #[arg(long, value_delimiter = ',', default_value = "logistic,normal,cauchy")]
    family: Vec<Family>,
    /// Restrict to one kind; both kinds otherwise.
    #[arg(long)]
    kind: Option<Kind>,
    /// Restrict to one order; the default set is I3, I5, D2, D4.
    #[arg(long = "k")]
    k: Option<usize>,
    /// Print the exact projection variances for k = 2..=6 instead.
    #[arg(long, alias = "exact")]
    exact_variances: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
struct PowerArgs {
    #[arg(long, default_value = "normal")]
    family: Family,
    #[command(flatten)]
    stat: StatisticArgs,
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Comma-separated location shifts.
    #[arg(long, value_delimiter = ',', default_value = "0,0.1,0.2,0.3,0.4,0.5")]
    theta: Vec<f64>,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, default_value = "two")]
    sided: Sided,
    #[arg(long, default_value_t = 10_000)]
    reps: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    table: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// Failure caused by the user's input rather than the run itself.
#[derive(Debug)]
struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input(message: impl Into<String>) -> InputError {
    InputError(message.into())
}

fn is_input_error(err: &anyhow::Error) -> bool {
    if err.downcast_ref::<InputError>().is_some() {
        return true;
    }
    matches!(
        err.downcast_ref::<symtest::Error>(),
        Some(
            symtest::Error::InsufficientSample { .. }
                | symtest::Error::NonFinite { .. }
                | symtest::Error::OrderOutOfRange { .. }
                | symtest::Error::TableMismatch { .. }
                | symtest::Error::UnsupportedFamily(_)
                | symtest::Error::UnknownFamily(_)
                | symtest::Error::InvalidArgument(_)
                | symtest::Error::Parse { .. }
                | symtest::Error::EmptyInput
        )
    )
}

fn seed_or_clock(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(0)
    })
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(TABLE_DIR_VAR).filter(|v| !v.is_empty()).map(PathBuf::from)
}

fn read_table(path: &Path) -> Result<NullTable> {
    let text = fs::read_to_string(path)
        .map_err(|e| input(format!("cannot read table {}: {e}", path.display())))?;
    NullTable::from_json(&text).map_err(|e| input(format!("{}: {e}", path.display())).into())
}

/// Explicit table, then the cache, then a fresh simulation (stored in the
/// cache when one is configured).
fn resolve_table(
    explicit: Option<&Path>,
    stat: &StatisticArgs,
    n: usize,
    reps: usize,
    seed: u64,
) -> Result<NullTable> {
    if let Some(path) = explicit {
        return read_table(path);
    }
    let id = NullTable::id_for(stat.kind, stat.k, stat.variant, n, reps, seed);
    let cached = cache_dir().map(|dir| dir.join(format!("{id}.json")));
    if let Some(path) = cached.as_deref().filter(|p| p.exists()) {
        log::info!("using cached table {}", path.display());
        return read_table(path);
    }
    let table = simulate_null(stat.kind, stat.k, stat.variant, n, reps, seed)?;
    if let Some(path) = cached {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        table.write(&path).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(table)
}

fn cmd_test(args: TestArgs) -> Result<String> {
    args.stat.check()?;
    let sample = Sample::read(&args.data).map_err(|e| match e {
        symtest::Error::Io(io) => input(format!("{}: {io}", args.data.display())),
        other => input(format!("{}: {other}", args.data.display())),
    })?;
    let seed = seed_or_clock(args.seed);
    let table = resolve_table(args.table.as_deref(), &args.stat, sample.len(), args.reps, seed)?;
    let d = run_test(&sample, args.stat.kind, args.stat.k, args.stat.variant, args.alpha, args.sided, &table)?;

    Ok(match args.format {
        Format::Json => serde_json::to_string_pretty(&d)? + "\n",
        Format::Csv => format!(
            "kind,k,variant,n,value,p_value,alpha,sided,reject,table_id,master_seed,reps\n{},{},{},{},{},{},{},{},{},{},{},{}\n",
            d.statistic.kind,
            d.statistic.k,
            d.statistic.variant,
            d.statistic.n,
            d.statistic.value,
            d.p_value,
            d.alpha,
            d.sided,
            d.reject,
            d.table_id,
            d.table_master_seed,
            d.table_rep_count
        ),
        Format::Text => {
            let mut out = String::new();
            let s = &d.statistic;
            let _ = writeln!(out, "statistic  {} k={} ({}), n={}", s.kind, s.k, s.variant, s.n);
            let _ = writeln!(out, "value      {:.4}", s.value);
            let _ = writeln!(out, "p-value    {:.4} ({}-sided)", d.p_value, d.sided);
            let _ = writeln!(out, "alpha      {:.4}", d.alpha);
            let verdict = if d.reject { "reject symmetry" } else { "do not reject symmetry" };
            let _ = writeln!(out, "decision   {verdict}");
            let _ = writeln!(
                out,
                "table      {} (seed {}, {} replicates)",
                d.table_id, d.table_master_seed, d.table_rep_count
            );
            out
        }
    })
}

fn cmd_null_table(args: NullTableArgs) -> Result<String> {
    args.stat.check()?;
    let seed = seed_or_clock(args.seed);
    let table = simulate_null(args.stat.kind, args.stat.k, args.stat.variant, args.n, args.reps, seed)?;

    let target = args
        .out
        .clone()
        .or_else(|| cache_dir().map(|dir| dir.join(format!("{}.json", table.id()))));
    if let Some(path) = &target {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        table.write(path).with_context(|| format!("writing {}", path.display()))?;
    }

    Ok(match args.format {
        Format::Json => table.to_json()? + "\n",
        Format::Csv => table.quantiles_csv(),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "table      {}", table.id());
            let _ = writeln!(out, "seed       {}", table.master_seed);
            if let Some(path) = &target {
                let _ = writeln!(out, "written    {}", path.display());
            }
            for p in QUANTILE_LEVELS {
                let _ = writeln!(out, "q({p:<5})   {:.4}", table.quantile(p));
            }
            out
        }
    })
}

fn cmd_efficiency(args: EfficiencyArgs) -> Result<String> {
    if args.exact_variances {
        let orders: Vec<usize> = match args.k {
            Some(k) => vec![k],
            None => (2..=6).collect(),
        };
        let rows = orders
            .into_iter()
            .map(|k| Ok((k, sigma2_exact(k)?.to_string())))
            .collect::<Result<Vec<_>>>()?;
        return Ok(match args.format {
            Format::Json => {
                let list: Vec<_> = rows
                    .iter()
                    .map(|(k, v)| serde_json::json!({ "k": k, "degree": k + 1, "sigma2": v }))
                    .collect();
                serde_json::to_string_pretty(&list)? + "\n"
            }
            Format::Csv => rows.iter().fold(String::from("k,sigma2\n"), |mut out, (k, v)| {
                let _ = writeln!(out, "{k},{v}");
                out
            }),
            Format::Text => rows.iter().fold(String::new(), |mut out, (k, v)| {
                let _ = writeln!(out, "k={k}  sigma2 = {v}");
                out
            }),
        });
    }

    if let Some(k) = args.k.filter(|&k| k < 2) {
        bail!(input(format!("k must be at least 2, got {k}")));
    }
    let configs: Vec<(Kind, usize)> = match (args.kind, args.k) {
        (None, None) => DEFAULT_CONFIGS.to_vec(),
        (Some(kind), k) => vec![(kind, k.unwrap_or(2))],
        (None, Some(k)) => vec![(Kind::Integral, k), (Kind::Kolmogorov, k)],
    };
    let table = efficiency_table(&args.family, &configs)?;
    Ok(match args.format {
        Format::Json => serde_json::to_string_pretty(&table)? + "\n",
        Format::Csv => table.to_csv(),
        Format::Text => table.to_text(4),
    })
}

fn cmd_power(args: PowerArgs) -> Result<String> {
    args.stat.check()?;
    if args.theta.iter().any(|t| !t.is_finite()) {
        bail!(input("theta values must be finite"));
    }
    let seed = seed_or_clock(args.seed);
    let spec = PowerSpec {
        family: args.family,
        kind: args.stat.kind,
        k: args.stat.k,
        variant: args.stat.variant,
        n: args.n,
        trials: args.trials,
        alpha: args.alpha,
        sided: args.sided,
        master_seed: seed,
    };
    let table = match &args.table {
        Some(path) => read_table(path)?,
        None => spec.null_table(args.reps)?,
    };
    let points = power_curve(&spec, &args.theta, &table)?;

    Ok(match args.format {
        Format::Json => {
            let record = serde_json::json!({
                "spec": spec,
                "table_id": table.id(),
                "points": points,
            });
            serde_json::to_string_pretty(&record)? + "\n"
        }
        Format::Csv => {
            let mut out = String::from("theta,rejection_rate,std_error,trials,master_seed\n");
            for p in &points {
                let _ = writeln!(out, "{},{},{},{},{}", p.theta, p.rejection_rate, p.std_error, p.trials, seed);
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{} k={} ({}) under {} shifts, n={}, alpha={}, seed {}",
                spec.kind, spec.k, spec.variant, spec.family, spec.n, spec.alpha, seed
            );
            let _ = writeln!(out, "null table {}", table.id());
            let _ = writeln!(out, "{:>8} {:>8} {:>8}", "theta", "power", "se");
            for p in &points {
                let _ = writeln!(out, "{:>8.4} {:>8.4} {:>8.4}", p.theta, p.rejection_rate, p.std_error);
            }
            out
        }
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Test(args) => cmd_test(args),
        Command::NullTable(args) => cmd_null_table(args),
        Command::Efficiency(args) => cmd_efficiency(args),
        Command::Power(args) => cmd_power(args),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(if is_input_error(&err) { 2 } else { 1 })
        }
    }
}
