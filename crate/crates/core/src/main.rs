use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use jsd_core::experiments::{
    fit_orders, output, parse_buckets, run_accuracy_sweep, run_negativity_sweep, AccuracyConfig,
    NegativityConfig, DEFAULT_FLOOR, DEFAULT_WINDOW,
};
use jsd_core::pairgen::{sample_pair, GenSpec, DEFAULT_N};
use jsd_core::{
    jsd_auto, jsd_exact_reduced, jsd_naive, jsd_series, series_coefficients, Distribution,
    JsdError, Method, Units, WeightedPair,
};

#[derive(Parser)]
#[command(
    name = "jsd",
    version,
    about = "Jensen-Shannon divergence for nearly equal distributions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the divergence between two distribution files.
    Compute(ComputeArgs),
    /// Print the series coefficients B_1..B_K, one per line.
    Coeffs(CoeffsArgs),
    /// Generate a random pair with a given log10 ||eps||.
    Gen(GenArgs),
    /// Run one of the seeded sweeps.
    #[command(subcommand)]
    Sweep(SweepCommand),
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long)]
    p1: PathBuf,
    #[arg(long)]
    p2: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    pi1: f64,
    #[arg(long, default_value = "auto")]
    method: Method,
    /// Series truncation order (number of terms).
    #[arg(long, default_value_t = 12)]
    order: usize,
    /// Relative tolerance for the auto method.
    #[arg(long, default_value_t = 1e-14)]
    rel_tol: f64,
    #[arg(long, default_value = "nats")]
    units: Units,
    /// Rescale inputs that do not sum to 1.
    #[arg(long)]
    normalize: bool,
}

#[derive(Args)]
struct CoeffsArgs {
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long)]
    order: usize,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = DEFAULT_N)]
    n: usize,
    #[arg(long = "log10-eps", allow_hyphen_values = true)]
    log10_eps: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long)]
    seed: u64,
    /// Output prefix; writes PREFIX.p1, PREFIX.p2 and PREFIX.meta.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum SweepCommand {
    /// Relative gap between truncated series and the naive formula.
    Accuracy(AccuracyArgs),
    /// Fraction of negative results per log10 ||eps|| bucket.
    Negativity(NegativityArgs),
}

#[derive(Args)]
struct AccuracyArgs {
    #[arg(long, default_value_t = DEFAULT_N)]
    n: usize,
    #[arg(long, default_value_t = jsd_core::experiments::accuracy::DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, value_delimiter = ',', default_value = "3,6,9,12")]
    orders: Vec<usize>,
    #[arg(long, default_value_t = jsd_core::experiments::accuracy::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long = "log10-eps-min", default_value_t = -4.0, allow_hyphen_values = true)]
    log10_eps_min: f64,
    #[arg(
        long = "log10-eps-max",
        default_value_t = 0.0,
        allow_hyphen_values = true
    )]
    log10_eps_max: f64,
    #[arg(long)]
    csv: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct NegativityArgs {
    #[arg(long, default_value_t = DEFAULT_N)]
    n: usize,
    #[arg(long = "trials-per-bucket", default_value_t = 1000)]
    trials_per_bucket: usize,
    /// START:STOP:STEP in log10 ||eps||.
    #[arg(long, default_value = "-8:-1:0.5", allow_hyphen_values = true)]
    buckets: String,
    #[arg(long, default_value_t = jsd_core::experiments::accuracy::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long)]
    csv: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn compute(args: ComputeArgs) -> Result<(), JsdError> {
    let p1 = Distribution::read(&args.p1, args.normalize)?;
    let p2 = Distribution::read(&args.p2, args.normalize)?;
    let pair = WeightedPair::with_pi1(p1, p2, args.pi1)?;
    let result = match args.method {
        Method::Naive => jsd_naive(&pair, args.units),
        Method::ExactReduced => jsd_exact_reduced(&pair, args.units),
        Method::Series => jsd_series(&pair, args.order, args.units)?,
        Method::Auto => jsd_auto(&pair, args.rel_tol, args.units)?,
    };
    println!("value: {:e}", result.value);
    println!("units: {}", result.units);
    let method = if result.auto_selected {
        format!("auto ({})", result.method)
    } else {
        result.method.to_string()
    };
    println!("method: {method}");
    if let Some(k) = result.order {
        println!("order: {k}");
    }
    if result.diagnostics.empty_bins {
        println!("note: bins with zero mass in both inputs were ignored");
    }
    if result.diagnostics.boundary_eps {
        println!("note: some bins have mass in only one input");
    }
    Ok(())
}

fn coeffs(args: CoeffsArgs) -> Result<(), JsdError> {
    let b = series_coefficients(args.alpha, args.order)?;
    for v in b.as_slice() {
        println!("{v:e}");
    }
    Ok(())
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn generate(args: GenArgs) -> Result<(), JsdError> {
    let spec = GenSpec {
        n: args.n,
        target_log10_eps: args.log10_eps,
        alpha: args.alpha,
        seed: args.seed,
    };
    let generated = sample_pair(&spec)?;
    let pair = &generated.pair;
    Distribution::new(pair.p1().to_vec())?.write(with_suffix(&args.out, ".p1"))?;
    Distribution::new(pair.p2().to_vec())?.write(with_suffix(&args.out, ".p2"))?;
    let meta_path = with_suffix(&args.out, ".meta");
    let meta = format!(
        "achieved_log10_eps={:e} target_log10_eps={:e} seed={} n={} alpha={:e} pi1={:e} attempts={}\n",
        generated.achieved_rms.log10(),
        args.log10_eps,
        args.seed,
        args.n,
        args.alpha,
        pair.pi1(),
        generated.attempts
    );
    fs::write(&meta_path, meta).map_err(|e| JsdError::Io {
        path: meta_path.clone(),
        source: e,
    })?;
    println!("wrote {}.{{p1,p2,meta}}", args.out.display());
    Ok(())
}

fn sweep_accuracy(args: AccuracyArgs) -> Result<(), JsdError> {
    let config = AccuracyConfig {
        n: args.n,
        trials: args.trials,
        orders: args.orders,
        log10_eps_range: (args.log10_eps_min, args.log10_eps_max),
        alpha: args.alpha,
        seed: args.seed,
    };
    let records = run_accuracy_sweep(&config)?;
    output::emit_csv(&records, &args.csv)?;
    let fits = fit_orders(&records, &config.orders, DEFAULT_WINDOW, DEFAULT_FLOOR)?;
    if let Some(svg) = &args.svg {
        output::render_svg_scatter(&records, &fits, svg)?;
    }
    println!("k,slope,intercept,r_squared,n_points,window_lo,window_hi");
    for (k, f) in &fits {
        println!(
            "{k},{:.4},{:.4},{:.4},{},{:.3},{:.3}",
            f.slope, f.intercept, f.r_squared, f.n_points, f.fit_window.0, f.fit_window.1
        );
    }
    Ok(())
}

fn sweep_negativity(args: NegativityArgs) -> Result<(), JsdError> {
    let buckets = parse_buckets(&args.buckets)?;
    let config = NegativityConfig {
        n: args.n,
        trials_per_bucket: args.trials_per_bucket,
        buckets,
        alpha: args.alpha,
        seed: args.seed,
    };
    let results = run_negativity_sweep(&config)?;
    output::emit_negativity_csv(&results, &args.csv)?;
    if let Some(svg) = &args.svg {
        output::render_negativity_svg(&results, svg)?;
    }
    println!("log10_eps,fraction_negative_naive,fraction_negative_series");
    for b in &results {
        println!(
            "{:.2},{:.4},{:.4}",
            b.log10_eps,
            b.fraction_negative_naive(),
            b.fraction_negative_series()
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute(a) => compute(a),
        Command::Coeffs(a) => coeffs(a),
        Command::Gen(a) => generate(a),
        Command::Sweep(SweepCommand::Accuracy(a)) => sweep_accuracy(a),
        Command::Sweep(SweepCommand::Negativity(a)) => sweep_negativity(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
