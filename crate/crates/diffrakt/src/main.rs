//! diffrakt: closed-form and empirical diffraction analysis of point
//! processes with clumping and repulsion.

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

use diffrakt::cli::{cmd_analytic, cmd_estimate, cmd_sample, cmd_verify, GridSpec, RunConfig};
use diffrakt::Error;

#[derive(Parser)]
#[command(
    name = "diffrakt",
    version,
    about = "Autocorrelation and diffraction measures of point processes: closed forms, samplers, spectral estimators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ProcessArgs {
    /// Process id: sine|ball|gauss|exp|cpA|cpB|ginibre|gaf|coxcosine|poisson,
    /// with a perm- prefix for the permanental variant of a kernel family
    #[arg(long)]
    process: Option<String>,
    /// Thinning parameter (0 < p <= 1 determinantal, any p > 0 permanental)
    #[arg(long)]
    p: Option<f64>,
    /// Exponential-kernel parameter (0 < alpha <= 1/2 for determinantal use)
    #[arg(long)]
    alpha: Option<f64>,
    /// Ambient dimension for ball/gauss/poisson
    #[arg(long)]
    d: Option<usize>,
    /// Discretization size: GAF truncation degree, DPP grid size, or
    /// Ginibre matrix size
    #[arg(long = "N")]
    n: Option<usize>,
    /// Window: `a,b` (interval), `ax,bx,ay,by` (rect), or `disk:R`
    #[arg(long)]
    window: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    realizations: Option<usize>,
    /// Pair-correlation bin count
    #[arg(long)]
    bins: Option<usize>,
    /// Pair-correlation maximum radius
    #[arg(long)]
    rmax: Option<f64>,
    /// Curve/scattering grid `min,max,count`
    #[arg(long)]
    tgrid: Option<String>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON config file; explicit flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Write the closed-form autocorrelation/diffraction curves and atoms
    Analytic(ProcessArgs),
    /// Write one CSV of sampled points per realization
    Sample(ProcessArgs),
    /// Sample, then write empirical pair-correlation and scattering curves
    Estimate(ProcessArgs),
    /// Run the cross-module invariant suite
    Verify {
        /// Inject a known fault (supported: gaf-h) to demonstrate detection
        #[arg(long)]
        mutate: Option<String>,
    },
}

fn build_config(args: &ProcessArgs) -> Result<RunConfig, Error> {
    let mut config: RunConfig = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str(&text)
                .map_err(|e| Error::Config(format!("config file {}: {e}", path.display())))?
        }
        None => RunConfig {
            process: String::new(),
            p: 1.0,
            alpha: None,
            d: None,
            n: None,
            window: None,
            seed: 42,
            realizations: 1,
            bins: 64,
            rmax: None,
            tgrid: None,
            out: PathBuf::from("out"),
        },
    };
    if let Some(v) = &args.process {
        config.process = v.clone();
    }
    if let Some(v) = args.p {
        config.p = v;
    }
    if let Some(v) = args.alpha {
        config.alpha = Some(v);
    }
    if let Some(v) = args.d {
        config.d = Some(v);
    }
    if let Some(v) = args.n {
        config.n = Some(v);
    }
    if let Some(v) = &args.window {
        config.window = Some(v.clone());
    }
    if let Some(v) = args.seed {
        config.seed = v;
    }
    if let Some(v) = args.realizations {
        config.realizations = v;
    }
    if let Some(v) = args.bins {
        config.bins = v;
    }
    if let Some(v) = args.rmax {
        config.rmax = Some(v);
    }
    if let Some(v) = &args.tgrid {
        config.tgrid = Some(GridSpec::parse(v)?);
    }
    if let Some(v) = &args.out {
        config.out = v.clone();
    }
    if config.process.is_empty() {
        return Err(Error::Config("missing --process (or a config file providing it)".into()));
    }
    Ok(config)
}

fn configure_thread_pool() {
    if let Ok(text) = std::env::var("DIFFRAKT_THREADS") {
        if let Ok(n) = text.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
}

fn fail(err: &Error) -> ExitCode {
    let payload = json!({ "error": err.to_string(), "exit": err.exit_code() });
    eprintln!("{payload}");
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    configure_thread_pool();
    let cli = Cli::parse();
    match cli.command {
        Command::Analytic(args) => match build_config(&args).and_then(|c| cmd_analytic(&c)) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(&e),
        },
        Command::Sample(args) => match build_config(&args).and_then(|c| cmd_sample(&c)) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(&e),
        },
        Command::Estimate(args) => match build_config(&args).and_then(|c| cmd_estimate(&c)) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(&e),
        },
        Command::Verify { mutate } => match cmd_verify(mutate.as_deref()) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(4),
            Err(e) => fail(&e),
        },
    }
}
