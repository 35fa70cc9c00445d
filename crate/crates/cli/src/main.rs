mod commands;
mod output;
mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Verification runs for the embedding `‖f‖_{H²_i} < √2 ‖f‖_{ℋ²}` of Dirichlet series.
#[derive(Parser, Debug)]
#[command(name = "hardy-embed", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Quadrature of the weighted norm against the kernel quadratic form on random polynomials.
    CheckIdentity(IdentityArgs),
    /// |B(a,b)| ≤ row-sum bound < 2‖a‖‖b‖ and Q(a) < 2‖a‖² on random coefficients.
    Bound(BoundArgs),
    /// λ_max of the truncated kernel over a grid of dimensions.
    Spectral(SpectralArgs),
    /// Closed lower bound and truncated Rayleigh quotients of the shifted-zeta family.
    Extremal(ExtremalArgs),
    /// Unit-window integrals ∫_τ^{τ+1} |f(1/2+it)|² dt over a grid of offsets.
    LocalSweep(LocalArgs),
    /// Weight integral I(x): closed form against quadrature.
    Weights(WeightArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct OutputArgs {
    /// CSV report path (printed to stdout when omitted).
    #[arg(long)]
    pub out_csv: Option<PathBuf>,
    /// JSON report path.
    #[arg(long)]
    pub out_json: Option<PathBuf>,
    /// SVG plot path.
    #[arg(long)]
    pub out_svg: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct IdentityArgs {
    /// Polynomial length.
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest allowed |quadrature - quadratic form|.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct BoundArgs {
    /// Coefficient sequence length.
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct SpectralArgs {
    /// Strictly increasing dimensions, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1,2,10,100,1000,10000,100000")]
    pub n_grid: Vec<usize>,
    /// Residual tolerance of the power iteration.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ExtremalArgs {
    /// Epsilon values (overrides --eps-grid).
    #[arg(long, value_delimiter = ',')]
    pub eps: Vec<f64>,
    /// Strictly decreasing epsilon grid in (0, 1).
    #[arg(long, value_delimiter = ',', default_value = "0.3,0.1,0.03,0.01,0.003,0.001")]
    pub eps_grid: Vec<f64>,
    /// Strictly increasing truncation lengths.
    #[arg(long, value_delimiter = ',', default_value = "100,1000,10000,100000")]
    pub n_grid: Vec<usize>,
    /// Only the closed lower-bound rows.
    #[arg(long)]
    pub no_rayleigh: bool,
    /// Residual tolerance of the spectral cross-check.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct LocalArgs {
    /// Coefficient file (one column, header `a_n`); a random polynomial is used otherwise.
    #[arg(long)]
    pub coefficients: Option<PathBuf>,
    /// Length of the random polynomial.
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Offsets as a comma list or `start:stop:count`.
    #[arg(long, default_value = "-10:10:201", allow_hyphen_values = true)]
    pub tau_grid: String,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct WeightArgs {
    /// Points x > 0 as a comma list (default 2^k, -20 ≤ k ≤ 20).
    #[arg(long, value_delimiter = ',')]
    pub x_grid: Vec<f64>,
    /// Largest allowed |quadrature - closed form|.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn configure_threads() {
    let threads = std::env::var("HARDY_EMBED_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    if threads > 0 {
        // fails only if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match commands::run(&cli.command) {
        Ok(outcome) => {
            for v in &outcome.violations {
                eprintln!("violation: {v}");
            }
            if outcome.violations.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
