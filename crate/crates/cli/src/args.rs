use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "bernstein-ld",
    version,
    about = "Sharp tail bounds under Bernstein's condition"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one bound and print it as a CSV row.
    Bound(BoundArgs),
    /// Emit the data behind a figure as CSV.
    #[command(subcommand)]
    Figure(FigureCmd),
    /// Run a verification suite and print a pass/fail table.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    Bernstein,
    BernsteinWeak,
    Hoeffding,
    Bn,
    Thm1,
    Thm2,
    Cor4,
    Thm3Lower,
    Thm5,
    BennettPoisson,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct BoundArgs {
    pub kind: BoundKind,
    /// Standardized threshold: the event is `S_n > xσ`.
    #[arg(long)]
    pub x: Option<f64>,
    /// Ratio `r = ε/σ`.
    #[arg(long, default_value_t = 0.0)]
    pub r: f64,
    /// Number of summands.
    #[arg(long)]
    pub n: Option<u64>,
    /// `δ ∈ (0, 1]` for thm1, `δ ∈ (0, 1)` for bennett-poisson.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Range parameter for cor4 and thm3-lower.
    #[arg(long, default_value_t = 0.1)]
    pub alpha: f64,
    /// Standard deviation of the sum (hoeffding, bennett-poisson).
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Raw threshold for bennett-poisson.
    #[arg(long)]
    pub y: Option<f64>,
    /// Chernoff infimum for thm5; defaults to Bernstein's bound as an upper proxy.
    #[arg(long)]
    pub chernoff: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum FigureCmd {
    /// The missing factor `F₂(x, r)` for each r.
    F2(F2Args),
    /// The ratio `B_n·F₂ / B` for each (n, r).
    RatioBn(RatioBnArgs),
    /// `P(S_n ≥ x√n) / (M(x)·inf_λ E e^{λ(S_n − x√n)})` for Rademacher sums.
    Ratios(RatiosArgs),
}

#[derive(Debug, Args)]
pub struct F2Args {
    /// Comma-separated r values.
    #[arg(long, value_delimiter = ',', required = true)]
    pub r: Vec<f64>,
    /// x range `start:stop:step`.
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RatioBnArgs {
    /// Comma-separated n values.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<u64>,
    /// Comma-separated r values; defaults to `1/√n` for each n.
    #[arg(long, value_delimiter = ',')]
    pub r: Vec<f64>,
    #[arg(long, default_value = "0:10:0.1")]
    pub x: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RatiosArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<u64>,
    #[arg(long, default_value = "0:3:0.1")]
    pub x: String,
    /// Bernstein parameter of the summands; the minimal value is `1/√12`.
    #[arg(long, default_value_t = 1.0 / 12f64.sqrt())]
    pub eps: f64,
    /// Use `P(S_n > x√n)` instead of `P(S_n ≥ x√n)`.
    #[arg(long)]
    pub strict: bool,
    /// Add an importance-sampled ratio column with this many samples.
    #[arg(long, default_value_t = 0)]
    pub mc_samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Cumulant and normal-approximation inequalities on a tilt grid.
    Lemmas(LemmasArgs),
    /// Every bound against the exact tail over a threshold sweep.
    Envelopes(EnvelopesArgs),
    /// Importance-sampling estimate against the exact tail.
    Mc(McArgs),
}

#[derive(Debug, Args)]
pub struct LemmasArgs {
    /// Built-in law (`rademacher`, `asym-2-1`) or a `value,prob` file.
    #[arg(long)]
    pub dist: String,
    #[arg(long)]
    pub n: u64,
    /// Comma-separated tilts in `[0, 1/ε)`; defaults to 10 points on `[0, 0.9/ε]`.
    #[arg(long, value_delimiter = ',')]
    pub grid: Vec<f64>,
    /// Also check the normal-approximation bounds exactly (`n ≤ 40`).
    #[arg(long)]
    pub clt: bool,
}

#[derive(Debug, Args)]
pub struct EnvelopesArgs {
    #[arg(long)]
    pub dist: String,
    #[arg(long)]
    pub n: u64,
    /// Bernstein parameter; defaults to the minimal one of the law.
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    /// Number of evenly spaced thresholds on `(0, ασ/ε]`.
    #[arg(long, default_value_t = 200)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[arg(long)]
    pub dist: String,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub threshold: f64,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also run plain Monte Carlo and require its standard error to be at
    /// least this many times larger.
    #[arg(long)]
    pub min_se_ratio: Option<f64>,
}
