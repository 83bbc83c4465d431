use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qdeform::qnum::Deformation;
use qdeform::Complex64;

#[derive(Parser, Debug)]
#[command(name = "qdeform", version, about = "Numerical checks for q-deformed oscillator and su(2) algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Oscillator, Schwinger and Holstein–Primakoff identity suite
    Verify(VerifyArgs),
    /// Truncation/positivity scan over q = exp(i epsilon)
    Scan(ScanArgs),
    /// Contraction sweeps (Inönü–Wigner, Chaichian–Kulish, Celeghini)
    Contract(ContractArgs),
    /// Solve the truncation condition for one (epsilon, k, ell)
    Solve(SolveArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output file (stdout if omitted)
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// Either `--q-re/--q-im` or `--epsilon` (with optional `--branch`).
#[derive(Args, Debug, Clone)]
pub struct QArgs {
    #[arg(long)]
    pub q_re: Option<f64>,
    #[arg(long)]
    pub q_im: Option<f64>,
    /// q = exp(i epsilon)
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Logarithm branch of q
    #[arg(long, default_value_t = 0)]
    pub branch: i64,
}

impl QArgs {
    pub fn deformation(&self) -> Result<Deformation> {
        match (self.q_re, self.q_im, self.epsilon) {
            (Some(_), _, Some(_)) | (_, Some(_), Some(_)) => bail!("give either --q-re/--q-im or --epsilon, not both"),
            (None, None, None) => bail!("no deformation given: use --q-re/--q-im or --epsilon"),
            (None, Some(_), None) => bail!("--q-im needs --q-re"),
            (None, None, Some(e)) => Ok(Deformation::unit_circle_with_branch(e, self.branch)?),
            (Some(r), im, None) => Ok(Deformation::with_branch(Complex64::new(r, im.unwrap_or(0.0)), self.branch)?),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Mb,
    Hy,
    Gmb,
    Ghy,
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum DressingArg {
    Half,
    Printed,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub q: QArgs,
    #[arg(long, value_enum, default_value_t = KindArg::All)]
    pub kind: KindArg,
    /// Ladder dimension per mode
    #[arg(long, default_value_t = 12)]
    pub dim: usize,
    /// Interior window margin at both ends
    #[arg(long, default_value_t = 1)]
    pub margin: usize,
    #[arg(long, default_value_t = qdeform::report::DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub nu0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub lambda0: f64,
    #[arg(long, default_value_t = 1.2, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
    pub beta: f64,
    /// Holstein–Primakoff j (default (dim - 1)/2)
    #[arg(long)]
    pub j: Option<f64>,
    /// Dressing exponent of the tilde Schwinger construction
    #[arg(long, value_enum, default_value_t = DressingArg::Half)]
    pub dressing: DressingArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

impl VerifyArgs {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            bail!("tolerance must be positive");
        }
        if self.dim < 2 {
            bail!("dim must be at least 2");
        }
        Ok(())
    }
}

#[derive(Args, Debug, Clone)]
pub struct ScanArgs {
    /// Explicit epsilon grid (comma separated); overrides start/stop/step
    #[arg(long, value_delimiter = ',')]
    pub eps: Vec<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub eps_start: f64,
    #[arg(long, default_value_t = 3.0)]
    pub eps_stop: f64,
    #[arg(long, default_value_t = 0.1)]
    pub eps_step: f64,
    #[arg(long, default_value_t = 4)]
    pub k_max: u32,
    #[arg(long, value_delimiter = ',', default_values_t = [0i64, 1], allow_hyphen_values = true)]
    pub ell: Vec<i64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Series {
    Iw,
    Ck,
    Celeghini,
    All,
}

#[derive(Args, Debug, Clone)]
pub struct ContractArgs {
    #[arg(long, value_enum, default_value_t = Series::All)]
    pub series: Series,
    #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.01, 0.001])]
    pub mu: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub iw_eta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub xi: f64,
    /// States kept near the lowest weight in the IW sweep
    #[arg(long, default_value_t = 6)]
    pub iw_dim: usize,
    #[arg(long, default_value_t = 1.5)]
    pub ck_q: f64,
    #[arg(long, default_value_t = 3.0)]
    pub ck_j: f64,
    #[arg(long, value_delimiter = ',', default_values_t = [4.0, 6.0, 8.0, 10.0])]
    pub s: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    pub ck_margin: usize,
    /// Threshold for r at the largest s
    #[arg(long, default_value_t = 1e-3)]
    pub ck_target: f64,
    /// Allowed relative error of the fitted log r slope
    #[arg(long, default_value_t = 0.1)]
    pub ck_slope_tol: f64,
    #[arg(long, value_delimiter = ',', default_values_t = [0.3, 0.1, 0.03])]
    pub eta: Vec<f64>,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    pub omega: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub kappa: f64,
    /// States kept near the highest weight in the Celeghini sweep
    #[arg(long, default_value_t = 8)]
    pub cele_dim: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct SolveArgs {
    #[command(flatten)]
    pub q: QArgs,
    #[arg(long)]
    pub k: u32,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub ell: i64,
    #[command(flatten)]
    pub out: OutputArgs,
}
