use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "speckle-tde", version, about = "Despeckle gray-level images with a telegraph-diffusion PDE")]
pub struct Cli {
    /// Cap on worker threads. Results do not depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degrade a clean image with Gamma(L, L) multiplicative speckle.
    Noise(NoiseArgs),
    /// Despeckle an image with the proposed model or the TDM baseline.
    Run(Box<RunArgs>),
    /// Run both models with best-PSNR stopping and tabulate the results.
    Compare(CompareArgs),
    /// PSNR and MSSIM of an image against a clean reference.
    Metrics(MetricsArgs),
    /// Write an image as a CSV matrix for contour or surface plots.
    Export(ExportArgs),
    /// Write the synthetic two-level circle test image.
    Phantom(PhantomArgs),
}

#[derive(Debug, Args)]
pub struct NoiseArgs {
    /// Clean input image (PGM).
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Noisy output image (PGM, quantized to 8 bits).
    #[arg(long)]
    pub out: PathBuf,
    /// Number of looks L; the speckle variance is 1/L.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub looks: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also write the unquantized noisy field as a CSV matrix.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Report metrics on the 8-bit output instead of the raw field.
    #[arg(long)]
    pub quantize_metrics: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Proposed,
    Tdm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StopKind {
    Fixed,
    Psnr,
}

/// Model constants. Unset flags fall back to the preset, then to the defaults.
#[derive(Debug, Args, Default, Clone)]
pub struct ModelFlags {
    /// Parameter preset `<image>-l<looks>`, e.g. circle-l5.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub iota: Option<f64>,
    /// Edge-field diffusion scale (proposed) or contrast exponent (tdm).
    #[arg(long)]
    pub nu: Option<f64>,
    #[arg(long)]
    pub xi: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Gradient cap of the edge source (proposed) or gradient threshold (tdm),
    /// in unit-peak intensity units.
    #[arg(long = "capK")]
    pub cap_k: Option<f64>,
    #[arg(long)]
    pub tau: Option<f64>,
    /// Gray level mapped to 1 inside the solver.
    #[arg(long)]
    pub intensity_peak: Option<f64>,
    /// Discretize div(g grad I) by nested central differences.
    #[arg(long)]
    pub literal_central: bool,
    /// Build g^n from the previous edge field u^{n-1}.
    #[arg(long, hide = true)]
    pub lagged_edge: bool,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Noisy input image (PGM, or CSV matrix for an unquantized field).
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Restored output image (PGM).
    #[arg(long)]
    pub out: PathBuf,
    /// Clean reference; enables PSNR tracing and best-PSNR stopping.
    #[arg(long)]
    pub clean: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ModelKind::Proposed)]
    pub model: ModelKind,
    #[command(flatten)]
    pub params: ModelFlags,
    /// Stopping rule; defaults to psnr when --clean is given, fixed otherwise.
    #[arg(long, value_enum)]
    pub stop: Option<StopKind>,
    /// Step count (fixed) or step limit (psnr). Defaults: 100 fixed, 1500 psnr.
    #[arg(long)]
    pub iters: Option<usize>,
    /// Non-improving steps tolerated by best-PSNR stopping.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub patience: u64,
    /// Per-iteration trace CSV (iter,psnr_db,mssim).
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Key=value run summary, including wall time.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    /// Full-precision CSV matrix of the result: --export contour PATH.
    #[arg(long, num_args = 2, value_names = ["KIND", "PATH"])]
    pub export: Option<Vec<String>>,
    /// Compute reported metrics on the 8-bit output.
    #[arg(long)]
    pub quantize_metrics: bool,
    /// Round and clamp the input to 8 bits before solving.
    #[arg(long)]
    pub quantize_input: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Noisy input image (PGM or CSV matrix).
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub clean: Option<PathBuf>,
    /// Parameter preset shared by both models, e.g. circle-l5.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, default_value_t = 1500)]
    pub iters: usize,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub patience: u64,
    #[arg(long)]
    pub literal_central: bool,
    #[arg(long)]
    pub quantize_metrics: bool,
    /// Result table (CSV); printed to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub clean: PathBuf,
    #[arg(long)]
    pub quantize_metrics: bool,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Output CSV matrix.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PhantomArgs {
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 128)]
    pub width: usize,
    #[arg(long, default_value_t = 128)]
    pub height: usize,
    #[arg(long, default_value_t = 60.0)]
    pub background: f64,
    #[arg(long, default_value_t = 190.0)]
    pub foreground: f64,
}
