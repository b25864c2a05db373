//! Command line front end: `fuse` sharpens, `qa` scores, `interpolate`
//! upscales, `synth` generates test imagery, `bench` races interpolators
//! over seeded scenes.
//!
//! Exit codes: 0 on success, 1 when an input file is missing, truncated,
//! malformed, or uses an unsupported feature, 2 for bad flags or
//! parameter validation failures.

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

use panfuse::interp::InterpolatorKind;
use panfuse::raster::BitDepth;
use panfuse::synth::{DEFAULT_EDGE_MIX, DEFAULT_RHO, DEFAULT_SIGMA};

mod commands;

fn parse_depth(s: &str) -> Result<BitDepth, String> {
    let bits: u8 = s
        .parse()
        .map_err(|_| format!("bit depth must be a number, got '{s}'"))?;
    BitDepth::from_bits(bits).map_err(|e| e.to_string())
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (h, w) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("size must look like 128x128, got '{s}'"))?;
    let h = h.trim().parse().map_err(|_| format!("bad height in '{s}'"))?;
    let w = w.trim().parse().map_err(|_| format!("bad width in '{s}'"))?;
    Ok((h, w))
}

fn parse_interp(s: &str) -> Result<InterpolatorKind, String> {
    s.parse().map_err(|e: panfuse::Error| e.to_string())
}

#[derive(Parser)]
#[command(
    name = "panfuse",
    version,
    about = "IHS pan-sharpening with an edge-guided statistical interpolator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sharpen a low-resolution RGB image with a panchromatic band.
    Fuse(FuseArgs),
    /// Score a fused image against its multispectral source.
    Qa(QaArgs),
    /// Upscale a single-band raster.
    Interpolate(InterpolateArgs),
    /// Generate synthetic fields or full benchmark scenes.
    Synth(SynthArgs),
    /// Degrade-fuse-score benchmark over seeded synthetic scenes.
    Bench(BenchArgs),
}

/// Multispectral input: one RGB file, or three single-band files.
#[derive(clap::Args)]
#[command(group(ArgGroup::new("ms_input").required(true).args(["ms", "ms_r"])))]
struct MsArgs {
    /// Three-band RGB raster.
    #[arg(long)]
    ms: Option<PathBuf>,
    /// Red band file (use with --ms-g and --ms-b).
    #[arg(long, requires = "ms_g", requires = "ms_b")]
    ms_r: Option<PathBuf>,
    /// Green band file.
    #[arg(long, requires = "ms_r")]
    ms_g: Option<PathBuf>,
    /// Blue band file.
    #[arg(long, requires = "ms_r")]
    ms_b: Option<PathBuf>,
}

#[derive(clap::Args)]
struct FuseArgs {
    #[command(flatten)]
    ms: MsArgs,
    /// Panchromatic band at exactly twice the MS dimensions.
    #[arg(long)]
    pan: PathBuf,
    /// Interpolator: nearest, bilinear, cc, lmmse.
    #[arg(long, default_value = "lmmse", value_parser = parse_interp)]
    interp: InterpolatorKind,
    /// Match the pan band to the upsampled intensity moments first.
    #[arg(long)]
    pan_match: bool,
    /// Treat input samples as this many significant bits (8, 12, 16).
    #[arg(long, value_parser = parse_depth)]
    read_depth: Option<BitDepth>,
    /// Output path; a .png extension writes PNG, anything else TIFF.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    /// Aligned human-readable rows.
    Table,
    /// Machine-readable key=value lines at full precision.
    Kv,
}

#[derive(clap::Args)]
struct QaArgs {
    /// Fused RGB image at twice the MS dimensions.
    #[arg(long)]
    fused: PathBuf,
    #[command(flatten)]
    ms: MsArgs,
    /// Treat input samples as this many significant bits (8, 12, 16).
    #[arg(long, value_parser = parse_depth)]
    read_depth: Option<BitDepth>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
    format: ReportFormat,
}

#[derive(clap::Args)]
struct InterpolateArgs {
    /// Single-band input raster.
    #[arg(long)]
    input: PathBuf,
    /// Interpolator: nearest, bilinear, cc, lmmse.
    #[arg(long, default_value = "lmmse", value_parser = parse_interp)]
    interp: InterpolatorKind,
    /// Upscale factor; lmmse supports 2 only.
    #[arg(long, default_value_t = 2)]
    factor: usize,
    /// Kernel parameter for the cc interpolator.
    #[arg(long)]
    cc_a: Option<f64>,
    /// Treat input samples as this many significant bits (8, 12, 16).
    #[arg(long, value_parser = parse_depth)]
    read_depth: Option<BitDepth>,
    /// Output path; a .png extension writes PNG, anything else TIFF.
    #[arg(long)]
    out: PathBuf,
}

#[derive(clap::Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["out", "scene_prefix"])))]
struct SynthArgs {
    /// Grid size HxW; the pan resolution in scene mode.
    #[arg(long, value_parser = parse_size, default_value = "128x128")]
    size: (usize, usize),
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// AR(1) smoothness coefficient in [0, 1).
    #[arg(long, default_value_t = DEFAULT_RHO)]
    rho: f64,
    /// Innovation standard deviation.
    #[arg(long, default_value_t = DEFAULT_SIGMA)]
    sigma: f64,
    /// Edge mosaic blend weight in [0, 1]; scene mode only.
    #[arg(long, default_value_t = DEFAULT_EDGE_MIX)]
    edge_mix: f64,
    /// Read every knob from a scene parameter file instead of flags.
    #[arg(long, conflicts_with_all = ["size", "seed", "rho", "sigma", "edge_mix"])]
    params: Option<PathBuf>,
    /// Print the resolved parameters as key=value lines.
    #[arg(long)]
    emit_params: bool,
    /// Write one smooth field to this path (field mode).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write a reference/MS/pan scene set under this path prefix.
    #[arg(long)]
    scene_prefix: Option<PathBuf>,
}

#[derive(clap::Args)]
struct BenchArgs {
    /// Number of seeded scenes to generate and fuse.
    #[arg(long, default_value_t = 20)]
    scenes: usize,
    /// Scene size HxW at pan resolution.
    #[arg(long, value_parser = parse_size, default_value = "128x128")]
    size: (usize, usize),
    /// Base seed; scene i uses seed + i.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Comma-separated interpolators to race.
    #[arg(
        long,
        value_delimiter = ',',
        value_parser = parse_interp,
        default_values = ["lmmse", "cc", "bilinear"]
    )]
    interps: Vec<InterpolatorKind>,
    /// Edge mosaic blend weight of the generated scenes.
    #[arg(long, default_value_t = DEFAULT_EDGE_MIX)]
    edge_mix: f64,
    /// CSV output path.
    #[arg(long)]
    out: PathBuf,
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Fuse(args) => commands::run_fuse(args),
        Command::Qa(args) => commands::run_qa(args),
        Command::Interpolate(args) => commands::run_interpolate(args),
        Command::Synth(args) => commands::run_synth(args),
        Command::Bench(args) => commands::run_bench(args),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(if e.is_file_error() { 1 } else { 2 });
    }
}
