//! Reduced-reference quality assessment built on a single global SSIM.
//!
//! The score is the three-factor SSIM product evaluated once over whole
//! grids with population statistics, not a windowed mean. Fused results
//! are judged by decimating them back onto the low-resolution lattice and
//! comparing each band against the original multispectral band, then
//! mapping the average similarity onto a percentage via (s + 1) / 2 * 100.

use crate::error::{Error, Result};
use crate::fusion::FusedImage;
use crate::raster::{ImageGrid, MultibandImage};

/// Stabilization constants for the three SSIM factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SsimConfig {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl Default for SsimConfig {
    /// c1 = 0.01^2 and c2 = 0.03^2 for a dynamic range of 1.0, c3 = c2 / 2.
    fn default() -> Self {
        let c1 = 0.01 * 0.01;
        let c2 = 0.03 * 0.03;
        SsimConfig { c1, c2, c3: c2 / 2.0 }
    }
}

/// First- and second-order population statistics of a grid pair.
#[derive(Debug, Clone, Copy)]
pub struct SsimStats {
    pub mean_x: f64,
    pub mean_y: f64,
    pub var_x: f64,
    pub var_y: f64,
    pub std_x: f64,
    pub std_y: f64,
    pub cov_xy: f64,
}

/// Computes the joint statistics with divisor N (population convention).
pub fn ssim_stats(x: &ImageGrid, y: &ImageGrid) -> Result<SsimStats> {
    if x.dimensions() != y.dimensions() {
        return Err(Error::DimensionMismatch {
            context: "ssim operands must share a shape",
            expected: x.dimensions(),
            actual: y.dimensions(),
        });
    }
    let n = (x.height() * x.width()) as f64;
    let mean_x = x.as_slice().iter().sum::<f64>() / n;
    let mean_y = y.as_slice().iter().sum::<f64>() / n;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    let mut cov = 0.0;
    for (&a, &b) in x.as_slice().iter().zip(y.as_slice()) {
        let dx = a - mean_x;
        let dy = b - mean_y;
        var_x += dx * dx;
        var_y += dy * dy;
        cov += dx * dy;
    }
    let var_x = var_x / n;
    let var_y = var_y / n;
    Ok(SsimStats {
        mean_x,
        mean_y,
        var_x,
        var_y,
        std_x: var_x.sqrt(),
        std_y: var_y.sqrt(),
        cov_xy: cov / n,
    })
}

/// Global single-window SSIM in the three-factor form:
/// luminance * contrast * structure, each stabilized by its constant.
///
/// The sigma product is taken as sqrt(var_x * var_y), not std_x * std_y:
/// with x == y that makes numerator and denominator bitwise equal, so
/// self-similarity is exactly 1.0. The Cauchy-Schwarz bound
/// |cov| <= sqrt(var_x * var_y) keeps the product within [-1, 1].
pub fn global_ssim(x: &ImageGrid, y: &ImageGrid, cfg: SsimConfig) -> Result<f64> {
    let s = ssim_stats(x, y)?;
    let sigma_xy = (s.var_x * s.var_y).sqrt();
    let num = (2.0 * s.mean_x * s.mean_y + cfg.c1)
        * (2.0 * sigma_xy + cfg.c2)
        * (s.cov_xy + cfg.c3);
    let den = (s.mean_x * s.mean_x + s.mean_y * s.mean_y + cfg.c1)
        * (s.var_x + s.var_y + cfg.c2)
        * (sigma_xy + cfg.c3);
    Ok(num / den)
}

/// Keeps every `factor`-th sample starting at `phase`; pure decimation
/// with no prefilter.
pub fn downsample_phase(
    grid: &ImageGrid,
    factor: usize,
    phase: (usize, usize),
) -> Result<ImageGrid> {
    if factor < 2 {
        return Err(Error::InvalidParameter(format!(
            "decimation factor must be at least 2, got {factor}"
        )));
    }
    if phase.0 >= factor || phase.1 >= factor {
        return Err(Error::InvalidParameter(format!(
            "phase ({}, {}) must be below the factor {factor}",
            phase.0, phase.1
        )));
    }
    let (h, w) = grid.dimensions();
    if phase.0 >= h || phase.1 >= w {
        return Err(Error::InvalidParameter(format!(
            "phase ({}, {}) lies outside a {h}x{w} grid",
            phase.0, phase.1
        )));
    }
    let oh = (h - phase.0).div_ceil(factor);
    let ow = (w - phase.1).div_ceil(factor);
    let mut data = Vec::with_capacity(oh * ow);
    for i in 0..oh {
        for j in 0..ow {
            data.push(grid.get(phase.0 + factor * i, phase.1 + factor * j));
        }
    }
    Ok(ImageGrid::from_vec_unchecked(oh, ow, data))
}

/// Maps an average similarity in [-1, 1] onto a percentage in [0, 100].
pub fn similarity_percent(average_ssim: f64) -> f64 {
    (average_ssim + 1.0) / 2.0 * 100.0
}

/// Per-band similarity summary of one fused image.
#[derive(Debug, Clone)]
pub struct SsimReport {
    /// Band label and score, in the band order of the reference image.
    pub per_band: Vec<(String, f64)>,
    pub average: f64,
    pub similarity_percent: f64,
}

impl SsimReport {
    fn from_scores(per_band: Vec<(String, f64)>) -> Self {
        let average = per_band.iter().map(|(_, s)| s).sum::<f64>() / per_band.len() as f64;
        SsimReport {
            average,
            similarity_percent: similarity_percent(average),
            per_band,
        }
    }

    /// Human-readable table: one row per band, then Average and
    /// Similarity (%).
    pub fn to_table_string(&self) -> String {
        let mut out = String::new();
        for (name, score) in &self.per_band {
            out.push_str(&format!("{name:<16}{score:.4}\n"));
        }
        out.push_str(&format!("{:<16}{:.4}\n", "Average", self.average));
        out.push_str(&format!("{:<16}{:.2}\n", "Similarity (%)", self.similarity_percent));
        out
    }

    /// Machine-readable key=value lines with full float precision.
    pub fn to_kv_string(&self) -> String {
        let mut out = String::new();
        for (name, score) in &self.per_band {
            out.push_str(&format!("ssim.{}={}\n", name.to_lowercase(), score));
        }
        out.push_str(&format!("ssim.average={}\n", self.average));
        out.push_str(&format!("similarity_percent={}\n", self.similarity_percent));
        out
    }
}

/// Reduced-reference QA: decimates the fused bands at factor 2, phase
/// (0, 0) so samples land back on the original lattice, then scores each
/// band against the corresponding multispectral band.
pub fn reduced_reference_qa(
    fused: &FusedImage,
    ms: &MultibandImage,
    cfg: SsimConfig,
) -> Result<SsimReport> {
    let (mh, mw) = ms.dimensions();
    let expected = (2 * mh, 2 * mw);
    if fused.dimensions() != expected {
        return Err(Error::DimensionMismatch {
            context: "fused image must be the 2x product of the MS input",
            expected,
            actual: fused.dimensions(),
        });
    }
    let ms_bands = ms.rgb()?;
    let fused_bands = [&fused.r, &fused.g, &fused.b];
    let mut per_band = Vec::with_capacity(3);
    for (idx, (spec, _)) in ms.bands().iter().enumerate() {
        let deci = downsample_phase(fused_bands[idx], 2, (0, 0))?;
        let score = global_ssim(&deci, ms_bands[idx], cfg)?;
        per_band.push((spec.name.clone(), score));
    }
    Ok(SsimReport::from_scores(per_band))
}

/// Full-reference QA against a ground-truth triplet at fused resolution;
/// this is the comparison a degrade-fuse-compare benchmark needs.
pub fn full_reference_qa(
    fused: &FusedImage,
    reference: &[ImageGrid; 3],
    cfg: SsimConfig,
) -> Result<SsimReport> {
    let fused_bands = [&fused.r, &fused.g, &fused.b];
    let names = ["Red", "Green", "Blue"];
    let mut per_band = Vec::with_capacity(3);
    for idx in 0..3 {
        let score = global_ssim(fused_bands[idx], &reference[idx], cfg)?;
        per_band.push((names[idx].to_string(), score));
    }
    Ok(SsimReport::from_scores(per_band))
}
