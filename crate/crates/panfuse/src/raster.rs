//! Core raster containers and radiometric normalization.
//!
//! All image math in this crate runs on [`ImageGrid`]: a row-major `f64`
//! grid whose samples are finite and lie in [0, 1]. Integer sensor codes
//! enter through [`normalize`] and leave through [`denormalize`]; everything
//! between operates on reflectance-like values so interpolation, fusion, and
//! QA never need to care about container bit depth.

use crate::error::{Error, Result};

/// Sensor quantization depths accepted by [`normalize`].
///
/// Twelve-bit data packed in 16-bit containers is common for pushbroom
/// sensors, so 12 is a first-class depth even though files store 8 or 16.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitDepth {
    B8,
    B12,
    B16,
}

impl BitDepth {
    pub fn bits(self) -> u8 {
        match self {
            BitDepth::B8 => 8,
            BitDepth::B12 => 12,
            BitDepth::B16 => 16,
        }
    }

    /// Largest representable code: 2^bits - 1.
    pub fn max_code(self) -> u16 {
        match self {
            BitDepth::B8 => 255,
            BitDepth::B12 => 4095,
            BitDepth::B16 => 65535,
        }
    }

    pub fn from_bits(bits: u8) -> Result<Self> {
        match bits {
            8 => Ok(BitDepth::B8),
            12 => Ok(BitDepth::B12),
            16 => Ok(BitDepth::B16),
            other => Err(Error::InvalidParameter(format!(
                "bit depth must be 8, 12, or 16, got {other}"
            ))),
        }
    }
}

/// Single-band raster with normalized samples.
///
/// Invariants: `height >= 1`, `width >= 1`, `data.len() == height * width`,
/// and every sample is finite and in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct ImageGrid {
    height: usize,
    width: usize,
    data: Vec<f64>,
}

impl ImageGrid {
    /// Builds a grid from row-major samples, validating shape and range.
    pub fn from_vec(height: usize, width: usize, data: Vec<f64>) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::InvalidParameter(format!(
                "grid dimensions must be nonzero, got {height}x{width}"
            )));
        }
        let expected = height
            .checked_mul(width)
            .ok_or_else(|| Error::InvalidParameter("grid dimensions overflow".into()))?;
        if data.len() != expected {
            return Err(Error::LengthMismatch {
                height,
                width,
                expected,
                actual: data.len(),
            });
        }
        for (idx, &v) in data.iter().enumerate() {
            if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                return Err(Error::SampleNotNormalized {
                    row: idx / width,
                    col: idx % width,
                    value: v,
                });
            }
        }
        Ok(ImageGrid {
            height,
            width,
            data,
        })
    }

    /// Builds a grid by evaluating `f` at every (row, col).
    pub fn from_fn(height: usize, width: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = Vec::with_capacity(height.saturating_mul(width));
        for i in 0..height {
            for j in 0..width {
                data.push(f(i, j));
            }
        }
        Self::from_vec(height, width, data)
    }

    /// Constant-valued grid.
    pub fn constant(height: usize, width: usize, value: f64) -> Result<Self> {
        Self::from_vec(height, width, vec![value; height.saturating_mul(width)])
    }

    /// Internal constructor for values already guaranteed in range.
    pub(crate) fn from_vec_unchecked(height: usize, width: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), height * width);
        debug_assert!(data.iter().all(|v| v.is_finite() && (0.0..=1.0).contains(v)));
        ImageGrid {
            height,
            width,
            data,
        }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    /// Sample at (row, col). Panics on out-of-bounds indices.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        assert!(row < self.height && col < self.width, "index out of bounds");
        self.data[row * self.width + col]
    }

    /// Sample with replicated-border semantics: indices are clamped to the
    /// valid range, so any integer coordinate is answerable.
    #[inline]
    pub fn get_clamped(&self, row: isize, col: isize) -> f64 {
        let r = row.clamp(0, self.height as isize - 1) as usize;
        let c = col.clamp(0, self.width as isize - 1) as usize;
        self.data[r * self.width + c]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.width)
    }

    /// Arithmetic mean over all samples.
    pub fn mean(&self) -> f64 {
        self.data.iter().sum::<f64>() / self.data.len() as f64
    }

    /// Population standard deviation (divisor N).
    pub fn std_dev(&self) -> f64 {
        let m = self.mean();
        let var = self
            .data
            .iter()
            .map(|v| (v - m) * (v - m))
            .sum::<f64>()
            / self.data.len() as f64;
        var.sqrt()
    }
}

/// Spectral band metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct BandSpec {
    pub band_number: u8,
    pub name: String,
    /// Lower edge of the band in micrometers.
    pub wavelength_lo_um: f64,
    /// Upper edge of the band in micrometers.
    pub wavelength_hi_um: f64,
    pub native_resolution_m: f64,
}

impl BandSpec {
    /// OLI band 2, blue, 0.450-0.515 um at 30 m.
    pub fn oli_blue() -> Self {
        BandSpec {
            band_number: 2,
            name: "Blue".into(),
            wavelength_lo_um: 0.450,
            wavelength_hi_um: 0.515,
            native_resolution_m: 30.0,
        }
    }

    /// OLI band 3, green, 0.525-0.600 um at 30 m.
    pub fn oli_green() -> Self {
        BandSpec {
            band_number: 3,
            name: "Green".into(),
            wavelength_lo_um: 0.525,
            wavelength_hi_um: 0.600,
            native_resolution_m: 30.0,
        }
    }

    /// OLI band 4, red, 0.630-0.680 um at 30 m.
    pub fn oli_red() -> Self {
        BandSpec {
            band_number: 4,
            name: "Red".into(),
            wavelength_lo_um: 0.630,
            wavelength_hi_um: 0.680,
            native_resolution_m: 30.0,
        }
    }

    /// OLI band 8, panchromatic, 0.500-0.680 um at 15 m.
    pub fn oli_pan() -> Self {
        BandSpec {
            band_number: 8,
            name: "Panchromatic".into(),
            wavelength_lo_um: 0.500,
            wavelength_hi_um: 0.680,
            native_resolution_m: 15.0,
        }
    }
}

/// Ordered set of co-registered bands sharing one grid shape.
#[derive(Debug, Clone)]
pub struct MultibandImage {
    bands: Vec<(BandSpec, ImageGrid)>,
}

impl MultibandImage {
    /// Builds a multiband image; every band must share the first band's
    /// dimensions.
    pub fn new(bands: Vec<(BandSpec, ImageGrid)>) -> Result<Self> {
        let mut iter = bands.iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::InvalidParameter("multiband image needs at least one band".into()))?;
        let dims = first.1.dimensions();
        for (spec, grid) in iter {
            if grid.dimensions() != dims {
                return Err(Error::DimensionMismatch {
                    context: match spec.name.as_str() {
                        "Blue" => "band Blue does not match the first band",
                        "Green" => "band Green does not match the first band",
                        "Red" => "band Red does not match the first band",
                        _ => "band does not match the first band",
                    },
                    expected: dims,
                    actual: grid.dimensions(),
                });
            }
        }
        Ok(MultibandImage { bands })
    }

    pub fn bands(&self) -> &[(BandSpec, ImageGrid)] {
        &self.bands
    }

    pub fn band_count(&self) -> usize {
        self.bands.len()
    }

    pub fn dimensions(&self) -> (usize, usize) {
        self.bands[0].1.dimensions()
    }

    /// The three grids in stored order; errors unless exactly three bands.
    pub fn rgb(&self) -> Result<[&ImageGrid; 3]> {
        if self.bands.len() != 3 {
            return Err(Error::InvalidParameter(format!(
                "expected exactly 3 bands (R, G, B), got {}",
                self.bands.len()
            )));
        }
        Ok([&self.bands[0].1, &self.bands[1].1, &self.bands[2].1])
    }
}

/// Maps raw integer codes to [0, 1] by dividing by the depth's maximum code.
///
/// Any code above the maximum fails with the offending coordinate named;
/// 0 maps to exactly 0.0 and the maximum code to exactly 1.0, and the map
/// is strictly monotone over valid codes.
pub fn normalize(raw: &[u16], height: usize, width: usize, depth: BitDepth) -> Result<ImageGrid> {
    let expected = height
        .checked_mul(width)
        .ok_or_else(|| Error::InvalidParameter("grid dimensions overflow".into()))?;
    if raw.len() != expected {
        return Err(Error::LengthMismatch {
            height,
            width,
            expected,
            actual: raw.len(),
        });
    }
    if height == 0 || width == 0 {
        return Err(Error::InvalidParameter(format!(
            "grid dimensions must be nonzero, got {height}x{width}"
        )));
    }
    let max = depth.max_code();
    let scale = 1.0 / max as f64;
    let mut data = Vec::with_capacity(expected);
    for (idx, &code) in raw.iter().enumerate() {
        if code > max {
            return Err(Error::SampleOutOfRange {
                row: idx / width,
                col: idx % width,
                value: code,
                bits: depth.bits(),
                max,
            });
        }
        data.push(code as f64 * scale);
    }
    Ok(ImageGrid::from_vec_unchecked(height, width, data))
}

/// Inverse of [`normalize`]: scales to the depth's code range and rounds
/// half up, so 0.5 at 8 bits becomes code 128.
pub fn denormalize(grid: &ImageGrid, depth: BitDepth) -> Vec<u16> {
    let max = depth.max_code() as f64;
    grid.as_slice()
        .iter()
        .map(|&v| {
            let code = (v * max + 0.5).floor();
            code.clamp(0.0, max) as u16
        })
        .collect()
}

/// Pads a grid by `margin` replicated edge pixels on every side.
pub fn extend_border(grid: &ImageGrid, margin: usize) -> Result<ImageGrid> {
    if margin == 0 {
        return Err(Error::InvalidParameter("border margin must be at least 1".into()));
    }
    let (h, w) = grid.dimensions();
    let oh = h
        .checked_add(margin.checked_mul(2).ok_or_else(too_big)?)
        .ok_or_else(too_big)?;
    let ow = w.checked_add(margin * 2).ok_or_else(too_big)?;
    let m = margin as isize;
    let mut data = Vec::with_capacity(oh.checked_mul(ow).ok_or_else(too_big)?);
    for i in 0..oh {
        for j in 0..ow {
            data.push(grid.get_clamped(i as isize - m, j as isize - m));
        }
    }
    Ok(ImageGrid::from_vec_unchecked(oh, ow, data))
}

fn too_big() -> Error {
    Error::InvalidParameter("padded dimensions overflow".into())
}
