//! Raster file I/O: a hand-rolled TIFF 6.0 baseline subset and a thin PNG
//! wrapper, unified behind [`read_raster`] / [`write_raster`].
//!
//! Containers are sniffed by magic bytes, never by file extension. Geo
//! metadata found in TIFF inputs is captured as one opaque byte block and
//! re-emitted verbatim on write; it is never interpreted. The in-memory
//! decode entry points ([`decode_tiff`], [`decode_png`]) take untrusted
//! byte slices and are the crate's fuzzing surface.

mod png_io;
mod tiff;

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::raster::{BandSpec, BitDepth, ImageGrid, MultibandImage};

pub use png_io::{decode_png, decode_png_with_depth, encode_png};
pub use tiff::{decode_tiff, decode_tiff_with_depth, encode_tiff};

/// Supported on-disk container formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RasterFormat {
    Tiff,
    Png,
}

/// TIFF byte order. PNG is always big-endian on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ByteOrder {
    Little,
    Big,
}

/// Everything known about a raster file besides its pixels.
#[derive(Debug, Clone)]
pub struct RasterFile {
    pub path: PathBuf,
    pub format: RasterFormat,
    /// Container storage depth from the on-disk header (8 or 16 bit).
    pub bit_depth: BitDepth,
    pub bands: u8,
    pub byte_order: ByteOrder,
    /// Opaque geo metadata block, empty when absent. Preserved verbatim
    /// on TIFF write and never parsed; PNG has no slot for it.
    pub geo_metadata: Vec<u8>,
}

/// Decoded pixel payload of a raster file.
#[derive(Debug, Clone)]
pub enum RasterData {
    Gray(ImageGrid),
    Rgb([ImageGrid; 3]),
}

impl RasterData {
    pub fn dimensions(&self) -> (usize, usize) {
        match self {
            RasterData::Gray(g) => g.dimensions(),
            RasterData::Rgb(bands) => bands[0].dimensions(),
        }
    }

    pub fn band_count(&self) -> u8 {
        match self {
            RasterData::Gray(_) => 1,
            RasterData::Rgb(_) => 3,
        }
    }
}

/// Reads a TIFF or PNG raster, normalizing samples by the container depth.
pub fn read_raster(path: &Path) -> Result<(RasterData, RasterFile)> {
    read_raster_with_depth(path, None)
}

/// Like [`read_raster`] but normalizes by `depth` when given, so 12-bit
/// data shipped in 16-bit containers scales correctly. Samples above the
/// declared maximum fail with the offending coordinate named.
pub fn read_raster_with_depth(
    path: &Path,
    depth: Option<BitDepth>,
) -> Result<(RasterData, RasterFile)> {
    let bytes = fs::read(path)?;
    if bytes.len() >= 4 && (&bytes[..4] == b"II*\0" || &bytes[..4] == b"MM\0*") {
        let (data, meta) = tiff::decode_tiff_with_depth(&bytes, depth)?;
        let bands = data.band_count();
        Ok((
            data,
            RasterFile {
                path: path.to_path_buf(),
                format: RasterFormat::Tiff,
                bit_depth: meta.bit_depth,
                bands,
                byte_order: meta.byte_order,
                geo_metadata: meta.geo_metadata,
            },
        ))
    } else if bytes.len() >= 8 && &bytes[..8] == b"\x89PNG\r\n\x1a\n" {
        let (data, meta) = png_io::decode_png_with_depth(&bytes, depth)?;
        let bands = data.band_count();
        Ok((
            data,
            RasterFile {
                path: path.to_path_buf(),
                format: RasterFormat::Png,
                bit_depth: meta.bit_depth,
                bands,
                byte_order: ByteOrder::Big,
                geo_metadata: Vec::new(),
            },
        ))
    } else {
        Err(Error::Malformed(
            "unrecognized raster container (expected TIFF or PNG magic)".into(),
        ))
    }
}

/// Writes a raster as described by `file`: format, bit depth, byte order,
/// and (for TIFF) the opaque geo block. Samples are denormalized with
/// round-half-up. The band count in `file` must match the data.
pub fn write_raster(data: &RasterData, file: &RasterFile) -> Result<()> {
    if file.bands != data.band_count() {
        return Err(Error::InvalidParameter(format!(
            "raster spec declares {} bands but the data has {}",
            file.bands,
            data.band_count()
        )));
    }
    let bytes = match file.format {
        RasterFormat::Tiff => {
            tiff::encode_tiff(data, file.bit_depth, file.byte_order, &file.geo_metadata)?
        }
        RasterFormat::Png => {
            if !file.geo_metadata.is_empty() {
                return Err(Error::InvalidParameter(
                    "PNG has no geo metadata slot; clear geo_metadata or write TIFF".into(),
                ));
            }
            png_io::encode_png(data, file.bit_depth)?
        }
    };
    fs::write(&file.path, bytes)?;
    Ok(())
}

/// Reads three single-band files declared as R, G, B (in argument order)
/// and stacks them into a multiband image with matching band metadata.
pub fn stack_bands(red: &Path, green: &Path, blue: &Path) -> Result<MultibandImage> {
    stack_bands_with_depth(red, green, blue, None)
}

/// [`stack_bands`] with an optional normalization depth override applied
/// to all three files.
pub fn stack_bands_with_depth(
    red: &Path,
    green: &Path,
    blue: &Path,
    depth: Option<BitDepth>,
) -> Result<MultibandImage> {
    let mut grids = Vec::with_capacity(3);
    for (path, name) in [(red, "red"), (green, "green"), (blue, "blue")] {
        let (data, _) = read_raster_with_depth(path, depth)?;
        match data {
            RasterData::Gray(g) => grids.push(g),
            RasterData::Rgb(_) => {
                return Err(Error::InvalidParameter(format!(
                    "{name} band file {} is not single-band",
                    path.display()
                )))
            }
        }
    }
    let dims: Vec<(usize, usize)> = grids.iter().map(|g| g.dimensions()).collect();
    if dims[0] != dims[1] || dims[0] != dims[2] {
        return Err(Error::InvalidParameter(format!(
            "band dimensions differ: red {}x{}, green {}x{}, blue {}x{}",
            dims[0].0, dims[0].1, dims[1].0, dims[1].1, dims[2].0, dims[2].1
        )));
    }
    let mut iter = grids.into_iter();
    MultibandImage::new(vec![
        (BandSpec::oli_red(), iter.next().unwrap()),
        (BandSpec::oli_green(), iter.next().unwrap()),
        (BandSpec::oli_blue(), iter.next().unwrap()),
    ])
}
