//! PNG support delegated to the `png` crate: 8- and 16-bit grayscale and
//! RGB only, no transformations applied, decoder resource limits left at
//! the crate defaults. Decoder errors are wrapped as [`Error::Png`] so
//! they map to the file-error exit code like TIFF failures do.

use std::io::Cursor;

use png::{BitDepth as PngDepth, ColorType, Decoder, Encoder, Transformations};

use crate::error::{Error, Result};
use crate::raster::{denormalize, normalize, BitDepth};

use super::RasterData;

/// Decode-side metadata for a PNG stream.
#[derive(Debug, Clone)]
pub struct PngMeta {
    pub bit_depth: BitDepth,
}

/// Decodes a PNG byte slice, normalizing by the container bit depth.
pub fn decode_png(bytes: &[u8]) -> Result<(RasterData, PngMeta)> {
    decode_png_with_depth(bytes, None)
}

/// Like [`decode_png`] but normalizing by `depth` when given. The
/// returned metadata still reports the container depth.
pub fn decode_png_with_depth(
    bytes: &[u8],
    depth: Option<BitDepth>,
) -> Result<(RasterData, PngMeta)> {
    let mut decoder = Decoder::new(Cursor::new(bytes));
    decoder.set_transformations(Transformations::IDENTITY);
    let mut reader = decoder
        .read_info()
        .map_err(|e| Error::Png(e.to_string()))?;
    let mut buf = vec![0u8; reader.output_buffer_size().ok_or_else(|| {
        Error::Png("output buffer size overflows".into())
    })?];
    let info = reader
        .next_frame(&mut buf)
        .map_err(|e| Error::Png(e.to_string()))?;
    buf.truncate(info.buffer_size());

    let container_depth = match info.bit_depth {
        PngDepth::Eight => BitDepth::B8,
        PngDepth::Sixteen => BitDepth::B16,
        other => {
            return Err(Error::Unsupported {
                field: "PNG bit depth",
                value: other as u64,
            })
        }
    };
    let samples = match info.color_type {
        ColorType::Grayscale => 1usize,
        ColorType::Rgb => 3usize,
        other => {
            return Err(Error::Unsupported {
                field: "PNG color type",
                value: other as u64,
            })
        }
    };

    let width = info.width as usize;
    let height = info.height as usize;
    let total = height
        .checked_mul(width)
        .and_then(|p| p.checked_mul(samples))
        .ok_or(Error::Truncated("image size overflow"))?;
    let mut raw = Vec::with_capacity(total);
    match container_depth {
        BitDepth::B8 => {
            if buf.len() != total {
                return Err(Error::Png(format!(
                    "decoded {} bytes where {total} were expected",
                    buf.len()
                )));
            }
            raw.extend(buf.iter().map(|&b| u16::from(b)));
        }
        _ => {
            if buf.len() != total * 2 {
                return Err(Error::Png(format!(
                    "decoded {} bytes where {} were expected",
                    buf.len(),
                    total * 2
                )));
            }
            // PNG 16-bit samples are big-endian on the wire.
            raw.extend(
                buf.chunks_exact(2)
                    .map(|c| u16::from_be_bytes([c[0], c[1]])),
            );
        }
    }

    let norm_depth = depth.unwrap_or(container_depth);
    let data = if samples == 1 {
        RasterData::Gray(normalize(&raw, height, width, norm_depth)?)
    } else {
        let n = height * width;
        let mut planes = [
            Vec::with_capacity(n),
            Vec::with_capacity(n),
            Vec::with_capacity(n),
        ];
        for chunk in raw.chunks_exact(3) {
            planes[0].push(chunk[0]);
            planes[1].push(chunk[1]);
            planes[2].push(chunk[2]);
        }
        let [r, g, b] = planes;
        RasterData::Rgb([
            normalize(&r, height, width, norm_depth)?,
            normalize(&g, height, width, norm_depth)?,
            normalize(&b, height, width, norm_depth)?,
        ])
    };
    Ok((
        data,
        PngMeta {
            bit_depth: container_depth,
        },
    ))
}

/// Encodes pixels as PNG at the requested depth. A 12-bit depth ships in
/// a 16-bit container, matching the TIFF writer's policy.
pub fn encode_png(data: &RasterData, depth: BitDepth) -> Result<Vec<u8>> {
    let (height, width) = data.dimensions();
    let (png_depth, wide) = match depth {
        BitDepth::B8 => (PngDepth::Eight, false),
        BitDepth::B12 | BitDepth::B16 => (PngDepth::Sixteen, true),
    };
    let color = match data {
        RasterData::Gray(_) => ColorType::Grayscale,
        RasterData::Rgb(_) => ColorType::Rgb,
    };

    let codes: Vec<u16> = match data {
        RasterData::Gray(g) => denormalize(g, depth),
        RasterData::Rgb(bands) => {
            let r = denormalize(&bands[0], depth);
            let g = denormalize(&bands[1], depth);
            let b = denormalize(&bands[2], depth);
            let mut out = Vec::with_capacity(r.len() * 3);
            for i in 0..r.len() {
                out.push(r[i]);
                out.push(g[i]);
                out.push(b[i]);
            }
            out
        }
    };
    let mut bytes = Vec::with_capacity(codes.len() * if wide { 2 } else { 1 });
    for &code in &codes {
        if wide {
            bytes.extend_from_slice(&code.to_be_bytes());
        } else {
            bytes.push(code as u8);
        }
    }

    let mut out = Vec::new();
    {
        let mut encoder = Encoder::new(&mut out, width as u32, height as u32);
        encoder.set_color(color);
        encoder.set_depth(png_depth);
        let mut writer = encoder
            .write_header()
            .map_err(|e| Error::Png(e.to_string()))?;
        writer
            .write_image_data(&bytes)
            .map_err(|e| Error::Png(e.to_string()))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raster::ImageGrid;

    #[test]
    fn gray8_round_trip_is_code_exact() {
        let grid = ImageGrid::from_fn(3, 5, |r, c| ((r * 5 + c) as f64) / 14.0).unwrap();
        let bytes = encode_png(&RasterData::Gray(grid.clone()), BitDepth::B8).unwrap();
        let (decoded, meta) = decode_png(&bytes).unwrap();
        assert_eq!(meta.bit_depth, BitDepth::B8);
        let RasterData::Gray(got) = decoded else {
            panic!("expected gray");
        };
        assert_eq!(
            denormalize(&got, BitDepth::B8),
            denormalize(&grid, BitDepth::B8)
        );
    }

    #[test]
    fn rgb16_round_trip_is_code_exact() {
        let bands = [
            ImageGrid::from_fn(4, 3, |r, c| ((r + c) as f64) / 5.0).unwrap(),
            ImageGrid::from_fn(4, 3, |r, c| ((r * c) as f64) / 6.0).unwrap(),
            ImageGrid::from_fn(4, 3, |_, c| (c as f64) / 2.0).unwrap(),
        ];
        let bytes = encode_png(&RasterData::Rgb(bands.clone()), BitDepth::B16).unwrap();
        let (decoded, meta) = decode_png(&bytes).unwrap();
        assert_eq!(meta.bit_depth, BitDepth::B16);
        let RasterData::Rgb(got) = decoded else {
            panic!("expected rgb");
        };
        for (a, b) in got.iter().zip(&bands) {
            assert_eq!(
                denormalize(a, BitDepth::B16),
                denormalize(b, BitDepth::B16)
            );
        }
    }

    #[test]
    fn truncated_stream_is_an_error() {
        let grid = ImageGrid::constant(4, 4, 0.25).unwrap();
        let bytes = encode_png(&RasterData::Gray(grid), BitDepth::B8).unwrap();
        // Prefixes that cut into IHDR or IDAT must fail; a clipped IEND
        // checksum after complete image data is tolerated by the reader.
        for len in [0, 4, 8, 16, 33, bytes.len() / 2] {
            assert!(decode_png(&bytes[..len]).is_err(), "accepted {len} bytes");
        }
    }

    #[test]
    fn garbage_after_magic_is_an_error_not_a_panic() {
        let mut bytes = b"\x89PNG\r\n\x1a\n".to_vec();
        bytes.extend_from_slice(&[0xAB; 64]);
        assert!(decode_png(&bytes).is_err());
    }
}
