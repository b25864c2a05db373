//! Hand-rolled TIFF 6.0 baseline subset.
//!
//! Reader: both byte orders, strip or tile layout, compression 1 (none),
//! 8 (deflate), and 32946 (legacy deflate), predictor 1 or 2, photometric
//! 0/1/2, chunky planar layout, 8- or 16-bit unsigned samples. Everything
//! else is rejected with the offending tag named. All offsets and sizes
//! are bounds-checked against the input slice and capped, so arbitrary
//! bytes can be thrown at [`decode_tiff`] safely.
//!
//! Writer: single uncompressed strip, chunky, orientation 1, in either
//! byte order. Geo tags captured at decode time travel as an opaque block
//! and are re-emitted bit-for-bit.

use std::io::Read;

use flate2::read::ZlibDecoder;

use crate::error::{Error, Result};
use crate::raster::{denormalize, normalize, BitDepth};

use super::{ByteOrder, RasterData};

const TAG_IMAGE_WIDTH: u16 = 256;
const TAG_IMAGE_LENGTH: u16 = 257;
const TAG_BITS_PER_SAMPLE: u16 = 258;
const TAG_COMPRESSION: u16 = 259;
const TAG_PHOTOMETRIC: u16 = 262;
const TAG_STRIP_OFFSETS: u16 = 273;
const TAG_ORIENTATION: u16 = 274;
const TAG_SAMPLES_PER_PIXEL: u16 = 277;
const TAG_ROWS_PER_STRIP: u16 = 278;
const TAG_STRIP_BYTE_COUNTS: u16 = 279;
const TAG_PLANAR_CONFIG: u16 = 284;
const TAG_PREDICTOR: u16 = 317;
const TAG_TILE_WIDTH: u16 = 322;
const TAG_TILE_LENGTH: u16 = 323;
const TAG_TILE_OFFSETS: u16 = 324;
const TAG_TILE_BYTE_COUNTS: u16 = 325;
const TAG_SAMPLE_FORMAT: u16 = 339;

/// Tags preserved opaquely: ModelPixelScale, ModelTiepoint,
/// ModelTransformation, GeoKeyDirectory, GeoDoubleParams, GeoAsciiParams.
const GEO_TAGS: [u16; 6] = [33550, 33922, 34264, 34735, 34736, 34737];

/// Upper bound on any single tag payload we will buffer.
const MAX_TAG_PAYLOAD: usize = 1 << 22;
/// Upper bound on height * width * samples for a decoded image.
const MAX_TOTAL_SAMPLES: usize = 1 << 28;

const COMPRESSION_NONE: u16 = 1;
const COMPRESSION_DEFLATE: u16 = 8;
const COMPRESSION_DEFLATE_OLD: u16 = 32946;

/// Decode-side metadata surfaced alongside the pixels.
#[derive(Debug, Clone)]
pub struct TiffMeta {
    pub bit_depth: BitDepth,
    pub byte_order: ByteOrder,
    /// Serialized geo tag block, empty when the file had none.
    pub geo_metadata: Vec<u8>,
}

/// Bounds-checked view over the raw file bytes.
struct Reader<'a> {
    bytes: &'a [u8],
    order: ByteOrder,
}

impl<'a> Reader<'a> {
    fn slice(&self, offset: usize, len: usize) -> Result<&'a [u8]> {
        let end = offset
            .checked_add(len)
            .ok_or(Error::Truncated("offset overflow"))?;
        self.bytes
            .get(offset..end)
            .ok_or(Error::Truncated("range past end of file"))
    }

    fn u16_at(&self, offset: usize) -> Result<u16> {
        let b = self.slice(offset, 2)?;
        Ok(match self.order {
            ByteOrder::Little => u16::from_le_bytes([b[0], b[1]]),
            ByteOrder::Big => u16::from_be_bytes([b[0], b[1]]),
        })
    }

    fn u32_at(&self, offset: usize) -> Result<u32> {
        let b = self.slice(offset, 4)?;
        Ok(match self.order {
            ByteOrder::Little => u32::from_le_bytes([b[0], b[1], b[2], b[3]]),
            ByteOrder::Big => u32::from_be_bytes([b[0], b[1], b[2], b[3]]),
        })
    }
}

/// One parsed IFD entry. `value_or_offset` holds the raw 4-byte field in
/// file byte order semantics (already decoded to a u32).
#[derive(Debug, Clone, Copy)]
struct IfdEntry {
    tag: u16,
    dtype: u16,
    count: u32,
    value_or_offset: u32,
    /// Raw bytes of the value/offset field, needed for inline payloads.
    raw_value: [u8; 4],
}

fn dtype_size(dtype: u16) -> Option<usize> {
    match dtype {
        1 | 2 | 6 | 7 => Some(1), // BYTE, ASCII, SBYTE, UNDEFINED
        3 | 8 => Some(2),         // SHORT, SSHORT
        4 | 9 | 11 => Some(4),    // LONG, SLONG, FLOAT
        5 | 10 | 12 => Some(8),   // RATIONAL, SRATIONAL, DOUBLE
        _ => None,
    }
}

/// Returns the raw payload bytes of an entry, inline or external.
fn entry_payload<'a>(r: &Reader<'a>, e: &IfdEntry) -> Result<Vec<u8>> {
    let unit = dtype_size(e.dtype)
        .ok_or_else(|| Error::Malformed(format!("tag {} has unknown data type {}", e.tag, e.dtype)))?;
    let len = (e.count as usize)
        .checked_mul(unit)
        .ok_or(Error::Truncated("tag payload length overflow"))?;
    if len > MAX_TAG_PAYLOAD {
        return Err(Error::Malformed(format!(
            "tag {} payload of {len} bytes exceeds the {MAX_TAG_PAYLOAD} byte cap",
            e.tag
        )));
    }
    if len <= 4 {
        Ok(e.raw_value[..len].to_vec())
    } else {
        Ok(r.slice(e.value_or_offset as usize, len)?.to_vec())
    }
}

/// Reads an entry as a list of unsigned integers (SHORT or LONG only).
fn entry_uints(r: &Reader, e: &IfdEntry) -> Result<Vec<u32>> {
    let payload = entry_payload(r, e)?;
    let mut out = Vec::with_capacity(e.count as usize);
    match e.dtype {
        3 => {
            for chunk in payload.chunks_exact(2) {
                out.push(u32::from(match r.order {
                    ByteOrder::Little => u16::from_le_bytes([chunk[0], chunk[1]]),
                    ByteOrder::Big => u16::from_be_bytes([chunk[0], chunk[1]]),
                }));
            }
        }
        4 => {
            for chunk in payload.chunks_exact(4) {
                out.push(match r.order {
                    ByteOrder::Little => u32::from_le_bytes([chunk[0], chunk[1], chunk[2], chunk[3]]),
                    ByteOrder::Big => u32::from_be_bytes([chunk[0], chunk[1], chunk[2], chunk[3]]),
                });
            }
        }
        other => {
            return Err(Error::Malformed(format!(
                "tag {} uses data type {other} where SHORT or LONG is required",
                e.tag
            )))
        }
    }
    if out.len() != e.count as usize {
        return Err(Error::Truncated("tag payload shorter than its count"));
    }
    Ok(out)
}

fn entry_uint(r: &Reader, e: &IfdEntry) -> Result<u32> {
    let values = entry_uints(r, e)?;
    values
        .first()
        .copied()
        .ok_or_else(|| Error::Malformed(format!("tag {} has zero count", e.tag)))
}

fn find(entries: &[IfdEntry], tag: u16) -> Option<&IfdEntry> {
    entries.iter().find(|e| e.tag == tag)
}

/// Decodes a TIFF byte slice, normalizing by the container bit depth.
pub fn decode_tiff(bytes: &[u8]) -> Result<(RasterData, TiffMeta)> {
    decode_tiff_with_depth(bytes, None)
}

/// Like [`decode_tiff`] but normalizing by `depth` when given. The
/// returned metadata still reports the container depth.
pub fn decode_tiff_with_depth(
    bytes: &[u8],
    depth: Option<BitDepth>,
) -> Result<(RasterData, TiffMeta)> {
    if bytes.len() < 8 {
        return Err(Error::Truncated("file shorter than the 8 byte header"));
    }
    let order = match &bytes[..2] {
        b"II" => ByteOrder::Little,
        b"MM" => ByteOrder::Big,
        _ => return Err(Error::Malformed("bad byte order mark".into())),
    };
    let r = Reader { bytes, order };
    let magic = r.u16_at(2)?;
    if magic != 42 {
        return Err(Error::Unsupported {
            field: "magic number",
            value: u64::from(magic),
        });
    }
    let ifd_offset = r.u32_at(4)? as usize;
    let entry_count = r.u16_at(ifd_offset)? as usize;
    let mut entries = Vec::with_capacity(entry_count.min(256));
    for i in 0..entry_count {
        let base = ifd_offset
            .checked_add(2 + i * 12)
            .ok_or(Error::Truncated("IFD offset overflow"))?;
        let raw = r.slice(base, 12)?;
        let tag = r.u16_at(base)?;
        let dtype = r.u16_at(base + 2)?;
        let count = r.u32_at(base + 4)?;
        let value_or_offset = r.u32_at(base + 8)?;
        let mut raw_value = [0u8; 4];
        raw_value.copy_from_slice(&raw[8..12]);
        entries.push(IfdEntry {
            tag,
            dtype,
            count,
            value_or_offset,
            raw_value,
        });
    }

    let width = find(&entries, TAG_IMAGE_WIDTH)
        .ok_or(Error::Malformed("missing ImageWidth tag".into()))
        .and_then(|e| entry_uint(&r, e))? as usize;
    let height = find(&entries, TAG_IMAGE_LENGTH)
        .ok_or(Error::Malformed("missing ImageLength tag".into()))
        .and_then(|e| entry_uint(&r, e))? as usize;
    if width == 0 || height == 0 {
        return Err(Error::Malformed("zero image dimension".into()));
    }

    let samples = match find(&entries, TAG_SAMPLES_PER_PIXEL) {
        Some(e) => entry_uint(&r, e)? as usize,
        None => 1,
    };
    if samples != 1 && samples != 3 {
        return Err(Error::Unsupported {
            field: "SamplesPerPixel",
            value: samples as u64,
        });
    }

    let bits = match find(&entries, TAG_BITS_PER_SAMPLE) {
        Some(e) => {
            let values = entry_uints(&r, e)?;
            if values.is_empty() {
                return Err(Error::Malformed("empty BitsPerSample tag".into()));
            }
            if values.iter().any(|&b| b != values[0]) {
                return Err(Error::Malformed(
                    "BitsPerSample differs across samples".into(),
                ));
            }
            values[0]
        }
        None => 1,
    };
    let container_depth = match bits {
        8 => BitDepth::B8,
        16 => BitDepth::B16,
        other => {
            return Err(Error::Unsupported {
                field: "BitsPerSample",
                value: u64::from(other),
            })
        }
    };

    let compression = match find(&entries, TAG_COMPRESSION) {
        Some(e) => entry_uint(&r, e)? as u16,
        None => COMPRESSION_NONE,
    };
    if !matches!(
        compression,
        COMPRESSION_NONE | COMPRESSION_DEFLATE | COMPRESSION_DEFLATE_OLD
    ) {
        return Err(Error::Unsupported {
            field: "Compression",
            value: u64::from(compression),
        });
    }

    let photometric = find(&entries, TAG_PHOTOMETRIC)
        .ok_or(Error::Malformed("missing PhotometricInterpretation tag".into()))
        .and_then(|e| entry_uint(&r, e))? as u16;
    match (photometric, samples) {
        (0 | 1, 1) | (2, 3) => {}
        _ => {
            return Err(Error::Unsupported {
                field: "PhotometricInterpretation",
                value: u64::from(photometric),
            })
        }
    }

    if let Some(e) = find(&entries, TAG_PLANAR_CONFIG) {
        let planar = entry_uint(&r, e)?;
        if planar != 1 {
            return Err(Error::Unsupported {
                field: "PlanarConfiguration",
                value: u64::from(planar),
            });
        }
    }
    if let Some(e) = find(&entries, TAG_ORIENTATION) {
        let orientation = entry_uint(&r, e)?;
        if orientation != 1 {
            return Err(Error::Unsupported {
                field: "Orientation",
                value: u64::from(orientation),
            });
        }
    }
    if let Some(e) = find(&entries, TAG_SAMPLE_FORMAT) {
        // All samples must be unsigned integer (1).
        for value in entry_uints(&r, e)? {
            if value != 1 {
                return Err(Error::Unsupported {
                    field: "SampleFormat",
                    value: u64::from(value),
                });
            }
        }
    }
    let predictor = match find(&entries, TAG_PREDICTOR) {
        Some(e) => entry_uint(&r, e)? as u16,
        None => 1,
    };
    if predictor != 1 && predictor != 2 {
        return Err(Error::Unsupported {
            field: "Predictor",
            value: u64::from(predictor),
        });
    }

    let total_samples = height
        .checked_mul(width)
        .and_then(|p| p.checked_mul(samples))
        .ok_or(Error::Truncated("image size overflow"))?;
    if total_samples > MAX_TOTAL_SAMPLES {
        return Err(Error::Malformed(format!(
            "image of {total_samples} samples exceeds the {MAX_TOTAL_SAMPLES} sample cap"
        )));
    }

    let bytes_per_sample = (bits / 8) as usize;
    // Bomb guard: zlib expands at most ~1032x, so a file cannot honestly
    // describe a pixel area much larger than that. Rejecting here keeps
    // tiny hostile headers from forcing huge allocations.
    let plausible = bytes
        .len()
        .saturating_mul(1100)
        .saturating_add(4096);
    if total_samples * bytes_per_sample > plausible {
        return Err(Error::Malformed(format!(
            "declared pixel area of {} bytes is implausible for a {} byte file",
            total_samples * bytes_per_sample,
            bytes.len()
        )));
    }
    let mut raw = vec![0u16; total_samples];

    let has_tiles = find(&entries, TAG_TILE_OFFSETS).is_some();
    if has_tiles {
        let tile_width = find(&entries, TAG_TILE_WIDTH)
            .ok_or(Error::Malformed("tiled file missing TileWidth".into()))
            .and_then(|e| entry_uint(&r, e))? as usize;
        let tile_length = find(&entries, TAG_TILE_LENGTH)
            .ok_or(Error::Malformed("tiled file missing TileLength".into()))
            .and_then(|e| entry_uint(&r, e))? as usize;
        if tile_width == 0 || tile_length == 0 || !tile_width.is_multiple_of(16) || !tile_length.is_multiple_of(16) {
            return Err(Error::Malformed(format!(
                "tile size {tile_width}x{tile_length} is not a positive multiple of 16"
            )));
        }
        let offsets = entry_uints(&r, find(&entries, TAG_TILE_OFFSETS).unwrap())?;
        let counts = entry_uints(
            &r,
            find(&entries, TAG_TILE_BYTE_COUNTS)
                .ok_or(Error::Malformed("tiled file missing TileByteCounts".into()))?,
        )?;
        let tiles_across = width.div_ceil(tile_width);
        let tiles_down = height.div_ceil(tile_length);
        let tile_count = tiles_across
            .checked_mul(tiles_down)
            .ok_or(Error::Truncated("tile count overflow"))?;
        if offsets.len() != tile_count || counts.len() != tile_count {
            return Err(Error::Malformed(format!(
                "expected {tile_count} tiles but offsets list {} and byte counts list {}",
                offsets.len(),
                counts.len()
            )));
        }
        let row_samples = tile_width * samples;
        let tile_bytes = tile_length * row_samples * bytes_per_sample;
        for (index, (&offset, &count)) in offsets.iter().zip(&counts).enumerate() {
            let compressed = r.slice(offset as usize, count as usize)?;
            let mut data = decompress(compressed, compression, tile_bytes)?;
            if predictor == 2 {
                undo_predictor(&mut data, row_samples, samples, bytes_per_sample, order)?;
            }
            let tile_row = index / tiles_across;
            let tile_col = index % tiles_across;
            let row0 = tile_row * tile_length;
            let col0 = tile_col * tile_width;
            for tr in 0..tile_length {
                let row = row0 + tr;
                if row >= height {
                    break;
                }
                for tc in 0..tile_width {
                    let col = col0 + tc;
                    if col >= width {
                        continue;
                    }
                    for s in 0..samples {
                        let src = ((tr * tile_width + tc) * samples + s) * bytes_per_sample;
                        let dst = (row * width + col) * samples + s;
                        raw[dst] = read_sample(&data, src, bytes_per_sample, order);
                    }
                }
            }
        }
    } else {
        let offsets_entry = find(&entries, TAG_STRIP_OFFSETS)
            .ok_or(Error::Malformed("missing StripOffsets tag".into()))?;
        let offsets = entry_uints(&r, offsets_entry)?;
        let counts = entry_uints(
            &r,
            find(&entries, TAG_STRIP_BYTE_COUNTS)
                .ok_or(Error::Malformed("missing StripByteCounts tag".into()))?,
        )?;
        if offsets.len() != counts.len() {
            return Err(Error::Malformed(format!(
                "StripOffsets lists {} strips but StripByteCounts lists {}",
                offsets.len(),
                counts.len()
            )));
        }
        let rows_per_strip = match find(&entries, TAG_ROWS_PER_STRIP) {
            Some(e) => entry_uint(&r, e)? as usize,
            None => height,
        };
        if rows_per_strip == 0 {
            return Err(Error::Malformed("RowsPerStrip is zero".into()));
        }
        let expected_strips = height.div_ceil(rows_per_strip);
        if offsets.len() != expected_strips {
            return Err(Error::Malformed(format!(
                "expected {expected_strips} strips for {height} rows at {rows_per_strip} rows per strip, found {}",
                offsets.len()
            )));
        }
        let row_samples = width * samples;
        let row_bytes = row_samples * bytes_per_sample;
        for (index, (&offset, &count)) in offsets.iter().zip(&counts).enumerate() {
            let strip_rows = rows_per_strip.min(height - index * rows_per_strip);
            let strip_bytes = strip_rows * row_bytes;
            let compressed = r.slice(offset as usize, count as usize)?;
            let mut data = decompress(compressed, compression, strip_bytes)?;
            if predictor == 2 {
                undo_predictor(&mut data, row_samples, samples, bytes_per_sample, order)?;
            }
            let row0 = index * rows_per_strip;
            for sr in 0..strip_rows {
                for c in 0..row_samples {
                    let src = (sr * row_samples + c) * bytes_per_sample;
                    let dst = (row0 + sr) * row_samples + c;
                    raw[dst] = read_sample(&data, src, bytes_per_sample, order);
                }
            }
        }
    }

    // Photometric 0 is white-is-zero: invert against the container max.
    if photometric == 0 {
        let max = container_depth.max_code();
        for value in &mut raw {
            *value = max - *value;
        }
    }

    let norm_depth = depth.unwrap_or(container_depth);
    let data = if samples == 1 {
        RasterData::Gray(normalize(&raw, height, width, norm_depth)?)
    } else {
        let mut planes = [
            Vec::with_capacity(height * width),
            Vec::with_capacity(height * width),
            Vec::with_capacity(height * width),
        ];
        for chunk in raw.chunks_exact(3) {
            planes[0].push(chunk[0]);
            planes[1].push(chunk[1]);
            planes[2].push(chunk[2]);
        }
        let [pr, pg, pb] = planes;
        RasterData::Rgb([
            normalize(&pr, height, width, norm_depth)?,
            normalize(&pg, height, width, norm_depth)?,
            normalize(&pb, height, width, norm_depth)?,
        ])
    };

    let geo_metadata = serialize_geo_block(&r, &entries)?;
    Ok((
        data,
        TiffMeta {
            bit_depth: container_depth,
            byte_order: order,
            geo_metadata,
        },
    ))
}

fn read_sample(data: &[u8], src: usize, bytes_per_sample: usize, order: ByteOrder) -> u16 {
    if bytes_per_sample == 1 {
        u16::from(data[src])
    } else {
        match order {
            ByteOrder::Little => u16::from_le_bytes([data[src], data[src + 1]]),
            ByteOrder::Big => u16::from_be_bytes([data[src], data[src + 1]]),
        }
    }
}

/// Decompresses one strip or tile to exactly `expected` bytes.
fn decompress(compressed: &[u8], compression: u16, expected: usize) -> Result<Vec<u8>> {
    match compression {
        COMPRESSION_NONE => {
            if compressed.len() < expected {
                return Err(Error::Truncated("strip shorter than its pixel area"));
            }
            Ok(compressed[..expected].to_vec())
        }
        COMPRESSION_DEFLATE | COMPRESSION_DEFLATE_OLD => {
            let mut out = Vec::with_capacity(expected.min(MAX_TAG_PAYLOAD));
            let mut decoder = ZlibDecoder::new(compressed).take(expected as u64 + 1);
            decoder
                .read_to_end(&mut out)
                .map_err(|e| Error::Malformed(format!("deflate stream: {e}")))?;
            if out.len() != expected {
                return Err(Error::Malformed(format!(
                    "deflate stream expanded to {} bytes where {expected} were expected",
                    out.len()
                )));
            }
            Ok(out)
        }
        _ => unreachable!("compression validated before decompression"),
    }
}

/// Reverses horizontal differencing in place. Rows are `row_samples`
/// samples wide; differencing runs per channel with wrapping arithmetic.
fn undo_predictor(
    data: &mut [u8],
    row_samples: usize,
    samples: usize,
    bytes_per_sample: usize,
    order: ByteOrder,
) -> Result<()> {
    let row_bytes = row_samples * bytes_per_sample;
    if row_bytes == 0 || !data.len().is_multiple_of(row_bytes) {
        return Err(Error::Malformed(
            "predictor data is not a whole number of rows".into(),
        ));
    }
    for row in data.chunks_exact_mut(row_bytes) {
        if bytes_per_sample == 1 {
            for i in samples..row_samples {
                row[i] = row[i].wrapping_add(row[i - samples]);
            }
        } else {
            for i in samples..row_samples {
                let prev = read_sample(row, (i - samples) * 2, 2, order);
                let cur = read_sample(row, i * 2, 2, order);
                let sum = cur.wrapping_add(prev);
                let bytes = match order {
                    ByteOrder::Little => sum.to_le_bytes(),
                    ByteOrder::Big => sum.to_be_bytes(),
                };
                row[i * 2] = bytes[0];
                row[i * 2 + 1] = bytes[1];
            }
        }
    }
    Ok(())
}

/// Serializes geo tags into the opaque block:
/// `[u16 tag][u16 dtype][u32 count][u32 payload_len][payload bytes]`
/// repeated in ascending tag order, all integers little-endian, payload
/// bytes verbatim from the file.
fn serialize_geo_block(r: &Reader, entries: &[IfdEntry]) -> Result<Vec<u8>> {
    let mut geo: Vec<&IfdEntry> = entries
        .iter()
        .filter(|e| GEO_TAGS.contains(&e.tag))
        .collect();
    geo.sort_by_key(|e| e.tag);
    let mut block = Vec::new();
    for e in geo {
        let payload = entry_payload(r, e)?;
        block.extend_from_slice(&e.tag.to_le_bytes());
        block.extend_from_slice(&e.dtype.to_le_bytes());
        block.extend_from_slice(&e.count.to_le_bytes());
        block.extend_from_slice(&(payload.len() as u32).to_le_bytes());
        block.extend_from_slice(&payload);
    }
    Ok(block)
}

/// One geo record: (tag, dtype, count, payload).
type GeoRecord = (u16, u16, u32, Vec<u8>);

/// Parses an opaque geo block back into its records.
fn parse_geo_block(block: &[u8]) -> Result<Vec<GeoRecord>> {
    let mut out = Vec::new();
    let mut pos = 0usize;
    while pos < block.len() {
        if block.len() - pos < 12 {
            return Err(Error::Malformed("geo block record header truncated".into()));
        }
        let tag = u16::from_le_bytes([block[pos], block[pos + 1]]);
        let dtype = u16::from_le_bytes([block[pos + 2], block[pos + 3]]);
        let count = u32::from_le_bytes([block[pos + 4], block[pos + 5], block[pos + 6], block[pos + 7]]);
        let len = u32::from_le_bytes([block[pos + 8], block[pos + 9], block[pos + 10], block[pos + 11]])
            as usize;
        pos += 12;
        if block.len() - pos < len {
            return Err(Error::Malformed("geo block payload truncated".into()));
        }
        out.push((tag, dtype, count, block[pos..pos + len].to_vec()));
        pos += len;
    }
    Ok(out)
}

/// One tag staged for the writer IFD.
struct WriteTag {
    tag: u16,
    dtype: u16,
    count: u32,
    /// Inline value when the payload fits in 4 bytes, else filled with
    /// the external payload offset during layout.
    inline: [u8; 4],
    external: Option<Vec<u8>>,
}

impl WriteTag {
    fn short(tag: u16, value: u16, order: ByteOrder) -> Self {
        let mut inline = [0u8; 4];
        let b = match order {
            ByteOrder::Little => value.to_le_bytes(),
            ByteOrder::Big => value.to_be_bytes(),
        };
        inline[..2].copy_from_slice(&b);
        WriteTag {
            tag,
            dtype: 3,
            count: 1,
            inline,
            external: None,
        }
    }

    fn long(tag: u16, value: u32, order: ByteOrder) -> Self {
        let inline = match order {
            ByteOrder::Little => value.to_le_bytes(),
            ByteOrder::Big => value.to_be_bytes(),
        };
        WriteTag {
            tag,
            dtype: 4,
            count: 1,
            inline,
            external: None,
        }
    }

    fn shorts(tag: u16, values: &[u16], order: ByteOrder) -> Self {
        let mut payload = Vec::with_capacity(values.len() * 2);
        for &v in values {
            payload.extend_from_slice(&match order {
                ByteOrder::Little => v.to_le_bytes(),
                ByteOrder::Big => v.to_be_bytes(),
            });
        }
        if payload.len() <= 4 {
            let mut inline = [0u8; 4];
            inline[..payload.len()].copy_from_slice(&payload);
            WriteTag {
                tag,
                dtype: 3,
                count: values.len() as u32,
                inline,
                external: None,
            }
        } else {
            WriteTag {
                tag,
                dtype: 3,
                count: values.len() as u32,
                inline: [0; 4],
                external: Some(payload),
            }
        }
    }

    fn opaque(tag: u16, dtype: u16, count: u32, payload: Vec<u8>) -> Self {
        if payload.len() <= 4 {
            let mut inline = [0u8; 4];
            inline[..payload.len()].copy_from_slice(&payload);
            WriteTag {
                tag,
                dtype,
                count,
                inline,
                external: None,
            }
        } else {
            WriteTag {
                tag,
                dtype,
                count,
                inline: [0; 4],
                external: Some(payload),
            }
        }
    }
}

/// Encodes pixels as a baseline TIFF: single uncompressed strip, chunky
/// layout, orientation 1, the requested byte order, and the opaque geo
/// block re-emitted as tags. Layout is `[header][pixel data][IFD]
/// [external payloads]` with everything 2-byte aligned.
pub fn encode_tiff(
    data: &RasterData,
    depth: BitDepth,
    order: ByteOrder,
    geo_metadata: &[u8],
) -> Result<Vec<u8>> {
    let (height, width) = data.dimensions();
    let samples: usize = data.band_count().into();
    let bits = match depth {
        BitDepth::B8 => 8u16,
        // A 12-bit override still ships in a 16-bit container.
        BitDepth::B12 | BitDepth::B16 => 16u16,
    };
    let bytes_per_sample = usize::from(bits / 8);

    // Interleave and denormalize against the requested depth.
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
    let mut pixels = Vec::with_capacity(codes.len() * bytes_per_sample);
    for &code in &codes {
        if bytes_per_sample == 1 {
            pixels.push(code as u8);
        } else {
            pixels.extend_from_slice(&match order {
                ByteOrder::Little => code.to_le_bytes(),
                ByteOrder::Big => code.to_be_bytes(),
            });
        }
    }
    let photometric: u16 = if samples == 1 { 1 } else { 2 };
    let strip_offset: u32 = 8;
    let strip_bytes = pixels.len() as u32;

    let mut tags = vec![
        WriteTag::long(TAG_IMAGE_WIDTH, width as u32, order),
        WriteTag::long(TAG_IMAGE_LENGTH, height as u32, order),
        WriteTag::shorts(TAG_BITS_PER_SAMPLE, &vec![bits; samples], order),
        WriteTag::short(TAG_COMPRESSION, COMPRESSION_NONE, order),
        WriteTag::short(TAG_PHOTOMETRIC, photometric, order),
        WriteTag::long(TAG_STRIP_OFFSETS, strip_offset, order),
        WriteTag::short(TAG_ORIENTATION, 1, order),
        WriteTag::short(TAG_SAMPLES_PER_PIXEL, samples as u16, order),
        WriteTag::long(TAG_ROWS_PER_STRIP, height as u32, order),
        WriteTag::long(TAG_STRIP_BYTE_COUNTS, strip_bytes, order),
        WriteTag::short(TAG_PLANAR_CONFIG, 1, order),
        WriteTag::shorts(TAG_SAMPLE_FORMAT, &vec![1u16; samples], order),
    ];
    for (tag, dtype, count, payload) in parse_geo_block(geo_metadata)? {
        tags.push(WriteTag::opaque(tag, dtype, count, payload));
    }
    tags.sort_by_key(|t| t.tag);

    // Layout: header (8), pixel data (even-padded), IFD, external
    // payloads (each even-aligned).
    let mut out = Vec::new();
    out.extend_from_slice(match order {
        ByteOrder::Little => b"II",
        ByteOrder::Big => b"MM",
    });
    let put16 = |out: &mut Vec<u8>, v: u16| {
        out.extend_from_slice(&match order {
            ByteOrder::Little => v.to_le_bytes(),
            ByteOrder::Big => v.to_be_bytes(),
        })
    };
    let put32 = |out: &mut Vec<u8>, v: u32| {
        out.extend_from_slice(&match order {
            ByteOrder::Little => v.to_le_bytes(),
            ByteOrder::Big => v.to_be_bytes(),
        })
    };
    put16(&mut out, 42);
    let mut data_end = 8 + pixels.len();
    if data_end % 2 != 0 {
        data_end += 1;
    }
    let ifd_offset = data_end as u32;
    put32(&mut out, ifd_offset);
    out.extend_from_slice(&pixels);
    while out.len() < data_end {
        out.push(0);
    }

    // External payloads start after the IFD: count word, entries, next
    // pointer.
    let mut external_offset = data_end + 2 + tags.len() * 12 + 4;
    let mut external_offsets = Vec::with_capacity(tags.len());
    for tag in &tags {
        if let Some(payload) = &tag.external {
            if external_offset % 2 != 0 {
                external_offset += 1;
            }
            external_offsets.push(Some(external_offset as u32));
            external_offset += payload.len();
        } else {
            external_offsets.push(None);
        }
    }

    put16(&mut out, tags.len() as u16);
    for (tag, ext_off) in tags.iter().zip(&external_offsets) {
        put16(&mut out, tag.tag);
        put16(&mut out, tag.dtype);
        put32(&mut out, tag.count);
        match ext_off {
            Some(offset) => put32(&mut out, *offset),
            None => out.extend_from_slice(&tag.inline),
        }
    }
    put32(&mut out, 0);
    for tag in &tags {
        if let Some(payload) = &tag.external {
            if out.len() % 2 != 0 {
                out.push(0);
            }
            out.extend_from_slice(payload);
        }
    }
    Ok(out)
}
