//! Test-side TIFF builder, written independently of the production
//! encoder so decode tests have a second route into the format. It can
//! produce layouts the production writer never emits (IFD before pixel
//! data, multiple strips, tiles, deflate, predictor 2) as well as
//! deliberately invalid files for rejection tests.

use std::io::Write as _;

use flate2::write::ZlibEncoder;
use flate2::Compression;

// Shared across test targets; not every target uses every item.
#[allow(dead_code)]
pub const LZW: u16 = 5;

/// Declarative description of a TIFF file to synthesize.
pub struct TiffBuilder {
    pub big_endian: bool,
    pub width: u32,
    pub height: u32,
    pub bits: u16,
    pub samples: u16,
    pub photometric: u16,
    /// 1 none, 8 deflate; anything else is written verbatim so tests can
    /// produce files the decoder must reject by name.
    pub compression: u16,
    pub predictor: u16,
    /// None writes a single strip covering the whole image.
    pub rows_per_strip: Option<u32>,
    /// Tile geometry; set together with `rows_per_strip: None`.
    pub tile: Option<(u32, u32)>,
    pub orientation: Option<u16>,
    pub planar: Option<u16>,
    pub sample_format: Option<u16>,
    /// Extra raw entries: (tag, dtype, count, payload in file byte order).
    pub extra_tags: Vec<(u16, u16, u32, Vec<u8>)>,
}

impl TiffBuilder {
    pub fn gray(width: u32, height: u32, bits: u16) -> Self {
        TiffBuilder {
            big_endian: false,
            width,
            height,
            bits,
            samples: 1,
            photometric: 1,
            compression: 1,
            predictor: 1,
            rows_per_strip: None,
            tile: None,
            orientation: None,
            planar: None,
            sample_format: None,
            extra_tags: Vec::new(),
        }
    }

    pub fn rgb(width: u32, height: u32, bits: u16) -> Self {
        TiffBuilder {
            samples: 3,
            photometric: 2,
            ..TiffBuilder::gray(width, height, bits)
        }
    }

    fn u16_bytes(&self, v: u16) -> [u8; 2] {
        if self.big_endian {
            v.to_be_bytes()
        } else {
            v.to_le_bytes()
        }
    }

    fn u32_bytes(&self, v: u32) -> [u8; 4] {
        if self.big_endian {
            v.to_be_bytes()
        } else {
            v.to_le_bytes()
        }
    }

    fn shorts_payload(&self, values: &[u16]) -> Vec<u8> {
        values.iter().flat_map(|&v| self.u16_bytes(v)).collect()
    }

    fn longs_payload(&self, values: &[u32]) -> Vec<u8> {
        values.iter().flat_map(|&v| self.u32_bytes(v)).collect()
    }

    /// Serializes one pixel chunk: predictor, byte order, compression.
    fn chunk_bytes(&self, rows: &[Vec<u16>]) -> Vec<u8> {
        let spp = self.samples as usize;
        let mut raw = Vec::new();
        for row in rows {
            let mut row = row.clone();
            if self.predictor == 2 {
                for i in (spp..row.len()).rev() {
                    row[i] = row[i].wrapping_sub(row[i - spp]);
                }
            }
            for &v in &row {
                if self.bits == 8 {
                    raw.push(v as u8);
                } else {
                    raw.extend_from_slice(&self.u16_bytes(v));
                }
            }
        }
        if self.compression == 8 {
            let mut enc = ZlibEncoder::new(Vec::new(), Compression::default());
            enc.write_all(&raw).unwrap();
            enc.finish().unwrap()
        } else {
            raw
        }
    }

    /// Builds the file around row-major `data` of
    /// `width * height * samples` sample codes.
    pub fn build(&self, data: &[u16]) -> Vec<u8> {
        let w = self.width as usize;
        let h = self.height as usize;
        let spp = self.samples as usize;
        assert_eq!(data.len(), w * h * spp, "sample count mismatch");

        // Split into chunks: padded tiles, or strips with a short tail.
        let mut chunks: Vec<Vec<u8>> = Vec::new();
        if let Some((tw, tl)) = self.tile {
            let (tw, tl) = (tw as usize, tl as usize);
            let across = w.div_ceil(tw);
            let down = h.div_ceil(tl);
            for t in 0..across * down {
                let (t_row, t_col) = (t / across, t % across);
                let rows: Vec<Vec<u16>> = (0..tl)
                    .map(|tr| {
                        (0..tw * spp)
                            .map(|i| {
                                let (r, c, s) = (t_row * tl + tr, t_col * tw + i / spp, i % spp);
                                if r < h && c < w {
                                    data[(r * w + c) * spp + s]
                                } else {
                                    0
                                }
                            })
                            .collect()
                    })
                    .collect();
                chunks.push(self.chunk_bytes(&rows));
            }
        } else {
            let rps = self.rows_per_strip.unwrap_or(self.height) as usize;
            let mut r = 0;
            while r < h {
                let rows: Vec<Vec<u16>> = (r..(r + rps).min(h))
                    .map(|row| data[row * w * spp..(row + 1) * w * spp].to_vec())
                    .collect();
                chunks.push(self.chunk_bytes(&rows));
                r += rps;
            }
        }

        // Tag list; offsets-tag payloads are patched once laid out.
        let chunk_count = chunks.len();
        let mut tags: Vec<(u16, u16, u32, Vec<u8>)> = vec![
            (256, 4, 1, self.longs_payload(&[self.width])),
            (257, 4, 1, self.longs_payload(&[self.height])),
            (258, 3, self.samples as u32, self.shorts_payload(&vec![self.bits; spp])),
            (259, 3, 1, self.shorts_payload(&[self.compression])),
            (262, 3, 1, self.shorts_payload(&[self.photometric])),
            (277, 3, 1, self.shorts_payload(&[self.samples])),
        ];
        let offsets_tag;
        if let Some((tw, tl)) = self.tile {
            offsets_tag = 324;
            tags.push((322, 4, 1, self.longs_payload(&[tw])));
            tags.push((323, 4, 1, self.longs_payload(&[tl])));
            tags.push((324, 4, chunk_count as u32, vec![0; 4 * chunk_count]));
            tags.push((
                325,
                4,
                chunk_count as u32,
                self.longs_payload(&chunks.iter().map(|c| c.len() as u32).collect::<Vec<_>>()),
            ));
        } else {
            offsets_tag = 273;
            let rps = self.rows_per_strip.unwrap_or(self.height);
            tags.push((273, 4, chunk_count as u32, vec![0; 4 * chunk_count]));
            tags.push((278, 4, 1, self.longs_payload(&[rps])));
            tags.push((
                279,
                4,
                chunk_count as u32,
                self.longs_payload(&chunks.iter().map(|c| c.len() as u32).collect::<Vec<_>>()),
            ));
        }
        if self.predictor != 1 {
            tags.push((317, 3, 1, self.shorts_payload(&[self.predictor])));
        }
        if let Some(v) = self.orientation {
            tags.push((274, 3, 1, self.shorts_payload(&[v])));
        }
        if let Some(v) = self.planar {
            tags.push((284, 3, 1, self.shorts_payload(&[v])));
        }
        if let Some(v) = self.sample_format {
            tags.push((339, 3, self.samples as u32, self.shorts_payload(&vec![v; spp])));
        }
        tags.extend(self.extra_tags.iter().cloned());
        tags.sort_by_key(|t| t.0);

        // Layout: header, IFD, external payloads, pixel chunks. The IFD
        // comes before the data, unlike the production writer.
        let ifd_offset = 8usize;
        let ifd_size = 2 + tags.len() * 12 + 4;
        let mut cursor = ifd_offset + ifd_size;
        let mut ext_offsets: Vec<Option<u32>> = Vec::new();
        for (_, _, _, payload) in &tags {
            if payload.len() > 4 {
                cursor += cursor % 2;
                ext_offsets.push(Some(cursor as u32));
                cursor += payload.len();
            } else {
                ext_offsets.push(None);
            }
        }
        let mut chunk_offsets: Vec<u32> = Vec::new();
        for c in &chunks {
            cursor += cursor % 2;
            chunk_offsets.push(cursor as u32);
            cursor += c.len();
        }

        // Patch the offsets payload now that chunk positions are known.
        for (tag, _, count, payload) in &mut tags {
            if *tag == offsets_tag {
                assert_eq!(*count as usize, chunk_offsets.len());
                *payload = self.longs_payload(&chunk_offsets);
            }
        }

        let mut out = Vec::with_capacity(cursor);
        out.extend_from_slice(if self.big_endian { b"MM" } else { b"II" });
        out.extend_from_slice(&self.u16_bytes(42));
        out.extend_from_slice(&self.u32_bytes(ifd_offset as u32));
        out.extend_from_slice(&self.u16_bytes(tags.len() as u16));
        for ((tag, dtype, count, payload), ext) in tags.iter().zip(&ext_offsets) {
            out.extend_from_slice(&self.u16_bytes(*tag));
            out.extend_from_slice(&self.u16_bytes(*dtype));
            out.extend_from_slice(&self.u32_bytes(*count));
            match ext {
                Some(offset) => out.extend_from_slice(&self.u32_bytes(*offset)),
                None => {
                    let mut inline = [0u8; 4];
                    inline[..payload.len()].copy_from_slice(payload);
                    out.extend_from_slice(&inline);
                }
            }
        }
        out.extend_from_slice(&self.u32_bytes(0));
        for (_, _, _, payload) in &tags {
            if payload.len() > 4 {
                if out.len() % 2 != 0 {
                    out.push(0);
                }
                out.extend_from_slice(payload);
            }
        }
        for c in &chunks {
            if out.len() % 2 != 0 {
                out.push(0);
            }
            out.extend_from_slice(c);
        }
        assert_eq!(out.len(), cursor);
        out
    }
}

/// Row-major ramp of sample codes wrapping at `max + 1`.
pub fn ramp_codes(width: u32, height: u32, samples: u16, max: u16) -> Vec<u16> {
    let n = width as usize * height as usize * samples as usize;
    (0..n).map(|i| (i % (max as usize + 1)) as u16).collect()
}
