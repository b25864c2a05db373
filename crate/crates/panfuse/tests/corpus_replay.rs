//! Replays every checked-in fuzz corpus seed through the same entry
//! points the fuzz targets drive, so the corpus stays honest on a plain
//! stable toolchain even when no fuzzer runs. Each replay asserts the
//! target's own invariants; a panic anywhere is a failure.
//!
//! `regenerate_fuzz_corpus` (ignored) rebuilds the seed files in place.

mod common;

use std::fs;
use std::path::{Path, PathBuf};

use panfuse::io::{decode_png, decode_tiff, encode_png, encode_tiff, ByteOrder, RasterData};
use panfuse::raster::{denormalize, BitDepth, ImageGrid};
use panfuse::synth::SceneParams;

use common::{ramp_codes, TiffBuilder};

fn corpus_dir(target: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target)
}

/// All seeds of one target, sorted by file name for stable iteration.
fn seeds(target: &str) -> Vec<(PathBuf, Vec<u8>)> {
    let dir = corpus_dir(target);
    let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("corpus dir {} unreadable: {e}", dir.display()))
        .map(|entry| entry.unwrap().path())
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    assert!(!paths.is_empty(), "no seeds in {}", dir.display());
    paths
        .into_iter()
        .map(|p| {
            let bytes = fs::read(&p).unwrap();
            (p, bytes)
        })
        .collect()
}

#[test]
fn tiff_decode_seeds_replay() {
    let mut accepted = 0;
    for (path, bytes) in seeds("tiff_decode") {
        if decode_tiff(&bytes).is_ok() {
            accepted += 1;
        } else {
            assert!(
                path.file_name().unwrap().to_str().unwrap().contains("bad"),
                "valid-looking seed {} no longer decodes",
                path.display()
            );
        }
    }
    assert!(accepted >= 6, "only {accepted} tiff seeds decode");
}

#[test]
fn png_decode_seeds_replay() {
    let mut accepted = 0;
    for (path, bytes) in seeds("png_decode") {
        if decode_png(&bytes).is_ok() {
            accepted += 1;
        } else {
            assert!(
                path.file_name().unwrap().to_str().unwrap().contains("bad"),
                "valid-looking seed {} no longer decodes",
                path.display()
            );
        }
    }
    assert!(accepted >= 4, "only {accepted} png seeds decode");
}

#[test]
fn scene_params_seeds_replay() {
    let mut accepted = 0;
    for (_, bytes) in seeds("scene_params") {
        let Ok(text) = std::str::from_utf8(&bytes) else {
            continue;
        };
        if let Ok(params) = SceneParams::parse(text) {
            let reparsed = SceneParams::parse(&params.to_kv_string()).unwrap();
            assert_eq!(params, reparsed);
            accepted += 1;
        }
    }
    assert!(accepted >= 2, "only {accepted} scene param seeds parse");
}

#[test]
fn tiff_roundtrip_seeds_replay() {
    let mut accepted = 0;
    for (_, bytes) in seeds("tiff_roundtrip") {
        let Ok((decoded, meta)) = decode_tiff(&bytes) else {
            continue;
        };
        accepted += 1;
        let reencoded =
            encode_tiff(&decoded, meta.bit_depth, meta.byte_order, &meta.geo_metadata).unwrap();
        let (redecoded, remeta) = decode_tiff(&reencoded).unwrap();
        assert_eq!(remeta.bit_depth, meta.bit_depth);
        assert_eq!(remeta.byte_order, meta.byte_order);
        assert_eq!(remeta.geo_metadata, meta.geo_metadata);
        match (&decoded, &redecoded) {
            (RasterData::Gray(a), RasterData::Gray(b)) => {
                assert_eq!(denormalize(a, meta.bit_depth), denormalize(b, meta.bit_depth));
            }
            (RasterData::Rgb(a), RasterData::Rgb(b)) => {
                for (x, y) in a.iter().zip(b) {
                    assert_eq!(denormalize(x, meta.bit_depth), denormalize(y, meta.bit_depth));
                }
            }
            _ => panic!("band structure changed"),
        }
    }
    assert!(accepted >= 3, "only {accepted} roundtrip seeds decode");
}

/// Rewrites every corpus seed. Run explicitly after changing the codecs:
/// `cargo test -p panfuse --test corpus_replay -- --ignored`
#[test]
#[ignore]
fn regenerate_fuzz_corpus() {
    let write = |target: &str, name: &str, bytes: &[u8]| {
        let dir = corpus_dir(target);
        fs::create_dir_all(&dir).unwrap();
        fs::write(dir.join(name), bytes).unwrap();
    };
    let grid = |h: usize, w: usize, scale: f64| {
        ImageGrid::from_fn(h, w, |r, c| ((r * w + c) as f64 * scale) % 1.0).unwrap()
    };
    let geo_block = {
        let mut block = Vec::new();
        block.extend_from_slice(&33550u16.to_le_bytes());
        block.extend_from_slice(&12u16.to_le_bytes());
        block.extend_from_slice(&3u32.to_le_bytes());
        block.extend_from_slice(&24u32.to_le_bytes());
        for v in [30.0f64, 30.0, 0.0] {
            block.extend_from_slice(&v.to_le_bytes());
        }
        block
    };

    // tiff_decode: production encoder outputs, builder layouts, and one
    // deliberately broken prefix.
    let gray8_le = encode_tiff(
        &RasterData::Gray(grid(6, 5, 0.043)),
        BitDepth::B8,
        ByteOrder::Little,
        &[],
    )
    .unwrap();
    write("tiff_decode", "gray8-le.tif", &gray8_le);
    let gray16_be_geo = encode_tiff(
        &RasterData::Gray(grid(6, 5, 0.029)),
        BitDepth::B16,
        ByteOrder::Big,
        &geo_block,
    )
    .unwrap();
    write("tiff_decode", "gray16-be-geo.tif", &gray16_be_geo);
    let rgb8_le = encode_tiff(
        &RasterData::Rgb([grid(4, 4, 0.031), grid(4, 4, 0.057), grid(4, 4, 0.011)]),
        BitDepth::B8,
        ByteOrder::Little,
        &[],
    )
    .unwrap();
    write("tiff_decode", "rgb8-le.tif", &rgb8_le);
    let rgb16_be = encode_tiff(
        &RasterData::Rgb([grid(5, 3, 0.017), grid(5, 3, 0.023), grid(5, 3, 0.041)]),
        BitDepth::B16,
        ByteOrder::Big,
        &[],
    )
    .unwrap();
    write("tiff_decode", "rgb16-be.tif", &rgb16_be);

    let mut b = TiffBuilder::gray(9, 4, 16);
    b.compression = 8;
    b.predictor = 2;
    b.rows_per_strip = Some(3);
    let deflate_pred = b.build(&ramp_codes(9, 4, 1, 65535));
    write("tiff_decode", "gray16-deflate-pred-le.tif", &deflate_pred);

    let mut b = TiffBuilder::gray(20, 18, 8);
    b.tile = Some((16, 16));
    write("tiff_decode", "gray8-tiled.tif", &b.build(&ramp_codes(20, 18, 1, 255)));

    let mut b = TiffBuilder::rgb(6, 4, 8);
    b.big_endian = true;
    b.compression = 8;
    write("tiff_decode", "rgb8-deflate-be.tif", &b.build(&ramp_codes(6, 4, 3, 255)));

    let mut b = TiffBuilder::gray(4, 4, 8);
    b.photometric = 0;
    write("tiff_decode", "gray8-inverted.tif", &b.build(&ramp_codes(4, 4, 1, 255)));

    write("tiff_decode", "bad-truncated.tif", &gray8_le[..60]);

    // png_decode seeds.
    write(
        "png_decode",
        "gray8.png",
        &encode_png(&RasterData::Gray(grid(6, 5, 0.043)), BitDepth::B8).unwrap(),
    );
    write(
        "png_decode",
        "gray16.png",
        &encode_png(&RasterData::Gray(grid(6, 5, 0.029)), BitDepth::B16).unwrap(),
    );
    write(
        "png_decode",
        "rgb8.png",
        &encode_png(
            &RasterData::Rgb([grid(4, 4, 0.031), grid(4, 4, 0.057), grid(4, 4, 0.011)]),
            BitDepth::B8,
        )
        .unwrap(),
    );
    let rgb16 = encode_png(
        &RasterData::Rgb([grid(5, 3, 0.017), grid(5, 3, 0.023), grid(5, 3, 0.041)]),
        BitDepth::B16,
    )
    .unwrap();
    write("png_decode", "rgb16.png", &rgb16);
    write("png_decode", "bad-truncated.png", &rgb16[..40]);

    // scene_params seeds: the canonical serialization, a hand-written
    // file with comments, and two invalid inputs worth mutating.
    write(
        "scene_params",
        "default.scene",
        SceneParams::new(64, 48, 7).to_kv_string().as_bytes(),
    );
    write(
        "scene_params",
        "commented.scene",
        b"# synthetic scene recipe\nheight=32\nwidth=32\nseed=99\n\nrho=0.5\nsigma=2.0\nedge_mix=0.25\n",
    );
    write("scene_params", "bad-unknown-key.scene", b"height=8\nwidth=8\nseed=1\ncolor=blue\n");
    write("scene_params", "bad-not-a-number.scene", b"height=8\nwidth=8\nseed=1\nrho=abc\n");

    // tiff_roundtrip: representative decodable files.
    write("tiff_roundtrip", "gray8-le.tif", &gray8_le);
    write("tiff_roundtrip", "gray16-be-geo.tif", &gray16_be_geo);
    write("tiff_roundtrip", "rgb16-be.tif", &rgb16_be);
    write("tiff_roundtrip", "gray16-deflate-pred-le.tif", &deflate_pred);
    let mut b = TiffBuilder::gray(4, 4, 8);
    b.photometric = 0;
    write("tiff_roundtrip", "gray8-inverted.tif", &b.build(&ramp_codes(4, 4, 1, 255)));
}
