//! Differential target: any TIFF the decoder accepts must survive
//! re-encode and re-decode with identical sample codes and an identical
//! geo metadata block.

#![no_main]

use libfuzzer_sys::fuzz_target;
use panfuse::io::{decode_tiff, encode_tiff, RasterData};
use panfuse::raster::denormalize;

fuzz_target!(|data: &[u8]| {
    let Ok((decoded, meta)) = decode_tiff(data) else {
        return;
    };
    let bytes = encode_tiff(&decoded, meta.bit_depth, meta.byte_order, &meta.geo_metadata)
        .expect("accepted image must re-encode");
    let (redecoded, remeta) = decode_tiff(&bytes).expect("re-encoded image must decode");
    assert_eq!(remeta.bit_depth, meta.bit_depth);
    assert_eq!(remeta.byte_order, meta.byte_order);
    assert_eq!(remeta.geo_metadata, meta.geo_metadata);
    match (&decoded, &redecoded) {
        (RasterData::Gray(a), RasterData::Gray(b)) => {
            assert_eq!(
                denormalize(a, meta.bit_depth),
                denormalize(b, meta.bit_depth)
            );
        }
        (RasterData::Rgb(a), RasterData::Rgb(b)) => {
            for (x, y) in a.iter().zip(b) {
                assert_eq!(
                    denormalize(x, meta.bit_depth),
                    denormalize(y, meta.bit_depth)
                );
            }
        }
        _ => panic!("band structure changed across the round trip"),
    }
});
