//! Throws arbitrary bytes at the PNG decode wrapper. The underlying
//! `png` crate enforces its own limits; this target guards the wrapper's
//! buffer-size accounting and plane splitting.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let _ = panfuse::io::decode_png(data);
});
