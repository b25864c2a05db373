//! Throws arbitrary bytes at the TIFF decoder; any panic, overflow, or
//! runaway allocation is a finding. Errors are expected and ignored.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let _ = panfuse::io::decode_tiff(data);
});
