//! Fuzzes the scene parameter key=value parser, and checks that any
//! accepted input survives a serialize + reparse round trip unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;
use panfuse::synth::SceneParams;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(params) = SceneParams::parse(text) {
            let reparsed =
                SceneParams::parse(&params.to_kv_string()).expect("serialized form must reparse");
            assert_eq!(params, reparsed, "round trip changed the parameters");
        }
    }
});
