#![no_main]
use libfuzzer_sys::fuzz_target;
use octsynth::oracle::GridSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(controls) = octsynth_cli::parse_controls(text) {
        let _ = GridSpec::new(10, 11, controls);
    }
});
