//! Parses a certificate and checks it against a fixed hold-arc candidate.
#![no_main]
use libfuzzer_sys::fuzz_target;
use octsynth::pmp::{check_certificate, CheckOptions};
use octsynth::{synthesize, ProblemParams};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(mult) = octsynth_cli::parse_certificate(text) else { return };
    let params = ProblemParams::new(2.0, 1.0, 0.0, 3.0, 0.0).unwrap();
    let set = synthesize(&params);
    let opts = CheckOptions { grid: 200, ..CheckOptions::default() };
    let _ = check_certificate(&params, set.best(), &mult, opts);
});
