//! Whitespace-separated arguments for the cheap subcommands.
//!
//! Commands that write files or run the grid solver are skipped so runs stay fast and
//! side-effect free.
#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let args: Vec<&str> = text.split_whitespace().collect();
    match args.first() {
        Some(&"synthesize") | Some(&"certificate") => {}
        _ => return,
    }
    if args.iter().any(|a| a.starts_with("--out") || a.starts_with("--samples")) {
        return;
    }
    let _ = octsynth_cli::run(std::iter::once("octsynth").chain(args));
});
