//! Pinned CLI instances shared by the golden-file tests and the acceptance run.

#![allow(dead_code)]

use std::path::PathBuf;

/// One instance per theorem: (name, parameter flags).
pub const INSTANCES: &[(&str, &[&str])] = &[
    (
        "thm3a",
        &[
            "--a", "1", "--lambda", "0.9", "--t0", "0", "--T", "4.5", "--x0", "0",
        ],
    ),
    (
        "thm3b",
        &[
            "--a", "2", "--lambda", "1", "--t0", "0", "--T", "1.6", "--x0", "-1",
        ],
    ),
    (
        "thm3c1",
        &[
            "--a", "2", "--lambda", "1", "--t0", "0", "--T", "0.85", "--x0", "0.5",
        ],
    ),
    // x0 = a rho / 2 puts rho1 on rho + rho2 up to rounding
    (
        "thm3c2",
        &[
            "--a",
            "2",
            "--lambda",
            "1",
            "--t0",
            "0",
            "--T",
            "1",
            "--x0",
            "0.6931471805599453",
            "--snap",
            "1e-9",
        ],
    ),
    (
        "thm3c3",
        &[
            "--a", "2", "--lambda", "1", "--t0", "0.5", "--T", "1.5", "--x0", "0.9",
        ],
    ),
    (
        "thm3d",
        &[
            "--a", "2", "--lambda", "1", "--t0", "0", "--T", "3", "--x0", "0",
        ],
    ),
];

/// Expected theorem label for each instance, in order.
pub const THEOREMS: &[&str] = &["Thm3a", "Thm3b", "Thm3c1", "Thm3c2", "Thm3c3", "Thm3d"];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

/// Argument vectors of every golden file, keyed by file name.
pub fn golden_cases() -> Vec<(String, Vec<String>)> {
    let mut out = Vec::new();
    for (name, flags) in INSTANCES {
        let flags: Vec<String> = flags.iter().map(|s| s.to_string()).collect();
        for format in ["json", "csv"] {
            let mut args: Vec<String> = vec!["octsynth".into(), "synthesize".into()];
            args.extend(flags.iter().cloned());
            args.extend([
                "--format".into(),
                format.into(),
                "--samples".into(),
                "20".into(),
            ]);
            out.push((format!("synthesize_{name}.{format}"), args));

            // sweeps take the horizon range instead of T
            let mut args: Vec<String> = vec!["octsynth".into(), "sweep".into()];
            let mut it = flags.iter();
            while let Some(flag) = it.next() {
                let value = it.next().expect("flags come in pairs");
                if flag != "--T" {
                    args.extend([flag.clone(), value.clone()]);
                }
            }
            args.extend(
                [
                    "--horizon-min",
                    "0.1",
                    "--horizon-max",
                    "5",
                    "--steps",
                    "25",
                    "--format",
                    format,
                ]
                .iter()
                .map(|s| s.to_string()),
            );
            out.push((format!("sweep_{name}.{format}"), args));
        }
    }
    out
}
