//! Shared helpers for the command-line tests: golden cases and comparison.

#![allow(dead_code)]

use std::path::{Path, PathBuf};

use expd::cli::run;

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn input(name: &str) -> String {
    golden_dir().join("inputs").join(name).to_str().unwrap().to_string()
}

pub fn expd(args: &[&str]) -> (i32, String, String) {
    run(std::iter::once("expd").chain(args.iter().copied()))
}

/// `(golden name, arguments)`; every verb appears at least once.
pub fn cases() -> Vec<(&'static str, Vec<String>)> {
    let w = input("worked.json");
    let d = input("diagonal.json");
    let p = input("profile.json");
    let args = |v: &[&str]| v.iter().map(|s| (*s).to_string()).collect::<Vec<_>>();
    vec![
        ("expand", args(&["expand", "--tuple", &w, "--dir", "x", "--times", "2"])),
        ("expand_path", args(&["expand", "--tuple", &w, "--path", "x,y"])),
        ("totient", args(&["totient", "--tuple", &w, "--dir", "x", "--explain"])),
        ("totient_path", args(&["totient", "--tuple", &w, "--path", "x,y"])),
        ("residue", args(&["residue", "--tuple", &w, "--dir", "x"])),
        ("contract", args(&["contract", "--tuple", &w, "--dir", "x"])),
        ("dropler", args(&["dropler", "--tuple", &w, "--dir", "x", "--path", "x,y"])),
        ("destab", args(&["destab", "--tuple", &w, "--dir", "x"])),
        ("diagonalize", args(&["diagonalize", "--tuple", &w, "--path", "x,y", "--dir", "x"])),
        ("exactness", args(&["exactness", "--tuple", &d, "--dir", "x", "--spot", &w, "--path", "x,y"])),
        ("index", args(&["index", "--tuple", &w, "--spot", &w, "--dir", "x", "--times", "2"])),
        ("dominate", args(&["dominate", "--tuple", &w, "--spot", &w, "--dir", "x"])),
        ("normalize", args(&["normalize", "--tuple", &w, "--dir", "x"])),
        ("unionize", args(&["unionize", "--tuple", &w, "--dir", "x"])),
        ("area", args(&["area", "--tuple", &w, "--path", "x,y", "--box", "x:0:1,y:0:1"])),
        ("volume", args(&["volume", "--tuple", &w, "--path", "x,y", "--spots", "(0,0);(1,1)"])),
        (
            "check_integral",
            args(&["check", "--tuple", &w, "--kind", "integral", "--path", "x,y", "--box", "x:0:1,y:0:1"]),
        ),
        (
            "check_min_gap",
            args(&["check", "--tuple", &w, "--kind", "min-gap", "--path", "x,y", "--box", "x:0:1/4,y:0:1/4"]),
        ),
        (
            "check_average",
            args(&["check", "--tuple", &w, "--kind", "average", "--path", "x,y", "--spots", "(0,0);(1,1)"]),
        ),
        ("check_mixed_specific", args(&["check", "--tuple", &w, "--kind", "mixed-specific", "--path", "x,y"])),
        ("check_min_index", args(&["check", "--tuple", &w, "--kind", "min-index", "--path", "x,y"])),
        ("verify", args(&["verify", "--suite", "totient_formula", "--cases", "3", "--plant", &w])),
        ("profile", args(&["profile", "--tuple", &p])),
    ]
}

fn run_json(args: &[String]) -> (i32, String, String) {
    let mut args = args.to_vec();
    args.push("--json".into());
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    expd(&argv)
}

/// Rewrites every golden file from the current output.
pub fn update_golden_files() {
    for (name, args) in cases() {
        let (code, out, err) = run_json(&args);
        assert_eq!(code, 0, "{name}: {err}");
        std::fs::write(golden_dir().join(format!("{name}.json")), out).unwrap();
    }
}

/// Describes every case whose output differs from its golden file.
pub fn golden_mismatches() -> Vec<String> {
    let mut out = Vec::new();
    for (name, args) in cases() {
        let (code, text, err) = run_json(&args);
        if code != 0 || !err.is_empty() {
            out.push(format!("{name}: exit {code}, error output {err:?}"));
            continue;
        }
        let path = golden_dir().join(format!("{name}.json"));
        match std::fs::read_to_string(&path) {
            Ok(want) if want == text => {}
            Ok(want) => out.push(format!("{name}:\n--- expected\n{want}--- actual\n{text}")),
            Err(e) => out.push(format!("{}: {e}", path.display())),
        }
    }
    out
}
