//! Runs a few verification suites and prints their pass rates.

use expd::expansion::PolyTuple;
use expd::verify::{run_suite_with, GenConfig};

fn main() -> expd::Result<()> {
    let cfg = GenConfig { cases: 100, ..GenConfig::default() };
    let x: Vec<String> = vec!["x".into()];
    let planted = [PolyTuple::parse(&x, &["x", "x^2"])?, PolyTuple::parse(&x, &["x^3", "x"])?];

    for suite in ["totient_formula", "chain_identity", "strong_destab", "rho_bound"] {
        let r = run_suite_with(suite, &cfg, &planted)?;
        println!(
            "{suite:<16} {:?}: {}/{} failures, {} not applicable",
            r.classification, r.failures, r.cases, r.inapplicable
        );
        if let Some(c) = r.counterexamples.first() {
            println!("    e.g. case {} {:?}: {}", c.case, c.instance.entries, c.detail);
        }
    }
    Ok(())
}
