//! Runs every verification suite with small bounds and prints a summary.
//!
//!     cargo run --release --example verify_identities -- [max prime]

use fmzv::identities::{run_suite, Suite, SuiteParams};
use fmzv::modmath::sieve_primes;
use fmzv::ResidueCache;

fn main() -> fmzv::Result<()> {
    let hi: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(120);
    let primes = sieve_primes(5, hi)?;
    let cache = ResidueCache::in_memory();
    let params = SuiteParams { kmax: Some(7), wmax: Some(6), rmax: Some(5), dmax: Some(4) };
    let mut all_ok = true;
    for suite in Suite::ALL {
        let report = run_suite(suite, params, &primes, &cache)?;
        all_ok &= report.passed();
        println!(
            "{:<11} {:>6} cases  {}",
            suite.name(),
            report.summary.total,
            if report.passed() { "ok" } else { "FAILED" }
        );
    }
    println!("{} residues computed", cache.len());
    if !all_ok {
        std::process::exit(1);
    }
    Ok(())
}
