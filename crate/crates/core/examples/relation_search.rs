//! Integer relations among all level-two values of one weight.
//!
//!     cargo run --release --example relation_search -- 4

use fmzv::modmath::sieve_primes;
use fmzv::relations::{build_matrix, find_relations, weight_columns, DEFAULT_HEIGHT};
use fmzv::{ResidueCache, Variant};

fn main() -> fmzv::Result<()> {
    let k: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let cache = ResidueCache::in_memory();
    let primes = sieve_primes(k as u64 + 3, 400)?;
    let matrix = build_matrix(&weight_columns(k, Variant::Zeta2), &primes, &cache)?;
    let search = find_relations(&matrix, DEFAULT_HEIGHT);
    println!(
        "weight {k}: {} columns, {} training primes, {} held out",
        matrix.columns.len(),
        search.training.len(),
        search.held_out.len()
    );
    for rel in search.verified() {
        let terms: Vec<String> = rel
            .coefficients
            .iter()
            .zip(&matrix.columns)
            .filter(|(c, _)| **c != 0)
            .map(|(c, col)| format!("{c}*({})", col.index))
            .collect();
        println!("  {} = 0", terms.join(" + "));
    }
    Ok(())
}
