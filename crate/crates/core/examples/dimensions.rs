//! Estimated dimensions per weight against the Fibonacci and d(k) counts.

use fmzv::modmath::sieve_primes;
use fmzv::relations::{dimension_estimate, DEFAULT_HEIGHT};
use fmzv::{ResidueCache, Variant};

fn main() -> fmzv::Result<()> {
    let cache = ResidueCache::in_memory();
    let primes = sieve_primes(5, 400)?;
    println!("{:>2}  {:>12}  {:>12}  {:>12}", "k", "zeta2 / F", "euler / F", "zeta / d");
    for k in 1..=6 {
        let two = dimension_estimate(k, Variant::Zeta2, &primes, DEFAULT_HEIGHT, &cache)?;
        let euler = if k <= 4 {
            let e = dimension_estimate(k, Variant::Euler, &primes, DEFAULT_HEIGHT, &cache)?;
            format!("{} / {}", e.dimension, e.conjectured)
        } else {
            "-".into()
        };
        let one = dimension_estimate(k, Variant::Zeta, &primes, DEFAULT_HEIGHT, &cache)?;
        println!(
            "{k:>2}  {:>12}  {euler:>12}  {:>12}",
            format!("{} / {}", two.dimension, two.conjectured),
            format!("{} / {}", one.dimension, one.conjectured)
        );
    }
    Ok(())
}
