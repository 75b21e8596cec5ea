//! Reconstructs the rational constant c with
//! sum over (one odd entry at position i, others even) of zeta2 = c * zeta2(k).

use fmzv::identities::{alternate_split, one_odd_pattern, reconstruct_ratio};
use fmzv::modmath::sieve_primes;
use fmzv::ResidueCache;

fn main() -> fmzv::Result<()> {
    let cache = ResidueCache::in_memory();
    let primes = sieve_primes(13, 300)?;
    let (a, b) = alternate_split(&primes);
    println!("{:>2} {:>2} {:>2}  {:>14}  agrees", "k", "r", "i", "c");
    for k in [5u32, 7, 9] {
        for r in 2..=(k as usize + 1) / 2 {
            for i in 1..=r {
                let pattern = one_odd_pattern(k, r, i);
                if pattern.is_zero() {
                    continue;
                }
                let ca = reconstruct_ratio(&pattern, k, &a, &cache)?.constant;
                let cb = reconstruct_ratio(&pattern, k, &b, &cache)?.constant;
                let shown = ca.as_ref().map(|c| c.to_string()).unwrap_or_else(|| "?".into());
                println!("{k:>2} {r:>2} {i:>2}  {shown:>14}  {}", ca.is_some() && ca == cb);
            }
        }
    }
    Ok(())
}
