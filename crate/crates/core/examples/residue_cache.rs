//! A residue cache persisted to disk and reused across runs.

use fmzv::evaluator::eval_table;
use fmzv::modmath::sieve_primes;
use fmzv::{Index, ResidueCache, Variant};

fn main() -> fmzv::Result<()> {
    let path = std::env::temp_dir().join(format!("fmzv-example-{}.csv", std::process::id()));
    let primes = sieve_primes(5, 500)?;
    let index: Index = "1,1,3".parse()?;
    {
        let cache = ResidueCache::open(&path)?;
        eval_table(Variant::Zeta2, &index, None, &primes, Some(&cache))?;
        println!("first run stored {} cells in {}", cache.len(), path.display());
    }
    let cache = ResidueCache::open(&path)?;
    let table = eval_table(Variant::Zeta2, &index, None, &primes, Some(&cache))?;
    println!("reopened with {} cells; zeta2({index}) at 499 = {}", cache.len(), table.rows.values().last().unwrap());
    println!("{} cells recomputed and confirmed", cache.verify()?);
    drop(cache);
    let _ = std::fs::remove_file(&path);
    Ok(())
}
