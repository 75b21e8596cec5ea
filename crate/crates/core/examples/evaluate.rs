//! Values of every variant at a few primes.
//!
//!     cargo run --example evaluate -- 1,2 +,-

use fmzv::evaluator::{evaluate, eval_table};
use fmzv::modmath::sieve_primes;
use fmzv::{Index, Prime, SignVector, Variant};

fn main() -> fmzv::Result<()> {
    let mut args = std::env::args().skip(1);
    let index: Index = args.next().as_deref().unwrap_or("1,2").parse()?;
    let signs: SignVector = match args.next() {
        Some(s) => s.parse()?,
        None => SignVector::all_plus(index.depth()),
    };

    let p = Prime::new(101)?;
    println!("index ({index}) at p = {p}");
    for variant in [Variant::Zeta, Variant::Zeta2, Variant::Zeta2Star] {
        println!("  {:<9} {}", variant.name(), evaluate(variant, &index, None, p)?);
    }
    println!("  {:<9} {} (signs {signs})", "euler", evaluate(Variant::Euler, &index, Some(&signs), p)?);

    let primes = sieve_primes(5, 60)?;
    let table = eval_table(Variant::Zeta2, &index, None, &primes, None)?;
    println!("\nzeta2({index}) over 5..60:");
    for (p, v) in &table.rows {
        println!("  {p:>3} {v}");
    }
    Ok(())
}
