//! Writes every level-two value of a weight in the odd-entry basis, and
//! level-one values in the basis of odd entries >= 3.

use fmzv::modmath::sieve_primes;
use fmzv::relations::{express_stable, odd_basis, weight_columns, Column, Stability, DEFAULT_HEIGHT};
use fmzv::{ResidueCache, Variant};

fn show(target: &Column, basis: &[Column], primes: &[fmzv::Prime], cache: &ResidueCache) -> fmzv::Result<()> {
    let e = express_stable(target, basis, primes, DEFAULT_HEIGHT, cache)?;
    let rhs = match (&e.coefficients, e.status) {
        (Some(cs), Stability::Stable) => {
            let terms: Vec<String> = basis
                .iter()
                .zip(cs)
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(b, c)| format!("{c} ({})", b.index))
                .collect();
            if terms.is_empty() { "0".into() } else { terms.join(" + ") }
        }
        _ => format!("[{}]", e.status),
    };
    println!("  {target} = {rhs}");
    Ok(())
}

fn main() -> fmzv::Result<()> {
    let cache = ResidueCache::in_memory();
    let k = 5;
    let primes = sieve_primes(k as u64 + 3, 400)?;
    let odd = odd_basis(k, 1);
    println!("weight {k}, level two, basis of odd entries:");
    for target in weight_columns(k, Variant::Zeta2).into_iter().filter(|c| !odd.contains(c)) {
        show(&target, &odd, &primes, &cache)?;
    }
    let k = 6;
    let primes = sieve_primes(k as u64 + 3, 400)?;
    let odd3 = odd_basis(k, 3);
    println!("weight {k}, level one, basis of odd entries >= 3:");
    for target in weight_columns(k, Variant::Zeta).into_iter().take(8) {
        show(&target, &odd3, &primes, &cache)?;
    }
    Ok(())
}
