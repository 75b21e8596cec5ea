//! Recovering a rational number from its residues modulo many primes.

use fmzv::modmath::{crt_combine, rat_reconstruct, rational_mod, sieve_primes};
use fmzv::Rational;
use num_bigint::BigInt;

fn main() -> fmzv::Result<()> {
    let secret = Rational::new(BigInt::from(-691), BigInt::from(2730));
    for hi in [30u64, 60, 100] {
        let primes = sieve_primes(17, hi)?;
        let pairs = primes.iter().map(|&p| Ok((rational_mod(&secret, p)?, p))).collect::<fmzv::Result<Vec<_>>>()?;
        let (r, m) = crt_combine(&pairs)?;
        let found = rat_reconstruct(&r, &m).map(|q| q.to_string()).unwrap_or_else(|| "none".into());
        println!("{:>2} primes up to {hi:>3}: modulus has {:>3} bits, reconstructed {found}", primes.len(), m.bits());
    }
    Ok(())
}
