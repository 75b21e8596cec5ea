//! Prime generation and word-sized modular arithmetic.
//!
//! Residues are plain `u64` values reduced into `[0, m)`. Products go through
//! `u128`, so any modulus below 2^63 is safe. Fermat quotients work modulo `p^2`.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Exact rational numbers used for symbolic coefficients and reconstructed constants.
pub type Rational = BigRational;

/// An odd prime `p >= 5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(value: u64) -> Result<Self> {
        if value < 5 || value >= 1 << 62 || !is_prime(value) {
            return Err(Error::NotPrime(value));
        }
        Ok(Prime(value))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;
    fn try_from(value: u64) -> Result<Self> {
        Prime::new(value)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % small == 0 {
            return n == small;
        }
    }
    // deterministic Miller-Rabin for all n < 2^64
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes in `[lo, hi]`, ascending.
pub fn sieve_primes(lo: u64, hi: u64) -> Result<Vec<Prime>> {
    if lo < 5 || lo > hi {
        return Err(Error::InvalidPrimeRange { lo, hi });
    }
    if hi >= 1 << 40 {
        return Err(Error::InvalidPrimeRange { lo, hi });
    }
    // segmented over [lo, hi] using base primes up to sqrt(hi)
    let root = hi.sqrt();
    let mut base = vec![true; root as usize + 1];
    let mut base_primes = Vec::new();
    for i in 2..=root as usize {
        if base[i] {
            base_primes.push(i as u64);
            let mut j = i * i;
            while j <= root as usize {
                base[j] = false;
                j += i;
            }
        }
    }
    let len = (hi - lo + 1) as usize;
    let mut marks = vec![true; len];
    for &q in &base_primes {
        let start = (q * q).max(lo.div_ceil(q) * q);
        let mut j = start;
        while j <= hi {
            marks[(j - lo) as usize] = false;
            j += q;
        }
    }
    Ok(marks
        .iter()
        .enumerate()
        .filter(|(_, &m)| m)
        .map(|(i, _)| Prime(lo + i as u64))
        .collect())
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

#[inline]
pub fn neg_mod(a: u64, m: u64) -> u64 {
    if a == 0 {
        0
    } else {
        m - a
    }
}

/// Reduces a signed integer into `[0, m)`.
#[inline]
pub fn reduce_i64(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

/// `a^e mod m` by square-and-multiply. `m >= 2`.
pub fn mod_pow(a: u64, mut e: u64, m: u64) -> u64 {
    debug_assert!(m >= 2);
    let mut base = a % m;
    let mut acc = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`.
pub fn mod_inv(a: u64, p: Prime) -> Result<u64> {
    inv_mod_any(a, p.get()).ok_or(Error::NotInvertible { value: a, modulus: p.get() })
}

/// Inverse modulo an arbitrary modulus, if it exists.
pub(crate) fn inv_mod_any(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = ((a % m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Elementwise inverses with one modular inversion and `3(n-1)` multiplications.
pub fn batch_inv(values: &[u64], p: Prime) -> Result<Vec<u64>> {
    let m = p.get();
    let mut prefix = Vec::with_capacity(values.len());
    let mut acc = 1u64;
    for (position, &v) in values.iter().enumerate() {
        let v = v % m;
        if v == 0 {
            return Err(Error::ZeroInBatch { position, modulus: m });
        }
        prefix.push(acc);
        acc = mul_mod(acc, v, m);
    }
    let mut inv_acc = match values.len() {
        0 => return Ok(Vec::new()),
        _ => mod_inv(acc, p)?,
    };
    let mut out = vec![0; values.len()];
    for i in (0..values.len()).rev() {
        out[i] = mul_mod(inv_acc, prefix[i], m);
        inv_acc = mul_mod(inv_acc, values[i] % m, m);
    }
    Ok(out)
}

/// Fermat quotient `(a^(p-1) - 1)/p mod p`.
pub fn fermat_quotient(a: u64, p: Prime) -> u64 {
    let pv = p.get();
    let p2 = pv as u128 * pv as u128;
    let mut base = a as u128 % p2;
    let mut acc = 1u128;
    let mut e = pv - 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_u128_mod(acc, base, p2);
        }
        base = mul_u128_mod(base, base, p2);
        e >>= 1;
    }
    let q = (acc + p2 - 1) % p2 / pv as u128;
    (q % pv as u128) as u64
}

fn mul_u128_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return a * b % m;
    }
    let (a, b, m) = (BigUint::from(a), BigUint::from(b), BigUint::from(m));
    let r = a * b % m;
    r.try_into().expect("reduced value fits")
}

/// Chinese remaindering over pairwise distinct primes.
pub fn crt_combine(pairs: &[(u64, Prime)]) -> Result<(BigUint, BigUint)> {
    let mut seen = std::collections::HashSet::new();
    let mut r = BigUint::zero();
    let mut modulus = BigUint::one();
    for &(residue, p) in pairs {
        if !seen.insert(p) {
            return Err(Error::DuplicatePrime(p.get()));
        }
        let pv = p.get();
        let residue = residue % pv;
        // r' = r + modulus * ((residue - r) * modulus^-1 mod p)
        let r_mod = (&r % pv).try_into().unwrap_or(0u64);
        let m_mod: u64 = (&modulus % pv).try_into().unwrap_or(0u64);
        let m_inv = mod_inv(m_mod, p)?;
        let t = mul_mod(sub_mod(residue, r_mod, pv), m_inv, pv);
        r += &modulus * t;
        modulus *= pv;
    }
    Ok((r, modulus))
}

/// Rational reconstruction with the symmetric bound `|n|, d <= sqrt(M/2)`.
///
/// Returns `None` when no such fraction exists.
pub fn rat_reconstruct(residue: &BigUint, modulus: &BigUint) -> Option<Rational> {
    if modulus.is_zero() {
        return None;
    }
    let m = BigInt::from_biguint(Sign::Plus, modulus.clone());
    let bound = (modulus / 2u32).sqrt();
    let bound = BigInt::from_biguint(Sign::Plus, bound);
    let (mut r0, mut r1) = (m.clone(), BigInt::from_biguint(Sign::Plus, residue % modulus));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1) = (r1, r2);
        (t0, t1) = (t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !t1.gcd(&m).is_one() {
        return None;
    }
    let (n, d) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    Some(Rational::new(n, d))
}

/// `n/d mod p` for a rational with denominator prime to `p`.
pub fn rational_mod(q: &Rational, p: Prime) -> Result<u64> {
    let pv = p.get();
    let num = q.numer().mod_floor(&BigInt::from(pv));
    let den = q.denom().mod_floor(&BigInt::from(pv));
    let num: u64 = num.try_into().expect("reduced");
    let den: u64 = den.try_into().expect("reduced");
    if den == 0 {
        return Err(Error::DenominatorVanishes { coefficient: q.to_string(), prime: pv });
    }
    Ok(mul_mod(num, mod_inv(den, p)?, pv))
}
