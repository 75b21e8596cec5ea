//! Evaluation of finite multiple zeta values at a single prime and over prime lists.
//!
//! Every variant runs through the same streaming recurrence: with `r` running
//! accumulators, `T_j(M) = T_j(M-1) + T_{j-1}(M-1) * f_j(M)` for strict sums and
//! `T_j(M) = T_j(M-1) + T_{j-1}(M) * f_j(M)` for non-strict ones, where
//! `f_j(m) = eps_j^m * m^(-k_j)`. Inverses are taken in blocks of 4096.

mod cache;
mod index;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use cache::{CacheKey, ResidueCache};
pub use index::{Index, SignVector, Variant};

use crate::modmath::{add_mod, batch_inv, mod_pow, mul_mod, neg_mod, Prime};
use crate::{Error, Result};

const BLOCK: u64 = 4096;

/// Values of one (variant, index, signs) cell over an explicit prime set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueTable {
    pub variant: Variant,
    pub index: Index,
    pub signs: Option<SignVector>,
    pub rows: BTreeMap<Prime, u64>,
}

struct SumSpec<'a> {
    exponents: &'a [u32],
    negative: Option<&'a SignVector>,
    strict: bool,
    /// first summation variable, step between consecutive ones, last (inclusive)
    start: u64,
    step: u64,
    end: u64,
}

fn stream_sum(spec: &SumSpec<'_>, p: Prime) -> u64 {
    let m = p.get();
    let r = spec.exponents.len();
    let mut acc = vec![0u64; r + 1];
    acc[0] = 1;
    if r == 0 {
        return 1;
    }
    if spec.start > spec.end {
        return 0;
    }
    let kmax = *spec.exponents.iter().max().unwrap() as usize;
    let mut block = Vec::with_capacity(BLOCK as usize);
    let mut powers = vec![0u64; kmax + 1];
    let mut factors = vec![0u64; r];
    let mut next = spec.start;
    while next <= spec.end {
        block.clear();
        while next <= spec.end && block.len() < BLOCK as usize {
            block.push(next);
            next += spec.step;
        }
        let inverses = batch_inv(&block, p).expect("summation variables are units mod p");
        for (&n, &inv) in block.iter().zip(&inverses) {
            powers[0] = 1;
            for e in 1..=kmax {
                powers[e] = mul_mod(powers[e - 1], inv, m);
            }
            for j in 0..r {
                let f = powers[spec.exponents[j] as usize];
                factors[j] = match spec.negative {
                    Some(s) if s.is_negative(j) && n % 2 == 1 => neg_mod(f, m),
                    _ => f,
                };
            }
            if spec.strict {
                for j in (1..=r).rev() {
                    acc[j] = add_mod(acc[j], mul_mod(acc[j - 1], factors[j - 1], m), m);
                }
            } else {
                for j in 1..=r {
                    acc[j] = add_mod(acc[j], mul_mod(acc[j - 1], factors[j - 1], m), m);
                }
            }
        }
    }
    acc[r]
}

/// Level one: sum over `0 < m_1 < ... < m_r < p`.
pub fn eval_zeta(index: &Index, p: Prime) -> u64 {
    stream_sum(
        &SumSpec { exponents: index.entries(), negative: None, strict: true, start: 1, step: 1, end: p.get() - 1 },
        p,
    )
}

/// Level two: sum over `0 < m_1 < ... < m_r <= (p-1)/2`.
pub fn eval_zeta2(index: &Index, p: Prime) -> u64 {
    stream_sum(
        &SumSpec {
            exponents: index.entries(),
            negative: None,
            strict: true,
            start: 1,
            step: 1,
            end: (p.get() - 1) / 2,
        },
        p,
    )
}

/// Level two with non-strict inequalities.
pub fn eval_zeta2_star(index: &Index, p: Prime) -> u64 {
    stream_sum(
        &SumSpec {
            exponents: index.entries(),
            negative: None,
            strict: false,
            start: 1,
            step: 1,
            end: (p.get() - 1) / 2,
        },
        p,
    )
}

/// Finite Euler sum with numerators `eps_i^(m_i)`.
pub fn eval_euler(index: &Index, signs: &SignVector, p: Prime) -> Result<u64> {
    if signs.len() != index.depth() {
        return Err(Error::InvalidSigns(format!("{signs} has length {} but index {index} has depth {}", signs.len(), index.depth())));
    }
    Ok(stream_sum(
        &SumSpec { exponents: index.entries(), negative: Some(signs), strict: true, start: 1, step: 1, end: p.get() - 1 },
        p,
    ))
}

/// `2^k` times the strict sum over even `n_i < p`; equals [`eval_zeta2`].
pub fn eval_even_form(index: &Index, p: Prime) -> u64 {
    let s = stream_sum(
        &SumSpec { exponents: index.entries(), negative: None, strict: true, start: 2, step: 2, end: p.get() - 1 },
        p,
    );
    mul_mod(s, mod_pow(2, index.weight() as u64, p.get()), p.get())
}

/// `(-2)^k` times the strict sum over odd `n_r < ... < n_1 < p`; equals [`eval_zeta2`].
pub fn eval_odd_form(index: &Index, p: Prime) -> u64 {
    let rev = index.reversed();
    let s = stream_sum(
        &SumSpec { exponents: rev.entries(), negative: None, strict: true, start: 1, step: 2, end: p.get() - 2 },
        p,
    );
    let m = p.get();
    let two_k = mod_pow(2, index.weight() as u64, m);
    let scale = if index.weight() % 2 == 1 { neg_mod(two_k, m) } else { two_k };
    mul_mod(s, scale, m)
}

fn check_signs(variant: Variant, index: &Index, signs: Option<&SignVector>) -> Result<()> {
    match (variant.needs_signs(), signs) {
        (true, None) => Err(Error::VariantSigns { variant, problem: "requires a sign vector" }),
        (false, Some(_)) => Err(Error::VariantSigns { variant, problem: "does not take a sign vector" }),
        (true, Some(s)) if s.len() != index.depth() => {
            Err(Error::InvalidSigns(format!("{s} does not match depth {} of {index}", index.depth())))
        }
        _ => Ok(()),
    }
}

/// Dispatches on the variant. Euler sums need `signs`; the others reject them.
pub fn evaluate(variant: Variant, index: &Index, signs: Option<&SignVector>, p: Prime) -> Result<u64> {
    check_signs(variant, index, signs)?;
    Ok(match variant {
        Variant::Zeta => eval_zeta(index, p),
        Variant::Zeta2 => eval_zeta2(index, p),
        Variant::Zeta2Star => eval_zeta2_star(index, p),
        Variant::Euler => eval_euler(index, signs.expect("checked"), p)?,
    })
}

/// Evaluates one cell over `primes`, consulting and updating `cache` when given.
pub fn eval_table(
    variant: Variant,
    index: &Index,
    signs: Option<&SignVector>,
    primes: &[Prime],
    cache: Option<&ResidueCache>,
) -> Result<ResidueTable> {
    check_signs(variant, index, signs)?;
    if primes.is_empty() {
        return Err(Error::Precondition("prime list is empty".into()));
    }
    if primes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("prime list must be strictly ascending".into()));
    }
    let values: Vec<u64> = primes
        .par_iter()
        .map(|&p| match cache {
            Some(c) => c.get_or_compute(variant, index, signs, p),
            None => evaluate(variant, index, signs, p),
        })
        .collect::<Result<_>>()?;
    if let Some(c) = cache {
        c.flush()?;
    }
    Ok(ResidueTable {
        variant,
        index: index.clone(),
        signs: signs.cloned(),
        rows: primes.iter().copied().zip(values).collect(),
    })
}
