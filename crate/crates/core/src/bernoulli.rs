//! Bernoulli numbers and polynomials modulo `p`, `Z(k)` and `L(2)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::modmath::{add_mod, fermat_quotient, mod_inv, mod_pow, mul_mod, neg_mod, sub_mod, Prime};
use crate::{Error, Result};

/// `B_0, ..., B_n mod p` for some `n <= p - 2`.
#[derive(Clone, Debug)]
pub struct BernoulliTable {
    p: Prime,
    values: Vec<u64>,
}

impl BernoulliTable {
    /// Inverts `(e^x - 1)/x = sum x^i/(i+1)!` as a power series truncated at degree `n`.
    pub fn new(n: u64, p: Prime) -> Result<Self> {
        let m = p.get();
        if n > m - 2 {
            return Err(Error::BernoulliRange { n, p: m });
        }
        let n = n as usize;
        // factorials up to (n+1)! are units since n+1 < p
        let mut fact = vec![1u64; n + 2];
        for i in 1..n + 2 {
            fact[i] = mul_mod(fact[i - 1], i as u64, m);
        }
        let mut inv_fact = vec![1u64; n + 2];
        inv_fact[n + 1] = mod_inv(fact[n + 1], p)?;
        for i in (1..n + 2).rev() {
            inv_fact[i - 1] = mul_mod(inv_fact[i], i as u64, m);
        }
        // a_i = 1/(i+1)!, c = 1/a
        let mut c = vec![0u64; n + 1];
        c[0] = 1;
        for j in 1..=n {
            let mut s = 0;
            for i in 1..=j {
                s = add_mod(s, mul_mod(inv_fact[i + 1], c[j - i], m), m);
            }
            c[j] = neg_mod(s, m);
        }
        let values = c.iter().enumerate().map(|(j, &cj)| mul_mod(cj, fact[j], m)).collect();
        Ok(BernoulliTable { p, values })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn max_index(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn get(&self, n: u64) -> Option<u64> {
        self.values.get(n as usize).copied()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }
}

/// Memoized full table `B_0..B_{p-2}` for `p`.
pub fn table(p: Prime) -> Arc<BernoulliTable> {
    static TABLES: OnceLock<Mutex<HashMap<Prime, Arc<BernoulliTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(Default::default);
    if let Some(t) = tables.lock().unwrap().get(&p) {
        return t.clone();
    }
    let t = Arc::new(BernoulliTable::new(p.get() - 2, p).expect("p - 2 is in range"));
    tables.lock().unwrap().entry(p).or_insert(t).clone()
}

/// `B_n mod p`, `n <= p - 2`.
pub fn bernoulli_mod(n: u64, p: Prime) -> Result<u64> {
    if n > p.get() - 2 {
        return Err(Error::BernoulliRange { n, p: p.get() });
    }
    Ok(table(p).get(n).expect("in range"))
}

/// `B_n(x) = sum_j C(n, j) B_j x^(n-j) mod p`.
pub fn bernoulli_poly_mod(n: u64, x: u64, p: Prime) -> Result<u64> {
    if n > p.get() - 2 {
        return Err(Error::BernoulliRange { n, p: p.get() });
    }
    let m = p.get();
    let t = table(p);
    let x = x % m;
    let mut binom = 1u64;
    let mut total = 0u64;
    for j in 0..=n {
        let term = mul_mod(mul_mod(binom, t.get(j).unwrap(), m), mod_pow(x, n - j, m), m);
        total = add_mod(total, term, m);
        // C(n, j+1) = C(n, j) (n-j)/(j+1)
        if j < n {
            binom = mul_mod(mul_mod(binom, n - j, m), mod_inv(j + 1, p)?, m);
        }
    }
    Ok(total)
}

/// `Z(k) = B_{p-k}/k mod p` for `2 <= k < p`.
#[allow(non_snake_case)]
pub fn Zk(k: u64, p: Prime) -> Result<u64> {
    let m = p.get();
    if k < 2 || k >= m {
        return Err(Error::ZetaRange { k, p: m });
    }
    Ok(mul_mod(bernoulli_mod(m - k, p)?, mod_inv(k, p)?, m))
}

/// Fermat quotient `L(2) = (2^(p-1) - 1)/p mod p`.
#[allow(non_snake_case)]
pub fn L2(p: Prime) -> u64 {
    fermat_quotient(2, p)
}

/// `sum_{m=1}^{M-1} m^n mod p` by direct summation.
pub fn power_sum_oracle(upper: u64, n: u64, p: Prime) -> u64 {
    let m = p.get();
    (1..upper).fold(0, |acc, x| add_mod(acc, mod_pow(x, n, m), m))
}

/// `(B_{n+1}(M) - B_{n+1})/(n+1) mod p`, the Seki-Bernoulli closed form of [`power_sum_oracle`].
pub fn power_sum_closed(upper: u64, n: u64, p: Prime) -> Result<u64> {
    let m = p.get();
    let diff = sub_mod(bernoulli_poly_mod(n + 1, upper, p)?, bernoulli_mod(n + 1, p)?, m);
    Ok(mul_mod(diff, mod_inv(n + 1, p)?, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluator::{eval_zeta2, Index};
    use crate::modmath::{reduce_i64, sieve_primes};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    /// Exact Bernoulli numbers over Q from the recurrence sum_{j<=n} C(n+1, j) B_j = 0.
    fn exact_bernoulli(n: usize) -> Vec<BigRational> {
        let mut b: Vec<BigRational> = vec![BigRational::one()];
        for m in 1..=n {
            let mut s = BigRational::zero();
            let mut binom = BigInt::one();
            for (j, bj) in b.iter().enumerate() {
                s += BigRational::from_integer(binom.clone()) * bj;
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
        }
        b
    }

    #[test]
    fn examples() {
        assert_eq!(bernoulli_mod(0, p(7)).unwrap(), 1);
        assert_eq!(bernoulli_mod(4, p(7)).unwrap(), 3);
        assert_eq!(bernoulli_mod(5, p(11)).unwrap(), 0);
        assert!(bernoulli_mod(6, p(7)).is_err());
        assert!(BernoulliTable::new(6, p(7)).is_err());
        assert_eq!(bernoulli_poly_mod(2, 4, p(7)).unwrap(), 4);
        assert_eq!(bernoulli_poly_mod(1, 1, p(13)).unwrap(), mod_inv(2, p(13)).unwrap());
        assert_eq!(Zk(3, p(7)).unwrap(), 1);
        assert_eq!(Zk(4, p(11)).unwrap(), 0);
        assert!(Zk(1, p(7)).is_err());
        assert!(Zk(7, p(7)).is_err());
        assert_eq!(L2(p(7)), 2);
        assert_eq!(L2(p(5)), 3);
        assert_eq!(power_sum_oracle(4, 2, p(7)), 0);
        assert_eq!(power_sum_oracle(1, 5, p(7)), 0);
    }

    #[test]
    fn matches_exact_rationals() {
        let exact = exact_bernoulli(60);
        for q in sieve_primes(5, 67).unwrap() {
            let t = BernoulliTable::new(q.get() - 2, q).unwrap();
            for (n, b) in exact.iter().enumerate().take(q.get() as usize - 1) {
                let num = reduce_i64((b.numer() % BigInt::from(q.get())).try_into().unwrap(), q.get());
                let den = reduce_i64((b.denom() % BigInt::from(q.get())).try_into().unwrap(), q.get());
                assert_eq!(t.get(n as u64).unwrap(), mul_mod(num, mod_inv(den, q).unwrap(), q.get()), "B_{n} mod {q}");
            }
        }
    }

    #[test]
    fn table_invariants() {
        for q in sieve_primes(5, 300).unwrap() {
            let t = table(q);
            assert_eq!(t.get(0), Some(1));
            assert_eq!(t.get(1), Some(neg_mod(mod_inv(2, q).unwrap(), q.get())));
            for n in (3..=t.max_index()).step_by(2) {
                assert_eq!(t.get(n), Some(0));
            }
            for k in 2..q.get() {
                assert!(Zk(k, q).is_ok());
            }
            assert_eq!(Zk(2, q).unwrap(), 0);
        }
    }

    #[test]
    fn seki_bernoulli() {
        for q in sieve_primes(5, 60).unwrap() {
            for upper in 1..=q.get() {
                assert_eq!(power_sum_oracle(upper, 0, q), (upper - 1) % q.get());
                for n in 1..=q.get() - 4 {
                    assert_eq!(power_sum_oracle(upper, n, q), power_sum_closed(upper, n, q).unwrap(), "M={upper} n={n} p={q}");
                }
            }
        }
    }

    #[test]
    fn half_value() {
        for q in sieve_primes(5, 120).unwrap() {
            let m = q.get();
            let half = (m + 1) / 2;
            for n in 0..=m - 2 {
                // 2^(1-n) - 1
                let two_pow = if n == 0 { 2 } else { mod_inv(mod_pow(2, n - 1, m), q).unwrap() };
                let rhs = mul_mod(sub_mod(two_pow, 1, m), bernoulli_mod(n, q).unwrap(), m);
                assert_eq!(bernoulli_poly_mod(n, half, q).unwrap(), rhs, "n={n} p={q}");
            }
        }
    }

    #[test]
    fn depth_one_closed_form() {
        for q in sieve_primes(5, 300).unwrap() {
            let m = q.get();
            for k in 2..=9u64 {
                if m <= k + 2 {
                    continue;
                }
                let lhs = eval_zeta2(&Index::new(vec![k as u32]).unwrap(), q);
                let rhs = mul_mod(sub_mod(2, mod_pow(2, k, m), m), Zk(k, q).unwrap(), m);
                assert_eq!(lhs, rhs, "k={k} p={q}");
            }
            let lhs = eval_zeta2(&Index::new(vec![1]).unwrap(), q);
            assert_eq!(lhs, neg_mod(mul_mod(2, L2(q), m), m));
        }
    }
}
