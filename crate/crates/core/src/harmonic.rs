//! The harmonic (stuffle) algebra of formal indices with rational coefficients.
//!
//! Everything here is exact: an identity that checks out is an identity in
//! the algebra, not a congruence.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::evaluator::{evaluate, Index, Variant};
use crate::modmath::{add_mod, mul_mod, rational_mod, Prime, Rational};
use crate::{Error, Result};

/// A finite `Q`-linear combination of indices. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndexCombination {
    terms: BTreeMap<Index, Rational>,
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl IndexCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The empty index with coefficient 1.
    pub fn unit() -> Self {
        Self::from_index(Index::empty())
    }

    pub fn from_index(index: Index) -> Self {
        Self::term(index, Rational::one())
    }

    pub fn term(index: Index, coefficient: Rational) -> Self {
        let mut c = Self::zero();
        c.add_term(index, coefficient);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, index: &Index) -> Rational {
        self.terms.get(index).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in canonical index order.
    pub fn iter(&self) -> impl Iterator<Item = (&Index, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, index: Index, coefficient: Rational) {
        if coefficient.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(index) {
            Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        IndexCombination { terms: self.terms.iter().map(|(i, c)| (i.clone(), c * factor)).collect() }
    }

    pub fn scale_int(&self, factor: i64) -> Self {
        self.scale(&int(factor))
    }
}

impl fmt::Display for IndexCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (index, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else if n > 0 { "+" } else { "" };
            let sep = if n > 0 { " " } else { "" };
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "{sep}{sign}{}[({index})]", if n > 0 { " " } else { "" })?;
            } else {
                write!(f, "{sep}{sign}{}{mag}[({index})]", if n > 0 { " " } else { "" })?;
            }
        }
        Ok(())
    }
}

impl Add for &IndexCombination {
    type Output = IndexCombination;
    fn add(self, rhs: &IndexCombination) -> IndexCombination {
        let mut out = self.clone();
        for (i, c) in &rhs.terms {
            out.add_term(i.clone(), c.clone());
        }
        out
    }
}

impl Sub for &IndexCombination {
    type Output = IndexCombination;
    fn sub(self, rhs: &IndexCombination) -> IndexCombination {
        self + &(-rhs)
    }
}

impl Neg for &IndexCombination {
    type Output = IndexCombination;
    fn neg(self) -> IndexCombination {
        IndexCombination { terms: self.terms.iter().map(|(i, c)| (i.clone(), -c)).collect() }
    }
}

impl Mul for &IndexCombination {
    type Output = IndexCombination;
    fn mul(self, rhs: &IndexCombination) -> IndexCombination {
        stuffle(self, rhs)
    }
}

impl std::iter::Sum for IndexCombination {
    fn sum<I: Iterator<Item = IndexCombination>>(iter: I) -> Self {
        iter.fold(IndexCombination::zero(), |acc, x| &acc + &x)
    }
}

fn stuffle_words(a: &[u32], b: &[u32], prefix: &mut Vec<u32>, out: &mut BTreeMap<Vec<u32>, u64>) {
    match (a.split_first(), b.split_first()) {
        (None, _) | (_, None) => {
            let mut w = prefix.clone();
            w.extend_from_slice(a);
            w.extend_from_slice(b);
            *out.entry(w).or_insert(0) += 1;
        }
        (Some((&x, ra)), Some((&y, rb))) => {
            prefix.push(x);
            stuffle_words(ra, b, prefix, out);
            prefix.pop();
            prefix.push(y);
            stuffle_words(a, rb, prefix, out);
            prefix.pop();
            prefix.push(x + y);
            stuffle_words(ra, rb, prefix, out);
            prefix.pop();
        }
    }
}

/// Stuffle product of two single indices, as multiplicities.
pub fn stuffle_indices(a: &Index, b: &Index) -> BTreeMap<Index, u64> {
    let mut out = BTreeMap::new();
    stuffle_words(a.entries(), b.entries(), &mut Vec::new(), &mut out);
    out.into_iter().map(|(w, n)| (Index::from_vec_unchecked(w), n)).collect()
}

/// Bilinear stuffle product; the empty index is the unit.
pub fn stuffle(a: &IndexCombination, b: &IndexCombination) -> IndexCombination {
    let mut out = IndexCombination::zero();
    for (ia, ca) in &a.terms {
        for (ib, cb) in &b.terms {
            let c = ca * cb;
            for (w, n) in stuffle_indices(ia, ib) {
                out.add_term(w, &c * int(n as i64));
            }
        }
    }
    out
}

/// Rewrites a non-strict (star) sum as strict sums: one term per way of
/// merging runs of adjacent entries.
pub fn star_expand(index: &Index) -> IndexCombination {
    let e = index.entries();
    if e.len() <= 1 {
        return IndexCombination::from_index(index.clone());
    }
    let gaps = e.len() - 1;
    let mut out = IndexCombination::zero();
    for mask in 0..1u32 << gaps {
        let mut w = vec![e[0]];
        for (g, &k) in e[1..].iter().enumerate() {
            if mask >> g & 1 == 1 {
                *w.last_mut().unwrap() += k;
            } else {
                w.push(k);
            }
        }
        out.add_term(Index::from_vec_unchecked(w), Rational::one());
    }
    out
}

/// `sum_j (-1)^j [(k_j, ..., k_1)] * star(k_{j+1}, ..., k_r)`, with the star
/// factor expanded into strict symbols. Zero for every non-empty index.
pub fn antipode_sum(index: &Index) -> IndexCombination {
    (0..=index.depth())
        .map(|j| {
            let left = IndexCombination::from_index(index.prefix(j).reversed());
            let right = star_expand(&index.suffix(j));
            let prod = stuffle(&left, &right);
            if j % 2 == 1 { -&prod } else { prod }
        })
        .sum()
}

fn gen_filtered(k: u32, r: usize, a: usize, min_entry: u32) -> IndexCombination {
    let mut out = IndexCombination::zero();
    if r == 0 || r > k as usize || a > r {
        return out;
    }
    for index in Index::compositions_with_depth(k, r) {
        let e = index.entries();
        if e.iter().all(|&x| x >= min_entry) && e.iter().filter(|&&x| x % 2 == 0).count() == a {
            out.add_term(index, Rational::one());
        }
    }
    out
}

/// Sum of all indices of weight `k`, depth `r` with exactly `a` even entries.
pub fn gen_g(k: u32, r: usize, a: usize) -> IndexCombination {
    gen_filtered(k, r, a, 1)
}

/// As [`gen_g`], restricted to entries `>= 2`.
pub fn gen_g1(k: u32, r: usize, a: usize) -> IndexCombination {
    gen_filtered(k, r, a, 2)
}

/// Both sides of `sum_i [(2i)] * g(k-2i, r, a) = ((k-r-a)/2) g(k,r,a) + (a+1) g(k,r+1,a+1)`
/// (or the `g_1` form with `(k-3r+a)/2` when `restricted`).
pub fn lemma_g_sides(k: u32, r: usize, a: usize, restricted: bool) -> (IndexCombination, IndexCombination) {
    let (excess, gen): (i64, fn(u32, usize, usize) -> IndexCombination) = if restricted {
        (k as i64 - 3 * r as i64 + a as i64, gen_g1)
    } else {
        (k as i64 - r as i64 - a as i64, gen_g)
    };
    let upper = if excess >= 2 { excess / 2 } else { 0 };
    let lhs: IndexCombination = (1..=upper)
        .map(|i| {
            let even = IndexCombination::from_index(Index::from_vec_unchecked(vec![2 * i as u32]));
            stuffle(&even, &gen(k - 2 * i as u32, r, a))
        })
        .sum();
    let half = Rational::new(BigInt::from(excess), BigInt::from(2));
    let rhs = &gen(k, r, a).scale(&half) + &gen(k, r + 1, a + 1).scale_int(a as i64 + 1);
    (lhs, rhs)
}

/// Checks both the `g` and `g_1` identities at `(k, r, a)`.
pub fn lemma_g_check(k: u32, r: usize, a: usize) -> bool {
    [false, true].into_iter().all(|restricted| {
        let (l, r) = lemma_g_sides(k, r, a, restricted);
        l == r
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for sub in permutations(n - 1) {
        for pos in 0..=sub.len() {
            let mut v = sub.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out.sort();
    out
}

/// `R(k_1..k_r) = sum_sigma (r + 1 - 2 sigma^-1(r)) [(k_sigma(1), ..., k_sigma(r))]`:
/// the weight depends on where the last entry lands.
#[allow(non_snake_case)]
pub fn gen_R(index: &Index) -> IndexCombination {
    let e = index.entries();
    let r = e.len();
    let mut out = IndexCombination::zero();
    for sigma in permutations(r) {
        let landing = sigma.iter().position(|&s| s == r - 1).unwrap() + 1;
        let coeff = r as i64 + 1 - 2 * landing as i64;
        let w: Vec<u32> = sigma.iter().map(|&s| e[s]).collect();
        out.add_term(Index::from_vec_unchecked(w), int(coeff));
    }
    out
}

/// Both sides of the recursion satisfied by [`gen_R`] (depth `>= 2`).
#[allow(non_snake_case)]
pub fn lemma_R_sides(index: &Index) -> Result<(IndexCombination, IndexCombination)> {
    let e = index.entries();
    let r = e.len();
    if r < 2 {
        return Err(Error::Precondition(format!("R-lemma needs depth >= 2, got ({index})")));
    }
    let without = |skip: &[usize]| -> Vec<u32> {
        e[..r - 1].iter().enumerate().filter(|(i, _)| !skip.contains(i)).map(|(_, &k)| k).collect()
    };
    let idx = Index::from_vec_unchecked;
    let lhs: IndexCombination = (0..r - 1)
        .map(|i| {
            let mut rest = without(&[i]);
            rest.push(e[r - 1]);
            stuffle(&IndexCombination::from_index(idx(vec![e[i]])), &gen_R(&idx(rest)))
        })
        .sum();
    let mut rhs = gen_R(index).scale_int(r as i64 - 2);
    for i in 0..r - 1 {
        let mut w = without(&[i]);
        w.push(e[i] + e[r - 1]);
        rhs = &rhs + &gen_R(&idx(w));
    }
    for i in 0..r - 1 {
        for j in i + 1..r - 1 {
            let mut w = vec![e[i] + e[j]];
            w.extend(without(&[i, j]));
            w.push(e[r - 1]);
            rhs = &rhs + &gen_R(&idx(w)).scale_int(2);
        }
    }
    Ok((lhs, rhs))
}

#[allow(non_snake_case)]
pub fn lemma_R_check(index: &Index) -> Result<bool> {
    let (l, r) = lemma_R_sides(index)?;
    Ok(l == r)
}

/// Linear extension of an evaluator: `sum c * eval(index, p)`.
pub fn evaluate_combination(comb: &IndexCombination, variant: Variant, p: Prime) -> Result<u64> {
    if variant.needs_signs() {
        return Err(Error::VariantSigns { variant, problem: "cannot evaluate sign-free combinations" });
    }
    evaluate_combination_with(comb, p, |index| evaluate(variant, index, None, p))
}

/// As [`evaluate_combination`] with a caller-supplied evaluator (e.g. a cache).
pub fn evaluate_combination_with(
    comb: &IndexCombination,
    p: Prime,
    mut eval: impl FnMut(&Index) -> Result<u64>,
) -> Result<u64> {
    let m = p.get();
    let mut total = 0;
    for (index, c) in comb.iter() {
        let c = rational_mod(c, p)?;
        if c != 0 {
            total = add_mod(total, mul_mod(c, eval(index)?, m), m);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluator::{eval_zeta2, eval_zeta2_star, Index};
    use crate::modmath::{mul_mod, sieve_primes, sub_mod};
    use proptest::prelude::*;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    fn comb(terms: &[(&str, i64)]) -> IndexCombination {
        let mut c = IndexCombination::zero();
        for &(s, n) in terms {
            c.add_term(idx(s), int(n));
        }
        c
    }

    fn single(s: &str) -> IndexCombination {
        IndexCombination::from_index(idx(s))
    }

    #[test]
    fn stuffle_examples() {
        assert_eq!(&single("2") * &single("3"), comb(&[("2,3", 1), ("3,2", 1), ("5", 1)]));
        let x = comb(&[("1,2", 3), ("4", -2)]);
        assert_eq!(&IndexCombination::unit() * &x, x);
        assert_eq!(&single("1") * &single("1"), comb(&[("1,1", 2), ("2", 1)]));
    }

    #[test]
    fn stuffle_term_count_is_delannoy() {
        // sum of multiplicities of a depth-m by depth-n stuffle is the Delannoy number D(m, n)
        let delannoy = |m: usize, n: usize| -> u64 {
            let mut d = vec![vec![1u64; n + 1]; m + 1];
            for i in 1..=m {
                for j in 1..=n {
                    d[i][j] = d[i - 1][j] + d[i][j - 1] + d[i - 1][j - 1];
                }
            }
            d[m][n]
        };
        for (a, b) in [("1,2", "3"), ("1,1,1", "2,2"), ("5,1,2", "4,3,7")] {
            let total: u64 = stuffle_indices(&idx(a), &idx(b)).values().sum();
            assert_eq!(total, delannoy(idx(a).depth(), idx(b).depth()));
        }
    }

    #[test]
    fn star_examples() {
        assert_eq!(star_expand(&idx("4")), single("4"));
        assert_eq!(star_expand(&idx("2,5")), comb(&[("2,5", 1), ("7", 1)]));
        assert_eq!(star_expand(&idx("1,1,1")), comb(&[("1,1,1", 1), ("2,1", 1), ("1,2", 1), ("3", 1)]));
    }

    #[test]
    fn antipode_examples() {
        assert!(antipode_sum(&idx("3")).is_zero());
        assert!(antipode_sum(&idx("2,5")).is_zero());
        assert_eq!(antipode_sum(&Index::empty()), IndexCombination::unit());
        let p = Prime::new(7).unwrap();
        let m = p.get();
        // j = 0: star(1,2); j = 1: -z(1) star(2); j = 2: z(2,1)
        let total = sub_mod(
            (eval_zeta2_star(&idx("1,2"), p) + eval_zeta2(&idx("2,1"), p)) % m,
            mul_mod(eval_zeta2(&idx("1"), p), eval_zeta2_star(&idx("2"), p), m),
            m,
        );
        assert_eq!(total, 0);
    }

    #[test]
    fn antipode_symbolic_zero() {
        for index in Index::all_up_to_weight(8) {
            if index.depth() <= 5 {
                assert!(antipode_sum(&index).is_zero(), "({index})");
            }
        }
    }

    #[test]
    fn g_examples() {
        assert_eq!(gen_g(3, 2, 1), comb(&[("1,2", 1), ("2,1", 1)]));
        assert_eq!(gen_g(4, 2, 0), comb(&[("1,3", 1), ("3,1", 1)]));
        assert_eq!(gen_g1(6, 2, 0), single("3,3"));
        assert!(gen_g(3, 4, 0).is_zero());
        assert!(lemma_g_check(5, 2, 0));
        assert!(lemma_g_check(4, 1, 0));
        // (k - r - a)/2 = 0
        let (l, r) = lemma_g_sides(3, 2, 1, false);
        assert!(l.is_zero());
        assert_eq!(r, gen_g(3, 3, 2).scale_int(2));
    }

    #[test]
    fn g_lemma_exhaustive() {
        for k in 1..=10u32 {
            for r in 1..=k as usize {
                for a in 0..=r {
                    assert!(lemma_g_check(k, r, a), "k={k} r={r} a={a}");
                }
            }
        }
    }

    #[test]
    fn r_examples() {
        assert_eq!(gen_R(&idx("2,5")), comb(&[("2,5", -1), ("5,2", 1)]));
        assert!(gen_R(&idx("4")).is_zero());
        let r = gen_R(&idx("1,1,2"));
        // last entry 2 in position 1, 2, 3 gives +2, 0, -2, twice each
        assert_eq!(r, comb(&[("2,1,1", 4), ("1,1,2", -4)]));
        for s in ["2,5", "1,1,1", "1,2,3"] {
            assert!(lemma_R_check(&idx(s)).unwrap(), "{s}");
        }
        assert!(lemma_R_check(&idx("3")).is_err());
    }

    #[test]
    fn r_lemma_exhaustive() {
        for index in Index::all_up_to_weight(8) {
            if (2..=4).contains(&index.depth()) {
                assert!(lemma_R_check(&index).unwrap(), "({index})");
            }
        }
    }

    #[test]
    fn combination_evaluation() {
        let p = Prime::new(7).unwrap();
        assert_eq!(evaluate_combination(&star_expand(&idx("1,2")), Variant::Zeta2, p).unwrap(), 2);
        assert_eq!(evaluate_combination(&IndexCombination::zero(), Variant::Zeta, p).unwrap(), 0);
        let half = IndexCombination::term(idx("1"), Rational::new(BigInt::from(1), BigInt::from(7)));
        assert!(matches!(evaluate_combination(&half, Variant::Zeta2, p), Err(Error::DenominatorVanishes { .. })));
        assert!(evaluate_combination(&half, Variant::Euler, p).is_err());
    }

    #[test]
    fn stuffle_compatible_with_evaluation() {
        let primes = sieve_primes(5, 60).unwrap();
        let all = Index::all_up_to_weight(6);
        for a in &all {
            for b in &all {
                if a.weight() + b.weight() > 6 {
                    continue;
                }
                let prod = &single(&a.to_string()) * &single(&b.to_string());
                for &p in &primes {
                    for v in [Variant::Zeta, Variant::Zeta2] {
                        let lhs = mul_mod(
                            evaluate(v, a, None, p).unwrap(),
                            evaluate(v, b, None, p).unwrap(),
                            p.get(),
                        );
                        assert_eq!(lhs, evaluate_combination(&prod, v, p).unwrap(), "{v} ({a})*({b}) p={p}");
                    }
                }
            }
        }
    }

    #[test]
    fn star_expansion_matches_star_values() {
        for p in sieve_primes(5, 100).unwrap() {
            for index in Index::all_up_to_weight(6) {
                assert_eq!(
                    eval_zeta2_star(&index, p),
                    evaluate_combination(&star_expand(&index), Variant::Zeta2, p).unwrap()
                );
            }
        }
    }

    fn arb_comb() -> impl Strategy<Value = IndexCombination> {
        let index = (1u32..=3).prop_flat_map(|w| {
            let all = Index::compositions(w);
            (0..all.len()).prop_map(move |i| all[i].clone())
        });
        proptest::collection::vec((index, -3i64..=3), 0..3).prop_map(|terms| {
            let mut c = IndexCombination::zero();
            for (i, n) in terms {
                c.add_term(i, int(n));
            }
            c
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn stuffle_commutative_associative(a in arb_comb(), b in arb_comb(), c in arb_comb()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn no_zero_coefficients(a in arb_comb(), b in arb_comb()) {
            let s = &(&a * &b) - &(&b * &a);
            prop_assert!(s.is_zero());
            prop_assert!((&a - &a).is_zero());
        }
    }
}
