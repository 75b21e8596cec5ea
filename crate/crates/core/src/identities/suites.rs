use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{binom, coeff_C, Annotation, CaseRow, Report, Suite, SuiteParams};
use crate::bernoulli::{Zk, L2};
use crate::evaluator::{eval_even_form, eval_odd_form, Index, ResidueCache, Variant};
use crate::harmonic::{
    antipode_sum, evaluate_combination_with, gen_R, lemma_R_sides, lemma_g_sides, IndexCombination,
};
use crate::modmath::{
    add_mod, crt_combine, mod_inv, mod_pow, mul_mod, neg_mod, rat_reconstruct, rational_mod, sub_mod, Prime,
    Rational,
};
use crate::{Error, Result};

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn idx(v: Vec<u32>) -> Index {
    Index::from_vec_unchecked(v)
}

fn sign(negative: bool, v: u64, m: u64) -> u64 {
    if negative {
        neg_mod(v, m)
    } else {
        v
    }
}

struct Values<'a>(&'a ResidueCache);

impl Values<'_> {
    fn z(&self, i: &Index, p: Prime) -> Result<u64> {
        self.0.get_or_compute(Variant::Zeta, i, None, p)
    }
    fn z2(&self, i: &Index, p: Prime) -> Result<u64> {
        self.0.get_or_compute(Variant::Zeta2, i, None, p)
    }
    fn z2s(&self, i: &Index, p: Prime) -> Result<u64> {
        self.0.get_or_compute(Variant::Zeta2Star, i, None, p)
    }
    fn comb(&self, variant: Variant, c: &IndexCombination, p: Prime) -> Result<u64> {
        evaluate_combination_with(c, p, |i| self.0.get_or_compute(variant, i, None, p))
    }
}

/// Fans cases out over primes `p > weight + 2`; rows come back in case order, then prime order.
fn run_cases<C: Sync>(
    cases: &[C],
    primes: &[Prime],
    label: impl Fn(&C) -> String + Sync,
    weight: impl Fn(&C) -> u32 + Sync,
    check: impl Fn(&C, Prime) -> Result<(u64, u64)> + Sync,
) -> Result<Vec<CaseRow>> {
    let weight = &weight;
    let jobs: Vec<(usize, Prime)> = cases
        .iter()
        .enumerate()
        .flat_map(|(ci, c)| {
            let w = weight(c) as u64;
            primes.iter().filter(move |p| p.get() > w + 2).map(move |&p| (ci, p))
        })
        .collect();
    jobs.par_iter()
        .map(|&(ci, p)| {
            let (lhs, rhs) = check(&cases[ci], p)?;
            Ok(CaseRow::numeric(label(&cases[ci]), p.get(), lhs, rhs))
        })
        .collect()
}

fn paren(i: &Index) -> String {
    format!("({i})")
}

/// `zeta2(1) = -2 L(2)` and `zeta2(k) = (2 - 2^k) Z(k)` for `2 <= k <= kmax`.
pub fn verify_depth_one(kmax: u32, primes: &[Prime], cache: &ResidueCache) -> Result<Report> {
    let v = Values(cache);
    let ks: Vec<u32> = (1..=kmax).collect();
    let rows = run_cases(&ks, primes, |k| format!("k={k}"), |&k| k, |&k, p| {
        let m = p.get();
        let lhs = v.z2(&idx(vec![k]), p)?;
        let rhs = if k == 1 {
            neg_mod(mul_mod(2, L2(p), m), m)
        } else {
            mul_mod(sub_mod(2, mod_pow(2, k as u64, m), m), Zk(k as u64, p)?, m)
        };
        Ok((lhs, rhs))
    })?;
    Ok(Report::new("depth1", rows))
}

/// Odd-weight depth-two closed form in terms of `Z(k)`.
pub fn verify_depth_two(kmax: u32, primes: &[Prime], cache: &ResidueCache) -> Result<Report> {
    let v = Values(cache);
    let pairs: Vec<Index> = (2..=kmax)
        .filter(|k| k % 2 == 1)
        .flat_map(|k| Index::compositions_with_depth(k, 2))
        .collect();
    let rows = run_cases(&pairs, primes, paren, Index::weight, |i, p| {
        let (k1, k2) = (i.entries()[0] as i64, i.entries()[1] as i64);
        let k = k1 + k2;
        let b = binom(k, k2) * if k2 % 2 == 0 { 1 } else { -1 };
        let coeff = (Rational::from_integer(b) + q(2).pow(k as i32) - q(2)) / q(2);
        let rhs = mul_mod(rational_mod(&coeff, p)?, Zk(k as u64, p)?, p.get());
        Ok((v.z2(i, p)?, rhs))
    })?;
    Ok(Report::new("depth2", rows))
}

/// `zeta(k_1..k_r) = sum_i (-1)^(k_{i+1}+..+k_r) zeta2(k_1..k_i) zeta2(k_r..k_{i+1})`.
pub fn verify_key_identity(wmax: u32, primes: &[Prime], cache: &ResidueCache) -> Result<Report> {
    let v = Values(cache);
    let indices = Index::all_up_to_weight(wmax);
    let rows = run_cases(&indices, primes, paren, Index::weight, |index, p| {
        let m = p.get();
        let mut rhs = 0;
        for i in 0..=index.depth() {
            let tail = index.suffix(i);
            let term = mul_mod(v.z2(&index.prefix(i), p)?, v.z2(&tail.reversed(), p)?, m);
            rhs = add_mod(rhs, sign(tail.weight() % 2 == 1, term, m), m);
        }
        Ok((v.z(index, p)?, rhs))
    })?;
    Ok(Report::new("key", rows))
}

/// `zeta2(k) = (-1)^(r+k) sum_i (-1)^i zeta(k_i..k_1) zeta2star(k_{i+1}..k_r)`.
pub fn verify_parity(wmax: u32, primes: &[Prime], cache: &ResidueCache) -> Result<Report> {
    let v = Values(cache);
    let indices = Index::all_up_to_weight(wmax);
    let rows = run_cases(&indices, primes, paren, Index::weight, |index, p| {
        let m = p.get();
        let mut sum = 0;
        for i in 0..=index.depth() {
            let term = mul_mod(v.z(&index.prefix(i).reversed(), p)?, v.z2s(&index.suffix(i), p)?, m);
            sum = add_mod(sum, sign(i % 2 == 1, term, m), m);
        }
        let rhs = sign((index.depth() as u32 + index.weight()) % 2 == 1, sum, m);
        Ok((v.z2(index, p)?, rhs))
    })?;
    Ok(Report::new("parity", rows))
}

/// The antipode identity: symbolic zero in the stuffle algebra and numeric zero mod `p`.
pub fn verify_antipode(wmax: u32, dmax: usize, primes: &[Prime], cache: &ResidueCache) -> Result<Report> {
    let v = Values(cache);
    let indices: Vec<Index> = Index::all_up_to_weight(wmax).into_iter().filter(|i| i.depth() <= dmax).collect();
    let mut rows: Vec<CaseRow> = indices
        .par_iter()
        .map(|i| CaseRow::symbolic(format!("symbolic {}", paren(i)), antipode_sum(i).to_string(), "0".into()))
        .collect();
    rows.extend(run_cases(&indices, primes, paren, Index::weight, |index, p| {
        let m = p.get();
        let mut sum = 0;
        for j in 0..=index.depth() {
            let term = mul_mod(v.z2(&index.prefix(j).reversed(), p)?, v.z2s(&index.suffix(j), p)?, m);
            sum = add_mod(sum, sign(j % 2 == 1, term, m), m);
        }
        Ok((sum, 0))
    })?);
    Ok(Report::new("antipode", rows))
}

/// Both even-numerator and odd-numerator rewrites against `zeta2`.
pub fn verify_even_odd(wmax: u32, primes: &[Prime], cache: &ResidueCache) -> Result<Report> {
    let v = Values(cache);
    let cases: Vec<(bool, Index)> =
        Index::all_up_to_weight(wmax).into_iter().flat_map(|i| [(true, i.clone()), (false, i)]).collect();
    let rows = run_cases(
        &cases,
        primes,
        |(even, i)| format!("{} {}", if *even { "even" } else { "odd" }, paren(i)),
        |(_, i)| i.weight(),
        |(even, i), p| {
            let form = if *even { eval_even_form(i, p) } else { eval_odd_form(i, p) };
            Ok((form, v.z2(i, p)?))
        },
    )?;
    Ok(Report::new("evenodd", rows))
}

/// Depth two (odd weight) and depth three (even weight) consequences of the parity identity.
pub fn verify_low_depth_parity(wmax: u32, primes: &[Prime], cache: &ResidueCache) -> Result<Report> {
    let v = Values(cache);
    let mut cases = Vec::new();
    for k in 2..=wmax {
        if k % 2 == 1 {
            cases.extend(Index::compositions_with_depth(k, 2));
        } else {
            cases.extend(Index::compositions_with_depth(k, 3));
        }
    }
    let rows = run_cases(
        &cases,
        primes,
        |i| format!("{} {}", if i.depth() == 2 { "pair" } else { "triple" }, paren(i)),
        Index::weight,
        |i, p| {
            let m = p.get();
            let half = mod_inv(2, p)?;
            let e = i.entries();
            let rhs = if let [k1, k2] = *e {
                let s = add_mod(v.z2(&idx(vec![k1 + k2]), p)?, v.z(&idx(vec![k2, k1]), p)?, m);
                neg_mod(mul_mod(half, s, m), m)
            } else {
                let [k1, k2, k3] = *e else { unreachable!() };
                let mut s = v.z(i, p)?;
                s = sub_mod(s, v.z2(&idx(vec![k1 + k2, k3]), p)?, m);
                s = sub_mod(s, v.z2(&idx(vec![k1, k2 + k3]), p)?, m);
                s = add_mod(s, mul_mod(v.z(&idx(vec![k1, k2]), p)?, v.z2(&idx(vec![k3]), p)?, m), m);
                mul_mod(half, s, m)
            };
            Ok((v.z2(i, p)?, rhs))
        },
    )?;
    Ok(Report::new("lowdepth", rows))
}

fn all_odd_sum(k: u32, r: usize, min_entry: u32) -> IndexCombination {
    let mut c = IndexCombination::zero();
    for i in Index::compositions_with_depth(k, r) {
        if i.entries().iter().all(|&x| x % 2 == 1 && x >= min_entry) {
            c.add_term(i, Rational::one());
        }
    }
    c
}

fn all_sum(k: u32, r: usize, min_entry: u32) -> IndexCombination {
    let mut c = IndexCombination::zero();
    for i in Index::compositions_with_depth(k, r) {
        if i.entries().iter().all(|&x| x >= min_entry) {
            c.add_term(i, Rational::one());
        }
    }
    c
}

/// Both sides of the `S(k, r)` (or, when `restricted`, `S_1(k, r)`) sum formula
/// as combinations of level-two symbols.
pub fn sum_formula_sides(k: u32, r: usize, restricted: bool) -> (IndexCombination, IndexCombination) {
    let min_entry = if restricted { 2 } else { 1 };
    let lhs = all_sum(k, r, min_entry);
    let mut rhs = IndexCombination::zero();
    let (k, ri) = (k as i64, r as i64);
    for i in 1..=ri {
        if (i - k) % 2 != 0 {
            continue;
        }
        let top = if restricted { (k - 3 * i) / 2 } else { (k - i) / 2 };
        let b = binom(top, ri - i);
        if b.is_zero() {
            continue;
        }
        let basis = all_odd_sum(k as u32, i as usize, if restricted { 3 } else { 1 });
        rhs = &rhs + &basis.scale(&Rational::from_integer(b));
    }
    if (k + ri) % 2 != 0 {
        rhs = -&rhs;
    }
    (lhs, rhs)
}

/// `S(k, r)` and `S_1(k, r)` for `1 <= r <= k <= kmax`.
pub fn verify_sum_formula(kmax: u32, primes: &[Prime], cache: &ResidueCache) -> Result<Report> {
    let v = Values(cache);
    let mut cases = Vec::new();
    for k in 1..=kmax {
        for r in 1..=k as usize {
            for restricted in [false, true] {
                let (l, rr) = sum_formula_sides(k, r, restricted);
                cases.push((k, r, restricted, l, rr));
            }
        }
    }
    let rows = run_cases(
        &cases,
        primes,
        |(k, r, restricted, ..)| format!("{}({k},{r})", if *restricted { "S1" } else { "S" }),
        |c| c.0,
        |(_, _, _, l, r), p| Ok((v.comb(Variant::Zeta2, l, p)?, v.comb(Variant::Zeta2, r, p)?)),
    )?;
    Ok(Report::new("sumformula", rows))
}

/// `(2,..,2,1,2,..,2)` with the 1 in position `i` of `r`.
pub fn twos_with_one(r: usize, i: usize) -> Index {
    let mut e = vec![2u32; r];
    e[i - 1] = 1;
    idx(e)
}

/// Coefficient `(-1)^(r-1) binom(2r-1, 2i-1) / 2^(2r-2)` of `zeta2(2r-1)`.
pub fn twos_with_one_coefficient(r: usize, i: usize) -> Rational {
    let r = r as i64;
    let i = i as i64;
    let c = Rational::new(binom(2 * r - 1, 2 * i - 1), BigInt::from(2).pow(2 * r as u32 - 2));
    if (r - 1) % 2 == 1 {
        -c
    } else {
        c
    }
}

/// Sum of all indices of weight `k`, depth `r`, with entry `i` odd and every other entry even.
pub fn one_odd_pattern(k: u32, r: usize, i: usize) -> IndexCombination {
    let mut c = IndexCombination::zero();
    for index in Index::compositions_with_depth(k, r) {
        let ok = index.entries().iter().enumerate().all(|(j, &x)| (x % 2 == 1) == (j + 1 == i));
        if ok {
            c.add_term(index, Rational::one());
        }
    }
    c
}

/// Result of reconstructing `c` in `pattern = c * zeta2(k)` from one prime set.
#[derive(Clone, Debug, PartialEq)]
pub struct Reconstruction {
    pub constant: Option<Rational>,
    pub primes: Vec<Prime>,
}

/// CRT-lifts the per-prime ratios `pattern / zeta2(k)` and reconstructs a rational.
/// Primes where `zeta2(k)` vanishes carry no information and are skipped.
pub fn reconstruct_ratio(
    pattern: &IndexCombination,
    k: u32,
    primes: &[Prime],
    cache: &ResidueCache,
) -> Result<Reconstruction> {
    let v = Values(cache);
    let single = idx(vec![k]);
    let mut pairs = Vec::new();
    for &p in primes {
        let denom = v.z2(&single, p)?;
        if denom == 0 {
            continue;
        }
        let num = v.comb(Variant::Zeta2, pattern, p)?;
        pairs.push((mul_mod(num, mod_inv(denom, p)?, p.get()), p));
    }
    let used: Vec<Prime> = pairs.iter().map(|&(_, p)| p).collect();
    if pairs.is_empty() {
        return Ok(Reconstruction { constant: None, primes: used });
    }
    let (r, m) = crt_combine(&pairs)?;
    Ok(Reconstruction { constant: rat_reconstruct(&r, &m), primes: used })
}

/// Splits a prime list into two disjoint halves by alternating positions.
pub fn alternate_split(primes: &[Prime]) -> (Vec<Prime>, Vec<Prime>) {
    let a = primes.iter().step_by(2).copied().collect();
    let b = primes.iter().skip(1).step_by(2).copied().collect();
    (a, b)
}

fn fmt_primes(ps: &[Prime]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

/// The explicit `(2,..,1,..,2)` formula for `1 <= i <= r <= rmax`, plus
/// reconstruction of the constant `c` for every one-odd pattern of weight
/// `<= pattern_wmax`, checked for agreement across two disjoint prime sets.
pub fn verify_one_odd(rmax: usize, pattern_wmax: u32, primes: &[Prime], cache: &ResidueCache) -> Result<Report> {
    let v = Values(cache);
    let special: Vec<(usize, usize)> = (1..=rmax).flat_map(|r| (1..=r).map(move |i| (r, i))).collect();
    let mut rows = run_cases(
        &special,
        primes,
        |&(r, i)| format!("special r={r} i={i} {}", paren(&twos_with_one(r, i))),
        |&(r, _)| 2 * r as u32 - 1,
        |&(r, i), p| {
            let c = rational_mod(&twos_with_one_coefficient(r, i), p)?;
            let rhs = mul_mod(c, v.z2(&idx(vec![2 * r as u32 - 1]), p)?, p.get());
            Ok((v.z2(&twos_with_one(r, i), p)?, rhs))
        },
    )?;

    let mut patterns = Vec::new();
    for k in (1..=pattern_wmax).filter(|k| k % 2 == 1) {
        for r in 1..=((k as usize - 1) / 2 + 1) {
            for i in 1..=r {
                let pat = one_odd_pattern(k, r, i);
                if !pat.is_zero() {
                    patterns.push((k, r, i, pat));
                }
            }
        }
    }
    let mut annotations = Vec::new();
    for (k, r, i, pat) in &patterns {
        let label = format!("c k={k} r={r} i={i}");
        let eligible: Vec<Prime> = primes.iter().copied().filter(|p| p.get() > *k as u64 + 2).collect();
        let (set_a, set_b) = alternate_split(&eligible);
        let rec_a = reconstruct_ratio(pat, *k, &set_a, cache)?;
        let rec_b = reconstruct_ratio(pat, *k, &set_b, cache)?;
        let show = |c: &Option<Rational>| c.as_ref().map(|c| c.to_string()).unwrap_or_else(|| "reconstruction failed".into());
        annotations.push(Annotation { case: label.clone(), key: "primes_a".into(), value: fmt_primes(&rec_a.primes) });
        annotations.push(Annotation { case: label.clone(), key: "primes_b".into(), value: fmt_primes(&rec_b.primes) });
        annotations.push(Annotation { case: label.clone(), key: "c".into(), value: show(&rec_a.constant) });
        let mut stable = CaseRow::symbolic(format!("{label} stable"), show(&rec_a.constant), show(&rec_b.constant));
        stable.pass = stable.pass && rec_a.constant.is_some();
        rows.push(stable);
        // each constant must hold on the other half
        for (constant, held_out) in [(&rec_a.constant, &set_b), (&rec_b.constant, &set_a)] {
            let Some(c) = constant else { continue };
            let checks: Vec<(Prime, u64, u64)> = held_out
                .par_iter()
                .map(|&p| -> Result<_> {
                    let lhs = v.comb(Variant::Zeta2, pat, p)?;
                    let rhs = match rational_mod(c, p) {
                        Ok(cm) => mul_mod(cm, v.z2(&idx(vec![*k]), p)?, p.get()),
                        Err(Error::DenominatorVanishes { .. }) => u64::MAX,
                        Err(e) => return Err(e),
                    };
                    Ok((p, lhs, rhs))
                })
                .collect::<Result<_>>()?;
            for (p, lhs, rhs) in checks {
                let mut row = CaseRow::numeric(format!("{label} held-out"), p.get(), lhs, rhs);
                if rhs == u64::MAX {
                    row.rhs = "undefined".into();
                    row.pass = false;
                }
                rows.push(row);
            }
        }
    }
    rows.sort_by_key(|row| row_order(&row.case, &patterns));
    Ok(Report::new("oneodd", rows).with_annotations(annotations))
}

// keeps special-case rows first, then each pattern's rows together
fn row_order(case: &str, patterns: &[(u32, usize, usize, IndexCombination)]) -> usize {
    if case.starts_with("special") {
        return 0;
    }
    patterns
        .iter()
        .position(|(k, r, i, _)| case.starts_with(&format!("c k={k} r={r} i={i} ")))
        .map(|n| n + 1)
        .unwrap_or(usize::MAX)
}

/// Whether the level-two weighted sum has a closed form: all entries but the last even, the last odd.
pub fn weighted_level2_applies(index: &Index) -> bool {
    let e = index.entries();
    match e.split_last() {
        Some((last, head)) => last % 2 == 1 && head.iter().all(|x| x % 2 == 0),
        None => false,
    }
}

/// Default case lists for the permutation-weighted sums.
pub fn weighted_default_indices(level: u8) -> Vec<Index> {
    match level {
        1 => Index::all_up_to_weight(8).into_iter().filter(|i| i.depth() <= 4).collect(),
        _ => Index::all_up_to_weight(9)
            .into_iter()
            .filter(|i| i.depth() <= 4 && weighted_level2_applies(i))
            .collect(),
    }
}

fn permutations_of(items: &[u32]) -> Vec<Vec<u32>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for n in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(n);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// `sum_tau C(k_tau(1), .., k_tau(r-1), k_r)` over permutations of the first `r - 1` entries.
pub fn permuted_c_sum(index: &Index) -> Rational {
    let e = index.entries();
    let Some((&last, head)) = e.split_last() else { return q(0) };
    permutations_of(head)
        .into_iter()
        .map(|mut w| {
            w.push(last);
            coeff_C(&idx(w))
        })
        .fold(q(0), |a, b| a + b)
}

/// `sum_sigma (r+1-2 sigma^-1(r)) zeta(k_sigma) = (-1)^r c sum_tau C(..) Z(k)` with
/// `c = 2` at level one and `c = 1` at level two.
pub fn verify_weighted_perm(level: u8, indices: &[Index], primes: &[Prime], cache: &ResidueCache) -> Result<Report> {
    if !(1..=2).contains(&level) {
        return Err(Error::Precondition(format!("level must be 1 or 2, got {level}")));
    }
    if level == 2 {
        if let Some(bad) = indices.iter().find(|i| !weighted_level2_applies(i)) {
            return Err(Error::Precondition(format!(
                "level-2 weighted sum needs even entries followed by one odd entry, got ({bad})"
            )));
        }
    }
    if let Some(empty) = indices.iter().find(|i| i.is_empty()) {
        return Err(Error::Precondition(format!("index must be non-empty, got ({empty})")));
    }
    let v = Values(cache);
    let variant = if level == 1 { Variant::Zeta } else { Variant::Zeta2 };
    let cases: Vec<(Index, IndexCombination, Rational)> = indices
        .iter()
        .map(|i| {
            let factor = if level == 1 { 2 } else { 1 };
            let s = if i.depth() % 2 == 1 { -factor } else { factor };
            (i.clone(), gen_R(i), permuted_c_sum(i) * q(s))
        })
        .collect();
    let rows = run_cases(&cases, primes, |c| paren(&c.0), |c| c.0.weight(), |(i, r, coeff), p| {
        let lhs = v.comb(variant, r, p)?;
        let rhs = if coeff.is_zero() {
            0
        } else {
            mul_mod(rational_mod(coeff, p)?, Zk(i.weight() as u64, p)?, p.get())
        };
        Ok((lhs, rhs))
    })?;
    Ok(Report::new(if level == 1 { "weighted1" } else { "weighted2" }, rows))
}

/// The signed sum over indices in `{1,2}^r` with `a` twos, coefficient
/// `(-1)^(#twos in odd positions) 2^a - 1`.
pub fn twos_combination(r: usize, a: usize) -> IndexCombination {
    let mut c = IndexCombination::zero();
    for mask in 0u32..1 << r {
        if mask.count_ones() as usize != a {
            continue;
        }
        let e: Vec<u32> = (0..r).map(|j| if mask >> j & 1 == 1 { 2 } else { 1 }).collect();
        let odd_twos = e.iter().enumerate().filter(|(j, &x)| x == 2 && j % 2 == 0).count();
        let s = if odd_twos % 2 == 1 { -1 } else { 1 };
        c.add_term(idx(e), q(s * (1i64 << a) - 1));
    }
    c
}

/// Checks that [`twos_combination`] vanishes for every `r <= rmax`.
pub fn verify_twos_vanishing(rmax: usize, primes: &[Prime], cache: &ResidueCache) -> Result<Report> {
    let v = Values(cache);
    let cases: Vec<(usize, usize, IndexCombination)> =
        (1..=rmax).flat_map(|r| (0..=r).map(move |a| (r, a, twos_combination(r, a)))).collect();
    let rows = run_cases(
        &cases,
        primes,
        |(r, a, _)| format!("r={r} a={a}"),
        |(r, a, _)| (r + a) as u32,
        |(_, _, c), p| Ok((v.comb(Variant::Zeta2, c, p)?, 0)),
    )?;
    Ok(Report::new("twos", rows))
}

/// Exact checks of the `g`/`g_1` lemma for `k <= kmax` and the `R` lemma for
/// depth 2..=4, weight `<= wmax`.
pub fn verify_lemmas(kmax: u32, wmax: u32) -> Report {
    let mut cases = Vec::new();
    for k in 1..=kmax {
        for r in 1..=k as usize {
            for a in 0..=r {
                for restricted in [false, true] {
                    cases.push((k, r, a, restricted));
                }
            }
        }
    }
    let mut rows: Vec<CaseRow> = cases
        .par_iter()
        .map(|&(k, r, a, restricted)| {
            let (l, rr) = lemma_g_sides(k, r, a, restricted);
            let name = if restricted { "g1" } else { "g" };
            CaseRow::symbolic(format!("{name} k={k} r={r} a={a}"), (&l - &rr).to_string(), "0".into())
        })
        .collect();
    let r_cases: Vec<Index> =
        Index::all_up_to_weight(wmax).into_iter().filter(|i| (2..=4).contains(&i.depth())).collect();
    rows.extend(r_cases.par_iter().map(|i| {
        let (l, r) = lemma_R_sides(i).expect("depth >= 2");
        CaseRow::symbolic(format!("R {}", paren(i)), (&l - &r).to_string(), "0".into())
    }).collect::<Vec<_>>());
    Report::new("lemmas", rows)
}

/// Runs one suite with per-suite default bounds where `params` leaves them open.
pub fn run_suite(suite: Suite, params: SuiteParams, primes: &[Prime], cache: &ResidueCache) -> Result<Report> {
    let SuiteParams { kmax, wmax, rmax, dmax } = params;
    match suite {
        Suite::Key => verify_key_identity(wmax.unwrap_or(7), primes, cache),
        Suite::Parity => verify_parity(wmax.unwrap_or(7), primes, cache),
        Suite::Antipode => verify_antipode(wmax.unwrap_or(8), dmax.unwrap_or(5), primes, cache),
        Suite::EvenOdd => verify_even_odd(wmax.unwrap_or(6), primes, cache),
        Suite::DepthOne => verify_depth_one(kmax.unwrap_or(9), primes, cache),
        Suite::DepthTwo => verify_depth_two(kmax.unwrap_or(9), primes, cache),
        Suite::LowDepth => verify_low_depth_parity(wmax.unwrap_or(8), primes, cache),
        Suite::SumFormula => verify_sum_formula(kmax.unwrap_or(10), primes, cache),
        Suite::OneOdd => verify_one_odd(rmax.unwrap_or(6), wmax.unwrap_or(9), primes, cache),
        Suite::Weighted1 | Suite::Weighted2 => {
            let level = if suite == Suite::Weighted1 { 1 } else { 2 };
            let w = wmax.unwrap_or(if level == 1 { 8 } else { 9 });
            let d = dmax.unwrap_or(4);
            let indices: Vec<Index> = weighted_default_indices(level)
                .into_iter()
                .chain(Index::all_up_to_weight(w).into_iter().filter(|i| level == 1 || weighted_level2_applies(i)))
                .filter(|i| i.weight() <= w && i.depth() <= d)
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            verify_weighted_perm(level, &indices, primes, cache)
        }
        Suite::Twos => verify_twos_vanishing(rmax.unwrap_or(8), primes, cache),
        Suite::Lemmas => Ok(verify_lemmas(kmax.unwrap_or(10), wmax.unwrap_or(8))),
    }
}
