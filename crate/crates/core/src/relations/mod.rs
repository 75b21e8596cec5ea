//! Integer relations among residue columns, found with exact lattice reduction.
//!
//! A relation `sum c_i v_i = 0` is sought over a training prime set, then
//! re-checked on held-out primes. "Verified" means it holds on every prime
//! that was checked; no finite computation proves a relation.

mod lattice;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use lattice::{max_norm, Lattice};

use crate::evaluator::{Index, ResidueCache, SignVector, Variant};
use crate::modmath::{mul_mod, Prime, Rational};
use crate::{Error, Result};

/// Default bound on `max |c_i|` for reported relations.
pub const DEFAULT_HEIGHT: u64 = 1_000_000;

/// One column: a variant, an index and (for Euler sums) a sign vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Column {
    pub variant: Variant,
    pub index: Index,
    pub signs: Option<SignVector>,
}

impl Column {
    pub fn new(variant: Variant, index: Index) -> Self {
        Column { variant, index, signs: None }
    }

    pub fn euler(index: Index, signs: SignVector) -> Self {
        Column { variant: Variant::Euler, index, signs: Some(signs) }
    }

    pub fn weight(&self) -> u32 {
        self.index.weight()
    }

    pub fn value(&self, p: Prime, cache: &ResidueCache) -> Result<u64> {
        cache.get_or_compute(self.variant, &self.index, self.signs.as_ref(), p)
    }
}

impl Ord for Column {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index
            .cmp(&other.index)
            .then_with(|| self.variant.name().cmp(other.variant.name()))
            .then_with(|| self.signs.as_ref().map(|s| s.to_string()).cmp(&other.signs.as_ref().map(|s| s.to_string())))
    }
}

impl PartialOrd for Column {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.variant, self.index)?;
        if let Some(s) = &self.signs {
            write!(f, ":{s}")?;
        }
        Ok(())
    }
}

/// Parses `[variant:]index[:signs]`; the variant defaults to `zeta2`.
impl FromStr for Column {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let (variant, index, signs) = match parts.as_slice() {
            [index] => (Variant::Zeta2, *index, None),
            [v, index] => (v.parse()?, *index, None),
            [v, index, signs] => (v.parse()?, *index, Some(*signs)),
            _ => return Err(Error::InvalidIndex(format!("cannot parse column {s:?}"))),
        };
        let index: Index = index.parse()?;
        let signs = signs.map(str::parse::<SignVector>).transpose()?;
        match (variant.needs_signs(), signs) {
            (true, Some(s)) if s.len() == index.depth() => Ok(Column::euler(index, s)),
            (true, Some(_)) => Err(Error::VariantSigns { variant, problem: "sign vector length differs from depth" }),
            (true, None) => Err(Error::VariantSigns { variant, problem: "signs are required" }),
            (false, Some(_)) => Err(Error::VariantSigns { variant, problem: "signs are not allowed" }),
            (false, None) => Ok(Column::new(variant, index)),
        }
    }
}

impl TryFrom<String> for Column {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Column> for String {
    fn from(c: Column) -> String {
        c.to_string()
    }
}

/// Residues of several columns over a prime list; `cells[row][col]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueMatrix {
    pub columns: Vec<Column>,
    pub primes: Vec<Prime>,
    pub cells: Vec<Vec<u64>>,
}

impl ValueMatrix {
    pub fn row(&self, p: Prime) -> Option<&[u64]> {
        self.primes.iter().position(|&q| q == p).map(|i| self.cells[i].as_slice())
    }
}

/// Fills a matrix with columns in canonical order. Primes `p <= w + 2`
/// (for the largest weight `w`) are rejected.
pub fn build_matrix(columns: &[Column], primes: &[Prime], cache: &ResidueCache) -> Result<ValueMatrix> {
    if columns.is_empty() {
        return Err(Error::Precondition("no columns".into()));
    }
    if primes.is_empty() {
        return Err(Error::Precondition("prime list is empty".into()));
    }
    let wmax = columns.iter().map(Column::weight).max().unwrap_or(0) as u64;
    if let Some(p) = primes.iter().find(|p| p.get() <= wmax + 2) {
        return Err(Error::Precondition(format!("prime {p} does not exceed weight {wmax} + 2")));
    }
    let mut columns = columns.to_vec();
    columns.sort();
    let mut primes = primes.to_vec();
    primes.sort();
    primes.dedup();
    let cells = primes
        .par_iter()
        .map(|&p| columns.iter().map(|c| c.value(p, cache)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    cache.flush()?;
    Ok(ValueMatrix { columns, primes, cells })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Candidate,
    Verified,
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCandidate {
    pub coefficients: Vec<i64>,
    pub height: u64,
    pub verified_on: Vec<Prime>,
    pub status: Status,
}

impl RelationCandidate {
    /// `sum c_i v_i mod p` for one matrix row.
    pub fn evaluate(&self, row: &[u64], p: Prime) -> u64 {
        let m = p.get();
        self.coefficients.iter().zip(row).fold(0, |acc, (&c, &v)| {
            let c = c.rem_euclid(m as i64) as u64;
            (acc + mul_mod(c, v, m)) % m
        })
    }
}

/// Deterministic split: every third prime is held out.
pub fn split_primes(primes: &[Prime]) -> (Vec<Prime>, Vec<Prime>) {
    let mut train = Vec::new();
    let mut held = Vec::new();
    for (i, &p) in primes.iter().enumerate() {
        if i % 3 == 2 {
            held.push(p);
        } else {
            train.push(p);
        }
    }
    (train, held)
}

/// Output of a relation search, ready for JSON export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSearch {
    pub columns: Vec<Column>,
    pub training: Vec<Prime>,
    pub held_out: Vec<Prime>,
    pub height_bound: u64,
    pub candidates: Vec<RelationCandidate>,
}

impl RelationSearch {
    pub fn verified(&self) -> impl Iterator<Item = &RelationCandidate> {
        self.candidates.iter().filter(|c| c.status == Status::Verified)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("relations serialize")
    }
}

fn normalize(v: &[BigInt]) -> Option<Vec<i64>> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return None;
    }
    let lead_negative = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    v.iter()
        .map(|x| {
            let y = x / &g;
            (if lead_negative { -y } else { y }).to_i64()
        })
        .collect()
}

/// Searches the lattice of integer relations holding at every training prime of
/// `matrix`, reduces it with LLL (`delta = 0.99`) and returns the reduced vectors
/// of height at most `height_bound`, each checked on the held-out primes.
pub fn find_relations(matrix: &ValueMatrix, height_bound: u64) -> RelationSearch {
    let (training, held_out) = split_primes(&matrix.primes);
    let n = matrix.columns.len();
    let mut lattice = Lattice::standard(n);
    for &p in &training {
        if lattice.restrict(matrix.row(p).expect("row"), p) {
            lattice.lll(99, 100);
        }
    }
    let bound = BigInt::from(height_bound);
    let mut candidates: Vec<RelationCandidate> = lattice
        .rows()
        .iter()
        .filter(|v| max_norm(v) <= bound)
        .filter_map(|v| normalize(v))
        .map(|coefficients| {
            let height = coefficients.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0);
            RelationCandidate { coefficients, height, verified_on: Vec::new(), status: Status::Candidate }
        })
        .collect();
    candidates.par_iter_mut().for_each(|c| {
        let holds = |p: &Prime| c.evaluate(matrix.row(*p).expect("row"), *p) == 0;
        if !training.iter().all(holds) {
            c.status = Status::Refuted;
        } else if !held_out.is_empty() {
            c.status = if held_out.iter().all(holds) { Status::Verified } else { Status::Refuted };
            if c.status == Status::Verified {
                c.verified_on = held_out.clone();
            }
        }
    });
    candidates.sort_by(|a, b| a.height.cmp(&b.height).then_with(|| a.coefficients.cmp(&b.coefficients)));
    RelationSearch { columns: matrix.columns.clone(), training, held_out, height_bound, candidates }
}

/// The candidate list of [`find_relations`].
pub fn relation_lattice(matrix: &ValueMatrix, height_bound: u64) -> Vec<RelationCandidate> {
    find_relations(matrix, height_bound).candidates
}

/// Writes `target` as a rational combination of `basis`, from a relation with
/// nonzero target coefficient. `Ok(None)` when no verified relation exists.
pub fn express_in_basis(
    target: &Column,
    basis: &[Column],
    primes: &[Prime],
    height_bound: u64,
    cache: &ResidueCache,
) -> Result<Option<Vec<Rational>>> {
    if basis.contains(target) {
        return Err(Error::Precondition(format!("target {target} is in the basis")));
    }
    let mut columns = vec![target.clone()];
    columns.extend(basis.iter().cloned());
    let matrix = build_matrix(&columns, primes, cache)?;
    let search = find_relations(&matrix, height_bound);
    let t = matrix.columns.iter().position(|c| c == target).expect("target column");
    let mut found: Option<Vec<Rational>> = None;
    for cand in search.verified().filter(|c| c.coefficients[t] != 0) {
        let ct = Rational::from_integer(BigInt::from(cand.coefficients[t]));
        let coeffs: Vec<Rational> = basis
            .iter()
            .map(|b| {
                let j = matrix.columns.iter().position(|c| c == b).expect("basis column");
                -Rational::from_integer(BigInt::from(cand.coefficients[j])) / &ct
            })
            .collect();
        match &found {
            Some(prev) if *prev != coeffs => {
                return Err(Error::Ambiguous(format!(
                    "{target} has two independent expressions; the basis is linearly dependent"
                )))
            }
            _ => found = Some(coeffs),
        }
    }
    Ok(found)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Stable,
    Unstable,
    NotFound,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::Stable => "stable",
            Stability::Unstable => "unstable",
            Stability::NotFound => "notfound",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expression {
    pub target: Column,
    pub basis: Vec<Column>,
    #[serde(with = "rational_list")]
    pub coefficients: Option<Vec<Rational>>,
    pub status: Stability,
    pub primes_a: Vec<Prime>,
    pub primes_b: Vec<Prime>,
}

impl Expression {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("expression serializes")
    }
}

// coefficients travel as "n/d" strings
mod rational_list {
    use super::Rational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        let strings: Option<Vec<String>> = v.as_ref().map(|v| v.iter().map(|x| x.to_string()).collect());
        serde::Serialize::serialize(&strings, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        let strings: Option<Vec<String>> = Option::deserialize(d)?;
        strings
            .map(|v| v.iter().map(|x| x.parse::<Rational>().map_err(D::Error::custom)).collect())
            .transpose()
    }
}

/// Runs [`express_in_basis`] on two disjoint halves of `primes` (alternating
/// positions) and accepts the result only if both halves agree.
pub fn express_stable(
    target: &Column,
    basis: &[Column],
    primes: &[Prime],
    height_bound: u64,
    cache: &ResidueCache,
) -> Result<Expression> {
    let (a, b) = crate::identities::alternate_split(primes);
    let ea = express_in_basis(target, basis, &a, height_bound, cache)?;
    let eb = express_in_basis(target, basis, &b, height_bound, cache)?;
    let (coefficients, status) = match (ea, eb) {
        (Some(x), Some(y)) if x == y => (Some(x), Stability::Stable),
        (None, None) => (None, Stability::NotFound),
        (x, _) => (x, Stability::Unstable),
    };
    Ok(Expression { target: target.clone(), basis: basis.to_vec(), coefficients, status, primes_a: a, primes_b: b })
}

/// Every column of a variant at weight `k`: all indices, and all sign vectors for Euler sums.
pub fn weight_columns(k: u32, variant: Variant) -> Vec<Column> {
    let mut out = Vec::new();
    for index in Index::compositions(k) {
        if variant.needs_signs() {
            for s in SignVector::all(index.depth()) {
                out.push(Column::euler(index.clone(), s));
            }
        } else {
            out.push(Column::new(variant, index));
        }
    }
    out.sort();
    out
}

/// `zeta2` columns of weight `k` with all entries odd and at least `min_entry`.
pub fn odd_basis(k: u32, min_entry: u32) -> Vec<Column> {
    Index::compositions(k)
        .into_iter()
        .filter(|i| i.entries().iter().all(|&x| x % 2 == 1 && x >= min_entry))
        .map(|i| Column::new(Variant::Zeta2, i))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionEstimate {
    pub weight: u32,
    pub variant: Variant,
    pub columns: usize,
    pub relations: usize,
    pub dimension: usize,
    /// `fib(k)` for level two and Euler sums, `dseq(k - 3)` for level one.
    pub conjectured: u64,
}

/// Counts independent verified relations among all weight-`k` columns and
/// reports `columns - relations`. Primes `p <= k + 2` are dropped.
pub fn dimension_estimate(
    k: u32,
    variant: Variant,
    primes: &[Prime],
    height_bound: u64,
    cache: &ResidueCache,
) -> Result<DimensionEstimate> {
    if k == 0 {
        return Err(Error::Precondition("weight must be at least 1".into()));
    }
    let primes: Vec<Prime> = primes.iter().copied().filter(|p| p.get() > k as u64 + 2).collect();
    let columns = weight_columns(k, variant);
    let matrix = build_matrix(&columns, &primes, cache)?;
    let search = find_relations(&matrix, height_bound);
    let relations = search.verified().count();
    let conjectured = match variant {
        Variant::Zeta => dseq(k as i64 - 3),
        _ => fib(k),
    };
    Ok(DimensionEstimate {
        weight: k,
        variant,
        columns: columns.len(),
        relations,
        dimension: columns.len() - relations,
        conjectured,
    })
}

/// `F_k` with `F_1 = F_2 = 1`; `F_0 = 0`.
pub fn fib(k: u32) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..k {
        (a, b) = (b, a + b);
    }
    a
}

/// `d_k = d_{k-2} + d_{k-3}` with `d_0 = 1, d_1 = 0, d_2 = 1`; zero for negative `k`.
pub fn dseq(k: i64) -> u64 {
    if k < 0 {
        return 0;
    }
    let mut d = vec![1u64, 0, 1];
    while d.len() <= k as usize {
        let n = d.len();
        d.push(d[n - 2] + d[n - 3]);
    }
    d[k as usize]
}
