use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A composition `(k_1, ..., k_r)` of positive integers.
///
/// The empty index is the unit (weight 0, value 1). Ordering is canonical:
/// by weight, then depth, then lexicographically by entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.iter().any(|&k| k == 0) {
            return Err(Error::InvalidIndex(format!("{entries:?}")));
        }
        Ok(Index(entries))
    }

    pub fn empty() -> Self {
        Index(Vec::new())
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<u32>) -> Self {
        debug_assert!(entries.iter().all(|&k| k > 0));
        Index(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Index {
        Index(self.0.iter().rev().copied().collect())
    }

    /// `(k_1, ..., k_i)`
    pub fn prefix(&self, i: usize) -> Index {
        Index(self.0[..i].to_vec())
    }

    /// `(k_{i+1}, ..., k_r)`
    pub fn suffix(&self, i: usize) -> Index {
        Index(self.0[i..].to_vec())
    }

    pub fn concat(&self, other: &Index) -> Index {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Index(v)
    }

    /// All `2^(k-1)` indices of weight `k >= 1`, in canonical order.
    pub fn compositions(weight: u32) -> Vec<Index> {
        let mut out: Vec<Index> = (1..=weight as usize)
            .flat_map(|depth| Index::compositions_with_depth(weight, depth))
            .collect();
        out.sort();
        out
    }

    /// Indices of the given weight and depth, lexicographically ordered.
    pub fn compositions_with_depth(weight: u32, depth: usize) -> Vec<Index> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(depth);
        fn rec(rest: u32, depth: usize, cur: &mut Vec<u32>, out: &mut Vec<Index>) {
            if depth == 0 {
                if rest == 0 {
                    out.push(Index(cur.clone()));
                }
                return;
            }
            if (rest as usize) < depth {
                return;
            }
            for k in 1..=rest - (depth as u32 - 1) {
                cur.push(k);
                rec(rest - k, depth - 1, cur, out);
                cur.pop();
            }
        }
        if depth == 0 {
            if weight == 0 {
                out.push(Index::empty());
            }
            return out;
        }
        rec(weight, depth, &mut cur, &mut out);
        out
    }

    /// All indices with weight at most `max_weight` (and at least 1).
    pub fn all_up_to_weight(max_weight: u32) -> Vec<Index> {
        (1..=max_weight).flat_map(Index::compositions).collect()
    }
}

impl Ord for Index {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.depth().cmp(&other.depth()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Index {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl FromStr for Index {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Index::empty());
        }
        let entries = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::InvalidIndex(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Index::new(entries).map_err(|_| Error::InvalidIndex(s.to_string()))
    }
}

impl TryFrom<String> for Index {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Index> for String {
    fn from(i: Index) -> String {
        i.to_string()
    }
}

/// Per-entry signs of a finite Euler sum; `true` means `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SignVector(Vec<bool>);

impl SignVector {
    pub fn from_negative_flags(flags: Vec<bool>) -> Self {
        SignVector(flags)
    }

    pub fn all_plus(len: usize) -> Self {
        SignVector(vec![false; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_negative(&self, i: usize) -> bool {
        self.0[i]
    }

    /// All `2^len` sign vectors, `+` before `-` position by position.
    pub fn all(len: usize) -> Vec<SignVector> {
        (0..1u32 << len)
            .map(|mask| SignVector((0..len).map(|i| mask >> (len - 1 - i) & 1 == 1).collect()))
            .collect()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &neg) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(if neg { "-" } else { "+" })?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(SignVector(Vec::new()));
        }
        s.split(',')
            .map(|t| match t.trim() {
                "+" | "+1" | "1" => Ok(false),
                "-" | "-1" => Ok(true),
                _ => Err(Error::InvalidSigns(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignVector)
    }
}

impl TryFrom<String> for SignVector {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SignVector> for String {
    fn from(s: SignVector) -> String {
        s.to_string()
    }
}

/// Which sum is being evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Level one: `0 < m_1 < ... < m_r < p`.
    Zeta,
    /// Level two: `0 < m_1 < ... < m_r < p/2`.
    Zeta2,
    /// Level two, non-strict: `0 < m_1 <= ... <= m_r < p/2`.
    Zeta2Star,
    /// Signed level-one sums with numerators `eps_i^(m_i)`.
    Euler,
}

impl Variant {
    pub fn needs_signs(self) -> bool {
        self == Variant::Euler
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Zeta => "zeta",
            Variant::Zeta2 => "zeta2",
            Variant::Zeta2Star => "zeta2star",
            Variant::Euler => "euler",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "zeta" => Ok(Variant::Zeta),
            "zeta2" => Ok(Variant::Zeta2),
            "zeta2star" => Ok(Variant::Zeta2Star),
            "euler" => Ok(Variant::Euler),
            other => Err(Error::Precondition(format!("unknown variant {other:?}"))),
        }
    }
}
