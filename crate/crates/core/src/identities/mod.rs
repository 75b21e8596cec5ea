//! Verification suites. Each suite turns one family of identities into a list
//! of cases and checks them prime by prime with exact equality mod `p`.
//!
//! A case of weight `k` is only checked at primes `p > k + 2`.

mod report;
mod suites;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use report::{csv_field, parse_csv_record, Annotation, CaseRow, Report, Summary};
pub use suites::*;

use crate::evaluator::Index;
use crate::modmath::Rational;
use crate::{Error, Result};

/// `binom(n, m)`, zero unless `0 <= m <= n`.
pub fn binom(n: i64, m: i64) -> BigInt {
    if m < 0 || m > n {
        return BigInt::zero();
    }
    let m = m.min(n - m);
    let mut acc = BigInt::one();
    for i in 0..m {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `C(k_1..k_r) = sum_{j=1}^{r-1} (-1)^(k_1+..+k_j) binom(k, k_1+..+k_j)`.
#[allow(non_snake_case)]
pub fn coeff_C(index: &Index) -> Rational {
    let k = index.weight() as i64;
    let mut partial = 0i64;
    let mut total = BigInt::zero();
    let e = index.entries();
    for &kj in e.iter().take(e.len().saturating_sub(1)) {
        partial += kj as i64;
        let b = binom(k, partial);
        if partial % 2 == 0 {
            total += b;
        } else {
            total -= b;
        }
    }
    Rational::from_integer(total)
}

/// Suite names accepted by [`run_suite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Key,
    Parity,
    Antipode,
    EvenOdd,
    DepthOne,
    DepthTwo,
    LowDepth,
    SumFormula,
    OneOdd,
    Weighted1,
    Weighted2,
    Twos,
    Lemmas,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Key,
        Suite::Parity,
        Suite::Antipode,
        Suite::EvenOdd,
        Suite::DepthOne,
        Suite::DepthTwo,
        Suite::LowDepth,
        Suite::SumFormula,
        Suite::OneOdd,
        Suite::Weighted1,
        Suite::Weighted2,
        Suite::Twos,
        Suite::Lemmas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Key => "key",
            Suite::Parity => "parity",
            Suite::Antipode => "antipode",
            Suite::EvenOdd => "evenodd",
            Suite::DepthOne => "depth1",
            Suite::DepthTwo => "depth2",
            Suite::LowDepth => "lowdepth",
            Suite::SumFormula => "sumformula",
            Suite::OneOdd => "oneodd",
            Suite::Weighted1 => "weighted1",
            Suite::Weighted2 => "weighted2",
            Suite::Twos => "twos",
            Suite::Lemmas => "lemmas",
        }
    }

    /// Older spellings still accepted on the command line.
    fn alias(self) -> Option<&'static str> {
        match self {
            Suite::DepthOne => Some("prop21"),
            Suite::LowDepth => Some("example24"),
            Suite::OneOdd => Some("ppt"),
            Suite::Twos => Some("conj38"),
            _ => None,
        }
    }

    /// Whether the suite needs primes at all.
    pub fn is_symbolic(self) -> bool {
        self == Suite::Lemmas
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s || x.alias() == Some(s))
            .ok_or_else(|| Error::Precondition(format!("unknown suite {s:?}")))
    }
}

/// Size bounds for the suites; `None` picks the per-suite default.
#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteParams {
    pub kmax: Option<u32>,
    pub wmax: Option<u32>,
    pub rmax: Option<usize>,
    pub dmax: Option<usize>,
}
