//! Exact arithmetic substrate: arbitrary-precision integers and rationals,
//! binomial coefficients, factorials and the index safety cap.
//!
//! Values render as plain decimal strings. Integers use an optional leading
//! ASCII `-`; rationals render as `p/q`, or just `p` when the denominator is 1.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use num_bigint::BigInt;

/// Exact rational number, always in lowest terms with a positive denominator.
pub type BigRat = num_rational::BigRational;

/// Row/column index (the `n`, `m`, `j`, `k`, `l` of the identities).
pub type Index = usize;

/// Upper bound on index arguments accepted by public operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexCap(Index);

impl IndexCap {
    pub const DEFAULT: IndexCap = IndexCap(10_000);

    pub const fn new(cap: Index) -> Self {
        IndexCap(cap)
    }

    pub const fn get(self) -> Index {
        self.0
    }

    pub fn check(self, index: Index) -> Result<()> {
        if index > self.0 {
            Err(Error::LimitExceeded { index, cap: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for IndexCap {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl fmt::Display for IndexCap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: Index, k: Index) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    // Each partial product C(n-k+i, i) is an integer, so the division is exact.
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// `n!`, with `0! = 1`.
pub fn factorial(n: Index) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `(-1)^e` as a small integer.
pub(crate) fn sign_power(e: Index) -> i32 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Parses a decimal integer with an optional leading `-`.
pub fn parse_int(input: &str) -> Result<BigInt> {
    let digits = input.strip_prefix('-').unwrap_or(input);
    if !is_digits(digits) {
        return Err(Error::Parse {
            what: "integer",
            input: input.to_owned(),
        });
    }
    BigInt::from_str(input).map_err(|_| Error::Parse {
        what: "integer",
        input: input.to_owned(),
    })
}

/// Parses `p/q` or `p` into a normalized rational.
pub fn parse_rat(input: &str) -> Result<BigRat> {
    let err = || Error::Parse {
        what: "rational",
        input: input.to_owned(),
    };
    match input.split_once('/') {
        None => parse_int(input)
            .map(BigRat::from_integer)
            .map_err(|_| err()),
        Some((p, q)) => {
            let p = parse_int(p).map_err(|_| err())?;
            if !is_digits(q) {
                return Err(err());
            }
            let q = parse_int(q).map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(BigRat::new(p, q))
        }
    }
}

/// An exact value that is either an integer or a rational.
///
/// Used wherever a report needs to carry a computed quantity verbatim.
/// Equality is by value, so `Int(2) == Rat(2/1)`.
#[derive(Debug, Clone)]
pub enum ExactValue {
    Int(BigInt),
    Rat(BigRat),
}

impl ExactValue {
    pub fn to_rational(&self) -> BigRat {
        match self {
            ExactValue::Int(v) => BigRat::from_integer(v.clone()),
            ExactValue::Rat(v) => v.clone(),
        }
    }
}

impl PartialEq for ExactValue {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ExactValue::Int(a), ExactValue::Int(b)) => a == b,
            _ => self.to_rational() == other.to_rational(),
        }
    }
}

impl Eq for ExactValue {}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Int(v) => v.fmt(f),
            ExactValue::Rat(v) => v.fmt(f),
        }
    }
}

impl FromStr for ExactValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.contains('/') {
            parse_rat(s).map(ExactValue::Rat)
        } else {
            parse_int(s).map(ExactValue::Int)
        }
    }
}

impl From<BigInt> for ExactValue {
    fn from(v: BigInt) -> Self {
        ExactValue::Int(v)
    }
}

impl From<BigRat> for ExactValue {
    fn from(v: BigRat) -> Self {
        ExactValue::Rat(v)
    }
}

impl serde::Serialize for ExactValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for ExactValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
