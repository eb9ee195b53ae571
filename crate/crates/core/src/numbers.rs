use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Serialize, Serializer};

pub type BigSignedInt = BigInt;
pub type ExactRational = BigRational;

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

/// `p/q` with the denominator always written, even when it is 1.
pub fn format_ratio(r: &ExactRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer.
pub fn parse_ratio(s: &str) -> Option<ExactRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(p.trim().parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// An exact value in a report: integers print as decimal strings, rationals
/// as `p/q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactValue {
    Integer(BigInt),
    Rational(BigRational),
}

impl ExactValue {
    pub fn as_rational(&self) -> BigRational {
        match self {
            ExactValue::Integer(v) => BigRational::from_integer(v.clone()),
            ExactValue::Rational(r) => r.clone(),
        }
    }
}

impl std::fmt::Display for ExactValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExactValue::Integer(v) => write!(f, "{v}"),
            ExactValue::Rational(r) => f.write_str(&format_ratio(r)),
        }
    }
}

impl Serialize for ExactValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl From<BigInt> for ExactValue {
    fn from(v: BigInt) -> Self {
        ExactValue::Integer(v)
    }
}

impl From<BigRational> for ExactValue {
    fn from(r: BigRational) -> Self {
        ExactValue::Rational(r)
    }
}

/// `#[serde(with = "ratio_string")]` for `BigRational` fields.
pub mod ratio_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_ratio(r))
    }
}
