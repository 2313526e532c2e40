//! The value group `Q ⊕ Q` with lexicographic order, extended by infinity.
//!
//! The major coordinate carries ordinary rational values (the p-adic value
//! group `Z` sits inside it as `Z × {0}`); the minor coordinate is an
//! infinitesimal direction used for value-transcendental valuations, e.g.
//! `(0, 1)` is positive but smaller than every positive rational.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::parse_rational_at;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Finite {
        major: BigRational,
        minor: BigRational,
    },
    Infinity,
}

impl Value {
    pub fn new(major: BigRational, minor: BigRational) -> Self {
        Value::Finite { major, minor }
    }

    /// A value in the rank-1 slice (minor coordinate zero).
    pub fn rank1(major: BigRational) -> Self {
        Value::Finite {
            major,
            minor: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Value::rank1(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Value::from_int(0)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Value::Infinity)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn major(&self) -> Option<&BigRational> {
        match self {
            Value::Finite { major, .. } => Some(major),
            Value::Infinity => None,
        }
    }

    pub fn minor(&self) -> Option<&BigRational> {
        match self {
            Value::Finite { minor, .. } => Some(minor),
            Value::Infinity => None,
        }
    }

    /// `n · self`; infinity stays infinity.
    pub fn times(&self, n: usize) -> Value {
        match self {
            Value::Finite { major, minor } => {
                let n = BigRational::from_integer(BigInt::from(n));
                Value::new(major * &n, minor * &n)
            }
            Value::Infinity => Value::Infinity,
        }
    }

    /// `self − other`. Infinity minus a finite value is infinity; subtracting
    /// infinity is undefined.
    pub fn checked_sub(&self, other: &Value) -> Result<Value> {
        match (self, other) {
            (_, Value::Infinity) => Err(Error::pre("cannot subtract infinity")),
            (Value::Infinity, _) => Ok(Value::Infinity),
            (Value::Finite { major: a, minor: b }, Value::Finite { major: c, minor: d }) => {
                Ok(Value::new(a - c, b - d))
            }
        }
    }

    /// Exact division by a positive integer (the group is divisible).
    pub fn divide_by_nat(&self, r: usize) -> Result<Value> {
        if r == 0 {
            return Err(Error::pre("division by zero"));
        }
        match self {
            Value::Infinity => Err(Error::pre("cannot divide infinity")),
            Value::Finite { major, minor } => {
                let r = BigRational::from_integer(BigInt::from(r));
                Ok(Value::new(major / &r, minor / &r))
            }
        }
    }

    /// Whether some positive multiple lies in the base value group `Z × {0}`.
    pub fn is_torsion_over_base(&self) -> Result<bool> {
        match self {
            Value::Infinity => Err(Error::pre("infinity has no torsion class")),
            Value::Finite { minor, .. } => Ok(minor.is_zero()),
        }
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Infinity, Value::Infinity) => Ordering::Equal,
            (Value::Infinity, _) => Ordering::Greater,
            (_, Value::Infinity) => Ordering::Less,
            (Value::Finite { major: a, minor: b }, Value::Finite { major: c, minor: d }) => {
                a.cmp(c).then_with(|| b.cmp(d))
            }
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&Value> for &Value {
    type Output = Value;

    fn add(self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Finite { major: a, minor: b }, Value::Finite { major: c, minor: d }) => {
                Value::new(a + c, b + d)
            }
            _ => Value::Infinity,
        }
    }
}

impl Add for Value {
    type Output = Value;

    fn add(self, rhs: Value) -> Value {
        &self + &rhs
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Infinity => f.write_str("inf"),
            Value::Finite { major, minor } if minor.is_zero() => write!(f, "{major}"),
            Value::Finite { major, minor } => write!(f, "({major}, {minor})"),
        }
    }
}

impl FromStr for Value {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lead = s.len() - s.trim_start().len();
        let t = s.trim();
        if t == "inf" || t == "∞" {
            return Ok(Value::Infinity);
        }
        if let Some(inner) = t.strip_prefix('(') {
            let inner = inner
                .strip_suffix(')')
                .ok_or_else(|| Error::parse(lead + t.len(), "missing ')'"))?;
            let comma = inner
                .find(',')
                .ok_or_else(|| Error::parse(lead + 1, "expected '(major, minor)'"))?;
            let major = parse_rational_at(&inner[..comma], lead + 1)?;
            let minor = parse_rational_at(&inner[comma + 1..], lead + 2 + comma)?;
            return Ok(Value::new(major, minor));
        }
        Ok(Value::rank1(parse_rational_at(t, lead)?))
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ValueText::deserialize(d)?;
        match raw {
            ValueText::Text(s) => s.parse().map_err(serde::de::Error::custom),
            ValueText::Int(n) => Ok(Value::from_int(n)),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ValueText {
    Text(String),
    Int(i64),
}

/// Smallest element of a sequence; infinity for the empty sequence.
pub fn min_value<'a>(values: impl IntoIterator<Item = &'a Value>) -> Value {
    values.into_iter().min().cloned().unwrap_or(Value::Infinity)
}
