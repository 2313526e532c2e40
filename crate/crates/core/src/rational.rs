//! Helpers for arbitrary-precision rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"a"` or `"a/b"` with optional sign and surrounding whitespace.
/// `offset` is added to error positions so callers can report positions in
/// their own input.
pub fn parse_rational_at(s: &str, offset: usize) -> Result<Rational> {
    let lead = s.len() - s.trim_start().len();
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::parse(offset, "expected a rational number"));
    }
    let (num, den) = match t.find('/') {
        Some(i) => (&t[..i], Some((&t[i + 1..], i + 1))),
        None => (t, None),
    };
    let n = parse_int(num.trim(), offset + lead)?;
    let d = match den {
        Some((d, at)) => parse_int(d.trim(), offset + lead + at)?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::parse(offset + lead, "zero denominator"));
    }
    Ok(Rational::new(n, d))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    parse_rational_at(s, 0)
}

fn parse_int(s: &str, pos: usize) -> Result<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(pos, format!("invalid integer {s:?}")));
    }
    s.trim_start_matches('+')
        .parse::<BigInt>()
        .map_err(|e| Error::parse(pos, e.to_string()))
}

/// `max(|numerator|, denominator)`.
pub fn height(q: &Rational) -> BigInt {
    let n = q.numer().abs();
    let d = q.denom().clone();
    if n > d {
        n
    } else {
        d
    }
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Serde adapter: a rational as `"a/b"`; integers are also accepted on input.
pub mod serde_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{parse_rational, rat, Rational};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Text(String),
        Int(i64),
    }

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(q)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Text(t) => parse_rational(&t).map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(rat(n)),
        }
    }

    pub mod vec {
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};

        use super::{Rational, Raw};

        pub fn serialize<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(qs.len()))?;
            for q in qs {
                seq.serialize_element(&q.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            Vec::<Raw>::deserialize(d)?
                .into_iter()
                .map(|r| match r {
                    Raw::Text(t) => super::parse_rational(&t).map_err(serde::de::Error::custom),
                    Raw::Int(n) => Ok(super::rat(n)),
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("1/2").unwrap(), frac(1, 2));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational("+7").unwrap(), rat(7));
        assert_eq!(parse_rational("3/-6").unwrap(), frac(-1, 2));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 3), BigInt::from(4));
        assert_eq!(binomial(2, 3), BigInt::zero());
        assert_eq!(binomial(10, 5), BigInt::from(252));
        assert_eq!(binomial(0, 0), BigInt::one());
    }
}
