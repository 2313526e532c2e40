//! The p-adic valuation on Q.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::value::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::InvalidValuation(format!("{p} is not prime")));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `ord_p(n)` for nonzero `n`.
pub fn ord_int(n: &BigInt, p: Prime) -> u64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p.get());
    let mut m = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        m = q;
        k += 1;
    }
}

/// `v_p(a/b) = ord_p(a) − ord_p(b)`, or `None` for zero.
pub fn ord_rational(q: &BigRational, p: Prime) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    Some(ord_int(q.numer(), p) as i64 - ord_int(q.denom(), p) as i64)
}

/// The p-adic valuation `v_p` on Q, taking values in the rank-1 slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BaseValuation {
    pub prime: Prime,
}

impl BaseValuation {
    pub fn new(p: u64) -> Result<Self> {
        Ok(BaseValuation {
            prime: Prime::new(p)?,
        })
    }

    pub fn eval(&self, c: &BigRational) -> Value {
        match ord_rational(c, self.prime) {
            Some(k) => Value::from_int(k),
            None => Value::Infinity,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    #[test]
    fn base_eval_examples() {
        let two = BaseValuation::new(2).unwrap();
        assert_eq!(two.eval(&rat(12)), Value::from_int(2));
        assert_eq!(two.eval(&frac(3, 2)), Value::from_int(-1));
        let five = BaseValuation::new(5).unwrap();
        assert_eq!(five.eval(&rat(0)), Value::Infinity);
        assert_eq!(five.eval(&frac(-50, 3)), Value::from_int(2));
    }

    #[test]
    fn rejects_composites() {
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(9).is_err());
        assert!(Prime::new(97).is_ok());
    }
}
