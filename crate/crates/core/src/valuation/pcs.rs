use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::BaseValuation;
use crate::poly::Poly;
use crate::value::Value;

/// Rule for lazily extending a prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case", deny_unknown_fields)]
pub enum PcsGenerator {
    /// `a_n = a_{n−1} + coeff · p^{step·n}`.
    PartialSums {
        #[serde(with = "crate::rational::serde_text")]
        coeff: BigRational,
        step: u32,
    },
}

/// A finite prefix `a_0, …, a_m` of a sequence of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcsPrefix {
    pub base: BaseValuation,
    pub elems: Vec<BigRational>,
    pub generator: Option<PcsGenerator>,
}

impl PcsPrefix {
    pub fn new(base: BaseValuation, elems: Vec<BigRational>) -> Self {
        PcsPrefix {
            base,
            elems,
            generator: None,
        }
    }

    pub fn with_generator(mut self, generator: PcsGenerator) -> Self {
        self.generator = Some(generator);
        self
    }

    /// Appends `n` elements produced by the generator.
    pub fn extend(&mut self, n: usize) -> Result<()> {
        let gen = self
            .generator
            .clone()
            .ok_or_else(|| Error::pre("prefix has no generator to extend with"))?;
        let p = BigInt::from(self.base.prime.get());
        for _ in 0..n {
            let idx = self.elems.len();
            let PcsGenerator::PartialSums { coeff, step } = &gen;
            let term = coeff * BigRational::from_integer(p.pow(*step * idx as u32));
            let next = match self.elems.last() {
                Some(prev) => prev + term,
                None => term,
            };
            self.elems.push(next);
        }
        Ok(())
    }
}

/// `v(a_σ − a_ρ) < v(a_τ − a_σ)` for all `ρ < σ < τ`, checked literally.
pub fn pcs_check(s: &PcsPrefix) -> bool {
    let a = &s.elems;
    let v = |i: usize, j: usize| s.base.eval(&(&a[j] - &a[i]));
    let m = a.len();
    for rho in 0..m {
        for sigma in rho + 1..m {
            let lower = v(rho, sigma);
            for tau in sigma + 1..m {
                if lower >= v(sigma, tau) {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PcsVerdict {
    /// `v(f(a_ρ))` is constant from `index` to the end of the prefix, over
    /// at least three terms.
    FixedAtIndex {
        index: usize,
    },
    /// `v(f(a_ρ))` strictly increases from `from` to the end, over at least
    /// three terms.
    IncreasingThroughPrefix {
        from: usize,
    },
    NotStabilized,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PcsTrace {
    pub trace: Vec<Value>,
    pub verdict: PcsVerdict,
    /// Tail length required before a verdict other than `NotStabilized` is
    /// reported. A reporting convention: a finite prefix proves nothing
    /// about the whole sequence.
    pub window: usize,
}

const WINDOW: usize = 3;

pub fn pcs_value_trace(s: &PcsPrefix, f: &Poly) -> Result<PcsTrace> {
    if !pcs_check(s) {
        return Err(Error::pre("sequence is not pseudo-convergent"));
    }
    let trace: Vec<Value> = s.elems.iter().map(|a| s.base.eval(&f.eval(a))).collect();
    let n = trace.len();
    let suffix_start = |pred: fn(&Value, &Value) -> bool| {
        let mut start = n.saturating_sub(1);
        while start > 0 && pred(&trace[start - 1], &trace[start]) {
            start -= 1;
        }
        start
    };
    let verdict = if n >= WINDOW {
        let fixed = suffix_start(|a, b| a == b);
        let incr = suffix_start(|a, b| a < b);
        if n - fixed >= WINDOW {
            PcsVerdict::FixedAtIndex { index: fixed }
        } else if n - incr >= WINDOW {
            PcsVerdict::IncreasingThroughPrefix { from: incr }
        } else {
            PcsVerdict::NotStabilized
        }
    } else {
        PcsVerdict::NotStabilized
    };
    Ok(PcsTrace {
        trace,
        verdict,
        window: WINDOW,
    })
}

impl Default for PcsGenerator {
    fn default() -> Self {
        PcsGenerator::PartialSums {
            coeff: BigRational::one(),
            step: 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn seq(p: u64, xs: &[i64]) -> PcsPrefix {
        PcsPrefix::new(
            BaseValuation::new(p).unwrap(),
            xs.iter().map(|&x| rat(x)).collect(),
        )
    }

    fn vals(xs: &[i64]) -> Vec<Value> {
        xs.iter().map(|&x| Value::from_int(x)).collect()
    }

    #[test]
    fn check_examples() {
        assert!(pcs_check(&seq(2, &[1, 3, 7, 15])));
        assert!(!pcs_check(&seq(2, &[1, 3, 5])));
        assert!(pcs_check(&seq(3, &[4, 9])));
        assert!(pcs_check(&seq(5, &[])));
    }

    #[test]
    fn trace_examples() {
        let s = seq(2, &[1, 3, 7, 15]);
        let t = pcs_value_trace(&s, &"x".parse().unwrap()).unwrap();
        assert_eq!(t.trace, vals(&[0, 0, 0, 0]));
        assert_eq!(t.verdict, PcsVerdict::FixedAtIndex { index: 0 });

        let t = pcs_value_trace(&s, &"x+1".parse().unwrap()).unwrap();
        assert_eq!(t.trace, vals(&[1, 2, 3, 4]));
        assert_eq!(t.verdict, PcsVerdict::IncreasingThroughPrefix { from: 0 });

        let t = pcs_value_trace(&seq(2, &[1, 3]), &"x+1".parse().unwrap()).unwrap();
        assert_eq!(t.verdict, PcsVerdict::NotStabilized);

        assert!(pcs_value_trace(&seq(2, &[1, 3, 5]), &"x".parse().unwrap()).is_err());
    }

    #[test]
    fn generator_extends() {
        let mut s = seq(2, &[1]).with_generator(PcsGenerator::default());
        s.extend(4).unwrap();
        assert_eq!(s.elems, [1, 3, 7, 15, 31].map(rat).to_vec());
        assert!(seq(2, &[1]).extend(1).is_err());
    }

    proptest! {
        #[test]
        fn geometric_partial_sums_converge(p in prop::sample::select(vec![2u64, 3, 5, 7]),
                                           a0 in -50i64..50, c in 1i64..4, step in 1u32..3,
                                           len in 0usize..9) {
            prop_assume!(c as u64 % p != 0);
            let mut s = PcsPrefix::new(BaseValuation::new(p).unwrap(), vec![rat(a0)])
                .with_generator(PcsGenerator::PartialSums { coeff: rat(c), step });
            s.extend(len).unwrap();
            prop_assert!(pcs_check(&s));
        }
    }
}
