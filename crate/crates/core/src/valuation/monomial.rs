use num_rational::BigRational;

use super::Valuation;
use crate::error::{Error, Result};
use crate::padic::BaseValuation;
use crate::poly::Poly;
use crate::value::Value;

/// `ν_{b,δ}(Σ c_i (x − b)^i) = min_i (v_p(c_i) + i·δ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialValuation {
    base: BaseValuation,
    center: BigRational,
    delta: Value,
}

impl MonomialValuation {
    pub fn new(base: BaseValuation, center: BigRational, delta: Value) -> Result<Self> {
        if delta.is_infinite() {
            return Err(Error::InvalidValuation(
                "delta must be finite (support would not be zero)".into(),
            ));
        }
        Ok(MonomialValuation {
            base,
            center,
            delta,
        })
    }

    /// Gauss valuation centered at 0.
    pub fn gauss(p: u64, delta: Value) -> Result<Self> {
        Self::new(BaseValuation::new(p)?, BigRational::default(), delta)
    }

    pub fn center(&self) -> &BigRational {
        &self.center
    }

    pub fn delta(&self) -> &Value {
        &self.delta
    }

    /// The `(x − b)`-adic terms `(i, v_p(c_i) + i·δ)` for nonzero `c_i`.
    pub fn term_values(&self, f: &Poly) -> Vec<(usize, Value)> {
        f.taylor_shift(&self.center)
            .coeffs()
            .iter()
            .enumerate()
            .filter_map(|(i, c)| {
                let v = self.base.eval(c);
                v.is_finite().then(|| (i, &v + &self.delta.times(i)))
            })
            .collect()
    }
}

impl Valuation for MonomialValuation {
    fn base(&self) -> BaseValuation {
        self.base
    }

    fn eval(&self, f: &Poly) -> Value {
        self.term_values(f)
            .into_iter()
            .map(|(_, v)| v)
            .min()
            .unwrap_or(Value::Infinity)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn v(s: &str) -> Value {
        s.parse().unwrap()
    }

    fn mono(prime: u64, b: BigRational, delta: &str) -> MonomialValuation {
        MonomialValuation::new(BaseValuation::new(prime).unwrap(), b, v(delta)).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(mono(2, rat(0), "1/2").eval(&p("x^2-2")), v("1"));
        // x^2 - 1 = (x-1)^2 + 2(x-1)
        assert_eq!(mono(2, rat(1), "1").eval(&p("x^2-1")), v("2"));
        assert_eq!(mono(3, frac(1, 2), "(0,1)").eval(&p("18")), v("2"));
        assert_eq!(mono(3, rat(0), "1").eval(&Poly::zero()), Value::Infinity);
    }

    #[test]
    fn rejects_infinite_delta() {
        assert!(
            MonomialValuation::new(BaseValuation::new(2).unwrap(), rat(0), Value::Infinity)
                .is_err()
        );
    }

    #[test]
    fn linear_values() {
        let w = mono(2, frac(1, 2), "3/2");
        assert_eq!(w.eval(&Poly::linear(frac(1, 2))), v("3/2"));
        // v_2(1/2 - 5/2) = 1 < 3/2
        assert_eq!(w.eval(&Poly::linear(frac(5, 2))), v("1"));
        assert_eq!(w.eval(&Poly::linear(frac(1, 2) + rat(8))), v("3/2"));
    }

    prop_compose! {
        fn arb_mono()(prime in prop::sample::select(vec![2u64, 3, 5]),
                      b in prop::sample::select(vec![rat(0), rat(1), frac(1, 2)]),
                      delta in prop::sample::select(vec!["1/2", "1", "3/2", "(0,1)", "-1", "0"]))
                      -> MonomialValuation {
            mono(prime, b, delta)
        }
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-60i64..60, 1i64..9), 0..6)
            .prop_map(|cs| Poly::from_coeffs(cs.into_iter().map(|(n, d)| frac(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn axioms(w in arb_mono(), f in arb_poly(), g in arb_poly()) {
            let (vf, vg) = (w.eval(&f), w.eval(&g));
            prop_assert_eq!(w.eval(&(&f * &g)), &vf + &vg);
            let sum = w.eval(&(&f + &g));
            prop_assert!(sum >= vf.clone().min(vg.clone()));
            if vf != vg {
                prop_assert_eq!(sum, vf.min(vg));
            }
            prop_assert_eq!(w.eval(&Poly::one()), Value::zero());
        }

        #[test]
        fn support_is_zero(w in arb_mono(), f in arb_poly()) {
            prop_assert_eq!(w.eval(&f).is_infinite(), f.is_zero());
        }

        #[test]
        fn distance_to_linear(w in arb_mono(), n in -40i64..40, d in 1i64..9) {
            let c = frac(n, d);
            let expect = w.delta().clone().min(w.base().eval(&(w.center() - &c)));
            prop_assert_eq!(w.eval(&Poly::linear(c)), expect);
            prop_assert_eq!(w.eval(&Poly::linear(w.center().clone())), w.delta().clone());
        }
    }
}
