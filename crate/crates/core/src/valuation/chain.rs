use num_rational::BigRational;

use super::{MonomialValuation, Valuation};
use crate::error::{Error, Result};
use crate::padic::BaseValuation;
use crate::poly::{is_irreducible_bounded, Irreducibility, Poly};
use crate::value::Value;

/// Height bound used to reject provably reducible key polynomials.
const KEY_IRREDUCIBILITY_BOUND: u64 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub key: Poly,
    pub value: Value,
}

/// A finite MacLane chain `[ν_{b,δ}; Q_1 ↦ γ_1; …; Q_k ↦ γ_k]`.
///
/// Stage `i` evaluates `f` by expanding it in `Q_i` and taking
/// `min_j (stage_{i−1}(p_j) + j·γ_i)`. Each `Q_i` is expected to be a MacLane
/// key polynomial for stage `i − 1`; the constructor checks what can be
/// checked cheaply (monic, degrees nondecreasing, not provably reducible,
/// `γ_i` strictly above the previous stage's value of `Q_i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedChain {
    depth0: MonomialValuation,
    steps: Vec<ChainStep>,
}

impl AugmentedChain {
    pub fn new(depth0: MonomialValuation, steps: Vec<ChainStep>) -> Result<Self> {
        let mut chain = AugmentedChain {
            depth0,
            steps: Vec::with_capacity(steps.len()),
        };
        for step in steps {
            chain.push(step)?;
        }
        Ok(chain)
    }

    /// Appends one augmentation step after validating it against the chain
    /// built so far.
    pub fn push(&mut self, step: ChainStep) -> Result<()> {
        let i = self.steps.len() + 1;
        let deg = match step.key.degree() {
            Some(d) if d >= 1 && step.key.is_monic() => d,
            _ => {
                return Err(Error::InvalidValuation(format!(
                    "step {i}: key polynomial {} must be monic of degree >= 1",
                    step.key
                )))
            }
        };
        if let Some(prev) = self.steps.last() {
            if prev.key.degree() > Some(deg) {
                return Err(Error::InvalidValuation(format!(
                    "step {i}: key degrees must be nondecreasing"
                )));
            }
        }
        if step.value.is_infinite() {
            return Err(Error::InvalidValuation(format!(
                "step {i}: value must be finite"
            )));
        }
        let before = self.eval(&step.key);
        if step.value <= before {
            return Err(Error::InvalidValuation(format!(
                "step {i}: value {} must exceed the previous value {} of {}",
                step.value, before, step.key
            )));
        }
        if let Irreducibility::Reducible { factor } =
            is_irreducible_bounded(&step.key, KEY_IRREDUCIBILITY_BOUND)?
        {
            return Err(Error::InvalidValuation(format!(
                "step {i}: {} is reducible (factor {factor})",
                step.key
            )));
        }
        self.steps.push(step);
        Ok(())
    }

    pub fn from_monomial(depth0: MonomialValuation) -> Self {
        AugmentedChain {
            depth0,
            steps: Vec::new(),
        }
    }

    pub fn depth0(&self) -> &MonomialValuation {
        &self.depth0
    }

    pub fn steps(&self) -> &[ChainStep] {
        &self.steps
    }

    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    pub fn last_key(&self) -> Option<&Poly> {
        self.steps.last().map(|s| &s.key)
    }

    /// The chain with only its first `k` steps.
    pub fn truncated(&self, k: usize) -> AugmentedChain {
        AugmentedChain {
            depth0: self.depth0.clone(),
            steps: self.steps[..k.min(self.steps.len())].to_vec(),
        }
    }

    /// Center and value governing linear polynomials: the last linear step,
    /// or the depth-0 center. For every rational `c`,
    /// `ν(x − c) = min(value, v_p(center − c))`.
    pub fn effective_linear_center(&self) -> (BigRational, Value) {
        self.steps
            .iter()
            .rev()
            .find(|s| s.key.degree() == Some(1))
            .map(|s| (-s.key.coeff(0), s.value.clone()))
            .unwrap_or_else(|| (self.depth0.center().clone(), self.depth0.delta().clone()))
    }

    /// Values that are actually attained by some polynomial and determine
    /// the value group: the effective linear value and every `γ_i` of a
    /// non-linear step.
    pub fn effective_values(&self) -> Vec<Value> {
        let mut out = vec![self.effective_linear_center().1];
        out.extend(
            self.steps
                .iter()
                .filter(|s| s.key.degree() > Some(1))
                .map(|s| s.value.clone()),
        );
        out
    }

    fn eval_at(&self, level: usize, f: &Poly) -> Value {
        if level == 0 {
            return self.depth0.eval(f);
        }
        let step = &self.steps[level - 1];
        if f.degree() < step.key.degree() {
            return self.eval_at(level - 1, f);
        }
        let terms = f
            .q_expansion(&step.key)
            .expect("chain keys are monic of positive degree");
        terms
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_zero())
            .map(|(j, t)| &self.eval_at(level - 1, t) + &step.value.times(j))
            .min()
            .unwrap_or(Value::Infinity)
    }
}

impl Valuation for AugmentedChain {
    fn base(&self) -> BaseValuation {
        self.depth0.base()
    }

    fn eval(&self, f: &Poly) -> Value {
        self.eval_at(self.steps.len(), f)
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

    fn step(q: &str, g: &str) -> ChainStep {
        ChainStep {
            key: p(q),
            value: v(g),
        }
    }

    fn sqrt2_chain() -> AugmentedChain {
        AugmentedChain::new(
            MonomialValuation::gauss(2, v("1/2")).unwrap(),
            vec![step("x^2-2", "2")],
        )
        .unwrap()
    }

    #[test]
    fn examples() {
        let c = sqrt2_chain();
        assert_eq!(c.eval(&p("x^2-2")), v("2"));
        assert_eq!(c.eval(&p("x")), v("1/2"));
        assert_eq!(c.eval(&p("(x^2-2)^2 + 2x")), v("3/2"));
    }

    #[test]
    fn construction_errors() {
        let d0 = MonomialValuation::gauss(2, v("1/2")).unwrap();
        // value not above the previous value of the key (which is 1)
        assert!(AugmentedChain::new(d0.clone(), vec![step("x^2-2", "1")]).is_err());
        assert!(AugmentedChain::new(d0.clone(), vec![step("2x^2-4", "2")]).is_err());
        assert!(AugmentedChain::new(d0.clone(), vec![step("x^2", "2")]).is_err());
        assert!(
            AugmentedChain::new(d0.clone(), vec![step("x^2-2", "2"), step("x-2", "3")]).is_err()
        );
        assert!(AugmentedChain::new(d0, vec![step("x^2-2", "inf")]).is_err());
    }

    #[test]
    fn linear_steps_recenter() {
        let d0 = MonomialValuation::gauss(2, v("1")).unwrap();
        let c = AugmentedChain::new(d0, vec![step("x-2", "2"), step("x-6", "3")]).unwrap();
        assert_eq!(c.effective_linear_center(), (rat(6), v("3")));
        let flat = MonomialValuation::new(c.base(), rat(6), v("3")).unwrap();
        for f in ["x^3 - 1", "x^2 + 6x", "(x-6)^2 + 8", "1/2*x - 3"] {
            assert_eq!(c.eval(&p(f)), flat.eval(&p(f)), "{f}");
        }
    }

    #[test]
    fn truncation_and_accessors() {
        let c = sqrt2_chain();
        assert_eq!(c.depth(), 1);
        assert_eq!(c.last_key(), Some(&p("x^2-2")));
        assert_eq!(c.truncated(0).eval(&p("x^2-2")), v("1"));
        assert_eq!(c.effective_values(), vec![v("1/2"), v("2")]);
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-40i64..40, 1i64..5), 0..7)
            .prop_map(|cs| Poly::from_coeffs(cs.into_iter().map(|(n, d)| frac(n, d)).collect()))
    }

    fn chains() -> Vec<AugmentedChain> {
        let m = |pr: u64, b: BigRational, d: &str| {
            MonomialValuation::new(BaseValuation::new(pr).unwrap(), b, v(d)).unwrap()
        };
        vec![
            sqrt2_chain(),
            AugmentedChain::new(m(2, rat(0), "1/2"), vec![step("x^2-2", "(2,1)")]).unwrap(),
            AugmentedChain::new(m(3, rat(1), "1/2"), vec![step("(x-1)^2-3", "5/2")]).unwrap(),
            AugmentedChain::new(m(5, rat(0), "1"), vec![step("x-5", "3"), step("x-30", "4")])
                .unwrap(),
        ]
    }

    proptest! {
        #[test]
        fn chain_axioms(idx in 0usize..4, f in arb_poly(), g in arb_poly()) {
            let c = &chains()[idx];
            let (vf, vg) = (c.eval(&f), c.eval(&g));
            prop_assert_eq!(c.eval(&(&f * &g)), &vf + &vg);
            let sum = c.eval(&(&f + &g));
            prop_assert!(sum >= vf.clone().min(vg.clone()));
            if vf != vg {
                prop_assert_eq!(sum, vf.min(vg));
            }
            prop_assert_eq!(c.eval(&f).is_infinite(), f.is_zero());
        }

        #[test]
        fn depth_zero_chain_is_monomial(f in arb_poly(), n in -9i64..9, d in 1i64..4) {
            let w = MonomialValuation::new(BaseValuation::new(3).unwrap(), frac(n, d), v("2/3")).unwrap();
            let c = AugmentedChain::from_monomial(w.clone());
            prop_assert_eq!(c.eval(&f), w.eval(&f));
        }
    }
}
