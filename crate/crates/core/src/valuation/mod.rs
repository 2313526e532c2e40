//! Valuations on Q[x] extending the p-adic valuation on Q.

mod chain;
mod config;
mod monomial;
mod pcs;

pub use crate::padic::BaseValuation;
pub use chain::{AugmentedChain, ChainStep};
pub use config::{parse_valuation, ValuationConfig};
pub use monomial::MonomialValuation;
pub use pcs::{pcs_check, pcs_value_trace, PcsGenerator, PcsPrefix, PcsTrace, PcsVerdict};

use crate::poly::Poly;
use crate::value::Value;

pub trait Valuation {
    fn base(&self) -> BaseValuation;
    /// `∞` exactly on the zero polynomial.
    fn eval(&self, f: &Poly) -> Value;
}

impl<V: Valuation + ?Sized> Valuation for &V {
    fn base(&self) -> BaseValuation {
        (**self).base()
    }

    fn eval(&self, f: &Poly) -> Value {
        (**self).eval(f)
    }
}

/// Any representable valuation, as read from a config.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyValuation {
    Monomial(MonomialValuation),
    Chain(AugmentedChain),
    /// Only a prefix of a pseudo-convergent sequence; does not evaluate.
    Pcs(PcsPrefix),
}

impl AnyValuation {
    pub fn base(&self) -> BaseValuation {
        match self {
            AnyValuation::Monomial(m) => m.base(),
            AnyValuation::Chain(c) => c.base(),
            AnyValuation::Pcs(s) => s.base,
        }
    }

    /// The valuation as a (possibly depth-0) chain, if it is finitely
    /// represented.
    pub fn as_chain(&self) -> Option<AugmentedChain> {
        match self {
            AnyValuation::Monomial(m) => Some(AugmentedChain::from_monomial(m.clone())),
            AnyValuation::Chain(c) => Some(c.clone()),
            AnyValuation::Pcs(_) => None,
        }
    }

    /// The depth-1 valuation `ν_{b,δ}`, also for a chain with no steps.
    pub fn as_monomial(&self) -> Option<&MonomialValuation> {
        match self {
            AnyValuation::Monomial(m) => Some(m),
            AnyValuation::Chain(c) if c.depth() == 0 => Some(c.depth0()),
            _ => None,
        }
    }

    pub fn as_pcs(&self) -> Option<&PcsPrefix> {
        match self {
            AnyValuation::Pcs(s) => Some(s),
            _ => None,
        }
    }
}

impl From<MonomialValuation> for AnyValuation {
    fn from(m: MonomialValuation) -> Self {
        AnyValuation::Monomial(m)
    }
}

impl From<AugmentedChain> for AnyValuation {
    fn from(c: AugmentedChain) -> Self {
        AnyValuation::Chain(c)
    }
}

impl From<PcsPrefix> for AnyValuation {
    fn from(s: PcsPrefix) -> Self {
        AnyValuation::Pcs(s)
    }
}
