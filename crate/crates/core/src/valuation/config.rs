//! Structured-text valuation configs.
//!
//! ```text
//! { type: "monomial", p: 2, b: "0", delta: "(1/2, 0)" }
//! { type: "chain", depth0: { type: "monomial", p: 2, b: "0", delta: "1/2" },
//!   steps: [ { Q: "x^2-2", gamma: "2" } ] }
//! { type: "pcs", p: 2, elems: ["1", "3", "7", "15"] }
//! ```
//!
//! Input is JSON5 (unquoted keys, trailing commas); output is JSON, which is
//! also valid input.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{
    AnyValuation, AugmentedChain, ChainStep, MonomialValuation, PcsGenerator, PcsPrefix, Valuation,
};
use crate::error::{Error, Result};
use crate::padic::{BaseValuation, Prime};
use crate::poly::Poly;
use crate::value::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ValuationConfig {
    Monomial {
        p: Prime,
        #[serde(with = "crate::rational::serde_text")]
        b: BigRational,
        delta: Value,
    },
    Chain {
        depth0: Box<ValuationConfig>,
        steps: Vec<StepConfig>,
    },
    Pcs {
        p: Prime,
        #[serde(with = "crate::rational::serde_text::vec")]
        elems: Vec<BigRational>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generator: Option<PcsGenerator>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepConfig {
    #[serde(rename = "Q")]
    pub q: Poly,
    pub gamma: Value,
}

impl ValuationConfig {
    pub fn parse(text: &str) -> Result<Self> {
        json5::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("configs serialize")
    }

    pub fn build(&self) -> Result<AnyValuation> {
        match self {
            ValuationConfig::Monomial { p, b, delta } => Ok(AnyValuation::Monomial(
                MonomialValuation::new(BaseValuation { prime: *p }, b.clone(), delta.clone())?,
            )),
            ValuationConfig::Chain { depth0, steps } => {
                let AnyValuation::Monomial(d0) = depth0.build()? else {
                    return Err(Error::Config(
                        "chain depth0 must be a monomial valuation".into(),
                    ));
                };
                let steps = steps
                    .iter()
                    .map(|s| ChainStep {
                        key: s.q.clone(),
                        value: s.gamma.clone(),
                    })
                    .collect();
                Ok(AnyValuation::Chain(AugmentedChain::new(d0, steps)?))
            }
            ValuationConfig::Pcs {
                p,
                elems,
                generator,
            } => {
                let mut s = PcsPrefix::new(BaseValuation { prime: *p }, elems.clone());
                s.generator = generator.clone();
                Ok(AnyValuation::Pcs(s))
            }
        }
    }
}

impl From<&MonomialValuation> for ValuationConfig {
    fn from(m: &MonomialValuation) -> Self {
        ValuationConfig::Monomial {
            p: m.base().prime,
            b: m.center().clone(),
            delta: m.delta().clone(),
        }
    }
}

impl From<&AnyValuation> for ValuationConfig {
    fn from(v: &AnyValuation) -> Self {
        match v {
            AnyValuation::Monomial(m) => m.into(),
            AnyValuation::Chain(c) => ValuationConfig::Chain {
                depth0: Box::new(c.depth0().into()),
                steps: c
                    .steps()
                    .iter()
                    .map(|s| StepConfig {
                        q: s.key.clone(),
                        gamma: s.value.clone(),
                    })
                    .collect(),
            },
            AnyValuation::Pcs(s) => ValuationConfig::Pcs {
                p: s.base.prime,
                elems: s.elems.clone(),
                generator: s.generator.clone(),
            },
        }
    }
}

impl std::fmt::Display for AnyValuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&ValuationConfig::from(self).to_json())
    }
}

/// Parses and validates a valuation config.
pub fn parse_valuation(text: &str) -> Result<AnyValuation> {
    ValuationConfig::parse(text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn parses_documented_forms() {
        let m = parse_valuation(r#"{ type: "monomial", p: 2, b: "0", delta: "(1/2,0)" }"#).unwrap();
        assert_eq!(
            m,
            AnyValuation::Monomial(MonomialValuation::gauss(2, "1/2".parse().unwrap()).unwrap())
        );

        let c = parse_valuation(
            r#"{ type: "chain", depth0: { type: "monomial", p: 2, b: "0", delta: "1/2" },
                 steps: [ { Q: "x^2-2", gamma: "2" } ] }"#,
        )
        .unwrap();
        assert_eq!(c.as_chain().unwrap().depth(), 1);

        let s = parse_valuation(r#"{ type: "pcs", p: 2, elems: ["1","3","7","15"] }"#).unwrap();
        assert_eq!(s.as_pcs().unwrap().elems, [1, 3, 7, 15].map(rat).to_vec());
    }

    #[test]
    fn round_trips() {
        for text in [
            r#"{ type: "monomial", p: 3, b: "-1/2", delta: "(0,1)" }"#,
            r#"{ type: "chain", depth0: { type: "monomial", p: 2, b: 1, delta: "1/2" },
                 steps: [ { Q: "(x-1)^2 - 2", gamma: "(2, -1/3)" } ] }"#,
            r#"{ type: "pcs", p: 5, elems: [1, "6"], generator: { rule: "partial_sums", coeff: "1", step: 1 } }"#,
        ] {
            let v = parse_valuation(text).unwrap();
            let printed = v.to_string();
            assert_eq!(parse_valuation(&printed).unwrap(), v, "{printed}");
            assert_eq!(ValuationConfig::parse(&printed).unwrap().to_json(), printed);
        }
    }

    #[test]
    fn rejects_bad_configs() {
        for text in [
            r#"{ type: "monomial", p: 2, b: "0", delta: "1", extra: 1 }"#,
            r#"{ type: "monomial", p: 4, b: "0", delta: "1" }"#,
            r#"{ type: "monomial", p: 2, b: "0", delta: "inf" }"#,
            r#"{ type: "gauss", p: 2 }"#,
            r#"{ type: "chain", depth0: { type: "pcs", p: 2, elems: [] }, steps: [] }"#,
            r#"{ type: "chain", depth0: { type: "monomial", p: 2, b: "0", delta: "1/2" },
                 steps: [ { Q: "x^2-2", gamma: "1" } ] }"#,
            r#"{ type: "monomial", p: 2, b: "1/0", delta: "1" }"#,
        ] {
            assert!(parse_valuation(text).is_err(), "{text}");
        }
    }
}
