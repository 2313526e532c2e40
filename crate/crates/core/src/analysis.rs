//! Truncations `ν_q`, the invariant ε via Hasse derivatives, and the
//! root-distance invariant δ via Newton polygons.

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::CorpusSpec;
use crate::error::{Error, Result};
use crate::poly::{newton_polygon, NewtonPolygon, Poly};
use crate::valuation::{MonomialValuation, Valuation};
use crate::value::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionTerm {
    pub i: usize,
    pub p_i: Poly,
    /// `ν(p_i · q^i)`.
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionReport {
    pub f: Poly,
    pub q: Poly,
    /// Nonzero terms of the q-expansion only.
    pub terms: Vec<ExpansionTerm>,
    pub min_value: Value,
    pub argmin: Vec<usize>,
}

impl ExpansionReport {
    pub fn reassemble(&self) -> Poly {
        self.terms
            .iter()
            .fold(Poly::zero(), |acc, t| &acc + &(&t.p_i * &self.q.pow(t.i)))
    }
}

/// `ν_q(f) = min_i ν(p_i q^i)` with the full term table.
pub fn truncate<V: Valuation + ?Sized>(v: &V, q: &Poly, f: &Poly) -> Result<ExpansionReport> {
    let expansion = f.q_expansion(q)?;
    let terms: Vec<ExpansionTerm> = expansion
        .into_iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(i, p)| {
            let value = v.eval(&(&p * &q.pow(i)));
            ExpansionTerm { i, p_i: p, value }
        })
        .collect();
    let min_value = terms
        .iter()
        .map(|t| &t.value)
        .min()
        .cloned()
        .unwrap_or(Value::Infinity);
    let argmin = terms
        .iter()
        .filter(|t| t.value == min_value)
        .map(|t| t.i)
        .collect();
    Ok(ExpansionReport {
        f: f.clone(),
        q: q.clone(),
        terms,
        min_value,
        argmin,
    })
}

pub fn truncated_value<V: Valuation + ?Sized>(v: &V, q: &Poly, f: &Poly) -> Result<Value> {
    Ok(truncate(v, q, f)?.min_value)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum TruncationVerdict {
    /// Equal on every corpus element; says nothing beyond the corpus.
    Equal { checked: usize },
    Differs {
        f: Poly,
        truncated: Value,
        actual: Value,
    },
}

/// Compares `ν_q` with `ν` on a corpus; the first difference in corpus order
/// is the witness.
pub fn truncation_equals<V: Valuation + Sync + ?Sized>(
    v: &V,
    q: &Poly,
    corpus: &[Poly],
) -> Result<TruncationVerdict> {
    if corpus.is_empty() {
        return Err(Error::pre("corpus must be nonempty"));
    }
    let found = corpus
        .par_iter()
        .map(|f| -> Result<Option<TruncationVerdict>> {
            let truncated = truncated_value(v, q, f)?;
            let actual = v.eval(f);
            Ok((truncated != actual).then(|| TruncationVerdict::Differs {
                f: f.clone(),
                truncated,
                actual,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(found
        .into_iter()
        .flatten()
        .next()
        .unwrap_or(TruncationVerdict::Equal {
            checked: corpus.len(),
        }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationReport {
    pub q: Poly,
    pub corpus: CorpusSpec,
    #[serde(flatten)]
    pub verdict: TruncationVerdict,
}

pub fn truncation_equals_on<V: Valuation + Sync + ?Sized>(
    v: &V,
    q: &Poly,
    corpus: CorpusSpec,
) -> Result<TruncationReport> {
    Ok(TruncationReport {
        q: q.clone(),
        corpus,
        verdict: truncation_equals(v, q, &corpus.polys())?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MultiplicativityVerdict {
    Valid {
        checked: usize,
    },
    /// `ν_q(fg) ≠ ν_q(f) + ν_q(g)`, recomputed before being reported.
    Counterexample {
        f: Poly,
        g: Poly,
        product: Value,
        sum: Value,
    },
}

pub fn truncation_multiplicativity_scan<V: Valuation + Sync + ?Sized>(
    v: &V,
    q: &Poly,
    pairs: &[(Poly, Poly)],
) -> Result<MultiplicativityVerdict> {
    let check = |f: &Poly, g: &Poly| -> Result<Option<(Value, Value)>> {
        let product = truncated_value(v, q, &(f * g))?;
        let sum = &truncated_value(v, q, f)? + &truncated_value(v, q, g)?;
        Ok((product != sum).then_some((product, sum)))
    };
    let found = pairs
        .par_iter()
        .map(|(f, g)| check(f, g).map(|r| r.map(|_| (f, g))))
        .collect::<Result<Vec<_>>>()?;
    match found.into_iter().flatten().next() {
        Some((f, g)) => {
            let (product, sum) = check(f, g)?.expect("counterexample reproduces");
            Ok(MultiplicativityVerdict::Counterexample {
                f: f.clone(),
                g: g.clone(),
                product,
                sum,
            })
        }
        None => Ok(MultiplicativityVerdict::Valid {
            checked: pairs.len(),
        }),
    }
}

/// Pairs that stress `ν_q`: `(q, q)`, `q` against every corpus element, and
/// low-degree cofactors against each other, followed by `pairs`.
pub fn adversarial_pairs(q: &Poly, corpus: &[Poly], pairs: &[(Poly, Poly)]) -> Vec<(Poly, Poly)> {
    let dq = q.degree().unwrap_or(0);
    let mut out = vec![(q.clone(), q.clone())];
    out.extend(corpus.iter().map(|f| (q.clone(), f.clone())));
    let low: Vec<&Poly> = corpus
        .iter()
        .filter(|f| f.degree().is_some_and(|d| d < dq.max(1)))
        .take(24)
        .collect();
    for (i, f) in low.iter().enumerate() {
        for g in &low[i..] {
            out.push(((*f).clone(), (*g).clone()));
        }
    }
    out.extend(pairs.iter().cloned());
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsilonTerm {
    pub r: usize,
    pub nu_f: Value,
    pub nu_derivative: Value,
    pub quotient: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsilonReport {
    pub epsilon: Value,
    pub argmax_r: usize,
    /// One row per `r` in `1..=deg f` with `∂_r f ≠ 0`.
    pub terms: Vec<EpsilonTerm>,
}

/// `ε(f) = max_r (ν(f) − ν(∂_r f)) / r` over `1 ≤ r ≤ deg f`; ties go to the
/// smallest `r`.
pub fn epsilon<V: Valuation + ?Sized>(v: &V, f: &Poly) -> Result<EpsilonReport> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::pre("epsilon needs a nonconstant polynomial")),
    };
    let nu_f = v.eval(f);
    let mut terms = Vec::with_capacity(n);
    for r in 1..=n {
        let d = f.hasse_derivative(r);
        if d.is_zero() {
            continue;
        }
        let nu_d = v.eval(&d);
        let quotient = nu_f.checked_sub(&nu_d)?.divide_by_nat(r)?;
        terms.push(EpsilonTerm {
            r,
            nu_f: nu_f.clone(),
            nu_derivative: nu_d,
            quotient,
        });
    }
    // ∂_n f is the leading coefficient, so `terms` is never empty
    let best = terms
        .iter()
        .fold(None::<&EpsilonTerm>, |acc, t| match acc {
            Some(b) if b.quotient >= t.quotient => Some(b),
            _ => Some(t),
        })
        .expect("top derivative is nonzero");
    Ok(EpsilonReport {
        epsilon: best.quotient.clone(),
        argmax_r: best.r,
        terms,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    pub delta: Value,
    /// `f(x + b)`, whose Newton polygon carries `{v_p(a − b)}` over the
    /// roots `a` of `f`.
    pub shifted: Poly,
    pub polygon: NewtonPolygon,
}

/// `max_a min(δ, v_p(b − a))` over the roots `a` of `f`, read off the Newton
/// polygon of `f(x + b)`.
pub fn delta_depth1_report(w: &MonomialValuation, f: &Poly) -> Result<DeltaReport> {
    match f.degree() {
        Some(n) if n >= 1 && f.is_monic() => {}
        _ => return Err(Error::pre("delta needs a monic polynomial of degree >= 1")),
    }
    let shifted = f.taylor_shift(w.center());
    let polygon = newton_polygon(&shifted, &w.base())?;
    let delta = polygon
        .root_valuations_with_zero()
        .into_iter()
        .map(|s| s.min(w.delta().clone()))
        .max()
        .expect("degree >= 1");
    Ok(DeltaReport {
        delta,
        shifted,
        polygon,
    })
}

pub fn delta_depth1(w: &MonomialValuation, f: &Poly) -> Result<Value> {
    Ok(delta_depth1_report(w, f)?.delta)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Crosscheck {
    Agree { value: Value },
    Disagree { epsilon: Value, delta: Value },
}

pub fn epsilon_delta_crosscheck(w: &MonomialValuation, f: &Poly) -> Result<Crosscheck> {
    let d = delta_depth1(w, f)?;
    let e = epsilon(w, f)?.epsilon;
    Ok(if d == e {
        Crosscheck::Agree { value: e }
    } else {
        Crosscheck::Disagree {
            epsilon: e,
            delta: d,
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegroupingReport {
    /// `p_{2j} + p_{2j+1}·q` (with `p_n = 0` appended for an odd count)
    /// coincides with the `q²`-expansion term by term.
    pub termwise_match: bool,
    pub nu_q: Value,
    pub nu_q2: Value,
    pub nu: Value,
}

impl RegroupingReport {
    /// The regrouping identity and `ν_q ≤ ν_{q²} ≤ ν`; when `ν_q(f) = ν(f)`
    /// this forces `ν_{q²}(f) = ν(f)`.
    pub fn holds(&self) -> bool {
        self.termwise_match
            && self.nu_q <= self.nu_q2
            && self.nu_q2 <= self.nu
            && (self.nu_q != self.nu || self.nu_q2 == self.nu)
    }
}

pub fn square_regrouping_check<V: Valuation + ?Sized>(
    v: &V,
    q: &Poly,
    f: &Poly,
) -> Result<RegroupingReport> {
    let mut terms = f.q_expansion(q)?;
    if terms.len() % 2 == 1 {
        terms.push(Poly::zero());
    }
    let regrouped: Vec<Poly> = terms.chunks(2).map(|c| &c[0] + &(&c[1] * q)).collect();
    let q2 = q.pow(2);
    let mut direct = f.q_expansion(&q2)?;
    direct.resize(regrouped.len(), Poly::zero());
    let mut regrouped_trimmed = regrouped;
    while regrouped_trimmed.last().is_some_and(Poly::is_zero) {
        regrouped_trimmed.pop();
    }
    while direct.last().is_some_and(Poly::is_zero) {
        direct.pop();
    }
    Ok(RegroupingReport {
        termwise_match: regrouped_trimmed == direct,
        nu_q: truncated_value(v, q, f)?,
        nu_q2: truncated_value(v, &q2, f)?,
        nu: v.eval(f),
    })
}
