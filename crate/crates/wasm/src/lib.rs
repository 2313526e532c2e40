//! Browser demo bindings.
//!
//! Each operation is a plain function from strings to a JSON string so it
//! can be exercised natively; the `#[wasm_bindgen]` wrappers only convert
//! the error type.

use num_traits::ToPrimitive;
use serde_json::{json, Value as Json};
use wasm_bindgen::prelude::*;

use keypoly::analysis::{delta_depth1_report, epsilon, epsilon_delta_crosscheck, truncate};
use keypoly::poly::newton_polygon;
use keypoly::valuation::parse_valuation;
use keypoly::{BaseValuation, MonomialValuation, Poly, Valuation, Value};

type Result<T> = std::result::Result<T, String>;

fn poly(name: &str, text: &str) -> Result<Poly> {
    text.parse().map_err(|e| format!("{name}: {e}"))
}

fn float(v: &Value) -> Option<f64> {
    v.major().and_then(|a| a.to_f64())
}

/// Newton polygon of `f(x + center)`: the coefficient points, the lower
/// hull and the root valuations it encodes.
pub fn newton_polygon_json(p: u64, center: &str, f: &str) -> Result<String> {
    let base = BaseValuation::new(p).map_err(|e| e.to_string())?;
    let b = center
        .trim()
        .parse()
        .map_err(|_| format!("center: not a rational: {center}"))?;
    let shifted = poly("f", f)?.taylor_shift(&b);
    let np = newton_polygon(&shifted, &base).map_err(|e| e.to_string())?;
    let points: Vec<Json> = shifted
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(i, c)| json!([i, float(&base.eval(c))]))
        .collect();
    let hull: Vec<Json> = np
        .vertices
        .iter()
        .map(|(i, v)| json!([i, float(v)]))
        .collect();
    Ok(json!({
        "shifted": shifted,
        "points": points,
        "hull": hull,
        "polygon": np,
    })
    .to_string())
}

/// ε and δ of `f` under the monomial valuation `ν_{center, delta}`.
/// δ is only defined for monic `f`; otherwise it is reported as null.
pub fn epsilon_delta_json(p: u64, center: &str, delta: &str, f: &str) -> Result<String> {
    let b = center
        .trim()
        .parse()
        .map_err(|_| format!("center: not a rational: {center}"))?;
    let d: Value = delta.trim().parse().map_err(|e| format!("delta: {e}"))?;
    let base = BaseValuation::new(p).map_err(|e| e.to_string())?;
    let w = MonomialValuation::new(base, b, d).map_err(|e| e.to_string())?;
    let f = poly("f", f)?;
    let eps = epsilon(&w, &f).map_err(|e| e.to_string())?;
    let (delta, crosscheck) = if f.is_monic() {
        (
            Some(delta_depth1_report(&w, &f).map_err(|e| e.to_string())?),
            Some(epsilon_delta_crosscheck(&w, &f).map_err(|e| e.to_string())?),
        )
    } else {
        (None, None)
    };
    Ok(json!({
        "value": w.eval(&f),
        "epsilon": eps,
        "delta": delta,
        "crosscheck": crosscheck,
    })
    .to_string())
}

/// The q-expansion of `f` with term values, its minimum and the true value.
pub fn truncation_json(valuation: &str, f: &str, q: &str) -> Result<String> {
    let v = parse_valuation(valuation).map_err(|e| format!("valuation: {e}"))?;
    let chain = v
        .as_chain()
        .ok_or("valuation: a sequence prefix has no finite expansion")?;
    let f = poly("f", f)?;
    let q = poly("q", q)?;
    let report = truncate(&chain, &q, &f).map_err(|e| e.to_string())?;
    let actual = chain.eval(&f);
    Ok(json!({
        "equal": report.min_value == actual,
        "value": actual,
        "report": report,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn newton(p: u32, center: &str, f: &str) -> std::result::Result<String, JsValue> {
    newton_polygon_json(p.into(), center, f).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = epsilonDelta)]
pub fn epsilon_delta(
    p: u32,
    center: &str,
    delta: &str,
    f: &str,
) -> std::result::Result<String, JsValue> {
    epsilon_delta_json(p.into(), center, delta, f).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn truncation(valuation: &str, f: &str, q: &str) -> std::result::Result<String, JsValue> {
    truncation_json(valuation, f, q).map_err(|e| JsValue::from_str(&e))
}
