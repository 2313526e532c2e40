use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::Poly;
use crate::error::{Error, Result};
use crate::padic::{ord_rational, BaseValuation};
use crate::value::Value;

/// One segment of a Newton polygon, read as root data: `multiplicity` roots
/// (counted in an algebraic closure) have p-adic value `valuation`, which is
/// the negated geometric slope of the segment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Slope {
    pub valuation: Value,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    /// Lower convex hull of `{(i, v_p(c_i))}`, left to right, collinear
    /// points dropped.
    pub vertices: Vec<(usize, Value)>,
    /// Root valuations, strictly increasing.
    pub slopes: Vec<Slope>,
    /// Multiplicity of 0 as a root; these roots have value infinity and do
    /// not appear in `slopes`.
    pub zero_roots: usize,
}

impl NewtonPolygon {
    /// The root-valuation multiset, ascending, zero roots excluded.
    pub fn root_valuations(&self) -> Vec<Value> {
        self.slopes
            .iter()
            .flat_map(|s| std::iter::repeat(s.valuation.clone()).take(s.multiplicity))
            .collect()
    }

    /// The full root-valuation multiset including `zero_roots` copies of
    /// infinity.
    pub fn root_valuations_with_zero(&self) -> Vec<Value> {
        let mut out = self.root_valuations();
        out.extend(std::iter::repeat(Value::Infinity).take(self.zero_roots));
        out
    }
}

pub fn newton_polygon(f: &Poly, base: &BaseValuation) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::pre("Newton polygon of the zero polynomial"));
    }
    let points: Vec<(i64, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| ord_rational(c, base.prime).map(|v| (i as i64, v)))
        .collect();

    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(points.len());
    for &pt in &points {
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let a = hull[hull.len() - 1];
            let cross = (a.0 - o.0) as i128 * (pt.1 - o.1) as i128
                - (a.1 - o.1) as i128 * (pt.0 - o.0) as i128;
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }

    let mut slopes: Vec<Slope> = hull
        .windows(2)
        .map(|w| {
            let (i1, y1) = w[0];
            let (i2, y2) = w[1];
            let run = i2 - i1;
            Slope {
                valuation: Value::rank1(BigRational::new((y1 - y2).into(), run.into())),
                multiplicity: run as usize,
            }
        })
        .collect();
    slopes.reverse();
    debug_assert!(slopes.windows(2).all(|w| w[0].valuation < w[1].valuation));

    Ok(NewtonPolygon {
        vertices: hull
            .iter()
            .map(|&(i, y)| (i as usize, Value::from_int(y)))
            .collect(),
        slopes,
        zero_roots: f.coeffs().iter().take_while(|c| c.is_zero()).count(),
    })
}
