//! Bounded irreducibility check over Q.
//!
//! A monic `f` is rescaled to the monic integer polynomial
//! `g(x) = L^n f(x / L)` (`L` the lcm of the coefficient denominators). By
//! Gauss's lemma every monic factor of `g` over Q has integer coefficients,
//! and by Mignotte's bound the `j`-th coefficient of a degree-`k` factor is
//! at most `binom(k, j) · ‖g‖₂` in absolute value. Factors are searched up to
//! `min(Mignotte, height_bound)`; when the Mignotte bound fits under the
//! height bound for every searched degree, "no factor found" is a proof.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::Poly;
use crate::error::{Error, Result};
use crate::rational::binomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Irreducibility {
    Irreducible,
    /// Carries a monic proper factor, verified by exact division.
    Reducible {
        factor: Poly,
    },
    UnknownAtBound {
        height_bound: u64,
    },
}

/// Candidate factors tested per degree before giving up.
const SEARCH_CAP: u128 = 4_000_000;
/// Trial-division limit when listing divisors of the constant term.
const TRIAL_LIMIT: u64 = 1_000_000;

pub fn is_irreducible_bounded(f: &Poly, height_bound: u64) -> Result<Irreducibility> {
    let n = match f.degree() {
        Some(n) if n >= 1 && f.is_monic() => n,
        _ => {
            return Err(Error::pre(
                "irreducibility check needs a monic polynomial of degree >= 1",
            ))
        }
    };
    if n == 1 {
        return Ok(Irreducibility::Irreducible);
    }
    if f.coeff(0).is_zero() {
        return Ok(Irreducibility::Reducible { factor: Poly::x() });
    }

    let scale = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let g: Vec<BigInt> = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let v = c * BigRational::from_integer(scale.pow((n - i) as u32));
            debug_assert!(v.is_integer());
            v.to_integer()
        })
        .collect();
    let norm_sq: BigInt = g.iter().map(|c| c * c).sum();
    let height = BigInt::from(height_bound);
    let mut exhaustive = true;

    let divisors = small_divisors(&g[0].abs());

    for k in 1..=n / 2 {
        let limits: Vec<BigInt> = (0..k)
            .map(|j| {
                let b = binomial(k, j);
                (&b * &b * &norm_sq).sqrt()
            })
            .collect();
        let ranges: Vec<BigInt> = limits
            .iter()
            .map(|l| {
                if *l > height {
                    height.clone()
                } else {
                    l.clone()
                }
            })
            .collect();
        // with a full divisor list the rational-root test needs no height cap
        let full_root_test = k == 1 && divisors.is_some();
        if !full_root_test && limits.iter().zip(&ranges).any(|(l, r)| l > r) {
            exhaustive = false;
        }

        // constant term candidates: divisors of g(0) within range
        let constants: Vec<BigInt> = match &divisors {
            Some(ds) if full_root_test => ds.iter().flat_map(|d| [d.clone(), -d.clone()]).collect(),
            Some(ds) => ds
                .iter()
                .filter(|d| **d <= ranges[0])
                .flat_map(|d| [d.clone(), -d.clone()])
                .collect(),
            None => {
                let r = ranges[0]
                    .to_i64()
                    .unwrap_or(i64::MAX)
                    .min(TRIAL_LIMIT as i64);
                if BigInt::from(r) < ranges[0] {
                    exhaustive = false;
                }
                (1..=r)
                    .map(BigInt::from)
                    .filter(|d| (&g[0] % d).is_zero())
                    .flat_map(|d| [d.clone(), -d])
                    .collect()
            }
        };

        let mut space = constants.len() as u128;
        for r in &ranges[1..] {
            let width = (r * 2u32 + 1u32).to_u128().unwrap_or(u128::MAX);
            space = space.saturating_mul(width);
        }
        if space > SEARCH_CAP {
            exhaustive = false;
            continue;
        }

        if let Some(h) = search_degree(&g, k, &constants, &ranges[1..]) {
            let factor = unscale(&h, &scale);
            let (_, rem) = f.divmod(&factor)?;
            debug_assert!(rem.is_zero());
            if rem.is_zero() {
                return Ok(Irreducibility::Reducible { factor });
            }
        }
    }

    Ok(if exhaustive {
        Irreducibility::Irreducible
    } else {
        Irreducibility::UnknownAtBound { height_bound }
    })
}

/// Odometer over `c_1..c_{k-1}` in `[-r_j, r_j]` for each constant term.
fn search_degree(
    g: &[BigInt],
    k: usize,
    constants: &[BigInt],
    ranges: &[BigInt],
) -> Option<Vec<BigInt>> {
    let probes: Vec<(BigInt, BigInt)> = [1i64, -1, 2, -2, 3]
        .iter()
        .map(|&a| {
            let a = BigInt::from(a);
            let ga = eval_int(g, &a);
            (a, ga)
        })
        .collect();

    for c0 in constants {
        let mut mid: Vec<BigInt> = ranges.iter().map(|r| -r.clone()).collect();
        loop {
            let mut h = Vec::with_capacity(k + 1);
            h.push(c0.clone());
            h.extend(mid.iter().cloned());
            h.push(BigInt::one());
            let plausible = probes.iter().all(|(a, ga)| {
                let ha = eval_int(&h, a);
                if ha.is_zero() {
                    ga.is_zero()
                } else {
                    (ga % &ha).is_zero()
                }
            });
            if plausible && divides(&h, g) {
                return Some(h);
            }
            // advance odometer
            let mut idx = 0;
            loop {
                if idx == mid.len() {
                    break;
                }
                if mid[idx] < ranges[idx] {
                    mid[idx] += 1;
                    break;
                }
                mid[idx] = -ranges[idx].clone();
                idx += 1;
            }
            if idx == mid.len() {
                break;
            }
        }
    }
    None
}

fn eval_int(c: &[BigInt], at: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, x| acc * at + x)
}

/// Exact division test for a monic integer divisor.
fn divides(h: &[BigInt], g: &[BigInt]) -> bool {
    let dh = h.len() - 1;
    let mut rem = g.to_vec();
    for top in (dh..rem.len()).rev() {
        let c = rem[top].clone();
        if c.is_zero() {
            continue;
        }
        for (j, hj) in h.iter().enumerate() {
            rem[top - dh + j] -= &c * hj;
        }
    }
    rem[..dh].iter().all(Zero::is_zero)
}

/// `h(x) ↦ L^{-k} h(L x)`
fn unscale(h: &[BigInt], scale: &BigInt) -> Poly {
    let k = h.len() - 1;
    Poly::from_coeffs(
        h.iter()
            .enumerate()
            .map(|(i, c)| BigRational::new(c.clone(), scale.pow((k - i) as u32)))
            .collect(),
    )
}

/// All positive divisors of `n`, or `None` if `n` cannot be factored by
/// trial division up to `TRIAL_LIMIT`.
fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut m = n.to_u128()?;
    let mut factors: Vec<(u128, u32)> = Vec::new();
    let mut d: u128 = 2;
    while d * d <= m && d <= TRIAL_LIMIT as u128 {
        let mut e = 0;
        while m % d == 0 {
            m /= d;
            e += 1;
        }
        if e > 0 {
            factors.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        if d * d <= m {
            return None;
        }
        factors.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (q, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for dv in &divs {
            let mut pw = BigInt::one();
            for _ in 0..=e {
                next.push(dv * &pw);
                pw *= q;
            }
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}
