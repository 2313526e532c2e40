//! Dense univariate polynomials over Q.
//!
//! `coeffs[i]` is the coefficient of `x^i`. The vector never has trailing
//! zeros, so the zero polynomial is the empty vector and equality is
//! structural.

mod irreducible;
mod newton;
mod parse;

use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{binomial, height, rat};

pub use irreducible::{is_irreducible_bounded, Irreducibility};
pub use newton::{newton_polygon, NewtonPolygon, Slope};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn x() -> Self {
        Poly::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `x − c`
    pub fn linear(c: BigRational) -> Self {
        Poly::from_coeffs(vec![-c, BigRational::one()])
    }

    pub fn monomial(c: BigRational, deg: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        coeffs[deg] = c;
        Poly::from_coeffs(coeffs)
    }

    /// Ascending coefficients; trailing zeros are stripped.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[BigRational]) -> Self {
        roots
            .iter()
            .fold(Poly::one(), |acc, r| &acc * &Poly::linear(r.clone()))
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    /// Largest coefficient height; zero for the zero polynomial.
    pub fn height(&self) -> num_bigint::BigInt {
        self.coeffs
            .iter()
            .map(height)
            .max()
            .unwrap_or_else(num_bigint::BigInt::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn make_monic(&self) -> Result<Poly> {
        let lc = self
            .leading_coeff()
            .ok_or_else(|| Error::pre("zero polynomial has no monic associate"))?;
        Ok(self.scale(&lc.recip()))
    }

    pub fn pow(&self, n: usize) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * at + c)
    }

    /// Long division: `self = quotient · divisor + remainder` with
    /// `deg(remainder) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// The unique `(p_0, …, p_n)` with `self = Σ p_i q^i` and every `p_i`
    /// zero or of degree below `deg(q)`. The zero polynomial expands to the
    /// empty sequence.
    pub fn q_expansion(&self, q: &Poly) -> Result<Vec<Poly>> {
        match q.degree() {
            Some(d) if d >= 1 => {}
            _ => return Err(Error::pre("expansion base must have degree >= 1")),
        }
        if !q.is_monic() {
            return Err(Error::pre("expansion base must be monic"));
        }
        let mut terms = Vec::new();
        let mut rest = self.clone();
        while !rest.is_zero() {
            let (quot, rem) = rest.divmod(q)?;
            terms.push(rem);
            rest = quot;
        }
        Ok(terms)
    }

    /// Re-assembles `Σ terms[i] · q^i` by Horner's rule.
    pub fn from_expansion(terms: &[Poly], q: &Poly) -> Poly {
        terms
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, t| &(&acc * q) + t)
    }

    /// The r-th Hasse derivative `Σ_{i≥r} binom(i, r) c_i x^{i−r}`, i.e. the
    /// coefficient of `y^r` in `f(x + y)`.
    pub fn hasse_derivative(&self, r: usize) -> Poly {
        if r == 0 {
            return self.clone();
        }
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(r)
                .map(|(i, c)| c * BigRational::from_integer(binomial(i, r)))
                .collect(),
        )
    }

    /// `g(x) = f(x + b)`. The coefficient of `x^i` in `g` is `∂_i f(b)`.
    pub fn taylor_shift(&self, b: &BigRational) -> Poly {
        // Horner on x + b, updating coefficients in place.
        let n = self.coeffs.len();
        let mut c = self.coeffs.clone();
        if b.is_zero() {
            return self.clone();
        }
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * b;
                c[j] += t;
            }
        }
        Poly::from_coeffs(c)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
