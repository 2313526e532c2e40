//! Seeded random polynomial corpora.
//!
//! Everything is driven by a `ChaCha8Rng` seeded from `CorpusSpec::seed`, so
//! identical specs give identical corpora on every platform.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::padic::Prime;
use crate::poly::Poly;
use crate::rational::height;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub max_degree: usize,
    /// Bound on `max(|numerator|, denominator)` of every coefficient.
    pub height: u64,
    pub seed: u64,
    pub count: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            max_degree: 6,
            height: 16,
            seed: 0,
            count: 200,
        }
    }
}

pub fn random_rational(rng: &mut impl Rng, h: u64) -> BigRational {
    let h = h.max(1) as i64;
    let n = rng.gen_range(-h..=h);
    let d = if rng.gen_bool(0.5) {
        1
    } else {
        rng.gen_range(1..=h)
    };
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A nonzero polynomial of degree at most `max_degree`.
pub fn random_poly(rng: &mut impl Rng, max_degree: usize, h: u64) -> Poly {
    loop {
        let deg = rng.gen_range(0..=max_degree);
        let coeffs = (0..=deg)
            .map(|_| {
                // sparse polynomials exercise more Newton polygon shapes
                if rng.gen_bool(0.25) {
                    BigRational::default()
                } else {
                    random_rational(rng, h)
                }
            })
            .collect();
        let f = Poly::from_coeffs(coeffs);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A monic polynomial of degree in `1..=max_degree`.
pub fn random_monic(rng: &mut impl Rng, max_degree: usize, h: u64) -> Poly {
    let deg = rng.gen_range(1..=max_degree.max(1));
    let mut coeffs: Vec<BigRational> = (0..deg).map(|_| random_rational(rng, h)).collect();
    coeffs.push(BigRational::from_integer(1.into()));
    Poly::from_coeffs(coeffs)
}

/// A monic product of linear factors `x − (b + u·p^k)` whose roots cluster
/// p-adically around `b`; retried until all coefficients fit the height.
pub fn clustered_monic(
    rng: &mut impl Rng,
    max_degree: usize,
    h: u64,
    p: Prime,
    b: &BigRational,
) -> Option<Poly> {
    let hb = BigInt::from(h);
    for _ in 0..32 {
        let deg = rng.gen_range(1..=max_degree.max(1));
        let roots: Vec<BigRational> = (0..deg)
            .map(|_| {
                let k = rng.gen_range(-1i32..=3);
                let u = BigRational::from_integer(BigInt::from(
                    *[1i64, -1, 2, 3, -3, 5].choose(rng).expect("nonempty"),
                ));
                let pk = BigRational::from_integer(BigInt::from(p.get())).pow(k);
                b + u * pk
            })
            .collect();
        let f = Poly::from_roots(&roots);
        if f.coeffs().iter().all(|c| height(c) <= hb) {
            return Some(f);
        }
    }
    None
}

impl CorpusSpec {
    pub fn new(max_degree: usize, height: u64, seed: u64, count: usize) -> Self {
        CorpusSpec {
            max_degree,
            height,
            seed,
            count,
        }
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    /// `count` nonzero polynomials; the first few are fixed small shapes
    /// (`1`, `x`, `x^2`, …) so that every corpus contains the obvious cases.
    pub fn polys(&self) -> Vec<Poly> {
        let mut rng = self.rng(1);
        let mut out: Vec<Poly> = (0..=self.max_degree.min(3))
            .map(|d| Poly::x().pow(d))
            .collect();
        while out.len() < self.count {
            out.push(random_poly(&mut rng, self.max_degree, self.height));
        }
        out.truncate(self.count);
        out
    }

    pub fn monics(&self) -> Vec<Poly> {
        let mut rng = self.rng(2);
        (0..self.count)
            .map(|_| random_monic(&mut rng, self.max_degree, self.height))
            .collect()
    }

    /// Monic polynomials, half uniformly random and half with roots
    /// clustered around `b`.
    pub fn monics_near(&self, p: Prime, b: &BigRational) -> Vec<Poly> {
        let mut rng = self.rng(3);
        (0..self.count)
            .map(|i| {
                if i % 2 == 1 {
                    if let Some(f) = clustered_monic(&mut rng, self.max_degree, self.height, p, b) {
                        return f;
                    }
                }
                random_monic(&mut rng, self.max_degree, self.height)
            })
            .collect()
    }

    pub fn pairs(&self) -> Vec<(Poly, Poly)> {
        let mut rng = self.rng(4);
        (0..self.count)
            .map(|_| {
                (
                    random_poly(&mut rng, self.max_degree, self.height),
                    random_poly(&mut rng, self.max_degree, self.height),
                )
            })
            .collect()
    }
}
