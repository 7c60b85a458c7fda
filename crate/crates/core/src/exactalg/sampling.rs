//! Random rational points for Schwartz–Zippel identity testing.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::expr::LaurentExpr;
use super::generator::Generator;
use super::AlgError;

/// Points evaluated per identity in numeric mode.
pub const SAMPLE_POINTS: usize = 5;
/// Numerators lie in `[-COORD_BOUND, COORD_BOUND]`, denominators in `[1, COORD_BOUND]`.
pub const COORD_BOUND: i64 = 999;
const MAX_RESAMPLES: usize = 1000;

pub type Point = HashMap<Generator, BigRational>;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// A nonzero rational `p/q` with `|p| ≤ 999`, `1 ≤ q ≤ 999`.
    pub fn rational(&mut self) -> BigRational {
        loop {
            let p = self.rng.gen_range(-COORD_BOUND..=COORD_BOUND);
            if p == 0 {
                continue;
            }
            let q = self.rng.gen_range(1..=COORD_BOUND);
            return BigRational::new(BigInt::from(p), BigInt::from(q));
        }
    }

    pub fn point(&mut self, gens: &[Generator]) -> Point {
        gens.iter().map(|&g| (g, self.rational())).collect()
    }

    /// Draws a point for which `admissible` holds.
    pub fn admissible_point(&mut self, gens: &[Generator], admissible: impl Fn(&Point) -> bool) -> Point {
        for _ in 0..MAX_RESAMPLES {
            let p = self.point(gens);
            if admissible(&p) {
                return p;
            }
        }
        panic!("no admissible sample point after {MAX_RESAMPLES} draws");
    }
}

/// True when `x` lies on one of the loci excluded from generic statements:
/// `x = ±1`.
pub fn is_unit(x: &BigRational) -> bool {
    x.abs().is_one()
}

/// The generic-position filter: every `zeta`-type coordinate, and every
/// pairwise product of them, avoids `±1`, and `q^4 ≠ 1`.
pub fn generic_point(p: &Point) -> bool {
    let zetas: Vec<&BigRational> =
        [Generator::ZETA, Generator::ZETA_P, Generator::ZETA_PP].iter().filter_map(|g| p.get(g)).collect();
    for (i, a) in zetas.iter().enumerate() {
        if is_unit(a) {
            return false;
        }
        for b in &zetas[i + 1..] {
            if is_unit(&(*a * *b)) {
                return false;
            }
        }
    }
    if let Some(q) = p.get(&Generator::Q) {
        if is_unit(q) {
            return false;
        }
    }
    true
}

/// Probabilistic zero test: evaluates every expression at `SAMPLE_POINTS`
/// random admissible points. Points at which some denominator vanishes are
/// discarded and redrawn.
pub fn schwartz_zippel_zero(
    exprs: &[LaurentExpr],
    seed: u64,
    admissible: impl Fn(&Point) -> bool,
) -> Result<bool, AlgError> {
    let mut gens: Vec<Generator> = exprs.iter().flat_map(|e| e.generators()).collect();
    gens.sort();
    gens.dedup();
    let mut sampler = Sampler::new(seed);
    let mut accepted = 0;
    let mut draws = 0;
    while accepted < SAMPLE_POINTS {
        draws += 1;
        if draws > MAX_RESAMPLES {
            return Err(AlgError::DivisionByZero);
        }
        let p = sampler.admissible_point(&gens, &admissible);
        let mut all_zero = true;
        let mut singular = false;
        for e in exprs {
            match e.eval_rational(&p) {
                Ok(v) => all_zero &= v.is_zero(),
                Err(AlgError::DivisionByZero) => {
                    singular = true;
                    break;
                }
                Err(other) => return Err(other),
            }
        }
        if singular {
            continue;
        }
        if !all_zero {
            return Ok(false);
        }
        accepted += 1;
    }
    Ok(true)
}
