use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::generator::Generator;
use super::monomial::Monomial;
use super::AlgError;

/// A multivariate Laurent polynomial with rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by [`Monomial`], so iteration order is
/// the canonical graded-lex order and zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> LaurentPoly {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> LaurentPoly {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: BigRational, m: Monomial) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn var(g: Generator) -> LaurentPoly {
        Self::term(BigRational::one(), Monomial::var(g))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// The largest monomial and its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn as_term(&self) -> Option<(Monomial, BigRational)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((*m, c.clone()))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &BigRational) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(m, k)| (*m, k * c)).collect();
        LaurentPoly { terms }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        let terms = self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect();
        LaurentPoly { terms }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Componentwise minimum of all exponent vectors (the monomial content).
    pub fn min_exponents(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(*first, |acc, m| acc.meet(m)),
        }
    }

    pub fn max_exponents(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(*first, |acc, m| acc.join(m)),
        }
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.terms.keys().flat_map(|m| m.support().map(|(g, _)| g)).collect()
    }

    /// Splits the polynomial by the exponent of `g`: `self = Σ_e coeffs[e]·g^e`.
    pub fn coefficients_in(&self, g: Generator) -> BTreeMap<i32, LaurentPoly> {
        let mut out: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exponent(g)).or_default().terms.insert(m.without(g), c.clone());
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    ///
    /// Plain leading-term division. The graded-lex order is a group order on
    /// monomials, so each quotient term is strictly smaller than the previous
    /// one; a quotient term outside the exponent box forced by the Newton
    /// polytopes proves non-divisibility, which bounds the loop.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        let (dm, dc) = d.leading()?;
        let (dm, dc) = (*dm, dc.clone());
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.terms.len() == 1 {
            let inv = dm.inv();
            let c = BigRational::one() / &dc;
            return Some(self.mul_monomial(&inv).scale(&c));
        }
        let lo = self.min_exponents().div(&d.min_exponents());
        let hi = self.max_exponents().div(&d.max_exponents());
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some((rm, rc)) = rem.leading() {
            let t = rm.div(&dm);
            if !t.within(&lo, &hi) {
                return None;
            }
            let c = rc / &dc;
            for (m, k) in &d.terms {
                let mm = m.mul(&t);
                let v = k * &c;
                match rem.terms.get_mut(&mm) {
                    Some(x) => {
                        *x -= &v;
                        if x.is_zero() {
                            rem.terms.remove(&mm);
                        }
                    }
                    None => {
                        rem.terms.insert(mm, -v);
                    }
                }
            }
            quot.insert(t, c);
        }
        Some(LaurentPoly { terms: quot })
    }

    pub fn eval(&self, point: &HashMap<Generator, BigRational>) -> Result<BigRational, AlgError> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (g, e) in m.support() {
                let x = point.get(&g).ok_or_else(|| AlgError::UnboundGenerator(g.name().to_string()))?;
                t *= powi(x, e)?;
            }
            acc += t;
        }
        Ok(acc)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }
}

pub(crate) fn powi(x: &BigRational, e: i32) -> Result<BigRational, AlgError> {
    if e < 0 && x.is_zero() {
        return Err(AlgError::DivisionByZero);
    }
    let base = if e < 0 { x.recip() } else { x.clone() };
    Ok(num_traits::pow(base, e.unsigned_abs() as usize))
}

impl From<Generator> for LaurentPoly {
    fn from(g: Generator) -> Self {
        LaurentPoly::var(g)
    }
}

impl From<i64> for LaurentPoly {
    fn from(n: i64) -> Self {
        LaurentPoly::constant(BigRational::from_integer(n.into()))
    }
}

impl From<BigRational> for LaurentPoly {
    fn from(c: BigRational) -> Self {
        LaurentPoly::constant(c)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect();
        LaurentPoly { terms }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl std::fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        super::expr::write_poly(f, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> LaurentPoly {
        LaurentPoly::var(Generator::ALPHA)
    }
    fn y() -> LaurentPoly {
        LaurentPoly::var(Generator::BETA)
    }

    #[test]
    fn difference_of_squares() {
        let one = LaurentPoly::one();
        let p = &(&x() + &one) * &(&x() - &one);
        assert_eq!(p, &x().pow(2) - &one);
    }

    #[test]
    fn exact_division_succeeds_and_fails() {
        let d = &x() - &y();
        let f = &(&x() + &y().pow(3)) * &d;
        assert_eq!(f.div_exact(&d).unwrap(), &x() + &y().pow(3));
        let g = &f + &LaurentPoly::one();
        assert!(g.div_exact(&d).is_none());
        // Laurent: x^-1 - y^-1 = (y - x)/(xy)
        let xi = x().mul_monomial(&Monomial::var_pow(Generator::ALPHA, -2));
        let yi = y().mul_monomial(&Monomial::var_pow(Generator::BETA, -2));
        let h = &xi - &yi;
        let q = h.div_exact(&d).unwrap();
        assert_eq!(&q * &d, h);
    }

    #[test]
    fn split_by_generator() {
        let p = &(&x().pow(2) * &y()) + &(&x() + &LaurentPoly::from(3));
        let parts = p.coefficients_in(Generator::ALPHA);
        assert_eq!(parts[&2], y());
        assert_eq!(parts[&0], LaurentPoly::from(3));
    }
}
