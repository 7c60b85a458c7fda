use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::generator::Generator;
use super::monomial::Monomial;
use super::poly::LaurentPoly;
use super::AlgError;

/// `p/q` as a [`BigRational`]. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Builds a substitution map from `(generator, value)` pairs.
pub fn bindings<I, V>(pairs: I) -> HashMap<Generator, LaurentExpr>
where
    I: IntoIterator<Item = (Generator, V)>,
    V: Into<LaurentExpr>,
{
    pairs.into_iter().map(|(g, v)| (g, v.into())).collect()
}

/// A rational function `num / den` in Laurent polynomials.
///
/// Kept in a light normal form: a single-term denominator is folded into the
/// numerator, a multi-term denominator has no monomial content and leading
/// coefficient 1, and the fraction collapses whenever `den` divides `num`
/// exactly. No gcd is taken, so two equal values may have different
/// representations; `==` compares by cross-multiplication.
#[derive(Clone)]
pub struct LaurentExpr {
    num: LaurentPoly,
    den: Option<LaurentPoly>,
}

impl LaurentExpr {
    pub fn zero() -> LaurentExpr {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> LaurentExpr {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn int(n: i64) -> LaurentExpr {
        Self::from_poly(n.into())
    }

    pub fn rational(c: BigRational) -> LaurentExpr {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn var(g: Generator) -> LaurentExpr {
        Self::from_poly(LaurentPoly::var(g))
    }

    /// Looks up (or registers) a generator by name and returns it as an expression.
    pub fn named(name: &str) -> Result<LaurentExpr, AlgError> {
        Ok(Self::var(Generator::new(name)?))
    }

    pub fn monomial(c: BigRational, m: Monomial) -> LaurentExpr {
        Self::from_poly(LaurentPoly::term(c, m))
    }

    pub fn from_poly(p: LaurentPoly) -> LaurentExpr {
        LaurentExpr { num: p, den: None }
    }

    pub fn fraction(num: LaurentPoly, den: LaurentPoly) -> Result<LaurentExpr, AlgError> {
        if den.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        Ok(Self::normalized(num, Some(den)))
    }

    fn normalized(mut num: LaurentPoly, den: Option<LaurentPoly>) -> LaurentExpr {
        let Some(mut den) = den else {
            return LaurentExpr { num, den: None };
        };
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        if let Some((m, c)) = den.as_term() {
            let inv = BigRational::one() / c;
            return Self::from_poly(num.mul_monomial(&m.inv()).scale(&inv));
        }
        let content = den.min_exponents();
        if !content.is_one() {
            let inv = content.inv();
            den = den.mul_monomial(&inv);
            num = num.mul_monomial(&inv);
        }
        let lc = den.leading().map(|(_, c)| c.clone()).unwrap();
        if !lc.is_one() {
            let inv = BigRational::one() / lc;
            den = den.scale(&inv);
            num = num.scale(&inv);
        }
        match num.div_exact(&den) {
            Some(q) => Self::from_poly(q),
            None => LaurentExpr { num, den: Some(den) },
        }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    /// The denominator, or `None` when the expression is a Laurent polynomial.
    pub fn denom(&self) -> Option<&LaurentPoly> {
        self.den.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_none() && self.num == LaurentPoly::one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_none()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_some() {
            return None;
        }
        self.num.as_constant()
    }

    /// Total number of stored terms (numerator plus denominator).
    pub fn term_count(&self) -> usize {
        self.num.len() + self.den.as_ref().map_or(0, |d| d.len())
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        let mut s = self.num.generators();
        if let Some(d) = &self.den {
            s.extend(d.generators());
        }
        s
    }

    pub fn inv(&self) -> Result<LaurentExpr, AlgError> {
        if self.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        let num = self.den.clone().unwrap_or_else(LaurentPoly::one);
        Ok(Self::normalized(num, Some(self.num.clone())))
    }

    pub fn checked_div(&self, rhs: &LaurentExpr) -> Result<LaurentExpr, AlgError> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power. Negative exponents are only defined for a single
    /// monomial; use [`LaurentExpr::pow_fraction`] to invert anything else.
    pub fn pow(&self, k: i64) -> Result<LaurentExpr, AlgError> {
        if k >= 0 {
            return Ok(self.pow_u(k as u64));
        }
        match (&self.den, self.num.as_term()) {
            (None, Some(_)) => Ok(self.inv()?.pow_u(k.unsigned_abs())),
            _ => Err(AlgError::UnsupportedOperation(format!("negative power of multi-term expression `{self}`"))),
        }
    }

    /// Integer power through the denominator field; errors only on `0^k`, `k < 0`.
    pub fn pow_fraction(&self, k: i64) -> Result<LaurentExpr, AlgError> {
        if k >= 0 {
            Ok(self.pow_u(k as u64))
        } else {
            Ok(self.inv()?.pow_u(k.unsigned_abs()))
        }
    }

    fn pow_u(&self, k: u64) -> LaurentExpr {
        let k = u32::try_from(k).expect("exponent too large");
        let num = self.num.pow(k);
        let den = self.den.as_ref().map(|d| d.pow(k));
        // A power of a normalized fraction keeps a monic, content-free denominator.
        match den {
            None => Self::from_poly(num),
            Some(d) => LaurentExpr { num, den: Some(d) },
        }
    }

    /// Simultaneous substitution of generators by expressions.
    pub fn substitute(&self, map: &HashMap<Generator, LaurentExpr>) -> Result<LaurentExpr, AlgError> {
        if self.generators().iter().all(|g| !map.contains_key(g)) {
            return Ok(self.clone());
        }
        let mut cache = HashMap::new();
        let num = substitute_poly(&self.num, map, &mut cache)?;
        match &self.den {
            None => Ok(num),
            Some(d) => {
                let den = substitute_poly(d, map, &mut cache)?;
                num.checked_div(&den)
            }
        }
    }

    pub fn eval_rational(&self, point: &HashMap<Generator, BigRational>) -> Result<BigRational, AlgError> {
        let n = self.num.eval(point)?;
        match &self.den {
            None => Ok(n),
            Some(d) => {
                let dv = d.eval(point)?;
                if dv.is_zero() {
                    Err(AlgError::DivisionByZero)
                } else {
                    Ok(n / dv)
                }
            }
        }
    }

    /// Exponent-indexed coefficients in `g` of a polynomial expression.
    pub fn coefficients_in(&self, g: Generator) -> Result<std::collections::BTreeMap<i32, LaurentExpr>, AlgError> {
        if self.den.is_some() {
            return Err(AlgError::NotPolynomialIn(g.name().to_string()));
        }
        Ok(self.num.coefficients_in(g).into_iter().map(|(e, p)| (e, Self::from_poly(p))).collect())
    }

    /// Rewrites the expression with all denominators cleared into a single
    /// `(numerator, denominator)` pair of polynomials.
    pub fn into_parts(self) -> (LaurentPoly, LaurentPoly) {
        (self.num, self.den.unwrap_or_else(LaurentPoly::one))
    }
}

/// True iff `a − b` is identically zero.
pub fn expr_equal(a: &LaurentExpr, b: &LaurentExpr) -> bool {
    a == b
}

fn substitute_poly(
    p: &LaurentPoly,
    map: &HashMap<Generator, LaurentExpr>,
    cache: &mut HashMap<(Generator, i32), LaurentExpr>,
) -> Result<LaurentExpr, AlgError> {
    // Unbound generators stay symbolic; collect their part as a plain monomial.
    let mut poly_part = LaurentPoly::zero();
    let mut frac_part = LaurentExpr::zero();
    for (m, c) in p.terms() {
        let mut kept = Monomial::one();
        let mut factor = LaurentExpr::one();
        for (g, e) in m.support() {
            match map.get(&g) {
                None => kept = kept.mul(&Monomial::var_pow(g, e)),
                Some(v) => {
                    let pw = match cache.get(&(g, e)) {
                        Some(x) => x.clone(),
                        None => {
                            let x = v.pow_fraction(e as i64)?;
                            cache.insert((g, e), x.clone());
                            x
                        }
                    };
                    factor = &factor * &pw;
                }
            }
        }
        let term = LaurentExpr::monomial(c.clone(), kept);
        let t = &factor * &term;
        if t.den.is_none() {
            poly_part = &poly_part + &t.num;
        } else {
            frac_part = &frac_part + &t;
        }
    }
    Ok(&LaurentExpr::from_poly(poly_part) + &frac_part)
}

impl Default for LaurentExpr {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialEq for LaurentExpr {
    fn eq(&self, other: &Self) -> bool {
        match (&self.den, &other.den) {
            (None, None) => self.num == other.num,
            (Some(a), Some(b)) if a == b => self.num == other.num,
            (None, Some(b)) => &self.num * b == other.num,
            (Some(a), None) => self.num == &other.num * a,
            (Some(a), Some(b)) => &self.num * b == &other.num * a,
        }
    }
}

impl Eq for LaurentExpr {}

impl From<Generator> for LaurentExpr {
    fn from(g: Generator) -> Self {
        LaurentExpr::var(g)
    }
}

impl From<i64> for LaurentExpr {
    fn from(n: i64) -> Self {
        LaurentExpr::int(n)
    }
}

impl From<BigRational> for LaurentExpr {
    fn from(c: BigRational) -> Self {
        LaurentExpr::rational(c)
    }
}

impl From<LaurentPoly> for LaurentExpr {
    fn from(p: LaurentPoly) -> Self {
        LaurentExpr::from_poly(p)
    }
}

impl Add for &LaurentExpr {
    type Output = LaurentExpr;
    fn add(self, rhs: &LaurentExpr) -> LaurentExpr {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        match (&self.den, &rhs.den) {
            (None, None) => LaurentExpr::from_poly(&self.num + &rhs.num),
            (Some(d), None) => LaurentExpr::normalized(&self.num + &(&rhs.num * d), Some(d.clone())),
            (None, Some(d)) => LaurentExpr::normalized(&(&self.num * d) + &rhs.num, Some(d.clone())),
            (Some(d1), Some(d2)) => {
                if d1 == d2 {
                    return LaurentExpr::normalized(&self.num + &rhs.num, Some(d1.clone()));
                }
                if let Some(k) = d2.div_exact(d1) {
                    return LaurentExpr::normalized(&(&self.num * &k) + &rhs.num, Some(d2.clone()));
                }
                if let Some(k) = d1.div_exact(d2) {
                    return LaurentExpr::normalized(&self.num + &(&rhs.num * &k), Some(d1.clone()));
                }
                let num = &(&self.num * d2) + &(&rhs.num * d1);
                LaurentExpr::normalized(num, Some(d1 * d2))
            }
        }
    }
}

impl Neg for &LaurentExpr {
    type Output = LaurentExpr;
    fn neg(self) -> LaurentExpr {
        LaurentExpr { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &LaurentExpr {
    type Output = LaurentExpr;
    fn sub(self, rhs: &LaurentExpr) -> LaurentExpr {
        self + &(-rhs)
    }
}

impl Mul for &LaurentExpr {
    type Output = LaurentExpr;
    fn mul(self, rhs: &LaurentExpr) -> LaurentExpr {
        if self.is_zero() || rhs.is_zero() {
            return LaurentExpr::zero();
        }
        match (&self.den, &rhs.den) {
            (None, None) => LaurentExpr::from_poly(&self.num * &rhs.num),
            (Some(d), None) => mul_cancel(&self.num, d, &rhs.num),
            (None, Some(d)) => mul_cancel(&rhs.num, d, &self.num),
            (Some(d1), Some(d2)) => {
                // Cross-cancel before forming the product denominator.
                let (n1, d2) = match self.num.div_exact(d2) {
                    Some(k) => (k, None),
                    None => (self.num.clone(), Some(d2)),
                };
                let (n2, d1) = match rhs.num.div_exact(d1) {
                    Some(k) => (k, None),
                    None => (rhs.num.clone(), Some(d1)),
                };
                let num = &n1 * &n2;
                let den = match (d1, d2) {
                    (None, None) => None,
                    (Some(a), None) | (None, Some(a)) => Some(a.clone()),
                    (Some(a), Some(b)) => Some(a * b),
                };
                LaurentExpr::normalized(num, den)
            }
        }
    }
}

/// `(n / d) · p`, cancelling `d` against `p` when it divides.
fn mul_cancel(n: &LaurentPoly, d: &LaurentPoly, p: &LaurentPoly) -> LaurentExpr {
    match p.div_exact(d) {
        Some(k) => LaurentExpr::from_poly(n * &k),
        None => LaurentExpr::normalized(n * p, Some(d.clone())),
    }
}

/// Panics on division by zero, like integer division; use
/// [`LaurentExpr::checked_div`] for a fallible version.
impl Div for &LaurentExpr {
    type Output = LaurentExpr;
    fn div(self, rhs: &LaurentExpr) -> LaurentExpr {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_binop {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for LaurentExpr {
            type Output = LaurentExpr;
            fn $f(self, rhs: LaurentExpr) -> LaurentExpr {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&LaurentExpr> for LaurentExpr {
            type Output = LaurentExpr;
            fn $f(self, rhs: &LaurentExpr) -> LaurentExpr {
                (&self).$f(rhs)
            }
        }
        impl $tr<LaurentExpr> for &LaurentExpr {
            type Output = LaurentExpr;
            fn $f(self, rhs: LaurentExpr) -> LaurentExpr {
                self.$f(&rhs)
            }
        }
    )*};
}
forward_binop!(Add add, Sub sub, Mul mul, Div div);

impl Neg for LaurentExpr {
    type Output = LaurentExpr;
    fn neg(self) -> LaurentExpr {
        -&self
    }
}

impl Zero for LaurentExpr {
    fn zero() -> Self {
        LaurentExpr::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentExpr::is_zero(self)
    }
}

impl One for LaurentExpr {
    fn one() -> Self {
        LaurentExpr::one()
    }
}

impl Sum for LaurentExpr {
    fn sum<I: Iterator<Item = LaurentExpr>>(iter: I) -> Self {
        iter.fold(LaurentExpr::zero(), |a, b| &a + &b)
    }
}

impl<'a> Sum<&'a LaurentExpr> for LaurentExpr {
    fn sum<I: Iterator<Item = &'a LaurentExpr>>(iter: I) -> Self {
        iter.fold(LaurentExpr::zero(), |a, b| &a + b)
    }
}

impl Product for LaurentExpr {
    fn product<I: Iterator<Item = LaurentExpr>>(iter: I) -> Self {
        iter.fold(LaurentExpr::one(), |a, b| &a * &b)
    }
}

impl<'a> Product<&'a LaurentExpr> for LaurentExpr {
    fn product<I: Iterator<Item = &'a LaurentExpr>>(iter: I) -> Self {
        iter.fold(LaurentExpr::one(), |a, b| &a * b)
    }
}

/// Writes a polynomial with terms in descending graded-lex order.
pub(crate) fn write_poly(f: &mut fmt::Formatter<'_>, p: &LaurentPoly) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if m.is_one() {
                write!(f, "{c}")?;
            } else if a.is_one() && !neg {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
            continue;
        }
        f.write_str(if neg { " - " } else { " + " })?;
        if m.is_one() {
            write!(f, "{a}")?;
        } else if a.is_one() {
            write!(f, "{m}")?;
        } else {
            write!(f, "{a}*{m}")?;
        }
    }
    Ok(())
}

impl fmt::Display for LaurentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.den {
            None => write_poly(f, &self.num),
            Some(d) => {
                f.write_str("(")?;
                write_poly(f, &self.num)?;
                f.write_str(")/(")?;
                write_poly(f, d)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for LaurentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for LaurentExpr {
    type Err = AlgError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::parse::parse_expr(s)
    }
}

impl Serialize for LaurentExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LaurentExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
