use std::cmp::Ordering;
use std::fmt;

use super::generator::{Generator, MAX_GENERATORS};

/// A Laurent monomial: a dense vector of (possibly negative) exponents indexed
/// by generator slot.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// vectors lexicographically with slot 0 (`sqrt_v`) most significant. The
/// order is compatible with multiplication, which the exact division in
/// [`LaurentPoly`](super::LaurentPoly) relies on.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [i16; MAX_GENERATORS],
}

impl Monomial {
    pub const fn one() -> Monomial {
        Monomial { exps: [0; MAX_GENERATORS] }
    }

    pub fn var(g: Generator) -> Monomial {
        Self::var_pow(g, 1)
    }

    pub fn var_pow(g: Generator, e: i32) -> Monomial {
        let mut m = Self::one();
        m.exps[g.index()] = narrow(e);
        m
    }

    pub fn exponent(&self, g: Generator) -> i32 {
        self.exps[g.index()] as i32
    }

    pub fn degree(&self) -> i32 {
        self.exps.iter().map(|&e| e as i32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, &e) in out.exps.iter_mut().zip(other.exps.iter()) {
            *o = o.checked_add(e).expect("monomial exponent overflow");
        }
        out
    }

    pub fn inv(&self) -> Monomial {
        let mut out = *self;
        for e in out.exps.iter_mut() {
            *e = e.checked_neg().expect("monomial exponent overflow");
        }
        out
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        let mut out = *self;
        for e in out.exps.iter_mut() {
            *e = narrow(*e as i32 * k);
        }
        out
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, &e) in out.exps.iter_mut().zip(other.exps.iter()) {
            *o = (*o).min(e);
        }
        out
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, &e) in out.exps.iter_mut().zip(other.exps.iter()) {
            *o = (*o).max(e);
        }
        out
    }

    /// Nonzero `(generator, exponent)` pairs in slot order.
    pub fn support(&self) -> impl Iterator<Item = (Generator, i32)> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, &e)| (Generator::from_index(i), e as i32))
    }

    /// Same monomial with the exponent of `g` cleared.
    pub fn without(&self, g: Generator) -> Monomial {
        let mut out = *self;
        out.exps[g.index()] = 0;
        out
    }

    /// True when every exponent lies in the closed box `[lo, hi]`.
    pub fn within(&self, lo: &Monomial, hi: &Monomial) -> bool {
        self.exps.iter().zip(lo.exps.iter().zip(hi.exps.iter())).all(|(&e, (&l, &h))| l <= e && e <= h)
    }
}

fn narrow(e: i32) -> i16 {
    i16::try_from(e).expect("monomial exponent overflow")
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (g, e) in self.support() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let x = Monomial::var(Generator::SQRT_V);
        let y = Monomial::var(Generator::Q);
        assert!(x > y);
        assert!(y.pow(2) > x);
        assert!(Monomial::one() > x.inv());
        // order is translation invariant
        let t = Monomial::var_pow(Generator::Z, -3);
        assert_eq!(x.cmp(&y), x.mul(&t).cmp(&y.mul(&t)));
    }

    #[test]
    fn display() {
        let m = Monomial::var_pow(Generator::SQRT_V, 2).mul(&Monomial::var(Generator::z(1)));
        assert_eq!(m.to_string(), "sqrt_v^2*z_1");
        assert_eq!(Monomial::var_pow(Generator::ZETA, -1).to_string(), "zeta^-1");
        assert_eq!(Monomial::one().to_string(), "1");
    }

    #[test]
    fn inverse_cancels() {
        let m = Monomial::var_pow(Generator::C, 3).mul(&Monomial::var_pow(Generator::Q, -2));
        assert!(m.mul(&m.inv()).is_one());
        assert_eq!(m.div(&m), Monomial::one());
    }
}
