#![allow(dead_code)]

use std::collections::HashMap;

use fflab_core::exactalg::{rat, BigRational, Generator, LaurentExpr, LaurentPoly, Monomial};
use proptest::prelude::*;

pub const GENS: [Generator; 3] = [Generator::Q, Generator::Z, Generator::W];

pub fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| rat(p, q))
}

pub fn arb_monomial() -> impl Strategy<Value = Monomial> {
    prop::array::uniform3(-2i32..=3)
        .prop_map(|e| GENS.iter().zip(e).fold(Monomial::one(), |m, (&g, k)| m.mul(&Monomial::var_pow(g, k))))
}

pub fn arb_poly(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((arb_rational(), arb_monomial()), 0..=max_terms)
        .prop_map(|ts| ts.into_iter().fold(LaurentPoly::zero(), |acc, (c, m)| acc + LaurentPoly::term(c, m)))
}

pub fn arb_nonzero_poly(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    arb_poly(max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

/// Polynomials most of the time, quotients otherwise.
pub fn arb_expr() -> impl Strategy<Value = LaurentExpr> {
    prop_oneof![
        3 => arb_poly(4).prop_map(LaurentExpr::from_poly),
        1 => (arb_poly(3), arb_nonzero_poly(2)).prop_map(|(n, d)| LaurentExpr::fraction(n, d).unwrap()),
    ]
}

pub fn arb_point() -> impl Strategy<Value = HashMap<Generator, BigRational>> {
    prop::array::uniform3((-20i64..=20, 1i64..=7).prop_filter("nonzero", |(p, _)| *p != 0))
        .prop_map(|vs| GENS.iter().zip(vs).map(|(&g, (p, q))| (g, rat(p, q))).collect())
}

pub fn arb_int_matrix() -> impl Strategy<Value = Vec<Vec<BigRational>>> {
    (1usize..=5, 1usize..=6)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec((-3i64..=3).prop_map(|x| rat(x, 1)), c), r))
}
