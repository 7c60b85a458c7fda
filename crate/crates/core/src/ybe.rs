//! Operators on the triple tensor product and Yang–Baxter residuals.
//!
//! The 8-dimensional basis is `(s1, s2, s3)` with `⊕ < ⊖`, ordered
//! lexicographically, so index `4·s1 + 2·s2 + s3` with `⊕ = 0`.
//!
//! Two conventions are supported. In the endomorphism convention a layout
//! matrix `M` acts on a pair of slots directly. In the braided convention a
//! weight pack describes a map `U ⊗ V → V ⊗ U`; its matrix is `Ř = P·Mᵀ` with
//! `P` the tensor swap, and brackets compose `Ř ⊗ I` and `I ⊗ Ř` factors.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::exactalg::{AlgError, ExprMatrix, Generator, LaurentExpr};
use crate::quantumgroup::{baxterize, r_matrix, RKind};
use crate::sixvertex::{table_weights, weights_to_matrix, TableKind, VertexMatrix};

/// An operator on the 8-dimensional triple tensor space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorOp8(ExprMatrix);

impl TensorOp8 {
    pub fn as_matrix(&self) -> &ExprMatrix {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn compose(&self, rhs: &TensorOp8) -> TensorOp8 {
        TensorOp8(self.0.mul(&rhs.0))
    }

    pub fn sub(&self, rhs: &TensorOp8) -> TensorOp8 {
        TensorOp8(self.0.sub(&rhs.0))
    }
}

impl fmt::Display for TensorOp8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    S12,
    S13,
    S23,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    Braided,
    Endo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SlotPair {
    pub slot: Slot,
    pub convention: Convention,
}

impl SlotPair {
    pub fn new(slot: Slot, convention: Convention) -> SlotPair {
        SlotPair { slot, convention }
    }
}

/// The swap `P(u ⊗ v) = v ⊗ u` on a two-fold tensor of 2-dimensional spaces.
pub fn swap4() -> ExprMatrix {
    ExprMatrix::permutation(&[0, 2, 1, 3])
}

/// Swap of the last two factors of the triple tensor product.
fn swap23() -> ExprMatrix {
    let perm: Vec<usize> = (0..8).map(|k| (k & 4) | ((k & 1) << 1) | ((k & 2) >> 1)).collect();
    ExprMatrix::permutation(&perm)
}

/// The braided-map matrix `Ř = P·Mᵀ` of a layout matrix.
pub fn to_braided(m: &VertexMatrix) -> ExprMatrix {
    swap4().mul(&m.as_matrix().transpose())
}

fn embed4(m: &ExprMatrix, slot: Slot) -> ExprMatrix {
    let id = ExprMatrix::identity(2);
    match slot {
        Slot::S12 => m.kron(&id),
        Slot::S23 => id.kron(m),
        Slot::S13 => {
            let p = swap23();
            p.mul(&m.kron(&id)).mul(&p)
        }
    }
}

/// Places a vertex matrix on two of the three tensor slots.
///
/// Endo: `m ⊗ I`, `I ⊗ m`, or for `(1,3)` the middle-swap conjugate of
/// `m ⊗ I`. Braided: the same placements applied to `Ř`.
pub fn slot_embed(m: &VertexMatrix, pair: SlotPair) -> TensorOp8 {
    let base = match pair.convention {
        Convention::Endo => m.as_matrix().clone(),
        Convention::Braided => to_braided(m),
    };
    TensorOp8(embed4(&base, pair.slot))
}

/// The `(1,3)` embedding by index arithmetic:
/// `M13[(i1,i2,i3),(j1,j2,j3)] = M[(i1,i3),(j1,j3)]·δ(i2,j2)`.
pub fn slot13_direct(m: &ExprMatrix) -> ExprMatrix {
    ExprMatrix::from_fn(8, 8, |i, j| {
        let (i1, i2, i3) = (i >> 2, (i >> 1) & 1, i & 1);
        let (j1, j2, j3) = (j >> 2, (j >> 1) & 1, j & 1);
        if i2 != j2 {
            LaurentExpr::zero()
        } else {
            m.get(2 * i1 + i3, 2 * j1 + j3).clone()
        }
    })
}

/// `(I ⊗ Ř)(Š ⊗ I)(I ⊗ Ť) − (Ť ⊗ I)(I ⊗ Š)(Ř ⊗ I)`.
pub fn braided_bracket(r: &VertexMatrix, s: &VertexMatrix, t: &VertexMatrix) -> TensorOp8 {
    let b = |m, slot| slot_embed(m, SlotPair::new(slot, Convention::Braided));
    let lhs = b(r, Slot::S23).compose(&b(s, Slot::S12)).compose(&b(t, Slot::S23));
    let rhs = b(t, Slot::S12).compose(&b(s, Slot::S23)).compose(&b(r, Slot::S12));
    lhs.sub(&rhs)
}

/// `R12·S13·T23 − T23·S13·R12`.
pub fn endo_bracket(r: &VertexMatrix, s: &VertexMatrix, t: &VertexMatrix) -> TensorOp8 {
    let e = |m, slot| slot_embed(m, SlotPair::new(slot, Convention::Endo));
    let (r12, s13, t23) = (e(r, Slot::S12), e(s, Slot::S13), e(t, Slot::S23));
    r12.compose(&s13).compose(&t23).sub(&t23.compose(&s13).compose(&r12))
}

/// Negates the `a1` slot: the graded/ungraded passage for these matrices.
pub fn sign_twist(m: &VertexMatrix) -> VertexMatrix {
    let a1 = -m.as_matrix().get(0, 0);
    VertexMatrix::try_from(m.as_matrix().with_entry(0, 0, a1)).expect("layout preserved")
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    pub case: String,
    pub zero: bool,
    pub max_terms_nonzero_entry: usize,
}

impl ResidualReport {
    pub fn from_matrix(case: impl Into<String>, m: &ExprMatrix) -> ResidualReport {
        ResidualReport { case: case.into(), zero: m.is_zero(), max_terms_nonzero_entry: m.max_terms() }
    }

    pub fn from_exprs<'a>(case: impl Into<String>, es: impl IntoIterator<Item = &'a LaurentExpr>) -> ResidualReport {
        let mut zero = true;
        let mut max = 0;
        for e in es {
            if !e.is_zero() {
                zero = false;
                max = max.max(e.term_count());
            }
        }
        ResidualReport { case: case.into(), zero, max_terms_nonzero_entry: max }
    }
}

/// A named bracket `⟦R, S, T⟧`.
#[derive(Clone, Debug)]
pub struct YbeCase {
    pub name: String,
    pub r: VertexMatrix,
    pub s: VertexMatrix,
    pub t: VertexMatrix,
}

impl YbeCase {
    pub fn new(name: impl Into<String>, r: VertexMatrix, s: VertexMatrix, t: VertexMatrix) -> YbeCase {
        YbeCase { name: name.into(), r, s, t }
    }

    pub fn substitute(&self, map: &HashMap<Generator, LaurentExpr>) -> Result<YbeCase, AlgError> {
        Ok(YbeCase {
            name: self.name.clone(),
            r: self.r.substitute(map)?,
            s: self.s.substitute(map)?,
            t: self.t.substitute(map)?,
        })
    }

    pub fn residual(&self) -> TensorOp8 {
        braided_bracket(&self.r, &self.s, &self.t)
    }

    pub fn report(&self) -> ResidualReport {
        ResidualReport::from_matrix(self.name.clone(), self.residual().as_matrix())
    }
}

/// Evaluates the cases concurrently; reports come back sorted by name.
pub fn run_cases(cases: &[YbeCase]) -> Vec<ResidualReport> {
    let mut out: Vec<ResidualReport> = cases.par_iter().map(YbeCase::report).collect();
    out.sort_by(|a, b| a.case.cmp(&b.case));
    out
}

fn vm(i: &crate::quantumgroup::Intertwiner) -> VertexMatrix {
    weights_to_matrix(&i.weights)
}

/// The braided form of `(R_{ζ',ζ''} ⊗ I)(I ⊗ R_{ζ,ζ''})(R_{ζ,ζ'} ⊗ I) = …`
/// for one kind.
pub fn ybe_one_case(kind: RKind, zeta: &LaurentExpr, zeta_p: &LaurentExpr, zeta_pp: &LaurentExpr) -> YbeCase {
    let name = match kind {
        RKind::R => "ybe1:R",
        RKind::RPrime => "ybe1:Rprime",
    };
    YbeCase::new(
        name,
        vm(&r_matrix(kind, zeta, zeta_p)),
        vm(&r_matrix(kind, zeta, zeta_pp)),
        vm(&r_matrix(kind, zeta_p, zeta_pp)),
    )
}

pub fn ybe_suite_i(zeta: &LaurentExpr, zeta_p: &LaurentExpr, zeta_pp: &LaurentExpr) -> Vec<ResidualReport> {
    let cases = [RKind::R, RKind::RPrime].map(|k| ybe_one_case(k, zeta, zeta_p, zeta_pp));
    run_cases(&cases)
}

/// Coefficients `a..f` of the baxterized triple.
#[derive(Clone, Debug)]
pub struct YbeTwoCoefficients {
    pub a: LaurentExpr,
    pub b: LaurentExpr,
    pub c: LaurentExpr,
    pub d: LaurentExpr,
    pub e: LaurentExpr,
    pub f: LaurentExpr,
}

impl YbeTwoCoefficients {
    /// The free generators `u_a..u_f`.
    pub fn symbolic() -> YbeTwoCoefficients {
        let g = LaurentExpr::var;
        YbeTwoCoefficients {
            a: g(Generator::U_A),
            b: g(Generator::U_B),
            c: g(Generator::U_C),
            d: g(Generator::U_D),
            e: g(Generator::U_E),
            f: g(Generator::U_F),
        }
    }

    /// `u_a..u_e` free and `f = a·d·e/(b·c)`.
    pub fn constrained() -> YbeTwoCoefficients {
        let mut k = Self::symbolic();
        k.f = &(&(&k.a * &k.d) * &k.e) / &(&k.b * &k.c);
        k
    }

    /// `a·d·e − b·c·f`.
    pub fn constraint(&self) -> LaurentExpr {
        &(&(&self.a * &self.d) * &self.e) - &(&(&self.b * &self.c) * &self.f)
    }
}

/// Outcome of the second Yang–Baxter check. The bracket is computed even
/// when the constraint fails so the failure is visible in the residual.
#[derive(Clone, Debug, Serialize)]
pub struct YbeTwoReport {
    pub constraint_satisfied: bool,
    pub constraint: String,
    pub residual: ResidualReport,
}

pub fn ybe_two_case(
    zeta: &LaurentExpr,
    zeta_p: &LaurentExpr,
    zeta_pp: &LaurentExpr,
    k: &YbeTwoCoefficients,
    name: &str,
) -> YbeCase {
    YbeCase::new(
        name,
        vm(&baxterize(zeta, zeta_p, &k.e, &k.f)),
        vm(&baxterize(zeta, zeta_pp, &k.c, &k.d)),
        vm(&baxterize(zeta_p, zeta_pp, &k.a, &k.b)),
    )
}

pub fn ybe_suite_ii(
    zeta: &LaurentExpr,
    zeta_p: &LaurentExpr,
    zeta_pp: &LaurentExpr,
    k: &YbeTwoCoefficients,
) -> YbeTwoReport {
    let constraint = k.constraint();
    let case = ybe_two_case(zeta, zeta_p, zeta_pp, k, "ybe2");
    YbeTwoReport {
        constraint_satisfied: constraint.is_zero(),
        constraint: constraint.to_string(),
        residual: case.report(),
    }
}

/// Row parameters `z_1, z_2, z_3`.
fn zs() -> [LaurentExpr; 3] {
    [1, 2, 3].map(|i| LaurentExpr::var(Generator::z(i)))
}

fn flavor_letter(k: TableKind) -> char {
    match k {
        TableKind::TGamma => 'G',
        _ => 'D',
    }
}

fn r_kind(x: TableKind, y: TableKind) -> TableKind {
    match (x, y) {
        (TableKind::TGamma, TableKind::TGamma) => TableKind::RGammaGamma,
        (TableKind::TDelta, TableKind::TDelta) => TableKind::RDeltaDelta,
        (TableKind::TGamma, TableKind::TDelta) => TableKind::RGammaDelta,
        _ => TableKind::RDeltaGamma,
    }
}

fn table(kind: TableKind, z: &[LaurentExpr]) -> VertexMatrix {
    weights_to_matrix(&table_weights(kind, z).expect("arity"))
}

/// `⟦R_XY(z1,z2), T_X(z1), T_Y(z2)⟧` for `X, Y ∈ {Γ, Δ}`.
pub fn rtt_cases() -> Vec<YbeCase> {
    let [z1, z2, _] = zs();
    let flavors = [TableKind::TGamma, TableKind::TDelta];
    let mut out = Vec::new();
    for x in flavors {
        for y in flavors {
            let name = format!("rtt:{}{}", flavor_letter(x), flavor_letter(y));
            out.push(YbeCase::new(
                name,
                table(r_kind(x, y), &[z1.clone(), z2.clone()]),
                table(x, std::slice::from_ref(&z1)),
                table(y, std::slice::from_ref(&z2)),
            ));
        }
    }
    out
}

/// `⟦R_XY(z1,z2), R_XZ(z1,z3), R_YZ(z2,z3)⟧` for `X, Y, Z ∈ {Γ, Δ}`.
pub fn rrr_cases() -> Vec<YbeCase> {
    let [z1, z2, z3] = zs();
    let flavors = [TableKind::TGamma, TableKind::TDelta];
    let mut out = Vec::new();
    for x in flavors {
        for y in flavors {
            for z in flavors {
                let name = format!("rrr:{}{}{}", flavor_letter(x), flavor_letter(y), flavor_letter(z));
                out.push(YbeCase::new(
                    name,
                    table(r_kind(x, y), &[z1.clone(), z2.clone()]),
                    table(r_kind(x, z), &[z1.clone(), z3.clone()]),
                    table(r_kind(y, z), &[z2.clone(), z3.clone()]),
                ));
            }
        }
    }
    out
}

/// All twelve mixed-flavor brackets of the Tokuyama model.
pub fn tokuyama_cases() -> Vec<YbeCase> {
    let mut v = rtt_cases();
    v.extend(rrr_cases());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{bindings, rat};
    use crate::sixvertex::{table_weights_default, SixVertexWeights};

    fn g(x: Generator) -> LaurentExpr {
        LaurentExpr::var(x)
    }

    #[test]
    fn identity_embeds_to_identity() {
        let id = VertexMatrix::identity();
        for slot in [Slot::S12, Slot::S13, Slot::S23] {
            let e = slot_embed(&id, SlotPair::new(slot, Convention::Endo));
            assert_eq!(e.as_matrix(), &ExprMatrix::identity(8));
        }
        assert!(braided_bracket(&id, &id, &id).is_zero());
        assert!(endo_bracket(&id, &id, &id).is_zero());
    }

    #[test]
    fn s12_is_block_diagonal() {
        let m = weights_to_matrix(&table_weights_default(TableKind::TGamma));
        let e = slot_embed(&m, SlotPair::new(Slot::S12, Convention::Endo));
        for i in 0..8 {
            for j in 0..8 {
                let expect =
                    if (i & 1) == (j & 1) { m.as_matrix().get(i >> 1, j >> 1).clone() } else { LaurentExpr::zero() };
                assert_eq!(e.as_matrix().get(i, j), &expect);
            }
        }
    }

    #[test]
    fn s13_constructions_agree() {
        let w = SixVertexWeights::from_array(
            [Generator::U_A, Generator::U_B, Generator::U_C, Generator::U_D, Generator::U_E, Generator::U_F].map(g),
        );
        let m = weights_to_matrix(&w);
        let via_perm = slot_embed(&m, SlotPair::new(Slot::S13, Convention::Endo));
        assert_eq!(via_perm.as_matrix(), &slot13_direct(m.as_matrix()));
    }

    #[test]
    fn ybe_one_symbolic() {
        let r = ybe_suite_i(&g(Generator::ZETA), &g(Generator::ZETA_P), &g(Generator::ZETA_PP));
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|x| x.zero), "{r:?}");
    }

    #[test]
    fn raw_layout_fails_braided_ybe() {
        let c = ybe_one_case(RKind::R, &g(Generator::ZETA), &g(Generator::ZETA_P), &g(Generator::ZETA_PP));
        let id = ExprMatrix::identity(2);
        let (r, s, t) = (c.r.as_matrix(), c.s.as_matrix(), c.t.as_matrix());
        let lhs = id.kron(r).mul(&s.kron(&id)).mul(&id.kron(t));
        let rhs = t.kron(&id).mul(&id.kron(s)).mul(&r.kron(&id));
        assert!(!lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn braid_relation_endo() {
        let z = g(Generator::ZETA);
        let m = vm(&r_matrix(RKind::R, &z, &z));
        assert!(endo_bracket(&m, &m, &m).is_zero());
    }

    #[test]
    fn ybe_two_constraint() {
        let (z, zp, zpp) = (g(Generator::ZETA), g(Generator::ZETA_P), g(Generator::ZETA_PP));
        let rep = ybe_suite_ii(&z, &zp, &zpp, &YbeTwoCoefficients::constrained());
        assert!(rep.constraint_satisfied && rep.residual.zero);
        let ones = YbeTwoCoefficients {
            a: LaurentExpr::one(),
            b: LaurentExpr::one(),
            c: LaurentExpr::one(),
            d: LaurentExpr::one(),
            e: LaurentExpr::one(),
            f: LaurentExpr::one(),
        };
        assert!(ybe_suite_ii(&z, &zp, &zpp, &ones).residual.zero);
    }

    #[test]
    fn violated_ybe_two_residual() {
        let mut k = YbeTwoCoefficients {
            a: LaurentExpr::one(),
            b: LaurentExpr::one(),
            c: LaurentExpr::one(),
            d: LaurentExpr::one(),
            e: LaurentExpr::one(),
            f: LaurentExpr::one(),
        };
        k.f = LaurentExpr::int(2);
        let (z, zp, zpp) = (LaurentExpr::int(2), LaurentExpr::int(3), LaurentExpr::int(5));
        let rep = ybe_suite_ii(&z, &zp, &zpp, &k);
        assert!(!rep.constraint_satisfied);
        assert_eq!(rep.constraint, "-1");
        let res = ybe_two_case(&z, &zp, &zpp, &k, "x").residual();
        let expect: [((usize, usize), i64); 14] = [
            ((1, 1), -24),
            ((1, 2), -216),
            ((2, 1), -72),
            ((2, 2), -576),
            ((2, 4), 384),
            ((3, 3), -240),
            ((3, 5), 120),
            ((4, 2), 360),
            ((4, 4), 1920),
            ((5, 3), 144),
            ((5, 5), 576),
            ((5, 6), -216),
            ((6, 5), -576),
            ((6, 6), 192),
        ];
        let nz: Vec<_> =
            res.as_matrix().nonzero_entries().map(|(i, j, e)| ((i, j), e.as_rational().unwrap())).collect();
        assert_eq!(nz.len(), expect.len());
        for ((ij, v), (ij2, v2)) in expect.iter().zip(&nz) {
            assert_eq!(ij, ij2);
            assert_eq!(rat(*v, 1), *v2);
        }
    }

    #[test]
    fn tokuyama_brackets_vanish() {
        let cases = tokuyama_cases();
        assert_eq!(cases.len(), 12);
        let reports = run_cases(&cases);
        assert!(reports.iter().all(|r| r.zero), "{reports:?}");
        assert!(reports.windows(2).all(|w| w[0].case < w[1].case));
    }

    #[test]
    fn mismatched_flavors_do_not_commute() {
        let z = |n| LaurentExpr::int(n);
        let five = bindings([(Generator::SQRT_V, z(5))]);
        let c = YbeCase::new(
            "x",
            table(TableKind::RGammaGamma, &[z(2), z(3)]),
            table(TableKind::TGamma, &[z(2)]),
            table(TableKind::TDelta, &[z(3)]),
        )
        .substitute(&five)
        .unwrap();
        let expect = [
            ((1, 1), rat(1248, 1)),
            ((2, 1), rat(89856, 5)),
            ((3, 3), rat(-273312, 1)),
            ((4, 2), rat(1248, 5)),
            ((4, 4), rat(26, 1)),
            ((5, 3), rat(-91104, 5)),
            ((6, 5), rat(136656, 5)),
            ((6, 6), rat(-5694, 1)),
        ];
        let got: Vec<_> =
            c.residual().as_matrix().nonzero_entries().map(|(i, j, e)| ((i, j), e.as_rational().unwrap())).collect();
        assert_eq!(got, expect.to_vec());
    }

    #[test]
    fn sign_twist_is_involution() {
        let id = VertexMatrix::identity();
        let t = sign_twist(&id);
        assert_eq!(t.as_matrix().get(0, 0), &LaurentExpr::int(-1));
        assert_eq!(sign_twist(&t), id);
    }
}
