//! Kac modules of the quantized enveloping superalgebra of gl(1|1) and the
//! intertwiners between their tensor squares.
//!
//! A Kac module `V(ζ, κ)` has basis `(x, y)` with `x` even and `y` odd. The
//! tensor product `V(ζ) ⊗ V(ζ')` uses the basis `(x⊗x', x⊗y', y⊗x', y⊗y')`.
//! All scalars are built over the ambient generator `q`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;

use crate::exactalg::{nullspace_rational, rank_rational, AlgError, ExprMatrix, Generator, LaurentExpr};
use crate::sixvertex::{SixVertexError, SixVertexWeights, TableKind};

fn q() -> LaurentExpr {
    LaurentExpr::var(Generator::Q)
}

fn inv(e: &LaurentExpr) -> LaurentExpr {
    e.pow_fraction(-1).expect("inverse of zero")
}

/// `[ζ] = (ζ − ζ⁻¹)/(q − q⁻¹)`.
pub fn bracket(zeta: &LaurentExpr) -> LaurentExpr {
    let q = q();
    &(zeta - &inv(zeta)) / &(&q - &inv(&q))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KacModuleParams {
    pub zeta: LaurentExpr,
    pub kappa: LaurentExpr,
}

impl KacModuleParams {
    pub fn new(zeta: LaurentExpr, kappa: LaurentExpr) -> KacModuleParams {
        KacModuleParams { zeta, kappa }
    }

    /// `V(ζ)` with `κ = 1`.
    pub fn with_zeta(zeta: LaurentExpr) -> KacModuleParams {
        KacModuleParams { zeta, kappa: LaurentExpr::one() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorName {
    E,
    F,
    W,
    WInv,
    K,
    KInv,
}

impl GeneratorName {
    pub const ALL: [GeneratorName; 6] = [
        GeneratorName::E,
        GeneratorName::F,
        GeneratorName::W,
        GeneratorName::WInv,
        GeneratorName::K,
        GeneratorName::KInv,
    ];

    pub fn is_odd(self) -> bool {
        matches!(self, GeneratorName::E | GeneratorName::F)
    }
}

impl FromStr for GeneratorName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "E" => GeneratorName::E,
            "F" => GeneratorName::F,
            "W" => GeneratorName::W,
            "W_inv" => GeneratorName::WInv,
            "K" => GeneratorName::K,
            "K_inv" => GeneratorName::KInv,
            _ => return Err(format!("unknown generator `{s}`")),
        })
    }
}

fn mat2(a: LaurentExpr, b: LaurentExpr, c: LaurentExpr, d: LaurentExpr) -> ExprMatrix {
    ExprMatrix::new(2, 2, vec![a, b, c, d]).expect("2x2")
}

/// Action of a generator on `V(ζ, κ)`, columns being the images of `x, y`.
pub fn kac_generator_action(g: GeneratorName, p: &KacModuleParams) -> ExprMatrix {
    let zero = LaurentExpr::zero;
    let q2 = q().pow(2).expect("q^2");
    match g {
        GeneratorName::E => mat2(zero(), bracket(&p.zeta), zero(), zero()),
        GeneratorName::F => mat2(zero(), zero(), LaurentExpr::one(), zero()),
        GeneratorName::W => ExprMatrix::diagonal(&[p.zeta.clone(), p.zeta.clone()]),
        GeneratorName::WInv => {
            let z = inv(&p.zeta);
            ExprMatrix::diagonal(&[z.clone(), z])
        }
        GeneratorName::K => ExprMatrix::diagonal(&[p.kappa.clone(), &p.kappa / &q2]),
        GeneratorName::KInv => {
            let k = inv(&p.kappa);
            ExprMatrix::diagonal(&[k.clone(), &k * &q2])
        }
    }
}

/// Graded tensor product of operators: `(A ⊗ B)(v ⊗ w) = (−1)^{|B||v|} Av ⊗ Bw`.
fn graded_kron(a: &ExprMatrix, b_odd: bool, b: &ExprMatrix) -> ExprMatrix {
    if b_odd {
        let s = ExprMatrix::diagonal(&[LaurentExpr::one(), LaurentExpr::int(-1)]);
        a.mul(&s).kron(b)
    } else {
        a.kron(b)
    }
}

/// Action of `Δ(g)` on `V(left) ⊗ V(right)`.
///
/// `Δ(E) = E ⊗ W⁻¹ + 1 ⊗ E`, `Δ(F) = F ⊗ 1 + W ⊗ F`, and `W`, `K` (and
/// their inverses) are group-like.
pub fn coproduct_action(g: GeneratorName, left: &KacModuleParams, right: &KacModuleParams) -> ExprMatrix {
    let l = |h| kac_generator_action(h, left);
    let r = |h| kac_generator_action(h, right);
    let id = ExprMatrix::identity(2);
    match g {
        GeneratorName::E => graded_kron(&l(GeneratorName::E), false, &r(GeneratorName::WInv)).add(&graded_kron(
            &id,
            true,
            &r(GeneratorName::E),
        )),
        GeneratorName::F => graded_kron(&l(GeneratorName::F), false, &id).add(&graded_kron(
            &l(GeneratorName::W),
            true,
            &r(GeneratorName::F),
        )),
        _ => l(g).kron(&r(g)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RKind {
    R,
    RPrime,
}

/// A weight pack together with the module parameters it intertwines:
/// `V(ζ) ⊗ V(ζ') → V(ζ') ⊗ V(ζ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intertwiner {
    pub weights: SixVertexWeights,
    pub zeta: LaurentExpr,
    pub zeta_p: LaurentExpr,
}

impl fmt::Display for Intertwiner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [zeta = {}, zeta' = {}]", self.weights, self.zeta, self.zeta_p)
    }
}

pub fn r_matrix(kind: RKind, zeta: &LaurentExpr, zeta_p: &LaurentExpr) -> Intertwiner {
    let one = LaurentExpr::one();
    let zz = zeta * zeta_p;
    let weights = match kind {
        RKind::R => SixVertexWeights::new(
            -&zz,
            one.clone(),
            zeta_p.clone(),
            zeta.clone(),
            &one - &(zeta * zeta),
            LaurentExpr::zero(),
        ),
        RKind::RPrime => {
            SixVertexWeights::new(one.clone(), -&zz, -zeta, -zeta_p, LaurentExpr::zero(), &one - &(zeta_p * zeta_p))
        }
    };
    Intertwiner { weights, zeta: zeta.clone(), zeta_p: zeta_p.clone() }
}

/// `α·R + β·R'`.
pub fn baxterize(zeta: &LaurentExpr, zeta_p: &LaurentExpr, alpha: &LaurentExpr, beta: &LaurentExpr) -> Intertwiner {
    let r = r_matrix(RKind::R, zeta, zeta_p).weights.scale(alpha);
    let rp = r_matrix(RKind::RPrime, zeta, zeta_p).weights.scale(beta);
    Intertwiner { weights: r.add(&rp), zeta: zeta.clone(), zeta_p: zeta_p.clone() }
}

/// The `(ζ, ζ', α, β)` at which [`baxterize`] gives a table row, with
/// `s = sqrt_v` and `v = s²`. `z` is as in [`crate::sixvertex::table_weights`].
pub fn specialization(kind: TableKind, z: &[LaurentExpr]) -> Result<[LaurentExpr; 4], SixVertexError> {
    if z.len() != kind.arity() {
        return Err(SixVertexError::Arity { kind, expected: kind.arity(), got: z.len() });
    }
    let s = LaurentExpr::var(Generator::SQRT_V);
    let ms = -&s.inv()?;
    let v = &s * &s;
    let zero = LaurentExpr::zero;
    let one = LaurentExpr::one;
    let neg_v = |x: &LaurentExpr| -&(&v * x);
    Ok(match kind {
        TableKind::TGamma => [s, zero(), z[0].clone(), one()],
        TableKind::TDelta => [ms, zero(), neg_v(&z[0]), one()],
        TableKind::RGammaGamma => [s.clone(), s, z[0].clone(), z[1].clone()],
        TableKind::RDeltaDelta => [ms.clone(), ms, neg_v(&z[0]), neg_v(&z[1])],
        TableKind::RGammaDelta => [s, ms, z[0].clone(), neg_v(&z[1])],
        TableKind::RDeltaGamma => [ms, s, neg_v(&z[0]), z[1].clone()],
    })
}

/// [`baxterize`] at [`specialization`].
pub fn specialize(kind: TableKind, z: &[LaurentExpr]) -> Result<SixVertexWeights, SixVertexError> {
    let [zeta, zeta_p, alpha, beta] = specialization(kind, z)?;
    Ok(baxterize(&zeta, &zeta_p, &alpha, &beta).weights)
}

/// The eight homomorphism conditions on a weight pack, each as left minus right.
pub fn intertwiner_residuals(w: &SixVertexWeights, zeta: &LaurentExpr, zeta_p: &LaurentExpr) -> Vec<LaurentExpr> {
    let SixVertexWeights { a1, a2, b1, b2, c1, c2 } = w;
    let bz = bracket(zeta);
    let bzp = bracket(zeta_p);
    let zi = inv(zeta);
    let zpi = inv(zeta_p);
    vec![
        &(&bz * c2) + &(&(&bzp * &zi) * b2) - &bzp * a2,
        &(&bz * b1) + &(&(&zi * &bzp) * c1) - &(&bz * &zpi) * a2,
        &(&(&bzp * &zi) * a1) - &(&(&zpi * &bz) * c2) + &bzp * b1,
        &(-&(&bz * a1)) - &(&(&zpi * &bz) * b2) + &bzp * c1,
        a2 - c1 - zeta * b2,
        zeta_p * a2 - b1 - zeta * c2,
        c2 - zeta_p * b2 - a1.clone(),
        b1 - c1 * zeta_p + a1 * zeta,
    ]
}

/// The map `φ` of a weight pack in the module bases: columns are the images
/// of `x⊗x', x⊗y', y⊗x', y⊗y'` expanded in `x'⊗x, x'⊗y, y'⊗x, y'⊗y`.
pub fn intertwiner_matrix(w: &SixVertexWeights) -> ExprMatrix {
    ansatz_matrix(&[
        w.a1.clone(),
        w.a2.clone(),
        w.b1.clone(),
        w.b2.clone(),
        w.c1.clone(),
        w.c2.clone(),
        LaurentExpr::zero(),
        LaurentExpr::zero(),
    ])
}

/// Unknown order of the general even ansatz.
pub const ANSATZ_UNKNOWNS: [&str; 8] = ["a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2"];

/// The general grading-preserving map with unknowns `(a1, a2, b1, b2, c1, c2, d1, d2)`.
fn ansatz_matrix(u: &[LaurentExpr; 8]) -> ExprMatrix {
    let [a1, a2, b1, b2, c1, c2, d1, d2] = u.clone();
    let z = LaurentExpr::zero;
    ExprMatrix::from_rows(vec![
        vec![a2, z(), z(), d2],
        vec![z(), c2, b1, z()],
        vec![z(), b2, c1, z()],
        vec![d1, z(), z(), a1],
    ])
    .expect("4x4")
}

/// Result of solving the intertwiner system at a rational point.
#[derive(Clone, Debug)]
pub struct IntertwinerSpace {
    pub dimension: usize,
    /// Basis vectors in the order of [`ANSATZ_UNKNOWNS`].
    pub basis: Vec<Vec<BigRational>>,
}

impl IntertwinerSpace {
    pub fn d_vanishes(&self) -> bool {
        self.basis.iter().all(|v| v[6].is_zero() && v[7].is_zero())
    }

    /// True when the given pack (with `d1 = d2 = 0`) lies in the span.
    pub fn contains(&self, w: &[BigRational; 6]) -> bool {
        let mut v: Vec<BigRational> = w.to_vec();
        v.extend([BigRational::zero(), BigRational::zero()]);
        let mut rows = self.basis.clone();
        let r0 = rank_rational(&rows, 8);
        rows.push(v);
        rank_rational(&rows, 8) == r0
    }
}

/// Solves for all even maps `V(ζ) ⊗ V(ζ') → V(ζ') ⊗ V(ζ)` commuting with
/// `Δ(E)` and `Δ(F)` at rational `ζ, ζ', q`.
pub fn solve_intertwiner_space(
    zeta: &BigRational,
    zeta_p: &BigRational,
    qv: &BigRational,
) -> Result<IntertwinerSpace, AlgError> {
    if zeta.is_zero() || zeta_p.is_zero() || qv.is_zero() {
        return Err(AlgError::DivisionByZero);
    }
    let bind = crate::exactalg::bindings([(Generator::Q, LaurentExpr::rational(qv.clone()))]);
    let left = KacModuleParams::with_zeta(LaurentExpr::rational(zeta.clone()));
    let right = KacModuleParams::with_zeta(LaurentExpr::rational(zeta_p.clone()));
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for g in [GeneratorName::E, GeneratorName::F] {
        let dom = coproduct_action(g, &left, &right).substitute(&bind)?;
        let cod = coproduct_action(g, &right, &left).substitute(&bind)?;
        // Residual matrices of each unit unknown; linear in the unknowns.
        let per_unknown: Vec<Vec<Vec<BigRational>>> = (0..8)
            .map(|k| {
                let unit: [LaurentExpr; 8] =
                    std::array::from_fn(|i| if i == k { LaurentExpr::one() } else { LaurentExpr::zero() });
                let phi = ansatz_matrix(&unit);
                phi.mul(&dom).sub(&cod.mul(&phi)).eval(&Default::default())
            })
            .collect::<Result<_, _>>()?;
        for entry in 0..16 {
            rows.push(per_unknown.iter().map(|m| m[entry / 4][entry % 4].clone()).collect());
        }
    }
    let basis = nullspace_rational(&rows, 8);
    Ok(IntertwinerSpace { dimension: basis.len(), basis })
}

/// Residual matrices of the three structural identities.
#[derive(Clone, Debug)]
pub struct StructuralReport {
    /// `R_{ζ',ζ} ∘ R'_{ζ,ζ'} + ζζ'·Id`, composed as module maps.
    pub inverse: ExprMatrix,
    /// `R_{ζ,ζ} + R'_{ζ,ζ} − (1 − ζ²)·Id`.
    pub skein: ExprMatrix,
    /// `R_{ζ,ζ}² + R'_{ζ,ζ}² − (1 + ζ⁴)·Id`.
    pub double_skein: ExprMatrix,
}

impl StructuralReport {
    pub fn all_zero(&self) -> bool {
        self.inverse.is_zero() && self.skein.is_zero() && self.double_skein.is_zero()
    }

    pub fn cases(&self) -> [(&'static str, &ExprMatrix); 3] {
        [("inverse", &self.inverse), ("skein", &self.skein), ("double_skein", &self.double_skein)]
    }
}

/// `R' = −ζζ'R⁻¹` and the two skein relations. The inverse relation uses
/// `R_{ζ',ζ}`, the map going back from `V(ζ') ⊗ V(ζ)`; the skein relations are
/// taken at `ζ' = ζ`.
pub fn structural_identities(zeta: &LaurentExpr, zeta_p: &LaurentExpr) -> StructuralReport {
    let phi = |k, a: &LaurentExpr, b: &LaurentExpr| intertwiner_matrix(&r_matrix(k, a, b).weights);
    let id = ExprMatrix::identity(4);
    let inverse = phi(RKind::R, zeta_p, zeta).mul(&phi(RKind::RPrime, zeta, zeta_p)).add(&id.scale(&(zeta * zeta_p)));
    let r = phi(RKind::R, zeta, zeta);
    let rp = phi(RKind::RPrime, zeta, zeta);
    let one = LaurentExpr::one();
    let z2 = zeta * zeta;
    let skein = r.add(&rp).sub(&id.scale(&(&one - &z2)));
    let double_skein = r.mul(&r).add(&rp.mul(&rp)).sub(&id.scale(&(&one + &(&z2 * &z2))));
    StructuralReport { inverse, skein, double_skein }
}
