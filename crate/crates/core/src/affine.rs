//! Evaluated R-matrices of the affine (1|1) superalgebra and their relation
//! to the baxterized family and the Tokuyama weights.
//!
//! All matrices use the six-vertex layout of [`crate::sixvertex`].

use std::collections::HashMap;

use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::sampling::Sampler;
use crate::exactalg::{AlgError, ExprMatrix, Generator, LaurentExpr};
use crate::quantumgroup::baxterize;
use crate::sixvertex::{table_weights, weights_to_matrix, SixVertexWeights, TableKind, VertexMatrix, WEIGHT_NAMES};
use crate::ybe::{endo_bracket, sign_twist, ybe_two_case, ResidualReport, YbeCase, YbeTwoCoefficients};

#[derive(Debug, Error)]
pub enum AffineError {
    #[error("entry {entry} has no limit: {reason}")]
    Limit { entry: &'static str, reason: String },
    #[error(transparent)]
    Alg(#[from] AlgError),
}

#[derive(Clone, Debug)]
pub struct PerkSchultzParams {
    pub z: LaurentExpr,
    pub w: LaurentExpr,
    pub q: LaurentExpr,
}

#[derive(Clone, Debug)]
pub struct AffineRParams {
    pub c: LaurentExpr,
    pub d: LaurentExpr,
    pub z: LaurentExpr,
    pub q: LaurentExpr,
}

impl AffineRParams {
    /// `c, d, z, q` as free generators.
    pub fn symbolic() -> AffineRParams {
        let g = LaurentExpr::var;
        AffineRParams { c: g(Generator::C), d: g(Generator::D), z: g(Generator::Z), q: g(Generator::Q) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaugeKind {
    Gamma,
    Delta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitKind {
    /// `c → 0` of the Γ gauge.
    A,
    /// `c → ∞` of `c⁻¹` times the Δ gauge.
    B,
}

fn qinv(q: &LaurentExpr) -> LaurentExpr {
    q.inv().expect("q is nonzero")
}

fn sv(
    a1: LaurentExpr,
    a2: LaurentExpr,
    b1: LaurentExpr,
    b2: LaurentExpr,
    c1: LaurentExpr,
    c2: LaurentExpr,
) -> VertexMatrix {
    weights_to_matrix(&SixVertexWeights::new(a1, a2, b1, b2, c1, c2))
}

pub fn perk_schultz(p: &PerkSchultzParams) -> ExprMatrix {
    let PerkSchultzParams { z, w, q } = p;
    let qi = qinv(q);
    sv(&(z * q) - &(w * &qi), &(z * &qi) - &(w * q), z - w, z - w, w * &(&qi - q), z * &(q - &qi)).into_matrix()
}

/// The cleared-denominator `π_{c,d}` matrix on `W ⊗ V`.
pub fn pi_cd_rmatrix(p: &AffineRParams) -> VertexMatrix {
    let AffineRParams { c, d, z, q } = p;
    let one = LaurentExpr::one();
    let qi = qinv(q);
    let zd = z * d;
    let c2 = c * c;
    sv(
        c * &(&one - &zd),
        &qi - &(&(&zd * &c2) * q),
        c * &(&qi - &(&zd * q)),
        &one - &(&zd * &c2),
        &(c * &(&qi - q)) * &(&(d * &c2) - d),
        -z,
    )
}

/// Negates the `a1` entry.
pub fn ungrade(m: &VertexMatrix) -> VertexMatrix {
    sign_twist(m)
}

/// `π_{c,d}` at `d = c⁻¹`.
pub fn specialized(c: &LaurentExpr, q: &LaurentExpr, z: &LaurentExpr) -> VertexMatrix {
    let p = AffineRParams { c: c.clone(), d: c.inv().expect("c is nonzero"), z: z.clone(), q: q.clone() };
    pi_cd_rmatrix(&p)
}

/// Diagonal changes of basis on the `d = c⁻¹` specialization. Γ moves the
/// factor `c² − 1` from `c1` to `c2`; Δ rescales by `z/(c + 1)` and then
/// negates `b1` and `b2`.
pub fn gauge_transforms(kind: GaugeKind, c: &LaurentExpr, q: &LaurentExpr, z: &LaurentExpr) -> VertexMatrix {
    let w = specialized(c, q, z).weights();
    let one = LaurentExpr::one();
    let g = match kind {
        GaugeKind::Gamma => (&(c * c) - &one).inv().expect("c^2 - 1 is nonzero"),
        GaugeKind::Delta => z / &(c + &one),
    };
    let gi = g.inv().expect("gauge factor is nonzero");
    let mut out = SixVertexWeights { c1: &w.c1 * &g, c2: &w.c2 * &gi, ..w };
    if kind == GaugeKind::Delta {
        out.b1 = -&out.b1;
        out.b2 = -&out.b2;
    }
    weights_to_matrix(&out)
}

/// Entrywise limit by coefficient extraction in `c`; entries must be
/// polynomial in `c`.
pub fn limits(kind: LimitKind, q: &LaurentExpr, z: &LaurentExpr) -> Result<VertexMatrix, AffineError> {
    let c = LaurentExpr::var(Generator::C);
    let (gauge, degree) = match kind {
        LimitKind::A => (GaugeKind::Gamma, 0),
        LimitKind::B => (GaugeKind::Delta, 1),
    };
    let symbolic = gauge_transforms(gauge, &c, &LaurentExpr::var(Generator::Q), &LaurentExpr::var(Generator::Z));
    let w = symbolic.weights().to_array();
    let mut out = Vec::with_capacity(6);
    for (entry, name) in w.iter().zip(WEIGHT_NAMES) {
        let coeffs = entry
            .coefficients_in(Generator::C)
            .map_err(|e| AffineError::Limit { entry: name, reason: e.to_string() })?;
        let bad = match kind {
            LimitKind::A => coeffs.keys().any(|&k| k < 0),
            LimitKind::B => coeffs.keys().any(|&k| k > 1),
        };
        if bad {
            return Err(AffineError::Limit { entry: name, reason: format!("{entry} diverges") });
        }
        out.push(coeffs.get(&degree).cloned().unwrap_or_else(LaurentExpr::zero));
    }
    let map: HashMap<Generator, LaurentExpr> = [(Generator::Q, q.clone()), (Generator::Z, z.clone())].into();
    let w = SixVertexWeights::from_array(out.try_into().expect("six entries")).substitute(&map)?;
    Ok(weights_to_matrix(&w))
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryMatch {
    pub entry: String,
    pub equal: bool,
    pub left: String,
    pub right: String,
}

impl EntryMatch {
    fn new(entry: &str, left: &LaurentExpr, right: &LaurentExpr) -> EntryMatch {
        EntryMatch { entry: entry.into(), equal: left == right, left: left.to_string(), right: right.to_string() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyMatch {
    /// `a1, a2, b1, b2` and the product `c1·c2`.
    pub checks: Vec<EntryMatch>,
    /// `c1` alone; not expected to agree.
    pub c1_individual: EntryMatch,
    /// `affine c1 / family c1`; `c2` scales by its inverse.
    pub gauge_ratio: String,
}

impl FamilyMatch {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.equal)
    }
}

/// Compares the ungraded `π_{c,d}` matrix with `baxterize(q, c, q⁻¹, zdc)`.
pub fn match_family(c: &LaurentExpr, d: &LaurentExpr, z: &LaurentExpr, q: &LaurentExpr) -> FamilyMatch {
    let p = AffineRParams { c: c.clone(), d: d.clone(), z: z.clone(), q: q.clone() };
    let aff = ungrade(&pi_cd_rmatrix(&p)).weights();
    let fam = baxterize(q, c, &qinv(q), &(&(z * d) * c)).weights;
    let mut checks: Vec<EntryMatch> =
        [("a1", &aff.a1, &fam.a1), ("a2", &aff.a2, &fam.a2), ("b1", &aff.b1, &fam.b1), ("b2", &aff.b2, &fam.b2)]
            .into_iter()
            .map(|(n, l, r)| EntryMatch::new(n, l, r))
            .collect();
    checks.push(EntryMatch::new("c1*c2", &(&aff.c1 * &aff.c2), &(&fam.c1 * &fam.c2)));
    let ratio = aff.c1.checked_div(&fam.c1).map(|r| r.to_string()).unwrap_or_else(|e| e.to_string());
    FamilyMatch { checks, c1_individual: EntryMatch::new("c1", &aff.c1, &fam.c1), gauge_ratio: ratio }
}

#[derive(Clone, Debug, Serialize)]
pub struct TokuyamaLimitMatch {
    pub gamma: Vec<EntryMatch>,
    pub delta: Vec<EntryMatch>,
}

impl TokuyamaLimitMatch {
    pub fn passed(&self) -> bool {
        self.gamma.iter().chain(&self.delta).all(|c| c.equal)
    }
}

fn entrywise(left: &SixVertexWeights, right: &SixVertexWeights) -> Vec<EntryMatch> {
    left.iter().zip(right.iter()).zip(WEIGHT_NAMES).map(|((l, r), n)| EntryMatch::new(n, l, r)).collect()
}

/// `(zq)·A_q((zq)⁻¹)`, ungraded, against `T_Γ`; `B_q(−qz)` with every entry
/// but `a1` negated against `T_Δ`. Both under `q → sqrt_v`.
pub fn match_tokuyama_limits() -> Result<TokuyamaLimitMatch, AffineError> {
    let q = LaurentExpr::var(Generator::Q);
    let z = LaurentExpr::var(Generator::Z);
    let zq = &z * &q;
    let to_sqrt_v: HashMap<Generator, LaurentExpr> = [(Generator::Q, LaurentExpr::var(Generator::SQRT_V))].into();

    let a = limits(LimitKind::A, &q, &zq.inv()?)?.weights().scale(&zq);
    let gamma = ungrade(&weights_to_matrix(&a)).weights().substitute(&to_sqrt_v)?;

    let b = limits(LimitKind::B, &q, &-&zq)?.weights();
    let flipped = SixVertexWeights { a1: b.a1.clone(), ..b.map(|e| -e) };
    let delta = flipped.substitute(&to_sqrt_v)?;

    let zs = [z];
    let tg = table_weights(TableKind::TGamma, &zs).expect("arity");
    let td = table_weights(TableKind::TDelta, &zs).expect("arity");
    Ok(TokuyamaLimitMatch { gamma: entrywise(&gamma, &tg), delta: entrywise(&delta, &td) })
}

/// `c1·c2` before and after each gauge transform.
pub fn gauge_preserves_product(c: &LaurentExpr, q: &LaurentExpr, z: &LaurentExpr) -> Vec<EntryMatch> {
    let base = specialized(c, q, z).weights();
    let before = &base.c1 * &base.c2;
    [("gamma", GaugeKind::Gamma), ("delta", GaugeKind::Delta)]
        .into_iter()
        .map(|(n, k)| {
            let w = gauge_transforms(k, c, q, z).weights();
            EntryMatch::new(n, &before, &(&w.c1 * &w.c2))
        })
        .collect()
}

/// A baxterized triple in the affine parametrization (`ζ = q`, `α = q⁻¹`)
/// with the second Yang–Baxter constraint imposed on the `β`s.
pub fn family_ybe_case() -> YbeCase {
    let q = LaurentExpr::var(Generator::Q);
    let qi = qinv(&q);
    let mut k = YbeTwoCoefficients::symbolic();
    k.a = qi.clone();
    k.c = qi.clone();
    k.e = qi;
    k.f = &(&(&k.a * &k.d) * &k.e) / &(&k.b * &k.c);
    let c = LaurentExpr::var(Generator::C);
    let d = LaurentExpr::var(Generator::D);
    ybe_two_case(&q, &c, &d, &k, "affine:family-ybe")
}

/// The ungraded Perk–Schultz triple under the endomorphism convention at a
/// random rational point. Reported only; the sign conventions that would
/// make it vanish are not fixed here.
pub fn perk_schultz_experiment(seed: u64) -> ResidualReport {
    let mut s = Sampler::new(seed);
    let [q, z1, z2, z3]: [BigRational; 4] = std::array::from_fn(|_| s.rational());
    let e = |x: &BigRational| LaurentExpr::rational(x.clone());
    let ps = |z: &BigRational, w: &BigRational| {
        let m = perk_schultz(&PerkSchultzParams { z: e(z), w: e(w), q: e(&q) });
        ungrade(&VertexMatrix::try_from(m).expect("layout"))
    };
    let r = endo_bracket(&ps(&z1, &z2), &ps(&z1, &z3), &ps(&z2, &z3));
    ResidualReport::from_matrix("affine:perk-schultz-endo", r.as_matrix())
}
