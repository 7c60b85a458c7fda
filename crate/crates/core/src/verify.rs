//! Verification suites: every identity the library checks, as named cases
//! with a zero/nonzero verdict.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::affine::{family_ybe_case, gauge_preserves_product, match_family, match_tokuyama_limits};
use crate::exactalg::sampling::{generic_point, schwartz_zippel_zero, Point, Sampler, SAMPLE_POINTS};
use crate::exactalg::{AlgError, Generator, LaurentExpr};
use crate::lattice::{default_row_parameters, partition_function, partition_function_at, Flavor, Partition};
use crate::quantumgroup::{
    baxterize, intertwiner_residuals, r_matrix, solve_intertwiner_space, specialize, structural_identities, RKind,
};
use crate::sixvertex::{cubic_residual, free_fermion_residual, table_weights_default, SixVertexWeights, TableKind};
use crate::symfunc::tokuyama_rhs;
use crate::ybe::{tokuyama_cases, ybe_one_case, ybe_two_case, YbeCase, YbeTwoCoefficients};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown mode `{0}`")]
    UnknownMode(String),
    #[error("no suites selected")]
    Empty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Intertwiner,
    Structural,
    Ybe1,
    Ybe2,
    FreeFermion,
    Cubic,
    Tables,
    Rtt,
    Tokuyama,
    Affine,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Intertwiner,
        Suite::Structural,
        Suite::Ybe1,
        Suite::Ybe2,
        Suite::FreeFermion,
        Suite::Cubic,
        Suite::Tables,
        Suite::Rtt,
        Suite::Tokuyama,
        Suite::Affine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Intertwiner => "intertwiner",
            Suite::Structural => "structural",
            Suite::Ybe1 => "ybe1",
            Suite::Ybe2 => "ybe2",
            Suite::FreeFermion => "freefermion",
            Suite::Cubic => "cubic",
            Suite::Tables => "tables",
            Suite::Rtt => "rtt",
            Suite::Tokuyama => "tokuyama",
            Suite::Affine => "affine",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| VerifyError::UnknownSuite(s.to_string()))
    }
}

/// `all` or a comma-separated list of suite names.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>, VerifyError> {
    let mut out: Vec<Suite> = if s.trim() == "all" {
        Suite::ALL.to_vec()
    } else {
        s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect::<Result<_, _>>()?
    };
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(VerifyError::Empty);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Symbolic,
    Numeric,
}

impl FromStr for Mode {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "symbolic" => Ok(Mode::Symbolic),
            "numeric" => Ok(Mode::Numeric),
            _ => Err(VerifyError::UnknownMode(s.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyPlan {
    pub suites: Vec<Suite>,
    pub mode: Mode,
    pub seed: u64,
}

impl VerifyPlan {
    pub fn new(suites: Vec<Suite>, mode: Mode, seed: u64) -> Result<VerifyPlan, VerifyError> {
        if suites.is_empty() {
            return Err(VerifyError::Empty);
        }
        Ok(VerifyPlan { suites, mode, seed })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub suite: Suite,
    pub case: String,
    pub zero: bool,
    /// Largest term count among nonzero residual entries (symbolic mode).
    pub max_terms_nonzero_entry: usize,
    /// Sample points evaluated; 0 for exact checks.
    pub points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub mode: Mode,
    pub seed: u64,
    pub all_zero: bool,
    pub cases: Vec<CaseReport>,
}

enum Check {
    Exprs(Vec<LaurentExpr>),
    Ybe(YbeCase),
    Tokuyama { lambda: Partition, r: usize, flavor: Flavor },
    Flag { ok: bool, detail: String },
}

struct Named {
    suite: Suite,
    name: String,
    check: Check,
}

fn g(x: Generator) -> LaurentExpr {
    LaurentExpr::var(x)
}

fn diff(a: &SixVertexWeights, b: &SixVertexWeights) -> Vec<LaurentExpr> {
    a.iter().zip(b.iter()).map(|(x, y)| x - y).collect()
}

/// Packs used by the free-fermion and cubic suites.
fn weight_packs() -> Vec<(String, SixVertexWeights)> {
    let mut v = vec![(
        "baxterized".to_string(),
        baxterize(&g(Generator::ZETA), &g(Generator::ZETA_P), &g(Generator::ALPHA), &g(Generator::BETA)).weights,
    )];
    v.extend(TableKind::ALL.map(|k| (k.name().to_string(), table_weights_default(k))));
    v
}

/// Dimension-2, `d1 = d2 = 0`, and `R, R'` in the span, at `n` random
/// generic `(ζ, ζ', q)`.
pub fn solver_check(n: usize, seed: u64) -> Result<(bool, String), AlgError> {
    let mut s = Sampler::new(seed);
    let gens = [Generator::ZETA, Generator::ZETA_P, Generator::Q];
    for i in 0..n {
        let p = s.admissible_point(&gens, generic_point);
        let (z, zp, q) = (&p[&Generator::ZETA], &p[&Generator::ZETA_P], &p[&Generator::Q]);
        let space = solve_intertwiner_space(z, zp, q)?;
        let zc = LaurentExpr::rational(z.clone());
        let zpc = LaurentExpr::rational(zp.clone());
        let mut members = true;
        for k in [RKind::R, RKind::RPrime] {
            let w = r_matrix(k, &zc, &zpc).weights;
            let vals: Vec<BigRational> = w.iter().map(|e| e.as_rational().expect("constant")).collect();
            members &= space.contains(&vals.try_into().expect("six"));
        }
        if space.dimension != 2 || !space.d_vanishes() || !members {
            return Ok((false, format!("point {i}: zeta={z}, zeta'={zp}, q={q}, dimension {}", space.dimension)));
        }
    }
    Ok((true, format!("{n} points, dimension 2, d1 = d2 = 0")))
}

fn build(suite: Suite, seed: u64) -> Vec<Named> {
    let (zeta, zeta_p, zeta_pp) = (g(Generator::ZETA), g(Generator::ZETA_P), g(Generator::ZETA_PP));
    let mut out = Vec::new();
    let mut push = |name: String, check: Check| out.push(Named { suite, name: format!("{suite}:{name}"), check });
    match suite {
        Suite::Intertwiner => {
            let packs = [
                ("R", r_matrix(RKind::R, &zeta, &zeta_p).weights),
                ("Rprime", r_matrix(RKind::RPrime, &zeta, &zeta_p).weights),
                ("baxterized", baxterize(&zeta, &zeta_p, &g(Generator::ALPHA), &g(Generator::BETA)).weights),
            ];
            for (n, w) in packs {
                push(n.into(), Check::Exprs(intertwiner_residuals(&w, &zeta, &zeta_p)));
            }
            let (ok, detail) = solver_check(2 * SAMPLE_POINTS, seed).unwrap_or_else(|e| (false, e.to_string()));
            push("solver".into(), Check::Flag { ok, detail });
        }
        Suite::Structural => {
            let rep = structural_identities(&zeta, &zeta_p);
            for (n, m) in rep.cases() {
                push(n.into(), Check::Exprs(m.entries().to_vec()));
            }
        }
        Suite::Ybe1 => {
            for k in [RKind::R, RKind::RPrime] {
                let c = ybe_one_case(k, &zeta, &zeta_p, &zeta_pp);
                let n = c.name.trim_start_matches("ybe1:").to_string();
                push(n, Check::Ybe(c));
            }
        }
        Suite::Ybe2 => {
            let k = YbeTwoCoefficients::constrained();
            push("constraint".into(), Check::Exprs(vec![k.constraint()]));
            push("bracket".into(), Check::Ybe(ybe_two_case(&zeta, &zeta_p, &zeta_pp, &k, "ybe2")));
        }
        Suite::FreeFermion => {
            for (n, w) in weight_packs() {
                push(n, Check::Exprs(vec![free_fermion_residual(&w)]));
            }
        }
        Suite::Cubic => {
            for (n, w) in weight_packs() {
                push(n, Check::Exprs(vec![cubic_residual(&w)]));
            }
        }
        Suite::Tables => {
            for k in TableKind::ALL {
                let z: Vec<LaurentExpr> = match k.arity() {
                    1 => vec![g(Generator::Z)],
                    _ => default_row_parameters(2),
                };
                let w = specialize(k, &z).expect("arity");
                push(k.name().into(), Check::Exprs(diff(&w, &table_weights_default(k))));
            }
        }
        Suite::Rtt => {
            for c in tokuyama_cases() {
                let n = c.name.clone();
                push(n, Check::Ybe(c));
            }
        }
        Suite::Tokuyama => {
            for r in 1..=3 {
                for lambda in Partition::all_in_box(r, 2) {
                    for flavor in [Flavor::Gamma, Flavor::Delta] {
                        push(
                            format!("{}:{lambda}", flavor.name()),
                            Check::Tokuyama { lambda: lambda.clone(), r, flavor },
                        );
                    }
                }
            }
        }
        Suite::Affine => {
            let (c, d, z, q) = (g(Generator::C), g(Generator::D), g(Generator::Z), g(Generator::Q));
            let fam = match_family(&c, &d, &z, &q);
            push(
                "family".into(),
                Check::Flag { ok: fam.passed(), detail: format!("gauge ratio c1: {}", fam.gauge_ratio) },
            );
            let gauge = gauge_preserves_product(&c, &q, &z);
            push("gauge-product".into(), Check::Flag { ok: gauge.iter().all(|m| m.equal), detail: String::new() });
            let (ok, detail) = match match_tokuyama_limits() {
                Ok(m) => (m.passed(), String::new()),
                Err(e) => (false, e.to_string()),
            };
            push("tokuyama-limits".into(), Check::Flag { ok, detail });
            push("family-ybe".into(), Check::Ybe(family_ybe_case()));
        }
    }
    out
}

/// FNV-1a; a stable per-case seed independent of scheduling.
fn case_seed(seed: u64, name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325 ^ seed, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

fn ybe_generators(c: &YbeCase) -> Vec<Generator> {
    let mut gens: Vec<Generator> = [&c.r, &c.s, &c.t]
        .iter()
        .flat_map(|m| m.as_matrix().entries().iter().flat_map(|e| e.generators()).collect::<Vec<_>>())
        .collect();
    gens.sort();
    gens.dedup();
    gens
}

fn to_exprs(p: &Point) -> std::collections::HashMap<Generator, LaurentExpr> {
    p.iter().map(|(k, v)| (*k, LaurentExpr::rational(v.clone()))).collect()
}

/// Substitutes sample points into the three ingredients, then brackets.
fn ybe_numeric(c: &YbeCase, seed: u64) -> Result<bool, AlgError> {
    let gens = ybe_generators(c);
    let mut s = Sampler::new(seed);
    let mut accepted = 0;
    let mut draws = 0;
    while accepted < SAMPLE_POINTS {
        draws += 1;
        if draws > 1000 {
            return Err(AlgError::DivisionByZero);
        }
        let p = s.admissible_point(&gens, generic_point);
        match c.substitute(&to_exprs(&p)) {
            Ok(inst) => {
                if !inst.residual().is_zero() {
                    return Ok(false);
                }
                accepted += 1;
            }
            Err(AlgError::DivisionByZero) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

fn tokuyama_numeric(lambda: &Partition, r: usize, flavor: Flavor, seed: u64) -> Result<bool, AlgError> {
    let mut s = Sampler::new(seed);
    let rhs = tokuyama_rhs(lambda, r);
    for _ in 0..SAMPLE_POINTS {
        let z: Vec<BigRational> = (0..r).map(|_| s.rational()).collect();
        let sv = s.rational();
        let mut p: Point = (1..=r).map(|i| (Generator::z(i), z[i - 1].clone())).collect();
        p.insert(Generator::SQRT_V, sv.clone());
        let n = lambda.largest() + r;
        let lhs = partition_function_at(lambda, r, n, flavor, &z, &sv)
            .map_err(|e| AlgError::UnsupportedOperation(e.to_string()))?;
        if lhs != rhs.eval_rational(&p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn evaluate(c: &Named, mode: Mode, seed: u64) -> CaseReport {
    let seed = case_seed(seed, &c.name);
    let mut rep = CaseReport {
        suite: c.suite,
        case: c.name.clone(),
        zero: false,
        max_terms_nonzero_entry: 0,
        points: 0,
        detail: None,
    };
    let fail = |rep: &mut CaseReport, e: String| rep.detail = Some(e);
    match (&c.check, mode) {
        (Check::Flag { ok, detail }, _) => {
            rep.zero = *ok;
            if !detail.is_empty() {
                rep.detail = Some(detail.clone());
            }
        }
        (Check::Exprs(es), Mode::Symbolic) => {
            rep.zero = es.iter().all(LaurentExpr::is_zero);
            rep.max_terms_nonzero_entry = es.iter().filter(|e| !e.is_zero()).map(|e| e.term_count()).max().unwrap_or(0);
        }
        (Check::Exprs(es), Mode::Numeric) => {
            rep.points = SAMPLE_POINTS;
            match schwartz_zippel_zero(es, seed, generic_point) {
                Ok(z) => rep.zero = z,
                Err(e) => fail(&mut rep, e.to_string()),
            }
        }
        (Check::Ybe(y), Mode::Symbolic) => {
            let r = y.report();
            rep.zero = r.zero;
            rep.max_terms_nonzero_entry = r.max_terms_nonzero_entry;
        }
        (Check::Ybe(y), Mode::Numeric) => {
            rep.points = SAMPLE_POINTS;
            match ybe_numeric(y, seed) {
                Ok(z) => rep.zero = z,
                Err(e) => fail(&mut rep, e.to_string()),
            }
        }
        (Check::Tokuyama { lambda, r, flavor }, Mode::Symbolic) => {
            let z = default_row_parameters(*r);
            match partition_function(lambda, *r, lambda.largest() + r, *flavor, &z) {
                Ok(lhs) => {
                    let d = &lhs - &tokuyama_rhs(lambda, *r);
                    rep.zero = d.is_zero();
                    rep.max_terms_nonzero_entry = if d.is_zero() { 0 } else { d.term_count() };
                }
                Err(e) => fail(&mut rep, e.to_string()),
            }
        }
        (Check::Tokuyama { lambda, r, flavor }, Mode::Numeric) => {
            rep.points = SAMPLE_POINTS;
            match tokuyama_numeric(lambda, *r, *flavor, seed) {
                Ok(z) => rep.zero = z,
                Err(e) => fail(&mut rep, e.to_string()),
            }
        }
    }
    rep
}

/// Runs every case of the plan concurrently. Cases come back sorted by name.
pub fn run(plan: &VerifyPlan) -> VerifyReport {
    let checks: Vec<Named> = plan.suites.par_iter().flat_map_iter(|&s| build(s, plan.seed)).collect();
    let mut cases: Vec<CaseReport> = checks.par_iter().map(|c| evaluate(c, plan.mode, plan.seed)).collect();
    cases.sort_by(|a, b| a.case.cmp(&b.case));
    VerifyReport { mode: plan.mode, seed: plan.seed, all_zero: cases.iter().all(|c| c.zero), cases }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            let verdict = if c.zero { "ZERO" } else { "NONZERO" };
            write!(f, "{:<7} {}", verdict, c.case)?;
            if let Some(d) = &c.detail {
                write!(f, "  ({d})")?;
            }
            writeln!(f)?;
        }
        let bad = self.cases.iter().filter(|c| !c.zero).count();
        write!(f, "{} cases, {} nonzero", self.cases.len(), bad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_parsing() {
        assert_eq!(parse_suites("all").unwrap().len(), 10);
        assert_eq!(parse_suites("ybe2,ybe1,ybe2").unwrap(), vec![Suite::Ybe1, Suite::Ybe2]);
        assert!(matches!(parse_suites("nosuch"), Err(VerifyError::UnknownSuite(_))));
        assert!(matches!(parse_suites(""), Err(VerifyError::Empty)));
        assert_eq!("NUMERIC".parse::<Mode>().unwrap(), Mode::Numeric);
    }

    #[test]
    fn cheap_suites_pass_both_modes() {
        let suites = vec![Suite::Structural, Suite::FreeFermion, Suite::Cubic, Suite::Tables, Suite::Ybe2];
        for mode in [Mode::Symbolic, Mode::Numeric] {
            let rep = run(&VerifyPlan::new(suites.clone(), mode, 7).unwrap());
            assert!(rep.all_zero, "{rep}");
            assert!(rep.cases.windows(2).all(|w| w[0].case <= w[1].case));
        }
    }

    #[test]
    fn case_seed_is_stable() {
        assert_eq!(case_seed(7, "ybe2:bracket"), case_seed(7, "ybe2:bracket"));
        assert_ne!(case_seed(7, "a"), case_seed(8, "a"));
    }
}
