//! Acceptance criteria 1–10. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails. Time limits are wall-clock seconds.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use fflab_core::affine::{gauge_preserves_product, match_family, match_tokuyama_limits};
use fflab_core::exactalg::{nullspace_rational, BigRational, Generator, LaurentExpr};
use fflab_core::lattice::{
    boundary_from_partition, count_states, default_row_parameters, enumerate_states_dfs, partition_function,
    partition_function_at, transfer_partition_function, Flavor, GridGeometry, Partition,
};
use fflab_core::quantumgroup::{baxterize, intertwiner_residuals, r_matrix, specialize, structural_identities, RKind};
use fflab_core::sixvertex::{cubic_residual, free_fermion_residual, table_weights_default, TableKind};
use fflab_core::symfunc::{schur_jacobi_trudi, schur_ssyt, tokuyama_rhs, tokuyama_rhs_at};
use fflab_core::verify::solver_check;
use fflab_core::ybe::{run_cases, tokuyama_cases, ybe_suite_i, ybe_suite_ii, YbeTwoCoefficients};
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_261_015;
const SOLVER_POINTS: usize = 50;
const TOKUYAMA_R4_POINTS: usize = 5;
const TRANSFER_INSTANCES: usize = 10;
const PROPERTY_CASES: u32 = 1000;

fn g(x: Generator) -> LaurentExpr {
    LaurentExpr::var(x)
}

type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl Into<String>) -> Outcome {
    if ok {
        Ok(msg.into())
    } else {
        Err(msg.into())
    }
}

fn c1_intertwiner() -> Outcome {
    let (z, zp) = (g(Generator::ZETA), g(Generator::ZETA_P));
    let packs = [
        ("R", r_matrix(RKind::R, &z, &zp).weights),
        ("R'", r_matrix(RKind::RPrime, &z, &zp).weights),
        ("baxterized", baxterize(&z, &zp, &g(Generator::ALPHA), &g(Generator::BETA)).weights),
    ];
    for (n, w) in &packs {
        let res = intertwiner_residuals(w, &z, &zp);
        if res.len() != 8 || !res.iter().all(LaurentExpr::is_zero) {
            return Err(format!("{n}: nonzero intertwiner residual"));
        }
    }
    let (ok, detail) = solver_check(SOLVER_POINTS, SEED).map_err(|e| e.to_string())?;
    check(ok, format!("24 residuals zero; solver: {detail}"))
}

fn c2_structural() -> Outcome {
    let rep = structural_identities(&g(Generator::ZETA), &g(Generator::ZETA_P));
    check(rep.all_zero(), "R·R' + ζζ'I, R + R' − (1−ζ²)I, R² + R'² − (1+ζ⁴)I all zero")
}

fn c3_ybe() -> Outcome {
    let (z, zp, zpp) = (g(Generator::ZETA), g(Generator::ZETA_P), g(Generator::ZETA_PP));
    let one = ybe_suite_i(&z, &zp, &zpp);
    if !one.iter().all(|r| r.zero) {
        return Err(format!("YBE I nonzero: {one:?}"));
    }
    let two = ybe_suite_ii(&z, &zp, &zpp, &YbeTwoCoefficients::constrained());
    if !(two.constraint_satisfied && two.residual.zero) {
        return Err("YBE II nonzero under ade = bcf".into());
    }
    let mut bad = YbeTwoCoefficients::constrained();
    bad.f = &bad.f * &LaurentExpr::int(2);
    let violated = ybe_suite_ii(&z, &zp, &zpp, &bad);
    check(
        !violated.constraint_satisfied && !violated.residual.zero,
        format!(
            "YBE I (R, R') and YBE II zero; f scaled by 2 gives residual with {} terms",
            violated.residual.max_terms_nonzero_entry
        ),
    )
}

fn c4_free_fermion() -> Outcome {
    let mut packs =
        vec![baxterize(&g(Generator::ZETA), &g(Generator::ZETA_P), &g(Generator::ALPHA), &g(Generator::BETA)).weights];
    packs.extend(TableKind::ALL.map(table_weights_default));
    let ok = packs.iter().all(|w| free_fermion_residual(w).is_zero() && cubic_residual(w).is_zero());
    check(ok, format!("{} packs, both residuals zero", packs.len()))
}

fn c5_tables() -> Outcome {
    for k in TableKind::ALL {
        let z = match k.arity() {
            1 => vec![g(Generator::Z)],
            _ => default_row_parameters(2),
        };
        if specialize(k, &z).map_err(|e| e.to_string())? != table_weights_default(k) {
            return Err(format!("{k} differs"));
        }
    }
    Ok("six rows exact".into())
}

fn c6_mixed_ybe() -> Outcome {
    let reps = run_cases(&tokuyama_cases());
    let bad: Vec<&str> = reps.iter().filter(|r| !r.zero).map(|r| r.case.as_str()).collect();
    check(reps.len() == 12 && bad.is_empty(), format!("{} brackets, nonzero: {bad:?}", reps.len()))
}

fn c7_tokuyama() -> Outcome {
    let z3 = default_row_parameters(3);
    let box3 = Partition::all_in_box(3, 4);
    for lambda in &box3 {
        let rhs = tokuyama_rhs(lambda, 3);
        for f in [Flavor::Gamma, Flavor::Delta] {
            let lhs = partition_function(lambda, 3, lambda.largest() + 3, f, &z3).map_err(|e| e.to_string())?;
            if lhs != rhs {
                return Err(format!("{lambda} {f:?}: Z differs from rhs"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut rand_q = || {
        let p: i64 = loop {
            let p = rng.gen_range(-999..=999);
            if p != 0 {
                break p;
            }
        };
        BigRational::new(p.into(), rng.gen_range(1i64..=999).into())
    };
    let box4 = Partition::all_in_box(4, 4);
    for lambda in &box4 {
        for _ in 0..TOKUYAMA_R4_POINTS {
            let z: Vec<BigRational> = (0..4).map(|_| rand_q()).collect();
            let sv = rand_q();
            let want = tokuyama_rhs_at(lambda, &z, &sv);
            for f in [Flavor::Gamma, Flavor::Delta] {
                let got =
                    partition_function_at(lambda, 4, lambda.largest() + 4, f, &z, &sv).map_err(|e| e.to_string())?;
                if got != want {
                    return Err(format!("{lambda} r=4 {f:?} differs at a sample point"));
                }
            }
        }
    }
    let mut compared = 0;
    for (r, parts) in [(3, &box3), (4, &box4)] {
        for lambda in parts.iter() {
            let n = lambda.largest() + r;
            if n > 8 {
                continue;
            }
            let b = boundary_from_partition(lambda, r, n).map_err(|e| e.to_string())?;
            let geom = GridGeometry { rows: r, cols: n, flavor: Flavor::Gamma };
            let dp = count_states(&b, &geom).map_err(|e| e.to_string())?;
            let dfs = enumerate_states_dfs(&b, &geom).map_err(|e| e.to_string())?.len() as u128;
            if dp != dfs {
                return Err(format!("{lambda}: DP {dp} vs DFS {dfs}"));
            }
            compared += 1;
        }
    }
    Ok(format!(
        "{} partitions symbolic (both flavors), {} r=4 partitions × {TOKUYAMA_R4_POINTS} points, {compared} DP/DFS counts agree",
        box3.len(),
        box4.len()
    ))
}

fn c8_affine() -> Outcome {
    let (c, d, z, q) = (g(Generator::C), g(Generator::D), g(Generator::Z), g(Generator::Q));
    let fam = match_family(&c, &d, &z, &q);
    if !fam.passed() {
        return Err(format!("family match failed: {fam:?}"));
    }
    if !gauge_preserves_product(&c, &q, &z).iter().all(|m| m.equal) {
        return Err("gauge changed c1·c2".into());
    }
    let lim = match_tokuyama_limits().map_err(|e| e.to_string())?;
    check(lim.passed(), format!("family exact (gauge ratio {}), limits match T_Γ and T_Δ", fam.gauge_ratio))
}

fn c9_oracles() -> Outcome {
    let mut n_schur = 0;
    for r in 1..=3 {
        let z = default_row_parameters(r);
        for lambda in Partition::all_in_box(3, 3) {
            if schur_jacobi_trudi(&lambda, &z) != schur_ssyt(&lambda, &z).map_err(|e| e.to_string())? {
                return Err(format!("{lambda} in {r} variables"));
            }
            n_schur += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    for _ in 0..TRANSFER_INSTANCES {
        let r = rng.gen_range(1..=3);
        let mut parts: Vec<usize> = (0..r).map(|_| rng.gen_range(0..=3)).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let lambda = Partition::new(parts).unwrap();
        let n = (lambda.largest() + r + rng.gen_range(0..=3)).min(10);
        let f = if rng.gen_bool(0.5) { Flavor::Gamma } else { Flavor::Delta };
        let z = default_row_parameters(r);
        let a = partition_function(&lambda, r, n, f, &z).map_err(|e| e.to_string())?;
        let b = transfer_partition_function(&lambda, r, n, f, &z).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("{lambda} r={r} N={n} {f:?}: transfer differs"));
        }
    }
    Ok(format!("{n_schur} Schur pairs equal; {TRANSFER_INSTANCES} transfer instances equal"))
}

fn runner() -> TestRunner {
    let cfg = Config { cases: PROPERTY_CASES, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(cfg, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn err<T: std::fmt::Debug>(name: &str, e: proptest::test_runner::TestError<T>) -> String {
    format!("{name}: {e}")
}

fn c10_kernel() -> Outcome {
    runner()
        .run(&(arb_expr(), arb_expr(), arb_expr()), |(a, b, c)| {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a + &(-&a)).is_zero());
            Ok(())
        })
        .map_err(|e| err("ring laws", e))?;
    runner()
        .run(&(arb_poly(4), arb_poly(4)), |(p, q)| {
            let a = LaurentExpr::from_poly(p.clone()) + LaurentExpr::from_poly(q.clone());
            let b = LaurentExpr::from_poly(q) + LaurentExpr::from_poly(p);
            prop_assert_eq!(a.to_string(), b.to_string());
            let back: LaurentExpr = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
            Ok(())
        })
        .map_err(|e| err("canonical form", e))?;
    runner()
        .run(&(arb_expr(), arb_expr(), arb_point()), |(a, b, p)| {
            if let (Ok(x), Ok(y)) = (a.eval_rational(&p), b.eval_rational(&p)) {
                prop_assert_eq!((&a + &b).eval_rational(&p).unwrap(), &x + &y);
                prop_assert_eq!((&a * &b).eval_rational(&p).unwrap(), &x * &y);
            }
            Ok(())
        })
        .map_err(|e| err("eval homomorphism", e))?;
    runner()
        .run(&arb_int_matrix(), |m| {
            for v in nullspace_rational(&m, m[0].len()) {
                for row in &m {
                    let dot: BigRational = row.iter().zip(&v).map(|(a, b)| a * b).sum();
                    prop_assert!(dot.is_zero());
                }
            }
            Ok(())
        })
        .map_err(|e| err("nullspace", e))?;
    Ok(format!("4 properties × {PROPERTY_CASES} cases"))
}

type Criterion = (u32, &'static str, u64, fn() -> Outcome);

const CRITERIA: [Criterion; 10] = [
    (1, "intertwiner", 5, c1_intertwiner),
    (2, "structural identities", 1, c2_structural),
    (3, "Yang-Baxter I and II", 30, c3_ybe),
    (4, "free-fermion and cubic", 2, c4_free_fermion),
    (5, "specialization table", 60, c5_tables),
    (6, "mixed-flavor Yang-Baxter", 30, c6_mixed_ybe),
    (7, "Tokuyama identity", 120, c7_tokuyama),
    (8, "affine matching", 5, c8_affine),
    (9, "oracle agreement", 120, c9_oracles),
    (10, "kernel properties", 300, c10_kernel),
];

fn main() -> ExitCode {
    let mut failed = 0;
    for (n, name, limit, f) in CRITERIA {
        let t = Instant::now();
        let out = f();
        let dt = t.elapsed();
        let in_time = dt <= Duration::from_secs(limit);
        let (ok, msg) = match out {
            Ok(m) if in_time => (true, m),
            Ok(m) => (false, format!("{m}; exceeded {limit} s")),
            Err(m) => (false, m),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {n:>2} [{name}]: {} in {:.3} s (limit {limit} s): {msg}",
            if ok { "PASS" } else { "FAIL" },
            dt.as_secs_f64()
        );
    }
    println!("acceptance: {}/{} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
