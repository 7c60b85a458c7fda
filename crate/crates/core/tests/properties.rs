mod common;

use common::*;
use fflab_core::exactalg::{nullspace_rational, rank_rational, AlgError, BigRational, LaurentExpr};
use fflab_core::lattice::{
    boundary_from_partition, count_states, enumerate_states, enumerate_states_dfs, Flavor, GridGeometry, Partition,
};
use fflab_core::sixvertex::{weights_to_matrix, SixVertexWeights, VertexMatrix};
use fflab_core::ybe::sign_twist;
use num_traits::Zero;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn addition_is_a_commutative_group(a in arb_expr(), b in arb_expr(), c in arb_expr()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert_eq!(&a + &LaurentExpr::zero(), a.clone());
    }

    #[test]
    fn multiplication_laws(a in arb_expr(), b in arb_expr(), c in arb_expr()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &LaurentExpr::one(), a.clone());
    }

    #[test]
    fn division_inverts_multiplication(a in arb_expr(), b in arb_expr()) {
        match a.checked_div(&b) {
            Ok(q) => prop_assert_eq!(&q * &b, a),
            Err(e) => {
                prop_assert!(b.is_zero());
                prop_assert_eq!(e, AlgError::DivisionByZero);
            }
        }
    }

    #[test]
    fn polynomial_display_is_canonical(p in arb_poly(4), q in arb_poly(4)) {
        let a = LaurentExpr::from_poly(p.clone()) + LaurentExpr::from_poly(q.clone());
        let b = LaurentExpr::from_poly(q) + LaurentExpr::from_poly(p);
        prop_assert_eq!(a.to_string(), b.to_string());
        let back: LaurentExpr = a.to_string().parse().unwrap();
        prop_assert_eq!(back.to_string(), a.to_string());
    }

    #[test]
    fn display_parse_round_trip(a in arb_expr()) {
        let back: LaurentExpr = a.to_string().parse().unwrap();
        prop_assert_eq!(&back, &a);
        let json = serde_json::to_string(&a).unwrap();
        let back: LaurentExpr = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in arb_expr(), b in arb_expr(), p in arb_point()) {
        let (ea, eb) = match (a.eval_rational(&p), b.eval_rational(&p)) {
            (Ok(x), Ok(y)) => (x, y),
            _ => return Ok(()),
        };
        prop_assert_eq!((&a + &b).eval_rational(&p).unwrap(), &ea + &eb);
        prop_assert_eq!((&a - &b).eval_rational(&p).unwrap(), &ea - &eb);
        if let Ok(v) = (&a * &b).eval_rational(&p) {
            prop_assert_eq!(v, &ea * &eb);
        }
    }

    #[test]
    fn substitution_commutes_with_evaluation(a in arb_expr(), p in arb_point()) {
        let map = p.iter().map(|(g, v)| (*g, LaurentExpr::rational(v.clone()))).collect();
        if let (Ok(direct), Ok(sub)) = (a.eval_rational(&p), a.substitute(&map)) {
            prop_assert_eq!(sub.as_rational(), Some(direct));
        }
    }

    #[test]
    fn nullspace_vectors_are_annihilated(m in arb_int_matrix()) {
        let ncols = m[0].len();
        let basis = nullspace_rational(&m, ncols);
        prop_assert_eq!(basis.len() + rank_rational(&m, ncols), ncols);
        for v in &basis {
            for row in &m {
                let dot: BigRational = row.iter().zip(v).map(|(a, b)| a * b).sum();
                prop_assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn weight_pack_round_trip(ws in prop::array::uniform6(arb_expr())) {
        let w = SixVertexWeights::from_array(ws);
        let m = weights_to_matrix(&w);
        prop_assert_eq!(m.weights(), w.clone());
        prop_assert_eq!(VertexMatrix::try_from(m.as_matrix().clone()).unwrap(), m.clone());
        prop_assert_eq!(sign_twist(&sign_twist(&m)), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn row_cut_enumeration_matches_dfs(r in 1usize..=3, parts in prop::collection::vec(0usize..=2, 3), extra in 0usize..=2) {
        let mut parts = parts[..r].to_vec();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let lambda = Partition::new(parts).unwrap();
        let n = lambda.largest() + r + extra;
        let b = boundary_from_partition(&lambda, r, n).unwrap();
        let g = GridGeometry { rows: r, cols: n, flavor: Flavor::Gamma };
        let dp = enumerate_states(&b, &g).unwrap();
        let dfs = enumerate_states_dfs(&b, &g).unwrap();
        prop_assert_eq!(dp.len(), dfs.len());
        prop_assert_eq!(count_states(&b, &g).unwrap(), dp.len() as u128);
        prop_assert!(dp.iter().all(|s| s.matches(&b) && s.paths_conserved()));
    }
}
