//! Schur polynomials and the Tokuyama product side.

use crate::exactalg::{BigRational, ExprMatrix, Generator, LaurentExpr};
use crate::lattice::{default_row_parameters, LatticeError, Partition};

/// Largest `|λ|` accepted by the tableau enumeration.
pub const SSYT_CAP: usize = 16;

/// `h_k(x_1, …, x_n)`; zero for negative `k`.
pub fn complete_homogeneous(k: i64, vars: &[LaurentExpr]) -> LaurentExpr {
    if k < 0 {
        return LaurentExpr::zero();
    }
    let k = k as usize;
    // h[j] = h_j of the variables seen so far
    let mut h = vec![LaurentExpr::zero(); k + 1];
    h[0] = LaurentExpr::one();
    for x in vars {
        for j in 1..=k {
            h[j] = &h[j] + &(x * &h[j - 1]);
        }
    }
    h.swap_remove(k)
}

/// Determinant by expansion over column subsets, `O(2^n · n)` products.
pub fn determinant(m: &ExprMatrix) -> LaurentExpr {
    let n = m.rows();
    assert_eq!(n, m.cols(), "determinant of a non-square matrix");
    if n == 0 {
        return LaurentExpr::one();
    }
    let mut f = vec![LaurentExpr::zero(); 1 << n];
    f[0] = LaurentExpr::one();
    for mask in 0usize..(1 << n) {
        let i = mask.count_ones() as usize;
        if i == n || f[mask].is_zero() {
            continue;
        }
        for j in 0..n {
            if mask >> j & 1 == 1 {
                continue;
            }
            let a = m.get(i, j);
            if a.is_zero() {
                continue;
            }
            let term = &f[mask] * a;
            let above = (mask >> (j + 1)).count_ones();
            let t = mask | 1 << j;
            f[t] = if above % 2 == 0 { &f[t] + &term } else { &f[t] - &term };
        }
    }
    f.swap_remove((1 << n) - 1)
}

/// `s_λ(x_1, …, x_r) = det(h_{λ_i − i + j})`.
pub fn schur_jacobi_trudi(lambda: &Partition, vars: &[LaurentExpr]) -> LaurentExpr {
    let r = vars.len();
    if lambda.length() > r {
        return LaurentExpr::zero();
    }
    let parts: Vec<usize> = lambda.parts().iter().copied().filter(|&p| p > 0).collect();
    let l = parts.len();
    if l == 0 {
        return LaurentExpr::one();
    }
    let m = ExprMatrix::from_fn(l, l, |i, j| complete_homogeneous(parts[i] as i64 - i as i64 + j as i64, vars));
    determinant(&m)
}

/// `s_λ` as a sum over semistandard tableaux with entries `1..=r`.
pub fn schur_ssyt(lambda: &Partition, vars: &[LaurentExpr]) -> Result<LaurentExpr, LatticeError> {
    if lambda.size() > SSYT_CAP {
        return Err(LatticeError::Resource { n: lambda.size(), cap: SSYT_CAP });
    }
    let r = vars.len();
    if lambda.length() > r {
        return Ok(LaurentExpr::zero());
    }
    let shape: Vec<usize> = lambda.parts().iter().copied().filter(|&p| p > 0).collect();
    let cells: Vec<(usize, usize)> = shape.iter().enumerate().flat_map(|(i, &p)| (0..p).map(move |j| (i, j))).collect();
    let mut fill: Vec<Vec<usize>> = shape.iter().map(|&p| vec![0; p]).collect();
    let mut content = vec![0u32; r];
    let mut total = LaurentExpr::zero();

    fn go(
        k: usize,
        cells: &[(usize, usize)],
        r: usize,
        fill: &mut Vec<Vec<usize>>,
        content: &mut Vec<u32>,
        vars: &[LaurentExpr],
        total: &mut LaurentExpr,
    ) {
        if k == cells.len() {
            let mono = content
                .iter()
                .zip(vars)
                .filter(|(&c, _)| c > 0)
                .fold(LaurentExpr::one(), |acc, (&c, x)| &acc * &x.pow(c as i64).expect("monomial power"));
            *total = &*total + &mono;
            return;
        }
        let (i, j) = cells[k];
        let lo_row = if j > 0 { fill[i][j - 1] } else { 0 };
        let lo_col = if i > 0 { fill[i - 1][j] + 1 } else { 0 };
        for e in lo_row.max(lo_col)..r {
            fill[i][j] = e;
            content[e] += 1;
            go(k + 1, cells, r, fill, content, vars, total);
            content[e] -= 1;
        }
    }
    go(0, &cells, r, &mut fill, &mut content, vars, &mut total);
    Ok(total)
}

/// `sqrt_v^{|λ|} · ∏_{i<j} (z_i − v z_j) · s_λ(z_1, …, z_r)`, with `v = sqrt_v²`.
pub fn tokuyama_rhs(lambda: &Partition, r: usize) -> LaurentExpr {
    let z = default_row_parameters(r);
    let s = LaurentExpr::var(Generator::SQRT_V);
    let v = &s * &s;
    let mut acc = s.pow(lambda.size() as i64).expect("monomial power");
    for i in 0..r {
        for j in i + 1..r {
            acc = &acc * &(&z[i] - &(&v * &z[j]));
        }
    }
    &acc * &schur_jacobi_trudi(lambda, &z)
}

/// [`tokuyama_rhs`] at a rational point, computed without expanding.
pub fn tokuyama_rhs_at(lambda: &Partition, z: &[BigRational], sqrt_v: &BigRational) -> BigRational {
    let zc: Vec<LaurentExpr> = z.iter().map(|x| LaurentExpr::rational(x.clone())).collect();
    let s = schur_jacobi_trudi(lambda, &zc).as_rational().expect("constant");
    let v = sqrt_v * sqrt_v;
    let mut acc = num_traits::pow(sqrt_v.clone(), lambda.size()) * s;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            acc *= &z[i] - &v * &z[j];
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn e(s: &str) -> LaurentExpr {
        s.parse().unwrap()
    }

    #[test]
    fn small_schur() {
        let z = default_row_parameters(2);
        let p: Partition = "2,1".parse().unwrap();
        assert_eq!(schur_jacobi_trudi(&p, &z), e("z_1^2*z_2 + z_1*z_2^2"));
        assert_eq!(schur_ssyt(&p, &z).unwrap(), e("z_1^2*z_2 + z_1*z_2^2"));
        let p: Partition = "1,1,1".parse().unwrap();
        assert!(schur_jacobi_trudi(&p, &z).is_zero());
        assert_eq!(complete_homogeneous(2, &z), e("z_1^2 + z_1*z_2 + z_2^2"));
    }

    #[test]
    fn determinant_of_permutation() {
        let m = ExprMatrix::permutation(&[1, 0, 2]);
        assert_eq!(determinant(&m), LaurentExpr::int(-1));
    }

    #[test]
    fn ssyt_cap() {
        let p: Partition = "9,8".parse().unwrap();
        assert!(matches!(schur_ssyt(&p, &default_row_parameters(2)), Err(LatticeError::Resource { .. })));
    }

    #[test]
    fn rhs_at_point_matches_expansion() {
        let p: Partition = "2,1,0".parse().unwrap();
        let z = [rat(2, 1), rat(-3, 7), rat(5, 2)];
        let sv = rat(1, 5);
        let mut point: std::collections::HashMap<Generator, BigRational> =
            (0..3).map(|i| (Generator::z(i + 1), z[i].clone())).collect();
        point.insert(Generator::SQRT_V, sv.clone());
        assert_eq!(tokuyama_rhs_at(&p, &z, &sv), tokuyama_rhs(&p, 3).eval_rational(&point).unwrap());
    }

    #[test]
    fn rhs_small() {
        let p: Partition = "1,0".parse().unwrap();
        assert_eq!(tokuyama_rhs(&p, 2), e("sqrt_v*(z_1 - sqrt_v^2*z_2)*(z_1 + z_2)"));
    }
}
