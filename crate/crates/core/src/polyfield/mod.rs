//! Exact sparse polynomials and rational functions over `Q` or `F_p`.

mod field;
mod gcd;
mod poly;
mod ratfun;
mod render;

pub use field::{parse_rational, render_rational, BaseField, Coeff};
pub use gcd::gcd;
pub use poly::{Monomial, SparsePoly};
pub use ratfun::RationalFunction;
pub use render::{render_poly, render_ratfun};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Hasse derivative of order `i` with respect to `var`.
pub fn hasse_derivative(f: &SparsePoly, var: usize, i: u32) -> SparsePoly {
    f.hasse_derivative(var, i)
}

/// Substitute `(num, den)` pairs for the variables of `f` without cancelling
/// common factors. The result is `(N, D)` with `D` a product of powers of the
/// argument denominators.
pub fn substitute_fraction(
    f: &SparsePoly,
    args: &[(SparsePoly, SparsePoly)],
    target_nvars: usize,
) -> (SparsePoly, SparsePoly) {
    assert_eq!(args.len(), f.nvars(), "argument count must match variables");
    let base = f.base();
    let degs: Vec<u32> = (0..f.nvars()).map(|v| f.degree_in(v)).collect();
    let mut num_pows: Vec<Vec<SparsePoly>> = Vec::with_capacity(args.len());
    let mut den_pows: Vec<Vec<SparsePoly>> = Vec::with_capacity(args.len());
    for ((n, d), &deg) in args.iter().zip(&degs) {
        let mut np = vec![SparsePoly::one(base, target_nvars)];
        let mut dp = vec![SparsePoly::one(base, target_nvars)];
        for e in 1..=deg as usize {
            np.push(&np[e - 1] * n);
            dp.push(if d.is_one() {
                dp[0].clone()
            } else {
                &dp[e - 1] * d
            });
        }
        num_pows.push(np);
        den_pows.push(dp);
    }
    let mut num = SparsePoly::zero(base, target_nvars);
    for (m, c) in f.terms() {
        let mut t = SparsePoly::constant(base, target_nvars, c.clone());
        for (k, &e) in m.0.iter().enumerate() {
            let e = e as usize;
            let dk = degs[k] as usize;
            if e > 0 {
                t = &t * &num_pows[k][e];
            }
            if dk > e && !args[k].1.is_one() {
                t = &t * &den_pows[k][dk - e];
            }
        }
        num = &num + &t;
    }
    let mut den = SparsePoly::one(base, target_nvars);
    for (k, &deg) in degs.iter().enumerate() {
        if deg > 0 && !args[k].1.is_one() {
            den = &den * &den_pows[k][deg as usize];
        }
    }
    (num, den)
}

/// Exact evaluation of `f` at rational function arguments, normalized.
pub fn substitute(f: &SparsePoly, args: &[RationalFunction]) -> Result<RationalFunction> {
    if args.len() != f.nvars() {
        return Err(Error::Dimension(format!(
            "{} arguments for a polynomial in {} variables",
            args.len(),
            f.nvars()
        )));
    }
    let target = args.first().map(RationalFunction::nvars).unwrap_or(0);
    if args.iter().any(|a| a.nvars() != target) {
        return Err(Error::Dimension("arguments live in different rings".into()));
    }
    let pairs: Vec<_> = args
        .iter()
        .map(|a| (a.numer().clone(), a.denom().clone()))
        .collect();
    let (n, d) = substitute_fraction(f, &pairs, target);
    RationalFunction::new(n, d)
}

/// Integer determinant (Bareiss elimination over big integers).
pub fn integer_determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("matrix is not square".into()));
    }
    let det = integer_determinant(m);
    if det != BigInt::one() && det != -BigInt::one() {
        return Err(Error::precondition(format!(
            "exponent matrix is not unimodular (determinant {det})"
        )));
    }
    // Adjugate via cofactors; n is small.
    let mut inv = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = m
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != i)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let cof = integer_determinant(&minor) * &det;
            let cof = if (i + j) % 2 == 0 { cof } else { -cof };
            inv[j][i] = i64::try_from(cof)
                .map_err(|_| Error::Resource("inverse entry overflows i64".into()))?;
        }
    }
    Ok(inv)
}

/// Replace each of the first `r = matrix.len()` variables by a Laurent
/// monomial: `x_i -> prod_j x'_j^{matrix[i][j]}`. Remaining variables are kept.
pub fn laurent_monomial_substitute(
    f: &SparsePoly,
    matrix: &[Vec<i64>],
) -> Result<RationalFunction> {
    let r = matrix.len();
    if r > f.nvars() || matrix.iter().any(|row| row.len() != r) {
        return Err(Error::Dimension(format!(
            "{r}x{r} exponent matrix for {} variables",
            f.nvars()
        )));
    }
    let det = integer_determinant(matrix);
    if det != BigInt::one() && det != -BigInt::one() {
        return Err(Error::precondition(format!(
            "exponent matrix is not unimodular (determinant {det})"
        )));
    }
    let n = f.nvars();
    let mut exps: Vec<(Vec<i64>, Coeff)> = Vec::with_capacity(f.num_terms());
    let mut shift = vec![0i64; r];
    for (m, c) in f.terms() {
        let mut e: Vec<i64> = m.0.iter().map(|&x| x as i64).collect();
        for j in 0..r {
            e[j] = (0..r).map(|i| m.0[i] as i64 * matrix[i][j]).sum();
            shift[j] = shift[j].max(-e[j]);
        }
        exps.push((e, c.clone()));
    }
    let to_u32 =
        |x: i64| u32::try_from(x).map_err(|_| Error::Resource("exponent out of range".into()));
    let mut num = SparsePoly::zero(f.base(), n);
    for (e, c) in exps {
        let mono = e
            .iter()
            .enumerate()
            .map(|(j, &x)| to_u32(if j < r { x + shift[j] } else { x }))
            .collect::<Result<Vec<u32>>>()?;
        num = &num + &SparsePoly::monomial(f.base(), n, Monomial(mono), c);
    }
    let mut dm = vec![0u32; n];
    for j in 0..r {
        dm[j] = to_u32(shift[j])?;
    }
    let den = SparsePoly::monomial(f.base(), n, Monomial(dm), f.base().one());
    RationalFunction::new(num, den)
}

/// The Laurent monomial `prod_i x_i^{exps[i]}` as a rational function.
pub fn laurent_monomial(base: BaseField, nvars: usize, exps: &[i64]) -> RationalFunction {
    let mut num = vec![0u32; nvars];
    let mut den = vec![0u32; nvars];
    for (i, &e) in exps.iter().enumerate() {
        if e >= 0 {
            num[i] = e as u32;
        } else {
            den[i] = (-e) as u32;
        }
    }
    RationalFunction::new(
        SparsePoly::monomial(base, nvars, Monomial(num), base.one()),
        SparsePoly::monomial(base, nvars, Monomial(den), base.one()),
    )
    .expect("monomial denominator is nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    #[test]
    fn substitute_examples() {
        let b = q();
        let x1 = SparsePoly::var(b, 2, 0);
        let x2 = SparsePoly::var(b, 2, 1);
        let ratio =
            RationalFunction::new(SparsePoly::var(b, 2, 0), SparsePoly::var(b, 2, 1)).unwrap();
        let diff = &x1 - &x2;
        assert!(substitute(&diff, &[ratio.clone(), ratio])
            .unwrap()
            .is_zero());

        let sq = SparsePoly::var(b, 1, 0).pow(2);
        let xp1 = RationalFunction::from_poly(&SparsePoly::var(b, 1, 0) + &SparsePoly::one(b, 1));
        let got = substitute(&sq, &[xp1]).unwrap();
        let x = SparsePoly::var(b, 1, 0);
        let want = &(&(&x * &x) + &x.scale(&b.from_i64(2))) + &SparsePoly::one(b, 1);
        assert_eq!(got, RationalFunction::from_poly(want));

        let prod = &x1 * &x2;
        let inv_x = RationalFunction::var(b, 1, 0).inv().unwrap();
        let got = substitute(&prod, &[inv_x, RationalFunction::var(b, 1, 0)]).unwrap();
        assert!(got.is_one());
    }

    #[test]
    fn laurent_examples() {
        let b = q();
        let x1 = SparsePoly::var(b, 2, 0);
        let x2 = SparsePoly::var(b, 2, 1);
        let id = vec![vec![1, 0], vec![0, 1]];
        let f = &(&x1 * &x2) + &x1;
        assert_eq!(
            laurent_monomial_substitute(&f, &id).unwrap(),
            RationalFunction::from_poly(f.clone())
        );
        // x1 = x1', x2 = x2'/x1'  =>  x1*x2 = x2'
        let m = vec![vec![1, 0], vec![-1, 1]];
        assert_eq!(
            laurent_monomial_substitute(&(&x1 * &x2), &m).unwrap(),
            RationalFunction::from_poly(x2.clone())
        );
        // x1 = x2', single monomial image
        let m = vec![vec![0, 1], vec![1, -1]];
        assert_eq!(
            laurent_monomial_substitute(&x1, &m).unwrap(),
            RationalFunction::from_poly(x2.clone())
        );
        let bad = vec![vec![2, 0], vec![0, 1]];
        assert!(matches!(
            laurent_monomial_substitute(&x1, &bad),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let m = vec![vec![2, 1, 0], vec![1, 1, 0], vec![3, 5, 1]];
        let inv = unimodular_inverse(&m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: i64 = (0..3).map(|k| m[i][k] * inv[k][j]).sum();
                assert_eq!(s, i64::from(i == j));
            }
        }
    }
}
