//! Approximation of a series element by initial segments.
//!
//! For `z` in the completion and `a` close enough to `z`, the values of the
//! nonzero terms `f^[i](a) (z - a)^i` of the Taylor expansion are pairwise
//! distinct, so `v f(z) = min_i v(f^[i](a) b^i)` for any `b` with
//! `v b = v(z - a)`.

use super::series::{laurent_poly, t_adic_value, TruncatedSeries};
use crate::error::{Error, Result};
use crate::polyfield::{substitute, Coeff, RationalFunction, SparsePoly};

#[derive(Clone, Debug, PartialEq)]
pub struct ApproximationWitness {
    /// Initial segment of `z`, a Laurent polynomial in `t`.
    pub a: RationalFunction,
    /// Leading term of `z - a`, as `(coefficient, exponent)`.
    pub b: (Coeff, i64),
    /// `(z - a) / b`, of value 0 and residue 1.
    pub ztilde: TruncatedSeries,
    /// Number of leading terms of `z` in `a`.
    pub depth: usize,
    pub polys: Vec<SparsePoly>,
    /// Per polynomial: `(i, v(f^[i](a) b^i))` for the nonzero terms.
    pub tables: Vec<Vec<(u32, i64)>>,
}

impl ApproximationWitness {
    pub fn b_value(&self) -> i64 {
        self.b.1
    }

    pub fn b_ratfun(&self) -> RationalFunction {
        laurent_poly(self.a.base(), &[(self.b.1, self.b.0.clone())])
    }
}

/// Polynomials over `K[t]` in `X`: two variables `(t, X)`, or one variable `X`
/// with constant coefficients.
pub(crate) fn as_tx(f: &SparsePoly) -> Result<SparsePoly> {
    match f.nvars() {
        2 => Ok(f.clone()),
        1 => Ok(f.remap(2, &[1])),
        n => Err(Error::Dimension(format!(
            "expected a polynomial in X or (t, X), got {n} variables"
        ))),
    }
}

/// Values of `f^[i](a) b^i` for the nonzero terms.
pub(crate) fn value_table(f: &SparsePoly, a: &RationalFunction, b_value: i64) -> Vec<(u32, i64)> {
    let t = RationalFunction::var(f.base(), 1, 0);
    (0..=f.degree_in(1))
        .filter_map(|i| {
            let d = f.hasse_derivative(1, i);
            let at = substitute(&d, &[t.clone(), a.clone()]).expect("two arguments");
            (!at.is_zero()).then(|| (i, t_adic_value(&at).expect("nonzero") + i as i64 * b_value))
        })
        .collect()
}

fn distinct(table: &[(u32, i64)]) -> bool {
    let mut v: Vec<i64> = table.iter().map(|e| e.1).collect();
    v.sort_unstable();
    v.windows(2).all(|w| w[0] != w[1])
}

/// Deepen `a` through 1, 2, 4, ... leading terms of `z` until every table
/// has pairwise distinct values.
pub fn kaplansky_normalize(fs: &[SparsePoly], z: &TruncatedSeries) -> Result<ApproximationWitness> {
    if fs.is_empty() {
        return Err(Error::Invalid("no polynomials to normalize".into()));
    }
    let polys = fs.iter().map(as_tx).collect::<Result<Vec<_>>>()?;
    if polys.iter().any(SparsePoly::is_zero) {
        return Err(Error::Invalid("zero polynomial".into()));
    }
    let base = z.base();
    let terms: Vec<(i64, Coeff)> = z.terms().map(|(e, c)| (e, c.clone())).collect();
    let available = terms.len();
    let mut depth = 1usize;
    let mut reached = 0usize;
    loop {
        // b is the term after the first `depth`, so depth < available.
        let d = if depth < available {
            depth
        } else if reached + 1 < available {
            available - 1
        } else {
            return Err(Error::insufficient(
                format!("no separating truncation among the {available} known terms of the series"),
                reached as i64,
            ));
        };
        reached = d;
        let a = laurent_poly(base, &terms[..d]);
        let (be, bc) = terms[d].clone();
        let tables: Vec<Vec<(u32, i64)>> = polys.iter().map(|f| value_table(f, &a, be)).collect();
        if tables.iter().all(|t| distinct(t)) {
            let tail_terms: Vec<(i64, Coeff)> = terms[d..].to_vec();
            let tail = TruncatedSeries::from_terms(base, &tail_terms, z.precision());
            let inv = base.inv(&bc).expect("nonzero term");
            let ztilde = tail.mul_monomial(&inv, -be);
            return Ok(ApproximationWitness {
                a,
                b: (bc, be),
                ztilde,
                depth: d,
                polys,
                tables,
            });
        }
        if d + 1 >= available {
            depth = available;
        } else {
            depth *= 2;
        }
    }
}

/// `min_i v(f^[i](a) b^i)` for a polynomial the witness was built for.
pub fn value_via_lvpol(witness: &ApproximationWitness, f: &SparsePoly) -> Result<i64> {
    let f = as_tx(f)?;
    let k = witness
        .polys
        .iter()
        .position(|p| *p == f)
        .ok_or_else(|| Error::precondition("polynomial not covered by the witness"))?;
    witness.tables[k]
        .iter()
        .map(|e| e.1)
        .min()
        .ok_or(Error::ValueOfZero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyfield::BaseField;

    fn series(base: BaseField, exps: &[i64], p: i64) -> TruncatedSeries {
        let t: Vec<(i64, Coeff)> = exps.iter().map(|&e| (e, base.one())).collect();
        TruncatedSeries::from_terms(base, &t, p)
    }

    fn x_pow(base: BaseField, k: u32) -> SparsePoly {
        SparsePoly::var(base, 1, 0).pow(k)
    }

    #[test]
    fn square_of_sparse_series() {
        let b = BaseField::Prime(5);
        let z = series(b, &[1, 3, 7], 8);
        let w = kaplansky_normalize(&[x_pow(b, 2)], &z).unwrap();
        assert_eq!(w.a, RationalFunction::var(b, 1, 0));
        assert_eq!(w.b, (b.one(), 3));
        assert_eq!(w.tables[0], vec![(0, 2), (1, 4), (2, 6)]);
        assert_eq!(value_via_lvpol(&w, &x_pow(b, 2)).unwrap(), 2);
        assert_eq!(w.ztilde.valuation(), Some(0));
        assert_eq!(w.ztilde.leading_coeff(), Some(b.one()));
    }

    #[test]
    fn linear_and_constant() {
        let b = BaseField::Rationals;
        let z = series(b, &[0, 2, 5], 9);
        let x = x_pow(b, 1);
        let c = SparsePoly::from_i64(b, 1, 4);
        let w = kaplansky_normalize(&[x.clone(), c.clone()], &z).unwrap();
        assert_eq!(w.depth, 1);
        assert_eq!(value_via_lvpol(&w, &c).unwrap(), 0);
        let x_minus_a = &x.remap(2, &[1]) - &w.a.numer().remap(2, &[0]);
        let w2 = kaplansky_normalize(std::slice::from_ref(&x_minus_a), &z).unwrap();
        assert_eq!(value_via_lvpol(&w2, &x_minus_a).unwrap(), w2.b_value());
    }

    #[test]
    fn exhausted_precision() {
        let b = BaseField::Rationals;
        let z = series(b, &[0], 1);
        let err = kaplansky_normalize(&[x_pow(b, 2)], &z).unwrap_err();
        assert!(matches!(err, Error::InsufficientPrecision { .. }));
    }

    #[test]
    fn uncovered_polynomial() {
        let b = BaseField::Rationals;
        let z = series(b, &[1, 2], 5);
        let w = kaplansky_normalize(&[x_pow(b, 1)], &z).unwrap();
        assert!(value_via_lvpol(&w, &x_pow(b, 3)).is_err());
    }
}
