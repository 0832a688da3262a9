use num_traits::Zero;

use super::series::TruncatedSeries;
use crate::error::{Error, Result};
use crate::polyfield::{Coeff, SparsePoly};

/// Lift a simple root `x0` of `f(0, X)` to a root of `f(t, X)` in `K[[t]]`,
/// known to precision `n`. Variable 0 of `f` is `t`, variable 1 is `X`.
///
/// Newton iteration; each step doubles the number of correct coefficients.
pub fn hensel_lift_root(f: &SparsePoly, x0: &Coeff, n: i64) -> Result<TruncatedSeries> {
    if f.nvars() != 2 {
        return Err(Error::Dimension(format!(
            "expected a polynomial in (t, X), got {} variables",
            f.nvars()
        )));
    }
    if n < 1 {
        return Err(Error::Invalid(format!(
            "precision must be positive, got {n}"
        )));
    }
    let base = f.base();
    let x0 = base.reduce(x0)?;
    let zero = base.zero();
    let reduced = f.specialize(0, &zero);
    let at = |p: &SparsePoly| p.eval(&[zero.clone(), x0.clone()]);
    if !at(&reduced).is_zero() {
        return Err(Error::precondition(format!(
            "{} is not a root of the reduction",
            base.render(&x0)
        )));
    }
    let df = f.derivative(1);
    if at(&df.specialize(0, &zero)).is_zero() {
        return Err(Error::precondition(format!(
            "{} is not a simple root of the reduction",
            base.render(&x0)
        )));
    }
    let mut z = TruncatedSeries::constant(base, x0, 1);
    let mut p = 1;
    while p < n {
        let p2 = (2 * p).min(n);
        // The current approximant is a polynomial; use it exactly at p2.
        let terms: Vec<(i64, Coeff)> = z.terms().map(|(e, c)| (e, c.clone())).collect();
        let ze = TruncatedSeries::from_terms(base, &terms, p2);
        let step = ze.eval_bivariate(f).div(&ze.eval_bivariate(&df))?;
        z = ze.sub(&step).with_precision(p2);
        p = p2;
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyfield::BaseField;

    fn tx(base: BaseField) -> (SparsePoly, SparsePoly) {
        (SparsePoly::var(base, 2, 0), SparsePoly::var(base, 2, 1))
    }

    #[test]
    fn square_root_of_one_plus_t() {
        let b = BaseField::Prime(5);
        let (t, x) = tx(b);
        let f = &(&x * &x) - &(&t + &SparsePoly::one(b, 2));
        let z = hensel_lift_root(&f, &b.one(), 2).unwrap();
        let want = TruncatedSeries::from_terms(b, &[(0, b.one()), (1, b.from_i64(3))], 2);
        assert_eq!(z, want);
        let z = hensel_lift_root(&f, &b.one(), 16).unwrap();
        assert_eq!(z.precision(), 16);
        assert!(z.eval_bivariate(&f).is_zero());
        assert_eq!(z.coeff(0), Some(b.one()));
    }

    #[test]
    fn linear_polynomial() {
        let b = BaseField::Rationals;
        let (_, x) = tx(b);
        let f = &x - &SparsePoly::from_i64(b, 2, 7);
        let z = hensel_lift_root(&f, &b.from_i64(7), 9).unwrap();
        assert_eq!(z, TruncatedSeries::constant(b, b.from_i64(7), 9));
    }

    #[test]
    fn repeated_root_rejected() {
        let b = BaseField::Rationals;
        let (t, x) = tx(b);
        let f = &(&x * &x) - &t;
        assert!(matches!(
            hensel_lift_root(&f, &b.zero(), 4),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            hensel_lift_root(&f, &b.one(), 4),
            Err(Error::Precondition(_))
        ));
    }
}
