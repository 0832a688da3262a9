use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyfield::{render_rational, BaseField, Coeff, RationalFunction, SparsePoly};

/// Truncated Laurent series `sum c_k t^k + O(t^N)` over a base field.
///
/// Coefficients are known for exponents below `precision`. A series with no
/// nonzero known coefficient is zero to precision; its `offset` equals its
/// precision. Otherwise `coeffs[0]` is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    base: BaseField,
    offset: i64,
    coeffs: Vec<Coeff>,
    precision: i64,
}

impl TruncatedSeries {
    pub fn new(base: BaseField, offset: i64, coeffs: Vec<Coeff>, precision: i64) -> Result<Self> {
        if offset + coeffs.len() as i64 > precision {
            return Err(Error::Invalid(format!(
                "coefficients up to t^{} exceed precision O(t^{precision})",
                offset + coeffs.len() as i64 - 1
            )));
        }
        let mut s = TruncatedSeries {
            base,
            offset,
            coeffs: coeffs
                .iter()
                .map(|c| base.reduce(c))
                .collect::<Result<_>>()?,
            precision,
        };
        s.normalize();
        Ok(s)
    }

    /// Series with the given `(exponent, coefficient)` terms; terms at or
    /// above `precision` are dropped.
    pub fn from_terms(base: BaseField, terms: &[(i64, Coeff)], precision: i64) -> Self {
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero(base, precision);
        };
        let lo = lo.min(precision);
        let mut coeffs = vec![Coeff::zero(); (precision - lo).max(0) as usize];
        for (e, c) in terms {
            if *e < precision {
                let k = (*e - lo) as usize;
                coeffs[k] = base.add(&coeffs[k], c);
            }
        }
        let mut s = TruncatedSeries {
            base,
            offset: lo,
            coeffs,
            precision,
        };
        s.normalize();
        s
    }

    pub fn zero(base: BaseField, precision: i64) -> Self {
        TruncatedSeries {
            base,
            offset: precision,
            coeffs: Vec::new(),
            precision,
        }
    }

    pub fn constant(base: BaseField, c: Coeff, precision: i64) -> Self {
        Self::monomial(base, c, 0, precision)
    }

    pub fn monomial(base: BaseField, c: Coeff, e: i64, precision: i64) -> Self {
        Self::from_terms(base, &[(e, c)], precision)
    }

    /// A polynomial in one variable, known exactly, viewed to `precision`.
    pub fn from_poly(p: &SparsePoly, precision: i64) -> Self {
        assert_eq!(p.nvars(), 1, "series from a univariate polynomial");
        let terms: Vec<(i64, Coeff)> = p.terms().map(|(m, c)| (m.0[0] as i64, c.clone())).collect();
        Self::from_terms(p.base(), &terms, precision)
    }

    fn normalize(&mut self) {
        let keep = (self.precision - self.offset).max(0) as usize;
        self.coeffs.truncate(keep);
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.offset = self.precision;
            }
            Some(k) => {
                self.coeffs.drain(..k);
                self.offset += k as i64;
                while self.coeffs.last().is_some_and(Zero::is_zero) {
                    self.coeffs.pop();
                }
            }
        }
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation, or `None` when zero to precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.offset)
    }

    /// Lower bound for the valuation: the valuation, or the precision.
    pub fn order_bound(&self) -> i64 {
        self.offset
    }

    pub fn leading_coeff(&self) -> Option<Coeff> {
        self.coeffs.first().cloned()
    }

    /// Coefficient of `t^e`, if known.
    pub fn coeff(&self, e: i64) -> Option<Coeff> {
        if e >= self.precision {
            return None;
        }
        let k = e - self.offset;
        if k < 0 || k as usize >= self.coeffs.len() {
            return Some(Coeff::zero());
        }
        Some(self.coeffs[k as usize].clone())
    }

    /// Nonzero known terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Coeff)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.offset + k as i64, c))
    }

    /// Drop the claim about exponents at or above `p`.
    pub fn with_precision(&self, p: i64) -> Self {
        let mut s = self.clone();
        if p < s.precision {
            s.precision = p;
            s.normalize();
            if s.is_zero() {
                s.offset = p;
            }
        }
        s
    }

    /// Sum of the terms with exponent below `k`, as an exact Laurent
    /// polynomial in one variable.
    pub fn truncation(&self, k: i64) -> RationalFunction {
        let terms: Vec<(i64, Coeff)> = self
            .terms()
            .filter(|(e, _)| *e < k)
            .map(|(e, c)| (e, c.clone()))
            .collect();
        laurent_poly(self.base, &terms)
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            base: self.base,
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| self.base.neg(c)).collect(),
            precision: self.precision,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.precision.min(other.precision);
        let terms: Vec<(i64, Coeff)> = self
            .terms()
            .chain(other.terms())
            .map(|(e, c)| (e, c.clone()))
            .collect();
        Self::from_terms(self.base, &terms, p)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut s = TruncatedSeries {
            base: self.base,
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|x| self.base.mul(x, c)).collect(),
            precision: self.precision,
        };
        s.normalize();
        s
    }

    /// Multiplication by the exact monomial `c t^e`.
    pub fn mul_monomial(&self, c: &Coeff, e: i64) -> Self {
        if c.is_zero() {
            // 0 is exact; keep a finite claim.
            return Self::zero(self.base, self.precision + e);
        }
        let mut s = self.scale(c);
        s.offset += e;
        s.precision += e;
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = (self.offset + other.precision).min(other.offset + self.precision);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.base, p);
        }
        let lo = self.offset + other.offset;
        let len = (p - lo).max(0) as usize;
        let mut coeffs = vec![Coeff::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    coeffs[i + j] = self.base.add(&coeffs[i + j], &self.base.mul(a, b));
                }
            }
        }
        let mut s = TruncatedSeries {
            base: self.base,
            offset: lo,
            coeffs,
            precision: p,
        };
        s.normalize();
        s
    }

    /// `1/self`; a series of valuation `v` and precision `p` has an inverse
    /// known to precision `p - 2v`.
    pub fn inverse(&self) -> Result<Self> {
        let Some(v) = self.valuation() else {
            return Err(Error::insufficient(
                "inverting a series that is zero to its precision",
                self.precision,
            ));
        };
        let r = (self.precision - v) as usize;
        let c0 = &self.coeffs[0];
        let inv0 = self.base.inv(c0).ok_or(Error::DivisionByZero)?;
        let mut d: Vec<Coeff> = Vec::with_capacity(r);
        d.push(inv0.clone());
        for k in 1..r {
            let mut acc = Coeff::zero();
            for i in 1..=k.min(self.coeffs.len() - 1) {
                acc = self
                    .base
                    .add(&acc, &self.base.mul(&self.coeffs[i], &d[k - i]));
            }
            d.push(self.base.neg(&self.base.mul(&inv0, &acc)));
        }
        let mut s = TruncatedSeries {
            base: self.base,
            offset: -v,
            coeffs: d,
            precision: self.precision - 2 * v,
        };
        s.normalize();
        Ok(s)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// `self^e`; the empty product is exact and claimed to the relative
    /// precision of `self`.
    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            let rel = self.precision - self.offset;
            return Self::constant(self.base, self.base.one(), rel.max(1));
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluate `p(t, x)` (variable 0 is `t`, variable 1 is `x`) at `x = self`.
    pub fn eval_bivariate(&self, p: &SparsePoly) -> Self {
        assert_eq!(p.nvars(), 2, "bivariate polynomial in (t, x)");
        let dx = p.degree_in(1);
        let dt = p.degree_in(0) as i64;
        let neg = (-self.order_bound()).max(0) * dx as i64;
        let exact = self.precision + dt + neg + 1;
        let cs = p.coefficients_in(1);
        let mut acc = Self::zero(self.base, exact);
        for c in cs.iter().rev() {
            let ct = c.remap(1, &[0, usize::MAX]);
            acc = acc.mul(self).add(&Self::from_poly(&ct, exact));
        }
        acc
    }

    /// Evaluate `num(t, x) / den(t, x)` at `x = self`.
    pub fn eval_fraction(&self, num: &SparsePoly, den: &SparsePoly) -> Result<Self> {
        let n = self.eval_bivariate(num);
        let d = self.eval_bivariate(den);
        n.div(&d)
    }

    /// Render as `t^k*(c0 + c1*t + ...) + O(t^N)`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return format!("O({var}^{})", self.precision);
        }
        let mut body = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = matches!(self.base, BaseField::Rationals) && c < &Coeff::zero();
            let a = if neg { -c } else { c.clone() };
            if body.is_empty() {
                if neg {
                    body.push('-');
                }
            } else {
                body.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                body.push_str(&render_rational(&a));
            } else if a == self.base.one() {
                body.push_str(&mono);
            } else {
                body.push_str(&format!("{}*{mono}", render_rational(&a)));
            }
        }
        let head = match self.offset {
            0 => String::new(),
            1 => format!("{var}*"),
            k => format!("{var}^{k}*"),
        };
        format!("{head}({body}) + O({var}^{})", self.precision)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

/// Exact `sum c t^e` with possibly negative exponents.
pub(crate) fn laurent_poly(base: BaseField, terms: &[(i64, Coeff)]) -> RationalFunction {
    let lo = terms.iter().map(|t| t.0).min().unwrap_or(0).min(0);
    let num = SparsePoly::from_terms(
        base,
        1,
        terms
            .iter()
            .map(|(e, c)| (crate::polyfield::Monomial(vec![(e - lo) as u32]), c.clone())),
    );
    let den = SparsePoly::var(base, 1, 0).pow((-lo) as u32);
    RationalFunction::new(num, den).expect("monomial denominator")
}

/// t-adic order of a nonzero polynomial in `t` (variable `var`).
pub(crate) fn t_order(p: &SparsePoly, var: usize) -> Option<i64> {
    p.terms().map(|(m, _)| m.0[var] as i64).min()
}

/// t-adic value of a rational function in the single variable `t`.
pub fn t_adic_value(h: &RationalFunction) -> Result<i64> {
    if h.is_zero() {
        return Err(Error::ValueOfZero);
    }
    let n = t_order(h.numer(), 0).expect("nonzero");
    let d = t_order(h.denom(), 0).expect("nonzero");
    Ok(n - d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> BaseField {
        BaseField::Prime(5)
    }

    fn s(base: BaseField, terms: &[(i64, i64)], p: i64) -> TruncatedSeries {
        let t: Vec<(i64, Coeff)> = terms.iter().map(|&(e, c)| (e, base.from_i64(c))).collect();
        TruncatedSeries::from_terms(base, &t, p)
    }

    #[test]
    fn precision_rules() {
        let b = BaseField::Rationals;
        let a = s(b, &[(1, 1), (2, 3)], 5);
        let c = s(b, &[(0, 2)], 3);
        assert_eq!(a.add(&c).precision(), 3);
        assert_eq!(a.mul(&c).precision(), 4);
        let inv = a.inverse().unwrap();
        assert_eq!(inv.precision(), 3);
        assert_eq!(inv.valuation(), Some(-1));
        let one = a.mul(&inv);
        assert_eq!(one, s(b, &[(0, 1)], 4));
    }

    #[test]
    fn square_of_sparse_series() {
        let z = s(f5(), &[(1, 1), (3, 1), (7, 1)], 8);
        let sq = z.mul(&z);
        assert_eq!(sq.valuation(), Some(2));
        assert_eq!(sq.precision(), 9);
        assert_eq!(sq, s(f5(), &[(2, 1), (4, 2), (6, 1), (8, 2)], 9));
    }

    #[test]
    fn render_format() {
        let z = s(f5(), &[(1, 1), (3, 4)], 8);
        assert_eq!(z.render("t"), "t*(1 + 4*t^2) + O(t^8)");
        let q = s(BaseField::Rationals, &[(0, 1), (1, -3)], 2);
        assert_eq!(q.render("t"), "(1 - 3*t) + O(t^2)");
        assert_eq!(TruncatedSeries::zero(f5(), 4).render("t"), "O(t^4)");
    }

    #[test]
    fn bivariate_evaluation() {
        let b = f5();
        // x^2 - (1 + t) at x = 1 + 3t
        let t = SparsePoly::var(b, 2, 0);
        let x = SparsePoly::var(b, 2, 1);
        let p = &(&x * &x) - &(&t + &SparsePoly::one(b, 2));
        let z = s(b, &[(0, 1), (1, 3)], 2);
        let r = z.eval_bivariate(&p);
        assert!(r.is_zero());
        assert_eq!(r.precision(), 2);
    }

    #[test]
    fn truncation_and_values() {
        let b = BaseField::Rationals;
        let z = s(b, &[(1, 1), (3, 1), (7, 1)], 8);
        let a = z.truncation(2);
        assert_eq!(a, RationalFunction::var(b, 1, 0));
        assert_eq!(t_adic_value(&a).unwrap(), 1);
    }
}
