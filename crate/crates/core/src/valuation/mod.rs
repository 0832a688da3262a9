//! Monomial valuations on `K(x_1..x_rho, y_1..y_tau)`.
//!
//! The `x_i` carry rationally independent values, the `y_j` have value 0 and
//! algebraically independent residues, and the valuation is trivial on `K`.
//! The value of a polynomial is the least value of its monomials; since the
//! `x` values are independent, distinct `x`-exponent vectors never tie.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::polyfield::{render_ratfun, BaseField, Coeff, Monomial, RationalFunction, SparsePoly};
use crate::valuegroup::{GroupElement, GroupOrder};

#[derive(Clone, Debug, PartialEq)]
pub struct MonomialPlace {
    base: BaseField,
    order: Arc<GroupOrder>,
    x_names: Vec<String>,
    y_names: Vec<String>,
}

/// Residue of a value-0 element: a rational function in `ybar_1..ybar_tau`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueElement {
    pub value: RationalFunction,
    pub names: Vec<String>,
}

impl ResidueElement {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn render(&self) -> String {
        render_ratfun(&self.value, &self.names)
    }
}

impl fmt::Display for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AbhyankarReport {
    pub trdeg: usize,
    pub rational_rank: usize,
    pub residue_trdeg: usize,
    pub is_abhyankar: bool,
}

impl MonomialPlace {
    /// Variables are named `x1..x_rho`, `y1..y_tau`.
    pub fn new(base: BaseField, order: Arc<GroupOrder>, tau: usize) -> Result<Self> {
        let rho = order.rank();
        Self::with_names(
            base,
            order,
            (1..=rho).map(|i| format!("x{i}")).collect(),
            (1..=tau).map(|j| format!("y{j}")).collect(),
        )
    }

    pub fn with_names(
        base: BaseField,
        order: Arc<GroupOrder>,
        x_names: Vec<String>,
        y_names: Vec<String>,
    ) -> Result<Self> {
        if x_names.len() != order.rank() {
            return Err(Error::Dimension(format!(
                "{} x names for a value group of rank {}",
                x_names.len(),
                order.rank()
            )));
        }
        if x_names.is_empty() && y_names.is_empty() {
            return Err(Error::Invalid(
                "a place needs at least one generator".into(),
            ));
        }
        let mut all: Vec<&String> = x_names.iter().chain(&y_names).collect();
        all.sort();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("generator names must be distinct".into()));
        }
        Ok(MonomialPlace {
            base,
            order,
            x_names,
            y_names,
        })
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn order(&self) -> &Arc<GroupOrder> {
        &self.order
    }

    pub fn rho(&self) -> usize {
        self.x_names.len()
    }

    pub fn tau(&self) -> usize {
        self.y_names.len()
    }

    pub fn nvars(&self) -> usize {
        self.rho() + self.tau()
    }

    pub fn x_names(&self) -> &[String] {
        &self.x_names
    }

    pub fn y_names(&self) -> &[String] {
        &self.y_names
    }

    /// All generator names, `x` block first.
    pub fn var_names(&self) -> Vec<String> {
        self.x_names.iter().chain(&self.y_names).cloned().collect()
    }

    pub fn residue_names(&self) -> Vec<String> {
        self.y_names.iter().map(|y| format!("{y}bar")).collect()
    }

    /// Value of `x^mu` for an integer exponent vector.
    pub fn value_of_exponents(&self, mu: &[i64]) -> GroupElement {
        let coords = mu
            .iter()
            .map(|&e| BigRational::from_integer(e.into()))
            .collect();
        GroupElement::new(self.order.clone(), coords).expect("length matches rank")
    }

    fn value_of_monomial(&self, m: &Monomial) -> GroupElement {
        let mu: Vec<i64> = m.0[..self.rho()].iter().map(|&e| e as i64).collect();
        self.value_of_exponents(&mu)
    }

    fn check_poly(&self, f: &SparsePoly) -> Result<()> {
        if f.nvars() != self.nvars() {
            return Err(Error::Dimension(format!(
                "polynomial in {} variables at a place with {} generators",
                f.nvars(),
                self.nvars()
            )));
        }
        Ok(())
    }

    /// Least value of the monomials of `f`, with the monomials attaining it.
    pub fn value_of_poly(&self, f: &SparsePoly) -> Result<(GroupElement, Vec<Monomial>)> {
        self.check_poly(f)?;
        if f.is_zero() {
            return Err(Error::ValueOfZero);
        }
        let rho = self.rho();
        let mut best: Option<(Vec<u32>, GroupElement)> = None;
        for (m, _) in f.terms() {
            let x = &m.0[..rho];
            if best.as_ref().is_some_and(|(bx, _)| bx.as_slice() == x) {
                continue;
            }
            let v = self.value_of_monomial(m);
            let better = match &best {
                None => true,
                Some((_, bv)) => v.compare(bv)? == Ordering::Less,
            };
            if better {
                best = Some((x.to_vec(), v));
            }
        }
        let (bx, bv) = best.expect("nonzero polynomial has terms");
        let minimal = f
            .terms()
            .filter(|(m, _)| m.0[..rho] == bx[..])
            .map(|(m, _)| m.clone())
            .collect();
        Ok((bv, minimal))
    }

    pub fn value_of_ratfun(&self, h: &RationalFunction) -> Result<GroupElement> {
        if h.is_zero() {
            return Err(Error::ValueOfZero);
        }
        let (vn, _) = self.value_of_poly(h.numer())?;
        let (vd, _) = self.value_of_poly(h.denom())?;
        vn.checked_sub(&vd)
    }

    /// Value of `num / den` without reducing the fraction.
    pub fn value_of_fraction(&self, num: &SparsePoly, den: &SparsePoly) -> Result<GroupElement> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (vn, _) = self.value_of_poly(num)?;
        let (vd, _) = self.value_of_poly(den)?;
        vn.checked_sub(&vd)
    }

    /// Residue of `num / den` in the valuation ring; 0 for positive values.
    pub fn residue_of_fraction_in_ring(
        &self,
        num: &SparsePoly,
        den: &SparsePoly,
    ) -> Result<ResidueElement> {
        if num.is_zero() {
            self.check_poly(num)?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(self.residue(RationalFunction::zero(self.base, self.tau())));
        }
        let v = self.value_of_fraction(num, den)?;
        match v.signum() {
            Ordering::Less => Err(Error::NotInValuationRing(v.to_string())),
            Ordering::Greater => Ok(self.residue(RationalFunction::zero(self.base, self.tau()))),
            Ordering::Equal => {
                let value = RationalFunction::new(self.initial_form(num), self.initial_form(den))?;
                Ok(self.residue(value))
            }
        }
    }

    /// `true` iff `v(h) >= 0`; zero is in the ring.
    pub fn in_valuation_ring(&self, h: &RationalFunction) -> bool {
        if h.is_zero() {
            return true;
        }
        self.value_of_ratfun(h)
            .map(|v| v.signum() != Ordering::Less)
            .unwrap_or(false)
    }

    /// Residue of an element of value 0.
    pub fn residue_of(&self, h: &RationalFunction) -> Result<ResidueElement> {
        let v = self.value_of_ratfun(h)?;
        match v.signum() {
            Ordering::Less => Err(Error::NotInValuationRing(v.to_string())),
            Ordering::Greater => Err(Error::NotAUnit(v.to_string())),
            Ordering::Equal => {
                let n = self.initial_form(h.numer());
                let d = self.initial_form(h.denom());
                let value = RationalFunction::new(n, d)?;
                Ok(self.residue(value))
            }
        }
    }

    /// Residue of any element of the valuation ring; 0 for positive values.
    pub fn residue_in_ring(&self, h: &RationalFunction) -> Result<ResidueElement> {
        if h.is_zero() {
            return Ok(self.residue(RationalFunction::zero(self.base, self.tau())));
        }
        match self.residue_of(h) {
            Err(Error::NotAUnit(_)) => {
                Ok(self.residue(RationalFunction::zero(self.base, self.tau())))
            }
            other => other,
        }
    }

    fn residue(&self, value: RationalFunction) -> ResidueElement {
        ResidueElement {
            value,
            names: self.residue_names(),
        }
    }

    /// Minimal-value part of `f` with the common `x` monomial removed, as a
    /// polynomial in the residue variables.
    fn initial_form(&self, f: &SparsePoly) -> SparsePoly {
        let rho = self.rho();
        let (_, minimal) = self.value_of_poly(f).expect("nonzero polynomial");
        let mut terms: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for m in minimal {
            terms.insert(Monomial(m.0[rho..].to_vec()), f.coeff(&m));
        }
        SparsePoly::from_terms(self.base, self.tau(), terms)
    }

    pub fn abhyankar_report(&self) -> AbhyankarReport {
        AbhyankarReport {
            trdeg: self.rho() + self.tau(),
            rational_rank: self.rho(),
            residue_trdeg: self.tau(),
            is_abhyankar: true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valuegroup::SurdScalar;

    fn place(tau: usize) -> MonomialPlace {
        let one = BigRational::from_integer(1.into());
        let w = vec![
            SurdScalar::surd(one.clone(), 1).unwrap(),
            SurdScalar::surd(one, 2).unwrap(),
        ];
        MonomialPlace::new(
            BaseField::Rationals,
            GroupOrder::archimedean(w).unwrap(),
            tau,
        )
        .unwrap()
    }

    fn vars(p: &MonomialPlace) -> Vec<SparsePoly> {
        (0..p.nvars())
            .map(|i| SparsePoly::var(p.base(), p.nvars(), i))
            .collect()
    }

    fn frac(a: &SparsePoly, b: &SparsePoly) -> RationalFunction {
        RationalFunction::new(a.clone(), b.clone()).unwrap()
    }

    #[test]
    fn poly_values() {
        let p = place(1);
        let v = vars(&p);
        let (x1, x2, y1) = (&v[0], &v[1], &v[2]);
        let f = &(x1 * x2) + &x1.pow(3);
        let (val, min) = p.value_of_poly(&f).unwrap();
        assert_eq!(val, p.value_of_exponents(&[1, 1]));
        assert_eq!(min, vec![Monomial(vec![1, 1, 0])]);
        let f = &x1.pow(2) + x2;
        assert_eq!(
            p.value_of_poly(&f).unwrap().0,
            p.value_of_exponents(&[0, 1])
        );
        let f = &(y1 * x1) + &x1.pow(2);
        assert_eq!(
            p.value_of_poly(&f).unwrap().0,
            p.value_of_exponents(&[1, 0])
        );
        let zero = SparsePoly::zero(p.base(), 3);
        assert_eq!(p.value_of_poly(&zero), Err(Error::ValueOfZero));
    }

    #[test]
    fn fraction_values_and_ring() {
        let p = place(0);
        let v = vars(&p);
        let (x1, x2) = (&v[0], &v[1]);
        assert_eq!(
            p.value_of_ratfun(&frac(x2, x1)).unwrap(),
            p.value_of_exponents(&[-1, 1])
        );
        let c = RationalFunction::constant(p.base(), 2, p.base().from_i64(7));
        assert!(p.value_of_ratfun(&c).unwrap().is_zero());
        let h = frac(&(&x1.pow(2) + x2), x2);
        assert!(p.value_of_ratfun(&h).unwrap().is_zero());
        assert!(p.in_valuation_ring(&frac(x2, x1)));
        assert!(!p.in_valuation_ring(&frac(x1, x2)));
        assert!(p.in_valuation_ring(&RationalFunction::one(p.base(), 2)));
    }

    #[test]
    fn residues() {
        let p = place(1);
        let v = vars(&p);
        let (x1, x2, y1) = (&v[0], &v[1], &v[2]);
        let one = |r: &ResidueElement| r.value.is_one();
        assert!(one(&p.residue_of(&frac(&(&x1.pow(2) + x2), x2)).unwrap()));
        let r = p.residue_of(&frac(&(&(y1 * x1) + x1), x1)).unwrap();
        assert_eq!(r.render(), "y1bar + 1");
        assert!(one(&p.residue_of(&frac(&(x2 + &(x1 * x2)), x2)).unwrap()));
        assert!(matches!(
            p.residue_of(&frac(x2, x1)),
            Err(Error::NotAUnit(_))
        ));
        assert!(matches!(
            p.residue_of(&frac(x1, x2)),
            Err(Error::NotInValuationRing(_))
        ));
        assert!(p.residue_in_ring(&frac(x2, x1)).unwrap().is_zero());
    }

    #[test]
    fn abhyankar_counts() {
        assert_eq!(
            place(0).abhyankar_report(),
            AbhyankarReport {
                trdeg: 2,
                rational_rank: 2,
                residue_trdeg: 0,
                is_abhyankar: true
            }
        );
        let p = MonomialPlace::new(BaseField::Rationals, GroupOrder::lex(1), 1).unwrap();
        assert_eq!(p.abhyankar_report().trdeg, 2);
        let p = MonomialPlace::new(BaseField::Rationals, GroupOrder::lex(0), 2).unwrap();
        let r = p.abhyankar_report();
        assert_eq!((r.trdeg, r.rational_rank, r.residue_trdeg), (2, 0, 2));
    }
}
