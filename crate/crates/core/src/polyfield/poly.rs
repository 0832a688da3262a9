use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{BaseField, Coeff};

/// Exponent vector of a monomial, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Sparse multivariate polynomial over a [`BaseField`].
///
/// Terms are kept in a map keyed by graded-lex monomials; zero coefficients
/// are never stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    base: BaseField,
    nvars: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

impl SparsePoly {
    pub fn zero(base: BaseField, nvars: usize) -> Self {
        SparsePoly {
            base,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(base: BaseField, nvars: usize) -> Self {
        Self::constant(base, nvars, base.one())
    }

    pub fn constant(base: BaseField, nvars: usize, c: Coeff) -> Self {
        Self::monomial(base, nvars, Monomial::one(nvars), c)
    }

    pub fn from_i64(base: BaseField, nvars: usize, n: i64) -> Self {
        Self::constant(base, nvars, base.from_i64(n))
    }

    pub fn var(base: BaseField, nvars: usize, i: usize) -> Self {
        assert!(
            i < nvars,
            "variable index {i} out of range for {nvars} variables"
        );
        Self::monomial(base, nvars, Monomial::var(nvars, i), base.one())
    }

    pub fn monomial(base: BaseField, nvars: usize, m: Monomial, c: Coeff) -> Self {
        assert_eq!(m.0.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero_coeff() {
            terms.insert(m, c);
        }
        SparsePoly { base, nvars, terms }
    }

    pub fn from_terms(
        base: BaseField,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Coeff)>,
    ) -> Self {
        let mut p = Self::zero(base, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && self.base.is_one(c))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.base.zero())
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Graded-lex largest term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Coeff {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.base.zero())
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    pub fn vars_present(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.involves(v)).collect()
    }

    /// Componentwise minimum of the exponent vectors (the monomial content).
    pub fn min_exponents(&self) -> Monomial {
        let mut e: Option<Vec<u32>> = None;
        for m in self.terms.keys() {
            e = Some(match e {
                None => m.0.clone(),
                Some(cur) => cur.iter().zip(&m.0).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        Monomial(e.unwrap_or_else(|| vec![0; self.nvars]))
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        debug_assert_eq!(m.0.len(), self.nvars);
        if c.is_zero_coeff() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(cur) => {
                let s = self.base.add(cur, &c);
                if s.is_zero_coeff() {
                    self.terms.remove(&m);
                } else {
                    *cur = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_compatible(&self, other: &SparsePoly) {
        assert_eq!(self.base, other.base, "polynomials over different fields");
        assert_eq!(self.nvars, other.nvars, "polynomials in different rings");
    }

    pub fn scale(&self, c: &Coeff) -> SparsePoly {
        if c.is_zero_coeff() {
            return Self::zero(self.base, self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), self.base.mul(a, c)))
            .collect();
        SparsePoly {
            base: self.base,
            nvars: self.nvars,
            terms,
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Coeff) -> SparsePoly {
        if c.is_zero_coeff() {
            return Self::zero(self.base, self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, a)| (k.mul(m), self.base.mul(a, c)))
            .collect();
        SparsePoly {
            base: self.base,
            nvars: self.nvars,
            terms,
        }
    }

    pub fn pow(&self, mut e: u32) -> SparsePoly {
        let mut base = self.clone();
        let mut acc = Self::one(self.base, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divide by the leading coefficient. Returns the monic polynomial and the
    /// coefficient divided out.
    pub fn monic(&self) -> (SparsePoly, Coeff) {
        let lc = self.leading_coeff();
        match self.base.inv(&lc) {
            Some(inv) => (self.scale(&inv), lc),
            None => (self.clone(), self.base.one()),
        }
    }

    pub fn eval(&self, point: &[Coeff]) -> Coeff {
        assert_eq!(point.len(), self.nvars);
        let mut acc = self.base.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = self.base.mul(&t, &self.base.pow(x, e as u64));
                }
            }
            acc = self.base.add(&acc, &t);
        }
        acc
    }

    /// Substitute a constant for one variable; the variable count is kept.
    pub fn specialize(&self, var: usize, value: &Coeff) -> SparsePoly {
        let mut out = Self::zero(self.base, self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut m2 = m.clone();
            m2.0[var] = 0;
            let c2 = if e == 0 {
                c.clone()
            } else {
                self.base.mul(c, &self.base.pow(value, e as u64))
            };
            out.add_term(m2, c2);
        }
        out
    }

    /// Coefficients with respect to `var`, indexed by power. The returned
    /// polynomials live in the same ring and do not involve `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<SparsePoly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(self.base, self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut m2 = m.clone();
            m2.0[var] = 0;
            out[e].add_term(m2, c.clone());
        }
        out
    }

    pub fn leading_coeff_in(&self, var: usize) -> SparsePoly {
        let deg = self.degree_in(var);
        let mut out = Self::zero(self.base, self.nvars);
        for (m, c) in &self.terms {
            if m.0[var] == deg {
                let mut m2 = m.clone();
                m2.0[var] = 0;
                out.add_term(m2, c.clone());
            }
        }
        out
    }

    /// Ordinary partial derivative.
    pub fn derivative(&self, var: usize) -> SparsePoly {
        self.hasse_derivative(var, 1)
    }

    /// Hasse (divided-power) derivative of order `i` in `var`:
    /// `X^n -> C(n, i) X^(n-i)`, with the binomial reduced in the base field.
    pub fn hasse_derivative(&self, var: usize, i: u32) -> SparsePoly {
        let mut out = Self::zero(self.base, self.nvars);
        for (m, c) in &self.terms {
            let n = m.0[var];
            if n < i {
                continue;
            }
            let b = self.base.binomial(n as u64, i as u64);
            let mut m2 = m.clone();
            m2.0[var] = n - i;
            out.add_term(m2, self.base.mul(c, &b));
        }
        out
    }

    /// Move variable `i` to position `map[i]` in a ring with `nvars` variables.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> SparsePoly {
        assert_eq!(map.len(), self.nvars);
        let mut out = Self::zero(self.base, nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; nvars];
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    e[map[i]] += k;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &SparsePoly) -> Option<SparsePoly> {
        self.check_compatible(divisor);
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = self.base.inv(lc)?;
        if divisor.is_constant() {
            return Some(self.scale(&lc_inv));
        }
        if divisor.is_monomial() {
            let mut out = Self::zero(self.base, self.nvars);
            for (m, c) in &self.terms {
                if !lm.divides(m) {
                    return None;
                }
                out.add_term(lm.quotient_of(m), self.base.mul(c, &lc_inv));
            }
            return Some(out);
        }
        let mut rem = self.clone();
        let mut quot = Self::zero(self.base, self.nvars);
        while let Some((rm, rc)) = rem.leading_term() {
            if !lm.divides(rm) {
                return None;
            }
            let qm = lm.quotient_of(rm);
            let qc = self.base.mul(rc, &lc_inv);
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Pseudo-remainder with respect to `var`: some multiple of `self` by a
    /// power of `lc_var(divisor)`, reduced below the `var`-degree of `divisor`.
    pub fn pseudo_rem(&self, divisor: &SparsePoly, var: usize) -> SparsePoly {
        let db = divisor.degree_in(var);
        let lb = divisor.leading_coeff_in(var);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(var) >= db {
            let dr = r.degree_in(var);
            let lr = r.leading_coeff_in(var);
            let mut shift = Monomial::one(self.nvars);
            shift.0[var] = dr - db;
            let sub = &(&lr * divisor).mul_monomial(&shift, &self.base.one());
            r = &(&lb * &r) - sub;
        }
        r
    }

    pub fn map_coeffs(&self, f: impl Fn(&Coeff) -> Coeff) -> SparsePoly {
        SparsePoly::from_terms(
            self.base,
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }
}

trait CoeffExt {
    fn is_zero_coeff(&self) -> bool;
}

impl CoeffExt for Coeff {
    fn is_zero_coeff(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), self.base.neg(c));
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.map_coeffs(|c| self.base.neg(c))
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_compatible(rhs);
        if self.is_zero() || rhs.is_zero() {
            return SparsePoly::zero(self.base, self.nvars);
        }
        let mut out = SparsePoly::zero(self.base, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), self.base.mul(ca, cb));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for SparsePoly {
            type Output = SparsePoly;
            fn $m(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}
