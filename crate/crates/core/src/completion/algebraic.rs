//! Arithmetic in `K(t)[z]/(m)` on the power basis `1, z, ..., z^(D-1)`.

use crate::error::{Error, Result};
use crate::polyfield::{BaseField, RationalFunction, SparsePoly};

/// Coefficients in `K(t)` (one variable), lowest degree first.
pub type UPoly = Vec<RationalFunction>;

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicExtension {
    base: BaseField,
    /// Monic modulus, lowest degree first, length `D + 1`.
    modulus: UPoly,
}

fn trim(p: &mut UPoly) {
    while p.last().is_some_and(RationalFunction::is_zero) {
        p.pop();
    }
}

fn deg(p: &UPoly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn zero(base: BaseField) -> RationalFunction {
    RationalFunction::zero(base, 1)
}

pub(crate) fn poly_add(a: &UPoly, b: &UPoly, base: BaseField) -> UPoly {
    let n = a.len().max(b.len());
    let mut out: UPoly = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => zero(base),
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn poly_scale(a: &UPoly, c: &RationalFunction) -> UPoly {
    let mut out: UPoly = a.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

pub(crate) fn poly_mul(a: &UPoly, b: &UPoly, base: BaseField) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![zero(base); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn poly_divrem(a: &UPoly, b: &UPoly, base: BaseField) -> (UPoly, UPoly) {
    let db = deg(b).expect("nonzero divisor");
    let lead_inv = b[db].inv().expect("nonzero leading coefficient");
    let mut r = a.clone();
    trim(&mut r);
    let mut q = vec![zero(base); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = deg(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] * &lead_inv;
        let k = dr - db;
        for (i, bi) in b.iter().enumerate().take(db + 1) {
            r[k + i] = &r[k + i] - &(&c * bi);
        }
        q[k] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

impl AlgebraicExtension {
    /// `m` is a polynomial in `(t, z)` of positive degree in `z`.
    pub fn new(m: &SparsePoly) -> Result<Self> {
        if m.nvars() != 2 {
            return Err(Error::Dimension(
                "minimal polynomial must be in (t, z)".into(),
            ));
        }
        let base = m.base();
        let d = m.degree_in(1) as usize;
        if d == 0 {
            return Err(Error::precondition("minimal polynomial has degree 0 in z"));
        }
        let coeffs: UPoly = m
            .coefficients_in(1)
            .iter()
            .map(|c| RationalFunction::from_poly(c.remap(1, &[0, usize::MAX])))
            .collect();
        let lead_inv = coeffs[d].inv()?;
        let modulus = poly_scale(&coeffs, &lead_inv);
        Ok(AlgebraicExtension { base, modulus })
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn modulus(&self) -> &UPoly {
        &self.modulus
    }

    fn reduce(&self, p: &UPoly) -> UPoly {
        poly_divrem(p, &self.modulus, self.base).1
    }

    pub fn one(&self) -> UPoly {
        vec![RationalFunction::one(self.base, 1)]
    }

    /// Image of a polynomial in `(t, z)`.
    pub fn from_poly(&self, p: &SparsePoly) -> UPoly {
        let mut coeffs: UPoly = p
            .coefficients_in(1)
            .iter()
            .map(|c| RationalFunction::from_poly(c.remap(1, &[0, usize::MAX])))
            .collect();
        trim(&mut coeffs);
        self.reduce(&coeffs)
    }

    pub fn from_fraction(&self, num: &SparsePoly, den: &SparsePoly) -> Result<UPoly> {
        let d = self.inv(&self.from_poly(den))?;
        Ok(self.mul(&self.from_poly(num), &d))
    }

    pub fn from_ratfun(&self, h: &RationalFunction) -> Result<UPoly> {
        self.from_fraction(h.numer(), h.denom())
    }

    pub fn is_zero(&self, e: &UPoly) -> bool {
        e.iter().all(RationalFunction::is_zero)
    }

    pub fn add(&self, a: &UPoly, b: &UPoly) -> UPoly {
        poly_add(a, b, self.base)
    }

    pub fn sub(&self, a: &UPoly, b: &UPoly) -> UPoly {
        let nb: UPoly = b.iter().map(|x| -x).collect();
        poly_add(a, &nb, self.base)
    }

    pub fn mul(&self, a: &UPoly, b: &UPoly) -> UPoly {
        self.reduce(&poly_mul(a, b, self.base))
    }

    /// Inverse by the extended Euclidean algorithm against the modulus.
    pub fn inv(&self, a: &UPoly) -> Result<UPoly> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.modulus.clone(), a.clone());
        trim(&mut r1);
        let (mut s0, mut s1): (UPoly, UPoly) = (Vec::new(), self.one());
        while deg(&r1).is_some_and(|d| d > 0) {
            let (q, r) = poly_divrem(&r0, &r1, self.base);
            let s = poly_add(
                &s0,
                &poly_scale(
                    &poly_mul(&q, &s1, self.base),
                    &-&RationalFunction::one(self.base, 1),
                ),
                self.base,
            );
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        match deg(&r1) {
            Some(0) => {
                let c = r1[0].inv()?;
                Ok(self.reduce(&poly_scale(&s1, &c)))
            }
            _ => Err(Error::precondition(
                "element is a zero divisor: the minimal polynomial is reducible",
            )),
        }
    }

    pub fn pow(&self, a: &UPoly, e: u32) -> UPoly {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Monic minimal polynomial of `a` over `K(t)`, lowest degree first,
    /// from the first linear dependency among `1, a, a^2, ...`.
    pub fn min_poly(&self, a: &UPoly) -> Result<UPoly> {
        let d = self.degree();
        let base = self.base;
        let dense = |e: &UPoly| -> Vec<RationalFunction> {
            (0..d)
                .map(|i| e.get(i).cloned().unwrap_or_else(|| zero(base)))
                .collect()
        };
        // Echelon rows paired with the combination of powers producing them.
        let mut rows: Vec<(Vec<RationalFunction>, UPoly, usize)> = Vec::new();
        let mut power = self.one();
        for k in 0..=d {
            let mut v = dense(&power);
            let mut comb: UPoly = vec![zero(base); k + 1];
            comb[k] = RationalFunction::one(base, 1);
            for (row, rc, pivot) in &rows {
                if v[*pivot].is_zero() {
                    continue;
                }
                let f = v[*pivot].checked_div(&row[*pivot])?;
                for i in 0..d {
                    v[i] = &v[i] - &(&f * &row[i]);
                }
                comb = poly_add(&comb, &poly_scale(rc, &-&f), base);
            }
            match v.iter().position(|x| !x.is_zero()) {
                Some(p) => rows.push((v, comb, p)),
                None => {
                    let lead = comb[k].inv()?;
                    let mut h = poly_scale(&comb, &lead);
                    h.resize(k + 1, zero(base));
                    return Ok(h);
                }
            }
            power = self.mul(&power, a);
        }
        Err(Error::Invalid(
            "no dependency within the field degree".into(),
        ))
    }
}
