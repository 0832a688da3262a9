use std::ops::{Add, Mul, Neg, Sub};

use super::field::{BaseField, Coeff};
use super::gcd::gcd;
use super::poly::SparsePoly;
use crate::error::{Error, Result};

/// A quotient of polynomials in canonical form: the numerator and denominator
/// are coprime and the denominator is monic in graded-lex order. Two values
/// are equal as field elements iff they are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: SparsePoly,
    den: SparsePoly,
}

impl RationalFunction {
    pub fn new(num: SparsePoly, den: SparsePoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: SparsePoly, den: SparsePoly) -> Self {
        if num.is_zero() {
            let n = num.nvars();
            return RationalFunction {
                num,
                den: SparsePoly::one(den.base(), n),
            };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading_coeff();
        let inv = den.base().inv(&lc).expect("nonzero denominator");
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: SparsePoly) -> Self {
        let den = SparsePoly::one(p.base(), p.nvars());
        RationalFunction { num: p, den }
    }

    pub fn zero(base: BaseField, nvars: usize) -> Self {
        Self::from_poly(SparsePoly::zero(base, nvars))
    }

    pub fn one(base: BaseField, nvars: usize) -> Self {
        Self::from_poly(SparsePoly::one(base, nvars))
    }

    pub fn constant(base: BaseField, nvars: usize, c: Coeff) -> Self {
        Self::from_poly(SparsePoly::constant(base, nvars, c))
    }

    pub fn var(base: BaseField, nvars: usize, i: usize) -> Self {
        Self::from_poly(SparsePoly::var(base, nvars, i))
    }

    pub fn numer(&self) -> &SparsePoly {
        &self.num
    }

    pub fn denom(&self) -> &SparsePoly {
        &self.den
    }

    pub fn base(&self) -> BaseField {
        self.num.base()
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Coeff> {
        self.is_constant().then(|| self.num.constant_term())
    }

    pub fn involves(&self, var: usize) -> bool {
        self.num.involves(var) || self.den.involves(var)
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let u = e.unsigned_abs() as u32;
        let p = RationalFunction {
            num: self.num.pow(u),
            den: self.den.pow(u),
        };
        if e < 0 {
            p.inv()
        } else {
            Ok(p)
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        Self::normalize(self.num.scale(c), self.den.clone())
    }

    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        Self::normalize(self.num.remap(nvars, map), self.den.remap(nvars, map))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalize(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl From<SparsePoly> for RationalFunction {
    fn from(p: SparsePoly) -> Self {
        RationalFunction::from_poly(p)
    }
}
