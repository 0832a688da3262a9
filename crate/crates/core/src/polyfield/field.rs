use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficients are stored as rationals. Over a prime field the stored value
/// is always an integer in `0..p`.
pub type Coeff = BigRational;

/// The constant field `K`: the rationals or a prime field of word size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rationals,
    Prime(u64),
}

impl BaseField {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(BaseField::Prime(p))
        } else {
            Err(Error::Invalid(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            BaseField::Rationals => 0,
            BaseField::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        Coeff::zero()
    }

    pub fn one(&self) -> Coeff {
        Coeff::one()
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            BaseField::Rationals => Coeff::from_integer(n.clone()),
            BaseField::Prime(p) => {
                let m = n.mod_floor(&BigInt::from(*p));
                Coeff::from_integer(m)
            }
        }
    }

    /// Map an arbitrary rational into the field. Fails over `F_p` when the
    /// denominator is divisible by `p`.
    pub fn reduce(&self, c: &BigRational) -> Result<Coeff> {
        match self {
            BaseField::Rationals => Ok(c.clone()),
            BaseField::Prime(_) => {
                let num = self.from_bigint(c.numer());
                let den = self.from_bigint(c.denom());
                let inv = self.inv(&den).ok_or(Error::DivisionByZero)?;
                Ok(self.mul(&num, &inv))
            }
        }
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        a.is_zero()
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        a.is_one()
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match self {
            BaseField::Rationals => a + b,
            BaseField::Prime(p) => {
                let s = (small(a) as u128 + small(b) as u128) % (*p as u128);
                Coeff::from_integer(BigInt::from(s as u64))
            }
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match self {
            BaseField::Rationals => -a,
            BaseField::Prime(p) => {
                let v = small(a);
                if v == 0 {
                    Coeff::zero()
                } else {
                    Coeff::from_integer(BigInt::from(p - v))
                }
            }
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match self {
            BaseField::Rationals => a * b,
            BaseField::Prime(p) => {
                let s = (small(a) as u128 * small(b) as u128) % (*p as u128);
                Coeff::from_integer(BigInt::from(s as u64))
            }
        }
    }

    pub fn inv(&self, a: &Coeff) -> Option<Coeff> {
        if a.is_zero() {
            return None;
        }
        match self {
            BaseField::Rationals => Some(a.recip()),
            BaseField::Prime(p) => {
                let v = small(a) as i128;
                let m = *p as i128;
                let (mut r0, mut r1) = (m, v);
                let (mut s0, mut s1) = (0i128, 1i128);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (s0, s1) = (s1, s0 - q * s1);
                }
                let inv = s0.rem_euclid(m) as u64;
                Some(Coeff::from_integer(BigInt::from(inv)))
            }
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Option<Coeff> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    pub fn pow(&self, a: &Coeff, mut e: u64) -> Coeff {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Binomial coefficient `C(n, k)` reduced into the field.
    pub fn binomial(&self, n: u64, k: u64) -> Coeff {
        if k > n {
            return self.zero();
        }
        let k = k.min(n - k);
        let mut acc = BigInt::one();
        for i in 0..k {
            acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
        }
        self.from_bigint(&acc)
    }

    /// Render a coefficient in canonical text form (`p` or `p/q`).
    pub fn render(&self, a: &Coeff) -> String {
        render_rational(a)
    }

    /// Deterministic sample elements for specialisation tests; non-zero over Q.
    pub(crate) fn sample(&self, i: u64) -> Coeff {
        match self {
            BaseField::Rationals => {
                // 2, -3, 5, -7, 11, ...
                let v = 2 + 3 * i as i64;
                let v = if i % 2 == 1 { -v } else { v };
                self.from_i64(v)
            }
            BaseField::Prime(p) => self.from_i64(((i.wrapping_mul(7919) + 2) % p) as i64),
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

pub fn render_rational(a: &BigRational) -> String {
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

fn small(a: &Coeff) -> u64 {
    debug_assert!(a.denom().is_one() && !a.is_negative());
    a.numer()
        .to_u64()
        .expect("prime field element out of range")
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // Deterministic witness set for all 64-bit integers.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
