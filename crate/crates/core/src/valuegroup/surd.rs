use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyfield::render_rational;

/// A real number `sum q * sqrt(d)` with rational `q` and distinct square-free
/// `d`. Terms are kept sorted by `d`, with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurdScalar {
    terms: Vec<(BigRational, u64)>,
}

pub fn is_square_free(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut p: u64 = 2;
    while p.saturating_mul(p) <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

impl SurdScalar {
    pub fn zero() -> Self {
        SurdScalar { terms: Vec::new() }
    }

    pub fn rational(q: BigRational) -> Self {
        Self::from_terms_unchecked(vec![(q, 1)])
    }

    pub fn from_i64(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    /// `q * sqrt(d)`; `d` must be square-free.
    pub fn surd(q: BigRational, d: u64) -> Result<Self> {
        Self::new(vec![(q, d)])
    }

    /// Validating constructor. Repeated `d` values are merged.
    pub fn new(terms: Vec<(BigRational, u64)>) -> Result<Self> {
        for (_, d) in &terms {
            if !is_square_free(*d) {
                return Err(Error::Invalid(format!(
                    "{d} is not a square-free positive integer"
                )));
            }
        }
        Ok(Self::from_terms_unchecked(terms))
    }

    fn from_terms_unchecked(mut terms: Vec<(BigRational, u64)>) -> Self {
        terms.sort_by_key(|t| t.1);
        let mut out: Vec<(BigRational, u64)> = Vec::with_capacity(terms.len());
        for (q, d) in terms {
            match out.last_mut() {
                Some(last) if last.1 == d => last.0 += q,
                _ => out.push((q, d)),
            }
        }
        out.retain(|(q, _)| !q.is_zero());
        SurdScalar { terms: out }
    }

    pub fn terms(&self) -> &[(BigRational, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &SurdScalar) -> SurdScalar {
        let mut t = self.terms.clone();
        t.extend(other.terms.iter().cloned());
        Self::from_terms_unchecked(t)
    }

    pub fn neg(&self) -> SurdScalar {
        SurdScalar {
            terms: self.terms.iter().map(|(q, d)| (-q, *d)).collect(),
        }
    }

    pub fn sub(&self, other: &SurdScalar) -> SurdScalar {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> SurdScalar {
        if c.is_zero() {
            return SurdScalar::zero();
        }
        SurdScalar {
            terms: self.terms.iter().map(|(q, d)| (q * c, *d)).collect(),
        }
    }

    /// `sum c_i * w_i`.
    pub fn linear_combination(coeffs: &[BigRational], weights: &[SurdScalar]) -> SurdScalar {
        let mut t = Vec::new();
        for (c, w) in coeffs.iter().zip(weights) {
            if c.is_zero() {
                continue;
            }
            t.extend(w.terms.iter().map(|(q, d)| (q * c, *d)));
        }
        Self::from_terms_unchecked(t)
    }

    /// Exact sign. Distinct square roots of square-free integers are linearly
    /// independent over Q, so a nonempty sum is never zero and interval
    /// refinement terminates.
    pub fn signum(&self) -> Ordering {
        match self.terms.len() {
            0 => Ordering::Equal,
            1 => sign_of(&self.terms[0].0),
            2 => self.two_term_sign(),
            _ => self.refine_sign(),
        }
    }

    // q1*sqrt(d1) + q2*sqrt(d2): compare squares when signs differ.
    fn two_term_sign(&self) -> Ordering {
        let (q1, d1) = &self.terms[0];
        let (q2, d2) = &self.terms[1];
        let s1 = sign_of(q1);
        let s2 = sign_of(q2);
        if s1 == s2 {
            return s1;
        }
        let a = q1 * q1 * BigRational::from_integer((*d1).into());
        let b = q2 * q2 * BigRational::from_integer((*d2).into());
        match a.cmp(&b) {
            Ordering::Greater => s1,
            Ordering::Less => s2,
            Ordering::Equal => unreachable!("distinct square-free radicands"),
        }
    }

    fn refine_sign(&self) -> Ordering {
        let mut bits: u32 = 16;
        loop {
            let (lo, hi) = self.enclose(bits);
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            bits *= 2;
        }
    }

    /// Rational interval containing the value, from square roots truncated to
    /// `bits` binary digits.
    pub fn enclose(&self, bits: u32) -> (BigRational, BigRational) {
        let scale = BigInt::one() << bits;
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (q, d) in &self.terms {
            let (rl, rh) = sqrt_bounds(*d, bits, &scale);
            if q.is_positive() {
                lo += q * &rl;
                hi += q * &rh;
            } else {
                lo += q * &rh;
                hi += q * &rl;
            }
        }
        (lo, hi)
    }

    /// Rough floating value for display only.
    pub fn approx(&self) -> f64 {
        let (lo, hi) = self.enclose(40);
        let mid = (lo + hi) / BigRational::from_integer(2.into());
        let n: f64 = mid.numer().to_string().parse().unwrap_or(f64::NAN);
        let d: f64 = mid.denom().to_string().parse().unwrap_or(f64::NAN);
        n / d
    }

    pub fn cmp_value(&self, other: &SurdScalar) -> Ordering {
        self.sub(other).signum()
    }
}

fn sign_of(q: &BigRational) -> Ordering {
    match q.numer().sign() {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

fn sqrt_bounds(d: u64, bits: u32, scale: &BigInt) -> (BigRational, BigRational) {
    if d == 1 {
        let one = BigRational::one();
        return (one.clone(), one);
    }
    let n = BigInt::from(d) << (2 * bits);
    let r = n.sqrt();
    let lo = BigRational::new(r.clone(), scale.clone());
    let hi = BigRational::new(r + 1, scale.clone());
    (lo, hi)
}

/// Whether the given reals are linearly independent over Q: the rank of the
/// coefficient matrix in the `sqrt(d)` basis equals the number of weights.
pub fn is_independent(weights: &[SurdScalar]) -> bool {
    let mut ds: Vec<u64> = weights
        .iter()
        .flat_map(|w| w.terms.iter().map(|t| t.1))
        .collect();
    ds.sort_unstable();
    ds.dedup();
    if weights.len() > ds.len() {
        return false;
    }
    let mut rows: Vec<Vec<BigRational>> = weights
        .iter()
        .map(|w| {
            ds.iter()
                .map(|d| {
                    w.terms
                        .iter()
                        .find(|t| t.1 == *d)
                        .map(|t| t.0.clone())
                        .unwrap_or_else(BigRational::zero)
                })
                .collect()
        })
        .collect();
    rank(&mut rows) == weights.len()
}

pub(crate) fn rank(rows: &mut [Vec<BigRational>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            for k in c..ncols {
                let v = &rows[r][k] * &f;
                rows[i][k] -= v;
            }
        }
        r += 1;
    }
    r
}

impl fmt::Display for SurdScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (q, d)) in self.terms.iter().enumerate() {
            let neg = q.is_negative();
            let a = q.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            match (*d, a.is_one()) {
                (1, _) => write!(f, "{}", render_rational(&a))?,
                (d, true) => write!(f, "sqrt({d})")?,
                (d, false) => write!(f, "{}*sqrt({d})", render_rational(&a))?,
            }
        }
        Ok(())
    }
}
