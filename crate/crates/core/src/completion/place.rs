use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::algebraic::AlgebraicExtension;
use super::hensel::hensel_lift_root;
use super::series::TruncatedSeries;
use crate::error::{Error, Result};
use crate::polyfield::{gcd, BaseField, Coeff, SparsePoly};

/// Largest prime for which residue roots are found by exhaustive search.
const MAX_SEARCH_PRIME: u64 = 1 << 20;
/// Largest integer factored by trial division in the rational root test.
const MAX_TRIAL_DIVISION: u64 = 1 << 40;

#[derive(Clone, Debug, PartialEq)]
pub enum SeriesGenerator {
    /// `z` is the root of `min_poly(t, z)` with residue `residue`.
    Algebraic {
        min_poly: SparsePoly,
        residue: Coeff,
        root: TruncatedSeries,
        ext: AlgebraicExtension,
    },
    /// `z` is treated as transcendental over `K(t)`, embedded via `series`.
    Transcendental { series: TruncatedSeries },
}

/// The `t`-adic place on `K(t, z)`, realized by a series for `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesPlace {
    base: BaseField,
    t_name: String,
    z_name: String,
    generator: SeriesGenerator,
    precision: i64,
}

impl SeriesPlace {
    pub fn algebraic(
        base: BaseField,
        t_name: &str,
        z_name: &str,
        min_poly: &SparsePoly,
        residue: &Coeff,
        precision: i64,
    ) -> Result<Self> {
        if min_poly.nvars() != 2 || min_poly.base() != base {
            return Err(Error::Dimension(
                "minimal polynomial must be in (t, z)".into(),
            ));
        }
        check_separable(min_poly)?;
        let residue = base.reduce(residue)?;
        let root = hensel_lift_root(min_poly, &residue, precision).map_err(|e| match e {
            Error::Precondition(m) => {
                Error::precondition(format!("not a discrete rational presentation: {m}"))
            }
            other => other,
        })?;
        let ext = AlgebraicExtension::new(min_poly)?;
        Ok(SeriesPlace {
            base,
            t_name: t_name.to_string(),
            z_name: z_name.to_string(),
            generator: SeriesGenerator::Algebraic {
                min_poly: min_poly.clone(),
                residue,
                root,
                ext,
            },
            precision,
        })
    }

    pub fn transcendental(
        base: BaseField,
        t_name: &str,
        z_name: &str,
        series: TruncatedSeries,
    ) -> Result<Self> {
        if series.base() != base {
            return Err(Error::Dimension("series over another field".into()));
        }
        let precision = series.precision();
        Ok(SeriesPlace {
            base,
            t_name: t_name.to_string(),
            z_name: z_name.to_string(),
            generator: SeriesGenerator::Transcendental { series },
            precision,
        })
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn t_name(&self) -> &str {
        &self.t_name
    }

    pub fn z_name(&self) -> &str {
        &self.z_name
    }

    pub fn var_names(&self) -> Vec<String> {
        vec![self.t_name.clone(), self.z_name.clone()]
    }

    pub fn generator(&self) -> &SeriesGenerator {
        &self.generator
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn root(&self) -> &TruncatedSeries {
        match &self.generator {
            SeriesGenerator::Algebraic { root, .. } => root,
            SeriesGenerator::Transcendental { series } => series,
        }
    }

    pub fn extension(&self) -> Option<&AlgebraicExtension> {
        match &self.generator {
            SeriesGenerator::Algebraic { ext, .. } => Some(ext),
            SeriesGenerator::Transcendental { .. } => None,
        }
    }

    /// Exact test for `p(t, z) = 0` in the field.
    pub fn is_zero(&self, p: &SparsePoly) -> bool {
        match &self.generator {
            SeriesGenerator::Algebraic { min_poly, .. } => {
                p.is_zero() || p.pseudo_rem(min_poly, 1).is_zero()
            }
            SeriesGenerator::Transcendental { .. } => p.is_zero(),
        }
    }

    /// Series of `num / den` at the place.
    pub fn eval(&self, num: &SparsePoly, den: &SparsePoly) -> Result<TruncatedSeries> {
        self.eval_with(self.root(), num, den)
    }

    pub fn eval_with(
        &self,
        root: &TruncatedSeries,
        num: &SparsePoly,
        den: &SparsePoly,
    ) -> Result<TruncatedSeries> {
        if self.is_zero(den) {
            return Err(Error::DivisionByZero);
        }
        let d = root.eval_bivariate(den);
        if d.is_zero() {
            return Err(Error::insufficient(
                "denominator vanishes to the working precision",
                d.precision(),
            ));
        }
        root.eval_bivariate(num).div(&d)
    }

    pub fn value(&self, num: &SparsePoly, den: &SparsePoly) -> Result<i64> {
        if self.is_zero(num) {
            return Err(Error::ValueOfZero);
        }
        let s = self.eval(num, den)?;
        s.valuation().ok_or_else(|| {
            Error::insufficient(
                "nonzero element vanishes to the working precision",
                s.precision(),
            )
        })
    }

    /// Residue of an element of the valuation ring (0 for positive values).
    pub fn residue(&self, num: &SparsePoly, den: &SparsePoly) -> Result<Coeff> {
        if self.is_zero(num) {
            return Ok(self.base.zero());
        }
        let s = self.eval(num, den)?;
        match s.valuation() {
            None => Err(Error::insufficient(
                "nonzero element vanishes to the working precision",
                s.precision(),
            )),
            Some(v) if v < 0 => Err(Error::NotInValuationRing(v.to_string())),
            Some(0) => Ok(s.leading_coeff().expect("nonzero")),
            Some(_) => Ok(self.base.zero()),
        }
    }

    /// Series of all roots of the minimal polynomial, the chosen root first.
    pub fn conjugate_roots(&self) -> Result<Vec<TruncatedSeries>> {
        let SeriesGenerator::Algebraic {
            min_poly,
            residue,
            root,
            ..
        } = &self.generator
        else {
            return Ok(vec![self.root().clone()]);
        };
        let reduced = min_poly
            .specialize(0, &self.base.zero())
            .remap(1, &[usize::MAX, 0]);
        let roots = simple_roots(&reduced)?;
        let deg = min_poly.degree_in(1) as usize;
        if roots.len() != deg {
            return Err(Error::precondition(format!(
                "the reduction of the minimal polynomial has {} simple roots in the base field, \
                 need {deg}: conjugates do not all lie in the completion",
                roots.len()
            )));
        }
        let mut out = vec![root.clone()];
        for r in roots {
            if &r != residue {
                out.push(hensel_lift_root(min_poly, &r, self.precision)?);
            }
        }
        Ok(out)
    }
}

fn check_separable(m: &SparsePoly) -> Result<()> {
    if m.degree_in(1) == 0 {
        return Err(Error::precondition("minimal polynomial does not involve z"));
    }
    let dz = m.derivative(1);
    if dz.is_zero() {
        return Err(Error::precondition("minimal polynomial is inseparable"));
    }
    if gcd(m, &dz).involves(1) {
        return Err(Error::precondition(
            "minimal polynomial is inseparable or has repeated factors",
        ));
    }
    Ok(())
}

/// Roots `r` in the base field of a univariate polynomial with `p(r) = 0`
/// and `p'(r) != 0`.
pub fn simple_roots(p: &SparsePoly) -> Result<Vec<Coeff>> {
    assert_eq!(p.nvars(), 1);
    let base = p.base();
    if p.is_zero() {
        return Err(Error::precondition(
            "reduction of the minimal polynomial is zero",
        ));
    }
    let dp = p.derivative(0);
    let candidates: Vec<Coeff> = match base {
        BaseField::Prime(q) => {
            if q > MAX_SEARCH_PRIME {
                return Err(Error::Resource(format!(
                    "root search over F_{q} exceeds the exhaustive search limit"
                )));
            }
            (0..q as i64).map(|i| base.from_i64(i)).collect()
        }
        BaseField::Rationals => rational_root_candidates(p)?,
    };
    Ok(candidates
        .into_iter()
        .filter(|r| {
            p.eval(std::slice::from_ref(r)).is_zero() && !dp.eval(std::slice::from_ref(r)).is_zero()
        })
        .collect())
}

fn rational_root_candidates(p: &SparsePoly) -> Result<Vec<Coeff>> {
    let lcm = p
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let ints: Vec<(u32, BigInt)> = p
        .terms()
        .map(|(m, c)| {
            (
                m.0[0],
                (c * BigRational::from_integer(lcm.clone())).to_integer(),
            )
        })
        .collect();
    let low = ints.iter().min_by_key(|t| t.0).expect("nonzero");
    let high = ints.iter().max_by_key(|t| t.0).expect("nonzero");
    let mut out = Vec::new();
    if low.0 > 0 {
        out.push(BigRational::zero());
    }
    let ps = divisors(&low.1.abs())?;
    let qs = divisors(&high.1.abs())?;
    for a in &ps {
        for b in &qs {
            let r = BigRational::new(BigInt::from(*a), BigInt::from(*b));
            out.push(r.clone());
            out.push(-r);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn divisors(n: &BigInt) -> Result<Vec<u64>> {
    let n = n
        .to_u64()
        .filter(|&n| n <= MAX_TRIAL_DIVISION)
        .ok_or_else(|| Error::Resource(format!("cannot factor {n} for the rational root test")))?;
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            out.push(n / d);
        }
        d += 1;
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
