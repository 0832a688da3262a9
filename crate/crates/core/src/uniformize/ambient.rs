use std::cmp::Ordering;
use std::fmt;

use crate::completion::SeriesPlace;
use crate::error::{Error, Result};
use crate::polyfield::{BaseField, RationalFunction, SparsePoly};
use crate::valuation::{MonomialPlace, ResidueElement};
use crate::valuegroup::GroupElement;

/// The valued function field a system lives in.
#[derive(Clone, Debug, PartialEq)]
pub enum Ambient {
    Monomial(MonomialPlace),
    Series(SeriesPlace),
}

/// A value in the value group of the ambient place.
#[derive(Clone, Debug, PartialEq)]
pub enum PlaceValue {
    Group(GroupElement),
    Integer(i64),
}

impl PlaceValue {
    pub fn signum(&self) -> Ordering {
        match self {
            PlaceValue::Group(g) => g.signum(),
            PlaceValue::Integer(v) => v.cmp(&0),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == Ordering::Equal
    }

    pub fn add(&self, other: &PlaceValue) -> Result<PlaceValue> {
        match (self, other) {
            (PlaceValue::Group(a), PlaceValue::Group(b)) => {
                Ok(PlaceValue::Group(a.checked_add(b)?))
            }
            (PlaceValue::Integer(a), PlaceValue::Integer(b)) => Ok(PlaceValue::Integer(a + b)),
            _ => Err(Error::Dimension("values from different places".into())),
        }
    }
}

impl fmt::Display for PlaceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceValue::Group(g) => write!(f, "{g}"),
            PlaceValue::Integer(v) => write!(f, "{v}"),
        }
    }
}

impl Ambient {
    pub fn base(&self) -> BaseField {
        match self {
            Ambient::Monomial(p) => p.base(),
            Ambient::Series(p) => p.base(),
        }
    }

    pub fn var_names(&self) -> Vec<String> {
        match self {
            Ambient::Monomial(p) => p.var_names(),
            Ambient::Series(p) => p.var_names(),
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            Ambient::Monomial(p) => p.nvars(),
            Ambient::Series(_) => 2,
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names().iter().position(|n| n == name)
    }

    pub fn precision(&self) -> Option<i64> {
        match self {
            Ambient::Monomial(_) => None,
            Ambient::Series(p) => Some(p.precision()),
        }
    }

    /// Exact test for `p = 0` in the function field.
    pub fn is_zero(&self, p: &SparsePoly) -> bool {
        match self {
            Ambient::Monomial(_) => p.is_zero(),
            Ambient::Series(s) => s.is_zero(p),
        }
    }

    /// Value of `num / den`; the fraction need not be reduced.
    pub fn value(&self, num: &SparsePoly, den: &SparsePoly) -> Result<PlaceValue> {
        match self {
            Ambient::Monomial(p) => Ok(PlaceValue::Group(p.value_of_fraction(num, den)?)),
            Ambient::Series(s) => Ok(PlaceValue::Integer(s.value(num, den)?)),
        }
    }

    /// Residue of an element of the valuation ring; positive values give 0.
    pub fn residue(&self, num: &SparsePoly, den: &SparsePoly) -> Result<ResidueElement> {
        match self {
            Ambient::Monomial(p) => p.residue_of_fraction_in_ring(num, den),
            Ambient::Series(s) => {
                let c = s.residue(num, den)?;
                Ok(ResidueElement {
                    value: RationalFunction::constant(s.base(), 0, c),
                    names: Vec::new(),
                })
            }
        }
    }

    pub fn value_of(&self, h: &RationalFunction) -> Result<PlaceValue> {
        self.value(h.numer(), h.denom())
    }

    pub fn residue_of(&self, h: &RationalFunction) -> Result<ResidueElement> {
        self.residue(h.numer(), h.denom())
    }

    /// Residue field element of a constant.
    pub fn residue_constant(&self, c: crate::polyfield::Coeff) -> ResidueElement {
        let (nv, names) = match self {
            Ambient::Monomial(p) => (p.tau(), p.residue_names()),
            Ambient::Series(_) => (0, Vec::new()),
        };
        ResidueElement {
            value: RationalFunction::constant(self.base(), nv, c),
            names,
        }
    }
}
