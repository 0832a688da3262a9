//! Uniformization of a finite separable extension `K(t)(z)` lying in the
//! completion of `K(t)`.
//!
//! For `zeta` of degree > 1, `a` truncates `zeta` past every conjugate, so
//! `v(zeta - a) > v(sigma zeta - a)`; `b` is the leading monomial of
//! `zeta - a`. Then `eta = b/(zeta - a)` has residue 1 while its conjugates
//! have positive value, so the reduction of its minimal polynomial `h` is
//! `X^{k+1} - X^k` and 1 is a simple root. The block is
//! `h(X1)`, `X1 X2 - 1`, `X3 - b X2 - a`.

use super::place::SeriesPlace;
use super::rows::RowBuilder;
use super::series::{t_adic_value, TruncatedSeries};
use crate::error::{Error, Result};
use crate::polyfield::{RationalFunction, SparsePoly};
use crate::uniformize::{Ambient, GeneratorExpr, TriangularSystem};

/// `sum c_i X^i` written to the current row at variable `x`.
fn univariate_row(rows: &mut RowBuilder, coeffs: &[RationalFunction], x: usize) {
    for (i, c) in coeffs.iter().enumerate() {
        rows.term(c, &[(x, i as u32)]);
    }
}

fn group_distinct(series: &[TruncatedSeries]) -> Vec<TruncatedSeries> {
    let mut out: Vec<TruncatedSeries> = Vec::new();
    for s in series {
        if !out.iter().any(|o| o.sub(s).is_zero()) {
            out.push(s.clone());
        }
    }
    out
}

/// Normalization data for one element of degree > 1.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicBlock {
    /// Minimal polynomial of `b/(zeta - a)` over `K(t)`, lowest degree first.
    pub h: Vec<RationalFunction>,
    pub a: RationalFunction,
    pub b: RationalFunction,
}

impl AlgebraicBlock {
    /// The reduction `hP`, with whether 1 is a root and whether it is simple.
    pub fn reduction(&self) -> Result<(SparsePoly, bool, bool)> {
        let base = self.a.base();
        let mut hp = SparsePoly::zero(base, 1);
        for (i, c) in self.h.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = t_adic_value(c)?;
            if v < 0 {
                return Err(Error::NotInValuationRing(v.to_string()));
            }
            if v == 0 {
                let r = c.numer().specialize(0, &base.zero()).constant_term();
                let s = c.denom().specialize(0, &base.zero()).constant_term();
                let r = base.div(&r, &s).expect("unit denominator");
                hp = &hp + &SparsePoly::var(base, 1, 0).pow(i as u32).scale(&r);
            }
        }
        let one = [base.one()];
        let root = base.is_zero(&hp.eval(&one));
        let simple = !base.is_zero(&hp.derivative(0).eval(&one));
        Ok((hp, root, simple))
    }
}

enum Block {
    /// `zeta` lies in `K(t)`.
    Rational(RationalFunction),
    Full(AlgebraicBlock),
}

/// Block data for `zeta`, or `None` when `zeta` lies in `K(t)`.
pub fn algebraic_block(
    place: &SeriesPlace,
    zeta: &RationalFunction,
) -> Result<Option<AlgebraicBlock>> {
    if place.extension().is_none() {
        return Err(Error::precondition(
            "the generator is transcendental over K(t)",
        ));
    }
    let conjugates = place.conjugate_roots()?;
    Ok(match block_data(place, &conjugates, zeta, "zeta")? {
        Block::Rational(_) => None,
        Block::Full(b) => Some(b),
    })
}

fn block_data(
    place: &SeriesPlace,
    conjugates: &[TruncatedSeries],
    zeta: &RationalFunction,
    label: &str,
) -> Result<Block> {
    let ext = place.extension().expect("algebraic place");
    let e = ext.from_ratfun(zeta)?;
    let hz = ext.min_poly(&e)?;
    if hz.len() == 2 {
        let c = -&hz[0];
        if !c.is_zero() && t_adic_value(&c)? < 0 {
            return Err(Error::precondition(format!(
                "{label} is not in the valuation ring"
            )));
        }
        return Ok(Block::Rational(c));
    }
    let (num, den) = (zeta.numer(), zeta.denom());
    let images = conjugates
        .iter()
        .map(|r| place.eval_with(r, num, den))
        .collect::<Result<Vec<_>>>()?;
    let own = &images[0];
    let distinct = group_distinct(&images);
    let degree = hz.len() - 1;
    if distinct.len() != degree {
        return Err(Error::insufficient(
            format!(
                "{label}: {} of its {degree} conjugates are distinguishable",
                distinct.len()
            ),
            place.precision(),
        ));
    }
    let v = own.valuation().ok_or_else(|| {
        Error::insufficient(
            format!("{label} vanishes to the working precision"),
            own.precision(),
        )
    })?;
    if v < 0 {
        return Err(Error::precondition(format!(
            "{label} is not in the valuation ring (value {v})"
        )));
    }
    let mut d = 0;
    for s in &distinct[1..] {
        let diff = s.sub(own);
        let dv = diff.valuation().expect("distinct to precision");
        d = d.max(dv + 1);
    }
    let a = own.truncation(d);
    let tail = own.sub(&TruncatedSeries::from_poly(a.numer(), own.precision()));
    let (be, bc) = match (tail.valuation(), tail.leading_coeff()) {
        (Some(e), Some(c)) => (e, c),
        _ => {
            return Err(Error::insufficient(
                format!("{label} agrees with its truncation to the working precision"),
                tail.precision(),
            ))
        }
    };
    let b = super::series::laurent_poly(place.base(), &[(be, bc)]);
    // eta1 = b / (zeta - a) in the power basis.
    let a_e = ext.from_ratfun(&a.remap(2, &[0]))?;
    let b_e = ext.from_ratfun(&b.remap(2, &[0]))?;
    let eta1 = ext.mul(&b_e, &ext.inv(&ext.sub(&e, &a_e))?);
    let h = ext.min_poly(&eta1)?;
    for c in &h {
        if !c.is_zero() && t_adic_value(c)? < 0 {
            return Err(Error::insufficient(
                format!("{label}: minimal polynomial of the normalized element is not integral"),
                place.precision(),
            ));
        }
    }
    Ok(Block::Full(AlgebraicBlock { h, a, b }))
}

/// Triangular system over `K(t)` with every `zeta` among the etas; `z`
/// itself is adjoined when absent so that it is re-expressible.
pub fn uniformize_completion_algebraic(
    place: &SeriesPlace,
    zetas: &[RationalFunction],
) -> Result<TriangularSystem> {
    if place.extension().is_none() {
        return Err(Error::precondition(
            "the generator is transcendental over K(t)",
        ));
    }
    let base = place.base();
    for (j, z) in zetas.iter().enumerate() {
        if z.nvars() != 2 || z.base() != base {
            return Err(Error::Dimension(format!(
                "zeta{} must be a function of (t, z)",
                j + 1
            )));
        }
    }
    let z = RationalFunction::var(base, 2, 1);
    let mut all: Vec<RationalFunction> = zetas.to_vec();
    if !all.contains(&z) {
        all.push(z.clone());
    }
    let conjugates = place.conjugate_roots()?;
    let blocks = all
        .iter()
        .enumerate()
        .map(|(j, zeta)| block_data(place, &conjugates, zeta, &format!("zeta{}", j + 1)))
        .collect::<Result<Vec<_>>>()?;
    let n: usize = blocks
        .iter()
        .map(|b| match b {
            Block::Rational(_) => 1,
            Block::Full(_) => 3,
        })
        .sum();

    let one = RationalFunction::one(base, 1);
    let lift = |h: &RationalFunction| h.remap(2, &[0]);
    let mut rows = RowBuilder::new(base, n);
    let mut etas = Vec::with_capacity(n);
    let mut positions = Vec::with_capacity(all.len());
    for (zeta, block) in all.iter().zip(&blocks) {
        let x = etas.len();
        match block {
            Block::Rational(c) => {
                rows.start_row();
                rows.term(&one, &[(x, 1)]);
                rows.term(&-c, &[]);
                etas.push(zeta.clone());
            }
            Block::Full(AlgebraicBlock { h, a, b }) => {
                let diff = zeta - &lift(a);
                let eta1 = lift(b).checked_div(&diff)?;
                let eta2 = diff.checked_div(&lift(b))?;
                rows.start_row();
                univariate_row(&mut rows, h, x);
                rows.start_row();
                rows.term(&one, &[(x, 1), (x + 1, 1)]);
                rows.term(&-&one, &[]);
                rows.start_row();
                rows.term(&one, &[(x + 2, 1)]);
                rows.term(&-b, &[(x + 1, 1)]);
                rows.term(&-a, &[]);
                etas.extend([eta1, eta2, zeta.clone()]);
            }
        }
        positions.push(etas.len() - 1);
    }
    let (fs, coefficients) = rows.finish();
    let z_pos = positions[all.iter().position(|x| *x == z).expect("z adjoined")];
    let ev = n + 1;
    Ok(TriangularSystem {
        ambient: Ambient::Series(place.clone()),
        base_generators: vec![place.t_name().to_string()],
        coefficients,
        transcendence: Vec::new(),
        etas,
        zeta_indices: positions[..zetas.len()].to_vec(),
        fs,
        generators: vec![GeneratorExpr {
            name: place.z_name().to_string(),
            expr: RationalFunction::var(base, ev, z_pos),
        }],
        change_matrices: Vec::new(),
    })
}
