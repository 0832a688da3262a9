//! Uniformization of `K(t)(z)` for `z` transcendental in the completion.
//!
//! With `a`, `b` from the approximation witness and `T1 = (z - a)/b`, the
//! Taylor expansion gives `f(z) = sum_i f^[i](a) b^i T1^i` exactly. Dividing
//! the expansions of `f` and `g` by their minimal-value terms leaves
//! polynomials in `T1` whose coefficients lie in the valuation ring and
//! whose residue is `1`.

use super::kaplansky::kaplansky_normalize;
use super::place::{SeriesGenerator, SeriesPlace};
use super::rows::RowBuilder;
use super::series::t_adic_value;
use crate::error::{Error, Result};
use crate::polyfield::{substitute, RationalFunction, SparsePoly};
use crate::uniformize::{Ambient, GeneratorExpr, TriangularSystem};

/// `f^[i](a) b^i` for `i = 0..=deg f`, as functions of `t`.
fn expansion(
    f: &SparsePoly,
    a: &RationalFunction,
    b: &RationalFunction,
) -> Result<Vec<RationalFunction>> {
    let t = RationalFunction::var(f.base(), 1, 0);
    let mut bi = RationalFunction::one(f.base(), 1);
    let mut out = Vec::new();
    for i in 0..=f.degree_in(1) {
        let d = substitute(&f.hasse_derivative(1, i), &[t.clone(), a.clone()])?;
        out.push(&d * &bi);
        bi = &bi * b;
    }
    Ok(out)
}

/// Index and value of the minimal-value nonzero entry; the witness makes it
/// unique.
fn minimal(exp: &[RationalFunction]) -> (usize, i64) {
    exp.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, t_adic_value(c).expect("nonzero")))
        .min_by_key(|&(_, v)| v)
        .expect("nonzero polynomial")
}

pub fn uniformize_immediate_simple(
    place: &SeriesPlace,
    zetas: &[RationalFunction],
) -> Result<TriangularSystem> {
    let SeriesGenerator::Transcendental { series } = place.generator() else {
        return Err(Error::precondition("the generator is algebraic over K(t)"));
    };
    let base = place.base();
    for (j, z) in zetas.iter().enumerate() {
        if z.nvars() != 2 || z.base() != base {
            return Err(Error::Dimension(format!(
                "zeta{} must be a function of (t, z)",
                j + 1
            )));
        }
    }
    let z_expr = RationalFunction::var(base, 2, 1);
    let mut polys: Vec<SparsePoly> = zetas
        .iter()
        .filter(|z| !z.is_zero())
        .flat_map(|z| [z.numer().clone(), z.denom().clone()])
        .collect();
    if polys.is_empty() {
        // Only zeros requested: a witness for `z` itself serves.
        polys.push(z_expr.numer().clone());
    }
    let w = kaplansky_normalize(&polys, series)?;
    let (a, b) = (w.a.clone(), w.b_ratfun());

    let m = zetas.len();
    let width = 1 + m;
    let mut rows = RowBuilder::new(base, width);
    for (j, z) in zetas.iter().enumerate() {
        rows.start_row();
        let xj = 1 + j;
        if z.is_zero() {
            rows.term(&RationalFunction::one(base, 1), &[(xj, 1)]);
            continue;
        }
        let fe = expansion(z.numer(), &a, &b)?;
        let ge = expansion(z.denom(), &a, &b)?;
        let (_, vf) = minimal(&fe);
        let (k, vg) = minimal(&ge);
        if vf < vg {
            return Err(Error::precondition(format!(
                "zeta{} is not in the valuation ring (value {})",
                j + 1,
                vf - vg
            )));
        }
        let lead = ge[k].inv()?;
        for (i, c) in ge.iter().enumerate() {
            rows.term(&(c * &lead), &[(0, i as u32), (xj, 1)]);
        }
        for (i, c) in fe.iter().enumerate() {
            rows.term(&-&(c * &lead), &[(0, i as u32)]);
        }
    }
    let (fs, coefficients) = rows.finish();

    let lift = |h: &RationalFunction, nv: usize, at: usize| h.remap(nv, &[at]);
    let t1 = (&z_expr - &lift(&a, 2, 0)).checked_div(&lift(&b, 2, 0))?;
    let ev = 1 + m + 1;
    let z_gen =
        &(&lift(&b, ev, m + 1) * &RationalFunction::var(base, ev, 0)) + &lift(&a, ev, m + 1);
    Ok(TriangularSystem {
        ambient: Ambient::Series(place.clone()),
        base_generators: vec![place.t_name().to_string()],
        coefficients,
        transcendence: vec![t1],
        etas: zetas.to_vec(),
        zeta_indices: (0..m).collect(),
        fs,
        generators: vec![GeneratorExpr {
            name: place.z_name().to_string(),
            expr: z_gen,
        }],
        change_matrices: Vec::new(),
    })
}
