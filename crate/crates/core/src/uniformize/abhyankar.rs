//! Triangular systems for monomial places.
//!
//! Each `zeta = f/g` is divided by `c x^mu`, where `c x^mu y^nu` is the
//! graded-lex smallest minimal-value monomial of `g`. The `x`-parts of the
//! resulting summands have non-negative values; together with `x_i^{+-1}`
//! they generate the full monomial group, so a positive basis of their values
//! yields new variables `x'_j` in which every summand is a monomial with
//! non-negative exponents.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::polyfield::{
    laurent_monomial, unimodular_inverse, Coeff, Monomial, RationalFunction, SparsePoly,
};
use crate::valuation::MonomialPlace;
use crate::valuegroup::perron_positive_basis;

use super::ambient::Ambient;
use super::system::{GeneratorExpr, TriangularSystem};

struct Normalized {
    /// `(x-exponent shift, y-exponents, coefficient)` per summand.
    num: Vec<(Vec<i64>, Vec<u32>, Coeff)>,
    den: Vec<(Vec<i64>, Vec<u32>, Coeff)>,
}

fn normalize(place: &MonomialPlace, zeta: &RationalFunction, k: usize) -> Result<Normalized> {
    let rho = place.rho();
    let base = place.base();
    let (_, minimal) = place.value_of_poly(zeta.denom())?;
    let pivot = minimal.iter().min().expect("nonzero denominator");
    let mu: Vec<i64> = pivot.0[..rho].iter().map(|&e| e as i64).collect();
    let c_inv = base
        .inv(&zeta.denom().coeff(pivot))
        .expect("nonzero coefficient");
    let split = |p: &SparsePoly| -> Vec<(Vec<i64>, Vec<u32>, Coeff)> {
        p.terms()
            .map(|(m, c)| {
                let x = m.0[..rho]
                    .iter()
                    .zip(&mu)
                    .map(|(&e, &u)| e as i64 - u)
                    .collect();
                (x, m.0[rho..].to_vec(), base.mul(c, &c_inv))
            })
            .collect()
    };
    let out = Normalized {
        num: split(zeta.numer()),
        den: split(zeta.denom()),
    };
    for (x, _, _) in &out.num {
        if place.value_of_exponents(x).signum() == Ordering::Less {
            return Err(Error::precondition(format!(
                "zeta{} is not in the valuation ring",
                k + 1
            )));
        }
    }
    Ok(out)
}

/// Triangular system with `eta_j = zeta_j` over the transcendence basis
/// `x'_1..x'_rho, y_1..y_tau`.
pub fn uniformize_abhyankar(
    place: &MonomialPlace,
    zetas: &[RationalFunction],
) -> Result<TriangularSystem> {
    let base = place.base();
    let (rho, tau, nv) = (place.rho(), place.tau(), place.nvars());
    for (k, z) in zetas.iter().enumerate() {
        if z.nvars() != nv || z.base() != base {
            return Err(Error::Dimension(format!(
                "zeta{} is not an element of the function field of the place",
                k + 1
            )));
        }
        if !place.in_valuation_ring(z) {
            return Err(Error::precondition(format!(
                "zeta{} is not in the valuation ring",
                k + 1
            )));
        }
    }
    let normalized = zetas
        .iter()
        .enumerate()
        .map(|(k, z)| {
            if z.is_zero() {
                Ok(None)
            } else {
                normalize(place, z, k).map(Some)
            }
        })
        .collect::<Result<Vec<_>>>()?;

    // Values to express: every summand shift, and x_i^{+-1}.
    let mut alphas: Vec<Vec<i64>> = Vec::new();
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut push = |x: &Vec<i64>, alphas: &mut Vec<Vec<i64>>| {
        if !index.contains_key(x) {
            index.insert(x.clone(), alphas.len());
            alphas.push(x.clone());
        }
    };
    for n in normalized.iter().flatten() {
        for (x, _, _) in n.num.iter().chain(&n.den) {
            push(x, &mut alphas);
        }
    }
    for i in 0..rho {
        let mut e = vec![0i64; rho];
        e[i] = 1;
        if place.value_of_exponents(&e).signum() == Ordering::Less {
            e[i] = -1;
        }
        push(&e, &mut alphas);
    }
    let (change, coeffs) = if rho == 0 {
        (Vec::new(), vec![Vec::new(); alphas.len()])
    } else {
        let values: Vec<_> = alphas.iter().map(|a| place.value_of_exponents(a)).collect();
        let pb = perron_positive_basis(place.order(), &values)?;
        (pb.change, pb.coeffs)
    };

    let s = rho + tau;
    let m = zetas.len();
    let fvars = s + m;
    let to_t = |terms: &[(Vec<i64>, Vec<u32>, Coeff)]| -> Result<SparsePoly> {
        let mut out = SparsePoly::zero(base, fvars);
        for (x, y, c) in terms {
            let mut e = vec![0u32; fvars];
            for (j, &k) in coeffs[index[x]].iter().enumerate() {
                e[j] = u32::try_from(k).map_err(|_| Error::Resource("exponent overflow".into()))?;
            }
            e[rho..s].copy_from_slice(y);
            out = &out + &SparsePoly::monomial(base, fvars, Monomial(e), c.clone());
        }
        Ok(out)
    };
    let mut fs = Vec::with_capacity(m);
    for (j, n) in normalized.iter().enumerate() {
        let xj = SparsePoly::var(base, fvars, s + j);
        fs.push(match n {
            None => xj,
            Some(n) => &(&to_t(&n.den)? * &xj) - &to_t(&n.num)?,
        });
    }

    let mut transcendence: Vec<RationalFunction> = change
        .iter()
        .map(|row| {
            let mut e = row.clone();
            e.resize(nv, 0);
            laurent_monomial(base, nv, &e)
        })
        .collect();
    transcendence.extend((0..tau).map(|k| RationalFunction::var(base, nv, rho + k)));

    let inverse = if rho == 0 {
        Vec::new()
    } else {
        unimodular_inverse(&change)?
    };
    let names = place.var_names();
    let mut generators: Vec<GeneratorExpr> = inverse
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut e = row.clone();
            e.resize(fvars, 0);
            GeneratorExpr {
                name: names[i].clone(),
                expr: laurent_monomial(base, fvars, &e),
            }
        })
        .collect();
    generators.extend((0..tau).map(|k| GeneratorExpr {
        name: names[rho + k].clone(),
        expr: RationalFunction::var(base, fvars, rho + k),
    }));

    Ok(TriangularSystem {
        ambient: Ambient::Monomial(place.clone()),
        base_generators: Vec::new(),
        coefficients: Vec::new(),
        transcendence,
        etas: zetas.to_vec(),
        zeta_indices: (0..m).collect(),
        fs,
        generators,
        change_matrices: if rho == 0 { Vec::new() } else { vec![change] },
    })
}
