//! Composition of an outer system for `F | F0` with an inner system for
//! `F0 | K` whose etas contain the outer coefficients.
//!
//! Composed variables are `(T_outer, T_inner, X_inner, X_outer)`: inner rows
//! come first, outer `X_j` becomes `X_{n'+j}` and each `C_k` becomes the
//! inner `X` whose eta equals the coefficient.

use crate::error::{Error, Result};
use crate::polyfield::{substitute, RationalFunction, SparsePoly};

use super::system::{GeneratorExpr, TriangularSystem};

/// Drop repeated etas, keeping the first occurrence and rewriting the
/// dropped rows' `X` into the kept one.
fn dedup_inner(inner: &TriangularSystem) -> Result<TriangularSystem> {
    let n = inner.n();
    let s = inner.s();
    let mut keep: Vec<usize> = Vec::new();
    let mut target = vec![0usize; n];
    for j in 0..n {
        match keep.iter().position(|&k| inner.etas[k] == inner.etas[j]) {
            Some(p) => target[j] = p,
            None => {
                target[j] = keep.len();
                keep.push(j);
            }
        }
    }
    if keep.len() == n {
        return Ok(inner.clone());
    }
    let c = inner.c();
    let nv = s + keep.len() + c;
    let mut map: Vec<usize> = (0..s).collect();
    map.extend(target.iter().map(|&t| s + t));
    map.extend((0..c).map(|k| s + keep.len() + k));
    let mut expr_map: Vec<usize> = (0..s).collect();
    expr_map.extend(target.iter().map(|&t| s + t));
    let b = inner.base_generators.len();
    expr_map.extend((0..b).map(|k| s + keep.len() + k));
    let mut out = inner.clone();
    out.fs = keep.iter().map(|&j| inner.fs[j].remap(nv, &map)).collect();
    out.etas = keep.iter().map(|&j| inner.etas[j].clone()).collect();
    out.zeta_indices = inner.zeta_indices.iter().map(|&j| target[j]).collect();
    for g in &mut out.generators {
        g.expr = g.expr.remap(s + keep.len() + b, &expr_map);
    }
    Ok(out)
}

pub fn compose(outer: &TriangularSystem, inner: &TriangularSystem) -> Result<TriangularSystem> {
    outer.check_well_formed()?;
    inner.check_well_formed()?;
    if !inner.coefficients.is_empty() || !inner.base_generators.is_empty() {
        return Err(Error::precondition(
            "inner system must have its coefficients in the constant field",
        ));
    }
    let inner_names = inner.ambient.var_names();
    if inner_names != outer.base_generators {
        return Err(Error::precondition(format!(
            "inner system lives over ({}) but the outer coefficients over ({})",
            inner_names.join(", "),
            outer.base_generators.join(", ")
        )));
    }
    if inner.ambient.base() != outer.ambient.base() {
        return Err(Error::precondition(
            "systems over different constant fields",
        ));
    }
    let inner = dedup_inner(inner)?;
    let base = outer.ambient.base();
    let (s1, s2) = (outer.s(), inner.s());
    let (n1, n2) = (inner.n(), outer.n());
    let s = s1 + s2;
    let nvars = s + n1 + n2;

    let mut matches = Vec::with_capacity(outer.c());
    for (k, c) in outer.coefficients.iter().enumerate() {
        let j = inner.etas.iter().position(|e| e == c).ok_or_else(|| {
            Error::precondition(format!(
                "coefficient C{} = {} is not among the inner etas",
                k + 1,
                outer.render_coefficient(k)
            ))
        })?;
        matches.push(j);
    }

    // Inner rows: (T_inner, X_inner) -> composed.
    let inner_map: Vec<usize> = (0..s2)
        .map(|i| s1 + i)
        .chain((0..n1).map(|j| s + j))
        .collect();
    // Outer rows: (T_outer, X_outer, C) -> composed.
    let outer_map: Vec<usize> = (0..s1)
        .chain((0..n2).map(|j| s + n1 + j))
        .chain(matches.iter().map(|&j| s + j))
        .collect();
    let mut fs: Vec<SparsePoly> = inner
        .fs
        .iter()
        .map(|f| f.remap(nvars, &inner_map))
        .collect();
    fs.extend(outer.fs.iter().map(|f| f.remap(nvars, &outer_map)));

    // Inner ambient generators are outer ambient generators of the same name.
    let outer_nv = outer.ambient.nvars();
    let amb_map = outer.base_generator_indices()?;
    let lift = |h: &RationalFunction| h.remap(outer_nv, &amb_map);
    let mut transcendence = outer.transcendence.clone();
    transcendence.extend(inner.transcendence.iter().map(lift));
    let mut etas: Vec<RationalFunction> = inner.etas.iter().map(lift).collect();
    etas.extend(outer.etas.iter().cloned());

    let inner_expr: Vec<RationalFunction> = inner
        .generators
        .iter()
        .map(|g| g.expr.remap(nvars, &inner_map))
        .collect();
    let mut generators: Vec<GeneratorExpr> = inner
        .generators
        .iter()
        .zip(&inner_expr)
        .map(|(g, e)| GeneratorExpr {
            name: g.name.clone(),
            expr: e.clone(),
        })
        .collect();
    let mut args: Vec<RationalFunction> = (0..s1)
        .chain((0..n2).map(|j| s + n1 + j))
        .map(|v| RationalFunction::var(base, nvars, v))
        .collect();
    for b in &outer.base_generators {
        let g = inner
            .generators
            .iter()
            .position(|g| &g.name == b)
            .expect("inner generators cover its ambient");
        args.push(inner_expr[g].clone());
    }
    for g in &outer.generators {
        let num = substitute(g.expr.numer(), &args)?;
        let den = substitute(g.expr.denom(), &args)?;
        generators.push(GeneratorExpr {
            name: g.name.clone(),
            expr: num.checked_div(&den)?,
        });
    }

    let mut change_matrices = outer.change_matrices.clone();
    change_matrices.extend(inner.change_matrices.iter().cloned());
    Ok(TriangularSystem {
        ambient: outer.ambient.clone(),
        base_generators: Vec::new(),
        coefficients: Vec::new(),
        transcendence,
        etas,
        zeta_indices: outer.zeta_indices.iter().map(|&j| n1 + j).collect(),
        fs,
        generators,
        change_matrices,
    })
}
