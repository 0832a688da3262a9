//! Positive bases for finitely generated ordered groups.
//!
//! Given non-negative `alpha_1..alpha_m` in `Z^rho`, find a basis
//! `gamma_1..gamma_rho` of positive elements such that every `alpha_i` is a
//! non-negative integer combination of the `gamma_j`.
//!
//! Rank-1 blocks use a subtractive reduction: while some `alpha` has a
//! negative coordinate in the current basis, take the first such `alpha`,
//! its first negative index `i` and first positive index `j`, and replace the
//! larger of `gamma_i`, `gamma_j` by its difference with the smaller. The cone
//! spanned by the basis only grows, so solved `alpha`s stay solved. Higher
//! rank is handled by induction over the lexicographic blocks.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::order::{GroupElement, GroupOrder};
use super::surd::SurdScalar;
use crate::error::{Error, Result};
use crate::polyfield::integer_determinant;

pub const DEFAULT_MAX_STEPS: usize = 10_000;

/// Environment variable overriding [`DEFAULT_MAX_STEPS`].
pub const MAX_STEPS_ENV: &str = "UNIFORMIZER_MAX_PERRON_STEPS";

/// Subtractive step cap: the environment override if set and valid.
pub fn max_steps() -> usize {
    std::env::var(MAX_STEPS_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_STEPS)
}

/// `alphas[i] = sum_j coeffs[i][j] * basis[j]`, and `change[j]` holds the
/// coordinates of `basis[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PerronBasis {
    pub basis: Vec<GroupElement>,
    pub coeffs: Vec<Vec<i64>>,
    pub change: Vec<Vec<i64>>,
}

pub fn perron_positive_basis(
    order: &Arc<GroupOrder>,
    alphas: &[GroupElement],
) -> Result<PerronBasis> {
    perron_positive_basis_with_cap(order, alphas, max_steps())
}

pub fn perron_positive_basis_with_cap(
    order: &Arc<GroupOrder>,
    alphas: &[GroupElement],
    cap: usize,
) -> Result<PerronBasis> {
    let mut ints = Vec::with_capacity(alphas.len());
    for (i, a) in alphas.iter().enumerate() {
        if a.order().as_ref() != order.as_ref() {
            return Err(Error::Dimension(format!(
                "alpha {i} lives in another group"
            )));
        }
        let c = a
            .integer_coords()
            .ok_or_else(|| Error::precondition(format!("alpha {i} = {a} is not integral")))?;
        if a.signum() == Ordering::Less {
            return Err(Error::precondition(format!("alpha {i} = {a} is negative")));
        }
        ints.push(c);
    }
    let (change, coeffs) = solve_lex(order.blocks(), &ints, cap)?;
    let basis = change
        .iter()
        .map(|row| GroupElement::from_integers(order.clone(), row))
        .collect::<Result<Vec<_>>>()?;
    Ok(PerronBasis {
        basis,
        coeffs,
        change,
    })
}

/// The validity predicate: unimodular change matrix, positive basis,
/// non-negative coefficients and exact reconstruction.
pub fn is_valid_perron(order: &GroupOrder, alphas: &[GroupElement], out: &PerronBasis) -> bool {
    let n = order.rank();
    if out.change.len() != n || out.basis.len() != n || out.coeffs.len() != alphas.len() {
        return false;
    }
    if out.change.iter().any(|r| r.len() != n) {
        return false;
    }
    let det = integer_determinant(&out.change);
    if det != BigInt::one() && det != -BigInt::one() {
        return false;
    }
    for (row, g) in out.change.iter().zip(&out.basis) {
        if g.integer_coords().as_deref() != Some(row.as_slice()) {
            return false;
        }
        if order.sign_of(&to_rat(row)) != Ordering::Greater {
            return false;
        }
    }
    alphas.iter().zip(&out.coeffs).all(|(a, c)| {
        if c.len() != n || c.iter().any(|&x| x < 0) {
            return false;
        }
        let recon: Vec<BigInt> = (0..n)
            .map(|k| {
                c.iter()
                    .zip(&out.change)
                    .map(|(&cj, row)| BigInt::from(cj) * row[k])
                    .sum()
            })
            .collect();
        a.coords()
            .iter()
            .zip(&recon)
            .all(|(x, y)| x.is_integer() && &x.to_integer() == y)
    })
}

fn to_rat(v: &[i64]) -> Vec<BigRational> {
    v.iter()
        .map(|&x| BigRational::from_integer(x.into()))
        .collect()
}

fn block_value(weights: &[SurdScalar], v: &[i64]) -> SurdScalar {
    SurdScalar::linear_combination(&to_rat(v), weights)
}

fn lex_sign(blocks: &[Vec<SurdScalar>], v: &[i64]) -> Ordering {
    let mut start = 0;
    for w in blocks {
        let s = block_value(w, &v[start..start + w.len()]).signum();
        if s != Ordering::Equal {
            return s;
        }
        start += w.len();
    }
    Ordering::Equal
}

type Solution = (Vec<Vec<i64>>, Vec<Vec<i64>>);

fn solve_lex(blocks: &[Vec<SurdScalar>], alphas: &[Vec<i64>], cap: usize) -> Result<Solution> {
    if blocks.len() == 1 {
        return solve_rank1(&blocks[0], alphas, cap);
    }
    let r1 = blocks[0].len();
    let rest: usize = blocks[1..].iter().map(Vec::len).sum();
    let lead: Vec<usize> = (0..alphas.len())
        .filter(|&i| alphas[i][..r1].iter().any(|&x| x != 0))
        .collect();
    let heads: Vec<Vec<i64>> = lead.iter().map(|&i| alphas[i][..r1].to_vec()).collect();
    let (delta, c) = solve_rank1(&blocks[0], &heads, cap)?;

    // Lift delta_j to (delta_j, -M*u) with u the first standard generator of
    // the tail, M minimal such that every remainder is non-negative.
    let sums: Vec<i64> = c.iter().map(|row| row.iter().sum()).collect();
    let remainder = |i: usize, k: usize, m: i64| -> Result<Vec<i64>> {
        let mut h = alphas[i][r1..].to_vec();
        let shift = m
            .checked_mul(sums[k])
            .ok_or_else(|| Error::Resource("lift multiplier overflows i64".into()))?;
        h[0] = h[0]
            .checked_add(shift)
            .ok_or_else(|| Error::Resource("lift multiplier overflows i64".into()))?;
        Ok(h)
    };
    let ok = |m: i64| -> Result<bool> {
        for (k, &i) in lead.iter().enumerate() {
            if lex_sign(&blocks[1..], &remainder(i, k, m)?) == Ordering::Less {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let m = if ok(0)? {
        0
    } else {
        let mut hi: i64 = 1;
        while !ok(hi)? {
            hi = hi
                .checked_mul(2)
                .ok_or_else(|| Error::Resource("lift multiplier overflows i64".into()))?;
        }
        let mut lo = hi / 2;
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if ok(mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };

    let mut tails = Vec::with_capacity(alphas.len());
    let mut k = 0;
    for i in 0..alphas.len() {
        if lead.get(k) == Some(&i) {
            tails.push(remainder(i, k, m)?);
            k += 1;
        } else {
            tails.push(alphas[i][r1..].to_vec());
        }
    }
    let (eta, d) = solve_lex(&blocks[1..], &tails, cap)?;

    let mut change = Vec::with_capacity(r1 + rest);
    for row in &delta {
        let mut full = row.clone();
        let mut tail = vec![0i64; rest];
        tail[0] = -m;
        full.extend(tail);
        change.push(full);
    }
    for row in &eta {
        let mut full = vec![0i64; r1];
        full.extend(row.iter().copied());
        change.push(full);
    }
    let mut coeffs = Vec::with_capacity(alphas.len());
    let mut k = 0;
    for (i, di) in d.into_iter().enumerate() {
        let mut row = if lead.get(k) == Some(&i) {
            k += 1;
            c[k - 1].clone()
        } else {
            vec![0i64; r1]
        };
        row.extend(di);
        coeffs.push(row);
    }
    Ok((change, coeffs))
}

fn solve_rank1(weights: &[SurdScalar], alphas: &[Vec<i64>], cap: usize) -> Result<Solution> {
    match subtractive(weights, alphas, cap) {
        Some(sol) => Ok(sol),
        None => bounded_search(weights, alphas).ok_or_else(|| {
            Error::Resource(format!(
                "Perron reduction exceeded {cap} steps and the bounded search found no basis"
            ))
        }),
    }
}

/// `None` on cap exhaustion or i64 overflow.
fn subtractive(weights: &[SurdScalar], alphas: &[Vec<i64>], cap: usize) -> Option<Solution> {
    let k = weights.len();
    let mut basis: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut vals: Vec<SurdScalar> = weights.to_vec();
    let mut coords: Vec<Vec<i64>> = alphas.to_vec();
    let mut steps = 0usize;
    loop {
        let Some(a) = coords.iter().position(|c| c.iter().any(|&x| x < 0)) else {
            return Some((basis, coords));
        };
        if steps >= cap {
            return None;
        }
        steps += 1;
        let i = coords[a].iter().position(|&x| x < 0)?;
        // A non-negative alpha with a negative coordinate has a positive one.
        let j = coords[a].iter().position(|&x| x > 0)?;
        let (big, small) = if vals[j].cmp_value(&vals[i]) == Ordering::Greater {
            (j, i)
        } else {
            (i, j)
        };
        // gamma_big -= gamma_small; coordinates on gamma_small absorb those on gamma_big.
        for t in 0..k {
            basis[big][t] = basis[big][t].checked_sub(basis[small][t])?;
        }
        vals[big] = vals[big].sub(&vals[small]);
        for c in coords.iter_mut() {
            c[small] = c[small].checked_add(c[big])?;
        }
    }
}

fn search_bound(k: usize) -> Option<i64> {
    match k {
        1 | 2 => Some(10),
        3 => Some(2),
        _ => None,
    }
}

/// Exhaustive search over unimodular matrices with small entries.
fn bounded_search(weights: &[SurdScalar], alphas: &[Vec<i64>]) -> Option<Solution> {
    let k = weights.len();
    let bound = search_bound(k)?;
    let positive: Vec<Vec<i64>> = all_vectors(k, bound)
        .into_iter()
        .filter(|v| block_value(weights, v).signum() == Ordering::Greater)
        .collect();
    let mut pick = Vec::with_capacity(k);
    search_rows(&positive, 0, &mut pick, alphas)
}

fn search_rows(
    cands: &[Vec<i64>],
    from: usize,
    pick: &mut Vec<usize>,
    alphas: &[Vec<i64>],
) -> Option<Solution> {
    let k = cands.first().map_or(0, Vec::len);
    if pick.len() == k {
        let m: Vec<Vec<i64>> = pick.iter().map(|&i| cands[i].clone()).collect();
        return try_basis(&m, alphas).map(|c| (m, c));
    }
    for i in from..cands.len() {
        pick.push(i);
        if let Some(s) = search_rows(cands, i + 1, pick, alphas) {
            return Some(s);
        }
        pick.pop();
    }
    None
}

fn try_basis(m: &[Vec<i64>], alphas: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let inv = crate::polyfield::unimodular_inverse(m).ok()?;
    let k = m.len();
    alphas
        .iter()
        .map(|a| {
            let c: Vec<i64> = (0..k)
                .map(|j| (0..k).map(|t| a[t] * inv[t][j]).sum())
                .collect();
            c.iter().all(|&x| x >= 0).then_some(c)
        })
        .collect()
}

pub(crate) fn all_vectors(k: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-bound..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}
