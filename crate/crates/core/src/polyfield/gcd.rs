//! Multivariate GCD over a field.
//!
//! The main path is a recursive primitive PRS. Most inputs met in practice
//! are coprime up to a monomial, so a specialisation test runs first: if for
//! every shared variable some univariate image has a trivial GCD (with one
//! leading coefficient surviving the specialisation), the GCD is a constant.

use super::field::Coeff;
use super::poly::{Monomial, SparsePoly};

const SPECIALISATION_TRIES: u64 = 16;

/// Monic greatest common divisor (graded-lex leading coefficient 1).
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    if a.is_zero() {
        return b.monic().0;
    }
    if b.is_zero() {
        return a.monic().0;
    }
    let base = a.base();
    let n = a.nvars();
    if a.is_constant() || b.is_constant() {
        return SparsePoly::one(base, n);
    }
    let ma = a.min_exponents();
    let mb = b.min_exponents();
    let m = Monomial(ma.0.iter().zip(&mb.0).map(|(x, y)| *x.min(y)).collect());
    let a1 = strip_monomial(a, &ma);
    let b1 = strip_monomial(b, &mb);
    let g = gcd_no_monomial(&a1, &b1);
    g.mul_monomial(&m, &base.one()).monic().0
}

fn strip_monomial(p: &SparsePoly, m: &Monomial) -> SparsePoly {
    if m.is_one() {
        return p.clone();
    }
    let d = SparsePoly::monomial(p.base(), p.nvars(), m.clone(), p.base().one());
    p.div_exact(&d).expect("monomial content divides")
}

fn gcd_no_monomial(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    let base = a.base();
    let n = a.nvars();
    if a.is_constant() || b.is_constant() {
        return SparsePoly::one(base, n);
    }
    let va = a.vars_present();
    let vb = b.vars_present();
    let shared: Vec<usize> = va.iter().copied().filter(|v| vb.contains(v)).collect();
    if shared.is_empty() {
        return SparsePoly::one(base, n);
    }
    let all: Vec<usize> = {
        let mut v = va.clone();
        for x in &vb {
            if !v.contains(x) {
                v.push(*x);
            }
        }
        v.sort_unstable();
        v
    };
    if all.len() == 1 {
        return univariate_gcd(a, b, all[0]);
    }
    if provably_coprime(a, b, &shared) {
        return SparsePoly::one(base, n);
    }
    let v = all[0];
    if !a.involves(v) {
        return gcd(&content_in(b, v), a);
    }
    if !b.involves(v) {
        return gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let (mut p, mut q) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    let g = loop {
        let r = p.pseudo_rem(&q, v);
        if r.is_zero() {
            break primitive_part(&q, v);
        }
        if !r.involves(v) {
            break SparsePoly::one(base, n);
        }
        p = q;
        q = primitive_part(&r, v);
    };
    (&c * &g).monic().0
}

/// Euclid's algorithm for polynomials in the single variable `v`.
fn univariate_gcd(a: &SparsePoly, b: &SparsePoly, v: usize) -> SparsePoly {
    let mut p = a.monic().0;
    let mut q = b.monic().0;
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        let r = univariate_rem(&p, &q, v);
        p = q;
        q = r.monic().0;
    }
    p.monic().0
}

fn univariate_rem(p: &SparsePoly, q: &SparsePoly, v: usize) -> SparsePoly {
    let base = p.base();
    let n = p.nvars();
    let dq = q.degree_in(v);
    let lq = q.leading_coeff_in(v).constant_term();
    let lq_inv = base.inv(&lq).expect("nonzero leading coefficient");
    let mut r = p.clone();
    while !r.is_zero() && r.degree_in(v) >= dq {
        let dr = r.degree_in(v);
        let lr = r.leading_coeff_in(v).constant_term();
        let mut m = Monomial::one(n);
        m.0[v] = dr - dq;
        r = &r - &q.mul_monomial(&m, &base.mul(&lr, &lq_inv));
    }
    r
}

/// GCD of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &SparsePoly, v: usize) -> SparsePoly {
    let mut acc = SparsePoly::zero(p.base(), p.nvars());
    for c in p.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

pub fn primitive_part(p: &SparsePoly, v: usize) -> SparsePoly {
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides")
}

/// Decorrelated sample indices; consecutive attempts must not revisit the
/// same residues over small prime fields.
fn point_index(attempt: u64, k: u64, w: u64) -> u64 {
    let mut x = attempt
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(k.wrapping_mul(0xBF58_476D_1CE4_E5B9))
        .wrapping_add(w.wrapping_mul(0x94D0_49BB_1331_11EB));
    x ^= x >> 31;
    x = x.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    (x ^ (x >> 29)) % 1024
}

fn provably_coprime(a: &SparsePoly, b: &SparsePoly, shared: &[usize]) -> bool {
    let base = a.base();
    shared.iter().all(|&v| {
        let others: Vec<usize> = a
            .vars_present()
            .into_iter()
            .chain(b.vars_present())
            .filter(|&w| w != v)
            .collect();
        let (da, db) = (a.degree_in(v), b.degree_in(v));
        (0..SPECIALISATION_TRIES).any(|attempt| {
            let mut sa = a.clone();
            let mut sb = b.clone();
            for (k, &w) in others.iter().enumerate() {
                let val: Coeff = base.sample(point_index(attempt, k as u64, w as u64));
                sa = sa.specialize(w, &val);
                sb = sb.specialize(w, &val);
            }
            // The GCD's leading coefficient divides that of either input, so
            // one preserved degree keeps its image non-constant.
            if sa.is_zero() || sb.is_zero() || (sa.degree_in(v) != da && sb.degree_in(v) != db) {
                return false;
            }
            univariate_gcd(&sa, &sb, v).degree_in(v) == 0
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyfield::field::BaseField;

    fn vars(base: BaseField, n: usize) -> Vec<SparsePoly> {
        (0..n).map(|i| SparsePoly::var(base, n, i)).collect()
    }

    #[test]
    fn recovers_planted_factor() {
        for base in [
            BaseField::Rationals,
            BaseField::Prime(5),
            BaseField::Prime(2),
        ] {
            let v = vars(base, 3);
            let one = SparsePoly::one(base, 3);
            let g = &(&(&v[0] * &v[1]) + &v[2]) + &one;
            let a = &g * &(&v[0] + &v[2]);
            let b = &g * &(&(&v[1] * &v[1]) - &v[0]);
            assert_eq!(gcd(&a, &b), g.monic().0, "over {base}");
        }
    }

    #[test]
    fn monomial_and_coprime_cases() {
        let base = BaseField::Rationals;
        let v = vars(base, 2);
        let a = &(&v[0] * &v[0]) * &v[1];
        let b = &(&v[0] * &v[1]) * &(&v[0] + &v[1]);
        assert_eq!(gcd(&a, &b), &v[0] * &v[1]);
        let c = &v[0] + &SparsePoly::one(base, 2);
        let d = &v[1] + &SparsePoly::one(base, 2);
        assert!(gcd(&c, &d).is_one());
    }

    #[test]
    fn zero_handling() {
        let base = BaseField::Rationals;
        let v = vars(base, 1);
        let z = SparsePoly::zero(base, 1);
        let p = v[0].scale(&base.from_i64(3));
        assert_eq!(gcd(&z, &p), v[0]);
        assert!(gcd(&z, &z).is_zero());
    }

    #[test]
    fn coprime_when_one_leading_coefficient_vanishes_on_all_points() {
        // Over F_5 the z-leading coefficient 3 + 2x^4 of `b` vanishes at
        // every x != 0 and that of `a` at x = 0.
        let base = BaseField::Prime(5);
        let p = |t: &[([u32; 3], i64)]| {
            SparsePoly::from_terms(
                base,
                3,
                t.iter()
                    .map(|(m, c)| (Monomial(m.to_vec()), base.from_i64(*c))),
            )
        };
        let a = p(&[
            ([0, 4, 1], 4),
            ([1, 5, 0], 4),
            ([4, 5, 0], 1),
            ([3, 5, 5], 2),
        ]);
        let b = p(&[
            ([1, 4, 0], 3),
            ([0, 1, 6], 3),
            ([0, 4, 5], 2),
            ([4, 5, 1], 3),
            ([4, 1, 6], 2),
            ([5, 6, 2], 3),
            ([5, 6, 3], 2),
        ]);
        assert_eq!(gcd(&a, &b), SparsePoly::var(base, 3, 1));
    }
}
