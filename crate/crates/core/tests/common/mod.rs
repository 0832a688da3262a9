//! Random instance generators shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use uniformizer_core::polyfield::{BaseField, Coeff, Monomial, RationalFunction, SparsePoly};
use uniformizer_core::valuegroup::{GroupOrder, SurdScalar};

pub const SQUARE_FREE: [u64; 10] = [2, 3, 5, 6, 7, 10, 11, 13, 14, 15];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// Positive rational times `sqrt(d)`, with `d = 1` allowed once.
pub fn surd_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<SurdScalar> {
    let mut ds: Vec<u64> = SQUARE_FREE.to_vec();
    ds.shuffle(rng);
    ds.insert(rng.gen_range(0..=ds.len()), 1);
    ds.truncate(n);
    ds.into_iter()
        .map(|d| SurdScalar::surd(rat(rng.gen_range(1..=7), rng.gen_range(1..=5)), d).unwrap())
        .collect()
}

/// Archimedean order of the given rank.
pub fn archimedean(rng: &mut ChaCha8Rng, rank: usize) -> Arc<GroupOrder> {
    GroupOrder::archimedean(surd_weights(rng, rank)).unwrap()
}

/// Lexicographic product of one to `rank` surd blocks.
pub fn random_order(rng: &mut ChaCha8Rng, rank: usize) -> Arc<GroupOrder> {
    if rank == 0 {
        return GroupOrder::lex(0);
    }
    let mut sizes = Vec::new();
    let mut left = rank;
    while left > 0 {
        let s = rng.gen_range(1..=left);
        sizes.push(s);
        left -= s;
    }
    let blocks = sizes.into_iter().map(|s| surd_weights(rng, s)).collect();
    GroupOrder::new(blocks).unwrap()
}

pub fn coeff(rng: &mut ChaCha8Rng, base: BaseField, height: i64) -> Coeff {
    loop {
        let c = base.from_i64(rng.gen_range(-height..=height));
        if !base.is_zero(&c) {
            return c;
        }
    }
}

/// Up to `terms` terms, exponents at most `max_exp`, nonzero.
pub fn poly(
    rng: &mut ChaCha8Rng,
    base: BaseField,
    nvars: usize,
    terms: usize,
    max_exp: u32,
    height: i64,
) -> SparsePoly {
    loop {
        let count = rng.gen_range(1..=terms);
        let p = SparsePoly::from_terms(
            base,
            nvars,
            (0..count).map(|_| {
                let m = Monomial((0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect());
                (m, coeff(rng, base, height))
            }),
        );
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn ratfun(
    rng: &mut ChaCha8Rng,
    base: BaseField,
    nvars: usize,
    terms: usize,
    max_exp: u32,
    height: i64,
) -> RationalFunction {
    let n = poly(rng, base, nvars, terms, max_exp, height);
    let d = poly(rng, base, nvars, terms, max_exp, height);
    RationalFunction::new(n, d).unwrap()
}

/// Coefficient list `c_0..c_{n-1}` with `c_0 != 0`.
pub fn series_coeffs(rng: &mut ChaCha8Rng, base: BaseField, n: usize, height: i64) -> Vec<Coeff> {
    let mut out: Vec<Coeff> = (0..n)
        .map(|_| base.from_i64(rng.gen_range(-height..=height)))
        .collect();
    if let Some(c) = out.first_mut() {
        *c = coeff(rng, base, height);
    }
    out
}

/// An element of the valuation ring: a random fraction, inverted when its
/// value is negative.
pub fn ring_element(
    rng: &mut ChaCha8Rng,
    place: &uniformizer_core::valuation::MonomialPlace,
    terms: usize,
    max_exp: u32,
    height: i64,
) -> RationalFunction {
    let r = ratfun(rng, place.base(), place.nvars(), terms, max_exp, height);
    if place.in_valuation_ring(&r) {
        r
    } else {
        r.inv().unwrap()
    }
}

/// Place with `rho <= 3`, `tau <= 2`, at least one generator.
pub fn monomial_place(
    rng: &mut ChaCha8Rng,
    base: BaseField,
) -> uniformizer_core::valuation::MonomialPlace {
    loop {
        let rho = rng.gen_range(0..=3);
        let tau = rng.gen_range(0..=2);
        if rho + tau > 0 {
            return uniformizer_core::valuation::MonomialPlace::new(
                base,
                random_order(rng, rho),
                tau,
            )
            .unwrap();
        }
    }
}

/// Coefficients of `f(t, z) mod t^m` for `z = sum z_k t^k`, by dense
/// convolution.
pub fn dense_eval(base: BaseField, f: &SparsePoly, z: &[Coeff], m: usize) -> Vec<Coeff> {
    let mul = |a: &[Coeff], b: &[Coeff]| {
        let mut out = vec![base.zero(); m];
        for (i, x) in a.iter().enumerate().take(m) {
            for (j, y) in b.iter().enumerate().take(m - i) {
                out[i + j] = base.add(&out[i + j], &base.mul(x, y));
            }
        }
        out
    };
    let mut zpad = z.to_vec();
    zpad.resize(m, base.zero());
    let mut acc = vec![base.zero(); m];
    for (mono, c) in f.terms() {
        let mut term = vec![base.zero(); m];
        let te = mono.0[0] as usize;
        if te >= m {
            continue;
        }
        term[te] = c.clone();
        for _ in 0..mono.0[1] {
            term = mul(&term, &zpad);
        }
        for k in 0..m {
            acc[k] = base.add(&acc[k], &term[k]);
        }
    }
    acc
}

/// Index of the first nonzero entry.
pub fn dense_valuation(base: BaseField, c: &[Coeff]) -> Option<usize> {
    c.iter().position(|x| !base.is_zero(x))
}
