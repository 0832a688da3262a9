mod common;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use uniformizer_core::completion::{
    algebraic_block, hensel_lift_root, kaplansky_normalize, value_via_lvpol, SeriesPlace,
    TruncatedSeries,
};
use uniformizer_core::polyfield::{BaseField, Coeff, RationalFunction, SparsePoly};

const BASES: [BaseField; 2] = [BaseField::Rationals, BaseField::Prime(5)];

/// A series known to `prec`, and the same series extended by random terms
/// to twice the relative precision.
fn series_pair(rng: &mut ChaCha8Rng, base: BaseField) -> (TruncatedSeries, TruncatedSeries) {
    let offset = rng.gen_range(-2..=3);
    let rel = rng.gen_range(1..=8);
    let coeffs = common::series_coeffs(rng, base, 2 * rel, 6);
    let short =
        TruncatedSeries::new(base, offset, coeffs[..rel].to_vec(), offset + rel as i64).unwrap();
    let long = TruncatedSeries::new(base, offset, coeffs, offset + 2 * rel as i64).unwrap();
    (short, long)
}

fn agrees(short: &TruncatedSeries, long: &TruncatedSeries) -> bool {
    long.precision() >= short.precision() && long.with_precision(short.precision()) == *short
}

#[test]
fn precision_claims_are_sound() {
    let mut rng = common::rng(41);
    for k in 0..200 {
        let base = BASES[k % 2];
        let (a, a2) = series_pair(&mut rng, base);
        let (b, b2) = series_pair(&mut rng, base);
        let cases: Vec<(&str, TruncatedSeries, TruncatedSeries)> = vec![
            ("add", a.add(&b), a2.add(&b2)),
            ("sub", a.sub(&b), a2.sub(&b2)),
            ("mul", a.mul(&b), a2.mul(&b2)),
            ("inverse", a.inverse().unwrap(), a2.inverse().unwrap()),
            ("div", a.div(&b).unwrap(), a2.div(&b2).unwrap()),
            ("pow", a.pow(3), a2.pow(3)),
        ];
        for (name, short, long) in cases {
            assert!(
                agrees(&short, &long),
                "{name} case {k}: {short:?} vs {long:?}"
            );
        }
    }
}

#[test]
fn bivariate_evaluation_is_sound() {
    let mut rng = common::rng(42);
    for k in 0..60 {
        let base = BASES[k % 2];
        let (z, z2) = series_pair(&mut rng, base);
        let f = common::poly(&mut rng, base, 2, 4, 3, 5);
        assert!(
            agrees(&z.eval_bivariate(&f), &z2.eval_bivariate(&f)),
            "case {k}"
        );
    }
}

#[test]
fn lvpol_value_matches_direct_evaluation() {
    let mut rng = common::rng(43);
    let n = 10;
    for k in 0..60 {
        let base = BASES[k % 2];
        let coeffs = common::series_coeffs(&mut rng, base, 2 * n, 6);
        let z = TruncatedSeries::new(base, 0, coeffs[..n].to_vec(), n as i64).unwrap();
        let f = common::poly(&mut rng, base, 2, 4, 3, 5);
        let w = kaplansky_normalize(std::slice::from_ref(&f), &z).unwrap();
        let v = value_via_lvpol(&w, &f).unwrap();
        let direct = common::dense_eval(base, &f, &coeffs, 2 * n);
        let dv = common::dense_valuation(base, &direct).expect("nonzero at doubled precision");
        assert_eq!(v, dv as i64, "case {k}");
        // The witness reconstructs z: a + b ztilde.
        let b = TruncatedSeries::monomial(base, w.b.0.clone(), w.b.1, n as i64);
        let a = TruncatedSeries::from_terms(
            base,
            &z.terms()
                .take(w.depth)
                .map(|(e, c)| (e, c.clone()))
                .collect::<Vec<_>>(),
            n as i64,
        );
        assert_eq!(a.add(&b.mul(&w.ztilde)).with_precision(n as i64), z);
        assert_eq!(w.ztilde.valuation(), Some(0));
        assert!(base.is_one(&w.ztilde.leading_coeff().unwrap()));
        for table in &w.tables {
            let mut vals: Vec<i64> = table.iter().map(|e| e.1).collect();
            vals.sort_unstable();
            vals.dedup();
            assert_eq!(vals.len(), table.len(), "case {k}: values not distinct");
        }
    }
}

/// `(X - r) g(X) + t h(t, X)` with `g(r) != 0`.
fn with_simple_root(rng: &mut ChaCha8Rng, base: BaseField) -> (SparsePoly, Coeff) {
    let r = base.from_i64(rng.gen_range(-4..=4));
    let x = SparsePoly::var(base, 2, 1);
    let lin = &x - &SparsePoly::constant(base, 2, r.clone());
    loop {
        let g = common::poly(rng, base, 1, 3, 2, 4).remap(2, &[1]);
        if base.is_zero(&g.eval(&[base.zero(), r.clone()])) {
            continue;
        }
        let h = common::poly(rng, base, 2, 3, 3, 4);
        let f = &(&lin * &g) + &(&SparsePoly::var(base, 2, 0) * &h);
        return (f, r);
    }
}

#[test]
fn hensel_lift_is_a_root() {
    let mut rng = common::rng(44);
    for k in 0..60 {
        let base = BASES[k % 2];
        let (f, r) = with_simple_root(&mut rng, base);
        let n = rng.gen_range(1..=12);
        let z = hensel_lift_root(&f, &r, n).unwrap();
        assert_eq!(z.precision(), n);
        assert_eq!(z.coeff(0).unwrap(), r);
        let dense: Vec<Coeff> = (0..n).map(|e| z.coeff(e).unwrap()).collect();
        let at = common::dense_eval(base, &f, &dense, n as usize);
        assert!(at.iter().all(|c| base.is_zero(c)), "case {k}");
    }
}

#[test]
fn block_reduction_has_simple_root_at_one() {
    let mut rng = common::rng(45);
    for k in 0..30 {
        let base = if k % 2 == 0 {
            BaseField::Prime(5)
        } else {
            BaseField::Rationals
        };
        // z^2 = r^2 + c t with r != 0.
        let r = rng.gen_range(1..=2);
        let c = common::coeff(&mut rng, base, 4);
        let t = SparsePoly::var(base, 2, 0);
        let z = SparsePoly::var(base, 2, 1);
        let m = &(&z.pow(2) - &SparsePoly::from_i64(base, 2, r * r)) - &t.scale(&c);
        let place = SeriesPlace::algebraic(base, "t", "z", &m, &base.from_i64(r), 20).unwrap();
        let zr = RationalFunction::var(base, 2, 1);
        let tr = RationalFunction::var(base, 2, 0);
        let shift =
            RationalFunction::from_poly(common::poly(&mut rng, base, 1, 2, 2, 3).remap(2, &[0]));
        let zeta = &(&zr
            * &RationalFunction::from_poly(SparsePoly::from_i64(base, 2, rng.gen_range(1..=3))))
            + &(&shift * &tr);
        let block = algebraic_block(&place, &zeta).unwrap().expect("degree two");
        let (_, root, simple) = block.reduction().unwrap();
        assert!(root && simple, "case {k}");
        let lift = |h: &RationalFunction| h.remap(2, &[0]);
        let eta1 = lift(&block.b)
            .checked_div(&(&zeta - &lift(&block.a)))
            .unwrap();
        let res = place.residue(eta1.numer(), eta1.denom()).unwrap();
        assert!(base.is_one(&res), "case {k}");
    }
}
