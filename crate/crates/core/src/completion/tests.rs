use super::*;
use crate::error::Error;
use crate::polyfield::{BaseField, Coeff, RationalFunction, SparsePoly};
use crate::uniformize::verify;

fn f5() -> BaseField {
    BaseField::Prime(5)
}

fn tz(base: BaseField) -> (SparsePoly, SparsePoly) {
    (SparsePoly::var(base, 2, 0), SparsePoly::var(base, 2, 1))
}

fn sqrt_presentation(base: BaseField, c: i64, residue: i64) -> DiscretePresentation {
    let (t, z) = tz(base);
    DiscretePresentation {
        base,
        t_name: "t".into(),
        generator: Some(GeneratorSpec::Algebraic {
            z_name: "z".into(),
            min_poly: &(&z * &z) - &(&t + &SparsePoly::from_i64(base, 2, c)),
            residue: base.from_i64(residue),
        }),
    }
}

fn frac(a: &SparsePoly, b: &SparsePoly) -> RationalFunction {
    RationalFunction::new(a.clone(), b.clone()).unwrap()
}

#[test]
fn square_root_block_over_f5() {
    let b = f5();
    let pres = sqrt_presentation(b, 1, 1);
    let place = pres.series_place(8).unwrap().unwrap();
    let z = RationalFunction::var(b, 2, 1);
    let block = algebraic_block(&place, &z).unwrap().unwrap();
    assert!(block.a.is_one());
    assert_eq!(
        block.b,
        RationalFunction::var(b, 1, 0).scale(&b.from_i64(3))
    );
    let (hp, root, simple) = block.reduction().unwrap();
    let x = SparsePoly::var(b, 1, 0);
    assert_eq!(hp, &x.pow(2) - &x);
    assert!(root && simple);
    let sys = uniformize_completion_algebraic(&place, &[z]).unwrap();
    assert_eq!(sys.n(), 3);
    let report = verify(&sys);
    assert!(report.passed(), "{report:?}");
    let eta1 = &sys.etas[0];
    assert!(sys.ambient.residue_of(eta1).unwrap().value.is_one());
}

#[test]
fn rational_element_gives_degenerate_row() {
    let b = f5();
    let place = sqrt_presentation(b, 1, 1).series_place(8).unwrap().unwrap();
    let (t, _) = tz(b);
    let c = RationalFunction::from_poly(&t + &SparsePoly::from_i64(b, 2, 2));
    let sys = uniformize_completion_algebraic(&place, &[c]).unwrap();
    // X1 - C1 and the block for z.
    assert_eq!(sys.n(), 4);
    assert_eq!(sys.fs[0].num_terms(), 2);
    assert!(verify(&sys).passed());
}

#[test]
fn inseparable_in_characteristic_two() {
    let b = BaseField::Prime(2);
    let err = uniformize_discrete_rational(&sqrt_presentation(b, 1, 1), &[], 8).unwrap_err();
    assert!(matches!(err.root(), Error::Precondition(_)));
}

#[test]
fn ramified_generator_rejected() {
    let b = BaseField::Rationals;
    let err = uniformize_discrete_rational(&sqrt_presentation(b, 0, 0), &[], 8).unwrap_err();
    match err.root() {
        Error::Precondition(m) => assert!(m.contains("not a discrete"), "{m}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn end_to_end_over_f5() {
    let b = f5();
    let pres = sqrt_presentation(b, 1, 1);
    let (t, z) = tz(b);
    let one = SparsePoly::one(b, 2);
    let zetas = vec![
        RationalFunction::from_poly(z.clone()),
        RationalFunction::from_poly(&z + &t),
        frac(&(&z - &one), &t),
    ];
    let sys = uniformize_discrete_rational(&pres, &zetas, 16).unwrap();
    let report = verify(&sys);
    assert!(report.passed(), "{report:?}");
    for (k, zeta) in zetas.iter().enumerate() {
        assert_eq!(&sys.etas[sys.zeta_indices[k]], zeta);
    }
    assert!(report
        .diagonal_residues()
        .unwrap()
        .iter()
        .all(|r| !r.is_zero()));
    assert!(sys.base_generators.is_empty());
}

#[test]
fn rational_function_field_single_layer() {
    let b = BaseField::Rationals;
    let pres = DiscretePresentation {
        base: b,
        t_name: "t".into(),
        generator: None,
    };
    let t = RationalFunction::var(b, 1, 0);
    let sys = uniformize_discrete_rational(&pres, &[t], 8).unwrap();
    assert_eq!(sys.n(), 1);
    assert!(verify(&sys).passed());
}

fn sparse_series(base: BaseField, exps: &[i64], p: i64) -> TruncatedSeries {
    let t: Vec<(i64, Coeff)> = exps.iter().map(|&e| (e, base.one())).collect();
    TruncatedSeries::from_terms(base, &t, p)
}

#[test]
fn immediate_square() {
    let b = f5();
    let series = sparse_series(b, &[1, 3, 7], 8);
    let place = SeriesPlace::transcendental(b, "t", "z", series).unwrap();
    let z = SparsePoly::var(b, 2, 1);
    let sys =
        uniformize_immediate_simple(&place, &[RationalFunction::from_poly(z.pow(2))]).unwrap();
    let report = verify(&sys);
    assert!(report.passed(), "{report:?}");
    assert_eq!(sys.transcendence.len(), 1);
}

#[test]
fn immediate_constant_and_pole() {
    let b = BaseField::Rationals;
    let series = sparse_series(b, &[1, 3, 7], 10);
    let place = SeriesPlace::transcendental(b, "t", "z", series).unwrap();
    let c = RationalFunction::constant(b, 2, b.from_i64(4));
    let sys = uniformize_immediate_simple(&place, &[c]).unwrap();
    assert_eq!(sys.fs[0].num_terms(), 2);
    assert!(verify(&sys).passed());
    let z = SparsePoly::var(b, 2, 1);
    let inv = frac(&SparsePoly::one(b, 2), &z);
    assert!(matches!(
        uniformize_immediate_simple(&place, &[inv]),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn immediate_layer_composes() {
    let b = BaseField::Rationals;
    let pres = DiscretePresentation {
        base: b,
        t_name: "t".into(),
        generator: Some(GeneratorSpec::Transcendental {
            z_name: "z".into(),
            series: sparse_series(b, &[0, 2, 5, 9], 12),
        }),
    };
    let (t, z) = tz(b);
    let zetas = vec![
        frac(&(&z * &z), &(&t + &SparsePoly::one(b, 2))),
        RationalFunction::from_poly(&(&z * &t) - &z),
    ];
    let sys = uniformize_discrete_rational(&pres, &zetas, 12).unwrap();
    let report = verify(&sys);
    assert!(report.passed(), "{report:?}");
}
