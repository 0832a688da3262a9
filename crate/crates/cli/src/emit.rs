//! JSON and text renderings of places, values, systems and reports.
//!
//! JSON objects use sorted keys, so output bytes depend only on content.

use serde_json::{json, Value};

use uniformizer_core::completion::SeriesGenerator;
use uniformizer_core::polyfield::{render_poly, render_rational, BaseField};
use uniformizer_core::uniformize::{
    Ambient, CheckResult, PlaceValue, TriangularSystem, ValueResidue, VerificationReport,
};
use uniformizer_core::valuation::ResidueElement;
use uniformizer_core::valuegroup::SurdScalar;

pub fn base_json(base: BaseField) -> Value {
    match base {
        BaseField::Rationals => json!({"kind": "Q"}),
        BaseField::Prime(p) => json!({"kind": "Fp", "p": p}),
    }
}

fn weight_json(w: &SurdScalar) -> Value {
    Value::Array(
        w.terms()
            .iter()
            .map(|(q, d)| json!({"q": render_rational(q), "d": d}))
            .collect(),
    )
}

pub fn place_json(ambient: &Ambient) -> Value {
    match ambient {
        Ambient::Monomial(p) => {
            let blocks = p.order().blocks();
            let mut out = json!({
                "kind": "monomial",
                "x_weights": blocks.iter().flatten().map(weight_json).collect::<Vec<_>>(),
                "tau": p.tau(),
                "x_names": p.x_names(),
                "y_names": p.y_names(),
            });
            if blocks.len() > 1 {
                out["lex_blocks"] = json!(blocks.iter().map(Vec::len).collect::<Vec<_>>());
            }
            out
        }
        Ambient::Series(s) => {
            let names = s.var_names();
            let generator = match s.generator() {
                SeriesGenerator::Algebraic {
                    min_poly, residue, ..
                } => json!({
                    "kind": "algebraic",
                    "name": s.z_name(),
                    "min_poly": render_poly(min_poly, &names),
                    "residue": render_rational(residue),
                }),
                SeriesGenerator::Transcendental { series } => json!({
                    "kind": "transcendental",
                    "name": s.z_name(),
                    "series": series.render(s.t_name()),
                }),
            };
            json!({
                "kind": "discrete_series",
                "uniformizer": s.t_name(),
                "generator": generator,
                "precision": s.precision(),
            })
        }
    }
}

pub fn ambient_json(ambient: &Ambient) -> Value {
    json!({"base_field": base_json(ambient.base()), "place": place_json(ambient)})
}

pub fn value_json(v: &PlaceValue) -> Value {
    match v {
        PlaceValue::Group(g) => json!({
            "coords": g.coords().iter().map(render_rational).collect::<Vec<_>>(),
            "blocks": g.block_values().iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
        PlaceValue::Integer(k) => json!({"coords": [k.to_string()], "blocks": [k.to_string()]}),
    }
}

pub fn value_text(v: &PlaceValue) -> String {
    match v {
        PlaceValue::Group(g) => {
            let blocks: Vec<String> = g.block_values().iter().map(ToString::to_string).collect();
            format!("{g} = [{}]", blocks.join("; "))
        }
        PlaceValue::Integer(k) => k.to_string(),
    }
}

pub fn residue_json(r: &ResidueElement) -> Value {
    Value::String(r.render())
}

pub fn system_json(sys: &TriangularSystem) -> Value {
    let amb_names = sys.ambient.var_names();
    let render_all = |list: &[uniformizer_core::polyfield::RationalFunction], names: &[String]| {
        list.iter()
            .map(|h| uniformizer_core::polyfield::render_ratfun(h, names))
            .collect::<Vec<_>>()
    };
    json!({
        "ambient": ambient_json(&sys.ambient),
        "base_generators": sys.base_generators,
        "coefficients": render_all(&sys.coefficients, &sys.base_generators),
        "transcendence": render_all(&sys.transcendence, &amb_names),
        "etas": render_all(&sys.etas, &amb_names),
        "zeta_indices": sys.zeta_indices,
        "fs": (0..sys.fs.len()).map(|i| sys.render_f(i)).collect::<Vec<_>>(),
        "generators": sys.generators.iter().map(|g| json!({
            "name": g.name,
            "expr": sys.render_generator(g),
        })).collect::<Vec<_>>(),
        "change_matrices": sys.change_matrices,
    })
}

pub fn system_text(sys: &TriangularSystem) -> Vec<String> {
    let amb_names = sys.ambient.var_names();
    let r = |h| uniformizer_core::polyfield::render_ratfun(h, &amb_names);
    let mut out = Vec::new();
    for (i, t) in sys.transcendence.iter().enumerate() {
        out.push(format!("T{} = {}", i + 1, r(t)));
    }
    for (k, _) in sys.coefficients.iter().enumerate() {
        out.push(format!("C{} = {}", k + 1, sys.render_coefficient(k)));
    }
    for (j, eta) in sys.etas.iter().enumerate() {
        out.push(format!("eta{} = {}", j + 1, r(eta)));
    }
    for i in 0..sys.fs.len() {
        out.push(format!("f{} = {}", i + 1, sys.render_f(i)));
    }
    for g in &sys.generators {
        out.push(format!("{} = {}", g.name, sys.render_generator(g)));
    }
    let z: Vec<String> = sys
        .zeta_indices
        .iter()
        .map(|j| format!("eta{}", j + 1))
        .collect();
    out.push(format!("zetas at: {}", z.join(", ")));
    out
}

fn check_json(c: &CheckResult) -> Value {
    json!({"passed": c.passed, "detail": c.detail})
}

fn value_residue_json(v: &ValueResidue) -> Value {
    json!({
        "value": v.value.as_ref().map(value_json),
        "residue": v.residue.as_ref().map(residue_json),
    })
}

pub fn report_json(r: &VerificationReport) -> Value {
    json!({
        "passed": r.passed(),
        "precision": r.precision,
        "well_formed": check_json(&r.well_formed),
        "membership": check_json(&r.membership),
        "u1": {"passed": r.u1.passed, "offending": r.u1.offending.map(|(i, j)| [i, j])},
        "u2": {"passed": r.u2.passed, "offending": r.u2.offending, "detail": r.u2.detail},
        "u3": {
            "passed": r.u3.passed,
            "determinant": value_residue_json(&r.u3.determinant),
            "diagonal": r.u3.diagonal.iter().map(value_residue_json).collect::<Vec<_>>(),
            "detail": r.u3.detail,
        },
        "generation": {
            "passed": r.generation.passed,
            "offending": r.generation.offending,
            "detail": r.generation.detail,
        },
    })
}

fn verdict(passed: bool, detail: Option<String>) -> String {
    match (passed, detail) {
        (true, _) => "pass".into(),
        (false, Some(d)) => format!("fail ({d})"),
        (false, None) => "fail".into(),
    }
}

pub fn report_text(r: &VerificationReport) -> Vec<String> {
    let u1_detail = r.u1.offending.map(|(i, j)| format!("X{j} occurs in f{i}"));
    let u2_detail =
        r.u2.detail
            .clone()
            .or(r.u2.offending.map(|i| format!("f{i} does not vanish")));
    let det = &r.u3.determinant;
    let det_text = match (&det.value, &det.residue) {
        (Some(v), Some(res)) => format!("; det value {}, residue {}", value_text(v), res.render()),
        (Some(v), None) => format!("; det value {}", value_text(v)),
        _ => String::new(),
    };
    let gen_detail = r
        .generation
        .detail
        .clone()
        .or(r.generation.offending.clone());
    let mut out = vec![
        format!(
            "well_formed: {}",
            verdict(r.well_formed.passed, r.well_formed.detail.clone())
        ),
        format!(
            "membership: {}",
            verdict(r.membership.passed, r.membership.detail.clone())
        ),
        format!("u1: {}", verdict(r.u1.passed, u1_detail)),
        format!("u2: {}", verdict(r.u2.passed, u2_detail)),
        format!(
            "u3: {}{det_text}",
            verdict(r.u3.passed, r.u3.detail.clone())
        ),
        format!("generation: {}", verdict(r.generation.passed, gen_detail)),
    ];
    if let Some(p) = r.precision {
        out.push(format!("precision: {p}"));
    }
    out.push(format!(
        "verification: {}",
        if r.passed() { "pass" } else { "fail" }
    ));
    out
}
