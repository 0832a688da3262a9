mod common;

use common::{data, run, temp_file};
use serde_json::{json, Value};

use uniformizer_cli::emit::system_json;
use uniformizer_core::completion::{uniformize_completion_algebraic, SeriesPlace};
use uniformizer_core::polyfield::{BaseField, RationalFunction, SparsePoly};
use uniformizer_core::uniformize::uniformize_abhyankar;
use uniformizer_core::valuation::MonomialPlace;
use uniformizer_core::valuegroup::GroupOrder;

fn json_of(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn uniformize_emits_certificate_with_passing_report() {
    let (code, out, err) = run(&[
        "uniformize",
        "--input",
        &data("x2_over_x1.json"),
        "--format",
        "json",
    ]);
    assert_eq!(code, 0, "{err}");
    let cert = json_of(&out);
    assert_eq!(cert["command"], "uniformize");
    assert_eq!(cert["tool"]["name"], "uniformizer");
    assert_eq!(cert["problem"]["elements"][0], "x2/x1");
    assert_eq!(cert["result"]["report"]["passed"], true);
    let sys = &cert["result"]["system"];
    let k = sys["zeta_indices"][0].as_u64().unwrap() as usize;
    assert_eq!(sys["etas"][k], "x2/x1");
}

#[test]
fn json_output_is_byte_stable() {
    for (cmd, file) in [
        ("uniformize", "x2_over_x1.json"),
        ("discrete-uniformize", "sqrt_f5.json"),
    ] {
        let a = run(&[cmd, "--input", &data(file), "--format", "json"]);
        let b = run(&[cmd, "--input", &data(file), "--format", "json"]);
        assert_eq!(a.0, 0);
        assert_eq!(a.1, b.1);
    }
}

#[test]
fn value_of_zero_is_a_precondition_error() {
    let (code, out, err) = run(&["value", "--input", &data("zero_value.json")]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("value of zero undefined"), "{err}");
}

#[test]
fn verify_reports_u1_failure_with_exit_zero() {
    let (code, out, _) = run(&["verify", "--input", &data("u1_violation.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("u1: fail (X2 occurs in f1)"), "{out}");
    assert!(out.contains("verification: fail"));
    let (code, out, _) = run(&[
        "verify",
        "--input",
        &data("u1_violation.json"),
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let r = &json_of(&out)["result"]["report"];
    assert_eq!(r["u1"]["passed"], false);
    assert_eq!(r["u1"]["offending"], json!([1, 2]));
    assert_eq!(r["passed"], false);
}

#[test]
fn malformed_weights_point_at_the_offending_value() {
    let (code, _, err) = run(&["value", "--input", &data("bad_weight.json")]);
    assert_eq!(code, 4);
    assert!(err.contains("/place/x_weights/1/0/d"), "{err}");

    let zero = json!({
        "base_field": {"kind": "Q"},
        "place": {"kind": "monomial", "x_weights": [[{"q": "1", "d": 2}, {"q": "-1", "d": 2}]], "tau": 0},
        "elements": ["x1"],
    });
    let f = temp_file("zero_weight.json", &zero.to_string());
    let (code, _, err) = run(&["value", "--input", &f]);
    assert_eq!(code, 4);
    assert!(err.contains("/place/x_weights/0: weight is zero"), "{err}");

    let dependent = json!({
        "base_field": {"kind": "Q"},
        "place": {"kind": "monomial", "x_weights": [[{"q": "1", "d": 2}], [{"q": "3", "d": 2}]], "tau": 0},
        "elements": ["x1"],
    });
    let f = temp_file("dependent.json", &dependent.to_string());
    let (code, _, err) = run(&["value", "--input", &f]);
    assert_eq!(code, 4);
    assert!(err.contains("/place/x_weights"), "{err}");
}

#[test]
fn element_parse_errors_carry_position() {
    let p = json!({
        "base_field": {"kind": "Q"},
        "place": {"kind": "monomial", "x_weights": [[{"q": "1", "d": 1}]], "tau": 1},
        "elements": ["x1", "y1 +\n (x1 * )"],
    });
    let f = temp_file("parse_error.json", &p.to_string());
    let (code, _, err) = run(&["value", "--input", &f]);
    assert_eq!(code, 4);
    assert!(err.contains("/elements/1: line 2, column 8"), "{err}");
}

#[test]
fn invalid_json_and_missing_file() {
    let f = temp_file("broken.json", "{\"base_field\": ");
    let (code, _, err) = run(&["value", "--input", &f]);
    assert_eq!(code, 4);
    assert!(err.contains("invalid JSON"), "{err}");
    let (code, _, _) = run(&["value", "--input", "/nonexistent/problem.json"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["value"]);
    assert_eq!(code, 4);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 4);
}

#[test]
fn values_and_residues() {
    let p = json!({
        "base_field": {"kind": "Q"},
        "place": {"kind": "monomial", "x_weights": [[{"q": "1", "d": 1}], [{"q": "1", "d": 2}]], "tau": 1},
        "elements": ["x2/x1", "(x1 + x1*y1)/x1", "1/x1"],
    });
    let f = temp_file("values.json", &p.to_string());
    let (code, out, _) = run(&["value", "--input", &f, "--format", "json"]);
    assert_eq!(code, 0);
    let v = &json_of(&out)["result"]["values"];
    assert_eq!(v[0]["value"]["coords"], json!(["-1", "1"]));
    assert_eq!(v[0]["value"]["blocks"], json!(["-1 + sqrt(2)"]));
    assert_eq!(v[1]["value"]["coords"], json!(["0", "0"]));
    assert_eq!(v[2]["value"]["coords"], json!(["-1", "0"]));

    // 1/x1 is outside the valuation ring.
    let (code, _, err) = run(&["residue", "--input", &f]);
    assert_eq!(code, 2, "{err}");
    let p = json!({
        "base_field": {"kind": "Q"},
        "place": {"kind": "monomial", "x_weights": [[{"q": "1", "d": 1}], [{"q": "1", "d": 2}]], "tau": 1},
        "elements": ["(x1 + x1*y1)/x1", "x1", "3/(y1 + x2)"],
    });
    let f = temp_file("residues.json", &p.to_string());
    let (code, out, _) = run(&["residue", "--input", &f]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "res(y1 + 1) = y1bar + 1\nres(x1) = 0\nres(3/(x2 + y1)) = 3/y1bar\n"
    );
}

#[test]
fn report_classifies_places() {
    let mut p = json_of(&std::fs::read_to_string(data("sqrt_f5.json")).unwrap());
    p["request"]["op"] = json!("report");
    let f = temp_file("report.json", &p.to_string());
    let (code, out, err) = run(&["report", "--input", &f, "--format", "json"]);
    assert_eq!(code, 0, "{err}");
    let r = &json_of(&out)["result"];
    assert_eq!(r["abhyankar"], true);
    assert_eq!(r["trdeg"], 1);
    assert_eq!(r["elements"][2]["element"], "(z + 4)/t");
    assert_eq!(r["elements"][2]["value"]["coords"], json!(["0"]));
    assert_eq!(r["elements"][2]["residue"], "3");
}

#[test]
fn perron_from_elements_and_alphas() {
    let p = json!({
        "base_field": {"kind": "Q"},
        "place": {"kind": "monomial", "x_weights": [[{"q": "1", "d": 1}], [{"q": "1", "d": 2}]], "tau": 0},
        "elements": ["x2/x1", "x1^3/x2^2"],
    });
    let f = temp_file("perron.json", &p.to_string());
    let (code, out, err) = run(&["perron", "--input", &f, "--format", "json"]);
    assert_eq!(code, 0, "{err}");
    let r = &json_of(&out)["result"];
    assert_eq!(r["valid"], true);
    assert_eq!(r["alphas"], json!([["-1", "1"], ["3", "-2"]]));

    let neg = json!({
        "base_field": {"kind": "Q"},
        "place": {"kind": "monomial", "x_weights": [[{"q": "1", "d": 1}], [{"q": "1", "d": 2}]], "tau": 0},
        "elements": [],
        "request": {"alphas": [["1", "-1"]]},
    });
    let f = temp_file("perron_negative.json", &neg.to_string());
    let (code, _, err) = run(&["perron", "--input", &f]);
    assert_eq!(code, 2);
    assert!(err.contains("negative"), "{err}");
}

#[test]
fn discrete_pipeline_and_precision_override() {
    let (code, out, err) = run(&[
        "discrete-uniformize",
        "--input",
        &data("sqrt_f5.json"),
        "--format",
        "json",
    ]);
    assert_eq!(code, 0, "{err}");
    let cert = json_of(&out);
    assert_eq!(cert["result"]["report"]["precision"], 16);
    let sys = &cert["result"]["system"];
    let etas: Vec<&str> = sys["zeta_indices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|k| sys["etas"][k.as_u64().unwrap() as usize].as_str().unwrap())
        .collect();
    assert_eq!(etas, ["z", "t + z", "(z + 4)/t"]);

    let (code, out, _) = run(&[
        "discrete-uniformize",
        "--input",
        &data("sqrt_f5.json"),
        "--format",
        "json",
        "--precision",
        "24",
    ]);
    assert_eq!(code, 0);
    let cert = json_of(&out);
    assert_eq!(cert["precision_override"], 24);
    assert_eq!(cert["result"]["report"]["precision"], 24);

    // The certificate re-verifies from its own serialization.
    let f = temp_file(
        "sqrt_cert.json",
        &serde_json::to_string(&json_of(
            &run(&[
                "discrete-uniformize",
                "--input",
                &data("sqrt_f5.json"),
                "--format",
                "json",
            ])
            .1,
        ))
        .unwrap(),
    );
    let (code, out, _) = run(&["verify", "--input", &f]);
    assert_eq!(code, 0);
    assert!(out.ends_with("verification: pass\n"), "{out}");
}

#[test]
fn insufficient_precision_exits_three() {
    // z^2 = 1 + t^8: the two conjugates agree below t^8.
    let p = json!({
        "base_field": {"kind": "Fp", "p": 5},
        "place": {
            "kind": "discrete_series",
            "uniformizer": "t",
            "generator": {"kind": "algebraic", "name": "z", "min_poly": "z^2 - 1 - t^8", "residue": "1"},
            "precision": 16,
        },
        "elements": ["(z - 1)/t^4"],
    });
    let f = temp_file("low_precision.json", &p.to_string());
    let (code, _, err) = run(&["discrete-uniformize", "--input", &f, "--precision", "3"]);
    assert_eq!(code, 3, "{err}");
    let (code, _, err) = run(&["discrete-uniformize", "--input", &f]);
    assert_eq!(code, 0, "{err}");
}

#[test]
fn wrong_place_kind_is_a_precondition() {
    let (code, _, err) = run(&["uniformize", "--input", &data("sqrt_f5.json")]);
    // request.op names another command.
    assert_eq!(code, 4, "{err}");
    let p = json!({
        "base_field": {"kind": "Q"},
        "place": {"kind": "discrete_series", "uniformizer": "t"},
        "elements": ["t"],
    });
    let f = temp_file("discrete_for_monomial.json", &p.to_string());
    let (code, _, err) = run(&["uniformize", "--input", &f]);
    assert_eq!(code, 2);
    assert!(err.contains("monomial place"), "{err}");
    let (code, _, err) = run(&["discrete-uniformize", "--input", &f]);
    assert_eq!(code, 0, "{err}");
}

#[test]
fn compose_two_layers() {
    let f5 = BaseField::Prime(5);
    let t = SparsePoly::var(f5, 2, 0);
    let z = SparsePoly::var(f5, 2, 1);
    let m = &(&z.pow(2) - &SparsePoly::one(f5, 2)) - &t;
    let place = SeriesPlace::algebraic(f5, "t", "z", &m, &f5.one(), 16).unwrap();
    let zr = RationalFunction::var(f5, 2, 1);
    let tr = RationalFunction::var(f5, 2, 0);
    let outer = uniformize_completion_algebraic(&place, &[&zr + &tr]).unwrap();
    let tplace =
        MonomialPlace::with_names(f5, GroupOrder::lex(1), vec!["t".into()], Vec::new()).unwrap();
    let inner = uniformize_abhyankar(&tplace, &outer.coefficients).unwrap();
    let req = json!({"request": {"outer": system_json(&outer), "inner": system_json(&inner)}});
    let f = temp_file("compose.json", &req.to_string());
    let (code, out, err) = run(&["compose", "--input", &f, "--format", "json"]);
    assert_eq!(code, 0, "{err}");
    let cert = json_of(&out);
    assert_eq!(cert["result"]["report"]["passed"], true);
    assert_eq!(cert["result"]["system"]["base_generators"], json!([]));

    // Swapped layers do not fit together.
    let req = json!({"request": {"outer": system_json(&inner), "inner": system_json(&outer)}});
    let f = temp_file("compose_swapped.json", &req.to_string());
    let (code, _, _) = run(&["compose", "--input", &f]);
    assert_eq!(code, 2);
}

#[test]
fn batch_mode_keeps_input_order() {
    let mut p = json_of(&std::fs::read_to_string(data("x2_over_x1.json")).unwrap());
    p["request"] = json!({});
    let a = temp_file("batch.json", &p.to_string());
    let z = data("zero_value.json");
    let (code, out, _) = run(&[
        "value", "--input", &a, "--input", &z, "--input", &a, "--jobs", "3", "--format", "json",
    ]);
    assert_eq!(code, 2);
    let v = json_of(&out);
    let codes: Vec<i64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["exit_code"].as_i64().unwrap())
        .collect();
    assert_eq!(codes, [0, 2, 0]);
    assert_eq!(v[0]["certificate"], v[2]["certificate"]);
    let (_, serial, _) = run(&[
        "value", "--input", &a, "--input", &z, "--input", &a, "--format", "json",
    ]);
    assert_eq!(serial, out);
}

#[test]
fn selftest_is_seeded() {
    let (code, out, _) = run(&["selftest", "--seed", "11", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(json_of(&out)["seed"], 11);
    assert_eq!(
        out,
        run(&["selftest", "--seed", "11", "--format", "json"]).1
    );
}
