//! The Perron step cap is read from the environment; kept in its own test
//! binary so no other test observes the override.

mod common;

use common::{run, temp_file};
use serde_json::json;

#[test]
fn step_cap_from_environment() {
    let p = json!({
        "base_field": {"kind": "Q"},
        "place": {
            "kind": "monomial",
            "x_weights": [[{"q": "1", "d": 1}], [{"q": "1", "d": 2}], [{"q": "1", "d": 3}], [{"q": "1", "d": 5}]],
            "tau": 0,
        },
        "elements": [],
        "request": {"alphas": [["5", "5", "-3", "-3"]]},
    });
    let f = temp_file("perron_cap.json", &p.to_string());
    let (code, _, err) = run(&["perron", "--input", &f]);
    assert_eq!(code, 0, "{err}");

    std::env::set_var("UNIFORMIZER_MAX_PERRON_STEPS", "0");
    let (code, _, err) = run(&["perron", "--input", &f]);
    assert_eq!(code, 1, "{err}");
    assert!(err.contains("resource limit"), "{err}");

    std::env::set_var("UNIFORMIZER_MAX_PERRON_STEPS", "many");
    let (code, _, err) = run(&["perron", "--input", &f]);
    assert_eq!(code, 4);
    assert!(err.contains("UNIFORMIZER_MAX_PERRON_STEPS"), "{err}");
    std::env::remove_var("UNIFORMIZER_MAX_PERRON_STEPS");
}
