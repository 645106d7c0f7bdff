use curvedkit_wasm::api;
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn render_reports_symmetries() {
    let spec = r#"{
        "entity": "intersection",
        "k": {"kind": "ball", "geometry": "hyperbolic", "center": {"angle": 0.0, "distance": 0.0}, "radius": 0.9},
        "l": {"kind": "ball", "geometry": "hyperbolic", "center": {"angle": 0.6, "distance": 0.8}, "radius": 0.9},
        "symmetries": true
    }"#;
    let out = parse(api::render(spec, "", 200).unwrap());
    assert_eq!(out["central"], true);
    assert_eq!(out["axial"], true);
    assert_eq!(out["vertices"], 2);
    let svg = out["svg"].as_str().unwrap();
    assert!(svg.contains("<svg") && !svg.contains("NaN"));
    let klein = parse(api::render(spec, "klein", 200).unwrap());
    assert_ne!(klein["svg"], out["svg"]);
}

#[test]
fn render_errors_are_messages() {
    assert!(api::render("{}", "", 100).unwrap_err().contains("entity"));
    let caps = r#"{"entity": "region", "region": {"kind": "ball", "geometry": "spherical", "center": [0, 0, 1], "radius": 0.5}}"#;
    assert!(api::render(caps, "klein", 100).is_err());
    assert!(api::render(caps, "mercator", 100).is_err());
    assert!(parse(api::render(caps, "", 100).unwrap())["svg"].is_string());
}

#[test]
fn disjoint_regions_are_empty() {
    let spec = r#"{
        "entity": "intersection",
        "k": {"kind": "ball", "geometry": "euclidean", "center": {"angle": 0.0, "distance": 0.0}, "radius": 0.5},
        "l": {"kind": "ball", "geometry": "euclidean", "center": {"angle": 0.0, "distance": 3.0}, "radius": 0.5}
    }"#;
    assert_eq!(parse(api::render(spec, "", 100).unwrap())["empty"], true);
}

#[test]
fn chord_angle_matches_the_relation() {
    let v = parse(api::chord_angle(1.0, 0.5, 0.2).unwrap());
    let bc = v["sinh2_bc"].as_f64().unwrap();
    assert!((bc - 0.2f64.sinh().powi(2)).abs() < 1e-10);
    let w = parse(api::chord_angle(1.0, -0.5, -0.2).unwrap());
    let sum = v["omega"].as_f64().unwrap() + w["omega"].as_f64().unwrap();
    assert!((sum - std::f64::consts::PI).abs() < 1e-12);
    assert_eq!(parse(api::chord_angle(1.0, 3.0, 0.5).unwrap())["exists"], false);
    assert!(api::chord_angle(0.0, 0.0, 0.0).is_err());
}

#[test]
fn scenario_list_and_draws() {
    let list = parse(api::scenarios());
    let names: Vec<&str> = list
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"thm3") && names.contains(&"quadrangle"));

    let mut regions = 0;
    for i in 0..10 {
        let d = parse(api::scenario_draw("thm3", 0, i, "", 200).unwrap());
        assert_eq!(d["index"], i);
        if d["status"] == "region" {
            regions += 1;
            assert_eq!(d["central"], true);
        }
    }
    assert!(regions > 0);
    let again = api::scenario_draw("thm6d", 7, 3, "", 200).unwrap();
    assert_eq!(again, api::scenario_draw("thm6d", 7, 3, "", 200).unwrap());
    assert!(api::scenario_draw("thm99", 0, 0, "", 200).is_err());
}
