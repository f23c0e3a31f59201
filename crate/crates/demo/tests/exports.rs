use evaplab_demo::{lattice_decay, page_curve, paradox_sweep};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn page_curve_export() {
    let v = parse(page_curve(10.0, 0.0, 2));
    assert_eq!(v["r"], serde_json::json!([0.0, 5.0, 10.0]));
    assert_eq!(v["mi"], serde_json::json!([0.0, 10.0, 0.0]));
    assert_eq!(v["final_page_time"], 5.0);
}

#[test]
fn sweep_export() {
    let v = parse(paradox_sweep("t1", 100.0, 0.0, 0.05, 0.01, 200));
    assert_eq!(v["onset_r"], 50.0);
    assert_eq!(v["theorem"], "T1");
    assert!(v["assumptions"].as_array().unwrap().iter().any(|a| a == "1.b(ii)"));
    let t2 = parse(paradox_sweep("t2", 100.0, 0.0, 0.01, 0.01, 200));
    assert!(t2["onset_r"].as_f64().unwrap() < 50.0);
}

#[test]
fn lattice_export() {
    let v = parse(lattice_decay(60, 1.0, 1.0, 1, 8));
    assert_eq!(v["d"].as_array().unwrap().len(), 9);
    assert!(v["r_squared"].as_f64().unwrap() > 0.9);
    let flat = parse(lattice_decay(20, 1.0, 0.0, 1, 4));
    assert!(flat["rate"].is_null());
}

#[test]
fn errors_are_reported_as_json() {
    assert!(parse(page_curve(-1.0, 0.0, 10))["error"].is_string());
    assert!(parse(paradox_sweep("t9", 100.0, 0.0, 0.05, 0.01, 10))["error"].is_string());
    assert!(parse(paradox_sweep("t2-matter", 100.0, 0.0, 0.05, 0.01, 10))["error"].is_string());
    assert!(parse(lattice_decay(4, 1.0, 1.0, 2, 3))["error"].is_string());
}
