use chebgraph_web::{layout, orbit, params};
use serde_json::Value;

#[test]
fn layout_covers_every_element() {
    let v: Value = serde_json::from_str(&layout(30, 23).unwrap()).unwrap();
    let nodes = v["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 23);
    assert_eq!(v["edges"].as_array().unwrap().len(), 23);
    assert_eq!(nodes.iter().filter(|n| n["periodic"] == true).count(), 6);
    assert!(v["spec"].as_str().unwrap().starts_with("Cyc(1, T13) (+) Cyc(5, <1x*>)"));
    let (w, h) = (v["width"].as_f64().unwrap(), v["height"].as_f64().unwrap());
    for n in nodes {
        let (x, y) = (n["x"].as_f64().unwrap(), n["y"].as_f64().unwrap());
        assert!((0.0..=w).contains(&x) && (0.0..=h).contains(&y), "{n} outside {w}x{h}");
    }
}

#[test]
fn layout_separates_nodes() {
    for (n, q) in [(2, 16), (3, 27), (30, 739), (1, 7)] {
        let v: Value = serde_json::from_str(&layout(n, q).unwrap()).unwrap();
        let pts: Vec<(f64, f64)> = v["nodes"]
            .as_array()
            .unwrap()
            .iter()
            .map(|n| (n["x"].as_f64().unwrap(), n["y"].as_f64().unwrap()))
            .collect();
        assert_eq!(pts.len() as u64, q);
        assert!(pts.iter().all(|p| p.0.is_finite() && p.1.is_finite()));
    }
}

#[test]
fn bad_input_is_an_error() {
    assert!(layout(0, 7).is_err());
    assert!(layout(2, 24).is_err());
    assert!(layout(2, 8192).is_err());
    assert!(orbit(2, 7, 7).is_err());
    assert!(params(2, 1).is_err());
}

#[test]
fn params_for_f23() {
    let v: Value = serde_json::from_str(&params(30, 23).unwrap()).unwrap();
    assert_eq!(v["N"], "2");
    assert_eq!(v["T0"], "6");
    assert_eq!(v["C"], "63/23");
    assert_eq!(v["T"], "32/23");
    assert_eq!(v["T_partial_products"], "9/23");
    assert_eq!(v["closed_form_agrees"], true);
}

#[test]
fn orbit_reports_tail_and_cycle() {
    let v: Value = serde_json::from_str(&orbit(2, 7, 3).unwrap()).unwrap();
    // 3 -> 0 -> 5 -> 2 -> 2 with T_2 = x^2 - 2
    assert_eq!(v["path"], serde_json::json!([3, 0, 5, 2]));
    assert_eq!(v["pper"], 3);
    assert_eq!(v["per"], 1);
}
