use calogero_wasm::{jack_json, pt_curves_json, sweep_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn jack_agrees_with_oracle() {
    let v = parse(jack_json(2, "2", "2,0", 8).unwrap());
    assert_eq!(v["oracle_agrees"], true);
    assert_eq!(v["display"], "m_(2,0) + 4/3·m_(1,1)");
    let v = parse(jack_json(3, "1/2", "2,1", 8).unwrap());
    assert_eq!(v["oracle_agrees"], true);
}

#[test]
fn sweep_tracks_known_coefficient() {
    // coefficient of m_(1,1) in P_(2,0) is 2λ/(1 + λ)
    let v = parse(sweep_json(2, "2,0", "1,1", "1/2", "3", 5).unwrap());
    let pts = v.as_array().unwrap();
    assert_eq!(pts.len(), 6);
    assert_eq!(pts[0]["coefficient"], "2/3");
    assert_eq!(pts[5]["coefficient"], "3/2");
}

#[test]
fn curves_decrease() {
    let v = parse(pt_curves_json(3, "2", "3/2", "10", 20).unwrap());
    let c1: Vec<f64> = serde_json::from_value(v["cond1"].clone()).unwrap();
    assert_eq!(c1.len(), 21);
    assert!(c1.windows(2).all(|w| w[1] < w[0]));
    assert_eq!(v["delta"], 4.0);
}

#[test]
fn rejects_bad_input() {
    assert!(jack_json(1, "2", "1", 8).is_err());
    assert!(jack_json(2, "2", "0,1", 8).is_err());
    assert!(pt_curves_json(2, "2", "1", "3", 4).is_err());
    assert!(sweep_json(2, "2,0", "2,1", "1", "2", 3).is_err());
}
