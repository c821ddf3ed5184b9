use opcat_web::{adjunction_json, nerve_sizes_json, para_summary_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn nerve_of_the_point() {
    let v = parse(nerve_sizes_json("point").unwrap());
    assert_eq!(v["levels"], serde_json::json!([1, 1, 1, 1]));
    let v = parse(nerve_sizes_json("odot").unwrap());
    assert_eq!(v["levels"], serde_json::json!([1, 1, 1, 1, 1]));
    assert!(nerve_sizes_json("nope").is_err());
}

#[test]
fn para_matches_the_total() {
    for m in ["z2", "endo-z2", "poset-max"] {
        let v = parse(para_summary_json(m).unwrap());
        assert_eq!(v["same_sizes"], Value::Bool(true), "{m}");
    }
}

#[test]
fn adjunction_counts_for_z2() {
    for k in 0..=3 {
        let v = parse(adjunction_json(k, "z2").unwrap());
        assert_eq!(v["maps"], Value::from(1usize << k));
        assert_eq!(v["maps"], v["functors"]);
    }
    assert!(adjunction_json(4, "z2").is_err());
}
