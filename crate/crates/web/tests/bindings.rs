use metabelian_web::{group, ideal, quotient};
use serde_json::Value;

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.unwrap()).unwrap()
}

#[test]
fn quotient_reports_type_and_basis() {
    let v = parse(quotient("X^2,Y^2,X*Y+3", 0));
    assert_eq!(v["type"]["factors"], serde_json::json!([9, 3, 3]));
    assert_eq!(v["basis"], serde_json::json!(["1", "X", "Y"]));
    assert!(quotient("X", 0).unwrap_err().contains("infinite"));
    assert!(quotient("X**2", 0).is_err());
}

#[test]
fn ideal_expands_families() {
    let v = parse(ideal("Xfam mu=3"));
    assert_eq!(v["generators"], serde_json::json!(["X^3", "Y^2", "X*Y", "X^2+3*X+3"]));
    assert!(ideal("S mu=2 nu=3 beta=0 delta=0 rho=0").is_err());
}

#[test]
fn group_verifies_prediction() {
    let v = parse(group("nonmax m=5 n=6 alpha=1 beta=1 gamma=1 delta=1 rho=1", "X^2"));
    assert_eq!(v["derived_type"], "(9,3,3)");
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["symbolic_power"], "0");
    let v = parse(group("max p=5 m=7 w=1 z=0", ""));
    assert_eq!(v["verdict"], "PASS");
    assert!(v["symbolic_power"].is_null());
    assert!(group("nonmax m=4 n=9", "").is_err());
}
