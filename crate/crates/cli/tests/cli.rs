use std::process::{Command, Output};

use serde_json::Value;

fn sigatlas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigatlas"))
        .args(args)
        .env_remove("SIGATLAS_LIMITS")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn ok(args: &[&str]) -> Value {
    let out = sigatlas(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    let v = json_of(&out);
    assert!(v.get("error").is_none());
    v
}

#[test]
fn classify_icosahedral() {
    let v = ok(&["classify", "2,3,5"]);
    let r = &v["result"];
    assert_eq!(v["command"], "classify");
    assert_eq!(r["chi"], "59/30");
    assert_eq!(r["class"], "elliptic");
    assert_eq!(r["family"], "icosahedron/dodecahedron");
    assert_eq!(r["order"], 60);
}

#[test]
fn classify_rejects_unequal_pair() {
    let out = sigatlas(&["classify", "2,3"]);
    assert!(!out.status.success());
    let v = json_of(&out);
    assert!(v.get("result").is_none());
    assert_eq!(v["error"]["kind"], "validation");
}

#[test]
fn classify_strip_and_lenient_infinity() {
    for arg in ["inf,inf", "oo,∞", "INF, infinity"] {
        let v = ok(&["classify", arg]);
        assert_eq!(v["inputs"]["orders"], "inf,inf");
        assert_eq!(v["result"]["chi"], "2");
        assert_eq!(v["result"]["class"], "parabolic");
        assert_eq!(v["result"]["family"], "strip");
    }
}

#[test]
fn garbage_orders_are_usage_errors() {
    let out = sigatlas(&["classify", "2,x,5"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"]["kind"], "usage");
}

#[test]
fn enumerate_sets_counts() {
    let v = ok(&["enumerate-sets"]);
    assert_eq!(v["result"]["parabolic"].as_array().unwrap().len(), 6);
    let ell = v["result"]["elliptic"].as_array().unwrap();
    assert!(ell.iter().all(|s| s["class"] == "elliptic"));
    assert!(ell.iter().any(|s| s["orders"] == "2,3,5"));
}

#[test]
fn group_order_matches_expected() {
    for (orders, n) in [("2,2,3", 6), ("2,3,5", 60), ("2,3,4", 24)] {
        let v = ok(&["group-order", orders]);
        assert_eq!(v["result"]["index"], n);
        assert_eq!(v["result"]["expected_group_order"], n);
    }
    let v = ok(&["group-order", "inf,inf", "--subgroup", "x1^3"]);
    assert_eq!(v["result"]["index"], 3);
}

#[test]
fn group_order_overflow_is_not_an_error() {
    let v = ok(&["group-order", "2,3,7", "--max-cosets", "200"]);
    assert_eq!(v["result"]["completed"], false);
    assert_eq!(v["result"]["overflow_limit"], 200);
}

#[test]
fn coverings_examples() {
    let v = ok(&["coverings", "2,3,5", "--degree", "5"]);
    let classes = v["result"]["classes"].as_array().unwrap();
    assert!(!classes.is_empty());
    assert!(classes.iter().all(|c| c["report"]["group_order"] == 60));
    assert_eq!(v["result"]["determinism"]["holds"], true);

    let v = ok(&["coverings", "2,3,7", "--degree", "7"]);
    assert!(v["result"]["classes"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["report"]["group_order"] == 168 && c["report"]["solvable"] == false));
    assert!(v["result"].get("determinism").is_none());

    let v = ok(&["coverings", "2,2", "--degree", "2"]);
    assert_eq!(v["result"]["class_count"], 1);
}

#[test]
fn coverings_random_mode_is_seeded() {
    let a = sigatlas(&["coverings", "2,3,7", "--degree", "7", "--seed", "11", "--samples", "3000"]);
    let b = sigatlas(&["coverings", "2,3,7", "--degree", "7", "--seed", "11", "--samples", "3000"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["result"]["mode"], "random");
}

#[test]
fn resource_limits_are_echoed() {
    let out = sigatlas(&["coverings", "2,2", "--degree", "9"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json_of(&out);
    assert_eq!(v["error"]["kind"], "resource");
    assert_eq!(v["error"]["limit"], 8);

    let out = Command::new(env!("CARGO_BIN_EXE_sigatlas"))
        .args(["tiling", "2,3,5", "--depth", "20"])
        .env("SIGATLAS_LIMITS", "max_depth=10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_of(&out)["error"]["limit"], 10);

    let out = Command::new(env!("CARGO_BIN_EXE_sigatlas"))
        .args(["classify", "2,3,5"])
        .env("SIGATLAS_LIMITS", "bogus=1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn affine_type_eight() {
    let v = ok(&["affine", "8"]);
    assert_eq!(v["result"]["orders"], "6,3,2");
    let v = ok(&["affine", "4"]);
    assert_eq!(v["result"]["quotient"], "genus one");
    let out = sigatlas(&["affine", "6", "--ring", "eisenstein"]);
    assert!(!out.status.success());
}

#[test]
fn ritt_five() {
    let v = ok(&["ritt", "5"]);
    assert_eq!(v["result"]["datum_count"], 4);
    assert_eq!(v["result"]["nonhyperbolic"], true);
    let out = sigatlas(&["ritt", "9"]);
    assert_eq!(json_of(&out)["error"]["kind"], "usage");
}

#[test]
fn chebyshev_four() {
    let v = ok(&["poly-monodromy", "8,0,-8,0,1"]);
    assert_eq!(v["result"]["signature"], "2,2,4");
    assert_eq!(v["result"]["report"]["group_order"], 8);
}

#[test]
fn tiling_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.svg");
    let v = ok(&["tiling", "2,3,4", "--out", path.to_str().unwrap()]);
    assert_eq!(v["result"]["report"]["tiles"], 48);
    assert_eq!(v["result"]["report"]["ok"], true);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<?xml") || svg.starts_with("<svg"));
    assert!(svg.contains("</svg>"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["classify", "2,3,5"],
        vec!["affine", "8"],
        vec!["ritt", "7"],
        vec!["poly-monodromy", "8,0,-8,0,1"],
        vec!["coverings", "2,3,4", "--degree", "6"],
    ] {
        assert_eq!(sigatlas(&args).stdout, sigatlas(&args).stdout, "{args:?}");
    }
}

#[test]
fn classify_golden() {
    let out = sigatlas(&["classify", "2,2,7"]);
    let expected = r#"{
  "command": "classify",
  "inputs": {
    "orders": "2,2,7"
  },
  "result": {
    "chi": "13/7",
    "class": "elliptic",
    "family": "dihedron D_7",
    "order": 14,
    "orders": "2,2,7"
  },
  "versions": {
    "tool": "0.1.0",
    "schema": "1"
  }
}
"#;
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected);
}
