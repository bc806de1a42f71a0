use std::process::{Command, Output};

use serde_json::Value;

fn modinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modinv")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = modinv(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (out.status.code().unwrap(), v)
}

fn untimed(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

fn status<'a>(doc: &'a Value, name: &str) -> &'a str {
    doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))["status"]
        .as_str()
        .unwrap()
}

#[test]
fn minus_group_over_f4() {
    let (code, doc) = json(&["group", "--q-exp", "2", "--type", "minus"]);
    assert_eq!(code, 0);
    assert_eq!(doc["field"]["q"], 4);
    assert_eq!(status(&doc, "group.order"), "pass");
    assert_eq!(status(&doc, "group.cross-validation"), "pass");
    assert!(doc["checks"][0]["detail"].as_str().unwrap().starts_with("10 elements"));
}

#[test]
fn verify_all_over_f4_passes() {
    let (code, doc) = json(&["verify", "--q-exp", "2", "--m", "2", "--all"]);
    assert_eq!(code, 0);
    for name in [
        "generation.generation",
        "free-module.spanning",
        "hilbert-ideal.ideal-equality",
        "transfer-suite.transfer-of-d",
        "identity-suite.shift-identity",
    ] {
        assert_eq!(status(&doc, name), "pass", "{name}");
    }
    assert_eq!(status(&doc, "identity-suite.U-power-over-N"), "reported");
}

#[test]
fn noether_for_five_copies() {
    let (code, doc) = json(&["noether", "--q-exp", "2", "--m", "5", "--max-degree", "7"]);
    assert_eq!(code, 0);
    assert_eq!(status(&doc, "noether.noether-number"), "pass");
    let rec = doc["checks"].as_array().unwrap().iter().find(|c| c["name"] == "noether.noether-number");
    let detail = rec.unwrap()["detail"].as_str().unwrap();
    assert!(detail.contains("is 5") && detail.contains("up to degree 7"), "{detail}");
}

#[test]
fn failing_check_exits_one() {
    // The candidate module basis falls short over F_8.
    let (code, doc) = json(&["verify", "--q-exp", "3", "--free-module"]);
    assert_eq!(code, 1);
    assert_eq!(status(&doc, "free-module.series"), "fail");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(modinv(&["verify", "--m", "3", "--free-module"]).status.code(), Some(2));
    assert_eq!(modinv(&["verify"]).status.code(), Some(2));
    assert_eq!(modinv(&["group", "--q-exp", "3", "--modulus", "3,2,1,0"]).status.code(), Some(2));
    assert_eq!(modinv(&["group", "--q-exp", "2", "--modulus", "3,1,0"]).status.code(), Some(2));
    assert_eq!(modinv(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn modulus_override_changes_the_field_not_the_verdicts() {
    let (code, doc) = json(&["verify", "--q-exp", "3", "--modulus", "3,2,0", "--generation"]);
    assert_eq!(code, 0);
    assert_eq!(doc["field"]["modulus"], "z^3 + z^2 + 1");
}

#[test]
fn reports_are_deterministic() {
    let args = ["report", "--q-exp", "2", "--m", "2"];
    let (_, a) = json(&args);
    let (_, b) = json(&args);
    assert_eq!(untimed(a), untimed(b));
}

#[test]
fn cache_never_changes_verdicts() {
    let dir = std::env::temp_dir().join(format!("modinv-cache-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dims.json");
    let p = path.to_str().unwrap();
    let plain = json(&["report", "--m", "2"]);
    let first = json(&["report", "--m", "2", "--cache", p]);
    let second = json(&["report", "--m", "2", "--cache", p]);
    assert_eq!(plain.0, second.0);
    let strip = |v: Value| {
        let mut v = untimed(v);
        // Only the count of cache hits differs.
        v["checks"].as_array_mut().unwrap().retain(|c| c["name"] != "dims.dimensions");
        v
    };
    assert_eq!(strip(plain.1.clone()), strip(first.1));
    assert_eq!(strip(plain.1), strip(second.1.clone()));
    let cached = &second.1["checks"].as_array().unwrap().iter().find(|c| c["name"] == "dims.dimensions").unwrap()["detail"];
    assert!(cached.as_str().unwrap().contains("9 taken from the cache"), "{cached}");

    std::fs::write(&path, "{ not json").unwrap();
    let out = modinv(&["dims", "--m", "2", "--cache", p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("corrupt cache"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn wide_fields_warn() {
    let out = modinv(&["group", "--q-exp", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn text_output_lists_statuses() {
    let out = modinv(&["o2minus", "--q-exp", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS     o2minus-one-copy.series"));
    assert!(text.contains("REPORTED o2minus-two-copies.minus-generator-count"));
    assert_eq!(out.status.code(), Some(1));
}
