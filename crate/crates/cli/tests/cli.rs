use std::process::{Command, Output};

use serde_json::Value;

fn uqgl21(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uqgl21"))
        .args(args)
        .env_remove("UQGL21_TOLERANCE")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn build_typical_weight() {
    let o = uqgl21(&["build", "--weight", "1,0,5", "--q", "1.7"]);
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    assert_eq!(doc["schema"], "uqgl21/1");
    assert_eq!(doc["kind"], "representation");
    let data = &doc["data"];
    assert_eq!(data["metadata"]["classification"]["class"], "typical");
    assert_eq!(data["metadata"]["dim"], 8);
    let e12 = data["matrices"]["E12"].as_array().unwrap();
    assert_eq!(e12.len(), 8);
    assert!(e12.iter().all(|r| r.as_array().unwrap().len() == 8));
    let b0 = &data["basis"][0];
    assert_eq!(b0["pattern"].as_array().unwrap().len(), 3);
}

#[test]
fn build_nontypical_weight() {
    let o = uqgl21(&["build", "--weight", "1,0,-2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["data"]["metadata"]["classification"]["class"], "nontypical-class-1");
}

#[test]
fn bad_input_exits_2() {
    assert_eq!(code(&uqgl21(&["build", "--weight", "0,1,0"])), 2);
    assert_eq!(code(&uqgl21(&["build", "--weight", "1.5,0,0"])), 2);
    assert_eq!(code(&uqgl21(&["verify", "--q", "1.0", "--mode", "generic"])), 2);
    assert_eq!(code(&uqgl21(&["verify", "--tolerance", "-1"])), 2);
    assert_eq!(code(&uqgl21(&["build", "--a2", "0"])), 2);
    assert_eq!(code(&uqgl21(&["scan", "--format", "csv"])), 2);
    assert_eq!(code(&uqgl21(&["build", "--weight", "2,0,-3"])), 0);
    assert_eq!(code(&uqgl21(&["build", "--weight", "2,0,1", "--factor"])), 2);
    assert_eq!(code(&uqgl21(&["frobnicate"])), 2);
}

#[test]
fn verify_passes_in_both_modes() {
    let o = uqgl21(&["verify", "--weight", "2,0,3"]);
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    assert_eq!(doc["kind"], "verification");
    let checks = doc["data"]["report"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 17);
    assert!(checks.iter().all(|c| c["pass"] == true));
    let o = uqgl21(&["verify", "--weight", "2,0,3", "--mode", "classical-limit"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["data"]["report"]["context"]["mode"], "classical-limit");
}

#[test]
fn tolerance_from_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_uqgl21"));
        c.args(["verify", "--weight", "3,1,2"]).args(extra);
        match env {
            Some(v) => c.env("UQGL21_TOLERANCE", v),
            None => c.env_remove("UQGL21_TOLERANCE"),
        };
        c.output().unwrap()
    };
    // far below double precision, so some check fails
    let o = run(Some("1e-30"), &[]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["data"]["report"]["tolerance"], 1e-30);
    // the flag wins over the environment
    assert_eq!(code(&run(Some("1e-30"), &["--tolerance", "1e-9"])), 0);
    assert_eq!(code(&run(Some("nope"), &[])), 2);
}

#[test]
fn csv_for_single_matrix_only() {
    let o = uqgl21(&["build", "--weight", "1,0,5", "--format", "csv", "--generator", "E21"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.split(',').count() == 8));
    assert_eq!(code(&uqgl21(&["build", "--format", "csv"])), 2);
    assert_eq!(code(&uqgl21(&["build", "--format", "csv", "--generator", "E99"])), 2);
}

#[test]
fn classify_reports_invariant_subspace() {
    let o = uqgl21(&["classify", "--weight", "1,0,0"]);
    assert_eq!(code(&o), 0);
    let d = &json(&o)["data"];
    assert_eq!(d["classification"]["class"], "nontypical-class-2");
    assert_eq!(d["closure"]["irreducible"], false);
    assert_eq!(d["factor_closure"]["irreducible"], true);
    assert_eq!(d["closure"]["union_support"], d["invariant_indices"]);
}

#[test]
fn tensor_product_checks() {
    let o = uqgl21(&["tensor", "--weight", "1,0,5", "--with", "0,0,0.7"]);
    assert_eq!(code(&o), 0);
    let d = &json(&o)["data"];
    assert_eq!(d["dim"], 32);
    assert!(d["coassociativity"].is_object());
    let o = uqgl21(&["tensor", "--weight", "0,0,1", "--with", "0,1,0"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn scan_isolates_typicality_lines() {
    let o = uqgl21(&["scan", "--span", "0..2", "--m23", "-1,0", "--m33", "-4..2", "--qs", "0.5,1.7"]);
    assert_eq!(code(&o), 0);
    let d = &json(&o)["data"];
    let rows = d["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3 * 2 * 7 * 2);
    assert_eq!(d["passed"], rows.len());
    for r in rows {
        let w = &r["weight"];
        let (m13, m23, m33) = (
            w["m13"].as_f64().unwrap(),
            w["m23"].as_f64().unwrap(),
            w["m33"].as_f64().unwrap(),
        );
        let typical = m33 != -m13 - 1.0 && m33 != -m23;
        assert_eq!(r["class"] == "typical", typical, "{r}");
    }
}

#[test]
fn empty_scan() {
    let o = uqgl21(&["scan", "--m13", "3..1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["data"]["rows"].as_array().unwrap().len(), 0);
}

#[test]
fn dump_reload_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rep.json");
    let p = path.to_str().unwrap();
    let o = uqgl21(&["dump", "--weight", "3,1,-4", "--q", "0.5", "--a1", "-2", "--factor", "--out", p]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    // the reloaded document verifies with the same report as a fresh build
    let fresh = uqgl21(&["verify", "--weight", "3,1,-4", "--q", "0.5", "--a1", "-2", "--factor"]);
    let loaded = uqgl21(&["verify", "--input", p]);
    assert_eq!(code(&loaded), 0);
    assert_eq!(json(&fresh), json(&loaded));

    // dumping the dump reproduces it byte for byte
    let again = dir.path().join("again.json");
    let o = uqgl21(&["dump", "--input", p, "--out", again.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn corrupted_dump_is_rejected_or_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rep.json");
    let o = uqgl21(&["build", "--weight", "1,0,5"]);
    let mut doc = json(&o);

    doc["data"]["matrices"]["E32"][2][0] = Value::from(0.123);
    std::fs::write(&path, doc.to_string()).unwrap();
    assert_eq!(code(&uqgl21(&["verify", "--input", path.to_str().unwrap()])), 1);

    doc["data"]["matrices"]["E12"] = Value::from(vec![1.0]);
    std::fs::write(&path, doc.to_string()).unwrap();
    assert_eq!(code(&uqgl21(&["verify", "--input", path.to_str().unwrap()])), 2);

    std::fs::write(&path, "not json").unwrap();
    assert_eq!(code(&uqgl21(&["verify", "--input", path.to_str().unwrap()])), 2);
    assert_eq!(code(&uqgl21(&["verify", "--input", "/nonexistent/x.json"])), 2);
}
