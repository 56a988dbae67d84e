use std::process::{Command, Output};

use serde_json::Value;

fn sturmian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sturmian"))
        .args(args)
        .env_remove("STURMIAN_SPECTRA_CAP")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = sturmian(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn error_kind(out: &Output) -> String {
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    v["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn cf_table() {
    let v = json(&["cf", "[0;2,(1)]", "--t-max", "5"]);
    let q: Vec<&str> = v["convergents"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["q"].as_str().unwrap())
        .collect();
    assert_eq!(q, ["1", "2", "3", "5", "8", "13"]);
    assert_eq!(v["lambda"]["d"], "5");
    assert_eq!(v["lambda"]["q"], "1");

    let v = json(&["cf", "[0;(2)]"]);
    assert!(v["lambda"]["decimal"].as_str().unwrap().starts_with("2.8284"));

    let out = sturmian(&["cf", "bad"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "parse");
    assert!(out.stdout.is_empty());
}

fn class_members(v: &Value) -> Vec<Vec<String>> {
    v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            c["members"]
                .as_array()
                .unwrap()
                .iter()
                .map(|w| w.as_str().unwrap().to_string())
                .collect()
        })
        .collect()
}

#[test]
fn classes() {
    let v = json(&["classes", "[0;2,(1)]", "-k", "2", "-m", "5"]);
    assert_eq!(
        class_members(&v),
        [
            vec!["00100"],
            vec!["00101", "01001"],
            vec!["01010"],
            vec!["10010", "10100"]
        ]
    );
    let v = json(&["classes", "[0;2,(1)]", "-k", "1", "-m", "5"]);
    assert_eq!(class_members(&v).iter().filter(|c| !c.is_empty()).count(), 2);
    assert_eq!(sturmian(&["classes", "[0;2,(1)]", "-k", "2", "-m", "0"]).status.code(), Some(2));

    let v = json(&["classes", "[0;2,(1)]", "-k", "2", "-m", "5", "--emit-circle"]);
    assert_eq!(v["circle"]["factors"].as_array().unwrap().len(), 6);
    assert_eq!(v["circle"]["cuts"].as_array().unwrap().len(), 4);
}

#[test]
fn exponents() {
    let v = json(&["exponent", "[0;2,(1)]", "-k", "2", "-m", "5", "--verify"]);
    assert_eq!(v["exponent"], 5);
    assert_eq!(v["oracle"]["agrees"], true);
    assert_eq!(v["witness"]["word"], "1010010100100101001010010");
    assert_eq!(json(&["exponent", "[0;3,1,1,1,100,(1)]", "-k", "2", "-m", "4"])["exponent"], 6);
    assert_eq!(json(&["exponent", "[0;2,(1)]", "-k", "2", "-m", "7"])["exponent"], 1);
}

#[test]
fn resource_cap_exits_3() {
    let out = sturmian(&["exponent", "[0;3,1,1,1,100,(1)]", "-k", "1", "-m", "11", "--verify", "--cap", "100"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_kind(&out), "resource_cap");

    let out = Command::new(env!("CARGO_BIN_EXE_sturmian"))
        .args(["exponent", "[0;3,1,1,1,100,(1)]", "-k", "1", "-m", "11", "--verify"])
        .env("STURMIAN_SPECTRA_CAP", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn theta() {
    let v = json(&["theta", "[0;2,(1)]", "-k", "2"]);
    assert_eq!((&v["theta"]["p"], &v["theta"]["q"], &v["theta"]["d"], &v["theta"]["r"]), (&"-5".into(), &"3".into(), &"5".into(), &"2".into()));
    assert!(v["theta"]["decimal"].as_str().unwrap().starts_with("0.85410196624968"));
    assert_eq!(sturmian(&["theta", "[0;2,1]", "-k", "2"]).status.code(), Some(2));
}

#[test]
fn spectrum_csv() {
    let out = sturmian(&["spectrum", "-k", "2", "--base", "[0;(1)]", "--pool", "200", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 200);
    let sqrt5 = 5f64.sqrt();
    for row in &rows {
        let theta: f64 = row[4].parse().unwrap();
        assert!(theta > sqrt5 / 3.0 && theta < sqrt5, "{row:?}");
    }
}

#[test]
fn spectrum_json_lines() {
    let out = sturmian(&["spectrum", "-k", "2", "--base", "[0;(1)]", "--pool", "5"]);
    let lines: Vec<Value> = out
        .stdout
        .split(|&b| b == b'\n')
        .filter(|l| !l.is_empty())
        .map(|l| serde_json::from_slice(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0]["cf"], "[0; (1)]");
    assert_eq!(lines[0]["k"], 2);
}

#[test]
fn linfty_stages() {
    let v = json(&["linfty", "1", "--stages", "4"]);
    let stages = v["stages"].as_array().unwrap();
    assert_eq!(stages.len(), 4);
    for (t, st) in stages.iter().enumerate() {
        let err: f64 = st["error"]["decimal"].as_str().unwrap().parse().unwrap();
        assert!((0.0..0.5f64.powi(t as i32 + 1)).contains(&err), "{st}");
    }
    assert_eq!(sturmian(&["linfty", "0"]).status.code(), Some(2));
    assert_eq!(sturmian(&["linfty", "x/y"]).status.code(), Some(2));
}

#[test]
fn other_commands() {
    let v = json(&["bounds", "[0;3,1,1,1,100,(1)]", "-k", "3", "--t-max", "6"]);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    let v = json(&["ternary", "[0;2,(1)]", "-k", "2", "--max-len", "12"]);
    assert_eq!(v["counterexamples"].as_array().unwrap().len(), 0);
    assert_eq!(json(&["powers", "[0;3,1,1,1,100,(1)]", "-m", "11"])["exponent"], 102);
}

#[test]
fn text_and_csv_formats() {
    let out = sturmian(&["cf", "[0;(1)]", "--format", "text"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("lambda  sqrt(5)"));
    let out = sturmian(&["classes", "[0;2,(1)]", "-k", "2", "-m", "5", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("interval_index,start,length,members\n"));
    assert!(text.contains("10010 10100"));
}

#[test]
fn deterministic_output() {
    let args = ["spectrum", "-k", "3", "--base", "[0;(1,2)]", "--pool", "40"];
    assert_eq!(sturmian(&args).stdout, sturmian(&args).stdout);
}

#[test]
fn config_replay() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    let args = ["exponent", "[0;2,(1)]", "-k", "2", "-m", "5", "--format", "csv"];
    let mut with_emit = args.to_vec();
    with_emit.push("--emit-config");
    let config = sturmian(&with_emit);
    assert_eq!(config.status.code(), Some(0));
    std::fs::write(&path, &config.stdout).unwrap();
    let replayed = sturmian(&["replay", path.to_str().unwrap()]);
    assert_eq!(replayed.status.code(), Some(0));
    assert_eq!(replayed.stdout, sturmian(&args).stdout);

    let out = sturmian(&["replay", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
