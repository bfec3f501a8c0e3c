use std::process::{Command, Output};

use serde_json::Value;

fn domino(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domino"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = domino(&full);
    let v = serde_json::from_slice(&out.stdout).expect("valid json");
    (out.status.code().unwrap(), v)
}

#[test]
fn count_envelope() {
    let (code, v) = json(&["count", "2", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "count");
    assert_eq!(v["parameters"]["m"], "2");
    assert_eq!(v["result"], "8");
    assert_eq!(v["status"], "ok");
}

#[test]
fn count_accepts_nonpositive_lengths() {
    let (_, v) = json(&["count", "2", "-5"]);
    assert_eq!(v["result"], "-3");
    let (_, v) = json(&["count", "4", "0"]);
    assert_eq!(v["result"], "1");
}

#[test]
fn large_count_is_exact() {
    let (_, v) = json(&["count", "8", "8"]);
    assert_eq!(v["result"], "12988816");
}

#[test]
fn json_round_trips() {
    for args in [
        vec!["table", "3", "--from", "-6", "--to", "6"],
        vec!["genfun", "4"],
        vec!["recurrence", "2"],
        vec!["laurent", "--down-to", "-3"],
        vec!["oracle", "2", "-3", "--graph", "--matchings"],
    ] {
        let mut full = args.clone();
        full.extend(["--format", "json"]);
        let raw = String::from_utf8(domino(&full).stdout).unwrap();
        let v: Value = serde_json::from_str(&raw).unwrap();
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(raw, again, "{args:?}");
    }
}

#[test]
fn output_independent_of_thread_count() {
    for args in [
        vec!["table", "7", "--from", "-10", "--to", "10"],
        vec!["verify3d", "2", "3", "--nmax", "3"],
    ] {
        let mut one = args.clone();
        one.extend(["--threads", "1", "--format", "json"]);
        let mut four = args.clone();
        four.extend(["--threads", "4", "--format", "json"]);
        assert_eq!(domino(&one).stdout, domino(&four).stdout, "{args:?}");
    }
}

#[test]
fn verify_width_six() {
    let (code, v) = json(&["verify", "6", "--nmax", "8"]);
    assert_eq!(code, 0);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[3]["t_forward"], "41");
    assert_eq!(rows[3]["t_reflected"], "-41");
    assert_eq!(rows[3]["epsilon"], "-1");
    assert!(rows.iter().all(|r| r["pass"] == true));
}

#[test]
fn verify_with_oracle_column() {
    let (code, v) = json(&["verify", "2", "--nmax", "8", "--oracle"]);
    assert_eq!(code, 0);
    let row = &v["result"]["rows"][3];
    assert_eq!(row["oracle_reflected"], "-3");
}

#[test]
fn genfun_reports_literal_claim_without_failing() {
    let (code, v) = json(&["genfun", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["Q"], serde_json::json!(["1", "-1", "-1"]));
    assert_eq!(v["result"]["literal_claim"]["holds"], false);
    assert_eq!(v["result"]["requires_twist"], true);
}

#[test]
fn csv_has_one_row_per_n() {
    let out = domino(&["table", "2", "--from", "-3", "--to", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,value");
    assert_eq!(lines[1], "-3,-1");
    assert_eq!(lines.len(), 8);
}

#[test]
fn text_mode_reports_status() {
    let out = domino(&["count3d", "2", "2", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.ends_with("status: ok\n"));
    assert!(text.contains(" 9"));
}

#[test]
fn invalid_input_exits_two() {
    for args in [
        vec!["frobnicate"],
        vec!["count", "x", "3"],
        vec!["count", "20", "3"],
        vec!["table", "2", "--from", "3", "--to", "-3"],
        vec!["count3d", "5", "5", "2"],
        vec!["laurent", "--down-to", "-9"],
        vec!["count", "2", "2", "--threads", "0"],
    ] {
        let out = domino(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn config_file_overrides_caps() {
    let dir = std::env::temp_dir().join(format!("domino-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("caps.toml");
    std::fs::write(&path, "max_width = 2\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(
        domino(&["count", "3", "2", "--config", p]).status.code(),
        Some(2)
    );
    assert_eq!(
        domino(&["count", "2", "2", "--config", p]).status.code(),
        Some(0)
    );
    std::fs::write(&path, "laurent_depth = -8\n").unwrap();
    assert_eq!(
        domino(&["laurent", "--down-to", "-8", "--config", p])
            .status
            .code(),
        Some(0)
    );
    std::fs::write(&path, "max_width = \"lots\"\n").unwrap();
    assert_eq!(
        domino(&["count", "2", "2", "--config", p]).status.code(),
        Some(2)
    );
    std::fs::remove_dir_all(&dir).ok();
}
