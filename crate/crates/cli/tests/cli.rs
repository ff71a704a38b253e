use std::process::{Command, Output};

use serde_json::Value;

fn augment(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_augment"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = augment(args);
    assert!(
        out.status.success(),
        "augment {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn column(csv: &str, idx: usize) -> Vec<String> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').nth(idx).unwrap().to_string())
        .collect()
}

const F112: &str = r#"{"gamma":"1","alpha":"1","k":2}"#;

#[test]
fn trace_of_the_critical_function() {
    let csv = stdout(&["trace", "--family", "critical", "--params", F112, "--k", "4"]);
    assert_eq!(column(&csv, 1), ["a1", "a2", "b1", "b2"]);
    assert_eq!(column(&csv, 3).last().unwrap(), "1");
}

#[test]
fn trace_of_g2() {
    let csv = stdout(&["trace", "--family", "gk", "--params", r#"{"alpha":1,"k":2}"#, "--k", "2"]);
    assert_eq!(column(&csv, 1), ["t1", "t2"]);
    assert_eq!(column(&csv, 2), ["4", "2"]);
}

#[test]
fn zero_steps_give_a_header_only_csv() {
    let csv = stdout(&["trace", "--family", "critical", "--params", F112, "--k", "0"]);
    assert_eq!(csv, "step,pick,gain,value,tie_count,tied\n");
}

#[test]
fn bad_descriptors_are_diagnosed() {
    let out = augment(&["trace", "--family", "critical", "--params", r#"{"gamma":"1","k":2}"#, "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("alpha"));

    let out = augment(&["trace", "--params", "{\"family\": \"gk\",\n \"alpha\" 1}", "--k", "1"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = augment(&["trace", "--family", "nope", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_is_byte_deterministic() {
    let args = [
        "ratio-table", "--family", "critical", "--params", F112, "--k", "2..5", "--gamma", "1,1/2",
        "--alpha", "1,3/2", "--decimal", "--tie", "highest",
    ];
    let first = augment(&args).stdout;
    for _ in 0..3 {
        assert_eq!(augment(&args).stdout, first);
    }
}

#[test]
fn ratio_table_for_the_critical_family() {
    let csv = stdout(&["ratio-table", "--family", "critical", "--params", F112, "--k", "2,4,8"]);
    assert_eq!(column(&csv, 5), ["4/3", "256/175", "16777216/11012415"]);
    // Measured cells in guard match the closed form exactly.
    assert_eq!(column(&csv, 4), column(&csv, 5));
    assert!(column(&csv, 6).iter().all(|l| l == "1.58197670686933"));
    assert_eq!(column(&csv, 8), ["", "true", "true"]);
}

#[test]
fn ratio_table_for_gk() {
    let csv = stdout(&["ratio-table", "--family", "gk", "--params", r#"{"alpha":2,"k":2}"#, "--k", "2,3"]);
    assert_eq!(column(&csv, 5), ["32/15", "1458/665"]);
    assert_eq!(column(&csv, 4), ["32/15", ""]);
    assert!(csv.lines().nth(2).unwrap().ends_with("out of guard: closed form only"));
}

#[test]
fn empty_k_list_gives_a_header_only_table() {
    let csv = stdout(&["ratio-table", "--family", "three_sink", "--k", ""]);
    assert_eq!(csv.lines().count(), 1);
}

#[test]
fn invalid_grid_points_fail_before_output() {
    let dir = std::env::temp_dir().join(format!("augment-grid-{}", std::process::id()));
    let out = augment(&[
        "ratio-table", "--family", "critical", "--params", F112, "--k", "2,3", "--alpha", "2",
        "--out", dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("k=2"));
    assert!(!dir.exists());
}

fn audit(family: &str, params: &str, extra: &[&str]) -> Value {
    let mut args = vec!["audit", "--family", family, "--params", params];
    args.extend_from_slice(extra);
    serde_json::from_str(&stdout(&args)).unwrap()
}

fn verdict(list: &Value, gamma: &str, alpha: &str) -> String {
    list.as_array()
        .unwrap()
        .iter()
        .find(|r| r["gamma"] == gamma && r["alpha"] == alpha)
        .unwrap_or_else(|| panic!("no report for ({gamma}, {alpha})"))["verdict"]
        .as_str()
        .unwrap()
        .to_string()
}

#[test]
fn audit_of_f_gamma() {
    let b = audit("f_gamma", r#"{"gamma":"1/2"}"#, &[]);
    assert_eq!(b["weak_ratio"]["gamma"], "1/2");
    for r in b["alpha_augmentable"].as_array().unwrap() {
        assert_eq!(r["verdict"], "non_member");
    }
    assert_eq!(verdict(&b["gamma_alpha"], "1/2", "1/2"), "member");
    assert!(b["tightest_alpha"].is_null());
}

#[test]
fn audit_of_a_modular_function() {
    let b = audit("modular", r#"{"weights":["3","1","2"]}"#, &["--gamma", "1", "--alpha", "1"]);
    assert_eq!(verdict(&b["alpha_augmentable"], "1", "1"), "member");
    assert_eq!(verdict(&b["gamma_alpha"], "1", "1"), "member");
    assert_eq!(b["weak_ratio"]["gamma"], "1");
    assert_eq!(b["min_alpha"][0]["alpha"], "1");
}

#[test]
fn audit_of_f_1_2_3() {
    let b = audit("critical", r#"{"gamma":"1","alpha":"2","k":3}"#, &["--alpha", "3/2,2"]);
    assert_eq!(verdict(&b["alpha_augmentable"], "1", "2"), "member");
    assert_eq!(verdict(&b["alpha_augmentable"], "1", "3/2"), "non_member");
    assert_eq!(b["tightest_alpha"], "2");
}

#[test]
fn audit_reports_guard_violations_in_place() {
    let b = audit("square", r#"{"n":18}"#, &["--gamma", "1", "--alpha", "1"]);
    assert!(b["alpha_augmentable"][0]["error"].as_str().unwrap().contains("strong-scope"));
    assert!(b["gamma_alpha"][0]["verdict"].is_string());
}

#[test]
fn audit_includes_rank_data_for_systems() {
    let b = audit("f_q", r#"{"q":"1/2","alpha":"1","m":1,"n":2}"#, &["--gamma", "1", "--alpha", "2"]);
    assert_eq!(b["rank"]["rank_quotient"]["q"], "1/2");
    assert_eq!(b["rank"]["exchange_lemma"]["violations"], Value::Array(vec![]));
}

fn verify(extra: &[&str]) -> (Option<i32>, Value) {
    let mut args = vec!["verify-paper"];
    args.extend_from_slice(extra);
    let out = augment(&args);
    (out.status.code(), serde_json::from_slice(&out.stdout).unwrap())
}

#[test]
fn verify_passes_by_default() {
    let (code, s) = verify(&[]);
    assert_eq!(code, Some(0), "{s:#}");
    assert_eq!(s["failed"], 0);
    assert!(s["passed"].as_u64().unwrap() >= 13);
}

#[test]
fn verify_catches_a_corrupted_critical_function() {
    let (code, s) = verify(&["--mutate", "xi2-doubled", "--only", "critical-pick-order,flow-two-sink"]);
    assert_eq!(code, Some(1));
    let checks = s["checks"].as_array().unwrap();
    assert_eq!(checks[0]["pass"], false);
    assert_eq!(checks[0]["witness"]["step"], 2);
    assert_eq!(checks[0]["witness"]["got"]["gain"], "1/2");
    assert_eq!(checks[1]["pass"], true);
}

#[test]
fn empty_filter_runs_nothing() {
    let (code, s) = verify(&["--only", ""]);
    assert_eq!(code, Some(0));
    assert_eq!(s["checks"], Value::Array(vec![]));
}

#[test]
fn generated_instances_feed_back_in() {
    let dir = std::env::temp_dir().join(format!("augment-gen-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g2.json");
    stdout(&[
        "gen-instance", "--family", "gk", "--params", r#"{"alpha":1,"k":2}"#, "--out",
        path.to_str().unwrap(),
    ]);
    let direct = stdout(&["trace", "--family", "gk", "--params", r#"{"alpha":1,"k":2}"#, "--k", "3"]);
    let via_file = stdout(&["trace", "--instance", path.to_str().unwrap(), "--k", "3"]);
    assert_eq!(direct, via_file);
    std::fs::remove_dir_all(dir).unwrap();
}
