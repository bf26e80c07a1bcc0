use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treespace"))
        .args(args)
        .env_remove("TREESPACE_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("not json ({e}): {}", stdout(o)))
}

#[test]
fn patterns_valence3_radius_one() {
    let o = run(&["patterns", "--space", "valence3", "--m", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 4);
    let mut sorted = lines.clone();
    sorted.sort_by_key(|l| (l.len(), l.clone()));
    assert_eq!(lines, sorted);
}

#[test]
fn patterns_full_radius_one() {
    let o = run(&["patterns", "--space", "full:n=2", "--m", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 15);
}

#[test]
fn patterns_refusal() {
    let o = run(&["patterns", "--space", "full:n=2", "--m", "9"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("m <= 2"), "{err}");
    assert!(err.contains("6545"), "{err}");
}

#[test]
fn patterns_json_and_csv() {
    let o = run(&["patterns", "--space", "shift:k=2", "--m", "2", "--format", "json"]);
    assert_eq!(json(&o)["count"], 16);
    let o = run(&["patterns", "--space", "shift:k=2", "--m", "2", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("index,hash,vertices\n"));
    assert_eq!(text.lines().count(), 17);
}

#[test]
fn boxdim_shift_slope() {
    let o = run(&["boxdim", "--space", "shift:k=2", "--m", "1..5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("m,count,estimate\n"));
    assert!(text.contains("# slope,1.386294361120"), "{text}");
    let o = run(&["boxdim", "--space", "shift:k=2", "--m", "1..5", "--format", "json"]);
    let slope = json(&o)["estimate"]["slope"].as_f64().unwrap();
    assert!((slope - 2.0 * 2f64.ln()).abs() < 1e-12);
}

#[test]
fn boxdim_branch_orbit_reports_its_slope() {
    let o = run(&["boxdim", "--tree", "branch:l2", "--l", "3..9", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let counts: Vec<&str> = v["table"]["rows"].as_array().unwrap().iter().map(|r| r["count"].as_str().unwrap()).collect();
    assert_eq!(counts, ["6", "15", "42", "123", "366", "1095", "3282"]);
    assert!(v["estimate"]["slope"].as_f64().unwrap() > 1.0);
}

#[test]
fn boxdim_empty_range() {
    let o = run(&["boxdim", "--space", "shift:k=2", "--m", "5..1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn diagnose_valence3() {
    let o = run(&["diagnose", "--space", "valence3", "--m", "1..3", "--alpha", "2"]);
    assert_eq!(json(&o)["first_failure"], 2);
    let o = run(&["diagnose", "--space", "valence3", "--m", "1..3", "--alpha", "10"]);
    assert!(json(&o)["first_failure"].is_null());
    let o = run(&["diagnose", "--space", "shift:k=2", "--m", "1..5", "--alpha", "1.5"]);
    assert!(json(&o)["first_failure"].is_null());
    let o = run(&["diagnose", "--space", "valence3", "--m", "1..3", "--alpha", "-1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn distance_orbit_fuse() {
    let o = run(&["distance", "--t1", "cayley:n=2", "--t2", "branch:l2", "--cap", "10"]);
    assert_eq!(json(&o)["agreement"]["r"], 0);
    let o = run(&["distance", "--t1", "cayley:n=2", "--t2", "cayley:n=2", "--cap", "6"]);
    assert_eq!(json(&o)["agreement"]["display"], ">=6");

    let o = run(&["orbit", "--tree", "branch:l2", "--l", "2", "--R", "4"]);
    let v = json(&o);
    assert_eq!((v["result"]["count"].as_u64(), v["result"]["stabilized"].as_bool()), (Some(3), Some(true)));
    let o = run(&["orbit", "--tree", "branch:l2", "--l", "3", "--R", "2"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["fuse-check", "--t1", "cayley:n=2", "--t2", "branch:l2", "--K", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["complete"], true);
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 8);
}

#[test]
fn fuse_check_too_small_search_is_a_contract_failure() {
    let o = run(&["fuse-check", "--t1", "cayley:n=2", "--t2", "branch:l2", "--K", "4", "--search", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["nope"]).status.code(), Some(1));
    assert_eq!(run(&["patterns", "--space", "valence3"]).status.code(), Some(1));
    assert_eq!(run(&["patterns", "--space", "bogus", "--m", "1"]).status.code(), Some(1));
    assert_eq!(run(&["patterns", "--space", "valence3", "--tree", "branch:l2", "--m", "1"]).status.code(), Some(1));
    assert_eq!(run(&["patterns", "--space", "valence3", "--m", "1", "--frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_independent_of_workers() {
    let args = |w: &'static str| ["patterns", "--space", "valence3", "--m", "2", "--workers", w];
    let one = stdout(&run(&args("1")));
    assert_eq!(one.lines().count(), 108);
    assert_eq!(one, stdout(&run(&args("4"))));
    assert_eq!(one, stdout(&run(&args("8"))));
}

#[test]
fn cache_round_trip_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = run(&["patterns", "--space", "valence3", "--m", "2", "--cache-dir", d]);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let again = Command::new(env!("CARGO_BIN_EXE_treespace"))
        .args(["patterns", "--space", "valence3", "--m", "2"])
        .env("TREESPACE_CACHE_DIR", d)
        .output()
        .unwrap();
    assert_eq!(stdout(&first), stdout(&again));
}
