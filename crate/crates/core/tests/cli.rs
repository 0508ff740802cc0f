use caylab::cli::run_cli;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["caylab"];
    argv.extend(args);
    let code = run_cli(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn analyze_reports_one_line() {
    let (code, out, _) = run(&["analyze", "--group", "Z18", "--set", "2,4,8,9,10,14,16"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["stable"], false);
    assert_eq!(v["agreement"], true);
    assert_eq!(v["criterion"]["cond1"]["witness_h"], 6);
    assert_eq!(v["aut_order"], "2592");
}

#[test]
fn invalid_input_exits_two() {
    let (code, _, err) = run(&["analyze", "--group", "Z18", "--set", "0,1"]);
    assert_eq!(code, 2);
    assert!(err.contains("identity in connection set"));
    let (code, _, err) = run(&["analyze", "--group", "Z18", "--set", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("inverse-closed"));
    assert_eq!(run(&["analyze", "--group", "Q8", "--set", "1"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["verify", "--theorem", "main9", "--group", "Z18"]).0, 2);
    assert_eq!(run(&["verify", "--theorem", "wm", "--group", "Z18"]).0, 2);
    assert_eq!(run(&["enumerate", "--group", "Z18", "--jobs", "0"]).0, 2);
    assert_eq!(run(&["iso", "--n", "12", "--set", "1,11", "--set2", "5,7"]).0, 2);
}

#[test]
fn out_of_scope_is_reported() {
    let (code, out, _) = run(&["analyze", "--group", "Z6", "--set", "1,5"]);
    assert_eq!(code, 0);
    assert!(out.contains(r#""bipartite":true"#));
    assert!(out.contains("out of scope"));
}

#[test]
fn verify_prints_a_tally() {
    let (code, out, _) = run(&["verify", "--theorem", "main4", "--group", "Z18"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "0 violations / 462 instances");
    let (code, out, _) = run(&["verify", "--theorem", "wm", "--group", "Z9"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("0 violations / 14 instances\n"));
    let (code, out, _) = run(&["verify", "--theorem", "poschel", "--group", "Z7"]);
    assert_eq!((code, out.as_str()), (0, "0 violations / 4 instances\n"));
}

#[test]
fn literal_phi_fails_the_class_audit() {
    let (code, out, _) = run(&["verify", "--theorem", "prop5_7", "--group", "Z18"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("0 violations"));
    let (code, out, _) = run(&["--debug-literal-phi", "verify", "--theorem", "prop5_7", "--group", "Z18"]);
    assert_eq!(code, 1);
    assert!(out.contains(r#""key":"#));
}

#[test]
fn iso_output() {
    let (code, out, _) = run(&["iso", "--n", "18", "--set", "1,17", "--set2", "5,13"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"isomorphic":true,"witness_multiplier":"(5,5)","keys":["(0,0)","(0,0)"]}"#);
    let (_, out, _) = run(&["iso", "--n", "18", "--set", "1,17", "--set2", "2,16"]);
    assert!(out.starts_with(r#"{"isomorphic":false"#));
}

#[test]
fn enumerate_sample_is_seeded() {
    let a = run(&["enumerate", "--group", "Z54", "--sample", "20", "--seed", "3", "--jobs", "2"]);
    let b = run(&["enumerate", "--group", "Z54", "--sample", "20", "--seed", "3", "--jobs", "1"]);
    assert_eq!(a, b);
    assert_eq!(a.1.lines().count(), 21);
    assert!(a.1.lines().last().unwrap().starts_with("# group=Z54 instances=20"));
}

#[test]
fn enumerate_writes_to_a_file() {
    let dir = std::env::temp_dir().join(format!("caylab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z10.jsonl");
    let (code, out, _) = run(&["enumerate", "--group", "Z10", "--dedupe", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let full = run(&["enumerate", "--group", "Z10"]).1;
    assert!(text.lines().count() < full.lines().count());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn srings_dump() {
    let (code, out, _) = run(&["srings", "--group", "Z9"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("# 7 S-rings\n"));
    assert!(out.contains("# (2,6;{1,2})\n0\n1 2 3 4 5 6 7 8\n"));
}
