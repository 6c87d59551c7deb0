use sqwu::cli::{run, Outcome};

fn sqwu(args: &[&str]) -> Outcome {
    run(std::iter::once("sqwu").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = sqwu(&all);
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

#[test]
fn documented_examples() {
    assert_eq!(sqwu(&["normalize", "Sq 3 Sq 2"]).stdout, "0\n");
    assert_eq!(sqwu(&["euler", "RP(4)"]).stdout, "1\n");
    let d = sqwu(&["decompose", "6"]);
    assert_eq!(d.code, 0);
    assert_eq!(d.stdout, "Sq 6 = Sq 2 . Sq 4 + Sq 1 . Sq 4 Sq 1\nverified: true\n");
    assert_eq!(sqwu(&["adem", "2", "3"]).stdout, "Sq 2 Sq 3 = Sq 5 + Sq 4 Sq 1\n");
}

#[test]
fn class_commands() {
    assert_eq!(sqwu(&["sw", "RP(4)"]).stdout, "RP(4): w = 1 + x + x^4\n");
    assert_eq!(sqwu(&["wu", "RP(4)"]).stdout, "RP(4): v = 1 + x + x^2\n");
    assert_eq!(sqwu(&["sw", "CP(3)"]).stdout, "CP(3): w = 1\n");
    assert_eq!(sqwu(&["orientability", "RP(4)"]).stdout, "RP(4): k = 0\n");
    assert_eq!(sqwu(&["orientability", "CP(3)"]).stdout, "CP(3): k = 3 (all classes vanish)\n");
    let v = json(&["orientability", "OP(2)xOP(2)"]);
    assert_eq!(v["k"], 3);
    assert_eq!(v["all_vanish"], false);
    let v = json(&["sw", "RP(2)"]);
    assert_eq!(v["classes"], serde_json::json!(["1", "x", "x^2"]));
}

#[test]
fn sweep_lines() {
    let out = sqwu(&["verify", "euler-parity", "--max-dim", "8"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert!(lines.iter().any(|l| l.starts_with("CP(2) ")
        && l.contains("dim=4")
        && l.contains("k=1")
        && l.contains("chi=3")
        && l.ends_with("pass")));
    assert!(lines.last().unwrap().starts_with("euler-parity: pass"));
    for t in ["wu-vanishing", "orientable-equiv", "wu-formula", "middle-form"] {
        let out = sqwu(&["verify", t, "--max-dim", "6", "--validate"]);
        assert_eq!(out.code, 0, "{t}: {}", out.stdout);
    }
    let v = json(&["verify", "wu-vanishing", "--max-dim", "4"]);
    assert_eq!(v["passed"], true);
    assert!(v["spaces"].as_array().unwrap().iter().all(|s| s["pass"] == true));
}

#[test]
fn range_theorems() {
    for (t, n) in [("decomposition", "24"), ("lemma-claim", "8"), ("bilinear", "5")] {
        let out = sqwu(&["verify", t, "--max-n", n]);
        assert_eq!(out.code, 0, "{t}: {}", out.stdout);
    }
    assert_eq!(sqwu(&["verify", "bilinear", "--max-n", "65"]).code, 2);
}

#[test]
fn exit_codes() {
    assert_eq!(sqwu(&["euler", "XP(2)"]).code, 2);
    assert_eq!(sqwu(&["normalize", "Sq x"]).code, 2);
    assert_eq!(sqwu(&["decompose", "0"]).code, 2);
    assert_eq!(sqwu(&["decompose", "-3"]).code, 2);
    assert_eq!(sqwu(&["adem", "4", "2"]).code, 2);
    assert_eq!(sqwu(&["frobnicate"]).code, 2);
    assert_eq!(sqwu(&[]).code, 2);
    assert_eq!(sqwu(&["--help"]).code, 0);
    let e = sqwu(&["--json", "euler", "OP(3)"]);
    assert_eq!(e.code, 2);
    let err: serde_json::Value = serde_json::from_str(&e.stderr).unwrap();
    assert!(err["error"].as_str().unwrap().contains("formal"));
    assert_eq!(sqwu(&["--formal-op", "euler", "OP(3)"]).stdout, "4\n");
}

#[test]
fn validate_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("rp2.json");
    let rp2 = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/rp2.json")).unwrap();
    std::fs::write(&good, &rp2).unwrap();
    let out = sqwu(&["validate", good.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.starts_with("validate: pass"));

    // Sq^1 x = 0 contradicts Sq^1 x = x^2
    let bad = dir.path().join("bad.json");
    let tampered: serde_json::Value = {
        let mut v: serde_json::Value = serde_json::from_str(&rp2).unwrap();
        v["steenrod"] = serde_json::json!([[1, "x", "0"]]);
        v
    };
    std::fs::write(&bad, tampered.to_string()).unwrap();
    let out = sqwu(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("[square]"), "{}", out.stdout);
    let v = json(&["validate", bad.to_str().unwrap()]);
    assert_eq!(v["report"]["failures"][0]["rule"], "square");

    assert_eq!(sqwu(&["validate", dir.path().join("missing.json").to_str().unwrap()]).code, 2);
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{").unwrap();
    assert_eq!(sqwu(&["validate", garbage.to_str().unwrap()]).code, 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--json", "verify", "orientable-equiv", "--max-dim", "6"][..],
        &["verify", "bilinear", "--max-n", "7"][..],
        &["--json", "decompose", "40"][..],
    ] {
        assert_eq!(sqwu(args), sqwu(args));
    }
}
