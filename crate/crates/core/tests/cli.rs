use std::process::{Command, Output};

fn certify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heis8-certify"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn list_prints_ids_with_anchors() {
    let out = certify(&["list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 18);
    assert!(text.contains("pfaffian-formula\tThe Pfaffian can be computed as"));
    assert!(text.contains("quotient-Z8-squared\tG≅H₈/Z(H₈)≅(ℤ/8ℤ)²"));
    assert_eq!(certify(&["list"]).stdout, text.into_bytes());
}

#[test]
fn configuration_errors_exit_2() {
    for args in [
        &["verify", "--checks", "no-such-check"][..],
        &["verify", "--primes", "7"],
        &["verify", "--primes", "17,19"],
        &["verify", "--y", "1,2"],
        &["verify", "--y", "0,0,0"],
        &["verify", "--jobs", "0"],
        &["frobnicate"],
    ] {
        let out = certify(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn corrupted_check_exits_1() {
    let out = certify(&["verify", "--checks", "debug-corrupted-pfaffian"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL") && text.contains("sign_frozen"));
}

#[test]
fn selected_checks_pass_and_write_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = certify(&[
        "verify",
        "--checks",
        "wedge-lemma,center-mu8",
        "--y",
        "-3,1,4",
        "--jobs",
        "2",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // serde_json::Value sorts keys
    let keys: Vec<&str> = report
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(
        keys,
        ["config", "elapsed_ms", "results", "status", "version"]
    );
    let ids: Vec<&str> = report["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids, ["center-mu8", "wedge-lemma"]);
    let first = report["results"][0].as_object().unwrap();
    let fields: Vec<&str> = first.keys().map(String::as_str).collect();
    assert_eq!(
        fields,
        [
            "elapsed_ms",
            "field",
            "id",
            "payload",
            "prime",
            "seed",
            "status"
        ]
    );
    assert!(first["payload"]
        .as_object()
        .unwrap()
        .values()
        .all(serde_json::Value::is_string));
    assert_eq!(report["config"]["y"], serde_json::json!([-3, 1, 4]));
}
