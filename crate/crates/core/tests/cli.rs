use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_witt-twist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn delta_of_toral_element() {
    let o = run(&["delta", "--p", "3", "--n", "1", "--eta", "1", "--alpha", "1", "--i", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "1 (x) x(1)D1 + x(1)D1 (x) 1 + 2*x(1)D1 (x) x(2)D1*t + x(1)D1 (x) x(2)D1^2*t^2\n"
    );
}

#[test]
fn antipode_of_toral_element() {
    let o = run(&["antipode", "--p", "3", "--n", "1", "--alpha", "1", "--i", "1", "--q", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2*x(1)D1 + 2*x(1)D1.x(2)D1*t\n");
}

#[test]
fn integral_delta() {
    let o = run(&["delta", "--n", "1", "--alpha", "1", "--i", "1", "--trunc", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "1 (x) x(1)D1 + x(1)D1 (x) 1 + x(1)D1 (x) x(2)D1*t + x(1)D1 (x) x(2)D1^2*t^2\n"
    );
}

#[test]
fn char0_delta_of_partial() {
    let o = run(&[
        "char0-delta", "--d0", "1,0", "--d0p", "1,0", "--gamma", "1,0", "--alpha", "0,0", "--i", "1", "--trunc", "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "1 (x) x(0,0)D1 + x(0,0)D1 (x) 1 + x(0,0)D1 (x) x(1,0)D1*t + x(0,0)D1 (x) x(1,0)D1^2*t^2\n"
    );
}

#[test]
fn dims_anchors() {
    let o = run(&["dims", "--p", "3", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "restricted basis: 27 (enumerated)\nquantized: 81 (enumerated)\n");
    let o = run(&["dims", "--p", "5", "--n", "1"]);
    assert_eq!(stdout(&o), "restricted basis: 3125 (enumerated)\nquantized: 15625 (enumerated)\n");
    let o = run(&["dims", "--p", "3", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("387420489 (structural)"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["dims", "--p", "4", "--n", "1"][..],
        &["dims", "--p", "2", "--n", "1"],
        &["delta", "--n", "1", "--alpha", "1", "--i", "1", "--q", "1"],
        &["delta", "--p", "3", "--n", "1", "--eta", "2", "--alpha", "1", "--i", "1"],
        &["delta", "--p", "3", "--n", "1", "--alpha", "3", "--i", "1"],
        &["delta", "--p", "3", "--n", "2", "--alpha", "1", "--i", "1"],
        &["verify", "--suite", "nonsense", "--p", "3", "--n", "1"],
        &["verify", "--p", "3"],
        &["verify", "--d0", "1,0"],
        &["char0-delta", "--d0", "1,0", "--d0p", "1,0", "--gamma", "0,1", "--alpha", "0,0", "--i", "1"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_writes_json_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = [
        "verify", "--p", "3", "--n", "1", "--eta", "1", "--q", "0", "--suite", "all", "--json",
        path.to_str().unwrap(),
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0), "{}", stdout(&first));
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);

    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["suite"], "all");
    assert_eq!(v["params"]["p"], 3);
    assert_eq!(v["params"]["n"], 1);
    assert_eq!(v["params"]["eta"], serde_json::json!([1]));
    assert_eq!(v["params"]["q"], 0);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] != "fail"));
    let keys: Vec<usize> = ["\"suite\"", "\"params\"", "\"checks\"", "\"elapsed_ms\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]), "key order in {text}");
}

#[test]
fn verify_char0_suite() {
    let o = run(&[
        "verify", "--suite", "closed-form", "--d0", "1,0", "--d0p", "1,0", "--gamma", "1,0", "--trunc", "4",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("pass       closed_form.coproduct"));
}
