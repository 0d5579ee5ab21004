use std::io::Write;
use std::process::{Command, Output, Stdio};

fn eulab(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_eulab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn eulab");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(stdout(o).trim()).unwrap()
}

const A4_X: &str = r#"[{"coeff":"1","exponents":{}},{"coeff":"11","exponents":{"x":1}},
    {"coeff":"11","exponents":{"x":2}},{"coeff":"1","exponents":{"x":3}}]"#;

#[test]
fn verify_examples() {
    for args in [
        &["verify", "diaconis", "--max-n", "6"][..],
        &["verify", "frobenius", "--max-n", "1"],
        &["verify", "mainthm-esym", "--max-n", "5", "--k", "3"],
    ] {
        let o = eulab(args, None);
        assert_eq!(code(&o), 0, "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).contains(" pass "));
    }
}

#[test]
fn verify_all_passes_at_defaults() {
    let o = eulab(&["verify", "all", "--json", "--no-timing"], None);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["passed"], 22);
    assert_eq!(v["total"], 22);
    let names: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["identity"].as_str().unwrap())
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn verify_output_is_deterministic_without_timing() {
    let args = ["verify", "all", "--max-n", "5", "--no-timing"];
    assert_eq!(eulab(&args, None).stdout, eulab(&args, None).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&eulab(&["verify", "no-such-identity"], None)), 2);
    assert_eq!(code(&eulab(&["verify", "frobenius", "--k", "2"], None)), 2);
    assert_eq!(code(&eulab(&["verify"], None)), 2);
    assert_eq!(
        code(&eulab(
            &["table", "eulerian", "--n", "3", "--k", "2", "--format", "csv"],
            None
        )),
        2
    );
    assert_eq!(
        code(&eulab(
            &["table", "kth-order", "--n", "3", "--format", "csv"],
            None
        )),
        2
    );
    // size guards name themselves
    let o = eulab(&["verify", "frobenius", "--max-n", "11"], None);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("size guard"));
    assert_eq!(
        code(&eulab(
            &["table", "trivariate", "--n", "11", "--format", "csv"],
            None
        )),
        3
    );
    assert_eq!(
        code(&eulab(
            &["table", "gamma-nij", "--n", "13", "--format", "csv"],
            None
        )),
        3
    );
    // parse and precondition failures
    assert_eq!(code(&eulab(&["expand", "gamma"], Some("not json"))), 4);
    let lopsided = r#"[{"coeff":"1","exponents":{}},{"coeff":"2","exponents":{"x":1}}]"#;
    assert_eq!(code(&eulab(&["expand", "gamma"], Some(lopsided))), 4);
    let asym = r#"[{"coeff":"1","exponents":{"x":1}},{"coeff":"1","exponents":{"y":2}}]"#;
    assert_eq!(code(&eulab(&["expand", "esym"], Some(asym))), 4);
}

#[test]
fn second_order_csv() {
    let o = eulab(
        &["table", "second-order", "--n", "5", "--format", "csv"],
        None,
    );
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("n,k,value\n"));
    let row5: Vec<&str> = out
        .lines()
        .filter(|l| l.starts_with("5,"))
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(row5, ["\"1\"", "\"52\"", "\"328\"", "\"444\"", "\"120\""]);
}

#[test]
fn eulerian_row_one() {
    let o = eulab(&["table", "eulerian", "--n", "1", "--format", "csv"], None);
    assert_eq!(stdout(&o), "n,k,value\n1,0,\"1\"\n");
    let v = json(&eulab(
        &["table", "eulerian", "--n", "1", "--format", "json"],
        None,
    ));
    assert_eq!(
        v["rows"][0]["poly"],
        serde_json::json!([{"coeff": "1", "exponents": {}}])
    );
}

#[test]
fn gamma_nij_entry() {
    let o = eulab(&["table", "gamma-nij", "--n", "4", "--format", "csv"], None);
    assert!(stdout(&o).lines().any(|l| l == "4,0,2,\"4\""));
    let v = json(&eulab(
        &["table", "gamma-nij", "--n", "4", "--format", "json"],
        None,
    ));
    assert!(v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["n"] == 4 && r["i"] == 0 && r["j"] == 2 && r["value"] == "4"));
}

#[test]
fn big_values_are_quoted() {
    let o = eulab(&["table", "eulerian", "--n", "25", "--format", "csv"], None);
    assert!(stdout(&o)
        .lines()
        .any(|l| l.starts_with("25,12,\"") && l.len() > 30));
}

#[test]
fn every_table_serializes_deterministically() {
    for (name, k) in [
        ("eulerian", None),
        ("trivariate", None),
        ("second-order", None),
        ("kth-order", Some("3")),
        ("gamma-nij", None),
        ("gamma-histogram", None),
        ("andre", None),
    ] {
        for format in ["json", "csv"] {
            let mut args = vec!["table", name, "--n", "4", "--format", format];
            if let Some(k) = k {
                args.extend(["--k", k]);
            }
            let a = eulab(&args, None);
            assert_eq!(code(&a), 0, "{args:?}");
            assert_eq!(a.stdout, eulab(&args, None).stdout, "{args:?}");
        }
    }
}

#[test]
fn expand_examples() {
    let v = json(&eulab(&["expand", "gamma"], Some(A4_X)));
    assert_eq!(v["basis"], "gamma");
    assert_eq!(
        v["coeffs"],
        serde_json::json!([{"index": [0], "coeff": "1"}, {"index": [1], "coeff": "8"}])
    );
    let cube = r#"[{"coeff":"1","exponents":{}},{"coeff":"3","exponents":{"x":1}},
        {"coeff":"3","exponents":{"x":2}},{"coeff":"1","exponents":{"x":3}}]"#;
    let v = json(&eulab(&["expand", "gamma"], Some(cube)));
    assert_eq!(
        v["coeffs"],
        serde_json::json!([{"index": [0], "coeff": "1"}, {"index": [1], "coeff": "0"}])
    );

    let table = json(&eulab(
        &["table", "trivariate", "--n", "4", "--format", "json"],
        None,
    ));
    let a4 = table["rows"][3]["poly"].to_string();
    let v = json(&eulab(&["expand", "partial-gamma"], Some(&a4)));
    let nonzero: Vec<_> = v["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["coeff"] != "0")
        .cloned()
        .collect();
    assert_eq!(
        nonzero,
        [
            serde_json::json!({"index": [0, 1], "coeff": "1"}),
            serde_json::json!({"index": [1, 1], "coeff": "3"}),
            serde_json::json!({"index": [3, 0], "coeff": "1"}),
        ]
    );
}

#[test]
fn expand_frobenius_and_esym() {
    // x A_3(x) = x + 4x^2 + x^3 = x(1-x)^2 + 6x^2(1-x) + 6x^3
    let xa3 = r#"[{"coeff":"1","exponents":{"x":1}},{"coeff":"4","exponents":{"x":2}},{"coeff":"1","exponents":{"x":3}}]"#;
    let v = json(&eulab(&["expand", "frobenius"], Some(xa3)));
    let cs: Vec<&str> = v["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["coeff"].as_str().unwrap())
        .collect();
    assert_eq!(cs, ["1", "6", "6"]);

    let table = json(&eulab(
        &[
            "table",
            "kth-order",
            "--n",
            "2",
            "--k",
            "2",
            "--format",
            "json",
        ],
        None,
    ));
    let c2 = table["rows"][1]["poly"].to_string();
    let v = json(&eulab(&["expand", "esym"], Some(&c2)));
    assert_eq!(
        v["coeffs"],
        serde_json::json!([{"index": [0, 1, 1], "coeff": "1"}])
    );
}
