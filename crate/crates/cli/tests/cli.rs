use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_planepoly"))
        .args(args)
        .env_remove("PLANEPOLY_BUDGET")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            pipe.write_all(s.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn construct_pipes_into_verify() {
    let built = run(&["construct", "pd", "--d", "7"], None);
    assert_eq!(code(&built), 0);
    let v = run(&["--json", "verify", "-"], Some(&stdout(&built)));
    assert_eq!(code(&v), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&v)).unwrap();
    assert_eq!(report["in_h"], true);
    assert_eq!(report["degree"], "7");
    assert_eq!(report["num_terms"], 5);
}

#[test]
fn verify_reports_j_without_p() {
    let shifted = stdout(&run(
        &["--json", "construct", "eq2", "--n", "3", "--d", "5"],
        None,
    ));
    let v = run(&["verify", "-"], Some(&shifted));
    assert_eq!(code(&v), 1);
    let out = stdout(&v);
    assert!(out.contains("in_J: true"));
    assert!(out.contains("in_P: false"));
}

#[test]
fn json_output_round_trips() {
    let j1 = stdout(&run(&["--json", "q", "-"], Some("x + x*y + x*y^2 + y^3")));
    let v: serde_json::Value = serde_json::from_str(&j1).unwrap();
    assert_eq!(v["in_j"], true);
    let text = "x^3 + 3*x*y + y^3";
    let json = stdout(&run(&["--json", "construct", "pd", "--d", "3"], None));
    let again = stdout(&run(&["--json", "measure", "-"], Some(&json)));
    let from_text = stdout(&run(&["--json", "measure", "-"], Some(text)));
    assert_eq!(again, from_text);
}

#[test]
fn float_display_only() {
    let o = run(
        &["--float", "q", "-"],
        Some("x + y + 1/2 x z + 1/2 y z + 1/2 z^2 + 1/2 z"),
    );
    let out = stdout(&o);
    assert!(out.contains("0.5"), "{out}");
}

#[test]
fn wcheck_verdicts() {
    let w = run(&["wcheck", "-"], Some("x + x y + x y^2 + y^3"));
    assert_eq!(code(&w), 0);
    assert!(stdout(&w).starts_with("IN_W"));
    let not = run(
        &["wcheck", "--budget", "5", "-"],
        Some("x^3 + 3x y + 3x z + y^3 + 3y^2 z + 3y z^2 + z^3"),
    );
    assert_eq!(code(&not), 1);
    assert!(stdout(&not).starts_with("NOT_IN_W"));
    let outside = run(&["--vars", "2", "wcheck", "-"], Some("x^2"));
    assert_eq!(code(&outside), 1);
}

#[test]
fn chain_round_trip() {
    let json = stdout(&run(&["--json", "chain", "-"], Some("x^3 + 3 x y + y^3")));
    let replayed = run(&["chain", "-"], Some(&json));
    assert_eq!(code(&replayed), 0);
    let out = stdout(&replayed);
    assert!(out.contains("result: x^3 + y^3 + 3*x*y"), "{out}");
    assert!(out.contains("whitney: false"));
}

#[test]
fn pullback_maps() {
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("p3.txt");
    std::fs::write(&q, "x^3 + 3 x y + y^3").unwrap();
    let spec = format!("h2:{}", q.display());
    let o = run(&["pullback", "-", "--map", &spec], Some("x + y + z"));
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "x^3 + y^3 + 3*x*y");
    let v = run(&["pullback", "-", "--map", "veronese"], Some("x + y + z"));
    assert_eq!(stdout(&v).trim(), "x^2 + 2*x*y + y^2");
    let l = run(
        &["pullback", "-", "--map", "linear:1,2/3"],
        Some("x^2 + 2 x y + y^2 + z"),
    );
    assert_eq!(code(&l), 0);
    let bad = run(&["pullback", "-", "--map", "nope"], Some("x + y"));
    assert_eq!(code(&bad), 3);
}

#[test]
fn bounds_table_and_json() {
    let o = run(&["bounds", "-"], Some("x^3 + 3 x y + y^3"));
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("theorem0"));
    let j = run(
        &["--json", "bounds", "-"],
        Some("x + y + z^2 + x z + y^2 z + y z^2 + x y z (x + y + z)"),
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(v["N"], 9);
    let not_h = run(&["--vars", "2", "bounds", "-"], Some("x^2"));
    assert_eq!(code(&not_h), 1);
}

#[test]
fn input_errors_exit_three() {
    assert_eq!(code(&run(&["verify", "-"], Some("x + * y"))), 3);
    assert_eq!(code(&run(&["verify", "/definitely/missing"], None)), 3);
    assert_eq!(code(&run(&["construct", "pd", "--d", "4"], None)), 3);
    assert_eq!(code(&run(&["frobnicate"], None)), 3);
    assert_eq!(code(&run(&["--vars", "2", "verify", "-"], Some("z"))), 3);
    assert_eq!(
        code(&run(
            &["search", "--n", "2", "--d", "3", "--budget", "lp=x"],
            None
        )),
        3
    );
}

#[test]
fn search_exit_codes_and_recheck() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    let cert_s = cert.to_str().unwrap();
    let found = run(&["search", "--n", "2", "--d", "5", "--out", cert_s], None);
    assert_eq!(code(&found), 0);
    assert!(stdout(&found).contains("min_terms: 4"));
    assert_eq!(code(&run(&["recheck", cert_s], None)), 0);

    let none = run(
        &[
            "search",
            "--n",
            "3",
            "--d",
            "3",
            "--exact-terms",
            "6",
            "--out",
            cert_s,
        ],
        None,
    );
    assert_eq!(code(&none), 1);
    assert_eq!(code(&run(&["recheck", cert_s], None)), 0);

    let partial = run(&["search", "--n", "2", "--d", "5", "--budget", "2"], None);
    assert_eq!(code(&partial), 2);

    // environment budget applies unless a flag overrides it
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_planepoly"));
    let env_budget = cmd
        .args(["search", "--n", "2", "--d", "5"])
        .env("PLANEPOLY_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(env_budget.status.code(), Some(2));
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_planepoly"));
    let flag_wins = cmd
        .args(["search", "--n", "2", "--d", "5", "--budget", "unlimited"])
        .env("PLANEPOLY_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(flag_wins.status.code(), Some(0));
}

#[test]
fn recheck_rejects_perturbed_witness() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    let cert_s = cert.to_str().unwrap();
    assert_eq!(
        code(&run(
            &["search", "--n", "2", "--d", "3", "--out", cert_s],
            None
        )),
        0
    );
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    let level = v["levels"].as_array_mut().unwrap().last_mut().unwrap();
    level["witnesses"][0]["polynomial"]["terms"][0]["c"] = serde_json::json!("5/4");
    std::fs::write(&cert, serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(code(&run(&["recheck", cert_s], None)), 1);
    std::fs::write(&cert, "{not json").unwrap();
    assert_eq!(code(&run(&["recheck", cert_s], None)), 3);
}
