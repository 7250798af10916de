use std::fs;

use schober_cli::io::{canonicalize, QuintupleJson};
use schober_cli::{run, EXIT_CHECK, EXIT_INPUT, EXIT_PASS, EXIT_USAGE};

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["schober"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn wallcross_example() {
    assert_eq!(
        cli(&["wallcross", "--n", "2", "--k", "2", "--point", "2", "--lambda", "3"]),
        (0, "(2; 1)\n".into(), String::new())
    );
    let (code, out, _) = cli(&["wallcross", "--n", "3", "--point", "1/2,-3", "--lambda", "-2", "--json"]);
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["point"], serde_json::json!(["1/2", "-3"]));
    assert_eq!(v["lambda"], "3/4");
}

#[test]
fn map_example() {
    let (code, out, _) = cli(&["map", "--n", "3", "--k", "3"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out, "y1 -> y1\ny2 -> y2\ny3 -> (1 + y1 + y2)/y3\n");
    let (_, out, _) = cli(&["map", "--n", "2", "--k", "1", "--json"]);
    assert!(out.contains("\"(1 + y1)/(y1*y2)\""), "{}", out);
}

#[test]
fn compare_example() {
    let (code, out, _) = cli(&["compare", "--n", "2", "--k", "2", "--trials", "50", "--seed", "7"]);
    assert_eq!((code, out.as_str()), (EXIT_PASS, "50/50 PASS\n"));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["compare", "--n", "3", "--trials", "5", "--seed", "99", "--json"];
    assert_eq!(cli(&args), cli(&args));
    let args = [
        "verify-corollary",
        "--n",
        "3",
        "--k",
        "1",
        "--point",
        "2,1/3",
        "--lambda",
        "5",
    ];
    let a = cli(&args);
    assert_eq!(a.0, EXIT_PASS);
    assert_eq!(a, cli(&args));
}

#[test]
fn exit_codes_partition() {
    assert_eq!(cli(&["--help"]).0, EXIT_PASS);
    assert_eq!(cli(&["--version"]).0, EXIT_PASS);
    assert_eq!(cli(&[]).0, EXIT_USAGE);
    assert_eq!(cli(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(cli(&["map", "--n", "1"]).0, EXIT_USAGE);
    assert_eq!(cli(&["map", "--n", "3", "--k", "0"]).0, EXIT_USAGE);
    assert_eq!(cli(&["wallcross", "--lambda", "3"]).0, EXIT_USAGE);
    assert_eq!(cli(&["compare", "--trials", "0"]).0, EXIT_USAGE);
    assert_eq!(cli(&["mutate"]).0, EXIT_USAGE);
    assert_eq!(cli(&["wallcross", "--point", "x", "--lambda", "3"]).0, EXIT_INPUT);
    assert_eq!(cli(&["wallcross", "--point", "1,2", "--lambda", "3"]).0, EXIT_INPUT);
    assert_eq!(cli(&["wallcross", "--point", "-1", "--lambda", "3"]).0, EXIT_INPUT);
    assert_eq!(cli(&["wallcross", "--point", "2", "--lambda", "0"]).0, EXIT_INPUT);
    let (code, out, _) = cli(&["verify-corollary", "--point", "-1", "--lambda", "1"]);
    assert_eq!(code, EXIT_CHECK);
    assert!(out.starts_with("CHECK clean FAIL object is not clean"), "{}", out);
}

#[test]
fn mutate_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("q.json");
    fs::write(
        &q,
        r#"{"kind": "chekanov", "inertia": {"object": {"kind": "skyscraper", "point": ["2", "3"]}, "automorphism": "-1/2"}}"#,
    )
    .unwrap();
    let mq = dir.path().join("mq.json");
    let back = dir.path().join("back.json");
    let (code, out, _) = cli(&[
        "mutate",
        "--n",
        "3",
        "--in",
        q.to_str().unwrap(),
        "--out",
        mq.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_PASS, "{}", out);
    assert!(out.lines().all(|l| l.starts_with("CHECK ") && l.contains(" PASS ")));
    let (code, _, _) = cli(&[
        "mutate",
        "--n",
        "3",
        "--in",
        mq.to_str().unwrap(),
        "--out",
        back.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_PASS);
    // Saved files are canonical: save(load(f)) == f.
    for f in [&mq, &back] {
        let text = fs::read_to_string(f).unwrap();
        assert_eq!(canonicalize::<QuintupleJson>(&text).unwrap(), text);
    }
    let again = dir.path().join("again.json");
    cli(&[
        "mutate",
        "--n",
        "3",
        "--in",
        q.to_str().unwrap(),
        "--out",
        again.to_str().unwrap(),
    ]);
    assert_eq!(fs::read(&mq).unwrap(), fs::read(&again).unwrap());
}

#[test]
fn schema_and_validation_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let p = path.to_str().unwrap();

    fs::write(&path, r#"{"kind": "pentagon"}"#).unwrap();
    let (code, _, err) = cli(&["mutate", "--in", p]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("pentagon"), "{}", err);

    fs::write(&path, "{ not json").unwrap();
    assert_eq!(cli(&["mutate", "--in", p]).0, EXIT_INPUT);

    fs::write(&path, r#"{"kind": "chekanov", "inertia": {"object": {"kind": "skyscraper", "point": ["2", "q"]}, "automorphism": "1"}}"#).unwrap();
    let (code, _, err) = cli(&["mutate", "--n", "3", "--in", p]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains(".inertia.object.point[1]"), "{}", err);

    // Parses, but d² ≠ 0: a validation failure with the degree.
    fs::write(
        &path,
        r#"{"kind": "counit", "object": {"kind": "complex", "complex": {
            "num_vars": 1, "min_deg": 0, "ranks": [1, 1, 1],
            "differentials": [{"degree": 0, "matrix": [["1"]]}, {"degree": 1, "matrix": [["y1"]]}]}}}"#,
    )
    .unwrap();
    let (code, out, _) = cli(&["mutate", "--in", p]);
    assert_eq!(code, EXIT_CHECK);
    assert!(out.contains("CHECK d2 FAIL") && out.contains("degree 0"), "{}", out);

    assert_eq!(
        cli(&["mutate", "--in", dir.path().join("missing.json").to_str().unwrap()]).0,
        EXIT_INPUT
    );
}

#[test]
fn check_spherical_defaults_and_file() {
    let (code, out, _) = cli(&["check-spherical", "--n", "2"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out.lines().count(), 40);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    fs::write(
        &path,
        r#"{"schober": {"n": 3, "framing_index": 3}, "samples": [
            {"kind": "zero"}, {"kind": "structure-object"}, {"kind": "pants-structure-object"},
            {"kind": "skyscraper", "point": ["2", "1/3"]}, {"kind": "pants-skyscraper", "point": ["1", "-2"]}]}"#,
    )
    .unwrap();
    let (code, out, _) = cli(&["check-spherical", "--in", path.to_str().unwrap(), "--json"]);
    assert_eq!(code, EXIT_PASS, "{}", out);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 20);
}

#[test]
fn verify_corollary_from_inertia_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("obj.json");
    fs::write(
        &path,
        r#"{"object": {"kind": "skyscraper", "point": ["1", "1"]}, "automorphism": "1"}"#,
    )
    .unwrap();
    let (code, out, _) = cli(&["verify-corollary", "--n", "3", "--in", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS, "{}", out);
    assert!(out.contains("CHECK scalar-right PASS 3"), "{}", out);
    let out_path = dir.path().join("report.txt");
    cli(&[
        "verify-corollary",
        "--n",
        "3",
        "--in",
        path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(fs::read_to_string(&out_path).unwrap(), out);
}
