use std::fs;
use std::process::{Command, Output};

fn quotinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quotinv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn invariants_table_for_x_1_2() {
    let o = quotinv(&["invariants", "--family", "caseI", "-k", "1", "-l", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("⟨c², [B]⟩       −8"), "{out}");
    assert!(out.contains("η fixed points  ±1"), "{out}");
    assert!(out.contains("+1  4    X(4)") && out.contains("-1  4    X(4)"), "{out}");
}

#[test]
fn invariants_for_brieskorn() {
    let o = quotinv(&["invariants", "--family", "brieskorn", "-d", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("η fixed points  −1"), "{out}");
    assert!(out.contains("+1  4    Q(4)"), "{out}");
}

#[test]
fn invalid_descriptors_exit_2_naming_the_hypothesis() {
    for (args, needle) in [
        (vec!["invariants", "--family", "caseI", "-k", "2", "-l", "2"], "k must be odd"),
        (vec!["invariants", "--family", "caseII", "-k", "3", "-l", "3"], "l must be even"),
        (vec!["classify", "--family", "caseI", "-k", "3", "-l", "6"], "coprime"),
        (vec!["invariants", "--family", "brieskorn", "-d", "5"], "d must be even"),
        (vec!["invariants", "--family", "caseI", "-k", "3"], "-l"),
        (vec!["enumerate", "--type", "X5"], "unknown diffeomorphism type"),
        (vec!["enumerate", "--type", "X4", "--count", "0"], "count"),
        (vec!["enumerate", "--type", "X4", "--eps", "2"], "both"),
        (vec!["ring", "--builtin", "caseIII"], "caseIII"),
    ] {
        let o = quotinv(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains(needle), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn negative_k_is_accepted() {
    let o = quotinv(&["classify", "--family", "caseII", "-k", "-3", "-l", "4", "--eps", "-1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "family,k,l,d,epsilon,bordism,eta_num,eta_den,eta_sign_known,diffeo_type\ncaseII,-3,4,,-1,6,3,2,false,X6\n"
    );
}

#[test]
fn enumerate_examples() {
    let o = quotinv(&["enumerate", "--type", "X4", "--eps", "+1", "--count", "3", "--format", "csv"]);
    let out = stdout(&o);
    let etas: Vec<&str> = out.lines().skip(1).map(|l| l.split(',').nth(6).unwrap()).collect();
    assert_eq!(etas, ["1", "5", "9"]);

    let o = quotinv(&["enumerate", "--type", "Q0", "--count", "3", "--eps", "-1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let etas: Vec<i64> = v.as_array().unwrap().iter().map(|r| r["eta_num"].as_i64().unwrap()).collect();
    assert_eq!(etas, [0, -4, -8]);
    assert!(v.as_array().unwrap().iter().all(|r| r["eta_den"] == 1 && r["eta_sign_known"] == true));

    let o = quotinv(&["enumerate", "--type", "X4", "--count", "1", "--eps", "+1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rows: 1  distinct |η|: 1"), "{}", stdout(&o));
}

#[test]
fn machine_output_is_byte_identical_across_runs_and_parallelism() {
    for format in ["csv", "json"] {
        let args = ["enumerate", "--type", "X6", "--count", "40", "--format", format];
        let first = quotinv(&args).stdout;
        assert_eq!(first, quotinv(&args).stdout);
        let mut parallel = args.to_vec();
        parallel.push("--parallel");
        assert_eq!(first, quotinv(&parallel).stdout);
    }
}

#[test]
fn json_mirrors_csv_columns() {
    let o = quotinv(&["invariants", "--family", "caseI", "-k", "1", "-l", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let keys: Vec<&str> = v[0].as_object().unwrap().keys().map(String::as_str).collect();
    let mut expected = ["family", "k", "l", "d", "epsilon", "bordism", "eta_num", "eta_den", "eta_sign_known", "diffeo_type"];
    expected.sort();
    let mut keys = keys;
    keys.sort();
    assert_eq!(keys, expected);
}

#[test]
fn negative_parameters_may_collide_without_failing() {
    let o = quotinv(&["enumerate", "--type", "X0", "--count", "3", "--eps", "+1", "--allow-negative-r"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("X_{-9,2}") && out.contains("distinct |η|: 2"), "{out}");
}

#[test]
fn ring_evaluation() {
    let o = quotinv(&["ring", "--builtin", "caseI", "--eval", "(-2*u+v)^2"]);
    assert_eq!(stdout(&o), "normal form  −8·uv\npairing      −8\n");
    let o = quotinv(&["ring", "--builtin", "caseII", "--eval", "u*v"]);
    assert_eq!(stdout(&o), "normal form  −u²\npairing      −1\n");
    let o = quotinv(&["ring", "--builtin", "caseI", "--eval", "1"]);
    assert_eq!(stdout(&o), "normal form  1\npairing      0\n");
    let o = quotinv(&["ring", "--builtin", "caseI", "--eval", "u^2/3"]);
    assert_eq!(stdout(&o), "normal form  −1/3·uv\npairing      −1/3\n");
}

#[test]
fn ring_errors_report_positions() {
    let o = quotinv(&["ring", "--builtin", "caseI", "--eval", "u + * v"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1:5"), "{}", stderr(&o));
    let o = quotinv(&["ring", "--builtin", "caseI", "--eval", "w"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ring_from_presentation_file() {
    let dir = std::env::temp_dir().join(format!("quotinv-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let good = dir.join("torus.ring");
    fs::write(&good, "# product of spheres\ngenerators: a:2, b:2\nrelations: a^2, b^2\norientation: a*b\n").unwrap();
    let o = quotinv(&["ring", "--presentation", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("signature: 0 (positive 1, negative 1, nullity 0)"), "{}", stdout(&o));
    let o = quotinv(&["ring", "--presentation", good.to_str().unwrap(), "--eval", "(a+b)^2"]);
    assert_eq!(stdout(&o), "normal form  2·ab\npairing      2\n");

    let bad = dir.join("odd.ring");
    fs::write(&bad, "generators: a:3\norientation: a\n").unwrap();
    let o = quotinv(&["ring", "--presentation", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = quotinv(&["ring", "--presentation", dir.join("missing.ring").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = quotinv(&["ring", "--builtin", "caseI", "--presentation", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_passes_and_lists_the_eta_suite() {
    let o = quotinv(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("PASS  eta closed-form vs fixed-point"), "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_catches_a_sign_flip_in_sech() {
    let o = quotinv(&["verify", "--mutate", "inv-cosh-sign"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let line = out.lines().find(|l| l.starts_with("FAIL  eta closed-form vs fixed-point")).expect("eta suite fails");
    assert!(line.contains("(k, l) = ("), "{line}");
}
