use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn frieze(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frieze"))
        .args(args)
        .env_remove("FRIEZE_BUDGET_BITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn a2_orbit_repeats_after_five_points() {
    let o = frieze(&["orbit", "--quiver", &data("a2.json"), "--start", "1,1", "--steps", "5"]);
    assert!(o.status.success());
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let points: Vec<Vec<&str>> = lines
        .iter()
        .map(|l| l["point"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect())
        .collect();
    assert_eq!(
        points,
        vec![
            vec!["1", "1"],
            vec!["2", "3"],
            vec!["2", "1"],
            vec!["1", "2"],
            vec!["3", "2"],
            vec!["1", "1"]
        ]
    );
    assert_eq!(lines[5]["t"], 5);
}

#[test]
fn kronecker_orbit_prefix() {
    let o = frieze(&["orbit", "--quiver", &data("kronecker.json"), "--start", "1,1", "--steps", "2", "--pretty"]);
    assert_eq!(stdout(&o), "t=0 (1,1)\nt=1 (2,5)\nt=2 (13,34)\n");
}

#[test]
fn zero_start_is_not_generic() {
    let o = frieze(&["orbit", "--quiver", &data("a2.json"), "--start", "0,1", "--steps", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("zero"));
}

#[test]
fn bad_inputs_exit_one() {
    for args in [
        vec!["orbit", "--quiver", "missing.json"],
        vec!["classify", "--quiver", &data("cyclic.json")],
        vec!["orbit", "--quiver", &data("a2.json"), "--start", "1,1,1"],
        vec!["invariant", "--quiver", &data("a2.json"), "--h", "x1 +"],
        vec!["reproduce", "atilden", "--n", "2"],
        vec!["vanish", "--quiver", &data("a2.json"), "--stride", "0"],
    ] {
        let o = frieze(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn bit_budget_comes_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_frieze"))
        .args(["orbit", "--quiver", &data("kronecker.json"), "--steps", "10"])
        .env("FRIEZE_BUDGET_BITS", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = frieze(&["orbit", "--quiver", &data("kronecker.json"), "--steps", "10", "--bit-budget", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn kronecker_invariant_has_period_one() {
    let o = frieze(&["invariant", "--quiver", &data("kronecker.json"), "--h", "(x1^2+x2^2+1)/(x1*x2)"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["period"], 1);
    assert_eq!(v["constants"], serde_json::json!(["3"]));
    let terms = v["equations"][0][0]["terms"].as_array().unwrap();
    let pairs: Vec<(Vec<i64>, String)> = terms
        .iter()
        .map(|t| {
            let e = t["exp"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
            (e, t["coef"].as_str().unwrap().to_string())
        })
        .collect();
    assert_eq!(
        pairs,
        vec![
            (vec![2, 0], "1".into()),
            (vec![1, 1], "-3".into()),
            (vec![0, 2], "1".into()),
            (vec![0, 0], "1".into())
        ]
    );
}

#[test]
fn non_invariant_function_exits_three() {
    let o = frieze(&["invariant", "--quiver", &data("kronecker.json"), "--h", "x1", "--k-max", "4"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn affine_a2_components_and_certificate() {
    let o = frieze(&["components", "--quiver", &data("atilde2.json"), "--degree", "2"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["m"], 2);
    assert_eq!(v["verified_cycle"], true);
    assert_eq!(v["classes"][0]["dim_estimate"], 1);
    assert_eq!(v["classes"][1]["residue"], 1);

    let o = frieze(&["invariant", "--quiver", &data("atilde2.json"), "--h", "(x1+x3)/x2", "--pretty"]);
    let text = stdout(&o);
    assert!(text.contains("period 2"));
    assert!(text.contains("constants (2, 3)"));
    assert!(text.contains("F[0][0] = x1 - 2*x2 + x3"));
}

#[test]
fn classify_reports_relabelling() {
    let o = frieze(&["classify", "--quiver", &data("relabel.json")]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["kind"], "finite");
    assert_eq!(v["diagram"], "A3");
    assert_eq!(v["relabeling"], serde_json::json!([3, 1, 2]));
    assert!(String::from_utf8_lossy(&o.stderr).contains("relabelled"));
}

#[test]
fn symmetry_pair_of_double_path() {
    let o = frieze(&["symmetry", "--quiver", &data("a3double.json"), "--pretty"]);
    assert_eq!(
        stdout(&o),
        "sink 1 source 3\nh = x1^-1*x2^2*x3^-1 + x1^-1*x3^-1\nF0 = -2*x1*x3 + x2^2 + 1\nF1 = -x1*x3 + 2*x2^2 + 2\nperiod 2\n"
    );
    let o = frieze(&["symmetry", "--quiver", &data("atilde2.json")]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn vanish_finds_the_markov_quadric() {
    let o = frieze(&["vanish", "--quiver", &data("kronecker.json"), "--degree", "2", "--pretty"]);
    let text = stdout(&o);
    assert!(text.starts_with("degree <= 2, dimension 1"));
    assert!(text.contains("x1^2 - 3*x1*x2 + x2^2 + 1"));
}

#[test]
fn reproduce_suite_passes() {
    for args in [
        vec!["reproduce", "a2"],
        vec!["reproduce", "kronecker"],
        vec!["reproduce", "a3double"],
        vec!["reproduce", "atilde2"],
        vec!["reproduce", "atilden", "--n", "3"],
        vec!["reproduce", "atilden", "--n", "4"],
        vec!["reproduce", "qa5"],
    ] {
        let o = frieze(&args);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let v = json(&o);
        assert_eq!(v["passed"], true);
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    }
}

#[test]
fn atilden_constants() {
    let v = json(&frieze(&["reproduce", "atilden", "--n", "4"]));
    assert_eq!(v["certificate"]["period"], 4);
    assert_eq!(v["certificate"]["constants"], serde_json::json!(["2", "3", "2", "2"]));
}

#[test]
fn output_is_deterministic() {
    let a = frieze(&["reproduce", "atilde2"]);
    let b = frieze(&["reproduce", "atilde2"]);
    assert_eq!(a.stdout, b.stdout);
}
