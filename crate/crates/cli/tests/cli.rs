use std::process::{Command, Output};

use serde_json::Value;

const THREEFOLD: &str = "(x-1)*x*y+1";

fn susp(args: &[&str]) -> Output {
    susp_env(args, &[])
}

fn susp_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_susp"));
    cmd.args(args).env_remove("SUSP_PAIR_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).expect("valid JSON on stdout")
}

fn assert_error(out: &Output, expected: &str) -> Value {
    assert_eq!(code(out), 2, "stdout: {}", stdout(out));
    let v = json(out);
    let err = &v["error"];
    assert_eq!(err["code"], expected, "{v}");
    assert!(err["message"].as_str().is_some_and(|m| !m.is_empty()));
    v
}

#[test]
fn report_on_the_threefold() {
    let out = susp(&["--ring", "QQ[x,y]", "--f", THREEFOLD, "--json", "report"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    for key in [
        "f_prime",
        "hypersurface_smooth",
        "suspension_smooth",
        "factorial",
        "class_group",
    ] {
        assert!(v.get(key).is_some(), "missing {key} in {v}");
    }
    assert_eq!(v["f_prime"], true);
    assert_eq!(v["hypersurface_smooth"], true);
    assert_eq!(v["suspension_smooth"], true);
    assert_eq!(v["factorial"], true);

    let text = stdout(&susp(&["--ring", "QQ[x,y]", "--f", THREEFOLD, "report"]));
    assert!(text.contains("Cl(X): 0"), "{text}");
}

#[test]
fn class_group_of_a_square() {
    let out = susp(&["--ring", "QQ[x]", "--f", "x^2", "class-group"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("Cl(X) = Z/2"), "{}", stdout(&out));

    let v = json(&susp(&[
        "--ring",
        "QQ[x]",
        "--f",
        "x^2",
        "--json",
        "class-group",
    ]));
    for key in [
        "free_rank",
        "invariant_factors",
        "omega",
        "torsion_free",
        "absolute_irreducibility",
    ] {
        assert!(v.get(key).is_some(), "missing {key} in {v}");
    }
    assert_eq!(v["free_rank"], 0);
    assert_eq!(v["invariant_factors"], serde_json::json!([2]));
    assert_eq!(v["torsion_free"], false);
}

#[test]
fn class_group_table() {
    for (ring, f, group) in [
        ("QQ[x]", "x", "0"),
        ("QQ[x,y]", "x*y", "Z"),
        ("QQ[x,y]", "x^2*y^3", "Z"),
        ("QQ[x,y]", "x^2*y^2", "Z ⊕ Z/2"),
    ] {
        let out = susp(&["--ring", ring, "--f", f, "class-group"]);
        assert_eq!(code(&out), 0);
        let first = stdout(&out).lines().next().unwrap_or_default().to_owned();
        assert_eq!(first, format!("Cl(X) = {group}"), "f = {f}");
    }
}

#[test]
fn syntax_error_exits_two() {
    let out = susp(&["--ring", "QQ[x]", "--json", "nf", "x^^2"]);
    assert_error(&out, "syntax");

    let out = susp(&["--ring", "QQ[x]", "nf", "x^^2"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax"));
}

#[test]
fn uv_contracts_to_f() {
    let out = susp(&["--ring", "QQ[x]", "--f", "x", "nf", "u*v"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "x");

    let v = json(&susp(&[
        "--ring", "QQ[x]", "--f", "x", "--json", "mul", "u", "v",
    ]));
    assert_eq!(v["product"], "x");
}

#[test]
fn leading_minus_is_an_expression() {
    let out = susp(&["--ring", "QQ[x]", "mul", "-x", "-1"]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "x"));
    let out = susp(&["--ring", "QQ[x]", "nf", "-x^2 + 1", "--json"]);
    assert_eq!(json(&out)["normal_form"], "-x^2 + 1");
}

#[test]
fn nf_in_a_two_level_tower() {
    let out = susp(&[
        "--ring",
        "QQ[x]",
        "--f",
        "x",
        "--f",
        "u1 + 1",
        "nf",
        "u1*v1 + u2*v2",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "u1 + x + 1");
}

#[test]
fn factor_in_the_suspension() {
    let v = json(&susp(&[
        "--ring", "QQ[x]", "--f", "x", "--json", "factor", "x + u",
    ]));
    let factors: Vec<&str> = v["factors"]
        .as_array()
        .expect("factor list")
        .iter()
        .map(|f| f["factor"].as_str().expect("factor string"))
        .collect();
    assert_eq!(factors, ["u", "1 + v"]);
    assert_eq!(v["unit"], "1");
}

#[test]
fn factor_in_the_base_ring() {
    let out = susp(&["--ring", "QQ[x,y]", "--json", "factor", "x^2 - y^2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["factors"].as_array().map(Vec::len), Some(2), "{v}");
}

#[test]
fn non_ufd_reports_a_witness() {
    let out = susp(&["--ring", "QQ[x,y]", "--f", "x*y", "--json", "factor", "u"]);
    let v = assert_error(&out, "not_ufd");
    assert!(v["error"]["witness"]["factors"].is_array(), "{v}");
}

#[test]
fn predicates_use_exit_code_one() {
    let out = susp(&["--ring", "QQ[x]", "--f", "x", "is-unit", "u"]);
    assert_eq!((code(&out), stdout(&out).trim()), (1, "false"));

    let out = susp(&["--ring", "QQ[x]", "--f", "x", "--json", "is-unit", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["unit"], true);

    let out = susp(&["--ring", "QQ[x]", "--f", "x", "is-prime", "1 + v"]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "true"));

    let out = susp(&["--ring", "QQ[x,y]", "--f", "x*y", "is-prime"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("f prime: false"));

    let out = susp(&["--ring", "QQ[x,y]", "smooth", "x*y"]);
    assert_eq!(code(&out), 1);
    let out = susp(&["--ring", "QQ[x,y]", "smooth", "x^2 + y^3 + 1"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn usage_errors() {
    assert_error(&susp(&["--json", "bogus"]), "usage");
    assert_error(&susp(&["--json", "nf", "x"]), "usage");
    assert_error(
        &susp(&["--ring", "QQ[x]", "--json", "nf", "z"]),
        "unknown_variable",
    );
    assert_error(
        &susp(&["--ring", "QQ[x]", "--f", "1", "--json", "nf", "x"]),
        "unit_f",
    );
    assert_eq!(code(&susp(&["--help"])), 0);
}

#[test]
fn pair_budget_override() {
    let args = ["--ring", "QQ[x,y]", "--json", "smooth", "x^2 + y^3 + x*y"];
    assert_error(
        &susp_env(&args, &[("SUSP_PAIR_BUDGET", "0")]),
        "resource_limit",
    );
    assert_error(
        &susp_env(&args, &[("SUSP_PAIR_BUDGET", "many")]),
        "invalid_environment",
    );
    assert_eq!(code(&susp_env(&args, &[("SUSP_PAIR_BUDGET", "100000")])), 1);
}

#[test]
fn smith_normal_form() {
    let out = susp(&["--json", "snf", "[[2,4,4],[-6,6,12],[10,-4,-16]]"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["diagonal"], serde_json::json!([2, 6, 12]));
    assert!(v["u"].is_array() && v["v"].is_array() && v["d"].is_array());

    let big = "123456789012345678901234567890";
    let v = json(&susp(&["--json", "snf", &format!(r#"[["{big}"]]"#)]));
    assert_eq!(v["diagonal"], serde_json::json!([big]));

    assert_error(&susp(&["--json", "snf", "[[1,2],[3]]"]), "invalid_matrix");
    assert_error(&susp(&["--json", "snf", "not json"]), "invalid_matrix");
}

#[test]
fn fitting_ideals() {
    let out = susp(&["--json", "fitting", r#"[["y1","0"],["0","y2"]]"#]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["smallest_unit_fitting_index"], 2);
    assert_eq!(
        v["fitting_ideals"][0]["generators"],
        serde_json::json!(["y1*y2"])
    );

    let v = json(&susp(&["--json", "fitting", r#"[["y1 + 1","-y1"]]"#]));
    assert_eq!(v["smallest_unit_fitting_index"], 1);

    let out = susp(&["fitting"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("verdict: inconclusive"));
}

#[test]
fn verify_paper_is_deterministic() {
    let a = susp(&["verify-paper"]);
    let b = susp(&["verify-paper"]);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).trim_end().ends_with("checks passed"));
    assert!(!stdout(&a).contains("FAIL"));

    let j1 = susp(&["--json", "verify-paper"]);
    let j2 = susp(&["--json", "verify-paper"]);
    assert_eq!(j1.stdout, j2.stdout);
    assert_eq!(json(&j1)["passed"], true);
}
