use std::path::Path;

use serde_json::Value;

fn run_in(dir: &Path, args: &[&str]) -> (i32, String, String) {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_indtilt"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn setup() -> tempfile::TempDir {
    let d = tempfile::tempdir().unwrap();
    let p = d.path();
    std::fs::write(p.join("a4.grp"), "degree 4\n(0 1 2)\n(0 1)(2 3)\n").unwrap();
    std::fs::write(p.join("c3.grp"), "degree 3\n(0 1 2)\n").unwrap();
    std::fs::write(p.join("a4s4.pair"), "degree 4\nsmall\n(0 1 2)\n(0 1)(2 3)\nbig\n(0 1)\n(0 1 2 3)\n").unwrap();
    std::fs::write(p.join("c3s3.pair"), "degree 3\nsmall\n(0 1 2)\nbig\n(0 1 2)\n(0 1)\n").unwrap();
    std::fs::write(p.join("zero.rep"), "field 2 2\ngroup a4.grp\ndim 0\n").unwrap();
    std::fs::write(p.join("s.rep"), "field 2 2\ngroup a4.grp\ndim 1\n0:1\n1:0\n").unwrap();
    std::fs::write(p.join("b1.rep"), "field 2 2\ngroup c3.grp\ndim 1\n0:1\n").unwrap();
    std::fs::write(p.join("bad.rep"), "field 2 2\ngroup a4.grp\ndim 1\n0:1\n0:0\n").unwrap();
    std::fs::write(p.join("bad.grp"), "degree 4\n(0 1 2)\n(0 5)\n").unwrap();
    d
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn zero_module_is_support_tau_tilting() {
    let d = setup();
    let (code, out, _) = run_in(d.path(), &["check-stt", "--module", "zero.rep", "--format", "json"]);
    assert_eq!(code, 0);
    let r = json(&out);
    assert_eq!(r["verdicts"]["stt"], true);
    for key in ["command", "inputs", "seed", "verdicts", "witnesses", "version"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn input_errors_exit_2_with_positions() {
    let d = setup();
    let (code, _, err) = run_in(d.path(), &["check-rigid", "--module", "bad.rep"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 5") && err.contains("generator matrix 1"), "{err}");
    let (code, _, err) = run_in(d.path(), &["simples", "--group", "bad.grp"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3, column 1"), "{err}");
    let (code, _, _) = run_in(d.path(), &["simples", "--group", "missing.grp"]);
    assert_eq!(code, 2);
    let (code, _, _) = run_in(d.path(), &["no-such-command"]);
    assert_eq!(code, 2);
    let (code, _, _) = run_in(d.path(), &["check-stt", "--module", "s.rep", "--field", "3"]);
    assert_eq!(code, 2);
    let (code, _, _) = run_in(d.path(), &["thm1", "--group-pair", "c3s3.pair", "--module", "s.rep"]);
    assert_eq!(code, 2);
    let (code, _, _) = run_in(d.path(), &["check-stt", "--module", "s.rep", "--block", "4"]);
    assert_eq!(code, 2);
}

#[test]
fn group_commands() {
    let d = setup();
    let (code, out, _) = run_in(d.path(), &["simples", "--group", "a4.grp", "--format", "json"]);
    assert_eq!(code, 0);
    let r = json(&out);
    assert_eq!(r["verdicts"]["dims"], serde_json::json!([1, 1, 1]));
    assert_eq!(r["inputs"]["field"], "GF(2^2)");
    let (code, out, _) = run_in(d.path(), &["pims", "--group", "a4.grp", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["verdicts"]["sum_dim_products"], 12);
    let (code, out, _) = run_in(d.path(), &["blocks", "--group", "c3.grp", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["verdicts"]["count"], 3);
    // over GF(2) the two nontrivial kC3 simples merge into one
    let (code, out, _) = run_in(d.path(), &["simples", "--group", "c3.grp", "--field", "2,1", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["verdicts"]["dims"], serde_json::json!([1, 2]));
}

#[test]
fn module_commands() {
    let d = setup();
    let (code, out, _) = run_in(d.path(), &["tau", "--module", "s.rep", "--output", "tau.rep", "--format", "json"]);
    assert_eq!(code, 0);
    let r = json(&out);
    assert_eq!(r["verdicts"]["methods_agree"], true);
    let written = std::fs::read_to_string(d.path().join("tau.rep")).unwrap();
    assert!(written.contains(&format!("dim {}\n", r["verdicts"]["dim_omega2"])));
    // τ of a simple non-projective module is indecomposable
    let (code, out, _) = run_in(d.path(), &["check-stt", "--module", "tau.rep", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["verdicts"]["summand_classes"], 1);
    let (code, out, _) = run_in(d.path(), &["induce", "--group-pair", "a4s4.pair", "--module", "s.rep", "--format", "json"]);
    assert_eq!(code, 0);
    let r = json(&out);
    assert_eq!(r["verdicts"]["dim"], 2);
    assert_eq!(r["witnesses"]["decomposition_verified"], true);
}

#[test]
fn block_criterion_from_files() {
    let d = setup();
    let (code, out, _) = run_in(d.path(), &["thm2", "--group-pair", "c3s3.pair", "--module", "b1.rep", "--format", "json"]);
    assert_eq!(code, 0, "{out}");
    let r = json(&out);
    let (key, v) = r["verdicts"].as_object().unwrap().iter().find(|(k, _)| k.starts_with("big_")).unwrap();
    assert_eq!(v["agree"], true);
    assert_eq!(v["lhs"], true);
    assert_eq!(r["witnesses"][key]["inertial_order"], 3);
    let (code, _, _) = run_in(d.path(), &["thm2", "--group-pair", "c3s3.pair", "--module", "b1.rep", "--big-block", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn text_and_json_agree_on_verdicts() {
    let d = setup();
    let (_, text, _) = run_in(d.path(), &["thm1", "--group-pair", "a4s4.pair", "--module", "s.rep"]);
    let (_, js, _) = run_in(d.path(), &["thm1", "--group-pair", "a4s4.pair", "--module", "s.rep", "--format", "json"]);
    let r = json(&js);
    for (k, v) in r["verdicts"].as_object().unwrap() {
        assert!(text.contains(&format!("verdict {k}: {v}")), "{k}");
    }
}
