//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use indtilt_core::blockdec::{alg_conjugate, embed, verify_idempotents};
use indtilt_core::exactfield::{Field, Scalar};
use indtilt_core::format::{write_pair, write_rep};
use indtilt_core::grouprep::{restrict, Budget};
use indtilt_core::meataxe::isomorphism;
use indtilt_core::permgroup::standard::{alternating4, cyclic3, symmetric3, symmetric4};
use indtilt_core::permgroup::Transversal;
use indtilt_core::taucalc::{GroupAlgebra, TauMethod};
use indtilt_core::theoremlab::{a4s4_pair, Corpus, GroupPair};
use serde_json::Value;

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["indtilt"];
    full.extend_from_slice(args);
    let code = indtilt::run(full, &mut out, &mut err);
    (code, String::from_utf8(out).expect("utf-8 report"))
}

fn run_bin(args: &[&str], dir: &Path) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_indtilt"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn json(text: &str) -> Result<Value, String> {
    serde_json::from_str(text).map_err(|e| format!("report is not JSON: {e}"))
}

fn gf4() -> Field {
    Field::new(2, 2).unwrap()
}

fn c3s3() -> GroupPair {
    GroupPair::new(Arc::new(cyclic3()), Arc::new(symmetric3()), gf4(), Budget::default()).unwrap()
}

fn example_report() -> Result<(Value, Duration), String> {
    let t = Instant::now();
    let (code, out) = run_cli(&["example-a4s4", "--format", "json"]);
    let elapsed = t.elapsed();
    check(code == 0, format!("example-a4s4 exited with {code}"))?;
    Ok((json(&out)?, elapsed))
}

fn expect_bool(v: &Value, key: &str, want: bool) -> Result<(), String> {
    match v["verdicts"][key].as_bool() {
        Some(b) if b == want => Ok(()),
        other => Err(format!("{key}: expected {want}, got {other:?}")),
    }
}

fn criterion1() -> Outcome {
    let (v, elapsed) = example_report()?;
    check(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    check(v["verdicts"]["small_simple_dims"] == serde_json::json!([1, 1, 1]), "kA4 simples")?;
    check(v["verdicts"]["big_simple_dims"] == serde_json::json!([1, 2]), "kS4 simples")?;
    for (k, want) in [
        ("sigma_S_iso_T", true),
        ("sigma_T_iso_S", true),
        ("M_invariant", true),
        ("M_stt", true),
        ("Ind_M_stt", true),
        ("N1_stt", true),
        ("N2_stt", true),
        ("N1_invariant", false),
        ("N2_invariant", false),
        ("N1_orbit_add_M", true),
        ("N2_orbit_add_M", true),
        ("Ind_N1_stt", true),
        ("Ind_N2_stt", true),
    ] {
        expect_bool(&v, k, want)?;
    }
    Ok(format!("example-a4s4 reproduced in {:.2}s", elapsed.as_secs_f64()))
}

fn criterion2() -> Outcome {
    let (v, _) = example_report()?;
    for (k, want) in [
        ("ST_tau_rigid", true),
        ("ST_stt", false),
        ("ST_orbit_stt", true),
        ("Ind_ST_stt", true),
        ("ST_in_rig_group", true),
        ("ST_in_sta_group", false),
        ("ST_in_rig_block", true),
        ("ST_in_sta_block", false),
    ] {
        expect_bool(&v, k, want)?;
    }
    // the same verdicts from files through the remark and thm1 commands
    let p = a4s4_pair(Budget::default()).map_err(|e| e.to_string())?;
    let t = p.small.simples();
    let st = p.stacked(t.simple(1), t.simple(2)).map_err(|e| e.to_string())?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    std::fs::write(dir.path().join("pair.pair"), write_pair(p.small.group(), p.big.group())).unwrap();
    std::fs::write(dir.path().join("a4.grp"), indtilt_core::format::write_group(p.small.group())).unwrap();
    std::fs::write(dir.path().join("st.rep"), write_rep(&st, "a4.grp")).unwrap();
    let (code, out) = run_bin(
        &["remark", "--group-pair", "pair.pair", "--module", "st.rep", "--format", "json"],
        dir.path(),
    );
    check(code == 0, format!("remark exited with {code}"))?;
    let r = json(&String::from_utf8_lossy(&out))?;
    expect_bool(&r, "in_rig_group", true)?;
    expect_bool(&r, "in_sta_group", false)?;
    let (code, out) = run_bin(
        &["thm1", "--group-pair", "pair.pair", "--module", "st.rep", "--format", "json"],
        dir.path(),
    );
    check(code == 0, format!("thm1 exited with {code}"))?;
    let r = json(&String::from_utf8_lossy(&out))?;
    expect_bool(&r, "lhs", true)?;
    expect_bool(&r, "rhs", true)?;
    Ok("[S/T] is τ-rigid, not support τ-tilting, with support τ-tilting orbit sum and induction; rigid set only".into())
}

/// Direct check of every member, plus agreement with the class engine.
fn universality(pair: &GroupPair, corpus: &Corpus) -> Result<usize, String> {
    let verdicts = corpus
        .sweep(|m| pair.check_theorem1(&corpus.module(pair, m)?))
        .map_err(|e| e.to_string())?;
    for (m, v) in corpus.members.iter().zip(&verdicts) {
        check(v.agree, format!("disagreement on {}", corpus.describe(m)))?;
        let e = corpus.verdicts(m);
        check(
            (e.thm1_lhs, e.thm1_rhs) == (v.lhs, v.rhs),
            format!("class engine differs on {}", corpus.describe(m)),
        )?;
    }
    Ok(verdicts.len())
}

fn criterion3() -> Outcome {
    let a = a4s4_pair(Budget::default()).map_err(|e| e.to_string())?;
    let ca = Corpus::build(&a, 3).map_err(|e| e.to_string())?;
    let c = c3s3();
    let cc = Corpus::build(&c, 3).map_err(|e| e.to_string())?;
    let na = universality(&a, &ca)?;
    let nc = universality(&c, &cc)?;
    check(na >= 40, format!("A4 ⊴ S4 corpus has {na} modules"))?;
    check(na + nc >= 40, "combined corpus below 40 modules")?;
    Ok(format!(
        "agree on all {na} A4 ⊴ S4 modules and all {nc} C3 ⊴ S3 modules ({} total; the C3 corpus covers every additive class of kC3-modules)",
        na + nc
    ))
}

fn criterion4() -> Outcome {
    let q = c3s3();
    let f = q.field();
    let (g, gg) = (q.small.group().clone(), q.big.group().clone());
    check(q.small_blocks.len() == 3, "kC3 block count")?;
    check(q.big_blocks.len() == 2, "kS3 block count")?;
    let two = q.big.simples().dims().iter().position(|&d| d == 2).ok_or("no 2-dim simple")?;
    let defect0 = q
        .big_blocks
        .iter()
        .position(|b| b.simple_labels == [two])
        .ok_or("no defect-0 block")?;
    let corpus = Corpus::build(&q, 3).map_err(|e| e.to_string())?;
    let mut members = 0;
    for (b, block) in q.small_blocks.iter().enumerate() {
        let cover = indtilt_core::blockdec::covering_blocks(block, &g, &gg, &q.big_blocks, f).map_err(|e| e.to_string())?;
        if !block.is_principal() {
            check(cover == [defect0], format!("block {b} is not covered by the defect-0 block alone"))?;
        }
        for bb in cover {
            let bp = q.block_pair(b, bb).map_err(|e| e.to_string())?;
            if !block.is_principal() {
                check(
                    bp.inertial.order() == 3 && g.elements().iter().all(|x| bp.inertial.contains(x)),
                    "inertial group of a nontrivial block is not C3",
                )?;
            }
            // 1_B̃ = Σ_{x ∈ [G̃/I]} x 1_β x⁻¹ in k·G̃
            let beta = embed(&bp.inertial, &gg, &bp.inertial_blocks[bp.beta].idempotent).map_err(|e| e.to_string())?;
            let reps = Transversal::new(&gg, &bp.inertial).map_err(|e| e.to_string())?;
            let mut total = vec![Scalar::ZERO; gg.order()];
            for x in reps.reps() {
                let c = alg_conjugate(&gg, x, &beta).map_err(|e| e.to_string())?;
                for (t, v) in total.iter_mut().zip(c) {
                    *t = f.add(*t, v);
                }
            }
            check(total == q.big_blocks[bb].idempotent, "Fong–Reynolds identity fails")?;
            for m in corpus.members.iter().filter(|m| corpus.in_block(m, b)) {
                let v = q
                    .check_theorem2(&corpus.module(&q, m).map_err(|e| e.to_string())?, &bp)
                    .map_err(|e| e.to_string())?;
                check(v.agree, format!("block-wise disagreement on {}", corpus.describe(m)))?;
                check(corpus.theorem2(&q, m, &bp) == (v.lhs, v.rhs), "class engine differs")?;
                members += 1;
            }
        }
    }
    Ok(format!("3 and 2 blocks, defect-0 cover, inertial C3, exact idempotent identity, {members} block modules agree"))
}

fn criterion5() -> Outcome {
    let a = a4s4_pair(Budget::default()).map_err(|e| e.to_string())?;
    let c = c3s3();
    let mut modules = 0;
    for pair in [&a, &c] {
        let corpus = Corpus::build(pair, 3).map_err(|e| e.to_string())?;
        let classes = corpus.class_checks(pair).map_err(|e| e.to_string())?;
        check(classes.ok(), format!("class-level failures: {classes:?}"))?;
        let alg = &pair.small;
        let bad = corpus
            .sweep(|m| {
                let x = corpus.module(pair, m)?;
                let o2 = alg.tau(&x, TauMethod::Omega2)?;
                let dtr = alg.tau(&x, TauMethod::DTr)?;
                let tau_ok = isomorphism(&o2, &dtr, alg.budget())?.is_some();
                let hom_ok = alg.hom_from_pims(&x)? == alg.simples().chop(&x, alg.budget())?;
                let mackey_ok = pair.mackey_check(&x)?;
                Ok(!(tau_ok && hom_ok && mackey_ok))
            })
            .map_err(|e| e.to_string())?;
        if let Some(i) = bad.iter().position(|&b| b) {
            return Err(format!("cross-check fails on {}", corpus.describe(&corpus.members[i])));
        }
        modules += bad.len();
    }
    for (g, order) in [(alternating4(), 12), (symmetric4(), 24), (cyclic3(), 3), (symmetric3(), 6)] {
        let alg = GroupAlgebra::new(Arc::new(g), gf4(), Budget::default()).map_err(|e| e.to_string())?;
        let total: usize = alg
            .simples()
            .dims()
            .iter()
            .zip(&alg.pims().pims)
            .map(|(s, p)| s * p.dim())
            .sum();
        check(total == order, format!("Σ dim S·dim P = {total}, expected {order}"))?;
        let bs = indtilt_core::blockdec::blocks(&alg).map_err(|e| e.to_string())?;
        check(verify_idempotents(alg.group(), alg.field(), &bs), "block idempotents")?;
    }
    Ok(format!("τ, Hom(P, M) and Mackey agree on all {modules} corpus modules; PIM sums and idempotents exact"))
}

fn criterion6() -> Outcome {
    // every positive isomorphism verdict carries a verified witness
    let a = a4s4_pair(Budget::default()).map_err(|e| e.to_string())?;
    let corpus = Corpus::build(&a, 1).map_err(|e| e.to_string())?;
    let mut positives = 0;
    for x in &corpus.small {
        for t in a.transversal.reps() {
            let c = indtilt_core::grouprep::conjugate_rep(&x.module, t).map_err(|e| e.to_string())?;
            for y in &corpus.small {
                if let Some(w) = isomorphism(&c, &y.module, a.budget()).map_err(|e| e.to_string())? {
                    check(w.is_invertible() && c.is_hom_to(&y.module, &w), "unverified witness")?;
                    positives += 1;
                }
            }
        }
        let res = restrict(&a.induce(&x.module).map_err(|e| e.to_string())?, a.small.group()).map_err(|e| e.to_string())?;
        let orbit = a.orbit_module(&x.module).map_err(|e| e.to_string())?;
        let w = isomorphism(&res, &orbit, a.budget()).map_err(|e| e.to_string())?.ok_or("Mackey failed")?;
        check(w.is_invertible() && res.is_hom_to(&orbit, &w), "unverified Mackey witness")?;
        positives += 1;
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    std::fs::write(d.join("a4.grp"), "degree 4\n(0 1 2)\n(0 1)(2 3)\n").unwrap();
    std::fs::write(d.join("pair.pair"), "degree 4\nsmall\n(0 1 2)\n(0 1)(2 3)\nbig\n(0 1)\n(0 1 2 3)\n").unwrap();
    std::fs::write(d.join("s.rep"), write_rep(a.small.simples().simple(1), "a4.grp")).unwrap();

    // inconclusive runs exit 3 and carry no verdicts
    for args in [
        vec!["simples", "--group", "a4.grp", "--trials", "0", "--format", "json"],
        vec!["example-a4s4", "--trials", "0", "--format", "json"],
    ] {
        let (code, out) = run_bin(&args, d);
        check(code == 3, format!("{} --trials 0 exited with {code}", args[0]))?;
        let r = json(&String::from_utf8_lossy(&out))?;
        check(r["status"] == "inconclusive", "status is not inconclusive")?;
        check(r["verdicts"].as_object().is_some_and(|m| m.is_empty()), "inconclusive report carries verdicts")?;
    }

    // the CLI re-verifies its witnesses
    let (code, out) = run_bin(&["mackey", "--group-pair", "pair.pair", "--module", "s.rep", "--format", "json"], d);
    check(code == 0, "mackey failed")?;
    let r = json(&String::from_utf8_lossy(&out))?;
    check(r["witnesses"]["isomorphism"]["verified"] == true, "mackey witness not verified")?;

    // byte-identical reports for a fixed seed
    for args in [
        vec!["example-a4s4", "--format", "json"],
        vec!["thm1", "--group-pair", "pair.pair", "--module", "s.rep", "--format", "json", "--seed", "7"],
        vec!["tau", "--module", "s.rep", "--seed", "3"],
        vec!["blocks", "--group", "a4.grp"],
    ] {
        let first = run_bin(&args, d);
        let second = run_bin(&args, d);
        check(first == second, format!("{} reports differ between runs", args[0]))?;
    }
    Ok(format!("{positives} positive isomorphisms verified; trials 0 exits 3; repeated runs byte-identical"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 6] = [
        ("1 worked example", criterion1),
        ("2 rigid versus tilting orbit sets", criterion2),
        ("3 induced criterion on the corpus", criterion3),
        ("4 block-wise criterion with inertia", criterion4),
        ("5 homological cross-checks", criterion5),
        ("6 randomisation soundness", criterion6),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("PASS criterion {name}: {msg} [{secs:.1}s]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} [{secs:.1}s]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
