use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use super::*;
use crate::meataxe::add_compare;
use crate::testkit::*;

fn a4s4() -> &'static GroupPair {
    static CELL: OnceLock<GroupPair> = OnceLock::new();
    CELL.get_or_init(|| a4s4_pair(Budget::default()).unwrap())
}

fn c3s3() -> &'static GroupPair {
    static CELL: OnceLock<GroupPair> = OnceLock::new();
    CELL.get_or_init(|| GroupPair::new(c3(), s3(), gf4(), Budget::default()).unwrap())
}

fn a4_corpus() -> &'static Corpus {
    static CELL: OnceLock<Corpus> = OnceLock::new();
    CELL.get_or_init(|| Corpus::build(a4s4(), 3).unwrap())
}

fn c3_corpus() -> &'static Corpus {
    static CELL: OnceLock<Corpus> = OnceLock::new();
    CELL.get_or_init(|| Corpus::build(c3s3(), 3).unwrap())
}

fn kst() -> (Rep, Rep, Rep) {
    let t = a4s4().small.simples();
    (t.simple(0).clone(), t.simple(1).clone(), t.simple(2).clone())
}

fn sum(parts: &[&Rep]) -> Rep {
    let p = a4s4();
    direct_sum(p.small.group(), p.field(), parts).unwrap()
}

#[test]
fn worked_example() {
    let r = example_on(a4s4()).unwrap();
    assert!(r.expected_mismatches().is_empty(), "{:?}", r.expected_mismatches());
    let p = a4s4();
    let (_, s, t) = kst();
    let sigma = p.transversal.reps().iter().find(|x| x.is_odd()).unwrap();
    let w = r.sigma_witness.unwrap();
    assert!(w.is_invertible());
    assert!(conjugate_rep(&s, sigma).unwrap().is_hom_to(&t, &w));
}

#[test]
fn non_normal_pairs_are_rejected() {
    let g = Arc::new(Group::from_cycle_strings(4, &["(0 1)"]).unwrap());
    assert!(matches!(
        GroupPair::new(g, s4(), gf4(), Budget::default()),
        Err(Error::NotNormal(_))
    ));
}

#[test]
fn orbits_and_invariance() {
    let p = a4s4();
    let (k, s, t) = kst();
    let orbit = p.orbit_module(&k).unwrap();
    assert!(isomorphism(&orbit, &sum(&[&k, &k]), p.budget()).unwrap().is_some());
    assert!(p.is_invariant(&k).unwrap());
    assert!(!p.is_invariant(&s).unwrap());
    assert!(p.is_invariant(&sum(&[&s, &t])).unwrap());

    // one coset: the orbit is the module itself
    let same = GroupPair::new(a4(), a4(), gf4(), Budget::default()).unwrap();
    let st = p.stacked(&s, &t).unwrap();
    assert_eq!(same.orbit_module(&st).unwrap().generator_matrices(), st.generator_matrices());
    assert!(same.mackey_check(&st).unwrap());
}

#[test]
fn mackey() {
    let p = a4s4();
    let (k, s, t) = kst();
    for m in [&k, &s, &p.stacked(&s, &t).unwrap(), p.small.pim(2)] {
        assert!(p.mackey_check(m).unwrap());
    }
    let res = restrict(&p.induce(&s).unwrap(), p.small.group()).unwrap();
    assert!(isomorphism(&res, &sum(&[&s, &t]), p.budget()).unwrap().is_some());
}

#[test]
fn theorem1_examples() {
    let p = a4s4();
    let (k, s, t) = kst();
    let n1 = sum(&[&k, &p.stacked(&k, &s).unwrap()]);
    let st = p.stacked(&s, &t).unwrap();
    let reg = Rep::regular(p.small.group().clone(), p.field());
    for m in [&n1, &st, &reg] {
        let v = p.check_theorem1(m).unwrap();
        assert!(v.lhs && v.rhs && v.agree);
    }
    let v = p.check_theorem1(&s).unwrap();
    assert!(v.agree && !v.lhs);
}

#[test]
fn theorem2_with_inertia() {
    let q = c3s3();
    let bp = q.block_pair(1, 1).unwrap();
    assert_eq!(bp.inertial.order(), 3);
    assert_eq!(bp.inertial_reps.len(), 1);
    let b = q.small.simples().simple(1);
    let v = q.check_theorem2(b, &bp).unwrap();
    assert!(v.lhs && v.rhs && v.agree);
    let zero = Rep::zero(q.small.group().clone(), q.field());
    let v = q.check_theorem2(&zero, &bp).unwrap();
    assert!(v.lhs && v.rhs);
    assert_eq!(
        q.check_theorem2(q.small.simples().simple(0), &bp).unwrap_err(),
        Error::OutsideBlock
    );
    assert_eq!(q.block_pair(1, 0).unwrap_err(), Error::NotCovering);

    let principal = q.block_pair(0, 0).unwrap();
    assert_eq!(principal.inertial.order(), 6);
    let v = q.check_theorem2(q.small.simples().simple(0), &principal).unwrap();
    assert!(v.agree && v.lhs);
}

#[test]
fn remark_flags() {
    let p = a4s4();
    let (k, s, t) = kst();
    let bp = p.block_pair(0, 0).unwrap();
    let st = p.stacked(&s, &t).unwrap();
    let f = p.remark_classify(&st, Some(&bp)).unwrap();
    assert_eq!(
        f,
        RemarkFlags {
            in_rig_group: true,
            in_sta_group: false,
            in_rig_block: Some(true),
            in_sta_block: Some(false),
        }
    );
    let n1 = sum(&[&k, &p.stacked(&k, &s).unwrap()]);
    let f = p.remark_classify(&n1, None).unwrap();
    assert!(f.in_rig_group && f.in_sta_group && f.in_rig_block.is_none());
    let zero = Rep::zero(p.small.group().clone(), p.field());
    let f = p.remark_classify(&zero, Some(&bp)).unwrap();
    assert!(f.in_rig_group && f.in_sta_group && f.in_sta_block == Some(true));
}

#[test]
fn stacked_requires_nonsplit() {
    let p = a4s4();
    let (k, _, _) = kst();
    assert_eq!(p.stacked(&k, &k).unwrap_err(), Error::SplitExtension);
}

#[test]
fn a4_corpus_verdicts() {
    let c = a4_corpus();
    assert!(c.len() >= 40);
    assert!(c.members.contains(&Vec::new()));
    let mut disagreements = Vec::new();
    for m in &c.members {
        let v = c.verdicts(m);
        if !v.agree() {
            disagreements.push(c.describe(m));
        }
        assert!(!v.stt || v.rigid);
        if let Some(ok) = v.ind_matches_orbit {
            assert!(ok, "Ind differs from Ind of the orbit sum for {}", c.describe(m));
        }
    }
    assert!(disagreements.is_empty(), "{disagreements:?}");
    // single block: the block-wise criterion matches the global one
    let p = a4s4();
    let bp = p.block_pair(0, 0).unwrap();
    for m in &c.members {
        let v = c.verdicts(m);
        assert_eq!(c.theorem2(p, m, &bp), (v.thm1_lhs, v.thm1_rhs));
    }
}

#[test]
fn a4_corpus_names_the_example_modules() {
    let p = a4s4();
    let c = a4_corpus();
    let (k, s, t) = kst();
    for m in [p.stacked(&k, &s).unwrap(), p.stacked(&k, &t).unwrap(), p.stacked(&s, &t).unwrap(), k] {
        assert!(c.small.iter().any(|x| crate::meataxe::indecomposable_iso(&x.module, &m).unwrap().is_some()));
    }
}

#[test]
fn class_checks() {
    assert!(a4_corpus().class_checks(a4s4()).unwrap().ok());
    assert!(c3_corpus().class_checks(c3s3()).unwrap().ok());
}

#[test]
fn c3_corpus_verdicts() {
    let q = c3s3();
    let c = c3_corpus();
    assert_eq!(c.small.len(), 3);
    for m in &c.members {
        assert!(c.verdicts(m).agree());
    }
    let mut checked = 0;
    for (b, block) in q.small_blocks.iter().enumerate() {
        let bb = &q.big_blocks;
        for (bt, _) in bb.iter().enumerate() {
            let Ok(bp) = q.block_pair(b, bt) else { continue };
            for m in c.members.iter().filter(|m| c.in_block(m, b)) {
                let (lhs, rhs) = c.theorem2(q, m, &bp);
                assert_eq!(lhs, rhs);
                let direct = q.check_theorem2(&c.module(q, m).unwrap(), &bp).unwrap();
                assert_eq!((direct.lhs, direct.rhs), (lhs, rhs));
                checked += 1;
            }
        }
        assert!(!block.simple_labels.is_empty());
    }
    assert_eq!(checked, 6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn engine_matches_direct_computation(i in 0usize..10_000) {
        let p = a4s4();
        let c = a4_corpus();
        let m = &c.members[i % c.len()];
        let v = c.verdicts(m);
        let module = c.module(p, m).unwrap();
        let d = p.check_theorem1(&module).unwrap();
        prop_assert!(d.agree);
        prop_assert_eq!((d.lhs, d.rhs), (v.thm1_lhs, v.thm1_rhs));
        prop_assert_eq!(p.is_invariant(&module).unwrap(), v.invariant);
        let f = p.remark_classify(&module, None).unwrap();
        prop_assert_eq!(f.in_rig_group, v.rigid && v.orbit_stt);
        prop_assert!(!f.in_sta_group || f.in_rig_group);
    }

    #[test]
    fn induced_module_matches_orbit_sum(i in 0usize..10_000) {
        let p = a4s4();
        let c = a4_corpus();
        let m = &c.members[i % c.len()];
        let module = c.module(p, m).unwrap();
        let orbit = p.orbit_module(&module).unwrap();
        let ind = p.induce(&module).unwrap();
        let ind_orbit = p.induce(&orbit).unwrap();
        let cmp = add_compare(&ind, &ind_orbit, p.budget()).unwrap();
        prop_assert!(cmp.equivalent());
    }
}
