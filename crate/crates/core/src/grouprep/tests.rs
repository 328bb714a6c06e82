use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::permgroup::standard::{alternating4, symmetric4};

fn gf4() -> Field {
    Field::new(2, 2).unwrap()
}

/// The three 1-dimensional A4-modules over GF(4): (0 1 2) ↦ ω^i, (0 1)(2 3) ↦ 1.
fn a4_linear(a4: &Arc<Group>, i: u64) -> Rep {
    let f = gf4();
    let w = f.pow(f.generator(), i);
    Rep::new(
        a4.clone(),
        f,
        vec![Matrix::from_data(f, 1, 1, vec![w]), Matrix::identity(f, 1)],
    )
    .unwrap()
}

fn a4() -> Arc<Group> {
    Arc::new(alternating4())
}

fn s4() -> Arc<Group> {
    Arc::new(symmetric4())
}

fn budget() -> Budget {
    Budget::default()
}

#[test]
fn constructors_validate() {
    let g = a4();
    let f = gf4();
    let k = Rep::new(g.clone(), f, vec![Matrix::identity(f, 1); 2]).unwrap();
    assert_eq!(k.dim(), 1);
    let reg = Rep::regular(g.clone(), f);
    assert_eq!(reg.dim(), 12);
    assert!(Rep::new(g.clone(), f, reg.generator_matrices().to_vec()).is_ok());

    let singular = vec![Matrix::zeros(f, 1, 1), Matrix::identity(f, 1)];
    assert_eq!(Rep::new(g.clone(), f, singular).unwrap_err(), Error::SingularGenerator(0));

    let w = f.generator();
    let bad = vec![Matrix::from_data(f, 1, 1, vec![w]), Matrix::from_data(f, 1, 1, vec![w])];
    assert!(matches!(Rep::new(g.clone(), f, bad), Err(Error::NotHomomorphism(_))));

    let ragged = vec![Matrix::identity(f, 1), Matrix::identity(f, 2)];
    assert!(matches!(Rep::new(g, f, ragged), Err(Error::DimensionMismatch(_))));
}

#[test]
fn action_of_elements() {
    let g = a4();
    let f = gf4();
    let reg = Rep::regular(g.clone(), f);
    assert!(reg.act(0).is_identity());
    for x in 0..g.order() {
        assert!((reg.act(x) * reg.act(g.inverse_index(x))).is_identity());
    }
    // (0 1 2) sends e_y to e_{(0 1 2) y}
    let c = Perm::from_cycles(4, "(0 1 2)").unwrap();
    let ci = g.index_of(&c).unwrap();
    let m = reg.act_perm(&c).unwrap();
    for y in 0..g.order() {
        for z in 0..g.order() {
            let expect = if z == g.mul_index(ci, y) { Scalar::ONE } else { Scalar::ZERO };
            assert_eq!(m[(z, y)], expect);
        }
    }
    let foreign = Perm::from_cycles(4, "(0 1)").unwrap();
    assert_eq!(reg.act_perm(&foreign).unwrap_err(), Error::ForeignElement);
}

#[test]
fn hom_space_dimensions() {
    let g = a4();
    let f = gf4();
    let k = Rep::trivial(g.clone(), f);
    let s = a4_linear(&g, 1);
    let t = a4_linear(&g, 2);
    assert_eq!(hom_space(&k, &k).unwrap().dim(), 1);
    assert_eq!(hom_space(&s, &t).unwrap().dim(), 0);
    let reg = Rep::regular(g.clone(), f);
    assert_eq!(hom_space(&reg, &reg).unwrap().dim(), 12);
    assert_eq!(hom_space(&reg, &k).unwrap().dim(), 1);
    assert_eq!(hom_space(&k, &reg).unwrap().dim(), 1);
    let h = hom_space(&reg, &reg).unwrap();
    assert!(h.basis().iter().all(|x| reg.is_hom_to(&reg, x)));
    assert_eq!(hom_space(&Rep::zero(g, f), &reg).unwrap().dim(), 0);
}

#[test]
fn isomorphism_examples() {
    let g = a4();
    let f = gf4();
    let b = budget();
    let reg = Rep::regular(g.clone(), f);
    let w = is_isomorphic(&reg, &reg, &b).unwrap().unwrap();
    assert!(w.is_invertible() && reg.is_hom_to(&reg, &w));
    let k = Rep::trivial(g.clone(), f);
    let kk = direct_sum(&g, f, &[&k, &k]).unwrap();
    assert!(is_isomorphic(&k, &kk, &b).unwrap().is_none());
    let s = a4_linear(&g, 1);
    let t = a4_linear(&g, 2);
    assert!(is_isomorphic(&s, &t, &b).unwrap().is_none());
}

#[test]
fn odd_conjugation_swaps_nontrivial_linear_modules() {
    let g = a4();
    let big = s4();
    let f = gf4();
    let s = a4_linear(&g, 1);
    let t = a4_linear(&g, 2);
    let tr = Transversal::new(&big, &g).unwrap();
    let sigma = &tr.reps()[1];
    let sigma_s = conjugate_rep(&s, sigma).unwrap();
    assert!(is_isomorphic(&sigma_s, &t, &budget()).unwrap().is_some());
    assert!(is_isomorphic(&sigma_s, &s, &budget()).unwrap().is_none());
    let k = Rep::trivial(g.clone(), f);
    let sigma_k = conjugate_rep(&k, sigma).unwrap();
    assert_eq!(sigma_k.generator_matrices(), k.generator_matrices());
    // (0 1) does not normalise <(0 1 2)>
    let c3 = Arc::new(Group::from_cycle_strings(4, &["(0 1 2)"]).unwrap());
    let triv = Rep::trivial(c3, f);
    assert!(matches!(
        conjugate_rep(&triv, &Perm::from_cycles(4, "(0 3)").unwrap()),
        Err(Error::NotNormal(_))
    ));
}

#[test]
fn inner_conjugation_is_witnessed_by_the_element() {
    let g = a4();
    let f = gf4();
    let reg = Rep::regular(g.clone(), f);
    for x in 0..g.order() {
        let c = conjugate_rep(&reg, g.element(x)).unwrap();
        // rho(x) maps the conjugate module isomorphically onto M
        assert!(c.is_hom_to(&reg, reg.act(x)));
    }
}

#[test]
fn direct_sums() {
    let g = a4();
    let f = gf4();
    assert_eq!(direct_sum(&g, f, &[]).unwrap().dim(), 0);
    let k = Rep::trivial(g.clone(), f);
    let kk = direct_sum(&g, f, &[&k, &k]).unwrap();
    assert_eq!(kk.dim(), 2);
    assert!(kk.generator_matrices().iter().all(|m| m.is_identity()));
    let s = a4_linear(&g, 1);
    let reg = Rep::regular(g.clone(), f);
    let a = direct_sum(&g, f, &[&s, &reg]).unwrap();
    let b = direct_sum(&g, f, &[&reg, &s]).unwrap();
    assert_eq!(a.dim(), 13);
    assert!(is_isomorphic(&a, &b, &budget()).unwrap().is_some());
    let other = Rep::trivial(s4(), f);
    assert_eq!(direct_sum(&g, f, &[&k, &other]).unwrap_err(), Error::GroupMismatch);
}

#[test]
fn restriction() {
    let g = a4();
    let f = gf4();
    let reg = Rep::regular(g.clone(), f);
    let same = restrict(&reg, &g).unwrap();
    assert_eq!(same.generator_matrices(), reg.generator_matrices());
    let triv = Arc::new(Group::trivial(4));
    let r = restrict(&reg, &triv).unwrap();
    assert_eq!(r.dim(), 12);
    assert_eq!(hom_space(&Rep::trivial(triv.clone(), f), &r).unwrap().dim(), 12);
    assert!(restrict(&Rep::trivial(g, f), &s4()).is_err());
}

#[test]
fn induction() {
    let g = a4();
    let big = s4();
    let f = gf4();
    let t = Transversal::new(&big, &g).unwrap();
    let s = a4_linear(&g, 1);
    assert_eq!(induce(&s, &big, &t).unwrap().dim(), 2);

    let same = Transversal::new(&g, &g).unwrap();
    let reg = Rep::regular(g.clone(), f);
    let ind = induce(&reg, &g, &same).unwrap();
    assert_eq!(ind.generator_matrices(), reg.generator_matrices());

    let ind_reg = induce(&reg, &big, &t).unwrap();
    let big_reg = Rep::regular(big.clone(), f);
    assert!(is_isomorphic(&ind_reg, &big_reg, &budget()).unwrap().is_some());

    let wrong = Transversal::new(&big, &Arc::new(symmetric4())).unwrap();
    assert!(induce(&s, &big, &wrong).is_err());
}

#[test]
fn induction_is_transversal_independent() {
    let g = a4();
    let big = s4();
    let f = gf4();
    let t = Transversal::new(&big, &g).unwrap();
    let other_odd = big.elements().iter().rev().find(|e| e.is_odd()).unwrap().clone();
    let t2 = Transversal::with_reps(&big, &g, vec![Perm::identity(4), other_odd.clone()]).unwrap();
    let s = a4_linear(&g, 1);
    let reg = Rep::regular(g.clone(), f);
    for m in [&s, &reg] {
        let a = induce(m, &big, &t).unwrap();
        let b = induce(m, &big, &t2).unwrap();
        assert!(is_isomorphic(&a, &b, &budget()).unwrap().is_some());
    }
    // conjugating by sigma*h is isomorphic to conjugating by sigma
    let sigma = &t.reps()[1];
    for h in g.elements() {
        let a = conjugate_rep(&s, sigma).unwrap();
        let b = conjugate_rep(&s, &sigma.compose(h)).unwrap();
        assert!(is_isomorphic(&a, &b, &budget()).unwrap().is_some());
    }
    // Ind(σM) ≅ Ind(M)
    let ind_s = induce(&s, &big, &t).unwrap();
    let ind_conj = induce(&conjugate_rep(&s, &other_odd).unwrap(), &big, &t).unwrap();
    assert!(is_isomorphic(&ind_s, &ind_conj, &budget()).unwrap().is_some());
}

#[test]
fn duality() {
    let g = a4();
    let f = gf4();
    let k = Rep::trivial(g.clone(), f);
    assert_eq!(dual_rep(&k).generator_matrices(), k.generator_matrices());
    let s = a4_linear(&g, 1);
    let t = a4_linear(&g, 2);
    // the dual of ω is ω^2
    assert!(is_isomorphic(&dual_rep(&s), &t, &budget()).unwrap().is_some());
    let reg = Rep::regular(g.clone(), f);
    let m = direct_sum(&g, f, &[&s, &reg]).unwrap();
    let dd = dual_rep(&dual_rep(&m));
    assert_eq!(dd.dim(), m.dim());
    assert!(is_isomorphic(&dd, &m, &budget()).unwrap().is_some());
    // dim Hom(M, N) = dim Hom(DN, DM)
    let n = direct_sum(&g, f, &[&k, &t]).unwrap();
    for (a, b) in [(&m, &n), (&n, &m), (&reg, &s)] {
        assert_eq!(
            hom_space(a, b).unwrap().dim(),
            hom_space(&dual_rep(b), &dual_rep(a)).unwrap().dim()
        );
    }
}

#[test]
fn submodule_and_quotient() {
    let g = a4();
    let f = gf4();
    let reg = Rep::regular(g.clone(), f);
    // the all-ones vector spans a trivial submodule
    let ones = Matrix::from_data(f, 12, 1, vec![Scalar::ONE; 12]);
    let sub = reg.submodule(&ones).unwrap();
    assert!(sub.generator_matrices().iter().all(|m| m.is_identity()));
    let (q, proj) = reg.quotient(&ones).unwrap();
    assert_eq!(q.dim(), 11);
    assert!(reg.is_hom_to(&q, &proj));
    let e0 = Matrix::from_columns(f, 12, &[{
        let mut v = vec![Scalar::ZERO; 12];
        v[0] = Scalar::ONE;
        v
    }]);
    assert!(reg.submodule(&e0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn constructed_modules_are_homomorphisms(which in 0usize..5, a in 0usize..24, b in 0usize..24) {
        let g = a4();
        let big = s4();
        let f = gf4();
        let t = Transversal::new(&big, &g).unwrap();
        let s = a4_linear(&g, 1);
        let reg = Rep::regular(g.clone(), f);
        let m = match which {
            0 => induce(&s, &big, &t).unwrap(),
            1 => induce(&reg, &big, &t).unwrap(),
            2 => dual_rep(&induce(&s, &big, &t).unwrap()),
            3 => restrict(&Rep::regular(big.clone(), f), &g).unwrap(),
            _ => conjugate_rep(&direct_sum(&g, f, &[&s, &reg]).unwrap(), &t.reps()[1]).unwrap(),
        };
        let grp = m.group().clone();
        let (x, y) = (a % grp.order(), b % grp.order());
        prop_assert_eq!(m.act(x) * m.act(y), m.act(grp.mul_index(x, y)).clone());
    }
}

/// Small pool of A4-modules: the linear modules, the regular module and
/// Res Ind of a linear module.
fn pool(g: &Arc<Group>, big: &Arc<Group>, i: usize) -> Rep {
    let f = gf4();
    match i {
        0..=2 => a4_linear(g, i as u64),
        3 => Rep::regular(g.clone(), f),
        _ => {
            let t = Transversal::new(big, g).unwrap();
            restrict(&induce(&a4_linear(g, 1), big, &t).unwrap(), g).unwrap()
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hom_dimension_is_symmetric_under_duality(i in 0usize..5, j in 0usize..5) {
        let (g, big) = (a4(), s4());
        let (m, n) = (pool(&g, &big, i), pool(&g, &big, j));
        let forward = hom_space(&m, &n).unwrap().dim();
        let back = hom_space(&dual_rep(&n), &dual_rep(&m)).unwrap().dim();
        prop_assert_eq!(forward, back);
    }

    #[test]
    fn isomorphism_is_reflexive_and_ignores_summand_order(i in 0usize..5, j in 0usize..5) {
        let (g, big) = (a4(), s4());
        let f = gf4();
        let b = Budget::default();
        let (m, n) = (pool(&g, &big, i), pool(&g, &big, j));
        let x = is_isomorphic(&m, &m, &b).unwrap().expect("reflexive");
        prop_assert!(m.is_hom_to(&m, &x) && x.is_invertible());
        let mn = direct_sum(&g, f, &[&m, &n]).unwrap();
        let nm = direct_sum(&g, f, &[&n, &m]).unwrap();
        let x = is_isomorphic(&mn, &nm, &b).unwrap().expect("reordered sum");
        let y = is_isomorphic(&nm, &mn, &b).unwrap().expect("symmetric");
        prop_assert!(mn.is_hom_to(&nm, &x) && nm.is_hom_to(&mn, &y));
        prop_assert!(nm.is_hom_to(&mn, &x.inverse().unwrap()));
    }

    #[test]
    fn induction_ignores_conjugation_and_coset_choice(i in 0usize..5, x in 0usize..24, h in 0usize..12) {
        let (g, big) = (a4(), s4());
        let b = Budget::default();
        let t = Transversal::new(&big, &g).unwrap();
        let m = pool(&g, &big, i);
        let xg = big.element(x).clone();
        let xm = conjugate_rep(&m, &xg).unwrap();
        prop_assert!(is_isomorphic(&induce(&xm, &big, &t).unwrap(), &induce(&m, &big, &t).unwrap(), &b).unwrap().is_some());
        let xh = conjugate_rep(&m, &xg.compose(g.element(h))).unwrap();
        prop_assert!(is_isomorphic(&xh, &xm, &b).unwrap().is_some());
    }
}
